"""Translations between relations and the index-based oracle."""

from __future__ import annotations

from typing import Sequence

from .oracle import Partition
from .relation import Relation, RelationError, is_forest, mapping_targets


def abstract(p: Relation, check: bool = True) -> Partition:
    """Group the nodes of a forest by their root.

    ``check=False`` skips the forest test for callers that have already
    established it; the root chase still fails on a cycle.
    """
    if check and not is_forest(p):
        raise RelationError("abstract needs a forest")
    parent = mapping_targets(p)
    labels = []
    for i in range(p.n):
        node = i
        for _ in range(p.n + 1):
            if parent[node] == node:
                break
            node = parent[node]
        else:
            raise RelationError("parent chain does not reach a root")
        labels.append(node)
    return Partition.from_labels(labels)


def relational(part: Partition, n: int) -> Relation:
    """The equivalence relation whose classes are ``part``."""
    if part.n != n or sorted(i for c in part.classes for i in c) != list(range(n)):
        raise RelationError(f"partition does not cover 0..{n - 1} exactly once")
    rows = [0] * n
    for cls in part.classes:
        mask = sum(1 << i for i in cls)
        for i in cls:
            rows[i] = mask
    return Relation(n, rows)


def lift_parent(parent: Sequence[int]) -> Relation:
    """Parent array as a mapping: ``(i, parent[i])`` for each ``i``."""
    return Relation.from_pairs(len(parent), enumerate(parent))


def lift_rank(rank: Sequence[int]) -> Relation:
    """Rank array as a mapping into the numbers ``0..n-1``."""
    n = len(rank)
    if any(not 0 <= r < n for r in rank):
        raise RelationError(f"rank outside 0..{n - 1}: {list(rank)}")
    return Relation.from_pairs(n, enumerate(rank))


def lower_parent(p: Relation) -> list[int]:
    return mapping_targets(p)
