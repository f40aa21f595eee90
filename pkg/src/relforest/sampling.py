"""Enumerators and samplers for the relation classes laws quantify over.

Each :class:`Kind` can list every member of its class at a given size (used
for exhaustive checking at small ``n``) and draw a random member directly,
without rejection from the full space.  Samplers are uniform over the class
except where noted.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .peano import all_models, build_peano
from .relation import Relation, is_acyclic, is_forest, one

Draw = Callable[[random.Random, int], Relation]


@dataclass(frozen=True)
class Kind:
    name: str
    draw: Draw
    list_all: Callable[[int], list]
    count: Callable[[int], int | None]

    def members(self, n: int) -> tuple:
        return _members(self, n)

    def size(self, n: int) -> int | None:
        return self.count(n)


@functools.lru_cache(maxsize=None)
def _members(kind: Kind, n: int) -> tuple:
    return tuple(kind.list_all(n))


def _raw(n: int, rows) -> Relation:
    return Relation._raw(n, tuple(rows))


def _full(n: int) -> int:
    return (1 << n) - 1


# --- draws -------------------------------------------------------------------


def draw_any(rng: random.Random, n: int) -> Relation:
    bits = rng.getrandbits(n * n)
    mask = _full(n)
    return _raw(n, ((bits >> (i * n)) & mask for i in range(n)))


def draw_vector(rng: random.Random, n: int) -> Relation:
    bits = rng.getrandbits(n)
    full = _full(n)
    return _raw(n, (full if bits >> i & 1 else 0 for i in range(n)))


def draw_nonempty_vector(rng: random.Random, n: int) -> Relation:
    bits = rng.randrange(1, 1 << n)
    full = _full(n)
    return _raw(n, (full if bits >> i & 1 else 0 for i in range(n)))


def draw_point(rng: random.Random, n: int) -> Relation:
    k = rng.randrange(n)
    full = _full(n)
    return _raw(n, (full if i == k else 0 for i in range(n)))


def draw_injective_vector(rng: random.Random, n: int) -> Relation:
    # bot or a single point
    k = rng.randrange(n + 1)
    return Relation.bot(n) if k == n else draw_point_at(n, k)


def draw_point_at(n: int, k: int) -> Relation:
    full = _full(n)
    return _raw(n, (full if i == k else 0 for i in range(n)))


def draw_arc(rng: random.Random, n: int) -> Relation:
    i, j = rng.randrange(n), rng.randrange(n)
    return _raw(n, ((1 << j) if r == i else 0 for r in range(n)))


def draw_univalent(rng: random.Random, n: int) -> Relation:
    rows = []
    for _ in range(n):
        k = rng.randrange(n + 1)
        rows.append(0 if k == n else 1 << k)
    return _raw(n, rows)


def draw_mapping(rng: random.Random, n: int) -> Relation:
    return _raw(n, (1 << rng.randrange(n) for _ in range(n)))


def draw_total(rng: random.Random, n: int) -> Relation:
    return _raw(n, (rng.randrange(1, 1 << n) for _ in range(n)))


def draw_sub_identity(rng: random.Random, n: int) -> Relation:
    bits = rng.getrandbits(n)
    return _raw(n, ((1 << i) & bits for i in range(n)))


def prufer_forest(n: int, seq) -> Relation:
    """Decode a Prufer sequence over ``n + 1`` labels into a rooted forest.

    Label ``n`` is a virtual root; its children become the self-looped roots.
    """
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for v in seq:
        leaf = next(u for u in range(n + 1) if degree[u] == 1)
        adj[leaf].append(v)
        adj[v].append(leaf)
        degree[leaf] -= 1
        degree[v] -= 1
    u, v = (w for w in range(n + 1) if degree[w] == 1)
    adj[u].append(v)
    adj[v].append(u)
    parent = [0] * n
    stack, seen = [n], {n}
    while stack:
        node = stack.pop()
        for child in adj[node]:
            if child not in seen:
                seen.add(child)
                parent[child] = child if node == n else node
                stack.append(child)
    return _raw(n, (1 << parent[i] for i in range(n)))


def draw_forest(rng: random.Random, n: int) -> Relation:
    return prufer_forest(n, [rng.randrange(n + 1) for _ in range(n - 1)])


def draw_acyclic_part(rng: random.Random, n: int) -> Relation:
    """A relation whose off-diagonal part is acyclic.

    Edges follow a random linear order and the diagonal is arbitrary.  Not
    uniform: relations compatible with several orders are drawn more often.
    """
    order = list(range(n))
    rng.shuffle(order)
    rows = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.5:
                rows[order[a]] |= 1 << order[b]
        if rng.random() < 0.5:
            rows[order[a]] |= 1 << order[a]
    return _raw(n, rows)


def draw_partial_forest(rng: random.Random, n: int) -> Relation:
    """Univalent with acyclic off-diagonal part: a forest whose root loops are optional."""
    p = draw_forest(rng, n)
    return _raw(n, (0 if r == 1 << i and rng.random() < 0.5 else r for i, r in enumerate(p.rows)))


def _transposed(draw: Draw) -> Draw:
    return lambda rng, n: draw(rng, n).T


# --- enumerations ------------------------------------------------------------


def all_relations(n: int) -> list[Relation]:
    mask = _full(n)
    return [_raw(n, ((c >> (i * n)) & mask for i in range(n))) for c in range(1 << (n * n))]


def all_vectors(n: int) -> list[Relation]:
    full = _full(n)
    return [_raw(n, (full if b >> i & 1 else 0 for i in range(n))) for b in range(1 << n)]


def all_row_choices(n: int, choices) -> list[Relation]:
    return [_raw(n, rows) for rows in itertools.product(choices, repeat=n)]


def all_univalent(n: int) -> list[Relation]:
    return all_row_choices(n, [0] + [1 << j for j in range(n)])


def all_mappings(n: int) -> list[Relation]:
    return all_row_choices(n, [1 << j for j in range(n)])


def all_total(n: int) -> list[Relation]:
    return all_row_choices(n, range(1, 1 << n))


def all_forests(n: int) -> list[Relation]:
    return [p for p in all_mappings(n) if is_forest(p)]


def all_acyclic_part(n: int) -> list[Relation]:
    return [x for x in all_relations(n) if is_acyclic(x - one(x))]


def _peano_models(n: int) -> list:
    # every model up to 5 elements; beyond that only the standard one
    return list(all_models(n)) if n <= 5 else [build_peano(n)]


def _kind(name, draw, list_all, count) -> Kind:
    return Kind(name, draw, list_all, count)


ANY = _kind("any", draw_any, all_relations, lambda n: 1 << (n * n))
VECTOR = _kind("vector", draw_vector, all_vectors, lambda n: 1 << n)
SURJECTIVE_VECTOR = _kind(
    "surjective_vector", draw_nonempty_vector, lambda n: all_vectors(n)[1:], lambda n: (1 << n) - 1
)
INJECTIVE_VECTOR = _kind(
    "injective_vector",
    draw_injective_vector,
    lambda n: [Relation.bot(n)] + [draw_point_at(n, k) for k in range(n)],
    lambda n: n + 1,
)
POINT = _kind("point", draw_point, lambda n: [draw_point_at(n, k) for k in range(n)], lambda n: n)
ARC = _kind(
    "arc",
    draw_arc,
    lambda n: [Relation.from_pairs(n, [(i, j)]) for i in range(n) for j in range(n)],
    lambda n: n * n,
)
UNIVALENT = _kind("univalent", draw_univalent, all_univalent, lambda n: (n + 1) ** n)
INJECTIVE = _kind(
    "injective", _transposed(draw_univalent), lambda n: [x.T for x in all_univalent(n)], lambda n: (n + 1) ** n
)
TOTAL = _kind("total", draw_total, all_total, lambda n: ((1 << n) - 1) ** n)
SURJECTIVE = _kind(
    "surjective", _transposed(draw_total), lambda n: [x.T for x in all_total(n)], lambda n: ((1 << n) - 1) ** n
)
MAPPING = _kind("mapping", draw_mapping, all_mappings, lambda n: n**n)
BIJECTIVE = _kind(
    "bijective", _transposed(draw_mapping), lambda n: [x.T for x in all_mappings(n)], lambda n: n**n
)
FOREST = _kind("forest", draw_forest, all_forests, lambda n: (n + 1) ** (n - 1))
ACYCLIC_PART = _kind("acyclic_part", draw_acyclic_part, all_acyclic_part, lambda n: None)
PARTIAL_FOREST = _kind(
    "partial_forest",
    draw_partial_forest,
    lambda n: [x for x in all_univalent(n) if is_acyclic(x - one(x))],
    lambda n: None,
)
SUB_IDENTITY = _kind(
    "sub_identity",
    draw_sub_identity,
    lambda n: [_raw(n, ((1 << i) & b for i in range(n))) for b in range(1 << n)],
    lambda n: 1 << n,
)
PEANO = _kind("peano", lambda rng, n: build_peano(n), _peano_models, lambda n: None)

KINDS = {
    k.name: k
    for k in (
        ANY,
        VECTOR,
        SURJECTIVE_VECTOR,
        INJECTIVE_VECTOR,
        POINT,
        ARC,
        UNIVALENT,
        INJECTIVE,
        TOTAL,
        SURJECTIVE,
        MAPPING,
        BIJECTIVE,
        FOREST,
        ACYCLIC_PART,
        PARTIAL_FOREST,
        SUB_IDENTITY,
        PEANO,
    )
}
