"""Index-based union-find used as an independent reference.

Nothing here touches :mod:`relforest.relation`; nodes are plain integers and
the forest is a parent list plus a rank list.
"""

from __future__ import annotations

from dataclasses import dataclass, field

STRATEGIES = ("naive", "compress", "split", "halve")


@dataclass
class OracleForest:
    parent: list[int]
    rank: list[int] = field(default_factory=list)

    @classmethod
    def fresh(cls, n: int) -> OracleForest:
        if n < 1:
            raise ValueError("forest size must be at least 1")
        return cls(list(range(n)), [0] * n)

    @property
    def n(self) -> int:
        return len(self.parent)

    def copy(self) -> OracleForest:
        return OracleForest(list(self.parent), list(self.rank))

    def root(self, i: int) -> int:
        """Root of ``i`` without touching the parent list."""
        for _ in range(self.n + 1):
            if self.parent[i] == i:
                return i
            i = self.parent[i]
        raise ValueError("parent chain does not terminate")


@dataclass(frozen=True)
class Partition:
    """Disjoint classes covering ``0..n-1``, each sorted, ordered by minimum."""

    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, labels) -> Partition:
        groups: dict[int, list[int]] = {}
        for node, label in enumerate(labels):
            groups.setdefault(label, []).append(node)
        return cls(tuple(sorted(tuple(g) for g in groups.values())))

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    def __str__(self) -> str:
        return " ".join("{" + ",".join(map(str, c)) + "}" for c in self.classes)


def _check(f: OracleForest, *nodes: int) -> None:
    for i in nodes:
        if not 0 <= i < f.n:
            raise IndexError(f"node {i} out of range for forest of size {f.n}")


def oracle_find(f: OracleForest, i: int, strategy: str = "naive") -> tuple[int, OracleForest]:
    """Return the root of ``i`` and a new forest with the strategy's rewrites applied."""
    _check(f, i)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    g = f.copy()
    par = g.parent
    if strategy == "naive":
        return g.root(i), g
    if strategy == "compress":
        r = g.root(i)
        while par[i] != r and i != r:
            par[i], i = r, par[i]
        return r, g
    if strategy == "split":
        while par[i] != i:
            nxt = par[i]
            par[i] = par[nxt]
            i = nxt
        return i, g
    while par[i] != i:  # halve
        par[i] = par[par[i]]
        i = par[i]
    return i, g


def oracle_union(
    f: OracleForest, i: int, j: int, by_rank: bool = False, strategy: str = "compress"
) -> OracleForest:
    """Link the roots of ``i`` and ``j``.

    Plain union puts root(i) under root(j).  By rank, the root of smaller rank
    goes under the other; on a tie root(j) goes under root(i) and root(i)'s
    rank grows by one.
    """
    _check(f, i, j)
    r, g = oracle_find(f, i, strategy)
    s, g = oracle_find(g, j, strategy)
    if not by_rank:
        g.parent[r] = s
    elif r != s:
        if g.rank[r] < g.rank[s]:
            g.parent[r] = s
        else:
            g.parent[s] = r
            if g.rank[r] == g.rank[s]:
                g.rank[r] += 1
    return g


def partition_of(f: OracleForest) -> Partition:
    return Partition.from_labels(f.root(i) for i in range(f.n))
