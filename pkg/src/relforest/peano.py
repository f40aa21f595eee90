"""Numbers ``0..m-1`` as points, with zero, successor and ordering.

The successor ``S`` is taken modulo ``m``; the partial successor
``Sp = S - Z^T`` drops the wrap-around edge so that incrementing the largest
number yields ``bot`` instead of ``0``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .relation import (
    Relation,
    RelationError,
    cardinality_leq,
    is_injective,
    is_mapping,
    is_point,
    roots,
)


class PeanoAxiomError(RelationError):
    pass


@dataclass(frozen=True)
class PeanoCtx:
    m: int
    Z: Relation
    S: Relation
    Sp: Relation
    M: Relation

    @classmethod
    def from_zero_successor(cls, Z: Relation, S: Relation) -> PeanoCtx:
        """Derive ``Sp`` and ``M`` and verify the four axioms."""
        for number, holds in enumerate(peano_axioms(Z, S), start=1):
            if not holds:
                raise PeanoAxiomError(f"Peano axiom {number} fails")
        return cls(m=Z.n, Z=Z, S=S, Sp=S - Z.T, M=S @ Z)

    def number(self, k: int) -> Relation:
        if not 0 <= k < self.m:
            raise RelationError(f"number {k} not representable modulo {self.m}")
        return Relation.point(self.m, k)

    @property
    def top_number(self) -> Relation:
        return self.number(self.m - 1)

    @functools.cached_property
    def Sp_plus(self) -> Relation:
        return self.Sp.plus()


def peano_axioms(Z: Relation, S: Relation) -> tuple[bool, bool, bool, bool]:
    return (
        is_point(Z),
        is_mapping(S),
        is_injective(S),
        S.T.star() @ Z == Relation.top(Z.n),
    )


@functools.lru_cache(maxsize=None)
def build_peano(m: int) -> PeanoCtx:
    """The modulo-``m`` model: ``Z`` is point 0 and ``S`` maps ``i`` to ``i+1 mod m``."""
    if m < 1:
        raise RelationError(f"modulus must be at least 1, got {m}")
    S = Relation.from_pairs(m, [(i, (i + 1) % m) for i in range(m)])
    return PeanoCtx.from_zero_successor(Relation.point(m, 0), S)


def _require_point(x: Relation, what: str) -> None:
    if not is_point(x):
        raise RelationError(f"{what} must be a point")


def succ(ctx: PeanoCtx, x: Relation) -> Relation:
    """``Sp^T . x``; ``bot`` for the largest number."""
    _require_point(x, "succ argument")
    return ctx.Sp.T @ x


def less(ctx: PeanoCtx, x: Relation, y: Relation) -> bool:
    """``x < y`` iff ``x <= Sp+ . y``."""
    _require_point(x, "left operand of less")
    _require_point(y, "right operand of less")
    return x <= ctx.Sp_plus @ y


def rank_property(p: Relation, rank: Relation, ctx: PeanoCtx) -> bool:
    """Ranks are total, increase strictly towards the root, and cannot overflow.

    The third clause bounds the number of roots by the count of numbers at or
    above the current maximum rank.
    """
    if p.n != ctx.m or rank.n != ctx.m:
        raise RelationError(f"size mismatch: forest {p.n}, rank {rank.n}, numbers {ctx.m}")
    if not is_mapping(rank):
        return False
    if not (p - Relation.identity(p.n)) @ rank <= rank @ ctx.Sp_plus:
        return False
    top = Relation.top(p.n)
    return cardinality_leq(roots(p), ~(ctx.Sp_plus @ rank.T @ top))


def all_models(m: int):
    """Every ``(Z, S)`` pair on ``m`` elements satisfying the four axioms.

    Axioms 2 and 3 force ``S`` to be a permutation; axiom 4 forces it to be a
    single cycle.  Enumeration is over all permutations, so keep ``m`` small.
    """
    from itertools import permutations

    for perm in permutations(range(m)):
        S = Relation.from_pairs(m, list(enumerate(perm)))
        for z in range(m):
            Z = Relation.point(m, z)
            if all(peano_axioms(Z, S)):
                yield PeanoCtx.from_zero_successor(Z, S)
