"""Algebraic laws as executable properties, grouped into suites.

A law names its variables and the class each ranges over, an optional side
condition, and the equation or implication to check.  The runner enumerates
every qualifying tuple at small sizes and draws random qualifying tuples at
larger ones; whenever a class product is no bigger than the sample budget it
enumerates instead, which covers strictly more.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .arrays import aread, awrite
from .peano import PeanoCtx, build_peano, less, peano_axioms, succ
from .relation import (
    Relation,
    ancestors,
    fc,
    is_acyclic,
    is_arc,
    is_bijective,
    is_equivalence,
    is_forest,
    is_injective,
    is_irreflexive,
    is_mapping,
    is_point,
    is_surjective,
    is_total,
    is_univalent,
    is_vector,
    point_index,
    wcc,
)
from .sampling import (
    ACYCLIC_PART,
    ANY,
    ARC,
    BIJECTIVE,
    FOREST,
    INJECTIVE,
    INJECTIVE_VECTOR,
    MAPPING,
    PARTIAL_FOREST,
    PEANO,
    POINT,
    SUB_IDENTITY,
    SURJECTIVE,
    SURJECTIVE_VECTOR,
    TOTAL,
    UNIVALENT,
    VECTOR,
    Kind,
    draw_any,
    draw_point_at,
)

SUITES = ("ra", "kleene", "helpers", "array", "wcc", "fc", "lemmas", "forest", "peano")


@dataclass(frozen=True)
class Law:
    suite: str
    name: str
    kinds: tuple[tuple[str, Kind], ...]
    check: Callable[..., bool]
    cond: Callable[..., bool] | None = None
    sampler: Callable[[random.Random, int], dict] | None = None
    exhaustive_max: int = 2

    @property
    def qualified(self) -> str:
        return f"{self.suite}.{self.name}"


LAWS: list[Law] = []


def law(suite, name, *, cond=None, sampler=None, exhaustive_max=2, **kinds):
    def register(check):
        LAWS.append(Law(suite, name, tuple(kinds.items()), check, cond, sampler, exhaustive_max))
        return check

    return register


def _I(x: Relation) -> Relation:
    return Relation.identity(x.n)


def _top(x: Relation) -> Relation:
    return Relation.top(x.n)


def _bot(x: Relation) -> Relation:
    return Relation.bot(x.n)


def _offdiag_acyclic(x: Relation) -> bool:
    return is_acyclic(x - _I(x))


# --- relation algebra --------------------------------------------------------


@law("ra", "join_semilattice", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return (x | y) | z == x | (y | z) and x | y == y | x and x | x == x and x | _bot(x) == x


@law("ra", "meet_semilattice", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return (x & y) & z == x & (y & z) and x & y == y & x and x & x == x and x & _top(x) == x


@law("ra", "absorption", x=ANY, y=ANY)
def _(x, y):
    return x | (x & y) == x == x & (x | y)


@law("ra", "distributive", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return x | (y & z) == (x | y) & (x | z) and x & (y | z) == (x & y) | (x & z)


@law("ra", "complement", x=ANY, y=ANY)
def _(x, y):
    return (x | ~x) == _top(x) and (x & ~x) == _bot(x) and x - y == x & ~y


@law("ra", "compose_monoid", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return (x @ y) @ z == x @ (y @ z) and x @ _I(x) == x == _I(x) @ x


@law("ra", "compose_distributes_and_zero", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return (
        x @ (y | z) == (x @ y) | (x @ z)
        and (y | z) @ x == (y @ x) | (z @ x)
        and x @ _bot(x) == _bot(x) == _bot(x) @ x
    )


@law("ra", "transpose_laws", x=ANY, y=ANY)
def _(x, y):
    return (x | y).T == x.T | y.T and x.T.T == x and (x @ y).T == y.T @ x.T


@law("ra", "dedekind", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return (x @ y) & z <= x @ (y & (x.T @ z))


@law("ra", "tarski_rule", x=ANY, cond=lambda x: not x.is_bot(), exhaustive_max=3)
def _(x):
    return _top(x) @ x @ _top(x) == _top(x)


# --- Kleene star ---------------------------------------------------------------


@law("kleene", "star_unfold", y=ANY)
def _(y):
    s = y.star()
    return _I(y) | (y @ s) == s and _I(y) | (s @ y) == s


def _left_prefix(rng, n):
    y, z, r = draw_any(rng, n), draw_any(rng, n), draw_any(rng, n)
    return {"x": y.star() @ (z | r), "y": y, "z": z}


def _right_prefix(rng, n):
    y, z, r = draw_any(rng, n), draw_any(rng, n), draw_any(rng, n)
    return {"x": (z | r) @ y.star(), "y": y, "z": z}


@law(
    "kleene",
    "star_induction_left",
    x=ANY,
    y=ANY,
    z=ANY,
    cond=lambda x, y, z: z | (y @ x) <= x,
    sampler=_left_prefix,
)
def _(x, y, z):
    return y.star() @ z <= x


@law(
    "kleene",
    "star_induction_right",
    x=ANY,
    y=ANY,
    z=ANY,
    cond=lambda x, y, z: z | (x @ y) <= x,
    sampler=_right_prefix,
)
def _(x, y, z):
    return z @ y.star() <= x


def _close_left(y: Relation, start: Relation) -> Relation:
    # least x above start with y.x <= x, by plain iteration
    x = start
    while True:
        nxt = x | (y @ x)
        if nxt == x:
            return x
        x = nxt


@law("kleene", "star_least_fixpoint", y=ANY, z=ANY)
def _(y, z):
    """``y* . z`` is the least fixpoint, compared with 50 closed candidates."""
    lfp = y.star() @ z
    if _close_left(y, z) != lfp or (y @ lfp) | z != lfp:
        return False
    rng = random.Random(hash((y.rows, z.rows)))
    for _ in range(50):
        candidate = _close_left(y, z | draw_any(rng, y.n))
        if not lfp <= candidate:
            return False
    return True


@law("kleene", "star_sum_and_sliding", x=ANY, y=ANY)
def _(x, y):
    return (x | y).star() == x.star() @ (y @ x.star()).star() and x @ (y @ x).star() == (
        x @ y
    ).star() @ x


@law("kleene", "star_transpose_and_plus", x=ANY)
def _(x):
    return x.star().T == x.T.star() and x.plus() <= x.star() and x.plus() == x @ x.star()


@law("helpers", "star_ignores_loops", x=ANY)
def _(x):
    return x.star() == (x - _I(x)).star()


@law("helpers", "star_and_plus_agree_off_diagonal", x=ANY)
def _(x):
    return x.star() - _I(x) == x.plus() - _I(x)


# --- array read and write --------------------------------------------------------


@law("array", "update_univalent", x=UNIVALENT, y=VECTOR, z=INJECTIVE)
def _(x, y, z):
    return is_univalent(awrite(x, y, z))


@law("array", "update_total", x=TOTAL, y=VECTOR, z=SURJECTIVE)
def _(x, y, z):
    return is_total(awrite(x, y, z))


@law("array", "update_mapping", x=MAPPING, y=VECTOR, z=BIJECTIVE)
def _(x, y, z):
    return is_mapping(awrite(x, y, z))


@law("array", "read_injective", x=UNIVALENT, y=INJECTIVE)
def _(x, y):
    return is_injective(aread(x, y))


@law("array", "read_surjective", x=TOTAL, y=SURJECTIVE)
def _(x, y):
    return is_surjective(aread(x, y))


@law("array", "read_bijective", x=MAPPING, y=BIJECTIVE)
def _(x, y):
    return is_bijective(aread(x, y))


@law("array", "read_point", x=MAPPING, y=POINT)
def _(x, y):
    return is_point(aread(x, y))


@law("array", "read_value_iff_row", x=ANY, y=POINT, z=POINT)
def _(x, y, z):
    return (aread(x, y) == z) == ((y & x) == y @ z.T)


@law("array", "put_get", x=ANY, y=SURJECTIVE_VECTOR, z=VECTOR)
def _(x, y, z):
    return aread(awrite(x, y, z), y) == z


def _outside(rng, n):
    y = VECTOR.draw(rng, n)
    return {"x": draw_any(rng, n), "y": y, "z": draw_any(rng, n), "u": draw_any(rng, n) & ~y}


@law(
    "array",
    "put_get_elsewhere",
    x=ANY,
    y=VECTOR,
    z=ANY,
    u=ANY,
    cond=lambda x, y, z, u: u <= ~y,
    sampler=_outside,
)
def _(x, y, z, u):
    return aread(awrite(x, y, z), u) == aread(x, u)


@law("array", "put_put", x=ANY, y=ANY, z=ANY, u=ANY)
def _(x, y, z, u):
    return awrite(awrite(x, y, z), y, u) == awrite(x, y, u)


def _disjoint_vectors(rng, n):
    full = (1 << n) - 1
    which = [rng.randrange(3) for _ in range(n)]
    u = Relation._raw(n, tuple(full if w == 1 else 0 for w in which))
    y = Relation._raw(n, tuple(full if w == 2 else 0 for w in which))
    return {"x": draw_any(rng, n), "y": y, "z": draw_any(rng, n), "u": u, "v": draw_any(rng, n)}


@law(
    "array",
    "put_put_commute",
    x=ANY,
    y=VECTOR,
    z=ANY,
    u=VECTOR,
    v=ANY,
    cond=lambda x, y, z, u, v: (u & y).is_bot(),
    sampler=_disjoint_vectors,
)
def _(x, y, z, u, v):
    return awrite(awrite(x, y, z), u, v) == awrite(awrite(x, u, v), y, z)


@law("array", "get_put", x=ANY, y=POINT)
def _(x, y):
    return awrite(x, y, aread(x, y)) == x


@law("array", "update_same_value", x=ANY, y=ANY, z=ANY, u=ANY)
def _(x, y, z, u):
    return awrite(awrite(x, y, z), u, z) == awrite(x, y | u, z)


@law("array", "update_split", x=ANY, y=ANY, z=ANY, w=ANY)
def _(x, y, z, w):
    return awrite(x, y, z) == awrite(awrite(x, y - w, z), y & w, z)


def _swap(x, y, z):
    return awrite(awrite(x, y, aread(x, z)), z, aread(x, y))


@law("array", "swap_injective", x=INJECTIVE, y=POINT, z=INJECTIVE_VECTOR)
def _(x, y, z):
    return is_injective(_swap(x, y, z))


@law("array", "swap_univalent", x=UNIVALENT, y=INJECTIVE_VECTOR, z=INJECTIVE_VECTOR)
def _(x, y, z):
    return is_univalent(_swap(x, y, z))


@law("array", "swap_mapping", x=MAPPING, y=POINT, z=POINT)
def _(x, y, z):
    return is_mapping(_swap(x, y, z))


@law("array", "update_nowhere", x=ANY, z=ANY)
def _(x, z):
    return awrite(x, _bot(x), z) == x


@law("array", "update_everywhere", x=ANY, z=ANY)
def _(x, z):
    return awrite(x, _top(x), z) == z.T


@law("array", "update_upper_bound", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return awrite(x, y, z) <= x | z.T


def _agreeing(rng, n):
    x, u = draw_any(rng, n), draw_any(rng, n)
    z = (u & x) | (~u & draw_any(rng, n))
    return {"x": x, "y": u & draw_any(rng, n), "z": z, "u": u}


@law(
    "array",
    "update_with_agreeing_values",
    x=ANY,
    y=ANY,
    z=ANY,
    u=ANY,
    cond=lambda x, y, z, u: y <= u and (u & x) == (u & z),
    sampler=_agreeing,
)
def _(x, y, z, u):
    return awrite(x, y, z.T) == x


@law("array", "update_with_read", x=ANY, y=POINT, z=ANY)
def _(x, y, z):
    return awrite(x, y, aread(z, y)) == awrite(x, y, z.T)


@law("array", "mapping_row_is_arc", x=MAPPING, y=POINT)
def _(x, y):
    return is_arc(x & y)


# --- weakly-connected components -----------------------------------------------


@law("wcc", "equivalence", x=ANY)
def _(x):
    return is_equivalence(wcc(x))


@law("wcc", "idempotent", x=ANY)
def _(x):
    return wcc(wcc(x)) == wcc(x)


def _ordered_pair(rng, n):
    x = draw_any(rng, n)
    return {"x": x, "y": x | draw_any(rng, n)}


@law("wcc", "isotone", x=ANY, y=ANY, cond=lambda x, y: x <= y, sampler=_ordered_pair)
def _(x, y):
    return wcc(x) <= wcc(y)


@law("wcc", "increasing", x=ANY)
def _(x):
    return x <= wcc(x)


@law("wcc", "galois", x=ANY, y=ANY)
def _(x, y):
    return (wcc(x) <= wcc(y)) == (x <= wcc(y))


@law("wcc", "bot_and_identity", x=ANY)
def _(x):
    return wcc(_bot(x)) == _I(x) and wcc(_I(x)) == _I(x)


@law("wcc", "top", x=ANY)
def _(x):
    return wcc(_top(x)) == _top(x)


@law("wcc", "loops_irrelevant", x=ANY)
def _(x):
    return wcc(x | _I(x)) == wcc(x) == wcc(x - _I(x))


@law("wcc", "join_absorbs_closure", x=ANY, y=ANY)
def _(x, y):
    return wcc(x | y) == wcc(x | wcc(y))


# --- forest components -------------------------------------------------------------


@law("fc", "equivalence", x=UNIVALENT)
def _(x):
    return is_equivalence(fc(x))


@law("fc", "increasing", x=ANY)
def _(x):
    return x <= fc(x)


@law("fc", "isotone", x=ANY, y=ANY, cond=lambda x, y: x <= y, sampler=_ordered_pair)
def _(x, y):
    return fc(x) <= fc(y)


@law("fc", "idempotent", x=UNIVALENT)
def _(x):
    return fc(fc(x)) == fc(x)


@law("fc", "closed_under_star", x=UNIVALENT)
def _(x):
    c = fc(x)
    return c.star() == c.plus() == c


@law("fc", "bot_and_identity", x=ANY)
def _(x):
    return fc(_bot(x)) == _I(x) and fc(_I(x)) == _I(x)


@law("fc", "top", x=ANY)
def _(x):
    return fc(_top(x)) == _top(x)


@law("fc", "equals_wcc", x=UNIVALENT)
def _(x):
    return fc(x) == wcc(x)


# --- laws used in the correctness proofs ---------------------------------------------


@law("lemmas", "vector_meet_compose", u=VECTOR, x=ANY, y=ANY)
def _(u, x, y):
    return u & (x @ y) == (u & x) @ y


@law("lemmas", "vector_transpose_moves_left", u=VECTOR, x=ANY, y=ANY)
def _(u, x, y):
    return (x & u.T) @ y == x @ (u & y)


@law("lemmas", "vector_transpose_meet_right", u=VECTOR, x=ANY, y=ANY)
def _(u, x, y):
    return x @ (y & u.T) == (x @ y) & u.T


@law("lemmas", "vectors_closed", u=VECTOR, v=VECTOR, x=ANY)
def _(u, v, x):
    return is_vector(u & v) and is_vector(x @ u) and is_vector(~u)


@law("lemmas", "vector_meet_is_product", u=VECTOR, v=VECTOR)
def _(u, v):
    return u & v.T == u @ v.T


@law("lemmas", "test_restricts", u=SUB_IDENTITY, x=ANY)
def _(u, x):
    return (u @ _top(x)) & x == u @ x and u.T == u


@law("lemmas", "diagonal_transpose", x=ANY)
def _(x):
    return x & _I(x) == x.T & _I(x)


def _below_identity_product(rng, n):
    u, r = draw_any(rng, n), draw_any(rng, n)
    # v(j,k) is allowed only when column j of u lies within {k}
    return {"u": u, "v": r - (u.T @ ~Relation.identity(n))}


@law(
    "lemmas",
    "star_of_join",
    u=ANY,
    v=ANY,
    cond=lambda u, v: u @ v <= _I(u),
    sampler=_below_identity_product,
)
def _(u, v):
    return (u | v).star() == v.star() @ u.star()


def _below_injective(rng, n):
    v = INJECTIVE.draw(rng, n)
    return {"u": v & draw_any(rng, n), "v": v}


@law(
    "lemmas",
    "below_injective",
    u=ANY,
    v=INJECTIVE,
    cond=lambda u, v: u <= v,
    sampler=_below_injective,
)
def _(u, v):
    return u == v & (_top(v) @ u)


@law("lemmas", "surjective_iff_top_compose", x=ANY)
def _(x):
    return is_surjective(x) == (_top(x) @ x == _top(x))


@law("lemmas", "bijective_shunting_left", u=BIJECTIVE, v=BIJECTIVE, x=ANY)
def _(u, v, x):
    return (u <= x @ v) == (v <= x.T @ u)


@law("lemmas", "bijective_shunting_right", u=BIJECTIVE, x=ANY, y=ANY)
def _(u, x, y):
    return (x <= y @ u) == (x @ u.T <= y)


@law("lemmas", "bijective_shunting_transposed", u=BIJECTIVE, x=ANY, y=ANY)
def _(u, x, y):
    return (x <= u.T @ y) == (u @ x <= y)


@law("lemmas", "univalent_distributes_meet", u=UNIVALENT, x=ANY, y=ANY)
def _(u, x, y):
    return u @ (x & y) == (u @ x) & (u @ y)


@law("lemmas", "mappings_compose", u=MAPPING, v=MAPPING)
def _(u, v):
    return is_mapping(u @ v)


@law("lemmas", "mapping_commutes_with_complement", u=MAPPING, x=ANY)
def _(u, x):
    return ~(u @ x) == u @ ~x


@law("lemmas", "mapping_meet_point_is_arc", u=MAPPING, v=POINT)
def _(u, v):
    return is_arc(u & v)


@law("lemmas", "arc_sandwich", u=ARC, x=ANY)
def _(u, x):
    return u @ x @ u <= u


@law("lemmas", "meet_shunting", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return ((x & y) <= z) == (x <= z | ~y)


@law("lemmas", "schroder", x=ANY, y=ANY, z=ANY)
def _(x, y, z):
    return ((x @ y) <= z) == (x.T @ ~z <= ~y)


@law("lemmas", "irreflexive_rotation", x=ANY, y=ANY)
def _(x, y):
    off = ~_I(x)
    return ((x @ y) <= off) == ((y @ x) <= off)


@law("lemmas", "star_idempotent", x=ANY)
def _(x):
    s = x.star()
    return s @ s == s and s.star() == s and x.plus().plus() == x.plus()


# --- forest properties -------------------------------------------------------------


def _ancestor_target(rng, n):
    p, w = ACYCLIC_PART.draw(rng, n), POINT.draw(rng, n)
    y = draw_point_at(n, rng.choice(ancestors(p, w).support()))
    return {"p": p, "w": w, "y": y}


@law(
    "forest",
    "repoint_to_ancestor_keeps_acyclic",
    p=ACYCLIC_PART,
    w=POINT,
    y=POINT,
    cond=lambda p, w, y: y <= ancestors(p, w),
    sampler=_ancestor_target,
)
def _(p, w, y):
    return _offdiag_acyclic(awrite(p, w, y))


@law("forest", "reach_from_point_first_step", x=POINT, p=ANY, exhaustive_max=3)
def _(x, p):
    return x & p.star() == (x & _I(p)) | ((x & p) @ (~x & p).star())


@law("forest", "reach_from_point_avoiding_return", x=POINT, p=ANY, exhaustive_max=3)
def _(x, p):
    return x & p.star() == (x & _I(p)) | (x & (p & (~x).T).plus())


@law("forest", "distinct_points_disjoint", x=POINT, y=POINT, cond=lambda x, y: x != y)
def _(x, y):
    return (x & y).is_bot()


@law("forest", "even_and_odd_paths_start_at_root", x=PARTIAL_FOREST)
def _(x):
    even = (x @ x).T.star()
    both = even & (x.T @ even)
    return both == (_I(x) & x) @ both


@law("forest", "square_keeps_loops", x=ACYCLIC_PART)
def _(x):
    return x.plus() & _I(x) == (x @ x) & _I(x) == x & _I(x)


@law("forest", "off_diagonal_reach_chain", x=ANY)
def _(x):
    return (x @ x) - _I(x) <= x.star() - _I(x) <= (x - _I(x)).plus()


def _grandparent_update(x, y):
    return awrite(x, y, aread(x, aread(x, y)))


@law("forest", "grandparent_update_bound", x=ANY, y=POINT)
def _(x, y):
    return _grandparent_update(x, y) <= x | (x @ x)


@law("forest", "grandparent_update_keeps_loops", x=ACYCLIC_PART, y=POINT)
def _(x, y):
    return _grandparent_update(x, y) & _I(x) == x & _I(x)


@law("forest", "grandparent_update_keeps_components", x=MAPPING, y=POINT)
def _(x, y):
    return fc(_grandparent_update(x, y)) == fc(x)


@law("forest", "grandparent_write_bound", x=ANY, y=ANY)
def _(x, y):
    return awrite(x, y, (x @ x).T) <= x | (x @ x)


@law("forest", "grandparent_write_keeps_acyclic", x=ACYCLIC_PART, y=ANY)
def _(x, y):
    return _offdiag_acyclic(awrite(x, y, (x @ x).T))


@law("forest", "grandparent_write_keeps_forest", x=FOREST, y=VECTOR)
def _(x, y):
    return is_forest(awrite(x, y, (x @ x).T))


@law("forest", "arc_used_at_most_once", x=ARC, y=ANY)
def _(x, y):
    return (x | y).plus() == y.plus() | (y.star() @ x @ y.star())


def _unreachable_target(rng, n):
    while True:
        p, w = ACYCLIC_PART.draw(rng, n), POINT.draw(rng, n)
        free = (~(p.star() @ w)).support()
        if free:
            return {"p": p, "w": w, "y": draw_point_at(n, rng.choice(free))}


@law(
    "forest",
    "link_to_unreachable_keeps_acyclic",
    p=ACYCLIC_PART,
    w=POINT,
    y=POINT,
    cond=lambda p, w, y: (y & (p.star() @ w)).is_bot(),
    sampler=_unreachable_target,
)
def _(p, w, y):
    return _offdiag_acyclic(awrite(p, w, y))


@law("forest", "self_link_keeps_acyclic", p=ACYCLIC_PART, w=POINT)
def _(p, w):
    return _offdiag_acyclic(awrite(p, w, w))


# --- Peano structure -------------------------------------------------------------


def _peano(name, **extra):
    return law("peano", name, c=PEANO, exhaustive_max=8, **extra)


@_peano("axioms")
def _(c: PeanoCtx):
    return all(peano_axioms(c.Z, c.S)) and all(peano_axioms(build_peano(c.m).Z, build_peano(c.m).S))


@_peano("successor_loop_only_at_zero")
def _(c):
    return c.S & _I(c.S) <= c.Z


@_peano("zero_reaches_all")
def _(c):
    return c.Z <= c.S.star()


@_peano("successor_connected")
def _(c):
    return c.S.T.star() @ c.S.star() == _top(c.S)


@_peano("successor_connex")
def _(c):
    return c.S.star() | c.S.T.star() == _top(c.S)


@_peano("zero_or_successor")
def _(c):
    return c.Z | (c.S.T @ _top(c.S)) == _top(c.S)


@_peano("partial_successor_univalent_injective")
def _(c):
    return is_univalent(c.Sp) and is_injective(c.Sp)


@_peano("partial_successor_generates")
def _(c):
    return c.Sp.T.star() @ c.Z == _top(c.S)


@_peano("partial_successor_irreflexive")
def _(c):
    return is_irreflexive(c.Sp)


@_peano("zero_reaches_all_partially")
def _(c):
    return c.Z <= c.Sp.star()


@_peano("partial_successor_connected")
def _(c):
    return c.Sp.T.star() @ c.Sp.star() == _top(c.S)


@_peano("partial_successor_connex")
def _(c):
    return c.Sp.star() | c.Sp.T.star() == _top(c.S)


@_peano("zero_or_partial_successor")
def _(c):
    return c.Z | (c.Sp.T @ _top(c.S)) == _top(c.S)


@_peano("zero_has_no_partial_predecessor")
def _(c):
    return (c.Sp @ c.Z).is_bot()


@_peano("last_is_point_iff_surjective")
def _(c):
    return is_point(c.M) == is_surjective(c.S)


@_peano("last_nonempty_iff_surjective")
def _(c):
    return (not c.M.is_bot()) == is_surjective(c.S)


@_peano("last_is_bot_or_point")
def _(c):
    return c.M.is_bot() or is_point(c.M)


@_peano("partial_successor_drops_last")
def _(c):
    return c.Sp == c.S - c.M


@_peano("last_is_zero_iff_singleton")
def _(c):
    return (c.M == c.Z) == (_I(c.S) == _top(c.S))


@_peano("successor_irreflexive_unless_singleton")
def _(c):
    return c.M == c.Z or is_irreflexive(c.S)


def _numerals(c: PeanoCtx) -> list[Relation]:
    out, x = [], c.Z
    for _ in range(c.m):
        out.append(x)
        x = succ(c, x)
    return out


@_peano("order_embedding")
def _(c):
    """``k`` maps to ``succ^k(zero)``: distinct points, top overflows, order kept."""
    nums = _numerals(c)
    if len(set(nums)) != c.m or not all(is_point(x) for x in nums):
        return False
    if not succ(c, nums[-1]).is_bot() or nums[-1] != c.M:
        return False
    return all(less(c, nums[a], nums[b]) == (a < b) for a in range(c.m) for b in range(c.m))


@_peano("standard_model_matches_integers")
def _(c):
    std = build_peano(c.m)
    for a in range(c.m):
        x = std.number(a)
        nxt = succ(std, x)
        if a == c.m - 1:
            if not nxt.is_bot():
                return False
        elif point_index(nxt) != a + 1:
            return False
        if any(less(std, x, std.number(b)) != (a < b) for b in range(c.m)):
            return False
    return std.Z == std.number(0)


# --- runner ---------------------------------------------------------------------


@dataclass
class LawResult:
    law: Law
    cases: int = 0
    exhaustive_sizes: list[int] = field(default_factory=list)
    sampled_sizes: list[int] = field(default_factory=list)
    cases_by_size: dict[int, int] = field(default_factory=dict)
    counterexample: dict | None = None
    failed_at: int | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None and self.error is None


def select(suite: str = "all") -> list[Law]:
    names = [s.strip() for s in suite.split(",")]
    if "all" in names:
        return list(LAWS)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)} or all")
    return [lw for lw in LAWS if lw.suite in names]


def _space(law: Law, n: int) -> int | None:
    total = 1
    for _, kind in law.kinds:
        size = kind.size(n)
        if size is None:
            return None
        total *= size
    return total


def _enumerate(law: Law, n: int) -> Iterable[dict]:
    names = [v for v, _ in law.kinds]
    for combo in itertools.product(*(kind.members(n) for _, kind in law.kinds)):
        yield dict(zip(names, combo))


def _draw(law: Law, rng: random.Random, n: int) -> dict:
    if law.sampler is not None:
        return law.sampler(rng, n)
    return {v: kind.draw(rng, n) for v, kind in law.kinds}


def run_law(law: Law, n_max: int, samples: int, seed: int) -> LawResult:
    """Check ``law`` at every size up to ``n_max``; stop at the first counterexample."""
    result = LawResult(law)
    for n in range(1, n_max + 1):
        space = _space(law, n)
        exhaustive = n <= law.exhaustive_max or (space is not None and space <= samples)
        if exhaustive:
            cases = _enumerate(law, n)
            result.exhaustive_sizes.append(n)
        else:
            cases = _sampled(law, n, samples, seed, result)
            result.sampled_sizes.append(n)
        for case in cases:
            if law.cond is not None and not law.cond(**case):
                continue
            result.cases += 1
            result.cases_by_size[n] = result.cases_by_size.get(n, 0) + 1
            if not law.check(**case):
                result.counterexample = case
                result.failed_at = n
                return result
        if result.error:
            return result
    return result


def _sampled(law: Law, n: int, samples: int, seed: int, result: LawResult):
    rng = random.Random(f"{seed}:{law.qualified}:{n}")
    found = 0
    attempts = 0
    while found < samples:
        attempts += 1
        if attempts > 50 * samples:
            result.error = f"only {found} qualifying cases in {attempts - 1} draws at n={n}"
            return
        case = _draw(law, rng, n)
        if law.cond is None or law.cond(**case):
            found += 1
            yield case


def run_suite(suite: str, n_max: int, samples: int, seed: int) -> list[LawResult]:
    return [run_law(lw, n_max, samples, seed) for lw in select(suite)]


def _show(value) -> list[str]:
    if isinstance(value, Relation):
        return value.lines()
    if isinstance(value, PeanoCtx):
        return [f"Z = {'/'.join(value.Z.lines())}", f"S = {'/'.join(value.S.lines())}"]
    return [repr(value)]


def format_report(results: list[LawResult], suite: str, n_max: int, samples: int, seed: int) -> str:
    lines = [f"laws suite={suite} n={n_max} samples={samples} seed={seed}"]
    for r in results:
        if r.passed:
            lines.append(f"PASS {r.law.qualified} cases={r.cases}")
            continue
        if r.error:
            lines.append(f"FAIL {r.law.qualified} {r.error}")
            continue
        lines.append(f"FAIL {r.law.qualified} n={r.failed_at} after {r.cases} cases; counterexample:")
        for var, value in r.counterexample.items():
            shown = _show(value)
            lines.append(f"  {var} =")
            lines.extend(f"    {ln}" for ln in shown)
    failed = sum(not r.passed for r in results)
    lines.append(f"summary {len(results) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"
