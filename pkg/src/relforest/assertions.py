"""Named pre/postconditions and invariants of the disjoint-set programs.

Each formula is written out over the algebra exactly as stated for its
program; :func:`eval_assertion` looks one up by name and evaluates it against
a dictionary of bound relations.
"""

from __future__ import annotations

import enum
import functools
import inspect
from typing import Callable, Mapping

from .arrays import aread, awrite
from .peano import build_peano, rank_property
from .relation import (
    Relation,
    ancestors,
    fc,
    is_forest,
    is_point,
    is_vector,
    root_of,
    wcc,
)


class Assertion(str, enum.Enum):
    MAKE_SET_PRE = "make_set_pre"
    MAKE_SET_POST = "make_set_post"
    INIT_SETS_INV = "init_sets_inv"
    INIT_SETS_POST = "init_sets_post"
    INIT_RANKS_INV = "init_ranks_inv"
    INIT_RANKS_POST = "init_ranks_post"
    FIND_SET_PRE = "find_set_pre"
    FIND_SET_INV = "find_set_inv"
    FIND_SET_POST = "find_set_post"
    PATH_COMPRESSION_PRE = "path_compression_pre"
    PATH_COMPRESSION_INV = "path_compression_inv"
    PATH_COMPRESSION_POST = "path_compression_post"
    PATH_SPLITTING_INV = "path_splitting_inv"
    PATH_SPLITTING_FACTS = "path_splitting_facts"
    PATH_SPLITTING_POST = "path_splitting_post"
    PATH_HALVING_INV = "path_halving_inv"
    PATH_HALVING_FACTS = "path_halving_facts"
    PATH_HALVING_POST = "path_halving_post"
    UNION_SETS_PRE = "union_sets_pre"
    UNION_SETS_POST = "union_sets_post"
    RANK_PROPERTY = "rank_property"
    SUCC_IN_RANGE = "succ_in_range"

    def __str__(self) -> str:
        return self.value


class MissingBindingError(KeyError):
    pass


def _one(p: Relation) -> Relation:
    return Relation.identity(p.n)


def _grand(p0: Relation) -> Relation:
    return (p0 @ p0).T


def make_set_pre(x):
    return is_point(x)


def make_set_post(p, x, p0):
    return (x & p) == x @ x.T and (~x & p) == (~x & p0)


def init_sets_inv(p, h):
    return is_vector(h) and p - h == _one(p) - h


def init_sets_post(p, h):
    return p == _one(p) and is_forest(p) and h.is_bot()


def init_ranks_inv(p, h, rank):
    Z = build_peano(p.n).Z
    return init_sets_inv(p, h) and rank - h == Z.T - h


def init_ranks_post(p, h, rank):
    ctx = build_peano(p.n)
    return init_sets_post(p, h) and rank == ctx.Z.T and rank_property(p, rank, ctx)


def find_set_pre(p, x):
    return is_forest(p) and is_point(x)


def find_set_inv(p, x, y):
    return find_set_pre(p, x) and is_point(y) and y <= ancestors(p, x)


def find_set_post(p, x, y):
    return is_point(y) and y == root_of(p, x)


def path_compression_pre(p, x, y):
    return is_forest(p) and is_point(x) and is_point(y) and y == root_of(p, x)


def _same_components_and_roots(p, p0):
    return fc(p) == fc(p0) and (p & _one(p)) == (p0 & _one(p0))


def path_compression_inv(p, x, y, p0, w):
    return (
        path_compression_pre(p, x, y)
        and is_forest(p0)
        and _same_components_and_roots(p, p0)
        and is_point(w)
        and w <= ancestors(p0, x)
        and y == root_of(p, w)
        and awrite(p0, ancestors(p0, x) - ancestors(p0, w), y) == p
    )


def path_compression_post(p, x, y, p0):
    return (
        path_compression_pre(p, x, y)
        and _same_components_and_roots(p, p0)
        and awrite(p0, ancestors(p0, x), y) == p
    )


def path_splitting_inv(p, x, y, p0):
    return (
        find_set_pre(p, x)
        and is_point(y)
        and y <= ancestors(p0, x)
        and is_forest(p0)
        and awrite(p0, ancestors(p0, x) - ancestors(p0, y), _grand(p0)) == p
    )


def _parent_and_grandparent_kept(p, y, p0):
    return (
        aread(p, y) == aread(p0, y)
        and aread(p, aread(p, y)) == aread(p0, aread(p0, y))
        and _same_components_and_roots(p, p0)
    )


def path_splitting_facts(p, y, p0):
    return _parent_and_grandparent_kept(p, y, p0)


def path_splitting_post(p, x, y, p0):
    return (
        path_compression_pre(p, x, y)
        and _same_components_and_roots(p, p0)
        and awrite(p0, ancestors(p0, x), _grand(p0)) == p
    )


def path_halving_inv(p, x, y, p0):
    return (
        find_set_pre(p, x)
        and is_point(y)
        and y <= ancestors(p0, x)
        and is_forest(p0)
        and awrite(p0, ancestors(p0 @ p0, x) - ancestors(p0, y), _grand(p0)) == p
    )


def path_halving_facts(p, y, p0):
    return _parent_and_grandparent_kept(p, y, p0)


def path_halving_post(p, x, y, p0):
    return (
        path_compression_pre(p, x, y)
        and _same_components_and_roots(p, p0)
        and awrite(p0, ancestors(p0 @ p0, x), _grand(p0)) == p
    )


def union_sets_pre(p, x, y):
    return is_forest(p) and is_point(x) and is_point(y)


def union_sets_post(p, x, y, p0):
    return union_sets_pre(p, x, y) and fc(p) == wcc(p0 | x @ y.T)


def rank_property_of(p, rank):
    return rank_property(p, rank, build_peano(p.n))


def succ_in_range(number):
    return number != build_peano(number.n).top_number


FORMULAS: dict[Assertion, Callable[..., bool]] = {
    Assertion.MAKE_SET_PRE: make_set_pre,
    Assertion.MAKE_SET_POST: make_set_post,
    Assertion.INIT_SETS_INV: init_sets_inv,
    Assertion.INIT_SETS_POST: init_sets_post,
    Assertion.INIT_RANKS_INV: init_ranks_inv,
    Assertion.INIT_RANKS_POST: init_ranks_post,
    Assertion.FIND_SET_PRE: find_set_pre,
    Assertion.FIND_SET_INV: find_set_inv,
    Assertion.FIND_SET_POST: find_set_post,
    Assertion.PATH_COMPRESSION_PRE: path_compression_pre,
    Assertion.PATH_COMPRESSION_INV: path_compression_inv,
    Assertion.PATH_COMPRESSION_POST: path_compression_post,
    Assertion.PATH_SPLITTING_INV: path_splitting_inv,
    Assertion.PATH_SPLITTING_FACTS: path_splitting_facts,
    Assertion.PATH_SPLITTING_POST: path_splitting_post,
    Assertion.PATH_HALVING_INV: path_halving_inv,
    Assertion.PATH_HALVING_FACTS: path_halving_facts,
    Assertion.PATH_HALVING_POST: path_halving_post,
    Assertion.UNION_SETS_PRE: union_sets_pre,
    Assertion.UNION_SETS_POST: union_sets_post,
    Assertion.RANK_PROPERTY: rank_property_of,
    Assertion.SUCC_IN_RANGE: succ_in_range,
}


@functools.lru_cache(maxsize=None)
def _parameters(formula: Callable[..., bool]) -> tuple[str, ...]:
    return tuple(inspect.signature(formula).parameters)


def free_variables(name: Assertion | str) -> tuple[str, ...]:
    return _parameters(FORMULAS[Assertion(name)])


def eval_assertion(name: Assertion | str, bindings: Mapping[str, Relation]) -> bool:
    """Evaluate the named formula; extra bindings are ignored."""
    formula = FORMULAS[Assertion(name)]
    args = {}
    for var in free_variables(name):
        if var not in bindings:
            raise MissingBindingError(f"{name} needs a binding for {var!r}")
        args[var] = bindings[var]
    return bool(formula(**args))
