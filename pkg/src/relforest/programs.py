"""Disjoint-set forest programs executed directly over relations.

Every program is a transcription of an annotated while-program: array
accesses go through :func:`~relforest.arrays.aread` and
:func:`~relforest.arrays.awrite`, and each precondition, loop invariant,
variant and postcondition is evaluated by the :class:`~relforest.trace.Execution`
that carries the run.  Programs that call other programs share the caller's
execution, so a single trace covers the whole call tree.

All loops are capped at ``n + 1`` iterations; a forest never needs more, so
hitting the cap means a non-forest got through (only possible outside strict
mode).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Mapping

from .arrays import aread, awrite
from .assertions import Assertion as A
from .peano import PeanoCtx, build_peano, less, succ
from .relation import Relation, ancestors, choose_point
from .trace import Execution, ProgramTrace

STRATEGIES = ("naive", "compress", "split", "halve")


@dataclass(frozen=True)
class ForestState:
    p: Relation
    rank: Relation | None = None

    @property
    def n(self) -> int:
        return self.p.n


def _size(v: Relation) -> int:
    # equals down_count on vectors; tolerant of the non-vectors a trace-mode run may see
    return sum(1 for r in v.rows if r)


def _ancestor_variant(node: str):
    return lambda b: _size(ancestors(b["p"], b[node]))


def _execution(program: str, mode: str, execution: Execution | None) -> Execution:
    return execution if execution is not None else Execution(program, mode)


def make_set(state: ForestState, x: Relation, *, mode="strict", execution=None) -> ForestState:
    ex = _execution("make_set", mode, execution)
    p0 = state.p
    ex.check("pre", "make_set", A.MAKE_SET_PRE, x=x)
    p = awrite(p0, x, x)
    ex.check("post", "make_set", A.MAKE_SET_POST, p=p, x=x, p0=p0)
    return replace(state, p=p)


def init_sets(n: int, *, mode="strict", execution=None) -> ForestState:
    """Apply make-set to every element through a FOREACH loop over ``h``."""
    ex = _execution("init_sets", mode, execution)
    p = Relation.bot(n)
    h = Relation.top(n)
    empty = Relation.bot(n)
    loop = ex.loop("init_sets", (A.INIT_SETS_INV,), lambda b: _size(b["h"]), cap=n + 1)
    while loop.head(h != empty, p=p, h=h):
        x = choose_point(h)
        p = make_set(ForestState(p), x, execution=ex).p
        h = awrite(h, x, empty)
    ex.check("post", "init_sets", A.INIT_SETS_POST, p=p, h=h)
    return ForestState(p)


def init_ranks(n: int, *, mode="strict", execution=None) -> ForestState:
    """init_sets extended with ``rank[x] := 0`` in the loop body."""
    ex = _execution("init_ranks", mode, execution)
    zero = build_peano(n).Z
    p = Relation.bot(n)
    rank = Relation.bot(n)
    h = Relation.top(n)
    empty = Relation.bot(n)
    loop = ex.loop("init_ranks", (A.INIT_RANKS_INV,), lambda b: _size(b["h"]), cap=n + 1)
    while loop.head(h != empty, p=p, h=h, rank=rank):
        x = choose_point(h)
        p = make_set(ForestState(p), x, execution=ex).p
        rank = awrite(rank, x, zero)
        h = awrite(h, x, empty)
    ex.check("post", "init_ranks", A.INIT_RANKS_POST, p=p, h=h, rank=rank)
    return ForestState(p, rank)


def find_set(state: ForestState, x: Relation, *, mode="strict", execution=None) -> Relation:
    ex = _execution("find_set", mode, execution)
    p = state.p
    ex.check("pre", "find_set", A.FIND_SET_PRE, p=p, x=x)
    y = x
    loop = ex.loop("find_set", (A.FIND_SET_INV,), _ancestor_variant("y"), cap=p.n + 1)
    while loop.head(y != aread(p, y), p=p, x=x, y=y):
        y = aread(p, y)
    ex.check("post", "find_set", A.FIND_SET_POST, p=p, x=x, y=y)
    return y


def path_compression(
    state: ForestState, x: Relation, y: Relation, *, mode="strict", execution=None
) -> ForestState:
    """Second traversal from ``x`` that repoints every visited node at the root ``y``."""
    ex = _execution("path_compression", mode, execution)
    p0 = p = state.p
    ex.check("pre", "path_compression", A.PATH_COMPRESSION_PRE, p=p, x=x, y=y)
    w = x
    loop = ex.loop("path_compression", (A.PATH_COMPRESSION_INV,), _ancestor_variant("w"), cap=p.n + 1)
    while loop.head(y != aread(p, w), p=p, x=x, y=y, p0=p0, w=w):
        t = w
        w = aread(p, w)
        p = awrite(p, t, y)
    ex.check("post", "path_compression", A.PATH_COMPRESSION_POST, p=p, x=x, y=y, p0=p0)
    return replace(state, p=p)


def path_compression_assign(
    state: ForestState, x: Relation, y: Relation, *, mode="strict", execution=None
) -> ForestState:
    """Path compression as the single assignment ``p[p^T* . x] := y``."""
    ex = _execution("path_compression_assign", mode, execution)
    p0 = state.p
    ex.check("pre", "path_compression_assign", A.PATH_COMPRESSION_PRE, p=p0, x=x, y=y)
    p = awrite(p0, ancestors(p0, x), y)
    ex.check("post", "path_compression_assign", A.PATH_COMPRESSION_POST, p=p, x=x, y=y, p0=p0)
    return replace(state, p=p)


def find_set_path_compression(
    state: ForestState, x: Relation, *, mode="strict", execution=None
) -> tuple[Relation, ForestState]:
    ex = _execution("find_set_path_compression", mode, execution)
    p0 = state.p
    ex.check("pre", "find_set_path_compression", A.FIND_SET_PRE, p=p0, x=x)
    y = find_set(state, x, execution=ex)
    state = path_compression(state, x, y, execution=ex)
    ex.check("post", "find_set_path_compression", A.PATH_COMPRESSION_POST, p=state.p, x=x, y=y, p0=p0)
    return y, state


def find_path_splitting(
    state: ForestState, x: Relation, *, mode="strict", execution=None
) -> tuple[Relation, ForestState]:
    """One pass to the root, repointing every visited node at its grandparent."""
    ex = _execution("find_path_splitting", mode, execution)
    p0 = p = state.p
    ex.check("pre", "find_path_splitting", A.FIND_SET_PRE, p=p, x=x)
    y = x
    loop = ex.loop(
        "find_path_splitting",
        (A.PATH_SPLITTING_INV, A.PATH_SPLITTING_FACTS),
        _ancestor_variant("y"),
        cap=p.n + 1,
    )
    while loop.head(y != aread(p, y), p=p, x=x, y=y, p0=p0):
        t = aread(p, y)
        p = awrite(p, y, aread(p, aread(p, y)))
        y = t
    ex.check("post", "find_path_splitting", A.PATH_SPLITTING_POST, p=p, x=x, y=y, p0=p0)
    return y, replace(state, p=p)


def find_path_halving(
    state: ForestState, x: Relation, *, mode="strict", execution=None
) -> tuple[Relation, ForestState]:
    """One pass to the root that repoints every second node at its grandparent."""
    ex = _execution("find_path_halving", mode, execution)
    p0 = p = state.p
    ex.check("pre", "find_path_halving", A.FIND_SET_PRE, p=p, x=x)
    y = x
    loop = ex.loop(
        "find_path_halving",
        (A.PATH_HALVING_INV, A.PATH_HALVING_FACTS),
        _ancestor_variant("y"),
        cap=p.n + 1,
    )
    while loop.head(y != aread(p, y), p=p, x=x, y=y, p0=p0):
        p = awrite(p, y, aread(p, aread(p, y)))
        y = aread(p, y)
    ex.check("post", "find_path_halving", A.PATH_HALVING_POST, p=p, x=x, y=y, p0=p0)
    return y, replace(state, p=p)


def find_with(
    state: ForestState, x: Relation, strategy: str, *, mode="strict", execution=None
) -> tuple[Relation, ForestState]:
    """Find the root of ``x`` and apply the named path-shortening strategy."""
    ex = _execution(f"find_{strategy}", mode, execution)
    if strategy == "naive":
        return find_set(state, x, execution=ex), state
    if strategy == "compress":
        y = find_set(state, x, execution=ex)
        return y, path_compression(state, x, y, execution=ex)
    if strategy == "split":
        return find_path_splitting(state, x, execution=ex)
    if strategy == "halve":
        return find_path_halving(state, x, execution=ex)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def union_sets(
    state: ForestState,
    x: Relation,
    y: Relation,
    *,
    strategy: str = "compress",
    mode="strict",
    execution=None,
) -> ForestState:
    """Find both roots (shortening paths per ``strategy``), then link ``r`` under ``s``."""
    ex = _execution("union_sets", mode, execution)
    p0 = state.p
    ex.check("pre", "union_sets", A.UNION_SETS_PRE, p=p0, x=x, y=y)
    r, state = find_with(state, x, strategy, execution=ex)
    s, state = find_with(state, y, strategy, execution=ex)
    p = awrite(state.p, r, s)
    ex.check("post", "union_sets", A.UNION_SETS_POST, p=p, x=x, y=y, p0=p0)
    return replace(state, p=p)


def union_sets_combined(
    state: ForestState, x: Relation, y: Relation, *, mode="strict", execution=None
) -> ForestState:
    """union-sets built from two calls of the combined find-and-compress program."""
    ex = _execution("union_sets_combined", mode, execution)
    p0 = state.p
    ex.check("pre", "union_sets_combined", A.UNION_SETS_PRE, p=p0, x=x, y=y)
    r, state = find_set_path_compression(state, x, execution=ex)
    s, state = find_set_path_compression(state, y, execution=ex)
    p = awrite(state.p, r, s)
    ex.check("post", "union_sets_combined", A.UNION_SETS_POST, p=p, x=x, y=y, p0=p0)
    return replace(state, p=p)


def union_sets_by_rank(
    state: ForestState,
    x: Relation,
    y: Relation,
    ctx: PeanoCtx | None = None,
    *,
    strategy: str = "compress",
    mode="strict",
    execution=None,
) -> ForestState:
    """Link the root of smaller rank under the other; bump the rank on ties.

    ``ctx`` must be the modulo-``n`` model; the rank assertions are evaluated
    against :func:`~relforest.peano.build_peano` of the forest size.
    """
    if state.rank is None:
        raise ValueError("union_sets_by_rank needs a rank array")
    ctx = ctx if ctx is not None else build_peano(state.n)
    ex = _execution("union_sets_by_rank", mode, execution)
    p0, rank = state.p, state.rank
    ex.check("pre", "union_sets_by_rank", A.UNION_SETS_PRE, p=p0, x=x, y=y)
    ex.check("pre", "union_sets_by_rank", A.RANK_PROPERTY, p=p0, rank=rank)
    r, state = find_with(state, x, strategy, execution=ex)
    s, state = find_with(state, y, strategy, execution=ex)
    p = state.p
    if r != s:
        rank_r = aread(rank, r)
        rank_s = aread(rank, s)
        if less(ctx, rank_r, rank_s):
            p = awrite(p, r, s)
        else:
            p = awrite(p, s, r)
            if rank_r == rank_s:
                ex.check("pre", "succ", A.SUCC_IN_RANGE, number=rank_r)
                rank = awrite(rank, r, succ(ctx, rank_r))
    ex.check("post", "union_sets_by_rank", A.UNION_SETS_POST, p=p, x=x, y=y, p0=p0)
    ex.check("post", "union_sets_by_rank", A.RANK_PROPERTY, p=p, rank=rank)
    return ForestState(p, rank)


# --- uniform entry point ------------------------------------------------------


def _state(inputs: Mapping) -> ForestState:
    return ForestState(inputs["p"], inputs.get("rank"))


def _pair(y: Relation, state: ForestState) -> dict:
    return {"y": y, "p": state.p}


PROGRAMS: dict[str, tuple[tuple[str, ...], Callable[[Execution, Mapping], dict]]] = {
    "make_set": (("p", "x"), lambda ex, i: {"p": make_set(_state(i), i["x"], execution=ex).p}),
    "init_sets": (("n",), lambda ex, i: {"p": init_sets(i["n"], execution=ex).p}),
    "init_ranks": (
        ("n",),
        lambda ex, i: (lambda s: {"p": s.p, "rank": s.rank})(init_ranks(i["n"], execution=ex)),
    ),
    "find_set": (("p", "x"), lambda ex, i: {"y": find_set(_state(i), i["x"], execution=ex)}),
    "path_compression": (
        ("p", "x", "y"),
        lambda ex, i: {"p": path_compression(_state(i), i["x"], i["y"], execution=ex).p},
    ),
    "path_compression_assign": (
        ("p", "x", "y"),
        lambda ex, i: {"p": path_compression_assign(_state(i), i["x"], i["y"], execution=ex).p},
    ),
    "find_set_path_compression": (
        ("p", "x"),
        lambda ex, i: _pair(*find_set_path_compression(_state(i), i["x"], execution=ex)),
    ),
    "find_path_splitting": (
        ("p", "x"),
        lambda ex, i: _pair(*find_path_splitting(_state(i), i["x"], execution=ex)),
    ),
    "find_path_halving": (
        ("p", "x"),
        lambda ex, i: _pair(*find_path_halving(_state(i), i["x"], execution=ex)),
    ),
    "union_sets": (
        ("p", "x", "y"),
        lambda ex, i: {"p": union_sets(_state(i), i["x"], i["y"], execution=ex).p},
    ),
    "union_sets_combined": (
        ("p", "x", "y"),
        lambda ex, i: {"p": union_sets_combined(_state(i), i["x"], i["y"], execution=ex).p},
    ),
    "union_sets_by_rank": (
        ("p", "x", "y", "rank"),
        lambda ex, i: (lambda s: {"p": s.p, "rank": s.rank})(
            union_sets_by_rank(_state(i), i["x"], i["y"], execution=ex)
        ),
    ),
}


def run_checked(program: str, inputs: Mapping, mode: str = "strict") -> tuple[dict, ProgramTrace]:
    """Run a named program under assertion checking and return its outputs and trace.

    In strict mode a failed assertion raises
    :class:`~relforest.trace.AssertionViolation`; in trace mode it is only
    recorded.  A loop running past ``n + 1`` iterations raises
    :class:`~relforest.trace.IterationCapExceeded` in every mode.
    """
    try:
        needed, run = PROGRAMS[program]
    except KeyError:
        raise ValueError(f"unknown program {program!r}; expected one of {sorted(PROGRAMS)}") from None
    missing = [k for k in needed if k not in inputs]
    if missing:
        raise ValueError(f"{program} needs inputs {missing}")
    ex = Execution(program, mode)
    try:
        outputs = run(ex, inputs)
    except (AssertionError, RuntimeError) as exc:
        exc.trace = ex.trace  # keep the partial trace for diagnostics
        raise
    return outputs, ex.trace
