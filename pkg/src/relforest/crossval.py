"""Differential testing of the relational programs against the index oracle.

A seeded random sequence of finds and unions is applied to both engines in
lockstep.  After every operation the partitions, the parent arrays and (for
union by rank) the rank arrays must agree.  On the first disagreement the
operation prefix is shrunk greedily to a short reproducer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lifting import abstract, lift_parent, lift_rank
from .oracle import OracleForest, oracle_find, oracle_union, partition_of
from .peano import build_peano
from .programs import (
    STRATEGIES,
    ForestState,
    find_with,
    init_ranks,
    init_sets,
    union_sets,
    union_sets_by_rank,
)
from .relation import Relation, RelationError, point_index


@dataclass(frozen=True)
class Op:
    kind: str
    i: int
    j: int | None = None

    def __str__(self) -> str:
        return f"{self.kind} {self.i}" if self.j is None else f"{self.kind} {self.i} {self.j}"

    @classmethod
    def parse(cls, text: str) -> Op:
        kind, *args = text.split()
        if kind == "find" and len(args) == 1:
            return cls("find", int(args[0]))
        if kind == "union" and len(args) == 2:
            return cls("union", int(args[0]), int(args[1]))
        raise ValueError(f"bad operation {text!r}")


@dataclass(frozen=True)
class Divergence:
    step: int
    op: Op
    aspect: str
    detail: str


@dataclass
class CrossvalResult:
    n: int
    strategy: str
    by_rank: bool
    ops: list[Op]
    executed: int
    max_rank: int
    divergence: Divergence | None = None
    reproducer: list[Op] | None = None

    @property
    def ok(self) -> bool:
        return self.divergence is None


def random_ops(n: int, count: int, rng: random.Random, union_share: float = 0.5) -> list[Op]:
    ops = []
    for _ in range(count):
        if rng.random() < union_share:
            ops.append(Op("union", rng.randrange(n), rng.randrange(n)))
        else:
            ops.append(Op("find", rng.randrange(n)))
    return ops


def _relational_step(state: ForestState, op: Op, strategy: str, by_rank: bool):
    n = state.n
    x = Relation.point(n, op.i)
    if op.kind == "find":
        root, state = find_with(state, x, strategy, mode="unchecked")
        return point_index(root), state
    y = Relation.point(n, op.j)
    if by_rank:
        return None, union_sets_by_rank(state, x, y, build_peano(n), strategy=strategy, mode="unchecked")
    return None, union_sets(state, x, y, strategy=strategy, mode="unchecked")


def _oracle_step(f: OracleForest, op: Op, strategy: str, by_rank: bool):
    if op.kind == "find":
        return oracle_find(f, op.i, strategy)
    return None, oracle_union(f, op.i, op.j, by_rank=by_rank, strategy=strategy)


def _compare(state: ForestState, f: OracleForest, root_rel, root_orc, by_rank: bool) -> tuple[str, str] | None:
    if root_rel != root_orc:
        return "root", f"relational root {root_rel}, oracle root {root_orc}"
    try:
        part = abstract(state.p, check=False)
    except RelationError as exc:
        return "partition", f"relational parent is not a forest: {exc}"
    expected = partition_of(f)
    if part != expected:
        return "partition", f"relational {part} vs oracle {expected}"
    lifted = lift_parent(f.parent)
    if state.p != lifted:
        return "parent", f"relational {'/'.join(state.p.lines())} vs oracle {f.parent}"
    if by_rank:
        try:
            ok = state.rank == lift_rank(f.rank)
        except RelationError as exc:
            return "rank", str(exc)
        if not ok:
            return "rank", f"relational {'/'.join(state.rank.lines())} vs oracle {f.rank}"
    return None


def lockstep(n: int, ops: list[Op], strategy: str, by_rank: bool) -> CrossvalResult:
    """Run ``ops`` on both engines and stop at the first disagreement."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    state = init_ranks(n, mode="unchecked") if by_rank else init_sets(n, mode="unchecked")
    f = OracleForest.fresh(n)
    result = CrossvalResult(n, strategy, by_rank, list(ops), 0, 0)
    for k, op in enumerate(ops):
        try:
            root_rel, state = _relational_step(state, op, strategy, by_rank)
        except (RelationError, RuntimeError) as exc:
            result.divergence = Divergence(k, op, "error", f"relational side raised {exc}")
            return result
        root_orc, f = _oracle_step(f, op, strategy, by_rank)
        result.executed = k + 1
        if by_rank:
            result.max_rank = max(result.max_rank, max(f.rank))
        mismatch = _compare(state, f, root_rel, root_orc, by_rank)
        if mismatch:
            result.divergence = Divergence(k, op, *mismatch)
            return result
    return result


def shrink(n: int, ops: list[Op], strategy: str, by_rank: bool) -> list[Op]:
    """Greedily drop operations while the sequence still diverges."""
    current = list(ops)
    changed = True
    while changed:
        changed = False
        for k in range(len(current)):
            candidate = current[:k] + current[k + 1 :]
            trial = lockstep(n, candidate, strategy, by_rank)
            if not trial.ok:
                current = candidate[: trial.divergence.step + 1]
                changed = True
                break
    return current


def crossvalidate(n: int, count: int, strategy: str, by_rank: bool, seed: int) -> CrossvalResult:
    rng = random.Random(seed)
    ops = random_ops(n, count, rng)
    result = lockstep(n, ops, strategy, by_rank)
    if not result.ok:
        prefix = ops[: result.divergence.step + 1]
        result.reproducer = shrink(n, prefix, strategy, by_rank)
    return result


def format_result(result: CrossvalResult, seed: int) -> str:
    kind = "by-rank" if result.by_rank else "plain"
    lines = [
        f"crossvalidate n={result.n} ops={len(result.ops)} strategy={result.strategy} union={kind} seed={seed}",
        f"executed {result.executed}",
        f"max-rank {result.max_rank}",
    ]
    if result.ok:
        lines.append("divergences 0")
    else:
        d = result.divergence
        lines.append(f"DIVERGENCE at op {d.step} ({d.op}): {d.aspect}: {d.detail}")
        lines.append("prefix " + "; ".join(map(str, result.ops[: d.step + 1])))
        if result.reproducer is not None:
            lines.append("reproducer " + "; ".join(map(str, result.reproducer)))
    return "\n".join(lines) + "\n"
