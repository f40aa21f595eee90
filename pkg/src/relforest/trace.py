"""Runtime checking of annotated while-programs and the trace they leave.

An :class:`Execution` evaluates pre/postconditions, loop invariants and
variants as a program runs.  In ``strict`` mode the first failed check raises
:class:`AssertionViolation`; in ``trace`` mode every verdict is recorded and
execution continues; ``unchecked`` skips evaluation entirely (used when a
program runs as one side of a differential test).

Trace text format, version 1, one record per line::

    relforest-trace 1
    program <name>
    mode <strict|trace|unchecked>
    check <pre|post|exit> <where> <assertion> <ok|FAIL>
    step <loop>#<k> iter=<i> variant=<before>-><after> <assertion>=<ok|FAIL> ...
      <var> = <row>/<row>/...          (optional matrix dumps under a step)
    final <ok|FAIL>

``<after>`` is ``-`` when the loop was aborted before the next head.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .assertions import Assertion, eval_assertion
from .relation import Relation

MODES = ("strict", "trace", "unchecked")
FORMAT_VERSION = 1


class AssertionViolation(AssertionError):
    """A checked assertion evaluated to false during a strict run."""

    def __init__(self, program: str, where: str, name: str, iteration: int | None = None):
        self.program = program
        self.where = where
        self.name = str(name)
        self.iteration = iteration
        at = f" at iteration {iteration}" if iteration is not None else ""
        super().__init__(f"{program}: {where} assertion {self.name} failed{at}")


class VariantViolation(AssertionViolation):
    def __init__(self, program: str, loop: str, iteration: int, before: int, after: int):
        super().__init__(program, "variant", f"{loop} variant", iteration)
        self.args = (
            f"{program}: variant of {loop} did not decrease at iteration "
            f"{iteration} ({before} -> {after})",
        )


class IterationCapExceeded(RuntimeError):
    def __init__(self, program: str, loop: str, cap: int):
        self.program = program
        self.loop = loop
        self.cap = cap
        super().__init__(f"{program}: loop {loop} exceeded {cap} iterations")


@dataclass
class Step:
    loop: str
    iteration: int
    variant: int | None
    variant_after: int | None
    verdicts: dict[str, bool]
    snapshot: dict[str, Relation]
    seq: int = field(default=0, compare=False, repr=False)


@dataclass
class Check:
    kind: str
    where: str
    name: str
    verdict: bool
    seq: int = field(default=0, compare=False, repr=False)


@dataclass
class ProgramTrace:
    program: str
    mode: str
    steps: list[Step] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def final(self) -> bool:
        """Verdict of the outermost program's postcondition; false if it was never reached."""
        posts = [c for c in self.checks if c.kind == "post" and c.where == self.program]
        return bool(posts) and all(c.verdict for c in posts)

    @property
    def passed(self) -> bool:
        return (
            all(c.verdict for c in self.checks)
            and all(all(s.verdicts.values()) for s in self.steps)
            and self.variants_decrease()
        )

    def variant_chains(self) -> dict[str, list[int]]:
        """Variant values per loop instance: each head value, then the exit value."""
        chains: dict[str, list[int]] = {}
        for s in self.steps:
            chain = chains.setdefault(s.loop, [])
            if not chain and s.variant is not None:
                chain.append(s.variant)
            if s.variant_after is not None:
                chain.append(s.variant_after)
        return chains

    def variants_decrease(self) -> bool:
        return all(
            all(a > b for a, b in zip(chain, chain[1:])) for chain in self.variant_chains().values()
        )

    def failures(self) -> list[str]:
        out = [f"{c.kind} {c.where} {c.name}" for c in self.checks if not c.verdict]
        for s in self.steps:
            out += [f"step {s.loop} iter={s.iteration} {k}" for k, v in s.verdicts.items() if not v]
        return out


def _verdict(ok: bool) -> str:
    return "ok" if ok else "FAIL"


def format_trace(trace: ProgramTrace, dumps: bool = False) -> str:
    lines = [f"relforest-trace {FORMAT_VERSION}", f"program {trace.program}", f"mode {trace.mode}"]
    # interleave checks and steps in execution order
    for kind, item in trace_events(trace):
        if kind == "check":
            lines.append(f"check {item.kind} {item.where} {item.name} {_verdict(item.verdict)}")
            continue
        before = "-" if item.variant is None else str(item.variant)
        after = "-" if item.variant_after is None else str(item.variant_after)
        verdicts = " ".join(f"{k}={_verdict(v)}" for k, v in item.verdicts.items())
        lines.append(f"step {item.loop} iter={item.iteration} variant={before}->{after} {verdicts}".rstrip())
        if dumps:
            for var, rel in item.snapshot.items():
                lines.append(f"  {var} = {'/'.join(rel.lines())}")
    lines.append(f"final {_verdict(trace.final)}")
    return "\n".join(lines) + "\n"


def trace_events(trace: ProgramTrace):
    return sorted(
        [("check", c) for c in trace.checks] + [("step", s) for s in trace.steps],
        key=lambda e: e[1].seq,
    )


def parse_trace(text: str) -> dict:
    """Read a formatted trace back into plain records (matrix dumps skipped)."""
    lines = text.splitlines()
    if not lines or lines[0] != f"relforest-trace {FORMAT_VERSION}":
        raise ValueError("not a version-1 trace")
    out: dict = {"steps": [], "checks": []}
    for ln in lines[1:]:
        if ln.startswith("  "):
            continue
        head, _, rest = ln.partition(" ")
        if head in ("program", "mode"):
            out[head] = rest
        elif head == "final":
            out["final"] = rest == "ok"
        elif head == "check":
            kind, where, name, verdict = rest.split(" ")
            out["checks"].append({"kind": kind, "where": where, "name": name, "ok": verdict == "ok"})
        elif head == "step":
            loop, it, var, *verdicts = rest.split(" ")
            before, after = var.removeprefix("variant=").split("->")
            out["steps"].append(
                {
                    "loop": loop,
                    "iteration": int(it.removeprefix("iter=")),
                    "variant": None if before == "-" else int(before),
                    "variant_after": None if after == "-" else int(after),
                    "verdicts": {k: v == "ok" for k, v in (t.split("=") for t in verdicts)},
                }
            )
        else:
            raise ValueError(f"unrecognised trace line {ln!r}")
    return out


class Execution:
    """Shared checking context for one top-level program run and its callees."""

    def __init__(self, program: str, mode: str = "strict"):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.mode = mode
        self.trace = ProgramTrace(program, mode)
        self._loops: dict[str, int] = {}
        self._seq = 0

    @property
    def checking(self) -> bool:
        return self.mode != "unchecked"

    def _stamp(self, record):
        record.seq = self._seq
        self._seq += 1
        return record

    def check(self, kind: str, program: str, name: Assertion, **bindings: Relation) -> bool:
        if not self.checking:
            return True
        ok = eval_assertion(name, bindings)
        self.trace.checks.append(self._stamp(Check(kind, program, str(name), ok)))
        if not ok and self.mode == "strict":
            raise AssertionViolation(program, kind, name)
        return ok

    def loop(
        self,
        program: str,
        invariants: tuple[Assertion, ...],
        variant: Callable[[Mapping[str, Relation]], int],
        cap: int,
    ) -> Loop:
        k = self._loops.get(program, 0) + 1
        self._loops[program] = k
        return Loop(self, program, f"{program}#{k}", invariants, variant, cap)


class Loop:
    """One while-loop instance: checks the invariant and variant at every head."""

    def __init__(self, execution, program, label, invariants, variant, cap):
        self.ex = execution
        self.program = program
        self.label = label
        self.invariants = invariants
        self.variant = variant
        self.cap = cap
        self.iteration = 0
        self._open: Step | None = None

    def head(self, guard: bool, **bindings: Relation) -> bool:
        """Record the loop-head checks; return ``guard``."""
        ex = self.ex
        verdicts: dict[str, bool] = {}
        value = None
        if ex.checking:
            verdicts = {str(a): eval_assertion(a, bindings) for a in self.invariants}
            value = self.variant(bindings)
        if self._open is not None:
            step = self._open
            step.variant_after = value
            self._open = None
            if ex.checking and not value < step.variant and ex.mode == "strict":
                raise VariantViolation(self.program, self.label, step.iteration, step.variant, value)
        failed = next((k for k, v in verdicts.items() if not v), None)
        if guard:
            self.iteration += 1
            if self.iteration > self.cap:
                raise IterationCapExceeded(self.program, self.label, self.cap)
            if ex.checking:
                step = Step(self.label, self.iteration, value, None, verdicts, dict(bindings))
                ex.trace.steps.append(ex._stamp(step))
                self._open = step
            if failed and ex.mode == "strict":
                raise AssertionViolation(self.program, "invariant", failed, self.iteration)
            return True
        if ex.checking:
            for k, v in verdicts.items():
                ex.trace.checks.append(ex._stamp(Check("exit", self.label, k, v)))
            if failed and ex.mode == "strict":
                raise AssertionViolation(self.program, "invariant", failed, self.iteration)
        return False
