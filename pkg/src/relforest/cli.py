"""Command-line entry point: ``relforest {laws,run,crossvalidate,convert,mutants}``.

Exit status is 0 when everything checked passed, 1 when a law, assertion or
cross-check failed, and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

from . import crossval, laws
from .mutants import MUTANTS, apply_mutant
from .oracle import STRATEGIES
from .programs import PROGRAMS, run_checked
from .relation import Relation, RelationError, classify, format_matrix, is_point, parse_matrix, point_index
from .trace import AssertionViolation, IterationCapExceeded, format_trace

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _mutant_context(name: str | None):
    return apply_mutant(name) if name else contextlib.nullcontext()


# --- laws ------------------------------------------------------------------------


def cmd_laws(args, out) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    try:
        selected = laws.select(args.suite)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _mutant_context(args.mutant):
        results = [laws.run_law(lw, args.n, args.samples, args.seed) for lw in selected]
    out.write(laws.format_report(results, args.suite, args.n, args.samples, args.seed))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --- run ---------------------------------------------------------------------------


def _read_relation(arg: str, n: int | None, what: str) -> Relation:
    """A matrix file path, or a bare index meaning that point."""
    if arg.isdigit():
        if n is None:
            raise UsageError(f"--{what} {arg}: a bare index needs --p or --n to fix the size")
        try:
            return Relation.point(n, int(arg))
        except RelationError as exc:
            raise UsageError(f"--{what}: {exc}") from None
    try:
        return parse_matrix(Path(arg).read_text())
    except OSError as exc:
        raise UsageError(f"--{what}: cannot read {arg}: {exc.strerror}") from None
    except RelationError as exc:
        raise UsageError(f"--{what}: {arg}: {exc}") from None


def _describe(name: str, rel: Relation) -> list[str]:
    head = f"{name} = point {point_index(rel)}" if is_point(rel) else f"{name} ="
    return [head, *(f"  {ln}" for ln in rel.lines())]


def cmd_run(args, out) -> int:
    needed, _ = PROGRAMS[args.program]
    inputs: dict = {}
    n = args.n
    if args.p:
        inputs["p"] = _read_relation(args.p, None, "p")
        n = inputs["p"].n
    for var in ("x", "y", "rank"):
        arg = getattr(args, var)
        if arg:
            inputs[var] = _read_relation(arg, n, var)
    if "n" in needed:
        if n is None:
            raise UsageError(f"{args.program} needs --n")
        inputs["n"] = n
    missing = [k for k in needed if k not in inputs]
    if missing:
        raise UsageError(f"{args.program} needs " + ", ".join(f"--{k}" for k in missing))
    sizes = {v.n for k, v in inputs.items() if isinstance(v, Relation)}
    if len(sizes) > 1:
        raise UsageError(f"input sizes differ: {sorted(sizes)}")

    status = EXIT_OK
    with _mutant_context(args.mutant):
        try:
            outputs, trace = run_checked(args.program, inputs, args.mode)
        except (AssertionViolation, IterationCapExceeded) as exc:
            sys.stderr.write(f"error: {exc}\n")
            trace = getattr(exc, "trace", None)
            outputs, status = {}, EXIT_FAIL
        except RelationError as exc:
            sys.stderr.write(f"error: {exc}\n")
            trace, outputs, status = None, {}, EXIT_FAIL
    if trace is not None:
        text = format_trace(trace, dumps=args.dumps)
        if args.trace_out:
            Path(args.trace_out).write_text(text)
        else:
            out.write(text)
        if status == EXIT_OK and not trace.passed:
            for failure in trace.failures():
                sys.stderr.write(f"failed: {failure}\n")
            status = EXIT_FAIL
    for name, rel in outputs.items():
        out.write("\n".join(_describe(name, rel)) + "\n")
    return status


# --- crossvalidate -------------------------------------------------------------------


def cmd_crossvalidate(args, out) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    with _mutant_context(args.mutant):
        result = crossval.crossvalidate(args.n, args.ops, args.strategy, args.by_rank, args.seed)
    out.write(crossval.format_result(result, args.seed))
    return EXIT_OK if result.ok else EXIT_FAIL


# --- convert ---------------------------------------------------------------------------


def _parse_any(text: str) -> Relation:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) >= 2 and " " in lines[1]:
        n = int(lines[0])
        return Relation.from_pairs(n, (tuple(map(int, ln.split())) for ln in lines[1:]))
    if len(lines) == 1 and lines[0].isdigit():
        return Relation.bot(int(lines[0]))
    return parse_matrix(text)


def cmd_convert(args, out) -> int:
    try:
        text = Path(args.input).read_text() if args.input != "-" else sys.stdin.read()
        rel = _parse_any(text)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    except (RelationError, ValueError) as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    if args.to == "matrix":
        rendered = format_matrix(rel)
    elif args.to == "pairs":
        rendered = "\n".join([str(rel.n), *(f"{i} {j}" for i, j in rel.pairs())]) + "\n"
    else:
        flags = classify(rel).true_flags()
        rendered = f"n {rel.n}\n" + "".join(f"{f}\n" for f in flags)
    if args.output:
        Path(args.output).write_text(rendered)
    else:
        out.write(rendered)
    return EXIT_OK


def cmd_mutants(args, out) -> int:
    for m in MUTANTS.values():
        out.write(f"{m.name}\n  {m.describe()}\n  caught by: {m.caught_by}\n")
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relforest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    mutant_help = "run against a named single-line mutant (see `relforest mutants`)"

    p = sub.add_parser("laws", help="check algebraic law suites")
    p.add_argument("--suite", default="all", help=f"comma list of {', '.join(laws.SUITES)} or all")
    p.add_argument("--n", type=int, default=4, help="largest universe size")
    p.add_argument("--samples", type=int, default=10_000, help="random cases per law and size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutant", choices=sorted(MUTANTS), help=mutant_help)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("run", help="execute an annotated program with runtime checks")
    p.add_argument("--program", required=True, choices=sorted(PROGRAMS))
    p.add_argument("--p", help="parent relation (matrix file)")
    p.add_argument("--x", help="matrix file or node index")
    p.add_argument("--y", help="matrix file or node index")
    p.add_argument("--rank", help="rank relation (matrix file)")
    p.add_argument("--n", type=int, help="universe size for init_sets / init_ranks")
    p.add_argument("--mode", choices=("strict", "trace"), default="strict")
    p.add_argument("--trace-out", help="write the trace here instead of stdout")
    p.add_argument("--dumps", action="store_true", help="include variable matrices in the trace")
    p.add_argument("--mutant", choices=sorted(MUTANTS), help=mutant_help)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("crossvalidate", help="lockstep comparison with the index oracle")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--ops", type=int, default=1000)
    p.add_argument("--strategy", choices=STRATEGIES, default="compress")
    p.add_argument("--by-rank", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutant", choices=sorted(MUTANTS), help=mutant_help)
    p.set_defaults(func=cmd_crossvalidate)

    p = sub.add_parser("convert", help="convert between matrix and pair-list files")
    p.add_argument("input", help="matrix or pair-list file, or - for stdin")
    p.add_argument("--to", choices=("matrix", "pairs", "classify"), default="matrix")
    p.add_argument("--output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("mutants", help="list the built-in mutants")
    p.set_defaults(func=cmd_mutants)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"relforest {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
