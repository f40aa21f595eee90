"""Single-line mutants used to confirm the checks can fail.

A mutant names a function, one line of its source and the replacement line.
:func:`apply_mutant` recompiles the edited function and rebinds it in every
``relforest`` module that holds the original, restoring everything on exit.
"""

from __future__ import annotations

import __future__
import contextlib
import importlib
import inspect
import sys
import textwrap
from dataclasses import dataclass


@dataclass(frozen=True)
class Mutant:
    name: str
    module: str
    function: str
    original: str
    replacement: str
    caught_by: str

    def describe(self) -> str:
        return f"{self.module}.{self.function}: `{self.original}` -> `{self.replacement}`"


MUTANTS = {
    m.name: m
    for m in (
        Mutant(
            "wcc-no-transpose",
            "relforest.relation",
            "wcc",
            "return (x | x.T).star()",
            "return x.star()",
            "laws --suite wcc",
        ),
        Mutant(
            "star-single-step",
            "relforest.relation",
            "_star",
            "sq = r @ r",
            "sq = r",
            "laws --suite kleene",
        ),
        Mutant(
            "awrite-no-complement",
            "relforest.arrays",
            "awrite",
            "return (y & z.T) | (~y & x)",
            "return (y & z.T) | x",
            "laws --suite array",
        ),
        Mutant(
            "oracle-skip-rank-increment",
            "relforest.oracle",
            "oracle_union",
            "g.rank[r] += 1",
            "pass",
            "crossvalidate --by-rank",
        ),
        Mutant(
            "union-swapped-link",
            "relforest.programs",
            "union_sets",
            "p = awrite(state.p, r, s)",
            "p = awrite(state.p, s, r)",
            "crossvalidate (plain union)",
        ),
        Mutant(
            "halving-skips-rewrite",
            "relforest.programs",
            "find_path_halving",
            "p = awrite(p, y, aread(p, aread(p, y)))",
            "p = p",
            "run find_path_halving",
        ),
        Mutant(
            "rank-bump-wrong-root",
            "relforest.programs",
            "union_sets_by_rank",
            "rank = awrite(rank, r, succ(ctx, rank_r))",
            "rank = awrite(rank, s, succ(ctx, rank_r))",
            "crossvalidate --by-rank",
        ),
        Mutant(
            "less-reflexive",
            "relforest.peano",
            "less",
            "return x <= ctx.Sp_plus @ y",
            "return x <= ctx.Sp.star() @ y",
            "laws --suite peano",
        ),
    )
}


def _mutated(mutant: Mutant):
    module = importlib.import_module(mutant.module)
    original = getattr(module, mutant.function)
    source = textwrap.dedent(inspect.getsource(inspect.unwrap(original)))
    lines = source.splitlines(keepends=True)
    hits = [i for i, ln in enumerate(lines) if ln.strip() == mutant.original]
    if len(hits) != 1:
        raise ValueError(f"{mutant.name}: expected one line `{mutant.original}`, found {len(hits)}")
    i = hits[0]
    indent = lines[i][: len(lines[i]) - len(lines[i].lstrip())]
    lines[i] = f"{indent}{mutant.replacement}\n"
    namespace = dict(vars(module))
    flags = __future__.annotations.compiler_flag
    code = compile("".join(lines), f"<mutant {mutant.name}>", "exec", flags=flags, dont_inherit=True)
    exec(code, namespace)
    return original, namespace[mutant.function]


@contextlib.contextmanager
def apply_mutant(name: str):
    """Swap in the named mutant for the duration of the ``with`` block."""
    try:
        mutant = MUTANTS[name]
    except KeyError:
        raise ValueError(f"unknown mutant {name!r}; choose from {', '.join(MUTANTS)}") from None
    original, replacement = _mutated(mutant)
    patched = []
    for modname, module in list(sys.modules.items()):
        if modname != "relforest" and not modname.startswith("relforest."):
            continue
        for attr, value in list(vars(module).items()):
            if value is original:
                setattr(module, attr, replacement)
                patched.append((module, attr))
    _clear_caches()
    try:
        yield mutant
    finally:
        for module, attr in patched:
            setattr(module, attr, original)
        _clear_caches()


def _clear_caches() -> None:
    # memoised results computed under a mutant must not outlive it
    from . import peano, relation, sampling

    for cached in (relation._transpose, relation._star, peano.build_peano, sampling._members):
        cached.cache_clear()
