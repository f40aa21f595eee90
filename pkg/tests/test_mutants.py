"""Each built-in mutant must be caught, and the original restored afterwards."""

import pytest

from relforest import Relation, arrays, relation
from relforest.crossval import crossvalidate
from relforest.laws import run_suite
from relforest.mutants import MUTANTS, apply_mutant
from relforest.programs import run_checked
from relforest.trace import AssertionViolation

from conftest import chain


def _law_failures(suite, n=3):
    return [r for r in run_suite(suite, n, 200, 0) if not r.passed]


def _catch(name):
    """Run the detector for a mutant; return a non-empty reproducer string if caught."""
    if name == "halving-skips-rewrite":
        try:
            run_checked("find_path_halving", {"p": chain(5), "x": Relation.point(5, 0)})
        except AssertionViolation as exc:
            return str(exc)
        return ""
    if name in ("oracle-skip-rank-increment", "rank-bump-wrong-root"):
        result = crossvalidate(8, 300, "compress", True, 7)
        return "; ".join(map(str, result.reproducer or []))
    if name == "union-swapped-link":
        result = crossvalidate(8, 300, "compress", False, 7)
        return "; ".join(map(str, result.reproducer or []))
    suite = MUTANTS[name].caught_by.split()[-1]
    failures = _law_failures(suite)
    return "\n".join(f"{r.law.qualified} {r.counterexample}" for r in failures)


def test_at_least_five_mutants():
    assert len(MUTANTS) >= 5


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_mutant_is_caught(name):
    with apply_mutant(name):
        reproducer = _catch(name)
    assert reproducer, f"{name} survived"


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_originals_still_pass_the_detector(name):
    assert not _catch(name)


def test_original_functions_restored():
    wcc, awrite = relation.wcc, arrays.awrite
    with apply_mutant("wcc-no-transpose"):
        assert relation.wcc is not wcc
    with apply_mutant("awrite-no-complement"):
        assert arrays.awrite is not awrite
    assert relation.wcc is wcc and arrays.awrite is awrite


def test_unknown_mutant():
    with pytest.raises(ValueError):
        with apply_mutant("no-such-mutant"):
            pass
