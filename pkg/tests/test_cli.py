import io

import pytest

from relforest.cli import main
from relforest.trace import parse_trace


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    (tmp_path / "chain3.mat").write_text("3\n010\n001\n001\n")
    (tmp_path / "point0.mat").write_text("3\n111\n000\n000\n")
    (tmp_path / "cycle.mat").write_text("3\n010\n001\n100\n")
    (tmp_path / "pairs.txt").write_text("3\n0 1\n1 2\n2 2\n")
    return tmp_path


def test_run_find_set(files):
    code, out = run("run", "--program", "find_set", "--p", str(files / "chain3.mat"), "--x", str(files / "point0.mat"))
    assert code == 0
    assert "y = point 2" in out
    assert out.startswith("relforest-trace 1\n")


def test_run_accepts_bare_index(files):
    code, out = run("run", "--program", "find_set", "--p", str(files / "chain3.mat"), "--x", "1")
    assert code == 0 and "y = point 2" in out


def test_run_cyclic_strict(files, capsys):
    code, _ = run("run", "--program", "find_set", "--p", str(files / "cycle.mat"), "--x", "0")
    assert code == 1
    assert "find_set_pre" in capsys.readouterr().err


def test_run_cyclic_trace_mode(files, capsys):
    code, out = run("run", "--program", "find_set", "--p", str(files / "cycle.mat"), "--x", "0", "--mode", "trace")
    assert code == 1
    assert "exceeded" in capsys.readouterr().err
    assert out.rstrip().endswith("final FAIL")


def test_run_init_ranks_trace_out(files):
    target = files / "trace.txt"
    code, out = run("run", "--program", "init_ranks", "--n", "4", "--trace-out", str(target))
    assert code == 0
    parsed = parse_trace(target.read_text())
    assert len(parsed["steps"]) == 4 and parsed["final"]
    assert "rank =" in out


def test_run_usage_errors(files):
    assert run("run", "--program", "find_set", "--p", str(files / "chain3.mat"))[0] == 2
    assert run("run", "--program", "find_set", "--p", str(files / "nope.mat"), "--x", "0")[0] == 2
    assert run("run", "--program", "find_set", "--p", str(files / "chain3.mat"), "--x", "7")[0] == 2
    (files / "bad.mat").write_text("2\n01\n")
    assert run("run", "--program", "find_set", "--p", str(files / "bad.mat"), "--x", "0")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["run", "--program", "no_such_program"])
    assert info.value.code == 2


def test_laws_pass_and_fail():
    code, out = run("laws", "--suite", "wcc", "--n", "3", "--samples", "200")
    assert code == 0 and "FAIL" not in out
    code, out = run("laws", "--suite", "wcc", "--n", "3", "--samples", "200", "--mutant", "wcc-no-transpose")
    assert code == 1 and "counterexample" in out


def test_laws_all_at_two():
    code, out = run("laws", "--suite", "all", "--n", "2", "--samples", "100")
    assert code == 0
    assert out.splitlines()[-1].endswith(" 0 failed")


def test_laws_usage():
    assert run("laws", "--suite", "bogus")[0] == 2
    assert run("laws", "--n", "0")[0] == 2


def test_laws_deterministic():
    args = ("laws", "--suite", "forest", "--n", "4", "--samples", "100", "--seed", "9")
    assert run(*args) == run(*args)


def test_crossvalidate():
    code, out = run("crossvalidate", "--n", "16", "--ops", "500", "--by-rank", "--seed", "7")
    assert code == 0 and "divergences 0" in out
    args = ("crossvalidate", "--n", "8", "--ops", "300", "--by-rank", "--seed", "7", "--mutant", "oracle-skip-rank-increment")
    code, out = run(*args)
    assert code == 1 and "reproducer union" in out
    assert run(*args) == (code, out)


def test_crossvalidate_usage():
    assert run("crossvalidate", "--n", "0")[0] == 2


def test_run_deterministic(files):
    args = ("run", "--program", "find_path_halving", "--p", str(files / "chain3.mat"), "--x", "0", "--dumps")
    assert run(*args) == run(*args)


def test_convert(files):
    code, out = run("convert", str(files / "pairs.txt"))
    assert code == 0 and out == "3\n010\n001\n001\n"
    code, out = run("convert", str(files / "chain3.mat"), "--to", "pairs")
    assert out == "3\n0 1\n1 2\n2 2\n"
    code, out = run("convert", str(files / "chain3.mat"), "--to", "classify")
    assert "forest" in out.split() and "mapping" in out.split()
    target = files / "out.mat"
    assert run("convert", str(files / "pairs.txt"), "--output", str(target))[0] == 0
    assert target.read_text() == "3\n010\n001\n001\n"
    assert run("convert", str(files / "missing.txt"))[0] == 2


def test_mutants_listing():
    code, out = run("mutants")
    assert code == 0 and "wcc-no-transpose" in out
