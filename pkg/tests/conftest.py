import pytest

from relforest import Relation

CHAIN3 = [(0, 1), (1, 2), (2, 2)]


def pairs_compose(a, b):
    """Set-of-pairs composition, independent of the bit-packed rows."""
    return {(i, k) for i, j in a for j2, k in b if j == j2}


def pairs_closure(n, a):
    """Reflexive transitive closure by naive fixpoint over pair sets."""
    reach = {(i, i) for i in range(n)} | set(a)
    while True:
        more = reach | pairs_compose(reach, reach)
        if more == reach:
            return reach
        reach = more


@pytest.fixture
def chain3():
    return Relation.from_pairs(3, CHAIN3)


def chain(n):
    """Parent relation 0 -> 1 -> ... -> n-1 with n-1 a root."""
    return Relation.from_pairs(n, [(i, min(i + 1, n - 1)) for i in range(n)])


# one line per acceptance criterion, echoed again at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
