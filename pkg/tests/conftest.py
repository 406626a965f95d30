import pytest
from hypothesis import strategies as st

from branchdata.perm import Permutation


def P(text, d):
    return Permutation.parse(text, d)


@st.composite
def perms(draw, d=None, min_d=1, max_d=12):
    n = d if d is not None else draw(st.integers(min_d, max_d))
    return Permutation(draw(st.permutations(range(1, n + 1))))


@pytest.fixture
def base_datum():
    from branchdata.data import SpecialDatum
    return SpecialDatum(3, [3], [3], [2])


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE = []


def record(criterion, ok, detail):
    line = "criterion %s: %s - %s" % (criterion, "PASS" if ok else "FAIL", detail)
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
