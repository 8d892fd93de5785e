from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, strategies as st

from pmhyper.core import pmetric_violations, validate_pmetric
from pmhyper.fixtures import (
    ap_not_nodally_space,
    nodally_not_ap_space,
    swap_space,
    two_point_space,
)


@pytest.fixture
def two_point():
    return two_point_space()


@pytest.fixture
def nodally_not_ap():
    return nodally_not_ap_space()


@pytest.fixture
def ap_not_nodally():
    return ap_not_nodally_space()


@pytest.fixture
def swap():
    return swap_space()


@st.composite
def partial_metrics(draw, min_n=1, max_n=4, top=6, den=2, metric=False):
    """Weighted-pseudometric construction p = d + max(w, w'), redrawn until P1 holds."""
    n = draw(st.integers(min_n, max_n))
    vals = st.integers(0, top * den).map(lambda k: Fraction(k, den))
    d = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        d[i][j] = d[j][i] = draw(vals)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                d[i][j] = min(d[i][j], d[i][k] + d[k][j])
    w = [Fraction(0) if metric else draw(vals) for _ in range(n)]
    m = [[d[i][j] + max(w[i], w[j]) for j in range(n)] for i in range(n)]
    labels = [chr(97 + i) for i in range(n)]
    assume(not pmetric_violations(labels, m))
    return validate_pmetric(labels, m)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
