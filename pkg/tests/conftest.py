import pytest
from hypothesis import strategies as st

from khbound.pipeline import enumerate_valid_params

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def valid_params(draw, max_m=11):
    """Admissible (m, a), with the weights in a random order."""
    m = draw(st.integers(2, max_m))
    params = draw(st.sampled_from(enumerate_valid_params(m)))
    a = draw(st.permutations(params.a))
    return m, list(a)


@pytest.fixture
def kleinian_matrix():
    """M for the A_{m-1} surface singularity, as displayed in closed form."""

    def build(m):
        n = m - 1
        rows = []
        for i in range(n):
            row = [0] * n
            row[0] = -1
            if i == 0:
                row[0] = -2
            else:
                row[i] = -1
            if i + 1 < n:
                row[i + 1] = 1
            rows.append(row)
        return rows

    return build
