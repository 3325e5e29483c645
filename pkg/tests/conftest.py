import pytest
from hypothesis import strategies as st

from sigmarecip.f2ps import BitSeries

_ACCEPTANCE = []


@st.composite
def bit_series(draw, min_precision=1, max_precision=600, unit=False):
    n = draw(st.integers(min_precision, max_precision))
    bits = draw(st.integers(0, (1 << n) - 1))
    if unit:
        bits |= 1
    return BitSeries(n, bits)


@pytest.fixture
def acceptance_log():
    """Collects one line per acceptance criterion for the terminal summary."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
