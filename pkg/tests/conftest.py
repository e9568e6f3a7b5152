from fractions import Fraction

from hypothesis import strategies as st

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def frac(s: str) -> Fraction:
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
