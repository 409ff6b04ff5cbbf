from functools import lru_cache
from fractions import Fraction

from hypothesis import strategies as st

from sklyanin.scalars import RatFunc, UPoly
from sklyanin.sdetcore import operator_form, sdet


@lru_cache(maxsize=None)
def sdet_value(n: int, path: str = "thm"):
    return sdet(n, path).value


@lru_cache(maxsize=None)
def op_form(n: int, path: str):
    return operator_form(n, path)


small_frac = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def upolys(draw, max_deg=2):
    return UPoly(draw(st.lists(small_frac, min_size=0, max_size=max_deg + 1)))


@st.composite
def ratfuncs(draw, max_deg=2):
    num = draw(upolys(max_deg))
    den = draw(upolys(max_deg).filter(lambda p: not p.is_zero()))
    return RatFunc(num, den)


@st.composite
def proper_ratfuncs(draw):
    den = draw(upolys(2).filter(lambda p: not p.is_zero() and p.deg >= 0))
    num = draw(st.lists(small_frac, min_size=0, max_size=den.deg + 1))
    return RatFunc(UPoly(num), den)


def lin(a, b) -> UPoly:
    """``a*u + b``."""
    return UPoly((Fraction(b), Fraction(a)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
