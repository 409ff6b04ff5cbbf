from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import lin, proper_ratfuncs
from sklyanin.freealg import AlgElem, GenSym, SeriesGen, alg_arith, alg_scale, expand_series
from sklyanin.scalars import ImproperError, RatFunc, UPoly

b = AlgElem.gen


def test_product_word():
    x = b(1, 1, 0) * b(2, 2, 1)
    assert x.items() == [((GenSym(1, 1, 0), GenSym(2, 2, 1)), RatFunc(1))]


def test_noncommutative():
    assert alg_arith(b(1, 2, 0), b(2, 1, 1), "mul") != alg_arith(b(2, 1, 1), b(1, 2, 0), "mul")


def test_cancellation():
    x = b(1, 2, 0) * b(2, 1, 1) + b(3, 3, 2)
    assert not (x + alg_scale(x, -1)).terms
    assert alg_arith(x, x, "sub") == AlgElem()


def test_term_order_is_lexicographic():
    x = b(2, 1, 0) + b(1, 2, 0) + b(1, 1, 1) * b(1, 1, 0)
    words = [w for w, _ in x.items()]
    assert words == sorted(words)
    assert words[0] == (GenSym(1, 1, 1), GenSym(1, 1, 0))


def test_text_form():
    assert str(GenSym(1, 2, 0)) == "b[1,2](u)"
    assert str(GenSym(3, 1, 2)) == "b[3,1](u-2)"


def modes(s, r):
    return s.coeff(r)


def test_series_unshifted():
    s = expand_series(b(1, 1, 0), 1, 2)
    for r in range(3):
        assert modes(s, r) == {(SeriesGen(1, 1, r),): 1}


def test_series_shifted():
    s = expand_series(b(1, 1, 1), 1, 1)
    assert modes(s, 0) == {(SeriesGen(1, 1, 0),): 1}
    assert modes(s, 1) == {(SeriesGen(1, 1, 1),): 1}
    # (u-1)^-1 = t + t^2 + ..., (u-1)^-2 = t^2 + ...
    s2 = expand_series(b(1, 1, 1), 1, 2)
    assert modes(s2, 2) == {(SeriesGen(1, 1, 1),): 1, (SeriesGen(1, 1, 2),): 1}


def test_series_with_scalar():
    a = b(2, 2, 0).scale(RatFunc(1, lin(2, -1)))
    s = expand_series(a, 2, 1)
    assert modes(s, 0) == {}
    assert modes(s, 1) == {(SeriesGen(2, 2, 0),): Fraction(1, 2)}


def test_series_improper():
    with pytest.raises(ImproperError):
        expand_series(b(1, 1, 0).scale(RatFunc(UPoly((0, 1)))), 1, 1)


# -- properties -----------------------------------------------------------------

gens = st.builds(GenSym, st.integers(1, 2), st.integers(1, 2), st.integers(0, 2))


@st.composite
def elems(draw, proper=False):
    coeff = proper_ratfuncs() if proper else st.sampled_from(
        [RatFunc(1), RatFunc(-2), RatFunc(1, lin(2, -1)), RatFunc(lin(1, 3), lin(1, -4))]
    )
    terms = draw(st.dictionaries(st.lists(gens, max_size=2).map(tuple), coeff, max_size=3))
    return AlgElem(terms)


@given(elems(), elems(), elems())
def test_algebra_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    one = AlgElem.scalar(1)
    assert one * x == x == x * one


@given(elems(), elems())
def test_equal_means_same_terms(x, y):
    assert (x == y) == (x - y).is_zero()


@settings(max_examples=40, deadline=None)
@given(elems(proper=True), elems(proper=True))
def test_series_homomorphism(x, y):
    O = 2
    assert expand_series(x * y, 2, O) == expand_series(x, 2, O) * expand_series(y, 2, O)
    assert expand_series(x + y, 2, O) == expand_series(x, 2, O) + expand_series(y, 2, O)
