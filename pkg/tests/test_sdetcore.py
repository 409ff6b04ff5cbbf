from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import lin, op_form, sdet_value
from sklyanin import emit
from sklyanin.freealg import AlgElem, GenSym, SeriesGen, expand_series
from sklyanin.permcomb import alpha_kappa, all_perms, p_eta
from sklyanin.scalars import RatFunc
from sklyanin.sdetcore import (
    PATHS,
    bracket,
    bracket_pi,
    cross_check,
    epsilon,
    extract_sdet,
    leading,
    sdet,
    series_coeffs,
    specialize_diag,
    specialize_modes,
)
from sklyanin.tensorop import B_slot, Pi_k, R_abbrev, TOp, antisym_left, identity, perm_op

b = AlgElem.gen


def N2():
    return (b(1, 1, 0) * b(2, 2, 1)
            - (b(2, 1, 0) * b(1, 2, 1)).scale(RatFunc(lin(2, -2), lin(2, -1)))
            + (b(2, 2, 0) * b(2, 2, 1)).scale(RatFunc(1, lin(2, -1))))


def test_bracket_small():
    assert bracket(3, 1) == B_slot(1, 0, 3)
    assert bracket(2, 2) == B_slot(1, 0, 2) @ R_abbrev(1, 2, 2) @ B_slot(2, 1, 2)
    assert bracket_pi(2) == B_slot(1, 0, 2) @ Pi_k(1, 2) @ B_slot(2, 1, 2)
    with pytest.raises(ValueError):
        bracket(2, 3)


def test_rank_one():
    for path in PATHS:
        assert sdet(1, path).value == b(1, 1, 0)
    for path in ("def", "pi", "bp", "qa", "qb", "qc"):
        assert op_form(1, path) == TOp.from_entries(1, {((1,), (1,)): b(1, 1, 0)})


@pytest.mark.parametrize("path", PATHS)
def test_rank_two_formula(path):
    assert sdet_value(2, path) == N2()


def test_eta_22_contribution():
    # single eta = (2,2) summand of the reindexed expansion
    X = perm_op(p_eta((2, 2)).inverse()) @ B_slot(2, 0, 2) @ B_slot(2, 1, 2)
    X = X * alpha_kappa((2, 2))
    want = (b(2, 1, 0) * b(1, 2, 1) + b(2, 2, 0) * b(2, 2, 1)).scale(RatFunc(1, lin(2, -1)))
    assert extract_sdet(X) == want


def test_extract_identity():
    assert extract_sdet(identity(2)) == AlgElem.scalar(1)


def test_rank_three_coefficients():
    S = sdet_value(3)
    assert S.coeff((GenSym(1, 1, 0), GenSym(2, 2, 1), GenSym(3, 3, 2))) == 1
    assert S.coeff((GenSym(2, 1, 0), GenSym(1, 2, 1), GenSym(3, 3, 2))) == -RatFunc(lin(2, -3), lin(2, -2))
    assert len(S) == 18


@pytest.mark.parametrize("n", [1, 2, 3])
def test_routes_agree(n):
    ref = sdet_value(n, "def")
    for path in PATHS:
        assert sdet_value(n, path) == ref, path


@pytest.mark.parametrize("n", [2, 3])
def test_operator_forms_agree(n):
    ref = op_form(n, "pi")
    for path in ("bp", "qa", "qb", "qc"):
        assert op_form(n, path) == ref, path
    assert antisym_left(op_form(n, "def")) == antisym_left(ref)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cross_check_report(n):
    rep = cross_check(n)
    assert rep.passed
    text = rep.text()
    assert "[FAIL]" not in text and text == cross_check(n).text()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_word_shape(n):
    for w, _ in sdet_value(n).items():
        assert [g.shift for g in w] == list(range(n))
        assert all(1 <= g.p <= n and 1 <= g.q <= n for g in w)


def test_epsilon():
    assert epsilon(3, 1) == (1, 1, -1)
    assert epsilon(2, 0) == (1, 1)
    with pytest.raises(ValueError):
        epsilon(2, 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_leading_sign(n):
    S = sdet_value(n)
    for l in range(n + 1):
        assert leading(S, n, l) == (-1) ** l


def test_specialize_n2():
    # off-diagonal term dies; 1 + eps_2^2/(2u-1) at l=0
    assert specialize_diag(N2(), 2, 0) == 1 + RatFunc(1, lin(2, -1))
    assert specialize_diag(N2(), 2, 1) == -1 + RatFunc(1, lin(2, -1))


def test_series_rank_one():
    s = series_coeffs(sdet_value(1), 1, 1)
    assert s.coeff(0) == {(SeriesGen(1, 1, 0),): 1}
    assert s.coeff(1) == {(SeriesGen(1, 1, 1),): 1}


@pytest.mark.parametrize("n", [2, 3])
def test_series_leading(n):
    s = series_coeffs(sdet_value(n), n, 0)
    for l in range(n + 1):
        assert specialize_modes(s.coeff(0), n, l) == (-1) ** l


def test_series_first_coefficient_n2():
    golden = emit.golden_to_alg(emit.parse_golden(
        "n 2\n1 | 1 2 ; 1 2 |\n-(2*u-2)/(2*u-1) | 1 2 ; 2 1 |\n1/(2*u-1) | 2 2 ; 2 2 |\n"))
    c1 = series_coeffs(sdet_value(2), 2, 1).coeff(1)
    assert c1 == expand_series(golden, 2, 1).coeff(1)
    m = lambda p, q, r: SeriesGen(p, q, r)
    assert c1[(m(2, 2, 0), m(2, 2, 0))] == Fraction(1, 2)
    assert c1[(m(1, 1, 1), m(2, 2, 0))] == 1
    assert specialize_modes(c1, 2, 0) is None


def test_unknown_path():
    with pytest.raises(ValueError):
        sdet(2, "nope")
    with pytest.raises(ValueError):
        sdet(0)


@st.composite
def random_ops(draw):
    n = 2
    idx = st.tuples(st.integers(1, n), st.integers(1, n))
    entry = st.sampled_from([b(1, 2, 0), b(2, 2, 1) * b(1, 1, 0), AlgElem.scalar(3),
                             b(2, 1, 0).scale(RatFunc(1, lin(2, -1)))])
    return TOp.from_entries(n, draw(st.dictionaries(st.tuples(idx, idx), entry, max_size=8)))


@settings(max_examples=60, deadline=None)
@given(random_ops())
def test_extraction_matches_signed_column_sum(X):
    # S = sum_sigma sign(sigma) X[sigma(1..n), (1..n)]
    want = AlgElem()
    for s in all_perms(2):
        want = want + X.entry(s.images, (1, 2)).scale(s.sign)
    assert extract_sdet(X) == want
