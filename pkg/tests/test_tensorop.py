from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import lin
from sklyanin.freealg import AlgElem
from sklyanin.permcomb import Perm, all_perms
from sklyanin.scalars import RatFunc, UPoly
from sklyanin.tensorop import (
    P,
    B_slot,
    Pi_k,
    R_abbrev,
    R_op,
    TOp,
    alt_vector,
    antisym,
    antisym_left,
    identity,
    perm_op,
    t_apply,
    t_mul,
    t_prod,
    t_scale,
    t_sum,
)

U = UPoly((0, 1))


def test_swap_on_basis():
    assert t_apply(P(1, 2, 2), (1, 2)) == {(2, 1): AlgElem.scalar(1)}
    assert P(2, 2, 3) == identity(3)
    with pytest.raises(IndexError):
        P(1, 4, 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_swap_involution(n):
    for i, j in combinations(range(1, n + 1), 2):
        assert P(i, j, n) @ P(i, j, n) == identity(n)


def test_perm_op_homomorphism_S3():
    for s in all_perms(3):
        for t in all_perms(3):
            assert perm_op(s) @ perm_op(t) == perm_op(s * t)


def test_R_entries():
    R = R_op(1, 2, U, 2)
    assert R.entry((1, 2), (1, 2)) == AlgElem.scalar(1)
    assert R.entry((2, 1), (1, 2)) == AlgElem.scalar(RatFunc(-1, U))
    assert R_op(1, 2, lin(2, -1), 2) == R_abbrev(1, 2, 2)
    with pytest.raises(ZeroDivisionError):
        R_op(1, 2, UPoly(()), 2)


@pytest.mark.parametrize("arg", [U, lin(2, -1), lin(-2, 3)])
def test_R_unitarity(arg):
    prod = R_op(1, 3, arg, 3) @ R_op(1, 3, -arg, 3)
    assert prod == t_scale(identity(3), 1 - RatFunc(1, arg * arg))


def test_antisym_basics():
    assert antisym(1) == identity(1)
    col = t_apply(antisym(3), (1, 2, 3))
    assert len(col) == 6
    assert all(a in (AlgElem.scalar(1), AlgElem.scalar(-1)) for a in col.values())
    with pytest.raises(ValueError):
        antisym(3, "prime", 4)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_antisym_idempotence_factor(m):
    n = 4
    Am, Am1 = antisym(n, "prime", m), antisym(n, "prime", m - 1)
    assert t_scale(Am, factorial(m - 1)) == Am @ Am1


def test_Pi():
    assert Pi_k(3, 3) == identity(3)
    expect = t_sum([identity(2), P(1, 2, 2)], [1, -RatFunc(1, lin(2, -1))])
    assert Pi_k(1, 2) == expect


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_R_string_to_Pi(n):
    for k in range(1, n + 1):
        A = antisym(n, "prime", n - k)
        Rs = t_prod([identity(n)] + [R_abbrev(k, i, n) for i in range(k + 1, n + 1)])
        Pk = Pi_k(k, n)
        assert A @ Rs == A @ Pk
        assert A @ Pk == Pk @ A


@pytest.mark.parametrize("n", [2, 3, 4])
def test_swap_string_collapse(n):
    for k in range(1, n + 1):
        A = antisym(n, "prime", n - k)
        rest = range(k + 1, n + 1)
        for m in range(1, n - k + 1):
            for seq in combinations(rest, m):
                lhs = t_prod([A] + [P(k, i, n) for i in seq])
                assert lhs == t_scale(A @ P(k, seq[0], n), (-1) ** (m - 1))


@pytest.mark.parametrize("n", [3, 4])
def test_swap_sum_commutes(n):
    for i, j, k in permutations(range(1, n + 1), 3):
        S = P(k, i, n) + P(k, j, n)
        assert P(i, j, n) @ S == S @ P(i, j, n)


def test_B_slot_entries():
    assert B_slot(1, 0, 1).entry((1,), (1,)) == AlgElem.gen(1, 1, 0)
    X = B_slot(1, 3, 2)
    assert X.entry((2, 1), (1, 1)) == AlgElem.gen(2, 1, 3)
    assert X.entry((2, 1), (1, 2)) == AlgElem()
    prod = B_slot(1, 0, 2) @ B_slot(2, 1, 2)
    assert prod.entry((1, 2), (1, 2)) == AlgElem.gen(1, 1, 0) * AlgElem.gen(2, 2, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_swap_moves_slot(n):
    for i, j in permutations(range(1, n + 1), 2):
        for a in range(n):
            assert P(i, j, n) @ B_slot(i, a, n) == B_slot(j, a, n) @ P(i, j, n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trailing_antisym_commutes_with_B(n):
    for m in range(1, n + 1):
        A = antisym(n, "prime", n - m)
        for i in range(1, m + 1):
            X = B_slot(i, i - 1, n)
            assert A @ X == X @ A


def test_identity_is_neutral():
    X = B_slot(2, 1, 3) @ P(1, 3, 3)
    assert identity(3) @ X == X == X @ identity(3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_alternating_rows(n):
    X = t_prod([B_slot(s, s - 1, n) for s in range(1, n + 1)])
    M = antisym(n) @ X
    assert antisym_left(X) == M
    alt = alt_vector(n)
    base = M.rows.get(tuple(range(1, n + 1)), {})
    for r, s in alt.items():
        row = M.rows.get(r, {})
        assert row == {c: (a if s > 0 else -a) for c, a in base.items()}
    assert set(M.rows) <= set(alt)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sparsity_bound(n):
    assert perm_op(Perm.identity(n)).nnz() == n**n
    X = perm_op(Perm.transposition(1, n, n))
    for k in range(1, n + 1):
        X = X @ B_slot(k, k - 1, n) @ perm_op(Perm.transposition(1, k, n))
        assert X.nnz() <= n ** (n + k)


perms3 = st.permutations(range(1, 4)).map(lambda p: Perm(tuple(p)))


@given(perms3, perms3, st.integers(1, 3), st.integers(0, 2))
def test_perm_conjugates_slots(s, t, slot, shift):
    # moving slot i to pi(i) turns B in slot i into B in slot pi(i)
    X = B_slot(slot, shift, 3)
    assert perm_op(s) @ X == B_slot(s(slot), shift, 3) @ perm_op(s)
    assert perm_op(s) @ (perm_op(t) @ X) == (perm_op(s) @ perm_op(t)) @ X


def test_mismatched_sizes():
    with pytest.raises(ValueError):
        t_mul(identity(2), identity(3))
    assert isinstance(TOp(2), TOp) and TOp(2).nnz() == 0
