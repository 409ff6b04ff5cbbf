"""Sparse operators on ``(C^n)^{(x)n}`` with free-algebra entries.

An operator is stored row-wise: ``rows[r][c]`` is the :class:`AlgElem` in
row ``r``, column ``c`` (multi-indices are 1-based ``n``-tuples).  Products
keep the left-to-right order of entries, so noncommuting coefficients are
multiplied in the same order as the operators they come from.

A permutation ``pi`` acts by moving the vector in slot ``i`` to slot
``pi(i)``; with this choice ``perm_op(s) @ perm_op(t) == perm_op(s * t)``.
"""
from __future__ import annotations

from itertools import permutations, product
from typing import Iterator

from .freealg import AlgElem, accumulate, prune
from .permcomb import Perm
from .scalars import ONE, RatFunc, Scalar, UPoly, _add, _mul, as_ratfunc

MultiIdx = tuple  # tuple[int, ...]


def multi_indices(n: int) -> Iterator[MultiIdx]:
    return product(range(1, n + 1), repeat=n)


class TOp:
    """Sparse ``n^n x n^n`` matrix of :class:`AlgElem`; no zero entries stored."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: dict | None = None):
        self.n = n
        self.rows: dict[MultiIdx, dict[MultiIdx, AlgElem]] = rows if rows is not None else {}

    @classmethod
    def from_entries(cls, n: int, entries: dict) -> "TOp":
        rows: dict = {}
        for (r, c), a in entries.items():
            a = a if isinstance(a, AlgElem) else AlgElem.scalar(a)
            if a:
                rows.setdefault(tuple(r), {})[tuple(c)] = a
        return cls(n, rows)

    def entry(self, r, c) -> AlgElem:
        return self.rows.get(tuple(r), {}).get(tuple(c), _ZERO_ALG)

    def entries(self) -> Iterator[tuple[MultiIdx, MultiIdx, AlgElem]]:
        """Nonzero entries in row-major multi-index order."""
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def n_terms(self) -> int:
        return sum(len(a.terms) for row in self.rows.values() for a in row.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TOp):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def __matmul__(self, other: "TOp") -> "TOp":
        return t_mul(self, other)

    def __add__(self, other: "TOp") -> "TOp":
        return t_add(self, other)

    def __sub__(self, other: "TOp") -> "TOp":
        return t_add(self, t_scale(other, -ONE))

    def __neg__(self) -> "TOp":
        return t_scale(self, -ONE)

    def __mul__(self, c: Scalar) -> "TOp":
        return t_scale(self, c)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TOp(n={self.n}, nnz={self.nnz()})"

    def dump(self) -> str:
        from .emit import to_text

        return "\n".join(f"{r} {c}: {to_text(a)}" for r, c, a in self.entries())


_ZERO_ALG = AlgElem()
_ONE_ALG = AlgElem.scalar(1)


def _check_n(X: TOp, Y: TOp) -> None:
    if X.n != Y.n:
        raise ValueError(f"operators on different spaces: n={X.n} vs n={Y.n}")


def t_mul(X: TOp, Y: TOp) -> TOp:
    """``(XY)[r, c] = sum_m X[r, m] * Y[m, c]``, entry products taken left to right."""
    _check_n(X, Y)
    yrows = Y.rows
    out: dict = {}
    for r, xrow in X.rows.items():
        if len(xrow) == 1:
            (m, xa), = xrow.items()
            if xa.terms.get(()) is ONE and len(xa.terms) == 1:
                # permutation-type row: copy the selected row of Y
                if m in yrows:
                    out[r] = dict(yrows[m])
                continue
        acc: dict = {}
        for m, xa in xrow.items():
            yrow = yrows.get(m)
            if not yrow:
                continue
            xt = xa.terms
            scalar = len(xt) == 1 and () in xt
            for c, yb in yrow.items():
                d = acc.get(c)
                if d is None:
                    d = acc[c] = {}
                if scalar:
                    # scalar x anything: no word concatenation needed
                    accumulate(d, yb.terms, xt[()])
                    continue
                for w1, c1 in xt.items():
                    for w2, c2 in yb.terms.items():
                        w = w1 + w2
                        v = _mul(c1, c2)
                        old = d.get(w)
                        d[w] = v if old is None else _add(old, v)
        row = {}
        for c, d in acc.items():
            d = prune(d)
            if d:
                row[c] = AlgElem._raw(d)
        if row:
            out[r] = row
    return TOp(X.n, out)


def t_add(X: TOp, Y: TOp) -> TOp:
    _check_n(X, Y)
    return t_sum([X, Y])


def t_sum(ops: list[TOp], coeffs: list[Scalar] | None = None) -> TOp:
    """``sum_i coeffs[i] * ops[i]`` accumulated in one pass."""
    if not ops:
        raise ValueError("empty sum")
    n = ops[0].n
    acc: dict = {}
    for i, X in enumerate(ops):
        _check_n(ops[0], X)
        f = ONE if coeffs is None else as_ratfunc(coeffs[i])
        if not f:
            continue
        for r, xrow in X.rows.items():
            arow = acc.setdefault(r, {})
            for c, a in xrow.items():
                accumulate(arow.setdefault(c, {}), a.terms, f)
    out: dict = {}
    for r, arow in acc.items():
        row = {}
        for c, d in arow.items():
            d = prune(d)
            if d:
                row[c] = AlgElem._raw(d)
        if row:
            out[r] = row
    return TOp(n, out)


def t_scale(X: TOp, c: Scalar) -> TOp:
    c = as_ratfunc(c)
    if not c:
        return TOp(X.n)
    return TOp(X.n, {r: {k: a.scale(c) for k, a in row.items()} for r, row in X.rows.items()})


def t_apply(X: TOp, v) -> dict[MultiIdx, AlgElem]:
    """Column of ``X`` at multi-index ``v``, i.e. ``X (e_{v_1} (x) ... (x) e_{v_n})``."""
    v = tuple(v)
    out = {}
    for r, row in X.rows.items():
        a = row.get(v)
        if a is not None:
            out[r] = a
    return out


def first_difference(X: TOp, Y: TOp):
    """``(row, col, X_entry, Y_entry)`` at the first differing position, or None."""
    keys = set()
    for T in (X, Y):
        for r, row in T.rows.items():
            keys.update((r, c) for c in row)
    for r, c in sorted(keys):
        a, b = X.entry(r, c), Y.entry(r, c)
        if a != b:
            return r, c, a, b
    return None


# -- constructors ---------------------------------------------------------------


def identity(n: int) -> TOp:
    return TOp(n, {t: {t: _ONE_ALG} for t in multi_indices(n)})


def _check_slot(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"slot {i} out of range 1..{n}")


def perm_op(pi: Perm) -> TOp:
    """Slot permutation: the factor in slot ``i`` moves to slot ``pi(i)``."""
    n = pi.n
    inv = pi.inverse().images
    rows = {}
    for t in multi_indices(n):
        image = tuple(t[inv[k] - 1] for k in range(n))
        rows[image] = {t: _ONE_ALG}
    return TOp(n, rows)


def P(i: int, j: int, n: int) -> TOp:
    """Swap of slots ``i`` and ``j``; ``P(i, i)`` is the identity."""
    _check_slot(i, n)
    _check_slot(j, n)
    return perm_op(Perm.transposition(i, j, n))


def R_op(i: int, j: int, arg: UPoly, n: int) -> TOp:
    """Yang matrix ``1 - P_ij / arg`` acting on slots ``i, j``."""
    arg = arg if isinstance(arg, UPoly) else UPoly((arg,))
    if arg.is_zero():
        raise ZeroDivisionError("R-matrix with zero spectral argument")
    return t_sum([identity(n), P(i, j, n)], [ONE, -RatFunc(1, arg)])


def R_abbrev(i: int, j: int, n: int) -> TOp:
    """``R_ij(2u - i - j + 2)``."""
    return R_op(i, j, UPoly((2 - i - j, 2)), n)


def _antisym_on(slots: list[int], n: int) -> TOp:
    acc: dict = {}
    m = len(slots)
    signed = [(Perm(s), s) for s in permutations(range(1, m + 1))]
    for t in multi_indices(n):
        for sigma, s in signed:
            # v_1 (x) ... (x) v_m  ->  v_{sigma(1)} (x) ... (x) v_{sigma(m)} on the chosen slots
            image = list(t)
            for a in range(m):
                image[slots[a] - 1] = t[slots[s[a] - 1] - 1]
            key = tuple(image)
            col = acc.setdefault(key, {})
            col[t] = col.get(t, 0) + sigma.sign
    rows = {}
    for r, col in acc.items():
        row = {c: AlgElem.scalar(v) for c, v in col.items() if v}
        if row:
            rows[r] = row
    return TOp(n, rows)


def antisym(n: int, kind: str = "full", k: int | None = None) -> TOp:
    """Antisymmetrizer over all slots (``full``), the first ``k`` slots
    (``first``) or the last ``k`` slots (``prime``)."""
    if kind == "full":
        return _antisym_on(list(range(1, n + 1)), n)
    if k is None or not 0 <= k <= n:
        raise ValueError(f"slot count {k} out of range 0..{n}")
    if kind == "first":
        return _antisym_on(list(range(1, k + 1)), n)
    if kind == "prime":
        return _antisym_on(list(range(n - k + 1, n + 1)), n)
    raise ValueError(f"unknown antisymmetrizer kind {kind!r}")


def alt_vector(n: int) -> dict[MultiIdx, int]:
    """``A_n (e_1 (x) ... (x) e_n)``: sign(sigma) at (sigma(1), ..., sigma(n))."""
    return {p.images: p.sign for p in map(Perm, permutations(range(1, n + 1)))}


def antisym_left(X: TOp) -> TOp:
    """``A_n @ X`` using that ``A_n`` is the rank-one projector onto the
    alternating vector: every nonzero row is a signed copy of one row."""
    n = X.n
    alt = alt_vector(n)
    acc: dict = {}
    for r, s in alt.items():
        row = X.rows.get(r)
        if row:
            f = ONE if s > 0 else -ONE
            for c, a in row.items():
                accumulate(acc.setdefault(c, {}), a.terms, f)
    base = {}
    for c, d in acc.items():
        d = prune(d)
        if d:
            base[c] = AlgElem._raw(d)
    if not base:
        return TOp(n)
    neg = {c: -a for c, a in base.items()}
    return TOp(n, {r: dict(base) if s > 0 else dict(neg) for r, s in alt.items()})


def Pi_k(k: int, n: int) -> TOp:
    """``1 - (2u - k - n + 2)^{-1} sum_{i > k} P_ki``."""
    _check_slot(k, n)
    if k == n:
        return identity(n)
    f = -RatFunc(1, UPoly((2 - k - n, 2)))
    return t_sum([identity(n)] + [P(k, i, n) for i in range(k + 1, n + 1)],
                 [ONE] + [f] * (n - k))


def B_slot(s: int, shift: int, n: int) -> TOp:
    """Generating matrix ``B(u - shift)`` placed in tensor slot ``s``."""
    _check_slot(s, n)
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    gens = {(p, q): AlgElem.gen(p, q, shift) for p in range(1, n + 1) for q in range(1, n + 1)}
    rows = {}
    for r in multi_indices(n):
        row = {}
        for q in range(1, n + 1):
            c = r[: s - 1] + (q,) + r[s:]
            row[c] = gens[(r[s - 1], q)]
        rows[r] = row
    return TOp(n, rows)


def t_prod(ops: list[TOp]) -> TOp:
    out = ops[0]
    for X in ops[1:]:
        out = t_mul(out, X)
    return out
