"""The Sklyanin determinant of ``B(u)``, computed along independent routes.

Routes (``PATHS``):

``def``  column extraction of the R-matrix bracket ``<B_1, ..., B_n>``
``pi``   same for ``<<B_1, ..., B_n>>`` (R-strings replaced by ``Pi_k``)
``bp``   sum over ``kappa`` of ``alpha(kappa) B_1 P_{1k_1} ... B_n P_{nk_n}``
``qa``   permutation operators moved to the front, indexed by ``kappa``
``qb``   reindexed by ``eta`` with the recursive permutation ``p_eta``
``qc``   indexed by permutations via word restriction
``thm``  closed combinatorial formula with summed dummy indices

Everything lives in the free algebra on ``b_p^q(u - s)``; the value is the
coefficient ``S`` in ``A_n X (e_1 (x) ... (x) e_n) = S * A_n (e_1 (x) ... (x) e_n)``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .freealg import AlgElem, GenSym, SeriesElem, accumulate, expand_series, prune
from .permcomb import (
    S_eta,
    alpha_bar,
    alpha_kappa,
    alpha_sigma_eta,
    all_perms,
    enum_In,
    eta_data,
    p_eta,
    q_kappa,
    word_restriction,
)
from .scalars import ONE, RatFunc
from .tensorop import (
    P,
    B_slot,
    Pi_k,
    R_abbrev,
    TOp,
    alt_vector,
    antisym_left,
    first_difference,
    perm_op,
    t_apply,
    t_mul,
    t_prod,
    t_sum,
)

PATHS = ("def", "pi", "bp", "qa", "qb", "qc", "thm")


class ExtractionError(AssertionError):
    """``A_n X`` applied to ``e_1 (x) ... (x) e_n`` is not a multiple of the alternating vector."""


@dataclass(frozen=True)
class SdetResult:
    n: int
    path: str
    value: AlgElem


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")


# -- operator forms -------------------------------------------------------------


def bracket(n: int, k: int | None = None) -> TOp:
    """``B_1(u) (R_12...R_1k) B_2(u-1) (R_23...R_2k) ... B_k(u-k+1)`` on ``n`` slots."""
    _check_n(n)
    k = n if k is None else k
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    factors = []
    for i in range(1, k + 1):
        factors.append(B_slot(i, i - 1, n))
        factors.extend(R_abbrev(i, j, n) for j in range(i + 1, k + 1))
    return t_prod(factors)


def bracket_pi(n: int) -> TOp:
    """``B_1(u) Pi_1 B_2(u-1) Pi_2 ... Pi_{n-1} B_n(u-n+1)``."""
    _check_n(n)
    factors = []
    for i in range(1, n + 1):
        factors.append(B_slot(i, i - 1, n))
        if i < n:
            factors.append(Pi_k(i, n))
    return t_prod(factors)


class _PrefixProducts:
    """Products ``F(key[:1]) F(key[:2]) ...`` memoized on the key prefix.

    ``factor(prefix)`` returns the operator contributed by the last element of
    ``prefix``.  Enumerating keys in lexicographic order reuses almost every
    partial product.
    """

    def __init__(self, factor: Callable[[tuple], TOp], length: int):
        self.factor = factor
        self.length = length
        self.cache: dict[tuple, TOp] = {}

    def __call__(self, key: tuple) -> TOp:
        key = tuple(key)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        f = self.factor(key)
        out = f if len(key) == 1 else t_mul(self(key[:-1]), f)
        if len(key) < self.length:
            self.cache[key] = out
        return out


def _b_strings(n: int) -> _PrefixProducts:
    """``slots -> B_{slots[0]}(u) B_{slots[1]}(u-1) ...``."""
    return _PrefixProducts(lambda key: B_slot(key[-1], len(key) - 1, n), n)


def expand_bp(n: int) -> TOp:
    _check_n(n)

    def factor(key: tuple) -> TOp:
        i, k = len(key), key[-1]
        b = B_slot(i, i - 1, n)
        return b if k == i else t_mul(b, P(i, k, n))

    prod_of = _PrefixProducts(factor, n)
    terms, coeffs = [], []
    for kappa in enum_In(n):
        terms.append(prod_of(kappa))
        coeffs.append(alpha_kappa(kappa, n))
    return t_sum(terms, coeffs)


def expand_qa(n: int) -> TOp:
    _check_n(n)
    b_string = _b_strings(n)
    terms, coeffs = [], []
    for kappa in enum_In(n):
        q_inv = t_prod([P(i, k, n) for i, k in enumerate(kappa, 1)])
        slots = [q_kappa(kappa, i)(i) for i in range(1, n + 1)]
        terms.append(t_mul(q_inv, b_string(slots)))
        coeffs.append(alpha_kappa(kappa, n))
    return t_sum(terms, coeffs)


def expand_qb(n: int) -> TOp:
    _check_n(n)
    b_string = _b_strings(n)
    terms, coeffs = [], []
    for eta in enum_In(n):
        terms.append(t_mul(perm_op(p_eta(eta).inverse()), b_string(eta)))
        # alpha(eta) is the same product as alpha(kappa), read on eta
        coeffs.append(alpha_kappa(eta, n))
    return t_sum(terms, coeffs)


def expand_qc(n: int) -> TOp:
    _check_n(n)
    b_string = _b_strings(n)
    terms, coeffs = [], []
    for sigma in all_perms(n):
        slots = [word_restriction(sigma, range(i, n + 1))(i) for i in range(1, n + 1)]
        terms.append(t_mul(perm_op(sigma.inverse()), b_string(slots)))
        coeffs.append(alpha_bar(sigma, n))
    return t_sum(terms, coeffs)


# -- scalar extraction -------------------------------------------------------------


def extract_sdet(X: TOp) -> AlgElem:
    """Coefficient of the alternating vector in ``A_n X (e_1 (x) ... (x) e_n)``.

    The image is recomputed from the materialized ``A_n X`` column and checked to
    be ``S`` times the alternating vector; any deviation raises
    :class:`ExtractionError`.
    """
    n = X.n
    ident = tuple(range(1, n + 1))
    col = t_apply(X, ident)
    alt = alt_vector(n)
    image: dict = {}
    # A_n e_t = sum_sigma sign(sigma) e_{t o sigma}
    for t, a in col.items():
        for sig, s in alt.items():
            r = tuple(t[x - 1] for x in sig)
            accumulate(image.setdefault(r, {}), a.terms, ONE if s > 0 else -ONE)
    image = {r: AlgElem._raw(prune(d)) for r, d in image.items()}
    S = image.get(ident, AlgElem())
    for r, a in image.items():
        s = alt.get(r)
        want = AlgElem() if s is None else (S if s > 0 else -S)
        if a != want:
            raise ExtractionError(f"component {r} of A_n X e_(1..n) is not sign * S")
    for r, s in alt.items():
        if r not in image and S:
            raise ExtractionError(f"component {r} missing from A_n X e_(1..n)")
    return S


def sdet_theorem(n: int) -> AlgElem:
    """Closed formula: sum over ``eta`` in ``I_n`` and ``sigma`` in ``S(eta)``."""
    _check_n(n)
    acc: dict = {}
    for eta in enum_In(n):
        data = eta_data(eta)
        gamma = data.gamma
        free = [k for k in range(1, n + 1) if k not in data.gmin]
        for sigma in S_eta(eta):
            coeff = alpha_sigma_eta(sigma, eta, n)
            for vals in product(range(1, n + 1), repeat=len(free)):
                s = dict(zip(free, vals))
                word = []
                for k in range(1, n + 1):
                    p = sigma(eta[k - 1]) if k in data.gmin else s[k]
                    q = eta[k - 1] if k in data.gmax else s[gamma(k)]
                    word.append(GenSym(p, q, k - 1))
                w = tuple(word)
                old = acc.get(w)
                acc[w] = coeff if old is None else old + coeff
    return AlgElem._raw(prune(acc))


_OPERATOR_FORMS: dict[str, Callable[[int], TOp]] = {
    "def": bracket,
    "pi": bracket_pi,
    "bp": expand_bp,
    "qa": expand_qa,
    "qb": expand_qb,
    "qc": expand_qc,
}


def operator_form(n: int, path: str) -> TOp:
    return _OPERATOR_FORMS[path](n)


def sdet(n: int, path: str = "thm") -> SdetResult:
    if path not in PATHS:
        raise ValueError(f"unknown path {path!r}; choose from {', '.join(PATHS)}")
    _check_n(n)
    if path == "thm":
        value = sdet_theorem(n)
    else:
        value = extract_sdet(operator_form(n, path))
    return SdetResult(n, path, value)


# -- verification harness ----------------------------------------------------------


@dataclass
class CheckLine:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    informational: bool = False


@dataclass
class CrossCheckReport:
    n: int
    lines: list[CheckLine] = field(default_factory=list)
    values: dict[str, AlgElem] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(l.passed for l in self.lines if not l.informational)

    def text(self, timings: bool = False) -> str:
        out = []
        for l in self.lines:
            tag = "INFO" if l.informational else ("PASS" if l.passed else "FAIL")
            extra = f"  ({l.detail})" if l.detail else ""
            clock = f"  {l.seconds:.2f}s" if timings else ""
            out.append(f"[{tag}] n={self.n} {l.name}{clock}{extra}")
        return "\n".join(out)


def _diff_text(a: AlgElem, b: AlgElem) -> str:
    for w in sorted(set(a.terms) | set(b.terms)):
        ca, cb = a.coeff(w), b.coeff(w)
        if ca != cb:
            word = " * ".join(str(g) for g in w) or "1"
            return f"first difference at {word}: {ca} vs {cb}"
    return ""


def _op_diff_text(X: TOp, Y: TOp) -> str:
    from .emit import to_text

    d = first_difference(X, Y)
    if d is None:
        return ""
    r, c, a, b = d
    return f"first difference at row {r}, col {c}: {to_text(a)} vs {to_text(b)}"


def cross_check(n: int, full_matrix_info: bool = True) -> CrossCheckReport:
    """Compare every route against every other at rank ``n``.

    (a) ``<<B>>`` equals each of its four expansions as an operator;
    (b) ``A_n <B> = A_n <<B>>`` as operators;
    (c) all seven scalar values coincide.
    """
    _check_n(n)
    rep = CrossCheckReport(n)
    ops: dict[str, TOp] = {}
    for path in ("def", "pi", "bp", "qa", "qb", "qc"):
        t0 = time.perf_counter()
        ops[path] = operator_form(n, path)
        rep.lines.append(CheckLine(f"build {path}", True, f"{ops[path].n_terms()} terms",
                                   time.perf_counter() - t0, informational=True))

    for path in ("bp", "qa", "qb", "qc"):
        t0 = time.perf_counter()
        ok = ops["pi"] == ops[path]
        rep.lines.append(CheckLine(f"op pi == {path}", ok,
                                   "" if ok else _op_diff_text(ops["pi"], ops[path]),
                                   time.perf_counter() - t0))

    t0 = time.perf_counter()
    left_def, left_pi = antisym_left(ops["def"]), antisym_left(ops["pi"])
    ok = left_def == left_pi
    rep.lines.append(CheckLine("op A_n def == A_n pi", ok,
                               "" if ok else _op_diff_text(left_def, left_pi),
                               time.perf_counter() - t0))

    for path in PATHS:
        t0 = time.perf_counter()
        try:
            if path == "thm":
                rep.values[path] = sdet_theorem(n)
            else:
                rep.values[path] = extract_sdet(ops[path])
            ok, detail = True, f"{len(rep.values[path])} words"
        except ExtractionError as exc:
            ok, detail = False, str(exc)
        rep.lines.append(CheckLine(f"extract {path}", ok, detail, time.perf_counter() - t0))

    ref = rep.values.get("def")
    for path in PATHS[1:]:
        if ref is None or path not in rep.values:
            continue
        ok = rep.values[path] == ref
        rep.lines.append(CheckLine(f"sdet def == {path}", ok,
                                   "" if ok else _diff_text(ref, rep.values[path])))

    if full_matrix_info and ref is not None:
        t0 = time.perf_counter()
        ok = full_matrix_identity(left_pi, ref)
        rep.lines.append(CheckLine("A_n <<B>> == sdet * A_n (full matrix)", ok,
                                   "holds" if ok else "does not hold in the free algebra",
                                   time.perf_counter() - t0, informational=True))
    return rep


def full_matrix_identity(left: TOp, S: AlgElem) -> bool:
    """Whether ``left`` (an ``A_n X``) equals ``S * A_n`` entrywise."""
    n = left.n
    alt = alt_vector(n)
    for r, row in left.rows.items():
        sr = alt.get(r)
        for c, a in row.items():
            sc = alt.get(c)
            if sr is None or sc is None:
                return False
            if a != (S if sr * sc > 0 else -S):
                return False
    return bool(left.rows) or not S


# -- specialization and series -----------------------------------------------------


def epsilon(n: int, l: int) -> tuple[int, ...]:
    """``(1, ..., 1, -1, ..., -1)`` with ``n - l`` plus signs."""
    if not 0 <= l <= n:
        raise ValueError(f"l={l} out of range 0..{n}")
    m = n - l
    return tuple(1 if i <= m else -1 for i in range(1, n + 1))


def specialize_diag(S: AlgElem, n: int, l: int) -> RatFunc:
    """Substitute ``b_p^q(u - s) -> delta_pq * eps_p``."""
    eps = epsilon(n, l)
    out = RatFunc(0)
    for w, c in S.terms.items():
        v = 1
        for g in w:
            if g.p != g.q:
                v = 0
                break
            v *= eps[g.p - 1]
        if v:
            out = out + (c if v > 0 else -c)
    return out


def leading(S: AlgElem, n: int, l: int) -> Fraction:
    """Limit of the diagonal specialization as ``u -> infinity``."""
    r = specialize_diag(S, n, l)
    if r.is_zero() or r.num.deg < r.den.deg:
        return Fraction(0)
    if r.num.deg > r.den.deg:
        raise ValueError(f"specialization {r} has no finite limit")
    return r.num.lc / r.den.lc


def series_coeffs(S: AlgElem, n: int, order: int) -> SeriesElem:
    return expand_series(S, n, order)


def specialize_modes(coeff: dict, n: int, l: int) -> Fraction | None:
    """Evaluate a mode polynomial with ``b_pq^(0) -> delta_pq eps_p``.

    Returns None when a higher mode ``b_pq^(r)``, ``r > 0``, survives.
    """
    eps = epsilon(n, l)
    total = Fraction(0)
    for w, c in coeff.items():
        v = Fraction(c)
        for g in w:
            if g.r != 0:
                return None
            if g.p != g.q:
                v = Fraction(0)
                break
            v *= eps[g.p - 1]
        total += v
    return total


def bench(n: int, paths=PATHS) -> list[tuple[str, float, int]]:
    """Wall time and word count of each route at rank ``n``."""
    out = []
    for path in paths:
        t0 = time.perf_counter()
        res = sdet(n, path)
        out.append((path, time.perf_counter() - t0, len(res.value)))
    return out
