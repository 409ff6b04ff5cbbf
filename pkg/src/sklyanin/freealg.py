"""Free noncommutative algebra on the symbols ``b_p^q(u - s)``.

No relations are imposed between generators: two elements are equal exactly
when their word-to-coefficient maps agree.  Words are tuples of
:class:`GenSym`; tuple order gives the canonical term order (lexicographic on
the flattened ``(p, q, shift)`` triples).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping, NamedTuple

from .scalars import ONE, ZERO, RatFunc, Scalar, _add, _mul, as_ratfunc, rf_expand_at_infinity


class GenSym(NamedTuple):
    """``b_p^q(u - shift)``: row ``p``, column ``q`` of ``B`` at a shifted argument."""

    p: int
    q: int
    shift: int = 0

    def __str__(self) -> str:
        arg = "u" if self.shift == 0 else f"u-{self.shift}"
        return f"b[{self.p},{self.q}]({arg})"


Word = tuple  # tuple[GenSym, ...]


def word_text(w: Word) -> str:
    return " * ".join(str(g) for g in w)


class AlgElem:
    """Finite linear combination of words with :class:`RatFunc` coefficients.

    Treat instances as immutable; ``terms`` never holds a zero coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        clean: dict[Word, RatFunc] = {}
        for w, c in (terms or {}).items():
            c = as_ratfunc(c)
            if c:
                clean[tuple(GenSym(*g) for g in w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "AlgElem":
        a = object.__new__(cls)
        a.terms = terms
        return a

    @classmethod
    def scalar(cls, c: Scalar) -> "AlgElem":
        c = as_ratfunc(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def gen(cls, p: int, q: int, shift: int = 0) -> "AlgElem":
        return cls._raw({(GenSym(p, q, shift),): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> list[tuple[Word, RatFunc]]:
        """Terms in canonical order."""
        return sorted(self.terms.items())

    def __iter__(self) -> Iterator[tuple[Word, RatFunc]]:
        return iter(self.items())

    def coeff(self, word) -> RatFunc:
        return self.terms.get(tuple(GenSym(*g) for g in word), ZERO)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgElem):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.terms == AlgElem.scalar(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        from .emit import to_text

        return f"AlgElem({to_text(self)!r})"

    def __neg__(self) -> "AlgElem":
        return AlgElem._raw({w: -c for w, c in self.terms.items()})

    def __add__(self, other) -> "AlgElem":
        return alg_arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other) -> "AlgElem":
        return alg_arith(self, other, "sub")

    def __rsub__(self, other) -> "AlgElem":
        return alg_arith(other, self, "sub")

    def __mul__(self, other) -> "AlgElem":
        return alg_arith(self, other, "mul")

    def __rmul__(self, other) -> "AlgElem":
        return alg_arith(other, self, "mul")

    def scale(self, c: Scalar) -> "AlgElem":
        return alg_scale(self, c)


def _as_alg(x) -> AlgElem:
    if isinstance(x, AlgElem):
        return x
    return AlgElem.scalar(x)


def accumulate(acc: dict, terms: Mapping, factor: RatFunc = ONE) -> None:
    """``acc += factor * terms`` in place on raw word->coefficient dicts."""
    for w, c in terms.items():
        if factor is not ONE:
            c = _mul(factor, c)
        old = acc.get(w)
        acc[w] = c if old is None else _add(old, c)


def prune(acc: dict) -> dict:
    return {w: c for w, c in acc.items() if c.num.coeffs}


def alg_arith(a, b, kind: str = "add") -> AlgElem:
    a, b = _as_alg(a), _as_alg(b)
    if kind == "add":
        acc = dict(a.terms)
        accumulate(acc, b.terms)
        return AlgElem._raw(prune(acc))
    if kind == "sub":
        acc = dict(a.terms)
        accumulate(acc, {w: -c for w, c in b.terms.items()})
        return AlgElem._raw(prune(acc))
    if kind == "mul":
        acc: dict = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                w = w1 + w2
                c = _mul(c1, c2)
                old = acc.get(w)
                acc[w] = c if old is None else _add(old, c)
        return AlgElem._raw(prune(acc))
    raise ValueError(f"unknown operation {kind!r}")


def alg_scale(a: AlgElem, c: Scalar) -> AlgElem:
    c = as_ratfunc(c)
    if not c:
        return AlgElem()
    return AlgElem._raw({w: _mul(c, x) for w, x in a.terms.items()})


# -- expansion in the modes b_pq^(r) -----------------------------------------


class SeriesGen(NamedTuple):
    """Mode generator ``b_pq^(r)``."""

    p: int
    q: int
    r: int

    def __str__(self) -> str:
        return f"b[{self.p},{self.q}]^({self.r})"


@dataclass(frozen=True)
class SeriesElem:
    """Truncated series in ``t = 1/u`` with noncommutative polynomial coefficients.

    ``coeffs[r]`` maps words in :class:`SeriesGen` to the rational coefficient
    of ``t**r``.
    """

    coeffs: tuple[Mapping[tuple, Fraction], ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "SeriesElem":
        return cls(tuple({} for _ in range(order + 1)))

    def __add__(self, other: "SeriesElem") -> "SeriesElem":
        if self.order != other.order:
            raise ValueError("truncation orders differ")
        out = []
        for x, y in zip(self.coeffs, other.coeffs):
            d = dict(x)
            for w, c in y.items():
                d[w] = d.get(w, 0) + c
            out.append({w: c for w, c in d.items() if c})
        return SeriesElem(tuple(out))

    def __mul__(self, other: "SeriesElem") -> "SeriesElem":
        if self.order != other.order:
            raise ValueError("truncation orders differ")
        O = self.order
        out: list[dict] = [{} for _ in range(O + 1)]
        for i, x in enumerate(self.coeffs):
            for j in range(O + 1 - i):
                d = out[i + j]
                for w1, c1 in x.items():
                    for w2, c2 in other.coeffs[j].items():
                        w = w1 + w2
                        d[w] = d.get(w, 0) + c1 * c2
        return SeriesElem(tuple({w: c for w, c in d.items() if c} for d in out))

    def scale_series(self, s) -> "SeriesElem":
        """Multiply by a scalar series (a :class:`TruncSeries`)."""
        O = self.order
        out: list[dict] = [{} for _ in range(O + 1)]
        for i, a in enumerate(s.coeffs):
            if a:
                for j in range(O + 1 - i):
                    d = out[i + j]
                    for w, c in self.coeffs[j].items():
                        d[w] = d.get(w, 0) + a * c
        return SeriesElem(tuple({w: c for w, c in d.items() if c} for d in out))

    def coeff(self, r: int) -> dict:
        return dict(self.coeffs[r])


def _symbol_series(g: GenSym, order: int) -> SeriesElem:
    # (u - s)^(-r) = t^r * sum_j C(r+j-1, j) s^j t^j
    out: list[dict] = [{} for _ in range(order + 1)]
    out[0][(SeriesGen(g.p, g.q, 0),)] = Fraction(1)
    for r in range(1, order + 1):
        for j in range(order + 1 - r):
            c = comb(r + j - 1, j) * g.shift**j
            if c:
                out[r + j][(SeriesGen(g.p, g.q, r),)] = Fraction(c)
    return SeriesElem(tuple(out))


def expand_series(a: AlgElem, n: int, order: int) -> SeriesElem:
    """Substitute ``b_p^q(u-s) -> sum_r b_pq^(r) (u-s)^(-r)`` and expand in ``1/u``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    total = SeriesElem.zero(order)
    unit = SeriesElem(({(): Fraction(1)},) + tuple({} for _ in range(order)))
    cache: dict[GenSym, SeriesElem] = {}
    for w, c in a.items():
        term = unit
        for g in w:
            if not (1 <= g.p <= n and 1 <= g.q <= n):
                raise ValueError(f"generator {g} out of range for n={n}")
            s = cache.get(g)
            if s is None:
                s = cache[g] = _symbol_series(g, order)
            term = term * s
        total = total + term.scale_series(rf_expand_at_infinity(c, order))
    return total


def series_word_text(w: tuple) -> str:
    return " * ".join(str(g) for g in w) if w else "1"
