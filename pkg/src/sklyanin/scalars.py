"""Exact scalars: rationals, polynomials in ``u`` and rational functions of ``u``.

Rationals are :class:`fractions.Fraction`.  Polynomials are dense tuples of
fractions (index = degree).  :class:`RatFunc` keeps a canonical reduced form so
that structural equality is mathematical equality, which the rest of the
package relies on when it compares symbolic results.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "UPoly", "RatFunc"]


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a root of its denominator."""


class ImproperError(ValueError):
    """A rational function with a pole at infinity where a proper one is needed."""


def _strip(coeffs: Iterable) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UPoly:
    """Dense univariate polynomial in ``u`` over the rationals."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip(coeffs)
        self._hash = hash(self.coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "UPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = hash(coeffs)
        return p

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def linear(cls, a, b) -> "UPoly":
        """``a*u + b``."""
        return cls((b, a))

    @property
    def deg(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __neg__(self) -> "UPoly":
        return UPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: "UPoly") -> "UPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out)

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UPoly._raw(tuple(out))

    def scale(self, c) -> "UPoly":
        c = Fraction(c)
        if c == 0:
            return UPoly()
        return UPoly._raw(tuple(c * x for x in self.coeffs))

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, lc = other.deg, other.lc
        if len(rem) - 1 < dd:
            return UPoly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lc
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return UPoly(quot), UPoly(rem[:dd])

    def monic(self) -> "UPoly":
        return self.scale(1 / self.lc) if self.coeffs else self

    def __call__(self, u0) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * u0 + c
        return acc

    def content(self) -> tuple[int, int]:
        """``(L, g)`` with ``L`` the lcm of coefficient denominators and ``g`` the
        gcd of the cleared integer coefficients."""
        L = 1
        for c in self.coeffs:
            L = lcm(L, c.denominator)
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c * L))
        return L, g

    def int_coeffs(self) -> list[int]:
        return [int(c) for c in self.coeffs]


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd by the Euclidean algorithm over the rationals."""
    while b.coeffs:
        a, b = b, a.divmod(b)[1]
    return a.monic()


U = UPoly((0, 1))


_INTERNED: dict[tuple, "RatFunc"] = {}


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials in ``u``.

    Canonical form: ``gcd(num, den) = 1``, ``den`` has coprime integer
    coefficients and a positive leading coefficient; any leftover rational
    factor lives in ``num``.  Zero is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __new__(cls, num: Scalar = 0, den: Scalar = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UPoly(), UPoly((1,))
        elif den.deg > 0:
            g = poly_gcd(num, den)
            if g.deg > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
        if num.coeffs:
            L, cg = den.content()
            f = Fraction(L, cg)
            if den.lc < 0:
                f = -f
            if f != 1:
                num, den = num.scale(f), den.scale(f)
        return cls._raw(num, den)

    @classmethod
    def _raw(cls, num: UPoly, den: UPoly) -> "RatFunc":
        """Interned instance for an already canonical pair."""
        key = (num.coeffs, den.coeffs)
        r = _INTERNED.get(key)
        if r is None:
            r = object.__new__(cls)
            r.num, r.den = num, den
            _INTERNED[key] = r
        return r

    def __reduce__(self):
        return (RatFunc, (self.num, self.den))

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls._raw(UPoly((c,)), UPoly((1,)))

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def is_const(self) -> bool:
        return self.num.deg <= 0 and self.den.deg == 0

    def is_one(self) -> bool:
        return self is ONE or (self.num.coeffs == (1,) and self.den.coeffs == (1,))

    # Instances are interned, so identity is value equality.
    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self is other
        if isinstance(other, (int, Fraction, UPoly)):
            return self is RatFunc(other)
        return NotImplemented

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"RatFunc({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        return rf_arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        return rf_arith(self, other, "sub")

    def __rsub__(self, other) -> "RatFunc":
        return rf_arith(other, self, "sub")

    def __mul__(self, other) -> "RatFunc":
        return rf_arith(self, other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        return rf_arith(self, other, "div")

    def __rtruediv__(self, other) -> "RatFunc":
        return rf_arith(other, self, "div")

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return (ONE / self) ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out


def _as_poly(x: Scalar) -> UPoly:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UPoly((x,))
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def as_ratfunc(x: Scalar) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    if isinstance(x, UPoly):
        return RatFunc(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational function")


ZERO = RatFunc(0)
ONE = RatFunc(1)

# The symbolic layers produce very few distinct coefficients, so memoizing the
# binary operations removes nearly all gcd work from the hot loops.
_CACHE_LIMIT = 200_000
_add_cache: dict[tuple[int, int], RatFunc] = {}
_mul_cache: dict[tuple[int, int], RatFunc] = {}


def _add(a: RatFunc, b: RatFunc) -> RatFunc:
    if not a.num.coeffs:
        return b
    if not b.num.coeffs:
        return a
    key = (id(a), id(b))
    r = _add_cache.get(key)
    if r is None:
        if a.den.coeffs == b.den.coeffs:
            r = RatFunc(a.num + b.num, a.den)
        else:
            r = RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)
        if len(_add_cache) > _CACHE_LIMIT:
            _add_cache.clear()
        _add_cache[key] = r
    return r


def _mul(a: RatFunc, b: RatFunc) -> RatFunc:
    if a is ONE:
        return b
    if b is ONE:
        return a
    if not a.num.coeffs or not b.num.coeffs:
        return ZERO
    key = (id(a), id(b))
    r = _mul_cache.get(key)
    if r is None:
        r = RatFunc(a.num * b.num, a.den * b.den)
        if len(_mul_cache) > _CACHE_LIMIT:
            _mul_cache.clear()
        _mul_cache[key] = r
    return r


def rf_arith(a: Scalar, b: Scalar | None = None, kind: str = "add") -> RatFunc:
    """Exact ``add``/``sub``/``mul``/``div``/``neg`` in canonical form."""
    a = as_ratfunc(a)
    if kind == "neg":
        return -a
    b = as_ratfunc(b)
    if kind == "add":
        return _add(a, b)
    if kind == "sub":
        return _add(a, -b)
    if kind == "mul":
        return _mul(a, b)
    if kind == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return _mul(a, RatFunc(b.den, b.num))
    raise ValueError(f"unknown operation {kind!r}")


def rf_eval(a: RatFunc, u0) -> Fraction:
    u0 = Fraction(u0)
    d = a.den(u0)
    if d == 0:
        raise PoleError(f"pole of {a} at u = {u0}")
    return a.num(u0) / d


@dataclass(frozen=True)
class TruncSeries:
    """``sum(coeffs[r] * t**r)`` with ``t = 1/u``, truncated after ``t**order``."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        if self.order != other.order:
            raise ValueError("truncation orders differ")
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        if self.order != other.order:
            raise ValueError("truncation orders differ")
        O = self.order
        out = [Fraction(0)] * (O + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(O + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncSeries(tuple(out))


def rf_expand_at_infinity(a: RatFunc, order: int) -> TruncSeries:
    """Taylor coefficients of ``a`` in ``t = 1/u`` up to ``t**order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    a = as_ratfunc(a)
    if a.is_zero():
        return TruncSeries((Fraction(0),) * (order + 1))
    dn, dd = a.num.deg, a.den.deg
    if dn > dd:
        raise ImproperError(f"{a} is not proper at infinity")
    # num(1/t)/den(1/t) = t^(dd-dn) * rev(num)(t) / rev(den)(t)
    top = list(reversed(a.num.coeffs))
    bot = list(reversed(a.den.coeffs))
    shift = dd - dn
    n_terms = order + 1 - shift
    quot: list[Fraction] = []
    rem = top + [Fraction(0)] * max(0, n_terms - len(top))
    for k in range(max(0, n_terms)):
        q = rem[k] / bot[0]
        quot.append(q)
        if q:
            for j in range(1, len(bot)):
                if k + j < len(rem):
                    rem[k + j] -= q * bot[j]
    out = [Fraction(0)] * shift + quot
    return TruncSeries(tuple(out[: order + 1]))


# -- text form ---------------------------------------------------------------

def _poly_text(coeffs: Sequence[int]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "u" if k == 1 else f"u^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) or "0"


def to_text(a: RatFunc) -> str:
    """``(c_k*u^k+...+c_0)/(d_m*u^m+...+d_0)`` with integer coefficients."""
    L, _ = a.num.content()
    num = [int(c * L) for c in a.num.coeffs]
    den = [L * int(c) for c in a.den.coeffs]
    g = 0
    for c in num + den:
        g = gcd(g, c)
    num = [c // g for c in num]
    den = [c // g for c in den]
    ntext = _poly_text(num)
    if len([c for c in num if c]) > 1:
        ntext = f"({ntext})"
    if den == [1]:
        return ntext
    dtext = _poly_text(den)
    if len(den) > 1:
        dtext = f"({dtext})"
    return f"{ntext}/{dtext}"
