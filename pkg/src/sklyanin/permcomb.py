"""Permutations of ``{1..n}``, the index set ``I_n`` and the attached coefficients.

Composition convention: ``(s * t)(x) = s(t(x))``.  A product of transpositions
written left to right therefore applies its rightmost factor first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Sequence

from .scalars import ONE, RatFunc, UPoly

IdxTuple = tuple  # tuple[int, ...] with i <= k_i <= n


@dataclass(frozen=True)
class Perm:
    """A permutation stored by its images: ``images[i-1] = sigma(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "Perm":
        """``(i, j)``; ``(i, i)`` is the identity."""
        im = list(range(1, n + 1))
        im[i - 1], im[j - 1] = j, i
        return cls(tuple(im))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Perm":
        im = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                im[a - 1] = b
        return cls(tuple(im))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Perm":
        """Parse cycle notation such as ``(1,5,7,3)(4)(6,2)``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\))*", text.replace(" ", "")):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [
            [int(x) for x in body.split(",")]
            for body in re.findall(r"\(([^()]*)\)", text.replace(" ", ""))
        ]
        seen = [x for c in cycles for x in c]
        if len(seen) != len(set(seen)):
            raise ValueError(f"cycles are not disjoint: {text!r}")
        if n is None:
            n = max(seen, default=0)
        return cls.from_cycles(cycles, n)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[x - 1] for x in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Perm(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (fixed points included), minimum first, sorted by minimum."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    @cached_property
    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))

    def to_cycle_str(self, support: Iterable[int] | None = None) -> str:
        keep = set(support) if support is not None else None
        return "".join(
            "(" + ",".join(map(str, c)) + ")"
            for c in self.cycles()
            if keep is None or c[0] in keep
        )

    def __str__(self) -> str:
        return self.to_cycle_str()


def transpositions_product(pairs: Iterable[tuple[int, int]], n: int) -> Perm:
    """Left-to-right product of transpositions (rightmost applied first)."""
    out = Perm.identity(n)
    for i, j in pairs:
        out = out * Perm.transposition(i, j, n)
    return out


def all_perms(n: int) -> list[Perm]:
    return [Perm(p) for p in permutations(range(1, n + 1))]


# -- the index set I_n --------------------------------------------------------


def enum_In(n: int) -> list[IdxTuple]:
    """All ``(k_1..k_n)`` with ``i <= k_i <= n``, lexicographic."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return [tuple(k) for k in product(*(range(i, n + 1) for i in range(1, n + 1)))]


def check_In(k: Sequence[int]) -> None:
    n = len(k)
    for i, ki in enumerate(k, 1):
        if not i <= ki <= n:
            raise ValueError(f"{tuple(k)} is not in I_{n}")


def _linear_inv(i: int, n: int) -> RatFunc:
    """``1/(n - 2u - 2 + i)``."""
    return RatFunc(1, UPoly((n - 2 + i, -2)))


def alpha_kappa(kappa: Sequence[int], n: int | None = None) -> RatFunc:
    """Product of ``1/(n - 2u - 2 + i)`` over positions with ``k_i > i``."""
    n = len(kappa) if n is None else n
    out = ONE
    for i, ki in enumerate(kappa, 1):
        if i < ki:
            out = out * _linear_inv(i, n)
    return out


def q_kappa(kappa: Sequence[int], i: int = 1) -> Perm:
    """``(n, k_n)(n-1, k_{n-1}) ... (i, k_i)``."""
    n = len(kappa)
    if not 1 <= i <= n:
        raise ValueError(f"i={i} out of range")
    return transpositions_product(((j, kappa[j - 1]) for j in range(n, i - 1, -1)), n)


def kappa_to_eta(kappa: Sequence[int]) -> IdxTuple:
    n = len(kappa)
    return tuple(q_kappa(kappa, i)(i) for i in range(1, n + 1))


def eta_to_kappa(eta: Sequence[int]) -> IdxTuple:
    n = len(eta)
    k = [0] * n
    k[n - 1] = eta[n - 1]
    # tail = (i+1, k_{i+1}) ... (n, k_n)
    tail = Perm.transposition(n, k[n - 1], n)
    for i in range(n - 1, 0, -1):
        k[i - 1] = tail(eta[i - 1])
        tail = Perm.transposition(i, k[i - 1], n) * tail
    return tuple(k)


def p_eta(eta: Sequence[int]) -> Perm:
    """``p^[1]`` of the recursion ``p^[n] = id``, ``p^[i] = p^[i+1] (i, (p^[i+1])^-1(eta_i))``."""
    n = len(eta)
    p = Perm.identity(n)
    for i in range(n - 1, 0, -1):
        p = p * Perm.transposition(i, p.inverse()(eta[i - 1]), n)
    return p


def word_restriction(sigma: Perm, G: Iterable[int]) -> Perm:
    """Delete the letters outside ``G`` from every cycle word of ``sigma``."""
    G = set(G)
    cycles = []
    for c in sigma.cycles():
        kept = [x for x in c if x in G]
        if kept:
            cycles.append(kept)
    return Perm.from_cycles(cycles, sigma.n)


def cycle_maxima(sigma: Perm) -> set[int]:
    return {max(c) for c in sigma.cycles()}


def alpha_bar(sigma: Perm, n: int | None = None) -> RatFunc:
    """Product of ``1/(n - 2u - 2 + g)`` over elements that are not a cycle maximum."""
    n = sigma.n if n is None else n
    gmax = cycle_maxima(sigma)
    out = ONE
    for g in range(1, sigma.n + 1):
        if g not in gmax:
            out = out * _linear_inv(g, n)
    return out


@dataclass(frozen=True)
class EtaData:
    """Image of ``eta``, the increasing-cycle permutation built from its fibres,
    and the sets of cycle minima/maxima."""

    eta: IdxTuple
    image: tuple[int, ...]
    gamma: Perm
    gmin: frozenset[int]
    gmax: frozenset[int]


def eta_data(eta: Sequence[int]) -> EtaData:
    n = len(eta)
    image = tuple(sorted(set(eta)))
    fibres = [[i for i in range(1, n + 1) if eta[i - 1] == N] for N in image]
    gamma = Perm.from_cycles(fibres, n)
    return EtaData(
        eta=tuple(eta),
        image=image,
        gamma=gamma,
        gmin=frozenset(f[0] for f in fibres),
        gmax=frozenset(f[-1] for f in fibres),
    )


def S_eta(eta: Sequence[int]) -> list[Perm]:
    """Permutations of ``{1..n}`` fixing every point outside ``Im(eta)``."""
    n = len(eta)
    image = sorted(set(eta))
    out = []
    for arr in permutations(image):
        im = list(range(1, n + 1))
        for a, b in zip(image, arr):
            im[a - 1] = b
        out.append(Perm(tuple(im)))
    return out


def alpha_sigma_eta(sigma: Perm, eta: Sequence[int], n: int | None = None) -> RatFunc:
    """``sign(sigma) * prod_{i < eta_i} 1/(2u + 2 - i - n)``."""
    n = len(eta) if n is None else n
    out = ONE if sigma.sign > 0 else -ONE
    for i, e in enumerate(eta, 1):
        if i < e:
            out = out * RatFunc(1, UPoly((2 - i - n, 2)))
    return out
