"""Exact arithmetic in the cyclotomic integers Z[zeta_m].

A :class:`CycInt` stores integer coordinates in the power basis
``1, zeta, ..., zeta^(phi(m)-1)`` after reduction modulo the m-th cyclotomic
polynomial, so equality is coordinate equality.
"""

from __future__ import annotations

import cmath
from functools import lru_cache
from math import gcd

import numpy as np


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in reversed(range(len(out))):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, low degree first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def totient(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(coeffs, m: int) -> tuple[int, ...]:
    """Reduce a polynomial in zeta (any length) modulo Phi_m."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = [int(x) for x in coeffs]
    # zeta^m = 1 first, then long division by the monic Phi_m
    if len(c) > m:
        folded = [0] * m
        for i, x in enumerate(c):
            folded[i % m] += x
        c = folded
    for i in reversed(range(deg, len(c))):
        lead = c[i]
        if lead:
            for j in range(deg + 1):
                c[i - deg + j] -= lead * phi[j]
    c = c[:deg] + [0] * max(0, deg - len(c))
    return tuple(c)


class CycInt:
    """An element of Z[zeta_m]."""

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords=()):
        self.m = m
        self.coords = _reduce(coords, m)

    @classmethod
    def from_int(cls, m: int, value: int) -> CycInt:
        return cls(m, [value])

    @classmethod
    def root(cls, m: int, k: int) -> CycInt:
        """zeta_m^k."""
        c = [0] * m
        c[k % m] = 1
        return cls(m, c)

    @classmethod
    def from_exponent_counts(cls, m: int, counts) -> CycInt:
        """sum_k counts[k] * zeta_m^k."""
        return cls(m, counts)

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.m != self.m:
                raise ValueError(f"conductor mismatch: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.from_int(self.m, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.m, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.m, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = np.convolve(np.array(self.coords, dtype=object), np.array(other.coords, dtype=object))
        return CycInt(self.m, list(prod))

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        """Complex conjugation, zeta -> zeta^-1."""
        c = [0] * self.m
        for k, a in enumerate(self.coords):
            c[(-k) % self.m] += a
        return CycInt(self.m, c)

    def norm_sq(self) -> CycInt:
        """|z|^2 as an element of the same ring."""
        return self * self.conj()

    def lift(self, m: int) -> CycInt:
        """Embed into Z[zeta_m] for a multiple m of the conductor."""
        if m % self.m:
            raise ValueError(f"{m} is not a multiple of {self.m}")
        step = m // self.m
        c = [0] * m
        for k, a in enumerate(self.coords):
            c[k * step] += a
        return CycInt(m, c)

    def rational_value(self) -> int | None:
        """The integer value if this element lies in Z, else None."""
        if all(a == 0 for a in self.coords[1:]):
            return self.coords[0] if self.coords else 0
        return None

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        return complex(sum(a * z**k for k, a in enumerate(self.coords)))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self.rational_value() == int(other)
        if isinstance(other, CycInt):
            if other.m == self.m:
                return self.coords == other.coords
            common = self.m * other.m // gcd(self.m, other.m)
            return self.lift(common).coords == other.lift(common).coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, self.coords))

    def __repr__(self) -> str:
        return f"CycInt({self.m}, {list(self.coords)})"

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.coords):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*z^{k}")
        return " + ".join(terms) or "0"
