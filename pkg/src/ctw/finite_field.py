"""Finite fields GF(p^k) backed by dense exp/log tables.

Elements are encoded as integers ``0 <= a < q``: the coefficient vector
``(c_0, ..., c_{k-1})`` of ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` is packed
as ``sum(c_i * p**i)``.  For prime fields this is just the residue mod p.

The model is deterministic: for ``k > 1`` the modulus is the
lexicographically smallest monic primitive polynomial (coefficients compared
``c_0`` first) and the generator is the class of ``x``; for ``k == 1`` the
generator is the smallest primitive root mod p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

MAX_ORDER = 2**20


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next((d for d in range(2, int(q**0.5) + 1) if q % d == 0), q)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return factor_prime_power(q) is not None


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise ValueError(f"{p} is not prime")


def _powers_of_x(p: int, k: int, low: tuple[int, ...]) -> list[int] | None:
    """Successive powers of x modulo ``x^k + low(x)``; None unless x has order p^k - 1."""
    q = p**k
    top = p ** (k - 1)
    if p == 2:
        mask = sum(c << i for i, c in enumerate(low))
    neg_low = [(-c) % p for c in low]
    powers = [1]
    a = 1
    for _ in range(q - 2):
        if p == 2:
            a <<= 1
            if a & q:
                a ^= q | mask
        else:
            c_top = a // top
            a = (a % top) * p
            if c_top:
                digits = [(a // p**i) % p for i in range(k)]
                a = sum(((d + c_top * n) % p) * p**i for i, (d, n) in enumerate(zip(digits, neg_low)))
        if a == 1:
            return None
        powers.append(a)
    # x^(q-1) must close the cycle; x is invertible because low[0] != 0
    return powers


@dataclass(frozen=True, eq=False)
class FieldTable:
    """GF(q) with a fixed generator and dense exp/log tables."""

    p: int
    k: int
    modulus: tuple[int, ...]  # monic, coefficients low degree first, length k + 1
    generator: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        return self.q

    def __str__(self) -> str:
        return f"GF({self.p}^{self.k}) mod {format_poly(self.modulus)}"

    # -- scalar operations on encoded integers --------------------------------

    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def from_digits(self, digits) -> int:
        return sum((int(d) % self.p) * self.p**i for i, d in enumerate(digits))

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return int(self.exp_table[(-self.log_table[a]) % (self.q - 1)])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ValueError("discrete log of 0 is undefined")
        return int(self.log_table[a])

    def exp(self, j: int) -> int:
        return int(self.exp_table[j % (self.q - 1)])

    # -- vectorized operations -------------------------------------------------

    def add_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.k):
            w = self.p**i
            out += ((a // w + b // w) % self.p) * w
        return out

    def neg_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros_like(a)
        for i in range(self.k):
            w = self.p**i
            out += ((-(a // w)) % self.p) * w
        return out

    def sub_arrays(self, a, b) -> np.ndarray:
        return self.add_arrays(a, self.neg_array(b))

    def mul_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_table[a]
        lb = self.log_table[b]
        out = self.exp_table[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    @cached_property
    def squares(self) -> np.ndarray:
        """Boolean mask over encoded elements: True at nonzero squares."""
        mask = np.zeros(self.q, dtype=bool)
        if self.p == 2:
            mask[1:] = True
        else:
            mask[self.exp_table[::2]] = True
        return mask

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    def element(self, a: int) -> FieldElement:
        return FieldElement(self, a % self.q if self.k == 1 else a)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.q)]

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTable) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))


def format_poly(coeffs) -> str:
    terms = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) or "0"


_FIELDS: dict[int, FieldTable] = {}


def make_field(q: int) -> FieldTable:
    """Build (or fetch the cached) deterministic model of GF(q)."""
    if q in _FIELDS:
        return _FIELDS[q]
    pk = factor_prime_power(q)
    if pk is None:
        raise ValueError(f"q={q} is not a prime power")
    if q > MAX_ORDER:
        raise ValueError(f"q={q} exceeds the table cap {MAX_ORDER}")
    p, k = pk
    if k == 1:
        g = smallest_primitive_root(p)
        modulus = (0, 1)
        exp_list = [pow(g, j, p) for j in range(p - 1)]
    else:
        for low in itertools.product(range(p), repeat=k):
            if low[0] == 0:
                continue
            exp_list = _powers_of_x(p, k, low)
            if exp_list is not None:
                break
        modulus = tuple(low) + (1,)
        g = p  # the encoding of x
    exp_table = np.array(exp_list, dtype=np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(q - 1, dtype=np.int64)
    exp_table.setflags(write=False)
    log_table.setflags(write=False)
    F = FieldTable(p, k, modulus, g, exp_table, log_table)
    _FIELDS[q] = F
    return F


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldTable with operator support."""

    field: FieldTable
    value: int

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if self.value == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in a field")
            return FieldElement(self.field, 1 if e == 0 else 0)
        return FieldElement(self.field, self.field.exp(self.field.dlog(self.value) * e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def dlog(self) -> int:
        return self.field.dlog(self.value)

    @property
    def coefficients(self) -> list[int]:
        return self.field.digits(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other
        return isinstance(other, FieldElement) and self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return f"FieldElement({format_poly(self.coefficients)} in GF({self.field.q}))"
