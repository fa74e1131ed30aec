"""Multiplicative characters of finite fields and the solutions they produce.

Characters are extended to 0 by ``alpha(0) = 0`` (also for the trivial
character).  Character values and modified Jacobi sums are exact elements of
``Z[zeta_m]``; the unit ``c`` and the assembled real functions are floats.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cyclotomic import CycInt
from .finite_field import FieldTable, make_field
from .group_ring import FinAbelianGroup, GroupFunction, hopf_verify
from .matrix_core import DEFAULT_FLOAT_TOL, FLOAT, NotASolutionError, SolutionReport

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultChar:
    """alpha(g^j) = zeta_{q-1}^(exponent_step * j) for the field generator g."""

    field: FieldTable
    exponent_step: int

    def __post_init__(self):
        object.__setattr__(self, "exponent_step", self.exponent_step % (self.field.q - 1))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        return (self.q - 1) // math.gcd(self.exponent_step, self.q - 1)

    @property
    def is_trivial(self) -> bool:
        return self.exponent_step == 0

    def conj(self) -> MultChar:
        return MultChar(self.field, -self.exponent_step)

    def __mul__(self, other: MultChar) -> MultChar:
        if other.field != self.field:
            raise ValueError("characters of different fields")
        return MultChar(self.field, self.exponent_step + other.exponent_step)

    def __pow__(self, k: int) -> MultChar:
        return MultChar(self.field, self.exponent_step * k)

    @cached_property
    def exponents(self) -> np.ndarray:
        """k with alpha(x) = zeta_{q-1}^k for each encoded x; -1 marks x = 0."""
        logs = self.field.log_table
        out = (self.exponent_step * logs) % (self.q - 1)
        out[0] = -1
        out.setflags(write=False)
        return out

    @cached_property
    def values(self) -> np.ndarray:
        """Complex values over all encoded elements, alpha(0) = 0."""
        k = self.exponents
        vals = np.exp(2j * np.pi * k / (self.q - 1))
        vals[0] = 0
        return vals

    def cyc(self, x: int, m: int | None = None) -> CycInt:
        """alpha(x) exactly in Z[zeta_m]; m defaults to the order."""
        m = self.order if m is None else m
        if m % self.order:
            raise ValueError(f"Z[zeta_{m}] does not contain the values of an order-{self.order} character")
        if x == 0:
            return CycInt.from_int(m, 0)
        step = (self.q - 1) // m
        return CycInt.root(m, int(self.exponents[x]) // step)

    def __call__(self, x: int) -> complex:
        return complex(self.values[x])


def char_of_order(F: FieldTable, d: int) -> MultChar:
    """The canonical character of order d, alpha(g) = zeta_d."""
    if d < 1 or (F.q - 1) % d:
        raise ValueError(f"order {d} does not divide q-1 = {F.q - 1}")
    return MultChar(F, (F.q - 1) // d)


def all_characters(F: FieldTable) -> list[MultChar]:
    return [MultChar(F, e) for e in range(F.q - 1)]


def character_inner_product(alpha: MultChar, beta: MultChar) -> complex:
    """Normalized hermitian product on F_q^x: (1/(q-1)) sum conj(alpha) beta."""
    return complex(np.sum(np.conj(alpha.values[1:]) * beta.values[1:]) / (alpha.q - 1))


def jacobi_mod(alpha: MultChar, beta: MultChar) -> CycInt:
    """J'(alpha, beta) = sum over t != 0, 1 of alpha(t) beta(1 - t), exactly."""
    if alpha.field != beta.field:
        raise ValueError("characters of different fields")
    F = alpha.field
    q = F.q
    m = math.lcm(alpha.order, beta.order)
    t = np.arange(2, q)
    one_minus_t = F.sub_arrays(1, t)
    k = (alpha.exponents[t] + beta.exponents[one_minus_t]) % (q - 1)
    step = (q - 1) // m
    counts = np.bincount(k // step, minlength=m)
    return CycInt.from_exponent_counts(m, [int(c) for c in counts])


# -- real solutions on (F_q, +) ---------------------------------------------------


def additive_group(F: FieldTable) -> FinAbelianGroup:
    """(F_q, +) as (Z/p)^k; group indices coincide with the field encoding."""
    return FinAbelianGroup([F.p] * F.k)


@dataclass(frozen=True, eq=False)
class PhiFunction:
    """Real function on F_q built from a character ansatz."""

    field: FieldTable
    values: np.ndarray = field(repr=False)
    construction: str
    c: complex
    order: int
    jacobi: CycInt
    metadata: dict = field(default_factory=dict)

    def as_group_function(self) -> GroupFunction:
        return GroupFunction(additive_group(self.field), self.values, FLOAT)

    def distinct_values(self, decimals: int = 9) -> set[float]:
        """Distinct values on F_q^x after rounding."""
        return set(np.round(self.values[1:], decimals).tolist())


def _assemble(F: FieldTable, chi: MultChar, c: complex) -> np.ndarray:
    """2 Re(c chi), i.e. c chi + conj(c) conj(chi), with the value at 0 forced to 0."""
    vals = 2.0 * np.real(c * chi.values)
    vals[0] = 0.0
    return vals


def quartic_solution(q: int) -> PhiFunction:
    """phi = alpha^2 for alpha of order 4: the quadratic character, theta = 0."""
    if q % 4 != 1:
        raise ValueError(f"need q = 1 mod 4, got q={q}")
    F = make_field(q)
    alpha = char_of_order(F, 4)
    sq = alpha**2
    vals = np.real(sq.values).round()
    J = jacobi_mod(sq, sq)
    return PhiFunction(F, vals, "quartic", 1.0, 4, J)


def octic_solution(q: int) -> PhiFunction:
    """phi = c alpha^2 + conj(c) conj(alpha^2), alpha of order 8, theta = 0.

    c is chosen on the unit circle with Re(c^2 (1 + J'(alpha^2, alpha^2))) = 0.
    """
    if q % 8 != 1:
        raise ValueError(f"need q = 1 mod 8, got q={q}")
    F = make_field(q)
    alpha = char_of_order(F, 8)
    sq = alpha**2
    J = jacobi_mod(sq, sq)
    psi = cmath.phase(1 + complex(J))
    c = cmath.exp(0.5j * (math.pi / 2 - psi))
    return PhiFunction(F, _assemble(F, sq, c), "octic", c, 8, J)


@dataclass(frozen=True)
class CubicResult:
    phi: PhiFunction
    theta: float
    report: SolutionReport
    branch: str


def cubic_solution(q: int, tol: float = DEFAULT_FLOAT_TOL) -> CubicResult:
    """phi = c alpha + conj(c) conj(alpha) for alpha of order 3.

    Writing 1 + J'(alpha, alpha) = rho e^{i psi}, both c = e^{-i psi/3} and
    c = e^{+i psi/3} are tried; the first one that passes the group-ring check
    is kept and its branch recorded.
    """
    if q % 3 != 1:
        raise ValueError(f"need q = 1 mod 3, got q={q}")
    F = make_field(q)
    alpha = char_of_order(F, 3)
    J = jacobi_mod(alpha, alpha)
    psi = cmath.phase(1 + complex(J))
    tried = []
    for branch, sign in (("minus", -1), ("plus", 1)):
        c = cmath.exp(sign * 1j * psi / 3)
        vals = _assemble(F, alpha, c)
        phi = PhiFunction(F, vals, "cubic", c, 3, J, {"branch": branch})
        rep = hopf_verify(phi.as_group_function(), tol)
        tried.append((branch, rep.max_residual))
        if rep.is_solution:
            log.info("cubic q=%d: branch c=exp(%si psi/3) verified", q, "-" if sign < 0 else "+")
            return CubicResult(phi, rep.theta, rep, branch)
    raise NotASolutionError(f"cubic construction for q={q} failed on both branches: {tried}")
