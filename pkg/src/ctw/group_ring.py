"""Real functions on finite abelian groups under convolution.

A function ``phi`` on ``G`` gives the matrix ``S[a, b] = phi(b - a)``; ``S``
solves the basic system exactly when ``phi`` solves

    phi = phi^sigma,  phi(0) = 0,  sum(phi) = 0,
    phi^2 + phi * phi = theta phi + ||phi||^2 delta_0

(additive notation throughout).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .graphs import NotSrg, SrgParams
from .matrix_core import (
    DEFAULT_FLOAT_TOL,
    FLOAT,
    RATIONAL,
    ArithmeticModeError,
    SolutionReport,
    SymSolutionMatrix,
    _report,
    to_fraction,
)


class GroupMismatchError(ValueError):
    pass


class FinAbelianGroup:
    """Direct product of cyclic groups, elements indexed in C order.

    The element with components ``(a_0, ..., a_{k-1})`` has index
    ``np.ravel_multi_index(a, cyclic_orders)``, so the first component is the
    most significant digit.
    """

    def __init__(self, cyclic_orders):
        orders = tuple(int(x) for x in cyclic_orders)
        if not orders or any(x < 1 for x in orders):
            raise ValueError("cyclic orders must be positive")
        self.cyclic_orders = orders

    @property
    def n(self) -> int:
        return math.prod(self.cyclic_orders)

    @cached_property
    def components(self) -> np.ndarray:
        return np.array(np.unravel_index(np.arange(self.n), self.cyclic_orders)).T

    def index(self, components) -> int:
        return int(np.ravel_multi_index(tuple(int(c) % o for c, o in zip(components, self.cyclic_orders)), self.cyclic_orders))

    @cached_property
    def neg_table(self) -> np.ndarray:
        c = (-self.components) % np.array(self.cyclic_orders)
        return np.ravel_multi_index(tuple(c.T), self.cyclic_orders)

    @cached_property
    def diff_table(self) -> np.ndarray:
        """``diff[a, b]`` is the index of ``b - a``."""
        c = self.components
        d = (c[None, :, :] - c[:, None, :]) % np.array(self.cyclic_orders)
        return np.ravel_multi_index(tuple(np.moveaxis(d, -1, 0)), self.cyclic_orders)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbelianGroup) and self.cyclic_orders == other.cyclic_orders

    def __hash__(self) -> int:
        return hash(self.cyclic_orders)

    def __repr__(self) -> str:
        return f"FinAbelianGroup({list(self.cyclic_orders)})"


class GroupFunction:
    """Values of a function on a group, exact (Fractions) or float."""

    __slots__ = ("group", "values", "arithmetic")

    def __init__(self, group: FinAbelianGroup, values, arithmetic: str | None = None):
        vals = list(values) if not isinstance(values, np.ndarray) else values
        if arithmetic is None:
            is_float = isinstance(vals, np.ndarray) and vals.dtype.kind in "fc"
            is_float = is_float or any(isinstance(v, float) for v in vals)
            arithmetic = FLOAT if is_float else RATIONAL
        if arithmetic == RATIONAL:
            arr = np.empty(len(vals), dtype=object)
            arr[:] = [to_fraction(v) for v in vals]
        else:
            if isinstance(vals, np.ndarray) and vals.dtype == object and any(isinstance(v, Fraction) for v in vals):
                raise ArithmeticModeError("exact values given to a float function")
            arr = np.asarray(vals, dtype=np.float64)
        if arr.shape != (group.n,):
            raise ValueError(f"expected {group.n} values, got shape {arr.shape}")
        self.group = group
        self.values = arr
        self.arithmetic = arithmetic

    @classmethod
    def zeros(cls, group: FinAbelianGroup, arithmetic: str = RATIONAL) -> GroupFunction:
        return cls(group, [0] * group.n if arithmetic == RATIONAL else np.zeros(group.n), arithmetic)

    @classmethod
    def delta(cls, group: FinAbelianGroup, index: int = 0) -> GroupFunction:
        vals = [0] * group.n
        vals[index] = 1
        return cls(group, vals, RATIONAL)

    @classmethod
    def indicator(cls, group: FinAbelianGroup, indices) -> GroupFunction:
        vals = [0] * group.n
        for i in indices:
            vals[i] = 1
        return cls(group, vals, RATIONAL)

    @property
    def n(self) -> int:
        return self.group.n

    def _zero(self):
        return Fraction(0) if self.arithmetic == RATIONAL else 0.0

    def sigma(self) -> GroupFunction:
        """g -> phi(-g)."""
        return GroupFunction(self.group, self.values[self.group.neg_table], self.arithmetic)

    def augmentation(self):
        return self.values[0]

    def total(self):
        return sum(self.values, self._zero())

    def norm_sq(self):
        return sum((v * v for v in self.values), self._zero())

    def _combine(self, other, op) -> GroupFunction:
        if isinstance(other, GroupFunction):
            if other.group != self.group:
                raise GroupMismatchError("functions live on different groups")
            if other.arithmetic != self.arithmetic:
                raise ArithmeticModeError("cannot mix rational and float functions")
            return GroupFunction(self.group, op(self.values, other.values), self.arithmetic)
        scalar = to_fraction(other) if self.arithmetic == RATIONAL else float(other)
        return GroupFunction(self.group, op(self.values, scalar), self.arithmetic)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        """Pointwise product (or scaling by a number)."""
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return GroupFunction(self.group, -self.values, self.arithmetic)

    def as_float(self) -> GroupFunction:
        return GroupFunction(self.group, self.values.astype(np.float64), FLOAT)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupFunction)
            and other.group == self.group
            and other.arithmetic == self.arithmetic
            and bool(np.all(self.values == other.values))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GroupFunction({self.group!r}, {list(self.values)})"


def _check_pair(phi: GroupFunction, psi: GroupFunction) -> None:
    if phi.group != psi.group:
        raise GroupMismatchError("functions live on different groups")
    if phi.arithmetic != psi.arithmetic:
        raise ArithmeticModeError("cannot mix rational and float functions")


def convolve(phi: GroupFunction, psi: GroupFunction) -> GroupFunction:
    """(phi * psi)(g) = sum_h phi(h) psi(g - h), by direct summation."""
    _check_pair(phi, psi)
    diff = phi.group.diff_table  # diff[h, g] = g - h
    terms = phi.values[:, None] * psi.values[diff]
    return GroupFunction(phi.group, terms.sum(axis=0), phi.arithmetic)


def hopf_verify(phi: GroupFunction, tol: float | None = None) -> SolutionReport:
    """Check the four group-ring equations; failures are reported, never raised.

    Exact mode needs no tolerance.  In float mode every check is compared
    against ``tol * (1 + n ||phi||^2)``, matching the matrix picture.
    """
    G = phi.group
    n = G.n
    exact = phi.arithmetic == RATIONAL
    if exact and tol not in (None, 0):
        raise ValueError("exact verification takes no tolerance")
    tol = DEFAULT_FLOAT_TOL if tol is None else tol
    v = phi.values
    norm_sq = phi.norm_sq()
    conv = convolve(phi, phi).values
    center = conv[0]
    D = [center] * n
    trace_D = n * center
    mode = phi.arithmetic
    thresh = 0 if exact else tol * (1.0 + n * float(norm_sq))

    def fail(res, reason, witness):
        return _report(False, None, D, trace_D, res, mode, reason, witness)

    asym = np.abs(v - v[G.neg_table])
    if (asym.max() if n else 0) > thresh:
        g = int(np.argmax(asym))
        return fail(asym.max(), f"phi({g}) differs from phi(-{g})", (g,))
    if abs(v[0]) > thresh:
        return fail(abs(v[0]), "phi(0) is not 0", (0,))
    total = phi.total()
    if abs(total) > thresh:
        return fail(abs(total), "phi does not sum to 0", ())

    lhs = v * v + conv
    center_res = abs(lhs[0] - norm_sq)
    if norm_sq == 0:
        theta = phi._zero()
    elif exact:
        g0 = int(np.flatnonzero(v != 0)[0])
        theta = lhs[g0] / v[g0]
    else:
        mask = np.arange(n) != 0
        theta = float(np.sum(lhs[mask] * v[mask]) / np.sum(v[mask] * v[mask]))
    res = np.abs(lhs - theta * v)
    res[0] = center_res
    worst = res.max()
    if worst > thresh:
        g = int(np.argmax(res))
        return fail(worst, f"no consistent theta: residual {float(worst):.3e} at element {g}", (g,))
    return _report(True, theta, D, trace_D, worst, mode)


def phi_to_matrix(phi: GroupFunction) -> SymSolutionMatrix:
    """``S[a, b] = phi(b - a)`` with rows and columns in group index order."""
    v = phi.values
    if phi.arithmetic == RATIONAL:
        if np.any(v != v[phi.group.neg_table]) or v[0] != 0:
            raise ValueError("phi must satisfy phi = phi^sigma and phi(0) = 0")
        den = math.lcm(*(x.denominator for x in v))
        num = np.array([x.numerator * (den // x.denominator) for x in v], dtype=object)
        return SymSolutionMatrix(num[phi.group.diff_table], den, RATIONAL)
    if np.any(v != v[phi.group.neg_table]) or v[0] != 0:
        raise ValueError("phi must satisfy phi = phi^sigma and phi(0) = 0")
    return SymSolutionMatrix(v[phi.group.diff_table], 1, FLOAT)


def symmetrize(phi: GroupFunction) -> GroupFunction:
    """(phi + phi^sigma) / 2 with the value at 0 cleared."""
    half = Fraction(1, 2) if phi.arithmetic == RATIONAL else 0.5
    out = (phi + phi.sigma()) * half
    out.values[0] = out._zero()
    return out


def srg_cayley_check(alpha: GroupFunction) -> SrgParams | NotSrg:
    """Is the 0/1 function alpha the indicator of a regular partial difference set?"""
    v = alpha.values
    if not all(x in (0, 1) for x in v):
        raise ValueError("alpha must be 0/1-valued")
    G = alpha.group
    n = G.n
    if np.any(v != v[G.neg_table]):
        g = int(np.flatnonzero(v != v[G.neg_table])[0])
        return NotSrg("support is not closed under negation", (0, g))
    if v[0] != 0:
        return NotSrg("support contains 0", (0, 0))
    ints = np.array([int(x) for x in v], dtype=np.int64)
    conv = ints[:, None] * ints[G.diff_table]
    conv = conv.sum(axis=0)
    r = int(conv[0])
    params = {}
    for label, mask in (("lambda", ints == 1), ("mu", (ints == 0) & (np.arange(n) != 0))):
        vals = conv[mask]
        if vals.size == 0:
            params[label] = 0
            continue
        if np.any(vals != vals[0]):
            idx = np.flatnonzero(mask)
            g = int(idx[int(np.flatnonzero(vals != vals[0])[0])])
            return NotSrg(f"{label} not constant: element {int(idx[0])} vs {g}", (0, g))
        params[label] = int(vals[0])
    return SrgParams(n, r, params["lambda"], params["mu"])


def srg_function_to_solution(alpha: GroupFunction) -> tuple[GroupFunction, Fraction]:
    """phi = alpha + r/(1-n) (1 - delta_0) for a regular partial difference set."""
    params = srg_cayley_check(alpha)
    if isinstance(params, NotSrg):
        raise ValueError(params.reason)
    n, r = params.n, params.r
    y = Fraction(r, 1 - n)
    vals = [Fraction(int(x)) + y for x in alpha.values]
    vals[0] = Fraction(0)
    return GroupFunction(alpha.group, vals, RATIONAL), Fraction(params.theta)


# -- the composite family -----------------------------------------------------------


@dataclass(frozen=True)
class CompositeRow:
    s: Fraction
    t: Fraction
    theta: Fraction
    hat_theta_sq: Fraction


def composite_row(l: int, m: int, variant: int) -> CompositeRow:
    """Coefficients (s, t), theta and the tabulated hat-theta^2 for one variant."""
    if l < 2 or m < 2:
        raise ValueError("need l, m >= 2")
    F = Fraction
    if variant == 1:
        s, t = F(1 - m, 2), F(1 - l, 2)
        theta = F(4 - (m - 1) * (l - 1), 2)
        hsq = F((4 - (m - 1) * (l - 1)) ** 2, m * l * (l - 1) * (m - 1) * (m + l + 2))
    elif variant == 2:
        s, t = F(l * (1 - m), l - 1), F(1)
        theta = F(1 - m * l)
        hsq = F((l - 1) * (m * l - 1), l * l * m * (m - 1))
    elif variant == 3:
        s, t = F(1), F(m * (1 - l), m - 1)
        theta = F(1 - m * l)
        hsq = F((m - 1) * (m * l - 1), m * m * l * (l - 1))
    else:
        raise ValueError(f"variant must be 1, 2 or 3, got {variant}")
    return CompositeRow(s, t, theta, hsq)


def composite_solution(l: int, m: int, variant: int, l_orders=None, m_orders=None):
    """phi = s chi_A + t chi_B + chi_C on L x M.

    ``L`` and ``M`` default to the cyclic groups of orders l and m; other
    abelian groups of those orders can be passed as lists of cyclic orders.
    The product group is ``FinAbelianGroup(l_orders + m_orders)``.
    """
    row = composite_row(l, m, variant)
    l_orders = list(l_orders) if l_orders is not None else [l]
    m_orders = list(m_orders) if m_orders is not None else [m]
    if math.prod(l_orders) != l or math.prod(m_orders) != m:
        raise ValueError("cyclic orders do not multiply to l and m")
    G = FinAbelianGroup(l_orders + m_orders)
    comp = G.components
    a_zero = np.all(comp[:, : len(l_orders)] == 0, axis=1)
    b_zero = np.all(comp[:, len(l_orders) :] == 0, axis=1)
    vals = []
    for az, bz in zip(a_zero, b_zero):
        if az and bz:
            vals.append(Fraction(0))
        elif bz:
            vals.append(row.s)  # A: (a, 0), a != 0
        elif az:
            vals.append(row.t)  # B: (0, b), b != 0
        else:
            vals.append(Fraction(1))  # C
    return GroupFunction(G, vals, RATIONAL), row.theta
