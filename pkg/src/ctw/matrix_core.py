"""Solution matrices of the basic system and their verification.

A solution is a symmetric ``n x n`` matrix ``S`` with zero diagonal such that

    S J = 0    and    S⊙S + S^2 = theta * S + D

for a scalar ``theta`` and a diagonal ``D``.  Matrices carry an explicit
arithmetic tag: ``"rational"`` (exact, stored as an integer numerator matrix
over one common denominator) or ``"float"``.  Mixing the two is an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

N_CAP = 20000
DEFAULT_FLOAT_TOL = 1e-9

_EXACT_FLOAT_BOUND = 2**53
_INT64_BOUND = 2**62


class MalformedMatrixError(ValueError):
    """The matrix is not square, not symmetric, or has a nonzero diagonal."""


class ArithmeticModeError(TypeError):
    """Rational and float data were mixed."""


class NotASolutionError(ValueError):
    """An operation required a verified solution and did not get one."""


class UnsupportedCombinationError(ValueError):
    pass


class UndefinedInputError(ValueError):
    pass


# -- exact integer helpers ----------------------------------------------------


def _absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def _fit_int(a: np.ndarray, bound: int = _INT64_BOUND) -> np.ndarray:
    """int64 when every entry is safely small, else an object array of ints."""
    if a.dtype != object and np.issubdtype(a.dtype, np.integer):
        return a.astype(np.int64, copy=False)
    if _absmax(a) < bound:
        return a.astype(np.int64)
    return a.astype(object)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of integer matrices.

    Uses float64 BLAS when every partial sum is an integer below 2**53 (where
    float arithmetic is exact) and falls back to Python integers otherwise.
    """
    inner = a.shape[1] if a.ndim == 2 else 1
    bound = _absmax(a) * _absmax(b) * max(inner, 1)
    if bound < _EXACT_FLOAT_BOUND:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return a.astype(object) @ b.astype(object)


def _gcd_all(a: np.ndarray, start: int = 0) -> int:
    if a.size == 0:
        return start
    if a.dtype != object:
        return math.gcd(int(np.gcd.reduce(np.abs(a).ravel())), start)
    g = start
    for x in a.ravel():
        g = math.gcd(g, int(x))
        if g == 1:
            break
    return g


def to_fraction(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ArithmeticModeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


# -- the matrix type ----------------------------------------------------------


class SymSolutionMatrix:
    """Symmetric zero-diagonal matrix, exact rational or float.

    Rational matrices are stored as ``num / den`` with an integer array
    ``num`` and a positive integer ``den`` in lowest terms.
    """

    __slots__ = ("num", "den", "arithmetic")

    def __init__(self, num, den: int = 1, arithmetic: str = RATIONAL, *, validate: bool = True):
        if arithmetic not in MODES:
            raise ValueError(f"unknown arithmetic mode {arithmetic!r}")
        num = np.asarray(num)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise MalformedMatrixError(f"expected a square matrix, got shape {num.shape}")
        if num.shape[0] < 1:
            raise MalformedMatrixError("matrix must have n >= 1")
        if num.shape[0] > N_CAP:
            raise ValueError(f"n={num.shape[0]} exceeds the verification cap {N_CAP}")
        if arithmetic == RATIONAL:
            if num.dtype.kind == "f":
                raise ArithmeticModeError("float entries in a rational matrix")
            if num.dtype == bool:
                num = num.astype(np.int64)
            den = int(den)
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            num = _fit_int(num)
            if den < 0:
                num, den = -num, -den
            g = _gcd_all(num, den)
            if g > 1:
                num = num // g
                den //= g
        else:
            if num.dtype == object:
                raise ArithmeticModeError("object entries in a float matrix")
            num = num.astype(np.float64)
            den = 1
        num.setflags(write=False)
        self.num = num
        self.den = den
        self.arithmetic = arithmetic
        if validate:
            self._validate()

    def _validate(self) -> None:
        a = self.num
        if self.arithmetic == RATIONAL:
            if np.any(np.diagonal(a) != 0):
                i = int(np.flatnonzero(np.diagonal(a) != 0)[0])
                raise MalformedMatrixError(f"nonzero diagonal entry at ({i}, {i})")
            bad = np.argwhere(a != a.T)
        else:
            if not np.all(np.isfinite(a)):
                raise MalformedMatrixError("non-finite entry")
            if np.any(np.diagonal(a) != 0.0):
                i = int(np.flatnonzero(np.diagonal(a) != 0.0)[0])
                raise MalformedMatrixError(f"nonzero diagonal entry at ({i}, {i})")
            bad = np.argwhere(a != a.T)
        if len(bad):
            i, j = (int(x) for x in bad[0])
            raise MalformedMatrixError(f"asymmetric entries at ({i}, {j})")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rationals(cls, rows) -> SymSolutionMatrix:
        fr = [[to_fraction(x) for x in row] for row in rows]
        den = 1
        for row in fr:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = np.array([[x.numerator * (den // x.denominator) for x in row] for row in fr], dtype=object)
        return cls(num, den, RATIONAL)

    @classmethod
    def from_floats(cls, rows) -> SymSolutionMatrix:
        return cls(np.asarray(rows, dtype=np.float64), 1, FLOAT)

    @classmethod
    def zeros(cls, n: int, arithmetic: str = RATIONAL) -> SymSolutionMatrix:
        dtype = np.int64 if arithmetic == RATIONAL else np.float64
        return cls(np.zeros((n, n), dtype=dtype), 1, arithmetic)

    # -- accessors ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.num.shape[0]

    @property
    def is_rational(self) -> bool:
        return self.arithmetic == RATIONAL

    def __getitem__(self, ij):
        x = self.num[ij]
        if self.is_rational:
            return Fraction(int(x), self.den)
        return float(x)

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def fractions(self) -> np.ndarray:
        if not self.is_rational:
            raise ArithmeticModeError("float matrix has no exact entries")
        out = np.empty(self.num.shape, dtype=object)
        for idx, x in np.ndenumerate(self.num):
            out[idx] = Fraction(int(x), self.den)
        return out

    def to_float(self) -> np.ndarray:
        if self.is_rational:
            if self.num.dtype == object:
                return np.array([[int(x) / self.den for x in row] for row in self.num], dtype=np.float64)
            return self.num.astype(np.float64) / self.den
        return np.array(self.num)

    def as_float(self) -> SymSolutionMatrix:
        return SymSolutionMatrix(self.to_float(), 1, FLOAT, validate=False)

    def norm_sq(self):
        """Squared Frobenius norm, exact in rational mode."""
        if self.is_rational:
            total = int(np.sum(self.num.astype(object) ** 2)) if self.num.size else 0
            return Fraction(total, self.den**2)
        return float(np.sum(self.num**2))

    def values(self) -> set:
        """Distinct off-diagonal entries."""
        n = self.n
        iu = np.triu_indices(n, 1)
        if self.is_rational:
            return {Fraction(int(x), self.den) for x in self.num[iu]}
        return set(float(x) for x in self.num[iu])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymSolutionMatrix):
            return NotImplemented
        return (
            self.arithmetic == other.arithmetic
            and self.den == other.den
            and self.num.shape == other.num.shape
            and bool(np.all(self.num == other.num))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SymSolutionMatrix(n={self.n}, arithmetic={self.arithmetic!r}, den={self.den})"


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class SolutionReport:
    """Outcome of checking the basic equations.

    ``theta`` is None when the input is not a solution and 0 for the zero
    solution.  ``hat_theta_sq`` is exact in rational mode; ``hat_theta`` is its
    float square root.
    """

    is_solution: bool
    theta: Any
    D: tuple = field(repr=False)
    trace_D: Any
    hat_theta: float
    hat_theta_sq: Any
    max_residual: Any
    arithmetic: str
    reason: str = ""
    witness: tuple | None = None

    @property
    def theta_float(self) -> float | None:
        return None if self.theta is None else float(self.theta)


def _report(ok, theta, D, trace_D, max_res, mode, reason="", witness=None) -> SolutionReport:
    zero = Fraction(0) if mode == RATIONAL else 0.0
    if ok and theta is not None and trace_D > 0:
        hsq = theta * theta / trace_D
    else:
        hsq = zero
    return SolutionReport(
        is_solution=ok,
        theta=theta if ok else None,
        D=tuple(D),
        trace_D=trace_D,
        hat_theta=math.sqrt(float(hsq)),
        hat_theta_sq=hsq,
        max_residual=max_res,
        arithmetic=mode,
        reason=reason,
        witness=witness,
    )


def verify_basic(S: SymSolutionMatrix, tol: float | None = None) -> SolutionReport:
    """Check the four basic equations for ``S``.

    Exact mode takes no tolerance.  Float mode accepts violations up to
    ``tol * (1 + ||S||^2)`` (default tol 1e-9) and fits theta by least
    squares over the off-diagonal entries.
    """
    if S.is_rational:
        if tol not in (None, 0):
            raise ValueError("exact verification takes no tolerance")
        return _verify_exact(S)
    return _verify_float(S, DEFAULT_FLOAT_TOL if tol is None else tol)


def _verify_exact(S: SymSolutionMatrix) -> SolutionReport:
    M = S.num
    L = S.den
    n = S.n
    rows = _fit_int(M).sum(axis=1) if _absmax(M) * n < _INT64_BOUND else M.astype(object).sum(axis=1)
    sq = int_matmul(M, M)
    D = [Fraction(int(sq[i, i]), L * L) for i in range(n)]
    trace_D = sum(D, Fraction(0))
    bad_rows = np.flatnonzero(rows != 0)
    if len(bad_rows):
        i = int(bad_rows[0])
        worst = max(abs(int(x)) for x in rows)
        return _report(False, None, D, trace_D, Fraction(worst, L), RATIONAL, f"row {i} does not sum to 0", (i,))

    if S.is_zero():
        return _report(True, Fraction(0), D, trace_D, Fraction(0), RATIONAL)

    if M.dtype == object or sq.dtype == object:
        P = M.astype(object) * M.astype(object) + sq.astype(object)
    else:
        # int_matmul took the float path, so every |M_ij|^2 is below 2**53
        P = M * M + sq
    i0, j0 = (int(x) for x in np.argwhere(np.triu(M != 0, 1))[0])
    theta = Fraction(int(P[i0, j0]), L * int(M[i0, j0]))
    a, b = theta.numerator, theta.denominator
    bound = b * _absmax(P) + abs(a) * L * _absmax(M)
    if bound < _INT64_BOUND and P.dtype != object and M.dtype != object:
        R = b * P - (a * L) * M
    else:
        R = b * P.astype(object) - (a * L) * M.astype(object)
    np.fill_diagonal(R, 0)
    bad = np.argwhere(R != 0)
    if len(bad):
        i, j = (int(x) for x in bad[0])
        worst = Fraction(_absmax(R), b * L * L)
        return _report(
            False, None, D, trace_D, worst, RATIONAL,
            f"theta={theta} from ({i0}, {j0}) is inconsistent at ({i}, {j})", (i, j),
        )
    return _report(True, theta, D, trace_D, Fraction(0), RATIONAL)


def _verify_float(S: SymSolutionMatrix, tol: float) -> SolutionReport:
    A = S.num
    n = S.n
    sq = A @ A
    D = [float(sq[i, i]) for i in range(n)]
    norm_sq = float(np.sum(A * A))
    trace_D = float(np.trace(sq))
    thresh = tol * (1.0 + norm_sq)
    rows = np.abs(A.sum(axis=1))
    row_res = float(rows.max())
    if row_res > thresh:
        i = int(np.argmax(rows))
        return _report(False, None, D, trace_D, row_res, FLOAT, f"row {i} does not sum to 0", (i,))
    if norm_sq == 0.0:
        return _report(True, 0.0, D, trace_D, row_res, FLOAT)
    P = A * A + sq
    off = ~np.eye(n, dtype=bool)
    theta = float(np.sum(P[off] * A[off]) / np.sum(A[off] * A[off]))
    R = np.abs(P - theta * A)
    R[~off] = 0.0
    max_res = max(float(R.max()), row_res)
    if max_res > thresh:
        i, j = (int(x) for x in np.unravel_index(np.argmax(R), R.shape))
        return _report(
            False, None, D, trace_D, max_res, FLOAT,
            f"no consistent theta: residual {max_res:.3e} at ({i}, {j})", (i, j),
        )
    return _report(True, theta, D, trace_D, max_res, FLOAT)


# -- scale-invariant size -------------------------------------------------------


def hat_theta_sq(theta, S: SymSolutionMatrix):
    """``theta^2 / ||S||^2``; exact for rational input."""
    norm_sq = S.norm_sq()
    if norm_sq == 0:
        raise UndefinedInputError("hat theta is undefined for S = 0")
    if S.is_rational:
        theta = to_fraction(theta)
    return theta * theta / norm_sq


def hat_theta(theta, S: SymSolutionMatrix) -> float:
    return math.sqrt(float(hat_theta_sq(theta, S)))


# -- combinators ----------------------------------------------------------------


def _require_solution(S: SymSolutionMatrix, theta=None) -> SolutionReport:
    rep = verify_basic(S)
    if not rep.is_solution:
        raise NotASolutionError(rep.reason)
    if theta is not None and not S.is_zero():
        if S.is_rational and to_fraction(theta) != rep.theta:
            raise NotASolutionError(f"theta={theta} does not match verified theta={rep.theta}")
        if not S.is_rational and not math.isclose(float(theta), rep.theta, rel_tol=1e-7, abs_tol=1e-7):
            raise NotASolutionError(f"theta={theta} does not match verified theta={rep.theta}")
    return rep


def _scalar(S: SymSolutionMatrix, t):
    if S.is_rational:
        return to_fraction(t)
    if isinstance(t, Fraction):
        raise ArithmeticModeError("exact scalar applied to a float matrix")
    return float(t)


def scale(S: SymSolutionMatrix, theta, t):
    """Return ``(t S, t theta)``; solutions stay solutions."""
    t = _scalar(S, t)
    theta = _scalar(S, theta)
    if S.is_rational:
        return SymSolutionMatrix(S.num.astype(object) * t.numerator, S.den * t.denominator, RATIONAL), t * theta
    return SymSolutionMatrix(S.num * t, 1, FLOAT), t * theta


def _block_diag(blocks: list[SymSolutionMatrix]) -> SymSolutionMatrix:
    modes = {b.arithmetic for b in blocks}
    if len(modes) != 1:
        raise ArithmeticModeError("cannot combine rational and float matrices")
    mode = modes.pop()
    n = sum(b.n for b in blocks)
    if mode == FLOAT:
        out = np.zeros((n, n))
        k = 0
        for b in blocks:
            out[k : k + b.n, k : k + b.n] = b.num
            k += b.n
        return SymSolutionMatrix(out, 1, FLOAT)
    den = math.lcm(*(b.den for b in blocks))
    out = np.zeros((n, n), dtype=object)
    out[...] = 0
    k = 0
    for b in blocks:
        out[k : k + b.n, k : k + b.n] = b.num.astype(object) * (den // b.den)
        k += b.n
    return SymSolutionMatrix(out, den, RATIONAL)


def inflate(S: SymSolutionMatrix, m: int) -> SymSolutionMatrix:
    """Pad a solution with zeros to size ``m > n``; theta is unchanged."""
    if m <= S.n:
        raise ValueError(f"inflation target m={m} must exceed n={S.n}")
    _require_solution(S)
    return _block_diag([S, SymSolutionMatrix.zeros(m - S.n, S.arithmetic)])


def block_combine(S1: SymSolutionMatrix, theta1, S2: SymSolutionMatrix, theta2):
    """Block-diagonal combination of two solutions.

    With both thetas nonzero each block is normalized to theta 1; with both
    zero the blocks are stacked as they are.  Mixed cases are not supported.
    """
    if S1.arithmetic != S2.arithmetic:
        raise ArithmeticModeError("cannot combine rational and float matrices")
    _require_solution(S1, theta1)
    _require_solution(S2, theta2)
    t1 = _scalar(S1, theta1)
    t2 = _scalar(S2, theta2)
    if t1 != 0 and t2 != 0:
        A, _ = scale(S1, t1, 1 / t1)
        B, _ = scale(S2, t2, 1 / t2)
        one = Fraction(1) if S1.is_rational else 1.0
        return _block_diag([A, B]), one
    if t1 == 0 and t2 == 0:
        return _block_diag([S1, S2]), t1
    raise UnsupportedCombinationError("block combination needs both thetas zero or both nonzero")


def combined_hat_theta(h1: float, h2: float) -> float:
    """Scale-invariant size of a block combination of two theta != 0 solutions."""
    return h1 * h2 / math.sqrt(h1 * h1 + h2 * h2)
