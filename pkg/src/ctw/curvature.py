"""Diagonal algebraic curvature tensors.

A diagonal tensor R on ``Λ²V`` has every ``e_i ∧ e_j`` as an eigenvector;
it is stored as the symmetric matrix ``r[i, j]`` of eigenvalues with zero
diagonal.  For such tensors ``R # T`` is again diagonal with eigenvalues

    (R # T)[i, j] = 1/2 * sum_k (r[i, k] t[j, k] + t[i, k] r[j, k]),

which :func:`jordan_sharp` computes and :func:`sharp_bruteforce` rederives
from the Lie bracket on so(n).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matrix_core import (
    RATIONAL,
    NotASolutionError,
    SymSolutionMatrix,
    to_fraction,
    verify_basic,
)

SHARP_BRUTEFORCE_MAX_N = 8


class DiagCurvature:
    """Eigenvalues ``r[i, j]`` of a diagonal curvature tensor."""

    __slots__ = ("r", "exact")

    def __init__(self, r, exact: bool | None = None):
        arr = np.array(r, dtype=object if exact else None)
        if exact is None:
            exact = arr.dtype == object or np.issubdtype(arr.dtype, np.integer)
        if exact:
            arr = np.vectorize(to_fraction, otypes=[object])(np.asarray(r, dtype=object))
        else:
            arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 2:
            raise ValueError(f"expected an n x n array with n >= 2, got {arr.shape}")
        if np.any(arr != arr.T):
            raise ValueError("eigenvalue array must be symmetric")
        if np.any(np.diagonal(arr) != 0):
            raise ValueError("diagonal entries are unused and must be 0")
        self.r = arr
        self.exact = bool(exact)

    @property
    def n(self) -> int:
        return self.r.shape[0]

    @classmethod
    def identity(cls, n: int) -> DiagCurvature:
        return cls(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64), exact=True)

    @classmethod
    def zero(cls, n: int) -> DiagCurvature:
        return cls(np.zeros((n, n), dtype=np.int64), exact=True)

    def to_float(self) -> np.ndarray:
        return self.r.astype(np.float64)

    def _zero(self):
        return Fraction(0) if self.exact else 0.0

    def __add__(self, other: DiagCurvature) -> DiagCurvature:
        return DiagCurvature(self.r + other.r, self.exact and other.exact)

    def __sub__(self, other: DiagCurvature) -> DiagCurvature:
        return DiagCurvature(self.r - other.r, self.exact and other.exact)

    def __mul__(self, t) -> DiagCurvature:
        """Scaling, or the operator square when given another tensor (eigenvalues multiply)."""
        if isinstance(t, DiagCurvature):
            return DiagCurvature(self.r * t.r, self.exact and t.exact)
        if self.exact:
            return DiagCurvature(self.r * to_fraction(t), True)
        return DiagCurvature(self.r * float(t), False)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, DiagCurvature) and other.n == self.n and bool(np.all(self.r == other.r))

    __hash__ = None  # type: ignore[assignment]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.to_float())))

    def __repr__(self) -> str:
        return f"DiagCurvature(n={self.n}, exact={self.exact})"


def _pair(R: DiagCurvature, T: DiagCurvature) -> bool:
    if R.n != T.n:
        raise ValueError(f"size mismatch: {R.n} vs {T.n}")
    return R.exact and T.exact


def jordan_sharp(R: DiagCurvature, T: DiagCurvature) -> DiagCurvature:
    """R # T via the Jordan product of the eigenvalue matrices."""
    exact = _pair(R, T)
    if exact:
        a, b = R.r, T.r
        half = Fraction(1, 2)
    else:
        a, b = R.to_float(), T.to_float()
        half = 0.5
    out = (a @ b + b @ a) * half
    np.fill_diagonal(out, 0)
    return DiagCurvature(out, exact)


def sharp(R: DiagCurvature) -> DiagCurvature:
    return jordan_sharp(R, R)


# -- first-principles oracle ---------------------------------------------------------


def so_basis(n: int) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Pairs i < j and the skew matrices X_ij = E_ij - E_ji = iota(e_i ∧ e_j)."""
    pairs = list(itertools.combinations(range(n), 2))
    X = np.zeros((len(pairs), n, n))
    for a, (i, j) in enumerate(pairs):
        X[a, i, j] = 1.0
        X[a, j, i] = -1.0
    return pairs, X


def ad_tensor(n: int) -> np.ndarray:
    """``ad[a, :, b]`` holds the coordinates of [X_a, X_b] in the basis X."""
    _, X = so_basis(n)
    N = len(X)
    # <A, B> = -tr(AB) and <X_a, X_a> = 2, so coordinates are -tr(Z X_c) / 2
    brackets = np.einsum("aij,bjk->abik", X, X) - np.einsum("bij,ajk->abik", X, X)
    coords = -np.einsum("abik,cki->acb", brackets, X) / 2.0
    assert coords.shape == (N, N, N)
    return coords


def sharp_bruteforce_matrix(R: DiagCurvature, T: DiagCurvature) -> np.ndarray:
    """Matrix of <(R # T)(e_a), e_b> over the basis e_i ∧ e_j, i < j.

    Each entry is ``-1/2 tr(R~ ad(X_a) T~ ad(X_b))`` with the operators on
    so(n) written in the basis X.  The e_i ∧ e_j are orthonormal in Λ²V.
    """
    _pair(R, T)
    n = R.n
    if n > SHARP_BRUTEFORCE_MAX_N:
        raise ValueError(f"brute-force sharp is limited to n <= {SHARP_BRUTEFORCE_MAX_N}")
    pairs, _ = so_basis(n)
    rv = np.array([float(R.r[i, j]) for i, j in pairs])
    tv = np.array([float(T.r[i, j]) for i, j in pairs])
    ad = ad_tensor(n)
    # tr(diag(r) ad_a diag(t) ad_b) = sum_{x,y} r_x ad_a[x,y] t_y ad_b[y,x]
    return -0.5 * np.einsum("x,axy,y,byx->ab", rv, ad, tv, ad)


def sharp_bruteforce(R: DiagCurvature, T: DiagCurvature) -> DiagCurvature:
    """R # T from the trace formula; returns the diagonal part as a tensor."""
    M = sharp_bruteforce_matrix(R, T)
    n = R.n
    out = np.zeros((n, n))
    for a, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        out[i, j] = out[j, i] = M[a, a]
    return DiagCurvature(out, exact=False)


# -- Ricci, Einstein ------------------------------------------------------------------


def ricci_diag(R: DiagCurvature) -> np.ndarray:
    """Ricci eigenvalues: row sums of r."""
    return R.r.sum(axis=1)


def scalar_curvature(R: DiagCurvature):
    return R.r.sum()


@dataclass(frozen=True)
class EinsteinDecomposition:
    """R = r0 * id + W with ``W`` the traceless part (R1 + R2)."""

    r0: object
    W: DiagCurvature
    is_einstein: bool
    norm_S: float  # ||W||_2 with W read as a full symmetric matrix
    norm_W: float  # ||W||_2 as an operator on Λ²V


def einstein_decompose(R: DiagCurvature, tol: float = 1e-12) -> EinsteinDecomposition:
    n = R.n
    s = scalar_curvature(R)
    if R.exact:
        r0 = Fraction(s) / (n * (n - 1))
    else:
        r0 = float(s) / (n * (n - 1))
    W = R.r - r0
    np.fill_diagonal(W, 0)
    Wt = DiagCurvature(W, R.exact)
    rows = W.sum(axis=1)
    if R.exact:
        einstein = all(x == 0 for x in rows)
    else:
        einstein = bool(np.all(np.abs(rows) <= tol * (1.0 + np.abs(R.to_float()).max())))
    Wf = Wt.to_float()
    full = math.sqrt(float(np.sum(Wf * Wf)))
    upper = math.sqrt(float(np.sum(np.triu(Wf, 1) ** 2)))
    return EinsteinDecomposition(r0, Wt, einstein, full, upper)


def is_einstein(R: DiagCurvature, tol: float = 1e-12) -> bool:
    return einstein_decompose(R, tol).is_einstein


# -- the fixed-point equation ------------------------------------------------------------


def fixed_point_residual(R: DiagCurvature, theta) -> DiagCurvature:
    """Eigenvalues of R^2 + R# - theta R."""
    theta = to_fraction(theta) if R.exact else float(theta)
    return R * R + sharp(R) - R * theta


def solution_to_tensor(S: SymSolutionMatrix, theta, branch: str = "round") -> DiagCurvature:
    """Curvature tensor ``r[i, j] = r + S[i, j]`` solving R^2 + R# = theta R.

    ``branch="round"`` takes r = theta / (n - 1), ``branch="flat"`` takes
    r = 0; both satisfy (n - 1) r^2 = theta r.
    """
    rep = verify_basic(S)
    if not rep.is_solution:
        raise NotASolutionError(rep.reason)
    n = S.n
    exact = S.arithmetic == RATIONAL
    if exact:
        theta = to_fraction(theta)
        if not S.is_zero() and theta != rep.theta:
            raise NotASolutionError(f"theta={theta} does not match verified theta={rep.theta}")
    else:
        theta = float(theta)
    if branch == "round":
        base = theta / (n - 1)
    elif branch == "flat":
        base = Fraction(0) if exact else 0.0
    else:
        raise ValueError(f"unknown branch {branch!r}")
    entries = S.fractions() if exact else S.to_float()
    r = entries + base
    np.fill_diagonal(r, 0)
    return DiagCurvature(r, exact)


def tensor_to_solution(R: DiagCurvature) -> tuple[SymSolutionMatrix, object]:
    """Traceless part of an Einstein tensor as a solution candidate, with theta = (n-1) r0."""
    dec = einstein_decompose(R)
    n = R.n
    if R.exact:
        S = SymSolutionMatrix.from_rationals(dec.W.r.tolist())
    else:
        S = SymSolutionMatrix.from_floats(dec.W.r)
    return S, (n - 1) * dec.r0


def sphere_product_tensor(k: int, l: int, rho=1) -> DiagCurvature:
    """Curvature of S^k(rho) x S^l(sigma) with (k-1)/rho^2 = (l-1)/sigma^2.

    Exact when ``rho`` is an int or Fraction.
    """
    if k < 2 or l < 2:
        raise ValueError("need k, l >= 2")
    exact = isinstance(rho, (int, Fraction))
    if exact:
        rho_sq = to_fraction(rho) ** 2
        a = 1 / rho_sq
        b = a * Fraction(k - 1, l - 1)  # 1/sigma^2
        zero = Fraction(0)
    else:
        if rho <= 0:
            raise ValueError("rho must be positive")
        a = 1.0 / rho**2
        b = a * (k - 1) / (l - 1)
        zero = 0.0
    if exact and rho <= 0:
        raise ValueError("rho must be positive")
    n = k + l
    r = np.empty((n, n), dtype=object if exact else np.float64)
    r[...] = zero
    r[:k, :k] = a
    r[k:, k:] = b
    np.fill_diagonal(r, zero)
    return DiagCurvature(r, exact)


def tensor_theta(R: DiagCurvature):
    """theta = s(R) / n for an Einstein tensor with the round branch."""
    s = scalar_curvature(R)
    return Fraction(s) / R.n if R.exact else float(s) / R.n
