"""Multi-start least-squares search for real solutions of the Hopf equations on (F_q, +).

The linear conditions (phi(0) = 0, phi(-g) = phi(g), sum phi = 0) are built
into an orthonormal basis ``B`` of the feasible subspace, so every iterate
satisfies them exactly up to rounding.  The unknowns are the coordinates
``u`` (phi = B u) and theta; the scale is pinned by an extra residual
``|u|^2 - 1`` and the result is renormalized to |phi| = 1 at the end.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .characters import MultChar, additive_group
from .finite_field import is_prime_power, make_field
from .group_ring import FinAbelianGroup, GroupFunction, hopf_verify, phi_to_matrix
from .matrix_core import FLOAT, verify_basic

log = logging.getLogger(__name__)

DIRECT = "direct"
CHARS = "character-basis"
_MODE_ALIASES = {"direct": DIRECT, "chars": CHARS, "character-basis": CHARS}


@dataclass(frozen=True)
class SearchConfig:
    q: int
    starts: int = 200
    seed: int = 0
    max_iters: int = 500
    residual_target: float = 1e-10
    mode: str = DIRECT
    char_orders: tuple[int, ...] | None = None  # character-basis mode only

    def __post_init__(self):
        if self.mode not in _MODE_ALIASES:
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "mode", _MODE_ALIASES[self.mode])
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if not self.residual_target > 0:
            raise ValueError("residual_target must be positive")
        if self.q < 4 or not is_prime_power(self.q):
            raise ValueError(f"q must be a prime power >= 4, got {self.q}")
        if self.char_orders is not None:
            object.__setattr__(self, "char_orders", tuple(sorted(set(self.char_orders))))


@dataclass(frozen=True, eq=False)
class SearchResult:
    q: int
    mode: str
    best_phi: GroupFunction
    best_theta: float
    residual: float
    succeeded: bool
    distinct_value_histogram: dict[float, int]
    starts_used: int
    hat_theta: float
    verified_residual: float | None = None
    dimension: int = 0
    metadata: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "q": self.q,
            "mode": self.mode,
            "succeeded": self.succeeded,
            "message": "solution found" if self.succeeded else "no solution found",
            "theta": self.best_theta,
            "hat_theta": self.hat_theta,
            "residual": self.residual,
            "verified_residual": self.verified_residual,
            "starts_used": self.starts_used,
            "dimension": self.dimension,
            "distinct_value_histogram": {repr(k): v for k, v in sorted(self.distinct_value_histogram.items())},
            "phi": [float(x) for x in self.best_phi.values],
        }


# -- feasible subspaces ---------------------------------------------------------------


def symmetric_basis(G: FinAbelianGroup) -> np.ndarray:
    """Orthonormal columns spanning symmetric zero-sum functions vanishing at 0."""
    n = G.n
    neg = G.neg_table
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    cols = []
    for g in range(1, n):
        if seen[g]:
            continue
        orbit = sorted({g, int(neg[g])})
        seen[orbit] = True
        v = np.zeros(n)
        v[orbit] = 1.0 / math.sqrt(len(orbit))
        cols.append(v)
    P = np.array(cols).T
    # remove the all-ones direction inside span(P)
    w = P.T @ np.ones(n)
    _, _, vt = np.linalg.svd(w[None, :])
    return P @ vt[1:].T


def character_basis(F, orders=None) -> np.ndarray:
    """Real basis of sum c_a a over even nontrivial characters with c_{conj a} = conj(c_a)."""
    q = F.q
    cols = []
    for e in range(1, (q - 1) // 2 + 1 if q % 2 else q - 1):
        chi = MultChar(F, e)
        if orders is not None and chi.order not in orders:
            continue
        if q % 2 and (e * ((q - 1) // 2)) % (q - 1):  # odd: chi(-1) = -1
            continue
        partner = (-e) % (q - 1)
        if q % 2 == 0 and partner < e:
            continue
        vals = chi.values
        if partner == e:
            cols.append(np.real(vals))
        else:
            cols.append(2 * np.real(vals))
            cols.append(-2 * np.imag(vals))
    if not cols:
        raise ValueError("no admissible characters for the requested orders")
    Q, Rm = np.linalg.qr(np.array(cols).T)
    keep = np.abs(np.diag(Rm)) > 1e-10
    return Q[:, keep]


# -- residual and Jacobian -------------------------------------------------------------


class _Problem:
    def __init__(self, G: FinAbelianGroup, B: np.ndarray):
        self.G = G
        self.B = B
        self.n = G.n
        self.conv_idx = G.diff_table.T  # conv_idx[g, h] = g - h
        self.mask = np.arange(self.n) != 0

    def phi(self, u: np.ndarray) -> np.ndarray:
        return self.B @ u

    def core(self, phi: np.ndarray, theta: float) -> np.ndarray:
        C = phi[self.conv_idx]
        return phi * phi + C @ phi - theta * phi

    def fun(self, x: np.ndarray) -> np.ndarray:
        u, theta = x[:-1], x[-1]
        phi = self.phi(u)
        res = self.core(phi, theta)[self.mask]
        return np.append(res, u @ u - 1.0)

    def jac(self, x: np.ndarray) -> np.ndarray:
        u, theta = x[:-1], x[-1]
        phi = self.phi(u)
        C = phi[self.conv_idx]
        dphi = 2 * np.diag(phi) + 2 * C - theta * np.eye(self.n)
        Ju = (dphi @ self.B)[self.mask]
        top = np.hstack([Ju, -phi[self.mask, None]])
        bottom = np.append(2 * u, 0.0)
        return np.vstack([top, bottom])

    def normalized(self, x: np.ndarray) -> tuple[np.ndarray, float, float]:
        phi = self.phi(x[:-1])
        nrm = float(np.linalg.norm(phi))
        if nrm == 0:
            return phi, 0.0, math.inf
        phi = phi / nrm
        # refit theta by least squares for the normalized phi
        core0 = phi * phi + phi[self.conv_idx] @ phi
        theta = float(core0[self.mask] @ phi[self.mask] / (phi[self.mask] @ phi[self.mask]))
        res = float(np.max(np.abs(self.core(phi, theta)[self.mask])))
        return phi, theta, res


def _histogram(phi: np.ndarray, decimals: int = 8) -> dict[float, int]:
    vals = np.round(phi[1:], decimals) + 0.0
    return dict(sorted(Counter(vals.tolist()).items()))


def _run(cfg: SearchConfig, G: FinAbelianGroup, B: np.ndarray) -> SearchResult:
    prob = _Problem(G, B)
    dim = B.shape[1]
    rng = np.random.default_rng(cfg.seed)
    best = None
    used = 0
    for start in range(cfg.starts):
        used = start + 1
        u0 = rng.uniform(-1.0, 1.0, size=dim)
        u0 /= np.linalg.norm(u0)
        phi0 = prob.phi(u0)
        core0 = phi0 * phi0 + phi0[prob.conv_idx] @ phi0
        theta0 = float(core0 @ phi0 / (phi0 @ phi0))
        x0 = np.append(u0, theta0)
        sol = least_squares(
            prob.fun, x0, jac=prob.jac, method="lm", max_nfev=cfg.max_iters * (dim + 2), xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
        phi, theta, res = prob.normalized(sol.x)
        log.debug("q=%d start=%d residual=%.3e theta=%.6f", cfg.q, start, res, theta)
        if best is None or res < best[2]:
            best = (phi, theta, res)
        if res < cfg.residual_target:
            break
    phi, theta, res = best
    phi = 0.5 * (phi + phi[G.neg_table])  # exact symmetry for the checks below
    phi[0] = 0.0
    gf = GroupFunction(G, phi, FLOAT)
    succeeded = res < cfg.residual_target
    verified = None
    if succeeded:
        check_tol = 10 * cfg.residual_target
        rep = hopf_verify(gf, check_tol)
        mrep = verify_basic(phi_to_matrix(gf), check_tol)
        verified = rep.max_residual
        if not (rep.is_solution and mrep.is_solution):
            log.warning("q=%d: candidate with residual %.3e failed re-verification", cfg.q, res)
            succeeded = False
        else:
            theta = float(rep.theta)
    hat = abs(theta) / math.sqrt(G.n)
    return SearchResult(
        q=cfg.q,
        mode=cfg.mode,
        best_phi=gf,
        best_theta=theta,
        residual=res,
        succeeded=succeeded,
        distinct_value_histogram=_histogram(phi),
        starts_used=used,
        hat_theta=hat,
        verified_residual=verified,
        dimension=dim,
    )


def search_hopf(cfg: SearchConfig) -> SearchResult:
    """Search in the full symmetric zero-sum subspace (or the character subspace in character-basis mode)."""
    if cfg.mode == CHARS:
        return search_character_basis(cfg)
    F = make_field(cfg.q)
    G = additive_group(F)
    return _run(cfg, G, symmetric_basis(G))


def search_character_basis(cfg: SearchConfig) -> SearchResult:
    if cfg.mode != CHARS:
        raise ValueError("search_character_basis needs mode='character-basis'")
    F = make_field(cfg.q)
    G = additive_group(F)
    return _run(cfg, G, character_basis(F, cfg.char_orders))
