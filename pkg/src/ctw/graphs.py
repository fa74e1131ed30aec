"""Strongly regular graph families and their two-valued solutions.

Vertex orderings are fixed per family so that outputs are byte-stable:

* ``disjoint_complete``: block after block.
* ``kneser2``: 2-subsets of ``{0, ..., m-1}`` in lexicographic order.
* ``rook``: grid cells ``(i, j)`` row-major, index ``i*m + j``.
* ``paley_graph``: field elements in their integer encoding (see
  :mod:`ctw.finite_field`).
* ``gq_symplectic``: normalized points of ``PG(3, q)`` (first nonzero
  coordinate 1) sorted lexicographically on encoded coordinates.
* ``pds_subgroups``: pairs ``(x, y)`` of encoded field elements row-major,
  index ``x*q + y``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np

from .finite_field import FieldTable, make_field
from .matrix_core import RATIONAL, SymSolutionMatrix, int_matmul


class NotStronglyRegularError(ValueError):
    pass


class DegenerateGraphError(ValueError):
    """Empty or complete graphs give no two-valued solution."""


class SrgParams(NamedTuple):
    n: int
    r: int
    lam: int
    mu: int

    @property
    def r_c(self) -> int:
        return self.n - self.r - 1

    @property
    def theta(self) -> int:
        return self.lam - self.mu + 1

    def satisfies_relation(self) -> bool:
        return self.mu * (self.n - self.r - 1) == self.r * (self.r - self.lam - 1)

    def complement(self) -> SrgParams:
        n, r, lam, mu = self
        return SrgParams(n, n - 1 - r, mu + n - 2 * (r + 1), lam + n - 2 * r)

    def hat_theta_sq(self) -> Fraction:
        """theta^2 (n-1) / (n r r^c) for the associated two-valued solution."""
        if self.r == 0 or self.r_c == 0:
            raise DegenerateGraphError("empty or complete graph")
        return Fraction(self.theta**2 * (self.n - 1), self.n * self.r * self.r_c)


@dataclass(frozen=True)
class NotSrg:
    """Refusal from :func:`srg_params_of`, with a witnessing vertex pair."""

    reason: str
    witness: tuple[int, int]

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True, eq=False)
class Graph:
    adjacency: np.ndarray
    name: str = ""

    def __post_init__(self):
        A = np.asarray(self.adjacency)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"adjacency must be square, got {A.shape}")
        if not np.all((A == 0) | (A == 1)):
            raise ValueError("adjacency entries must be 0 or 1")
        if np.any(np.diagonal(A)):
            raise ValueError("adjacency must have a zero diagonal")
        if np.any(A != A.T):
            raise ValueError("adjacency must be symmetric")
        A = A.astype(np.int64)
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(self.adjacency, 1)))]

    @classmethod
    def from_edges(cls, n: int, edges, name: str = "") -> Graph:
        A = np.zeros((n, n), dtype=np.int64)
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            A[i, j] = A[j, i] = 1
        return cls(A, name)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and np.array_equal(self.adjacency, other.adjacency)

    __hash__ = None  # type: ignore[assignment]


def srg_params_of(G: Graph) -> SrgParams | NotSrg:
    """Strongly regular parameters of G by checking every vertex pair.

    lambda (mu) is reported as 0 when G has no adjacent (non-adjacent) pair.
    """
    A = G.adjacency
    n = G.n
    deg = A.sum(axis=1)
    if n and np.any(deg != deg[0]):
        i = int(np.flatnonzero(deg != deg[0])[0])
        return NotSrg(f"vertex 0 has degree {deg[0]} but vertex {i} has degree {deg[i]}", (0, i))
    r = int(deg[0]) if n else 0
    common = int_matmul(A, A)
    off = ~np.eye(n, dtype=bool)
    result = {}
    for label, mask in (("lambda", (A == 1) & off), ("mu", (A == 0) & off)):
        vals = common[mask]
        if vals.size == 0:
            result[label] = 0
            continue
        if np.any(vals != vals[0]):
            pairs = np.argwhere(mask)
            first = tuple(int(x) for x in pairs[0])
            bad = tuple(int(x) for x in pairs[int(np.flatnonzero(vals != vals[0])[0])])
            return NotSrg(
                f"{label} not constant: pair {first} has {vals[0]} common neighbours, pair {bad} has {common[bad]}",
                bad,
            )
        result[label] = int(vals[0])
    return SrgParams(n, r, result["lambda"], result["mu"])


# -- families -------------------------------------------------------------------


def disjoint_complete(m: int, l: int) -> Graph:
    """m disjoint copies of the complete graph on l vertices: srg(ml, l-1, l-2, 0)."""
    if m < 1 or l < 2:
        raise ValueError("need m >= 1 and l >= 2")
    block = np.ones((l, l), dtype=np.int64) - np.eye(l, dtype=np.int64)
    return Graph(np.kron(np.eye(m, dtype=np.int64), block), f"disjoint_complete({m},{l})")


def kneser2(m: int) -> Graph:
    """K(m, 2): 2-subsets adjacent when disjoint."""
    if m < 4:
        raise ValueError("Kneser graph K(m,2) needs m >= 4")
    pairs = list(itertools.combinations(range(m), 2))
    P = np.array(pairs)
    a, b = P[:, 0], P[:, 1]
    meet = (a[:, None] == a[None, :]) | (a[:, None] == b[None, :]) | (b[:, None] == a[None, :]) | (b[:, None] == b[None, :])
    return Graph((~meet).astype(np.int64), f"kneser2({m})")


def _cayley(diff: np.ndarray, connection: np.ndarray, name: str) -> Graph:
    """Cayley graph from a table ``diff[a, b] = b - a`` and a connection mask."""
    A = connection[diff].astype(np.int64)
    np.fill_diagonal(A, 0)
    return Graph(A, name)


def rook(m: int) -> Graph:
    """m x m rook's graph as a Cayley graph on Z/m x Z/m."""
    if m < 2:
        raise ValueError("rook's graph needs m >= 2")
    idx = np.arange(m * m)
    i, j = idx // m, idx % m
    diff = ((i[None, :] - i[:, None]) % m) * m + (j[None, :] - j[:, None]) % m
    gi, gj = idx // m, idx % m
    connection = ((gi == 0) | (gj == 0)) & (idx != 0)
    return _cayley(diff, connection, f"rook({m})")


def paley_graph(q: int) -> Graph:
    """Cayley graph of (F_q, +) on the nonzero squares, q = 1 mod 4."""
    F = make_field(q)
    if q % 4 != 1:
        raise ValueError(f"Paley graph needs q = 1 mod 4, got q={q}")
    x = np.arange(q)
    diff = F.sub_arrays(x[None, :], x[:, None])
    return _cayley(diff, F.squares, f"paley({q})")


def _symplectic_form(F: FieldTable, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """x0 y1 - x1 y0 + x2 y3 - x3 y2 for broadcastable coordinate arrays."""
    mul, add, sub = F.mul_arrays, F.add_arrays, F.sub_arrays
    first = sub(mul(X[..., 0], Y[..., 1]), mul(X[..., 1], Y[..., 0]))
    second = sub(mul(X[..., 2], Y[..., 3]), mul(X[..., 3], Y[..., 2]))
    return add(first, second)


def projective_points(F: FieldTable, dim: int) -> np.ndarray:
    """Normalized representatives of the 1-spaces of F^dim, lexicographic."""
    pts = []
    for v in itertools.product(range(F.q), repeat=dim):
        nz = next((c for c in v if c), None)
        if nz == 1:
            pts.append(v)
    return np.array(pts, dtype=np.int64)


def gq_symplectic(q: int) -> Graph:
    """Collinearity graph of the symplectic quadrangle W(q), an srg with s = t = q."""
    F = make_field(q)
    pts = projective_points(F, 4)
    form = _symplectic_form(F, pts[:, None, :], pts[None, :, :])
    A = (form == 0).astype(np.int64)
    np.fill_diagonal(A, 0)
    return Graph(A, f"gq_symplectic({q})")


def line_slopes(q: int) -> list[int | None]:
    """Directions used by :func:`pds_subgroups`: 0, vertical (None), then 1..q-1."""
    return [0, None] + list(range(1, q))


def pds_subgroups(q: int, l: int) -> Graph:
    """Cayley graph on F_q + F_q whose connection set is l lines through 0.

    The first two directions are horizontal and vertical, so l = 2 gives the
    rook's graph on a q x q board.
    """
    if not 1 <= l <= q + 1:
        raise ValueError(f"need 1 <= l <= q+1, got l={l} for q={q}")
    F = make_field(q)
    x = np.arange(q)
    connection = np.zeros(q * q, dtype=bool)
    for slope in line_slopes(q)[:l]:
        if slope is None:
            connection[x] = True  # (0, y)
        else:
            connection[x * q + F.mul_arrays(x, slope)] = True
    connection[0] = False
    idx = np.arange(q * q)
    a, b = idx // q, idx % q
    da = F.sub_arrays(a[None, :], a[:, None])
    db = F.sub_arrays(b[None, :], b[:, None])
    return _cayley(da * q + db, connection, f"pds_subgroups({q},{l})")


def complement(G: Graph) -> Graph:
    n = G.n
    K = np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)
    return Graph(K - G.adjacency, f"complement({G.name})" if G.name else "")


def srg_to_solution(G: Graph) -> tuple[SymSolutionMatrix, Fraction]:
    """Two-valued solution ``S = A + r/(1-n) K`` with theta = lambda - mu + 1."""
    params = srg_params_of(G)
    if isinstance(params, NotSrg):
        raise NotStronglyRegularError(params.reason)
    n, r = params.n, params.r
    if r == 0 or r == n - 1:
        raise DegenerateGraphError("the adjacency matrix is 0 or K")
    K = np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)
    S = SymSolutionMatrix((n - 1) * G.adjacency - r * K, n - 1, RATIONAL)
    return S, Fraction(params.theta)


# -- closed forms attached to each family ----------------------------------------


def family_params(family: str, **kw) -> SrgParams:
    """Parameters predicted by the family formulas."""
    if family == "disjoint_complete":
        m, l = kw["m"], kw["l"]
        return SrgParams(m * l, l - 1, l - 2, 0)
    if family == "kneser2":
        m = kw["m"]
        return SrgParams(comb(m, 2), comb(m - 2, 2), comb(m - 4, 2), comb(m - 3, 2))
    if family == "rook":
        m = kw["m"]
        return SrgParams(m * m, 2 * (m - 1), m - 2, 2)
    if family == "paley":
        q = kw["q"]
        return SrgParams(q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4)
    if family == "gq":
        s, t = kw["s"], kw["t"]
        return SrgParams((s + 1) * (s * t + 1), s * (t + 1), s - 1, t + 1)
    if family == "pds":
        m, l = kw["q"], kw["l"]
        return SrgParams(m * m, l * (m - 1), l * l - 3 * l + m, l * l - l)
    raise ValueError(f"unknown family {family!r}")


def family_hat_theta_sq(family: str, **kw) -> Fraction:
    """Squared scale-invariant size from each family's own closed form."""
    if family == "disjoint_complete":
        m, l = kw["m"], kw["l"]
        return Fraction((l - 1) * (m * l - 1), l * l * m * (m - 1))
    if family == "kneser2":
        m = kw["m"]
        return Fraction((5 - m) ** 2 * (m + 1), m * (m - 1) * (m - 2) * (m - 3))
    if family == "rook":
        m = kw["m"]
        return Fraction((m - 3) ** 2 * (m + 1), 2 * m * m * (m - 1) ** 2)
    if family == "paley":
        return Fraction(0)
    if family == "gq":
        s, t = kw["s"], kw["t"]
        return Fraction((s - t - 1) ** 2 * (s * t + t + 1), s * s * (s + 1) * (t * s + 1) * t * (t + 1))
    if family == "pds":
        m, l = kw["q"], kw["l"]
        if not 1 <= l <= m:
            raise ValueError("closed form holds for 1 <= l <= q")
        return Fraction((m - 2 * l + 1) ** 2 * (m + 1), m * m * l * (m - 1) * (m - l + 1))
    raise ValueError(f"unknown family {family!r}")


FI24_PARAMS = SrgParams(306936, 31671, 3510, 3240)


def fi24_hat_theta() -> float:
    """Parameter-only size for the rank 3 graph of Fi24 (no matrix is built)."""
    return float(FI24_PARAMS.hat_theta_sq()) ** 0.5
