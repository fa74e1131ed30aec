"""Named constructions and the per-dimension catalog of verified solutions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import graphs as gr
from .characters import PhiFunction, cubic_solution, octic_solution, quartic_solution
from .curvature import sphere_product_tensor, tensor_to_solution
from .finite_field import is_prime_power
from .group_ring import composite_solution, hopf_verify, phi_to_matrix
from .matrix_core import (
    NotASolutionError,
    SymSolutionMatrix,
    hat_theta_sq,
    inflate,
    verify_basic,
)

FAMILIES = (
    "disjoint-complete",
    "kneser2",
    "rook",
    "paley",
    "gq-symplectic",
    "pds",
    "composite",
    "cubic",
    "quartic",
    "octic",
    "sphere-product",
)

FAMILY_PARAMS = {
    "disjoint-complete": ("m", "l"),
    "kneser2": ("m",),
    "rook": ("m",),
    "paley": ("q",),
    "gq-symplectic": ("q",),
    "pds": ("q", "l"),
    "composite": ("l", "m", "variant"),
    "cubic": ("q",),
    "quartic": ("q",),
    "octic": ("q",),
    "sphere-product": ("k", "l", "rho"),
}


@dataclass(frozen=True, eq=False)
class Construction:
    family: str
    params: dict
    S: SymSolutionMatrix
    theta: object
    graph: gr.Graph | None = None
    srg: gr.SrgParams | None = None
    metadata: dict = field(default_factory=dict)


def _graph_family(G: gr.Graph) -> tuple[SymSolutionMatrix, Fraction, gr.SrgParams]:
    params = gr.srg_params_of(G)
    if not params:
        raise NotASolutionError(f"{G.name} is not strongly regular: {params.reason}")
    S, theta = gr.srg_to_solution(G)
    return S, theta, params


def _phi_metadata(phi: PhiFunction) -> dict:
    meta = {
        "construction": phi.construction,
        "character_order": phi.order,
        "c": [phi.c.real, phi.c.imag],
        "jacobi": {"conductor": phi.jacobi.m, "coords": list(phi.jacobi.coords)},
        "field": str(phi.field),
    }
    meta.update(phi.metadata)
    return meta


def construct(family: str, **params) -> Construction:
    """Build and verify one named solution; raises on invalid parameters."""
    if family not in FAMILY_PARAMS:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    need = [p for p in FAMILY_PARAMS[family] if p not in params and not (family == "sphere-product" and p == "rho")]
    if need:
        raise ValueError(f"family {family} needs parameters: {', '.join(need)}")
    G = srg = None
    meta: dict = {}
    if family == "disjoint-complete":
        G = gr.disjoint_complete(params["m"], params["l"])
    elif family == "kneser2":
        G = gr.kneser2(params["m"])
    elif family == "rook":
        G = gr.rook(params["m"])
    elif family == "paley":
        G = gr.paley_graph(params["q"])
    elif family == "gq-symplectic":
        G = gr.gq_symplectic(params["q"])
    elif family == "pds":
        G = gr.pds_subgroups(params["q"], params["l"])
    if G is not None:
        S, theta, srg = _graph_family(G)
    elif family == "composite":
        phi, theta = composite_solution(params["l"], params["m"], params["variant"])
        S = phi_to_matrix(phi)
        meta = {"group": list(phi.group.cyclic_orders)}
    elif family in ("quartic", "octic"):
        phi = (quartic_solution if family == "quartic" else octic_solution)(params["q"])
        rep = hopf_verify(phi.as_group_function())
        if not rep.is_solution:
            raise NotASolutionError(f"{family} q={params['q']}: {rep.reason}")
        S, theta = phi_to_matrix(phi.as_group_function()), rep.theta
        meta = _phi_metadata(phi)
    elif family == "cubic":
        res = cubic_solution(params["q"])
        S, theta = phi_to_matrix(res.phi.as_group_function()), res.theta
        meta = _phi_metadata(res.phi)
    else:
        rho = params.get("rho", 1)
        R = sphere_product_tensor(params["k"], params["l"], rho)
        S, theta = tensor_to_solution(R)
    rep = verify_basic(S)
    if not rep.is_solution:
        raise NotASolutionError(f"{family} {params}: {rep.reason}")
    if S.is_rational and not S.is_zero() and rep.theta != theta:
        raise NotASolutionError(f"{family} {params}: theta {theta} != verified {rep.theta}")
    return Construction(family, dict(params), S, theta, G, srg or None, meta)


# -- catalog ------------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogRow:
    family: str
    params: tuple
    n: int
    srg: gr.SrgParams | None
    theta: object
    hat_theta: float
    verified: bool
    note: str = ""

    def sort_key(self):
        return (self.n, self.family, self.params)

    def to_dict(self) -> dict:
        exact = isinstance(self.theta, (int, Fraction))
        return {
            "family": self.family,
            "params": list(self.params),
            "n": self.n,
            "srg": list(self.srg) if self.srg else None,
            "theta": f"{Fraction(self.theta).numerator}/{Fraction(self.theta).denominator}" if exact else self.theta,
            "hat_theta": self.hat_theta,
            "verified": self.verified,
            "note": self.note,
        }


def _row_from(family: str, params: tuple, S: SymSolutionMatrix, theta, srg=None, note="") -> CatalogRow:
    rep = verify_basic(S)
    ok = rep.is_solution and not S.is_zero()
    if S.is_rational:
        th = rep.theta if ok else theta
        hat = math.sqrt(hat_theta_sq(th, S)) if ok else 0.0
    else:
        th = round(float(rep.theta if ok else theta), 12) + 0.0
        hat = abs(float(rep.theta)) / math.sqrt(float(rep.trace_D)) if ok else 0.0
    return CatalogRow(family, params, S.n, srg, th, round(hat, 12), bool(ok), note)


def _try(rows: list, family: str, params: tuple, **kw) -> None:
    try:
        c = construct(family, **kw)
    except (ValueError, NotASolutionError):
        return
    rows.append(_row_from(family, params, c.S, c.theta, c.srg))


def _prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(lo, hi + 1) if is_prime_power(q)]


def catalog_rows(max_n: int) -> list[CatalogRow]:
    """All family rows with n <= max_n, plus one nonzero-theta row in every dimension 4..max_n."""
    if max_n < 4:
        raise ValueError("max_n must be >= 4")
    rows: list[CatalogRow] = []
    for m in range(2, max_n // 2 + 1):
        for l in range(2, max_n // m + 1):
            _try(rows, "disjoint-complete", (m, l), m=m, l=l)
    for m in range(4, max_n + 1):
        if math.comb(m, 2) <= max_n:
            _try(rows, "kneser2", (m,), m=m)
    for m in range(2, math.isqrt(max_n) + 1):
        _try(rows, "rook", (m,), m=m)
    for q in _prime_powers(4, max_n):
        if q % 4 == 1:
            _try(rows, "paley", (q,), q=q)
            _try(rows, "quartic", (q,), q=q)
        if q % 8 == 1:
            _try(rows, "octic", (q,), q=q)
        if q % 3 == 1:
            _try(rows, "cubic", (q,), q=q)
    for q in _prime_powers(2, max_n):
        if (q + 1) * (q * q + 1) <= max_n:
            _try(rows, "gq-symplectic", (q,), q=q)
        if q * q <= max_n:
            for l in range(1, q + 1):
                _try(rows, "pds", (q, l), q=q, l=l)
    for l in range(2, max_n // 2 + 1):
        for m in range(2, max_n // l + 1):
            for v in (1, 2, 3):
                _try(rows, "composite", (l, m, v), l=l, m=m, variant=v)
    for k in range(2, max_n - 1):
        for l in range(k, max_n - k + 1):
            _try(rows, "sphere-product", (k, l), k=k, l=l)

    # the existence argument: disjoint complete graphs cover composite n,
    # and diag(S, 0) inflation of an (n-1)-dimensional one covers prime n
    covered = {r.n for r in rows if r.family in ("disjoint-complete", "composite") and r.verified and r.hat_theta != 0}
    for n in range(4, max_n + 1):
        if n in covered:
            continue
        l = (n - 1) // 2
        base = construct("disjoint-complete", m=2, l=l)
        S = inflate(base.S, n)
        rows.append(_row_from("inflate", ("disjoint-complete", 2, l, n), S, base.theta, note="diag(S, 0)"))
    rows.append(
        CatalogRow(
            "fi24",
            tuple(gr.FI24_PARAMS),
            gr.FI24_PARAMS.n,
            gr.FI24_PARAMS,
            Fraction(gr.FI24_PARAMS.theta),
            round(gr.fi24_hat_theta(), 12),
            False,
            "parameters only",
        )
    )
    return sorted(rows, key=CatalogRow.sort_key)


def _fmt_theta(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return f"{x:.9g}"


def format_catalog(rows: list[CatalogRow]) -> str:
    header = f"{'n':>6}  {'family':<18} {'params':<26} {'srg':<28} {'theta':>12} {'hat_theta':>14}  verified"
    lines = [header, "-" * len(header)]
    for r in rows:
        params = ",".join(str(p) for p in r.params)
        srg = "(" + ",".join(str(x) for x in r.srg) + ")" if r.srg else "-"
        lines.append(
            f"{r.n:>6}  {r.family:<18} {params:<26} {srg:<28} {_fmt_theta(r.theta):>12} "
            f"{r.hat_theta:>14.9f}  {'yes' if r.verified else 'no'}{'  ' + r.note if r.note else ''}"
        )
    return "\n".join(lines) + "\n"


def dimension_coverage(rows: list[CatalogRow], max_n: int) -> dict[int, bool]:
    good = {r.n for r in rows if r.verified and r.hat_theta != 0}
    return {n: n in good for n in range(4, max_n + 1)}

