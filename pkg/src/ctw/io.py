"""JSON formats for solutions, graphs and curvature tensors.

Rational scalars are written as ``"p/q"`` strings in lowest terms (``"3/1"``
for integers); float scalars are plain JSON numbers.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .curvature import DiagCurvature
from .graphs import Graph
from .matrix_core import FLOAT, MODES, RATIONAL, SymSolutionMatrix, to_fraction


class FormatError(ValueError):
    """A file that cannot be parsed into the expected structure."""


def rational_str(x) -> str:
    f = to_fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(f"rational scalars must be 'p/q' strings, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {s!r}") from exc


def _scalar_out(x, arithmetic: str):
    return rational_str(x) if arithmetic == RATIONAL else float(x)


def _scalar_in(x, arithmetic: str):
    if arithmetic == RATIONAL:
        return parse_rational(x)
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FormatError(f"float scalars must be JSON numbers, got {x!r}")
    return float(x)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=None, separators=(",", ":"), sort_keys=False)


def _load_text(source) -> dict:
    if isinstance(source, (str, Path)) and not str(source).lstrip().startswith("{"):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise FormatError(f"cannot read {source}: {exc}") from exc
    else:
        text = str(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top-level JSON value must be an object")
    return data


def _require(data: dict, *keys):
    missing = [k for k in keys if k not in data]
    if missing:
        raise FormatError(f"missing keys: {', '.join(missing)}")


def _square(rows, n: int):
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise FormatError(f"entries must be a full {n}x{n} list of lists")


# -- solutions ------------------------------------------------------------------------


def solution_to_dict(S: SymSolutionMatrix, theta, metadata: dict | None = None) -> dict:
    mode = S.arithmetic
    if mode == RATIONAL:
        den = S.den
        cache: dict[int, str] = {}

        def cell(x):
            x = int(x)
            if x not in cache:
                g = math.gcd(x, den)
                cache[x] = f"{x // g}/{den // g}"
            return cache[x]

        entries = [[cell(x) for x in row] for row in S.num.tolist()]
    else:
        entries = S.num.tolist()
    out = {"n": S.n, "arithmetic": mode, "entries": entries, "theta": _scalar_out(theta, mode)}
    if metadata:
        out["metadata"] = _jsonable(metadata)
    return out


def solution_from_dict(data: dict) -> tuple[SymSolutionMatrix, object, dict]:
    _require(data, "n", "arithmetic", "entries", "theta")
    n, mode = data["n"], data["arithmetic"]
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"bad n {n!r}")
    if mode not in MODES:
        raise FormatError(f"arithmetic must be one of {MODES}, got {mode!r}")
    rows = data["entries"]
    _square(rows, n)
    theta = _scalar_in(data["theta"], mode)
    try:
        if mode == RATIONAL:
            S = SymSolutionMatrix.from_rationals([[parse_rational(x) for x in row] for row in rows])
        else:
            S = SymSolutionMatrix.from_floats([[_scalar_in(x, FLOAT) for x in row] for row in rows])
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return S, theta, data.get("metadata", {})


def write_solution(path, S: SymSolutionMatrix, theta, metadata: dict | None = None) -> None:
    Path(path).write_text(dumps(solution_to_dict(S, theta, metadata)) + "\n")


def read_solution(source) -> tuple[SymSolutionMatrix, object, dict]:
    return solution_from_dict(_load_text(source))


# -- graphs ---------------------------------------------------------------------------


def graph_to_dict(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.edges()]}


def graph_from_dict(data: dict) -> Graph:
    _require(data, "n", "edges")
    n, edges = data["n"], data["edges"]
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"bad n {n!r}")
    if not isinstance(edges, list) or any(
        not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, int) and 0 <= v < n for v in e) or e[0] == e[1]
        for e in edges
    ):
        raise FormatError("edges must be pairs of distinct vertex indices in [0, n)")
    return Graph.from_edges(n, [tuple(e) for e in edges])


def write_graph(path, G: Graph) -> None:
    Path(path).write_text(dumps(graph_to_dict(G)) + "\n")


def read_graph(source) -> Graph:
    return graph_from_dict(_load_text(source))


# -- tensors --------------------------------------------------------------------------


def tensor_to_dict(R: DiagCurvature) -> dict:
    if R.exact:
        r = [[rational_str(x) for x in row] for row in R.r.tolist()]
    else:
        r = R.r.tolist()
    return {"n": R.n, "r": r}


def tensor_from_dict(data: dict) -> DiagCurvature:
    _require(data, "n", "r")
    n, rows = data["n"], data["r"]
    if not isinstance(n, int) or n < 2:
        raise FormatError(f"bad n {n!r}")
    _square(rows, n)
    exact = any(isinstance(x, str) for row in rows for x in row)
    try:
        if exact:
            return DiagCurvature([[parse_rational(x) for x in row] for row in rows], exact=True)
        return DiagCurvature([[_scalar_in(x, FLOAT) for x in row] for row in rows], exact=False)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_tensor(path, R: DiagCurvature) -> None:
    Path(path).write_text(dumps(tensor_to_dict(R)) + "\n")


def read_tensor(source) -> DiagCurvature:
    return tensor_from_dict(_load_text(source))
