import json
from fractions import Fraction

import numpy as np
import pytest

from ctw.cli import main
from ctw.curvature import DiagCurvature, sphere_product_tensor
from ctw.graphs import kneser2, paley_graph, rook, srg_to_solution
from ctw.io import (
    FormatError,
    parse_rational,
    rational_str,
    read_graph,
    read_solution,
    read_tensor,
    solution_to_dict,
    write_graph,
    write_solution,
    write_tensor,
)
from ctw.matrix_core import SymSolutionMatrix, verify_basic


def test_rational_strings():
    assert rational_str(3) == "3/1"
    assert rational_str(Fraction(-4, 6)) == "-2/3"
    assert parse_rational("-2/3") == Fraction(-2, 3)
    for bad in ("1/0", "x", 1.5, None, True):
        with pytest.raises(FormatError):
            parse_rational(bad)


def test_solution_roundtrip_rational(tmp_path):
    S, theta = srg_to_solution(kneser2(6))
    p = tmp_path / "s.json"
    write_solution(p, S, theta, {"family": "kneser2"})
    S2, theta2, meta = read_solution(p)
    assert S2 == S and theta2 == theta and meta == {"family": "kneser2"}
    assert verify_basic(S2).is_solution
    text = p.read_text()
    assert '"arithmetic":"rational"' in text and '"theta":"' in text


def test_solution_roundtrip_float(tmp_path):
    S, theta = srg_to_solution(rook(3))
    F = SymSolutionMatrix.from_floats(S.to_float())
    p = tmp_path / "f.json"
    write_solution(p, F, float(theta))
    F2, theta2, _ = read_solution(p)
    assert np.array_equal(F2.to_float(), F.to_float()) and theta2 == float(theta)


def test_graph_and_tensor_roundtrip(tmp_path):
    G = paley_graph(9)
    write_graph(tmp_path / "g.json", G)
    assert read_graph(tmp_path / "g.json") == G
    R = sphere_product_tensor(2, 3, Fraction(1, 2))
    write_tensor(tmp_path / "t.json", R)
    assert read_tensor(tmp_path / "t.json") == R
    Rf = DiagCurvature(np.array([[0, 0.5], [0.5, 0]]), exact=False)
    write_tensor(tmp_path / "tf.json", Rf)
    assert not read_tensor(tmp_path / "tf.json").exact


@pytest.mark.parametrize(
    "text",
    [
        "{",
        "[1, 2]",
        '{"n": 2, "arithmetic": "rational", "entries": [["0/1"]], "theta": "0/1"}',
        '{"n": 2, "arithmetic": "complex", "entries": [[0, 0], [0, 0]], "theta": 0}',
        '{"n": 2, "arithmetic": "float", "entries": [[0, "a"], [0, 0]], "theta": 0}',
        '{"n": 2, "entries": [[0, 0], [0, 0]], "theta": 0}',
        '{"n": 2, "arithmetic": "rational", "entries": [["0/1", "1/1"], ["0/1", "0/1"]], "theta": "0/1"}',
    ],
)
def test_malformed_solution_files(text):
    with pytest.raises(FormatError):
        read_solution(text)


def test_missing_file(tmp_path):
    with pytest.raises(FormatError):
        read_solution(tmp_path / "nope.json")


# -- CLI --------------------------------------------------------------------------------


def _construct(tmp_path, name, *args):
    out = tmp_path / f"{name}.json"
    assert main(["construct", *args, "--out", str(out)]) == 0
    return out


@pytest.mark.parametrize(
    "args,theta",
    [
        (["--family", "paley", "--q", "13"], Fraction(0)),
        (["--family", "composite", "--l", "2", "--m", "3", "--variant", "1"], Fraction(1)),
        (["--family", "rook", "--m", "4"], Fraction(1)),
    ],
)
def test_construct_examples(tmp_path, capsys, args, theta):
    out = _construct(tmp_path, "sol", *args)
    S, stored, meta = read_solution(out)
    rep = verify_basic(S)
    assert rep.is_solution and rep.theta == theta == stored
    assert meta["family"] == args[1]
    assert main(["verify", str(out)]) == 0
    assert "is_solution: True" in capsys.readouterr().out


def test_construct_float_family_metadata(tmp_path):
    out = _construct(tmp_path, "oct", "--family", "octic", "--q", "73")
    S, theta, meta = read_solution(out)
    assert S.arithmetic == "float" and abs(theta) < 1e-9
    assert meta["jacobi"]["coords"] in ([3, 8], [3, -8])
    assert main(["verify", str(out)]) == 0


def test_construct_with_graph(tmp_path):
    g = tmp_path / "g.json"
    _construct(tmp_path, "k", "--family", "kneser2", "--m", "5", "--graph-out", str(g))
    assert read_graph(g) == kneser2(5)
    assert main(["construct", "--family", "composite", "--l", "2", "--m", "2", "--variant", "1", "--graph-out", str(g)]) == 2


def test_verify_exit_codes(tmp_path):
    out = _construct(tmp_path, "r", "--family", "rook", "--m", "3")
    data = json.loads(out.read_text())
    data["entries"][0][1] = "5/1"
    data["entries"][1][0] = "5/1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["verify", str(bad)]) == 1
    trunc = tmp_path / "trunc.json"
    trunc.write_text(out.read_text()[:40])
    assert main(["verify", str(trunc)]) == 2
    # wrong stored theta is a semantic failure
    data = json.loads(out.read_text())
    data["theta"] = "7/1"
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps(data))
    assert main(["verify", str(wrong)]) == 1
    assert main(["verify", str(tmp_path / "missing.json")]) == 2


def test_input_errors():
    assert main(["construct", "--family", "paley", "--q", "12"]) == 2
    assert main(["construct", "--family", "nonsense"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["catalog", "--max-n", "3"]) == 2
    assert main(["search", "--q", "6"]) == 2
    assert main(["search", "--q", "13", "--mode", "chars", "--char-orders", "12"]) == 2
    assert main(["sharp-check", "--n", "12"]) == 2


def test_catalog_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    ja = tmp_path / "a.json"
    assert main(["catalog", "--max-n", "12", "--out", str(a), "--json", str(ja)]) == 0
    assert main(["catalog", "--max-n", "12", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = json.loads(ja.read_text())
    assert {r["n"] for r in rows if r["verified"]} >= set(range(4, 13))


def test_search_command(tmp_path):
    rep, sol = tmp_path / "rep.json", tmp_path / "sol.json"
    assert main(["search", "--q", "5", "--starts", "5", "--out", str(rep), "--solution-out", str(sol)]) == 0
    assert json.loads(rep.read_text())["message"] == "solution found"
    assert main(["verify", str(sol), "--tol", "1e-8"]) == 0


def test_sharp_check_command(capsys):
    assert main(["sharp-check", "--n", "5", "--trials", "10"]) == 0
    assert "id#id=(n-2)id: True" in capsys.readouterr().out


def test_tensor_command(tmp_path):
    src = _construct(tmp_path, "pet", "--family", "kneser2", "--m", "5")
    out = tmp_path / "t.json"
    assert main(["tensor", "--from", str(src), "--branch", "flat", "--out", str(out)]) == 0
    S, _ = srg_to_solution(kneser2(5))
    assert read_tensor(out) == DiagCurvature(S.fractions(), exact=True)
    data = json.loads(src.read_text())
    data["theta"] = "3/1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["tensor", "--from", str(bad)]) == 1


def test_round_trip_of_dict_is_stable():
    S, theta = srg_to_solution(rook(3))
    d = solution_to_dict(S, theta)
    S2, theta2, _ = read_solution(json.dumps(d))
    assert solution_to_dict(S2, theta2) == d
