import cmath
import math

import numpy as np
import pytest

from ctw.characters import (
    MultChar,
    additive_group,
    all_characters,
    char_of_order,
    character_inner_product,
    cubic_solution,
    jacobi_mod,
    octic_solution,
    quartic_solution,
)
from ctw.cyclotomic import CycInt
from ctw.finite_field import make_field
from ctw.group_ring import hopf_verify, phi_to_matrix
from ctw.matrix_core import NotASolutionError, verify_basic

from oracles import NaiveGF, brute_jacobi


@pytest.mark.parametrize("q", [5, 7, 8, 9, 13, 16, 25, 27])
def test_jacobi_matches_brute_force(q):
    F = make_field(q)
    naive = NaiveGF(F.p, F.modulus)
    powers = naive.powers(naive.decode(F.generator))
    for a in range(q - 1):
        for b in range(0, q - 1, max(1, (q - 1) // 6)):
            J = jacobi_mod(MultChar(F, a), MultChar(F, b))
            assert abs(complex(J) - brute_jacobi(q, powers, naive.sub, a, b)) < 1e-9


def test_character_basics():
    F = make_field(13)
    alpha = char_of_order(F, 3)
    assert alpha.order == 3 and not alpha.is_trivial
    assert alpha(0) == 0
    assert abs(alpha(F.generator) - cmath.exp(2j * math.pi / 3)) < 1e-12
    assert (alpha * alpha.conj()).is_trivial
    assert (alpha**3).is_trivial
    assert alpha.cyc(F.generator) == CycInt.root(3, 1)
    with pytest.raises(ValueError):
        char_of_order(F, 5)


@pytest.mark.parametrize("q", [7, 8, 9])
def test_characters_orthonormal(q):
    chars = all_characters(make_field(q))
    G = np.array([[character_inner_product(a, b) for b in chars] for a in chars])
    assert np.allclose(G, np.eye(q - 1))


def test_quartic():
    for q in (5, 13, 17, 29):
        phi = quartic_solution(q)
        assert set(phi.values[1:]) == {-1.0, 1.0}
        rep = hopf_verify(phi.as_group_function())
        assert rep.is_solution and abs(rep.theta) < 1e-9
    with pytest.raises(ValueError):
        quartic_solution(7)


def test_octic_73():
    phi = octic_solution(73)
    assert phi.jacobi in (CycInt(4, [3, 8]), CycInt(4, [3, -8]))
    rep = hopf_verify(phi.as_group_function())
    assert rep.is_solution and abs(rep.theta) < 1e-9 and rep.max_residual < 1e-9
    assert len(phi.distinct_values()) == 4
    assert abs(abs(phi.c) - 1) < 1e-12


@pytest.mark.parametrize("q", [9, 17, 41, 49])
def test_octic_other_fields(q):
    phi = octic_solution(q)
    assert hopf_verify(phi.as_group_function()).is_solution


@pytest.mark.parametrize("q", [4, 7, 13, 16, 19, 25, 31, 37, 43, 49, 64])
def test_cubic(q):
    res = cubic_solution(q)
    assert res.report.is_solution and res.report.max_residual < 1e-9
    assert res.branch == "minus"
    phi = res.phi.as_group_function()
    hat = abs(res.theta) / (math.sqrt(q) * math.sqrt(phi.norm_sq()))
    lo = (math.sqrt(q) - 1) / math.sqrt(2 * q * (q - 1))
    hi = (math.sqrt(q) + 1) / math.sqrt(2 * q * (q - 1))
    assert lo - 1e-9 <= hat <= hi + 1e-9
    # the matrix picture agrees
    mrep = verify_basic(phi_to_matrix(phi))
    assert mrep.is_solution and abs(mrep.theta - res.theta) < 1e-8


def test_cubic_rejects_bad_q():
    with pytest.raises(ValueError):
        cubic_solution(5)


def test_cubic_failure_is_reported(monkeypatch):
    import ctw.characters as ch

    class Fail:
        is_solution = False
        max_residual = 1.0

    monkeypatch.setattr(ch, "hopf_verify", lambda phi, tol: Fail())
    with pytest.raises(NotASolutionError):
        ch.cubic_solution(7)


def test_additive_group_matches_encoding():
    F = make_field(9)
    G = additive_group(F)
    for a in range(9):
        for b in range(9):
            assert G.diff_table[a, b] == F.sub(b, a)
