from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ctw.characters import cubic_solution
from ctw.curvature import (
    DiagCurvature,
    einstein_decompose,
    fixed_point_residual,
    is_einstein,
    jordan_sharp,
    ricci_diag,
    scalar_curvature,
    sharp,
    sharp_bruteforce,
    sharp_bruteforce_matrix,
    solution_to_tensor,
    sphere_product_tensor,
    tensor_theta,
    tensor_to_solution,
)
from ctw.graphs import disjoint_complete, kneser2, paley_graph, rook, srg_to_solution
from ctw.group_ring import composite_solution, phi_to_matrix
from ctw.matrix_core import NotASolutionError, SymSolutionMatrix, verify_basic

from oracles import jordan_formula

F = Fraction


def random_diag(rng, n):
    a = rng.normal(size=(n, n))
    a = a + a.T
    np.fill_diagonal(a, 0)
    return DiagCurvature(a, exact=False)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_identity_sharp(n):
    I = DiagCurvature.identity(n)
    assert sharp(I) == I * (n - 2)


def test_sharp_with_zero():
    rng = np.random.default_rng(0)
    R = random_diag(rng, 5)
    assert jordan_sharp(R, DiagCurvature.zero(5)).max_abs() == 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_jordan_matches_bruteforce_and_loops(n):
    rng = np.random.default_rng(n)
    for _ in range(25):
        R, T = random_diag(rng, n), random_diag(rng, n)
        J = jordan_sharp(R, T)
        assert np.max(np.abs(J.r - sharp_bruteforce(R, T).r)) < 1e-10
        assert np.allclose(J.r, jordan_formula(R.r.tolist(), T.r.tolist()))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_bruteforce_has_no_cross_terms(n):
    rng = np.random.default_rng(10 + n)
    R, T = random_diag(rng, n), random_diag(rng, n)
    M = sharp_bruteforce_matrix(R, T)
    assert np.max(np.abs(M - np.diag(np.diag(M)))) < 1e-12


def test_bruteforce_identity_at_four():
    I = DiagCurvature.identity(4)
    assert np.allclose(sharp_bruteforce(I, I).r, 2 * I.to_float())


def test_bruteforce_size_cap():
    R = DiagCurvature.identity(9)
    with pytest.raises(ValueError):
        sharp_bruteforce(R, R)


def test_size_mismatch():
    with pytest.raises(ValueError):
        jordan_sharp(DiagCurvature.identity(3), DiagCurvature.identity(4))


sym = st.integers(3, 6).flatmap(
    lambda n: st.tuples(*(arrays(np.float64, (n, n), elements=st.floats(-5, 5)) for _ in range(3)), st.floats(-3, 3))
)


def _diag(a):
    a = a + a.T
    np.fill_diagonal(a, 0)
    return DiagCurvature(a, exact=False)


@settings(max_examples=100, deadline=None)
@given(sym)
def test_sharp_symmetric_and_bilinear(data):
    a, b, c, t = data
    R, T, U = _diag(a), _diag(b), _diag(c)
    assert np.allclose(jordan_sharp(R, T).r, jordan_sharp(T, R).r)
    lhs = jordan_sharp(R + T * t, U).r
    rhs = jordan_sharp(R, U).r + t * jordan_sharp(T, U).r
    assert np.allclose(lhs, rhs, atol=1e-9)


def test_ricci_and_scalar():
    n = 5
    I = DiagCurvature.identity(n)
    assert list(ricci_diag(I)) == [n - 1] * n
    assert scalar_curvature(I) == n * (n - 1)
    assert not np.any(ricci_diag(DiagCurvature.zero(4)))


def test_einstein_examples():
    assert einstein_decompose(DiagCurvature.identity(6)).W.max_abs() == 0
    P = sphere_product_tensor(2, 3)
    dec = einstein_decompose(P)
    assert dec.is_einstein and dec.W.max_abs() > 0
    assert abs(dec.norm_S - np.sqrt(2) * dec.norm_W) < 1e-12
    rng = np.random.default_rng(5)
    assert not is_einstein(random_diag(rng, 5))


@pytest.mark.parametrize("k", range(2, 7))
@pytest.mark.parametrize("l", range(2, 7))
def test_sphere_products_are_einstein_fixed_points(k, l):
    P = sphere_product_tensor(k, l, F(2, 3))
    assert P.exact and is_einstein(P)
    theta = tensor_theta(P)
    assert fixed_point_residual(P, theta).max_abs() == 0


def test_sphere_product_value_counts():
    S, theta = tensor_to_solution(sphere_product_tensor(2, 2, 1))
    assert len(S.values()) == 2
    S, theta = tensor_to_solution(sphere_product_tensor(2, 3, 1))
    assert len(S.values()) == 3
    rep = verify_basic(S)
    assert rep.is_solution and rep.theta == theta
    # equal spheres give the disjoint-complete-graph solution up to scale
    S22, _ = tensor_to_solution(sphere_product_tensor(2, 2, 1))
    D, _ = srg_to_solution(disjoint_complete(2, 2))
    ratio = {S22[i, j] / D[i, j] for i in range(4) for j in range(4) if i != j}
    assert len(ratio) == 1


def test_sphere_product_float_radius():
    P = sphere_product_tensor(3, 4, 1.5)
    assert not P.exact and is_einstein(P)
    assert fixed_point_residual(P, tensor_theta(P)).max_abs() < 1e-12


def test_zero_solution_gives_round_sphere():
    S = SymSolutionMatrix.zeros(5)
    R = solution_to_tensor(S, 4)
    assert R == DiagCurvature.identity(5)
    assert fixed_point_residual(R, 4).max_abs() == 0


def test_petersen_flat_branch():
    S, theta = srg_to_solution(kneser2(5))
    R = solution_to_tensor(S, theta, branch="flat")
    assert R == DiagCurvature(S.fractions(), exact=True)
    assert fixed_point_residual(R, 0).max_abs() == 0


def test_disjoint_complete_round_branch():
    S, theta = srg_to_solution(disjoint_complete(2, 2))
    assert theta == 1
    R = solution_to_tensor(S, theta)
    assert R.r[0, 2] == F(1, 3) + S[0, 2]
    assert fixed_point_residual(R, theta).max_abs() == 0


def _solutions():
    yield srg_to_solution(rook(4))
    yield srg_to_solution(paley_graph(13))
    yield srg_to_solution(kneser2(7))
    phi, theta = composite_solution(3, 5, 1)
    yield phi_to_matrix(phi), theta
    res = cubic_solution(13)
    yield phi_to_matrix(res.phi.as_group_function()), res.theta


def test_fixed_point_identity_for_solutions():
    for S, theta in _solutions():
        for branch in ("round", "flat"):
            R = solution_to_tensor(S, theta, branch)
            res = fixed_point_residual(R, theta).max_abs()
            if R.exact:
                assert res == 0
            else:
                assert res < 1e-10
            assert einstein_decompose(R).is_einstein
        n = S.n
        r = theta / (n - 1)
        assert abs(float((n - 1) * r * r - theta * r)) < 1e-12


def test_solution_to_tensor_rejects_non_solutions():
    M = SymSolutionMatrix(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))
    with pytest.raises(NotASolutionError):
        solution_to_tensor(M, 1)
    S, theta = srg_to_solution(rook(4))
    with pytest.raises(NotASolutionError):
        solution_to_tensor(S, theta + 1)


def test_tensor_validation():
    with pytest.raises(ValueError):
        DiagCurvature([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        DiagCurvature([[1, 0], [0, 0]])
    assert Counter(DiagCurvature.identity(3).r.ravel().tolist()) == Counter({1: 6, 0: 3})
