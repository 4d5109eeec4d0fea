"""Exact determinants and Pfaffians over rationals and polynomials."""

import random
from fractions import Fraction

import pytest

from feyncomb import fixtures
from feyncomb.checks import random_diag_matrix, random_poly, random_skew_matrix
from feyncomb.graphs import Graph
from feyncomb.linalg import (
    build_skew_assembly,
    det,
    det_cofactor,
    det_d_plus_a_identity,
    divexact,
    matrix_tree_count,
    pfaffian,
    pfaffian_recursive,
    pfaffian_sign_constant,
)
from feyncomb.poly import MultiPoly


def test_det_identity_and_diagonal():
    one = MultiPoly.one()
    zero = MultiPoly.zero()
    eye3 = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert det(eye3) == one
    a1, a2 = MultiPoly.var("a.e1"), MultiPoly.var("a.e2")
    assert det([[a1, zero], [zero, a2]]) == a1 * a2
    assert det([]) == one


def test_det_needs_pivoting():
    zero, one = MultiPoly.zero(), MultiPoly.one()
    m = [[zero, one], [one, zero]]
    assert det(m) == -one
    assert det([[zero, zero], [zero, one]]).is_zero()


def test_det_matches_cofactor_on_random_matrices():
    rng = random.Random(71)
    for _ in range(15):
        n = rng.randint(1, 4)
        m = [[random_poly(rng, ["x", "y"], terms=2) for _ in range(n)] for _ in range(n)]
        assert det(m) == det_cofactor(m)


def test_det_alternating_multilinear_transpose():
    rng = random.Random(73)
    for _ in range(10):
        n = rng.randint(2, 4)
        m = [[random_poly(rng, ["x"], terms=2) for _ in range(n)] for _ in range(n)]
        swapped = [row[:] for row in m]
        swapped[0], swapped[1] = swapped[1], swapped[0]
        assert det(swapped) == -det(m)
        transposed = [[m[j][i] for j in range(n)] for i in range(n)]
        assert det(transposed) == det(m)
        c = Fraction(3, 2)
        scaled = [row[:] for row in m]
        scaled[0] = [c * x for x in scaled[0]]
        assert det(scaled) == MultiPoly.const(c) * det(m)


def test_divexact():
    x, y = MultiPoly.var("x"), MultiPoly.var("y")
    p = (x + y) * (x - y) * (x + 2)
    assert divexact(p, x + y) == (x - y) * (x + 2)
    with pytest.raises(ValueError):
        divexact(x * y + 1, x)
    with pytest.raises(ZeroDivisionError):
        divexact(x, MultiPoly.zero())


def test_pfaffian_small_cases():
    a = MultiPoly.var("a")
    zero = MultiPoly.zero()
    assert pfaffian([[zero, a], [-a, zero]]) == a
    assert pfaffian([[zero] * 3 for _ in range(3)]).is_zero()
    with pytest.raises(ValueError):
        pfaffian([[MultiPoly.one()]])


def test_pfaffian_squares_to_det():
    rng = random.Random(79)
    for over_polys in (False, True):
        for n in (2, 4, 6):
            a = random_skew_matrix(rng, n, over_polys)
            pf = pfaffian(a)
            assert pf * pf == det(a)
            assert pf == pfaffian_recursive(a)


def test_pfaffian_sign_convention():
    # the A12 A34 ... term carries +1
    zero, one = MultiPoly.zero(), MultiPoly.one()
    a = [[zero] * 4 for _ in range(4)]
    a[0][1], a[1][0] = one, -one
    a[2][3], a[3][2] = one, -one
    assert pfaffian(a) == one


def test_det_d_plus_a_small_sign_derivation():
    # n = 1: det(D) = d, Pf of [[0, d], [-d, 0]] = d, sigma_1 = +1
    d = MultiPoly.var("d")
    assert pfaffian(build_skew_assembly([[d]], [[MultiPoly.zero()]])) == d
    assert pfaffian_sign_constant(1) == 1
    # n = 2 brute force: det(D+A) = d1 d2 + a^2, Pf(K) = -(d1 d2 + a^2)
    d1, d2, a = MultiPoly.var("d1"), MultiPoly.var("d2"), MultiPoly.var("a")
    zero = MultiPoly.zero()
    dm = [[d1, zero], [zero, d2]]
    am = [[zero, a], [-a, zero]]
    assert det([[d1, a], [-a, d2]]) == d1 * d2 + a * a
    assert pfaffian(build_skew_assembly(dm, am)) == -(d1 * d2 + a * a)
    assert pfaffian_sign_constant(2) == -1
    assert det_d_plus_a_identity(dm, am)


def test_det_d_plus_a_identity_random():
    rng = random.Random(83)
    for over_polys in (False, True):
        for _ in range(10):
            n = rng.randint(1, 4)
            d = random_diag_matrix(rng, n, over_polys)
            a = random_skew_matrix(rng, n, over_polys)
            assert det_d_plus_a_identity(d, a)
    with pytest.raises(ValueError, match="skew"):
        det_d_plus_a_identity([[MultiPoly.one()]], [[MultiPoly.one()]])


def test_det_d_plus_a_reduces_to_pf_squared_at_zero_d():
    rng = random.Random(89)
    n = 4
    a = random_skew_matrix(rng, n, False)
    zero_d = [[MultiPoly.zero()] * n for _ in range(n)]
    assert det_d_plus_a_identity(zero_d, a)


def test_matrix_tree_count():
    assert matrix_tree_count(fixtures.build("k3")) == 3
    assert matrix_tree_count(Graph(["a", "b"], [("e1", "a", "b")])) == 1
    fig3 = fixtures.build("fig3")
    assert matrix_tree_count(fig3) == 5 == len(fig3.spanning_trees())
    assert matrix_tree_count(Graph(["v"], [])) == 1
    with pytest.raises(ValueError):
        matrix_tree_count(Graph(["a", "b"], []))
