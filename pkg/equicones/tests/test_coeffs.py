"""
Tests of the M2 coefficient ring, cone/tower summands and F2 linear algebra.

Date: October 2026
Author: equicones developers
"""

import random

import numpy as np
import pytest

from equicones.coeffs import (A, M2_ONE, M2_ZERO, ONE, RHO, SIGMA, THETA, U, BiDegree, GradedModule,
                              M2Element, Region, Summand, in_span_f2, m2_basis_element, m2_cone_part, m2_dim,
                              m2_mul, map_tasks, matmul_f2, matrix_rank_f2, module_dim, nullspace_f2,
                              reconstruct_module, row_reduce_f2)


def test_bidegree_arithmetic():
    assert SIGMA + ONE == RHO
    assert RHO * 2 == BiDegree(4, 2)
    assert -SIGMA == BiDegree(-1, -1)
    assert BiDegree.from_json(RHO.to_json()) == RHO


def test_m2_dim():
    nonzero = [(0, 0), (-1, -1), (0, -1), (-2, -5), (0, 2), (1, 3), (3, 7)]
    zero = [(1, 0), (1, 1), (0, 1), (-1, 0), (1, 2), (2, 3), (-1, 1)]
    for p, q in nonzero:
        assert m2_dim(BiDegree(p, q)) == 1, (p, q)
    for p, q in zero:
        assert m2_dim(BiDegree(p, q)) == 0, (p, q)


def test_m2_cone_part():
    assert m2_cone_part(BiDegree(0, 0)) == 'pos'
    assert m2_cone_part(BiDegree(0, 2)) == 'neg'
    assert m2_cone_part(BiDegree(0, 1)) is None


def test_m2_generators_degrees():
    assert A.bidegree() == BiDegree(-1, -1)
    assert U.bidegree() == BiDegree(0, -1)
    assert THETA.bidegree() == BiDegree(0, 2)
    assert M2Element.theta(1, 0).bidegree() == BiDegree(1, 3)
    for x in Region(-4, 4, -6, 8).bidegrees():
        m = m2_basis_element(x)
        if m is not None:
            assert m.bidegree() == x


def test_m2_mul():
    assert m2_mul(A, U) == M2Element.monomial(1, 1)
    assert m2_mul(A, A) + M2Element.monomial(2, 0) == M2_ZERO
    assert m2_mul(M2Element.theta(1, 0), A) == THETA
    assert m2_mul(U, M2Element.theta(0, 1)) == THETA
    assert not m2_mul(A, THETA)
    assert not m2_mul(THETA, THETA)
    assert m2_mul(M2_ONE, THETA) == THETA
    assert str(M2Element.theta(1, 2)) == 'theta/au^2'


def test_m2_dim_matches_enumeration():
    counts = {}
    for i in range(21):
        for j in range(41):
            for m in (M2Element.monomial(i, j), M2Element.theta(i, j)):
                d = m.bidegree()
                counts[d] = counts.get(d, 0) + 1
    for x in Region(-20, 20, -20, 20).bidegrees():
        assert m2_dim(x) == counts.get(x, 0), x


def test_m2_mul_is_a_graded_commutative_product():
    rng = random.Random(11)
    elements = [m2_basis_element(x) for x in Region(-5, 5, -7, 9).bidegrees() if m2_dim(x)]
    for _ in range(300):
        x, y, z = (rng.choice(elements) for _ in range(3))
        assert m2_mul(x, y) == m2_mul(y, x)
        assert m2_mul(m2_mul(x, y), z) == m2_mul(x, m2_mul(y, z))
        assert m2_mul(x, y + z) == m2_mul(x, y) + m2_mul(x, z)
        if m2_mul(x, y):
            assert m2_mul(x, y).bidegree() == x.bidegree() + y.bidegree()


def test_m2_element_rejects_negative_exponents():
    with pytest.raises(ValueError):
        M2Element.monomial(-1, 0)
    with pytest.raises(ValueError):
        (A + U).bidegree()


def test_region_parse():
    region = Region.parse('-2:12:-4:8')
    assert (region.p_min, region.p_max, region.q_min, region.q_max) == (-2, 12, -4, 8)
    assert str(region) == '-2:12:-4:8'
    assert region.contains(BiDegree(0, 0))
    assert not region.contains(BiDegree(13, 0))
    for text in ('1:0:0:0', '0:1:0', 'a:b:c:d'):
        with pytest.raises(ValueError):
            Region.parse(text)


def test_summand_dims():
    cone = Summand.cone(SIGMA)
    assert cone.dim(SIGMA) == 1
    assert cone.dim(SIGMA + BiDegree(0, 2)) == 1
    assert cone.dim(SIGMA + BiDegree(0, 1)) == 0
    tower = Summand.tower(3)
    assert tower.dim(BiDegree(3, -7)) == 1
    assert tower.dim(BiDegree(4, 0)) == 0
    assert cone.shifted_by(ONE).shift == RHO
    with pytest.raises(ValueError):
        Summand('cone')

    M = GradedModule((cone, tower, Summand.cone(BiDegree(3, 1))))
    assert module_dim(M, BiDegree(3, 1)) == 2
    assert module_dim(M, BiDegree(1, 3)) == 1


def test_module_dim_is_additive():
    rng = random.Random(5)
    region = Region(-4, 10, -6, 8)
    for _ in range(20):
        parts = []
        for _ in range(2):
            summands = [Summand.cone(BiDegree(rng.randint(-2, 6), rng.randint(-2, 6))) for _ in range(3)]
            summands += [Summand.tower(rng.randint(0, 6)) for _ in range(rng.randint(0, 2))]
            parts.append(GradedModule(tuple(summands)))
        M, N = parts
        for x in region.bidegrees():
            assert module_dim(M + N, x) == module_dim(M, x) + module_dim(N, x)


def test_reconstruct_module():
    region = Region(-2, 8, -4, 8)
    module = GradedModule((Summand.cone(BiDegree(0, 0)), Summand.cone(RHO), Summand.tower(5)))
    dims = module.dims(region)
    candidates = [Summand.cone(BiDegree(4, 2)), Summand.cone(BiDegree(0, 0)), Summand.cone(RHO),
                  Summand.tower(5), Summand.tower(6)]
    rec = reconstruct_module(dims, candidates, region)
    assert rec.ok
    assert set(rec.module) == set(module)

    rec = reconstruct_module(dims, candidates[:2], region)
    assert not rec.ok
    assert rec.residual[RHO] == 1


def test_graded_module_json():
    module = GradedModule((Summand.cone(SIGMA, 'x'), Summand.tower(2, 'y')))
    assert GradedModule.from_json(module.to_json()) == module


def test_rank_and_nullspace():
    m = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert matrix_rank_f2(m) == 2
    kernel = nullspace_f2(m)
    assert kernel.shape == (1, 3)
    assert not matmul_f2(m, kernel.T).any()
    assert matrix_rank_f2(np.zeros((0, 3))) == 0
    assert matrix_rank_f2(np.eye(4, dtype=int)) == 4

    reduced = row_reduce_f2(m)
    assert reduced.pivots == (0, 1)
    assert reduced.matrix.tolist() == [[1, 0, 1], [0, 1, 1], [0, 0, 0]]


def test_in_span():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert in_span_f2(rows, [1, 1, 0])
    assert not in_span_f2(rows, [1, 0, 0])
    assert in_span_f2(np.zeros((0, 3)), [0, 0, 0])


def test_map_tasks_keeps_order():
    items = list(range(20))
    assert map_tasks(lambda x: x * x, items, threads=4) == [x * x for x in items]
    assert map_tasks(lambda x: x + 1, items, threads=1) == [x + 1 for x in items]
