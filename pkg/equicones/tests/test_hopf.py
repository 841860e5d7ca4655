"""
Tests of the Hopf ring calculus: presentations, coproducts, circle products and the axiom checker.

Date: October 2026
Author: equicones developers
"""

import json

import pytest

from equicones import hopf
from equicones.coeffs import A, M2_ONE, U, BiDegree
from equicones.hopf import (POINT_ONE, POINT_ZERO, UNIT, CircleMonomial, HopfPresentation, Monomial, gen,
                            make_presentation)


e = gen('e_sigma')
abar0 = gen('alpha_bar', 0)
abar1 = gen('alpha_bar', 1)


def test_generator_bidegrees():
    assert e.bidegree == BiDegree(1, 1)
    assert abar1.bidegree == BiDegree(4, 2)
    assert gen('beta', 2).bidegree == BiDegree(8, 0)
    assert gen('x_bar', 0).bidegree == BiDegree(4, 2)
    assert str(abar1) == 'abar(1)'
    with pytest.raises(ValueError):
        gen('gamma')


def test_monomials_are_exterior():
    m = Monomial.of(e, abar0)
    assert str(m) == 'abar(0)*e_sigma'
    assert m.bidegree == BiDegree(3, 2)
    assert hopf.star_mul(m, Monomial.of(e)) is None
    assert hopf.star_mul(Monomial.of(abar1), m) == Monomial.of(e, abar0, abar1)
    with pytest.raises(ValueError):
        Monomial.of(e, e)
    assert str(UNIT) == '1'

    K = make_presentation('K_sigma', 2)
    assert hopf.star_product(K, e, abar0) == {m: M2_ONE}
    assert hopf.star_product(K, m, e) == {}


def test_circle_of_generators():
    assert hopf.circle_product(e, e) == {Monomial.of(CircleMonomial.of(e, e)): M2_ONE}
    assert str(CircleMonomial.of(e, abar0)) == 'abar(0)oe_sigma'
    # e_0 is the circle unit on positive degree classes
    assert hopf.circle_product(gen('e_0'), abar0) == {Monomial.of(abar0): M2_ONE}


def circle_of_elements(u, v):
    out = {}
    for m1, c1 in u.items():
        for m2, c2 in v.items():
            for m, c in hopf.circle_product(m1, m2).items():
                hopf.add_term(out, m, c1 * c2 * c)
    return out


def test_circle_product_is_associative():
    singles = [Monomial.of(g) for g in (e, abar0, abar1)]
    pairs = [Monomial.of(e, abar0), Monomial.of(abar0, abar1), Monomial.of(e, abar1)]
    for x in singles:
        for y in singles:
            for z in singles + pairs:
                lhs = circle_of_elements(hopf.circle_product(x, y), {z: M2_ONE})
                rhs = circle_of_elements({x: M2_ONE}, hopf.circle_product(y, z))
                assert lhs == rhs, (str(x), str(y), str(z))


def test_e_0_is_the_circle_unit():
    e_0 = gen('e_0')
    for m in make_presentation('K_sigma', 2).basis(7, include_unit=False):
        assert hopf.circle_product(e_0, m) == {m: M2_ONE}, str(m)
        assert hopf.circle_product(m, e_0) == {m: M2_ONE}, str(m)


def test_point_classes():
    assert hopf.circle_product(POINT_ONE, abar0) == {Monomial.of(abar0): M2_ONE}
    assert hopf.circle_product(abar0, POINT_ZERO) == {UNIT: M2_ONE}
    with pytest.raises(TypeError):
        hopf.circle_product(POINT_ONE, POINT_ZERO)


def test_distributive_law():
    expected = Monomial.of(CircleMonomial.of(e, abar0), CircleMonomial.of(e, abar1))
    assert hopf.circle_product(e, Monomial.of(abar0, abar1)) == {expected: A}
    # unit factors have zero augmentation
    assert hopf.circle_product(UNIT, abar0) == {}
    assert hopf.circle_product(UNIT, UNIT) == {UNIT: M2_ONE}

    K = make_presentation('K_sigma', 2)
    expected = Monomial.of(CircleMonomial.of(e, e), CircleMonomial.of(e, abar0))
    assert hopf.circle_distribute(K, e, e, abar0) == {expected: A}
    assert hopf.circle_product(e, Monomial.of(e, abar0)) == {expected: A}


def test_coproducts():
    K = make_presentation('K_sigma', 2)
    x = Monomial.of(e)
    assert hopf.coproduct_tensor(K, e) == {(UNIT, x): M2_ONE, (x, UNIT): M2_ONE, (x, x): A}

    psi = hopf.closed_coproduct('alpha_bar', 2)
    assert len(psi) == 5
    assert psi[(Monomial.of(e, abar0), x)] == U
    assert hopf.coproduct_tensor(K, abar1) == psi

    with pytest.raises(KeyError):
        hopf.coproduct_tensor(make_presentation('S1'), abar0)

    terms = hopf.coproduct(K, x)
    assert {(t.left, t.right): t.coeff for t in terms} == {(UNIT, x): M2_ONE, (x, UNIT): M2_ONE, (x, x): A}
    assert [(t.left, t.right) for t in hopf.coproduct(K, UNIT)] == [(UNIT, UNIT)]


def test_make_presentation():
    assert len(make_presentation('K_sigma', 3).generators) == 5
    assert len(make_presentation('K_2sigma', 1).generators) == 6
    assert len(make_presentation('fixed_points(2sigma)', 1).generators) == 6
    assert make_presentation('K_0sigma').generators == (CircleMonomial.of(gen('e_0')),)
    for name in ('K_Z_rho', 'K_Z_2sigma', 'classical_K1', 'classical_CP', 'S_sigma', 'F2', 'K_sigma+1'):
        assert make_presentation(name, 1).generators
    with pytest.raises(NameError):
        make_presentation('K_rho')


def test_presentation_basis_and_json():
    K = make_presentation('K_sigma', 3)
    basis = K.basis(3)
    assert [str(m) for m in basis] == ['1', 'e_sigma', 'abar(0)', 'abar(0)*e_sigma']
    assert len(K.basis(3, include_unit=False)) == 3

    data = json.loads(json.dumps(K.to_json()))
    back = HopfPresentation.from_json(data)
    assert back.generators == K.generators
    assert back.coproduct_table == K.coproduct_table


@pytest.mark.parametrize('name', ['K_sigma', 'K_Z_rho', 'K_Z_2sigma', 'classical_K1', 'classical_CP', 'S1',
                                  'S_sigma', 'F2'])
def test_axioms_hold(name):
    report = hopf.verify_hopf_axioms(make_presentation(name, 2), 8)
    assert report.ok, report.failure
    assert report.to_json()['status'] == 'PASS'
    assert report.checks['coassociativity']


@pytest.mark.parametrize('name', ['K_2sigma', 'K_3sigma', 'K_sigma+1', 'K_sigma+2', 'fixed_points(2sigma)'])
def test_axioms_hold_on_composites(name):
    report = hopf.verify_hopf_axioms(make_presentation(name, 3), 12)
    assert report.ok, report.failure
    assert report.checks['coassociativity']


def test_presentations_are_closed_under_coproduct():
    K = make_presentation('K_sigma+1', 2)
    assert 'alpha(0)oabar(0)' in {str(c) for c in K.generators}
    for name in ('K_sigma+1', 'K_sigma+2', 'K_2sigma'):
        K = make_presentation(name, 2)
        for c in K.generators:
            for t in K.coproduct_table[c]:
                assert set(t.left.factors + t.right.factors) <= set(K.generators)


def test_coproducts_are_memoized():
    K = make_presentation('K_sigma', 2)
    m = Monomial.of(e, abar1)
    first = hopf.coproduct_tensor(K, m)
    first.clear()
    assert m in K._coproducts
    assert hopf.coproduct_tensor(K, m) == hopf.monomial_coproduct(m)
    assert not K.with_coproduct(abar0, [])._coproducts


def test_corrupted_coproduct_fails():
    K = make_presentation('K_sigma', 2)
    c = CircleMonomial.of(abar0)
    terms = [t for t in K.coproduct_table[c] if t.coeff.is_one()]
    report = hopf.verify_hopf_axioms(K.with_coproduct(abar0, terms), 8)
    assert not report.ok
    assert report.failure['check'] == 'closed-form'
    assert report.to_json()['status'] == 'FAIL'
