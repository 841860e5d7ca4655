"""
Tests of the twisted bar spectral sequence: orbit pages, hidden extensions, the must-die ledger and the closed
form twisted Tor check.

Date: October 2026
Author: equicones developers
"""

import warnings
from collections import Counter

import pytest

from equicones import barss, bases, twistss
from equicones.barss import CONE_TOWER, TOWER_CONE, BarWord, Page
from equicones.coeffs import BiDegree, GradedModule, Region, Summand, TruncationWarning
from equicones.hopf import HopfPresentation, Monomial, gen, make_presentation


x = Monomial.of(gen('e_sigma'))
y = Monomial.of(gen('alpha_bar', 0))
xy = Monomial.of(gen('e_sigma'), gen('alpha_bar', 0))


def twisted_page(name, max_index, t_max, region):
    A = make_presentation(name, max_index)
    return twistss.twisted_d1(twistss.twisted_e1(A, t_max, Region.parse(region)))


@pytest.fixture(scope='module')
def k_sigma_page():
    return twisted_page('K_sigma', 0, 4, '0:10:0:8')


def test_gamma_and_orbits():
    w = BarWord((x, y))
    assert twistss.gamma(w) == BarWord((y, x))
    orbit = twistss.TwistedWord.of(w)
    assert orbit.orbit == twistss.FREE
    assert orbit.word == BarWord((y, x))
    assert orbit.summand().p0 == 5
    assert twistss.TwistedWord.of(BarWord((xy, xy))).orbit == twistss.FIXED


def test_fixed_shift():
    assert twistss.fixed_shift(BarWord((xy,))) == BiDegree(4, 3)
    assert twistss.fixed_shift(BarWord((xy, xy))) == BiDegree(8, 4)
    assert twistss.fixed_shift(BarWord((x, y, y, x))) == BiDegree(10, 5)
    assert twistss.fixed_shift(BarWord((y, x, y))) == BiDegree(8, 5)


def test_hidden_extensions(k_sigma_page):
    page = k_sigma_page
    hits = {}
    for f in page.differentials:
        if f.kind != TOWER_CONE or f.target[0] > 2:
            continue
        target = page.summand(f.target)
        assert f.annotation == BiDegree(1, 1)
        hits.setdefault((target.label, target.shift + f.annotation), []).append(page.summand(f.source).p0)
    assert hits == {('[abar(0)*e_sigma]', BiDegree(5, 4)): [5],
                    ('[abar(0)*e_sigma|abar(0)*e_sigma]', BiDegree(9, 5)): [9, 9]}
    annotations = page.annotations()
    assert {'kind': 'hidden-extension', 'shift': [1, 1], 'from': '[abar(0)|e_sigma]',
            'to': '[abar(0)*e_sigma]'} in annotations


def test_e2_hidden_extension(k_sigma_page):
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', TruncationWarning)
        table = twistss.twisted_e2_dims(k_sigma_page)
    # the tower at p = 5 kills the upper cone of [xy] in its column only
    assert table.dim(1, BiDegree(4, 3)) == 1
    assert table.e1[(1, BiDegree(4, 5))] == 2
    assert table.dim(1, BiDegree(4, 5)) == 1
    assert table.dim(1, BiDegree(6, 7)) == 2
    assert table.dim(2, BiDegree(5, 4)) == 1
    cones = [s.shift for s in table.reconstruction[1].module.cones()]
    assert BiDegree(5, 4) in cones
    assert BiDegree(4, 3) not in cones


def test_must_die_ledger(k_sigma_page):
    ledger = {entry.word: entry for entry in twistss.must_die_ledger(k_sigma_page)}
    assert BarWord((xy,)) not in ledger
    entry = ledger[BarWord((xy, xy))]
    assert entry.shift == BiDegree(8, 4)
    assert entry.annotated == BiDegree(9, 5)
    assert len(entry.hitting) == 2


def test_must_die_ledger_reaches_t_max():
    page = twisted_page('K_sigma', 0, 2, '0:10:0:8')
    ledger = {entry.word: entry for entry in twistss.must_die_ledger(page)}
    entry = ledger[BarWord((xy, xy))]
    assert entry.t == page.t_max
    assert entry.annotated == BiDegree(9, 5)
    assert len(entry.hitting) == 2


def test_must_die_ledger_with_answer(k_sigma_page):
    gens = bases.gen_signed_basis(2, 12)
    answer = GradedModule(tuple(Summand.cone(m.bidegree, str(m)) for m in bases.star_monomials(gens, 12)))
    ledger = {entry.word: entry for entry in twistss.must_die_ledger(k_sigma_page, answer)}
    entry = ledger[BarWord((xy, xy))]
    assert entry.answer_dim >= 1
    assert entry.to_json()['answer_dim'] == entry.answer_dim
    assert 'answer_dim' not in twistss.must_die_ledger(k_sigma_page)[0].to_json()


def test_must_die_ledger_is_empty_without_dying_cones():
    assert twistss.must_die_ledger(twisted_page('F2', 0, 6, '-2:12:-4:8')) == []
    empty = Page(1, {}, {}, [], 0, Region.parse('0:4:0:4'), 'empty')
    assert twistss.must_die_ledger(empty) == []


def test_norm_candidate(k_sigma_page):
    ledger = {entry.word: entry for entry in twistss.must_die_ledger(k_sigma_page)}
    candidates = twistss.norm_candidate(ledger[BarWord((xy, xy))])
    assert {c.word for c in candidates} == {BarWord((x, y, y, x)), BarWord((y, x, x, y))}
    for c in candidates:
        assert c.shift == BiDegree(10, 5)
        assert c.r == 2
        assert c.compatible
    with pytest.raises(twistss.NoCandidate):
        twistss.norm_candidate(BarWord((x, x)))


def test_orbits_partition_the_bar_words(k_sigma_page):
    A = make_presentation('K_sigma', 0)
    entries = barss.entry_basis(A, lambda s: s.p <= 11)
    words = barss.enumerate_words(entries, 5, lambda w: w.shift, lambda w: w.shift.p <= 11)
    per_length = Counter()
    for (t, _), ws in words.items():
        per_length[t] += len(ws)
    for t, orbits in k_sigma_page.words.items():
        fixed = sum(1 for o in orbits if o.orbit == twistss.FIXED)
        free = len(orbits) - fixed
        assert fixed + 2 * free == per_length[t]


def test_twisted_d1_squares_to_zero(k_sigma_page):
    assert barss.check_d_squared(k_sigma_page) == []
    assert barss.check_d_squared(twisted_page('K_sigma', 1, 4, '0:12:0:8')) == []


def test_e2_is_bounded_by_e1(k_sigma_page):
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', TruncationWarning)
        table = twistss.twisted_e2_dims(k_sigma_page)
    assert table.dims
    for key, n in table.dims.items():
        assert n <= table.e1[key]


def test_cone_to_tower_components_are_flagged():
    A = make_presentation('K_sigma', 0)
    e1 = twistss.twisted_e1(A, 3, Region.parse('0:10:0:8'))
    with pytest.warns(twistss.TemplateWarning):
        page = twistss.twisted_d1(e1)
    source = page.words[3].index(twistss.TwistedWord.of(BarWord((x, y, x))))
    target = page.words[2].index(twistss.TwistedWord.of(BarWord((xy, x))))
    flagged = [f for f in page.differentials if f.kind == CONE_TOWER]
    assert [(f.source, f.target) for f in flagged if f.source == (3, source)] == [((3, source), (2, target))]
    assert all(f.annotation is None for f in flagged)
    for (t, i), sources in twistss.hit_cones(page).items():
        assert page.words[t][i].orbit == twistss.FIXED
        assert all(page.words[s][j].orbit == twistss.FREE for s, j in sources)
    assert barss.check_d_squared(page) == []


def test_orbit_templates_need_exterior_product():
    A = make_presentation('S_sigma')
    page = twistss.twisted_e1(A, 2, Region.parse('0:6:0:4'))
    assert page.differentials == []
    squared = HopfPresentation(A.name, A.generators, A.coproduct_table, mult='polynomial')
    with pytest.raises(twistss.TemplateError):
        twistss.twisted_e1(squared, 2, Region.parse('0:6:0:4'))


def test_prediction():
    predicted = twistss.twisted_tor_prediction([gen('e_0')], 4)
    assert predicted == {0: [BiDegree(0, 0)], 1: [BiDegree(1, 1)], 2: [BiDegree(2, 1)], 3: [BiDegree(3, 2)],
                         4: [BiDegree(4, 2)]}


@pytest.mark.parametrize('name,t_max', [('F2', 10), ('S_sigma', 4)])
def test_twisted_tor_matches_closed_form(name, t_max):
    result = twistss.twisted_tor_check(make_presentation(name), t_max, Region.parse('-2:12:-4:8'))
    assert result.ok, result.to_json()
    assert result.to_json()['status'] == 'PASS'


def test_s_sigma_generators():
    result = twistss.twisted_tor_check(make_presentation('S_sigma'), 4, Region.parse('-2:12:-4:8'))
    assert result.observed == {0: [BiDegree(0, 0)], 1: [BiDegree(2, 2)], 2: [BiDegree(4, 2)],
                               3: [BiDegree(6, 4)], 4: [BiDegree(8, 4)]}


def test_k_z_2sigma_counts_match_twisted_s_sigma():
    basis = make_presentation('K_Z_2sigma').basis(8)
    result = twistss.twisted_tor_check(make_presentation('S_sigma'), 4, Region.parse('-2:12:-4:8'))
    observed = Counter(d for ds in result.observed.values() for d in ds)
    assert Counter(m.bidegree for m in basis) == observed
