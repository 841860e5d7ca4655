"""
Twisted bar spectral sequence.

The C2 action reverses bar words. Palindromes are fixed points and carry free cones, free orbits {w, gamma w}
carry induced towers. d1 between orbit summands follows the templates of `barss.template_entry`; tower to
cone components hide an extension that moves the hit cone by sigma on E2.

Date: October 2026
Author: equicones developers
"""

import itertools
import logging
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from equicones import barss, hopf
from equicones.barss import (CONE_CONE, CONE_TOWER, TOWER_CONE, BarWord, E2Table, Page, SummandMap,
                             WordComplex)
from equicones.coeffs import (M2_ONE, ONE, RHO, SIGMA, BiDegree, GradedModule, Reconstruction, Region,
                              Summand, bidegree_sum, in_span_f2, m2_cone_part, matmul_f2, nullspace_f2,
                              reconstruct_module)
from equicones.hopf import HopfPresentation, Monomial


logger = logging.getLogger(__name__)

FIXED = 'fixed'
FREE = 'free'


class TemplateError(RuntimeError):
    """A d1 component that no orbit template covers."""


class TemplateWarning(UserWarning):
    """A d1 component whose template evaluates to zero on every bidegree."""


class NoCandidate(ValueError):
    """No longer palindrome can carry the differential killing a cone."""


def gamma(word: BarWord) -> BarWord:
    return BarWord(tuple(reversed(word.entries)))


def fixed_shift(word: BarWord) -> BiDegree:
    """
    Generator bidegree of the cone of a palindrome: ceil(t/2) sigma + floor(t/2), rho times the topological
    degree of each mirrored pair and the bidegree of the middle entry.
    """
    t = word.t
    shift = SIGMA * ((t + 1) // 2) + ONE * (t // 2)
    shift = shift + bidegree_sum(RHO * e.underlying_degree for e in word.entries[:t // 2])
    if t % 2:
        shift = shift + word.entries[t // 2].bidegree
    return shift


@dataclass(frozen=True, order=True)
class TwistedWord:
    """Orbit of a bar word under reversal, stored through its least word."""
    word: BarWord

    @classmethod
    def of(cls, word: BarWord):
        return cls(min(word, gamma(word)))

    @property
    def orbit(self) -> str:
        return FIXED if gamma(self.word) == self.word else FREE

    @property
    def t(self) -> int:
        return self.word.t

    @property
    def p0(self) -> int:
        return self.word.shift.p

    @property
    def members(self) -> List[BarWord]:
        return [self.word] if self.orbit == FIXED else [self.word, gamma(self.word)]

    def summand(self) -> Summand:
        if self.orbit == FIXED:
            return Summand.cone(fixed_shift(self.word), self.word.label())
        return Summand.tower(self.p0, self.word.label())


def twisted_words(A: HopfPresentation, t_max: int, region: Region) -> Dict[int, List[TwistedWord]]:
    """Orbits of bar words of length <= t_max + 1 with topological degree <= pMax + 1."""
    def keep(s):
        return s.p <= region.p_max + 1

    entries = barss.entry_basis(A, keep)
    grouped = barss.enumerate_words(entries, t_max + 1, lambda w: w.shift, lambda w: keep(w.shift))
    out = {t: set() for t in range(t_max + 2)}
    for (t, _), ws in grouped.items():
        for w in ws:
            out[t].add(TwistedWord.of(w))
    return {t: sorted(v, key=lambda o: (o.p0, o.orbit, o.word)) for t, v in out.items()}


def twisted_e1(A: HopfPresentation, t_max: int, region: Region) -> Page:
    if A.mult != 'exterior':
        raise TemplateError('The orbit templates need an exterior star product, got {}.'.format(A.mult))
    words = twisted_words(A, t_max, region)
    filtrations = {t: GradedModule(tuple(o.summand() for o in ws)) for t, ws in words.items()}
    orbits = {t: [o.orbit for o in ws] for t, ws in words.items()}
    logger.info('Twisted E1 of %s: %d orbits up to t = %d', A.name, sum(len(v) for v in words.values()),
                t_max + 1)
    return Page(1, filtrations, words, [], t_max, region, A.name, orbits)


def twisted_d1(page: Page) -> Page:
    """
    d1 on orbit summands from the bar differential of the least word of each orbit.

    A component between orbits is counted as c + c' gamma, c and c' being the multiplicities of the target's
    least word and of its mirror. Towers map to towers with the augmentation c + c' and to cones with a sigma
    hidden extension. A palindrome meets the two words of a free orbit equally often, so its cone to tower
    components are norms; they are kept as maps with a zero template and reported by a TemplateWarning.
    Cone to cone components would need a template that exterior presentations never produce: they raise a
    TemplateError.
    """
    position = {t: {o: i for i, o in enumerate(ws)} for t, ws in page.words.items()}
    maps = []
    flagged = 0
    for t in sorted(page.words):
        if t < 2:
            continue
        for i, orbit in enumerate(page.words[t]):
            counts = {}
            for v in barss.bar_boundary(orbit.word, hopf.star_mul):
                target = TwistedWord.of(v)
                c_v, c_gv = counts.get(target, (0, 0))
                counts[target] = (c_v + 1, c_gv) if v == target.word else (c_v, c_gv + 1)
            for target, (c_v, c_gv) in sorted(counts.items()):
                j = position[t - 1].get(target)
                if j is None:
                    continue
                kind = '{}-{}'.format('cone' if orbit.orbit == FIXED else 'tower',
                                      'cone' if target.orbit == FIXED else 'tower')
                if kind == CONE_TOWER:
                    if c_v % 2 or c_gv % 2:
                        flagged += 1
                        maps.append(SummandMap((t, i), (t - 1, j), M2_ONE, kind))
                    continue
                if not (c_v + c_gv) % 2:
                    continue
                if kind == CONE_CONE:
                    raise TemplateError('No template for {} -> {}.'.format(orbit.word, target.word))
                annotation = SIGMA if kind == TOWER_CONE else None
                maps.append(SummandMap((t, i), (t - 1, j), M2_ONE, kind, annotation))
    if flagged:
        warnings.warn(TemplateWarning('{} cone to tower components vanish under their template.'
                                      .format(flagged)))
    return page.with_differentials(maps)


def hit_cones(page: Page) -> Dict[Tuple[int, int], List[Tuple[int, int]]]:
    """Fixed cones that towers hit on d1, with the hitting towers."""
    out = {}
    for f in page.differentials:
        if f.kind == TOWER_CONE:
            out.setdefault(f.target, []).append(f.source)
    return out


def twisted_e2_dims(page: Page, region: Region = None, threads: int = 1) -> E2Table:
    """
    E2 per bidegree and filtration, with a greedy reconstruction trying sigma-shifted hit cones first, then
    the remaining cones and the towers.

    A hidden extension joins a tower to the cone it hits one filtration lower: the reconstruction runs on
    the dimensions summed over t and files every accepted summand under the filtration of its word.
    """
    region = region or page.region
    e1, dims = barss.page_dims(page, region, threads)
    hit = hit_cones(page)
    total = Counter()
    for (t, x), n in dims.items():
        total[x] += n
    filed = {}
    shifted, rest, towers = [], [], []
    for t in range(page.t_max + 1):
        for i, s in enumerate(page.filtrations[t].summands):
            filed[s.label] = t
            if (t, i) in hit:
                shifted.append(s.shifted_by(SIGMA))
            elif s.is_cone:
                rest.append(s)
            else:
                towers.append(s)
    rec = reconstruct_module(dict(total), shifted + rest + towers, region)
    reconstruction = {t: Reconstruction(GradedModule(tuple(s for s in rec.module if filed[s.label] == t)),
                                        rec.residual, rec.ok)
                      for t in range(page.t_max + 1)}
    clipped = barss.clipped_maps(page, region)
    if clipped:
        warnings.warn(barss.TruncationWarning('{} twisted d1 components straddle the region {}.'.format(
            len(clipped), region)))
    return E2Table(region, page.t_max, e1, dims, clipped=clipped, annotations=page.annotations(),
                   reconstruction=reconstruction, name=page.name)


# ===============================================================
# Cones that must die and their killers
# ===============================================================

@dataclass(frozen=True)
class LedgerEntry:
    word: BarWord
    shift: BiDegree
    annotated: BiDegree
    hitting: Tuple[BarWord, ...]
    answer_dim: Optional[int] = None

    @property
    def t(self) -> int:
        return self.word.t

    def to_json(self):
        out = {'word': self.word.label(), 't': self.t, 'shift': self.shift.to_json(),
               'annotated': self.annotated.to_json(), 'hitting': [w.label() for w in self.hitting]}
        if self.answer_dim is not None:
            out['answer_dim'] = self.answer_dim
        return out


def underlying_complex(page: Page) -> WordComplex:
    """
    Bar complex of all orbit members, split by (t, generator bidegree of the bar word). One filtration above
    the page's words is added so that cycles of the top filtration can be tested for boundaries.
    """
    words = {}
    for t, ws in page.words.items():
        for orbit in ws:
            for w in orbit.members:
                words.setdefault((t, w.shift), []).append(w)
    top = max(page.words, default=0)
    if top:
        entries = sorted({m.entries[0] for o in page.words.get(1, []) for m in o.members})
        for orbit in page.words[top]:
            for w in orbit.members:
                for e in entries:
                    v = BarWord(w.entries + (e,))
                    if v.shift.p <= page.region.p_max + 1:
                        words.setdefault((top + 1, v.shift), []).append(v)
    return WordComplex(words, hopf.star_mul, lambda key: (key[0] - 1, key[1] - ONE))


def _even_cycles_are_boundaries(layer: WordComplex, words: List[BarWord], key) -> bool:
    if len(words) < 2:
        return True
    position = layer.position[key]
    span = np.zeros((len(words) - 1, layer.dim(key)), dtype=np.uint8)
    for r, w in enumerate(words[1:]):
        span[r, position[words[0]]] ^= 1
        span[r, position[w]] ^= 1
    kernel = nullspace_f2(matmul_f2(layer.matrix(key), span.T))
    image = layer.matrix((key[0] + 1, key[1] + ONE)).T
    for combo in kernel:
        if not in_span_f2(image, matmul_f2(combo.reshape(1, -1), span)[0]):
            return False
    return True


def must_die_ledger(page: Page, answer: GradedModule = None) -> List[LedgerEntry]:
    """
    Fixed cones whose underlying word is a boundary while every cycle in the even span of the words of the
    towers hitting them is a boundary too: nothing of the cone can reach the abutment, so a longer
    differential has to kill it. Filtrations 1 to t_max are scanned.

    The underlying answer is the homology of the underlying bar complex, computed here. An `answer` module
    for the abutment only annotates each entry with its dimension at the annotated bidegree: a class of the
    answer in that bidegree may come from another summand, so it never removes an entry.
    """
    layer = underlying_complex(page)
    hit = hit_cones(page)
    ledger = []
    for t in range(1, page.t_max + 1):
        for i, orbit in enumerate(page.words.get(t, [])):
            if orbit.orbit != FIXED:
                continue
            w = orbit.word
            key = (t, w.shift)
            if not layer.is_boundary(w, key, (t + 1, w.shift + ONE)):
                continue
            towers = [page.words[s][j] for s, j in hit.get((t, i), [])]
            members = [m for o in towers for m in o.members]
            if not _even_cycles_are_boundaries(layer, members, (t + 1, w.shift + ONE)):
                continue
            shift = fixed_shift(w)
            annotated = shift + SIGMA if towers else shift
            answer_dim = None if answer is None else answer.dim(annotated)
            ledger.append(LedgerEntry(w, shift, annotated, tuple(o.word for o in towers), answer_dim))
    logger.info('%d cones must die on later pages', len(ledger))
    return ledger


@dataclass(frozen=True)
class NormCandidate:
    word: BarWord
    r: int
    shift: BiDegree
    compatible: bool

    def to_json(self):
        return {'word': self.word.label(), 'r': self.r, 'shift': self.shift.to_json(),
                'compatible': self.compatible}


def _orderings(entry: Monomial) -> List[Tuple[Monomial, ...]]:
    factors = [Monomial((c,)) for c in entry.factors]
    return sorted(set(itertools.permutations(factors)))


def norm_candidate(entry) -> List[NormCandidate]:
    """
    Palindromes that could kill a ledger cone: the entries of the left half are unfolded into their factors
    in every order and mirrored. A candidate is compatible when its generator sits a positive cone degree
    above the annotated target, one step to the right.

    Raises
    ------
    NoCandidate
        When every entry of the left half is a single generator.
    """
    if isinstance(entry, LedgerEntry):
        word, target = entry.word, entry.annotated
    else:
        word, target = entry, fixed_shift(entry)
    t = word.t
    left = word.entries[:t // 2]
    middle = word.entries[t // 2:t - t // 2]
    if all(len(e.factors) == 1 for e in left):
        raise NoCandidate('{} has no decomposable entry in its left half.'.format(word))
    out = []
    for combo in itertools.product(*[_orderings(e) for e in left]):
        half = tuple(m for part in combo for m in part)
        cand = BarWord(half + tuple(middle) + tuple(reversed(half)))
        shift = fixed_shift(cand)
        out.append(NormCandidate(cand, cand.t - t, shift, m2_cone_part(shift - ONE - target) == 'pos'))
    return out


# ===============================================================
# Closed form twisted Tor check
# ===============================================================

def twisted_tor_prediction(generators, t_max: int) -> Dict[int, List[BiDegree]]:
    """
    Predicted generator bidegrees per filtration of E[sigma x] (x) Gamma[N x] over the generators x, with
    sigma x in sigma + |x| (filtration 1) and the norm N x in rho (|x|_top + 1) (filtration 2).
    """
    series = {0: [BiDegree(0, 0)]}
    for x in generators:
        x = hopf.as_monomial(x)
        factor = {}
        for t in range(t_max + 1):
            eps, j = t % 2, t // 2
            factor[t] = [(SIGMA + x.bidegree) * eps + RHO * (j * (x.underlying_degree + 1))]
        new = {}
        for t1, ds in series.items():
            for t2, es in factor.items():
                if t1 + t2 <= t_max:
                    new.setdefault(t1 + t2, []).extend(d + e for d in ds for e in es)
        series = new
    return {t: sorted(v) for t, v in sorted(series.items())}


@dataclass
class TwistedTorCheck:
    name: str
    predicted: Dict[int, List[BiDegree]]
    observed: Dict[int, List[BiDegree]]

    @property
    def ok(self) -> bool:
        return self.predicted == self.observed

    def to_json(self):
        return {'name': self.name, 'status': 'PASS' if self.ok else 'FAIL',
                'predicted': {str(t): [d.to_json() for d in v] for t, v in self.predicted.items()},
                'observed': {str(t): [d.to_json() for d in v] for t, v in self.observed.items()}}


def twisted_tor_check(A: HopfPresentation, t_max: int, region: Region, threads: int = 1) -> TwistedTorCheck:
    """
    Generators of the twisted E2 of a presentation (read off the per filtration reconstruction) against the
    closed form of `twisted_tor_prediction` on its generators, for generators inside the region.
    """
    page = twisted_d1(twisted_e1(A, t_max, region))
    table = twisted_e2_dims(page, region, threads)
    observed = {}
    for t, rec in sorted(table.reconstruction.items()):
        observed[t] = sorted(s.shift if s.is_cone else BiDegree(s.p0, 0) for s in rec.module)
    predicted = twisted_tor_prediction([Monomial((c,)) for c in A.generators], t_max)
    predicted = {t: sorted(d for d in predicted.get(t, []) if region.contains(d)) for t in range(t_max + 1)}
    observed = {t: [d for d in observed.get(t, []) if region.contains(d)] for t in range(t_max + 1)}
    return TwistedTorCheck(A.name, predicted, observed)
