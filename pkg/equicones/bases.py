"""
Generator families of the basis theorems for the equivariant Eilenberg-MacLane spaces, the comparison maps to
underlying and fixed point homology and the degreewise freeness verification built on them.

Every comparison happens in the `a` alphabet of the classical p = 2 homology of K(F2, n): a circle word
a_(j1) o ... o a_(jn) of length n lives in H_* K_n, with e_1 = a_(0), alpha_(i) = a_(i+1) and
beta_(j) = a_(j) o a_(j). The point class e_0 of K_0 is the empty word.

Date: October 2026
Author: equicones developers
"""

import logging
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable, Dict, List, Optional, Tuple

from equicones.coeffs import BiDegree, p_bound
from equicones.hopf import (E0, UNIT, CircleMonomial, GeneratorSymbol, Monomial, as_circle, as_monomial, gen)


logger = logging.getLogger(__name__)


class NotFixedPointFree(ValueError):
    """The representation has no sign part."""


# ===============================================================
# Representations
# ===============================================================

def parse_space(text) -> BiDegree:
    """
    Parse `<n>sigma`, `sigma+<i>`, `<n>sigma+<i>`, `rho` or a plain integer into the bidegree of V.
    """
    if isinstance(text, BiDegree):
        return text
    text = str(text).replace(' ', '')
    if text == 'rho':
        return BiDegree(2, 1)
    match = re.fullmatch(r'(\d*)sigma(?:\+(\d+))?', text)
    if match:
        n = int(match.group(1)) if match.group(1) else 1
        i = int(match.group(2)) if match.group(2) else 0
        return BiDegree(n + i, n)
    if re.fullmatch(r'\d+', text):
        return BiDegree(int(text), 0)
    raise ValueError('Cannot read the representation {}.'.format(text))


def format_space(V: BiDegree) -> str:
    n, i = V.q, V.p - V.q
    if n == 0:
        return str(i)
    sign = 'sigma' if n == 1 else '{}sigma'.format(n)
    return sign if i == 0 else '{}+{}'.format(sign, i)


def caruso_factors(V) -> List[int]:
    """
    The Eilenberg-MacLane factors K(F2, m), ..., K(F2, m + n) of the fixed points of K_V, for V = m + n sigma.
    """
    V = parse_space(V)
    m, n = V.p - V.q, V.q
    if n <= 0:
        raise NotFixedPointFree('{} has no sign part.'.format(V))
    if m < 0:
        raise ValueError('{} has a negative trivial part.'.format(V))
    return list(range(m, m + n + 1))


# ===============================================================
# Index sequences
# ===============================================================

@dataclass(frozen=True)
class IndexSequence:
    """
    `J`: exponents (j_sigma, j_0, j_1, ...) of e_sigma and the alpha_bar, all >= 0.
    `I`, `W`: strictly increasing alpha indices.
    `Jp`, `Y`: exponents (j_-1, j_0, ...) of e_1 and the beta, with j_-1 in {0, 1}.
    """
    kind: str
    entries: Tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, 'entries', entries)
        if self.kind not in ('J', 'I', 'W', 'Jp', 'Y'):
            raise ValueError('Unknown index sequence kind {}.'.format(self.kind))

    def is_valid(self) -> bool:
        e = self.entries
        if any(x < 0 for x in e):
            return False
        if self.kind in ('I', 'W'):
            return all(x < y for x, y in zip(e, e[1:]))
        if self.kind in ('Jp', 'Y'):
            return not e or e[0] in (0, 1)
        return True

    @property
    def norm(self) -> int:
        if self.kind in ('I', 'W'):
            return len(self.entries)
        return sum(self.entries)

    @property
    def weight(self) -> int:
        """Length of the classical circle word: e_1 counts once, beta_(n) twice."""
        if self.kind in ('Jp', 'Y'):
            return (self.entries[0] if self.entries else 0) + 2 * sum(self.entries[1:])
        return self.norm

    def last(self) -> Optional[int]:
        """Last alpha index (`I`, `W`) or index of the last nonzero beta exponent (`Jp`, `Y`)."""
        if self.kind in ('I', 'W'):
            return self.entries[-1] if self.entries else None
        beta = self.entries[1:] if self.kind in ('Jp', 'Y') else self.entries
        nonzero = [n for n, j in enumerate(beta) if j]
        return nonzero[-1] if nonzero else None

    def generators(self) -> List[GeneratorSymbol]:
        e = self.entries
        if self.kind in ('I', 'W'):
            return [gen('alpha', i) for i in e]
        if self.kind == 'J':
            out = [gen('e_sigma')] * (e[0] if e else 0)
            for n, j in enumerate(e[1:]):
                out += [gen('alpha_bar', n)] * j
            return out
        out = [gen('e_1')] * (e[0] if e else 0)
        for n, j in enumerate(e[1:]):
            out += [gen('beta', n)] * j
        return out


def check_sigma_plus_sequence(I: IndexSequence, J: IndexSequence, m: int) -> bool:
    """
    Constraints of (e_1 alpha beta)^(I,J) o alpha_bar_(m): m > i_k and m >= l.
    """
    if not (I.is_valid() and J.is_valid()) or m < 0:
        return False
    if I.last() is not None and m <= I.last():
        return False
    if J.last() is not None and m < J.last():
        return False
    return True


def check_beta_bar_sequence(W: IndexSequence, Y: IndexSequence, t: int) -> bool:
    """
    Constraints of (e_1 alpha beta)^(W,Y) o beta_bar_(t): t > w_q and t >= y_r.
    """
    if not (W.is_valid() and Y.is_valid()) or t < 0:
        return False
    if W.last() is not None and t <= W.last():
        return False
    if Y.last() is not None and t < Y.last():
        return False
    return True


def _primed_sequences(weight, kind_i, kind_j, max_index):
    """All (I, J') pairs of total weight |I| + j_-1 + 2 sum j_n = weight."""
    out = []
    for k in range(min(weight, max_index + 1) + 1):
        for I in combinations(range(max_index + 1), k):
            rest = weight - k
            for j_minus in (0, 1):
                if rest - j_minus < 0 or (rest - j_minus) % 2:
                    continue
                for betas in combinations_with_replacement(range(max_index + 1), (rest - j_minus) // 2):
                    exps = [0] * (max_index + 1)
                    for b in betas:
                        exps[b] += 1
                    out.append((IndexSequence(kind_i, I), IndexSequence(kind_j, (j_minus,) + tuple(exps))))
    return out


# ===============================================================
# Generator families
# ===============================================================

def signed_generators(n: int, max_index: int) -> List[CircleMonomial]:
    """(e_sigma alpha_bar)^J with ||J|| = n and every index at most max_index."""
    if n <= 0:
        return []
    alphabet = [gen('e_sigma')] + [gen('alpha_bar', i) for i in range(max_index + 1)]
    return [CircleMonomial(word) for word in combinations_with_replacement(alphabet, n)]


def sigma_plus_generators(i: int, max_index: int) -> List[CircleMonomial]:
    """
    Generators (e_1 alpha beta)^(I,J) o alpha_bar_(m) and (e_1 alpha beta)^(W,Y) o beta_bar_(t) of
    the homology of K_(sigma+i).
    """
    if i == 0:
        return signed_generators(1, max_index)
    out = []
    for I, J in _primed_sequences(i, 'I', 'Jp', max_index):
        prefix = I.generators() + J.generators()
        for m in range(max_index + 1):
            if check_sigma_plus_sequence(I, J, m):
                out.append(CircleMonomial(tuple(prefix) + (gen('alpha_bar', m),)))
    for W, Y in _primed_sequences(i - 1, 'W', 'Y', max_index):
        prefix = W.generators() + Y.generators()
        for t in range(max_index + 1):
            if check_beta_bar_sequence(W, Y, t):
                out.append(CircleMonomial(tuple(prefix) + (gen('beta_bar', t),)))
    return sorted(set(out), key=lambda c: (c.underlying_degree, c))


def rw_generators(n: int, max_index: int) -> List[CircleMonomial]:
    """Classical generators (e_1 alpha)^I of H_* K_n."""
    if n <= 0:
        return []
    alphabet = [gen('e_1')] + [gen('alpha', i) for i in range(max_index + 1)]
    return [CircleMonomial(word) for word in combinations_with_replacement(alphabet, n)]


def fixed_generators(V, max_index: int) -> List[CircleMonomial]:
    """Generators of the Kunneth basis of the fixed points, in the e_0 / a alphabet."""
    out = []
    for m in caruso_factors(V):
        if m == 0:
            out.append(CircleMonomial((E0,)))
            continue
        alphabet = [gen('a', i) for i in range(max_index + 1)]
        out += [CircleMonomial(word) for word in combinations_with_replacement(alphabet, m)]
    return out


def _index_bound(p_max):
    return max(0, int(p_max).bit_length())


def _as_generator_list(circles, p_max):
    return [Monomial((c,)) for c in sorted(circles, key=lambda c: (c.underlying_degree, c))
            if c.underlying_degree <= p_max]


def gen_signed_basis(n: int, region) -> List[Monomial]:
    """
    Exterior generators (e_sigma alpha_bar)^J, ||J|| = n, of the homology of K_(n sigma) with topological
    degree inside the region. n = 0 gives the unit.
    """
    if n == 0:
        return [UNIT]
    p_max = p_bound(region)
    return _as_generator_list(signed_generators(n, _index_bound(p_max)), p_max)


def gen_sigma_plus_basis(i: int, region) -> List[Monomial]:
    """Exterior generators of the homology of K_(sigma+i) inside the region."""
    p_max = p_bound(region)
    return _as_generator_list(sigma_plus_generators(i, _index_bound(p_max)), p_max)


def star_monomials(generators, deg_max: int, degree: Callable = None, include_unit=True) -> List[Monomial]:
    """
    Exterior monomials on a generator list with degree at most deg_max.

    `degree` maps a Monomial to an int and must not decrease when a generator is added; the default is the
    topological degree p.
    """
    degree = degree or (lambda m: m.underlying_degree)
    gens = sorted({as_circle(g.factors[0] if isinstance(g, Monomial) else g)
                   for g in generators if not (isinstance(g, Monomial) and g.is_unit)},
                  key=lambda c: (c.underlying_degree, c))
    out = []

    def extend(start, chosen):
        mono = Monomial(tuple(chosen))
        if chosen or include_unit:
            out.append(mono)
        for k in range(start, len(gens)):
            nxt = Monomial(tuple(chosen) + (gens[k],))
            if degree(nxt) <= deg_max:
                extend(k + 1, chosen + [gens[k]])

    extend(0, [])
    return sorted(out, key=lambda m: (degree(m), m))


def gen_rw_basis(n: int, deg_max: int) -> List[Monomial]:
    """Classical basis of H_* K_n through deg_max, exterior on the (e_1 alpha)^I."""
    if n == 0:
        return [UNIT]
    return star_monomials(rw_generators(n, _index_bound(deg_max)), deg_max)


def gen_fixed_basis(V, deg_max: int) -> List[Monomial]:
    """Kunneth basis of the homology of the fixed points of K_V through deg_max."""
    return star_monomials(fixed_generators(V, _index_bound(deg_max)), deg_max)


def circle_catalog(trivial: int, sign: int, p_max: int) -> List[CircleMonomial]:
    """
    Circle monomials of the unbarred and barred mod 2 alphabets living in K_(trivial + sign sigma).
    """
    k = _index_bound(p_max)
    alphabet = [gen('e_sigma'), gen('e_1')]
    for family in ('alpha_bar', 'beta_bar', 'alpha', 'beta'):
        alphabet += [gen(family, i) for i in range(k + 1)]
    alphabet = [g for g in alphabet if g.underlying_degree <= p_max]
    out = set()
    for length in range(1, trivial + sign + 1):
        for word in combinations_with_replacement(alphabet, length):
            c = CircleMonomial(word)
            if c.space == (trivial, sign) and c.underlying_degree <= p_max:
                out.add(c)
    return sorted(out, key=lambda c: (c.underlying_degree, c))


# ===============================================================
# Comparison maps
# ===============================================================

UNDERLYING = {'e_sigma': lambda g: gen('e_1'),
              'alpha_bar': lambda g: gen('alpha', g.index),
              'beta_bar': lambda g: gen('beta', g.index)}

FIXED = {'e_sigma': lambda g: E0,
         'alpha_bar': lambda g: gen('a', g.index),
         'beta_bar': lambda g: gen('a', g.index)}


def _map_circle(table, c: CircleMonomial) -> CircleMonomial:
    return CircleMonomial(tuple(table[g.family](g) if g.family in table else g for g in c.factors))


def phi_e(m):
    """
    Map to underlying homology: barred generators go to unbarred ones and e_sigma to e_1.
    Circle monomials map to circle monomials, monomials to monomials.
    """
    if isinstance(m, Monomial):
        return Monomial(tuple(_map_circle(UNDERLYING, c) for c in m.factors))
    return _map_circle(UNDERLYING, as_circle(m))


def phi_fixed(m):
    """
    Map to fixed point homology: e_sigma goes to e_0, alpha_bar_(m) to a_(m) and beta_bar_(t) to a_(t).
    """
    if isinstance(m, Monomial):
        return Monomial(tuple(_map_circle(FIXED, c) for c in m.factors))
    return _map_circle(FIXED, as_circle(m))


def a_key(c) -> Tuple[int, ...]:
    """Sorted a-indices of a circle monomial of the classical alphabet; e_0 is the empty word."""
    letters = []
    for g in as_circle(c).factors:
        if g.family == 'e_0':
            continue
        elif g.family == 'a':
            letters.append(g.index)
        elif g.family == 'e_1':
            letters.append(0)
        elif g.family == 'alpha':
            letters.append(g.index + 1)
        elif g.family == 'beta':
            letters += [g.index, g.index]
        else:
            raise ValueError('{} is not in the classical alphabet.'.format(g))
    return tuple(sorted(letters))


def _key_degree(key):
    return sum(2 ** j for j in key)


def monomial_key(m: Monomial) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted(a_key(c) for c in as_monomial(m).factors)) if not m.is_unit else ()


# ===============================================================
# Freeness verification
# ===============================================================

@dataclass
class BWReport:
    space: str
    deg_max: int
    ok: bool = True
    rows: List[Dict] = field(default_factory=list)
    first_failure: Optional[Dict] = None

    def to_json(self):
        return {'space': self.space, 'degmax': self.deg_max, 'status': 'PASS' if self.ok else 'FAIL',
                'rows': self.rows, 'first_failure': self.first_failure}


def _compare_side(report, side, images, target, deg_max):
    """Degreewise comparison of image keys against target keys. Returns False at the first mismatch."""
    got, expected = defaultdict(list), defaultdict(list)
    for key in images:
        got[sum(_key_degree(k) for k in key)].append(key)
    for key in target:
        expected[sum(_key_degree(k) for k in key)].append(key)
    for d in range(deg_max + 1):
        g, e = got.get(d, []), expected.get(d, [])
        status = 'PASS'
        if len(g) != len(e):
            status = 'FAIL: count'
        elif len(set(g)) != len(g):
            status = 'FAIL: not injective'
        elif set(g) != set(e):
            status = 'FAIL: images differ'
        row = {'side': side, 'degree': d, 'expected': len(e), 'got': len(g), 'status': status}
        report.rows.append(row)
        if status != 'PASS':
            report.ok = False
            report.first_failure = row
            logger.info('Freeness check fails on the %s side in degree %d', side, d)
            return False
    return True


def verify_bw(candidates, V, deg_max: int) -> BWReport:
    """
    Check that the exterior monomials on `candidates` map bijectively, degree by degree up to deg_max, onto
    the classical basis of H_* K_|V| under phi_e and onto the Kunneth basis of the fixed points under
    phi_fixed.

    The fixed point side needs every candidate generator of topological degree up to
    candidate_region(V, deg_max).
    """
    V = parse_space(V)
    report = BWReport(format_space(V), deg_max)
    caruso_factors(V)

    monos = star_monomials(candidates, deg_max)
    images = [monomial_key(phi_e(m)) for m in monos]
    target = [monomial_key(m) for m in gen_rw_basis(V.p, deg_max)]
    if not _compare_side(report, 'underlying', images, target, deg_max):
        return report

    monos = star_monomials(candidates, deg_max, degree=fixed_point_degree)
    images = [monomial_key(phi_fixed(m)) for m in monos]
    target = [monomial_key(m) for m in gen_fixed_basis(V, deg_max)]
    _compare_side(report, 'fixed', images, target, deg_max)
    return report


def fixed_point_degree(m) -> int:
    """Degree p - q seen by the fixed point map."""
    return m.bidegree.p - m.bidegree.q


def candidate_region(V, deg_max: int) -> int:
    """Topological degree bound of the candidate generators verify_bw needs."""
    V = parse_space(V)
    return 2 * deg_max + V.p


def degree_counts(monomials, degree: Callable = None) -> Counter:
    degree = degree or (lambda m: m.underlying_degree)
    return Counter(degree(m) for m in monomials)
