"""
Bar complexes and the RO(C2)-graded bar spectral sequence.

The classical part computes Tor over augmented F2 algebras with monomial bases from the bar complex. The
equivariant part assembles the E1 page of the bar spectral sequence of a Hopf algebra presentation (one free
cone per bar word), installs d1 as typed summand maps and computes E2 per bidegree from F2 matrices.

Date: October 2026
Author: equicones developers
"""

import logging
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Hashable, List, Optional, Tuple

import numpy as np

from equicones import hopf
from equicones.coeffs import (BiDegree, GradedModule, M2Element, M2_ONE, ONE, Reconstruction, Region, Summand,
                              TruncationWarning, bidegree_sum, m2_basis_element, m2_cone_part, m2_mul,
                              map_tasks, matmul_f2, matrix_rank_f2, reconstruct_module)
from equicones.hopf import HopfPresentation, Monomial, gen


logger = logging.getLogger(__name__)


# ===============================================================
# Classical algebras
# ===============================================================

@dataclass(frozen=True)
class F2Algebra:
    """
    Augmented F2 algebra with a monomial basis: products of basis elements are basis elements or zero.

    `elements` spans the augmentation ideal, `table` lists the nonzero products and `generators` the
    indecomposable elements.
    """
    name: str
    elements: Tuple[Hashable, ...]
    degrees: Dict[Hashable, int]
    table: Dict[Tuple[Hashable, Hashable], Hashable]
    generators: Tuple[Hashable, ...] = ()
    labels: Dict[Hashable, str] = field(default_factory=dict)

    def degree(self, k) -> int:
        return self.degrees[k]

    def mul(self, k1, k2) -> Optional[Hashable]:
        return self.table.get((k1, k2))

    def label(self, k) -> str:
        return self.labels.get(k, str(k))


def exterior_algebra(degrees: List[int], names: List[str] = None) -> F2Algebra:
    """E[x_1, ..., x_n] with |x_i| = degrees[i]."""
    n = len(degrees)
    if names is None:
        names = ['x{}'.format(i + 1) for i in range(n)] if n > 1 else ['x']
    keys = []
    for mask in range(1, 2 ** n):
        keys.append(tuple(i for i in range(n) if mask >> i & 1))
    deg = {k: sum(degrees[i] for i in k) for k in keys}
    table = {}
    for k1 in keys:
        for k2 in keys:
            if not set(k1) & set(k2):
                table[(k1, k2)] = tuple(sorted(k1 + k2))
    labels = {k: ''.join(names[i] for i in k) for k in keys}
    keys = sorted(keys, key=lambda k: (deg[k], k))
    return F2Algebra('E[{}]'.format(', '.join(names)), tuple(keys), deg, table,
                     tuple((i,) for i in range(n)), labels)


def truncated_polynomial(degree: int, height: int) -> F2Algebra:
    """F2[x]/(x^height) with |x| = degree."""
    keys = tuple(range(1, height))
    deg = {k: k * degree for k in keys}
    table = {(i, j): i + j for i in keys for j in keys if i + j < height}
    labels = {k: 'x' if k == 1 else 'x^{}'.format(k) for k in keys}
    return F2Algebra('F2[x]/(x^{})'.format(height), keys, deg, table, (1,), labels)


def underlying_algebra(A: HopfPresentation, deg_max: int) -> F2Algebra:
    """The star algebra of a presentation forgetting to F2, graded by topological degree."""
    keys = tuple(A.basis(deg_max, include_unit=False))
    deg = {m: m.underlying_degree for m in keys}
    present = set(keys)
    table = {}
    for m1 in keys:
        for m2 in keys:
            m = hopf.star_mul(m1, m2)
            if m is not None and m in present:
                table[(m1, m2)] = m
    gens = tuple(Monomial((c,)) for c in A.generators if c.underlying_degree <= deg_max)
    return F2Algebra(A.name, keys, deg, table, gens, {m: str(m) for m in keys})


# ===============================================================
# Bar words and word complexes
# ===============================================================

@dataclass(frozen=True, order=True)
class BarWord:
    entries: Tuple = ()

    @property
    def t(self) -> int:
        return len(self.entries)

    @property
    def shift(self) -> BiDegree:
        """Sphere shift (t, 0) plus the entry bidegrees."""
        return BiDegree(self.t, 0) + bidegree_sum(e.bidegree for e in self.entries)

    def label(self, fmt: Callable = str) -> str:
        return '[' + '|'.join(fmt(e) for e in self.entries) + ']'

    def __str__(self):
        return self.label()


def bar_boundary(word: BarWord, mul: Callable) -> Dict[BarWord, int]:
    """
    d(k_1|...|k_t) = sum_i (k_1|...|k_i k_(i+1)|...|k_t) over F2; `mul` returns None for a zero product.
    """
    out = Counter()
    e = word.entries
    for i in range(len(e) - 1):
        prod = mul(e[i], e[i + 1])
        if prod is not None:
            out[BarWord(e[:i] + (prod,) + e[i + 2:])] += 1
    return {w: 1 for w, c in out.items() if c % 2}


def _star(m1, m2):
    return hopf.star_mul(m1, m2)


class WordComplex:
    """
    Chain complex spanned by bar words, split by a grading key; d maps the key (t, g) to down((t, g)).
    Boundary matrices and their ranks are built once per key.
    """

    def __init__(self, words: Dict[Tuple, List[BarWord]], mul: Callable, down: Callable):
        self.words = {k: sorted(v) for k, v in words.items()}
        self.mul = mul
        self.down = down
        self.position = {k: {w: i for i, w in enumerate(v)} for k, v in self.words.items()}
        self._matrices = {}
        self._ranks = {}

    def dim(self, key) -> int:
        return len(self.words.get(key, []))

    def matrix(self, key) -> np.ndarray:
        """Matrix of d on the words of `key` (columns) into the words of down(key) (rows), read only."""
        if key not in self._matrices:
            sources = self.words.get(key, [])
            rows = self.position.get(self.down(key), {})
            mat = np.zeros((len(rows), len(sources)), dtype=np.uint8)
            for j, w in enumerate(sources):
                for v in bar_boundary(w, self.mul):
                    if v in rows:
                        mat[rows[v], j] ^= 1
            mat.setflags(write=False)
            self._matrices[key] = mat
        return self._matrices[key]

    def rank(self, key) -> int:
        if key not in self._ranks:
            self._ranks[key] = matrix_rank_f2(self.matrix(key))
        return self._ranks[key]

    def homology_dim(self, key, up_key) -> int:
        n = self.dim(key)
        if not n:
            return 0
        return n - self.rank(key) - self.rank(up_key)

    def is_cycle(self, word, key) -> bool:
        return not bar_boundary(word, self.mul)

    def is_boundary(self, word, key, up_key) -> bool:
        if word not in self.position.get(key, {}):
            return False
        vec = np.zeros((1, self.dim(key)), dtype=np.uint8)
        vec[0, self.position[key][word]] = 1
        return matrix_rank_f2(np.vstack([self.matrix(up_key).T, vec])) == self.rank(up_key)


def enumerate_words(entries, t_max, degree, keep):
    """
    All words of length <= t_max in `entries` whose partial grading `keep` accepts. `degree(word)` must be
    monotone under appending entries for the pruning to be exact.
    """
    out = defaultdict(list)

    def extend(prefix):
        word = BarWord(tuple(prefix))
        out[(word.t, degree(word))].append(word)
        if word.t == t_max:
            return
        for e in entries:
            nxt = BarWord(tuple(prefix) + (e,))
            if keep(nxt):
                extend(prefix + [e])

    extend([])
    return out


def bar_complex_f2(A, t_max: int, deg_max: int) -> WordComplex:
    """
    Bar complex of an augmented F2 algebra (or of the underlying algebra of a presentation), split by
    (t, internal degree), with t <= t_max and t + internal degree <= deg_max + 1.
    """
    if isinstance(A, HopfPresentation):
        A = underlying_algebra(A, deg_max)

    def internal(w):
        return sum(A.degree(e) for e in w.entries)

    words = enumerate_words(A.elements, t_max, internal, lambda w: w.t + internal(w) <= deg_max + 1)
    return WordComplex(words, A.mul, lambda key: (key[0] - 1, key[1]))


@dataclass(frozen=True)
class TorClass:
    """
    `suspension` s(x) = [x], `transpotence` phi^(k)(x) = [x|...|x] with 2^k copies, or a `product`.
    """
    kind: str
    witness: BarWord
    element: object = None
    k: int = 0

    @property
    def degree(self) -> int:
        return self.witness.t

    @property
    def shift(self) -> BiDegree:
        return self.witness.shift

    def __str__(self):
        if self.kind == 'suspension':
            return 's({})'.format(self.element)
        if self.kind == 'transpotence':
            return 'phi^({})({})'.format(self.k, self.element)
        return str(self.witness)


@dataclass
class TorResult:
    algebra: str
    dims: Dict[Tuple[int, int], int]
    classes: List[TorClass]

    def dim(self, s, t) -> int:
        return self.dims.get((s, t), 0)


def _transpotence_powers(s_max):
    k = 1
    while 2 ** k <= s_max:
        yield k
        k += 1


def tor_f2(A, s_max: int, deg_max: int, threads: int = 1) -> TorResult:
    """
    Tor over an augmented F2 algebra from the bar complex, dims keyed by (s, total degree s + internal) for
    s <= s_max and total degree <= deg_max, together with the surviving suspensions and transpotences.
    """
    if isinstance(A, HopfPresentation):
        A = underlying_algebra(A, deg_max)
    cx = bar_complex_f2(A, s_max + 1, deg_max)
    keys = [k for k in sorted(cx.words) if k[0] <= s_max and k[0] + k[1] <= deg_max]

    def task(key):
        return key, cx.homology_dim(key, (key[0] + 1, key[1]))

    dims = {}
    for (s, internal), n in map_tasks(task, keys, threads, desc='tor'):
        if n:
            dims[(s, s + internal)] = n

    classes = []
    for x in A.generators:
        d = A.degree(x)
        word = BarWord((x,))
        if 1 + d <= deg_max and not cx.is_boundary(word, (1, d), (2, d)):
            classes.append(TorClass('suspension', word, A.label(x)))
        for k in _transpotence_powers(s_max):
            n = 2 ** k
            word = BarWord((x,) * n)
            if n + n * d > deg_max:
                break
            key = (n, n * d)
            if cx.is_cycle(word, key) and not cx.is_boundary(word, key, (n + 1, n * d)):
                classes.append(TorClass('transpotence', word, A.label(x), k))
    logger.info('Tor over %s: %d nonzero bidegrees', A.name, len(dims))
    return TorResult(A.name, dims, classes)


def koszul_tor_dims(generators: List[Tuple[int, Optional[int]]], s_max: int, deg_max: int) -> Dict:
    """
    Closed form Tor dimensions over a tensor product of truncated polynomial algebras F2[x]/(x^h), given as
    (|x|, h) pairs (h = 2 exterior, h = None polynomial): a divided power algebra on sx for h = 2, E[sx]
    tensor a divided power algebra on the transpotence (bidegree (2, h|x| + 2)) for h > 2, E[sx] for h = None.
    """
    series = Counter({(0, 0): 1})
    for d, h in generators:
        factor = Counter()
        if h == 2:
            for j in range(s_max + 1):
                factor[(j, j * (d + 1))] += 1
        else:
            for e in (0, 1):
                for j in range(s_max // 2 + 1 if h else 1):
                    factor[(e + 2 * j, e * (d + 1) + j * ((h or 0) * d + 2))] += 1
        new = Counter()
        for (s1, t1), c1 in series.items():
            for (s2, t2), c2 in factor.items():
                if s1 + s2 <= s_max and t1 + t2 <= deg_max:
                    new[(s1 + s2, t1 + t2)] += c1 * c2
        series = new
    return dict(series)


# ===============================================================
# Pages of the equivariant spectral sequences
# ===============================================================

CONE_CONE = 'cone-cone'
TOWER_TOWER = 'tower-tower'
TOWER_CONE = 'tower-cone'
CONE_TOWER = 'cone-tower'


@dataclass(frozen=True)
class SummandMap:
    """
    Component of a differential between two summands, referenced as (filtration, index).

    `coeff` multiplies the source generator; `annotation` records the net shift of a hidden extension on the
    target.
    """
    source: Tuple[int, int]
    target: Tuple[int, int]
    coeff: M2Element
    kind: str
    annotation: Optional[BiDegree] = None


@dataclass
class Page:
    r: int
    filtrations: Dict[int, GradedModule]
    words: Dict[int, List]
    differentials: List[SummandMap]
    t_max: int
    region: Region
    name: str = ''
    orbits: Dict[int, List[str]] = field(default_factory=dict)

    def summand(self, ref) -> Summand:
        t, i = ref
        return self.filtrations[t].summands[i]

    def label(self, ref) -> str:
        return self.summand(ref).label

    @cached_property
    def maps_from(self) -> Dict[Tuple[int, int], List[SummandMap]]:
        out = defaultdict(list)
        for f in self.differentials:
            out[f.source].append(f)
        return out

    def with_differentials(self, maps, r=None):
        return Page(r or self.r, self.filtrations, self.words, list(maps), self.t_max, self.region, self.name,
                    self.orbits)

    def annotations(self) -> List[Dict]:
        out = []
        for f in self.differentials:
            if f.annotation is not None:
                out.append({'kind': 'hidden-extension', 'shift': f.annotation.to_json(),
                            'from': self.label(f.source), 'to': self.label(f.target)})
        return out

    def to_json(self):
        filtrations = {}
        for t in sorted(self.filtrations):
            if t > self.t_max:
                continue
            module = self.filtrations[t].to_json()
            if t in self.orbits:
                for entry, orbit in zip(module['summands'], self.orbits[t]):
                    entry['orbit'] = orbit
            filtrations[str(t)] = module
        out = {'r': self.r,
               'filtrations': filtrations,
               'd': [{'from': self.label(f.source), 'to': self.label(f.target), 'coeff': f.coeff.to_json()}
                     for f in self.differentials if f.source[0] <= self.t_max]}
        if self.orbits:
            out['annotations'] = self.annotations()
        return out

    @classmethod
    def from_json(cls, data, region=None):
        """Charts only need the modules and the labelled differentials."""
        filtrations = {int(t): GradedModule.from_json(m) for t, m in data['filtrations'].items()}
        refs = {s.label: (t, i) for t, m in filtrations.items() for i, s in enumerate(m.summands)}
        maps = []
        for d in data.get('d', []):
            if d['from'] in refs and d['to'] in refs:
                src, tgt = refs[d['from']], refs[d['to']]
                kind = '{}-{}'.format(filtrations[src[0]].summands[src[1]].kind,
                                      filtrations[tgt[0]].summands[tgt[1]].kind)
                maps.append(SummandMap(src, tgt, M2Element.from_json(d['coeff']), kind))
        t_max = max(filtrations) if filtrations else 0
        return cls(int(data.get('r', 1)), filtrations, {}, maps, t_max, region or _page_region(filtrations))


def _page_region(filtrations):
    cones = [s.shift for m in filtrations.values() for s in m.cones()]
    towers = [s.p0 for m in filtrations.values() for s in m.towers()]
    ps = [d.p for d in cones] + towers or [0]
    qs = [d.q for d in cones] or [0]
    return Region(min(ps + [0]) - 1, max(ps) + 1, min(qs + [0]) - 2, max(qs) + 2)


def window_keep(region: Region):
    """
    Whether a summand generated in bidegree s can be nonzero in the region or one step to its right: its
    upper cone needs s.p <= pMax + 1, its lower cone s.p - s.q <= pMax + 1 - qMin.
    """
    bound = region.p_max + 1 - region.q_min

    def keep(s: BiDegree) -> bool:
        return s.p <= region.p_max + 1 or s.p - s.q <= bound
    return keep


def entry_basis(A: HopfPresentation, keep: Callable) -> List[Monomial]:
    """Non unit exterior monomials m of the presentation with keep(|m| + (1, 0))."""
    gens = sorted(A.generators, key=lambda c: (c.underlying_degree, c))
    out = []

    def extend(start, chosen):
        for k in range(start, len(gens)):
            m = Monomial(tuple(chosen) + (gens[k],))
            if keep(m.bidegree + ONE):
                out.append(m)
                extend(k + 1, chosen + [gens[k]])

    extend(0, [])
    return sorted(out, key=lambda m: (m.underlying_degree, m.bidegree.q, m))


def bar_e1_equivariant(A: HopfPresentation, t_max: int, region: Region) -> Page:
    """
    E1 page: filtration t carries one free cone per bar word of length t, generated in (t, 0) plus the
    entry bidegrees. Words of length t_max + 1 are kept for the boundaries into filtration t_max.
    """
    keep = window_keep(region)
    entries = entry_basis(A, keep)
    grouped = enumerate_words(entries, t_max + 1, lambda w: w.shift, lambda w: keep(w.shift))
    words = defaultdict(list)
    for (t, _), ws in grouped.items():
        words[t] += ws
    filtrations = {}
    for t in range(t_max + 2):
        ws = sorted(words.get(t, []), key=lambda w: (w.shift, w))
        words[t] = ws
        filtrations[t] = GradedModule(tuple(Summand.cone(w.shift, w.label()) for w in ws))
    logger.info('Bar E1 of %s: %d words up to t = %d', A.name, sum(len(v) for v in words.values()), t_max + 1)
    return Page(1, filtrations, dict(words), [], t_max, region, A.name)


def bar_d1(page: Page) -> Page:
    """
    d1 between free cones: the bar differential on the words, every component with coefficient 1.
    """
    position = {t: {w: i for i, w in enumerate(ws)} for t, ws in page.words.items()}
    maps = []
    for t in sorted(page.words):
        if t < 2:
            continue
        for i, w in enumerate(page.words[t]):
            for v in sorted(bar_boundary(w, _star)):
                j = position[t - 1].get(v)
                if j is not None:
                    maps.append(SummandMap((t, i), (t - 1, j), M2_ONE, CONE_CONE))
    return page.with_differentials(maps)


# ===============================================================
# Per bidegree linear algebra
# ===============================================================

def template_entry(source: Summand, target: Summand, f: SummandMap, x: BiDegree) -> int:
    """
    Matrix entry of a summand map at bidegree x of the source.

    cone to cone: the source class at x times the coefficient; tower to tower: the augmentation of the
    coefficient; tower to cone: onto the upper cone of the target one step to the left; cone to tower: zero.
    """
    y = x - ONE
    if not source.dim(x) or not target.dim(y):
        return 0
    if f.kind == CONE_CONE:
        return 1 if m2_mul(m2_basis_element(x - source.shift), f.coeff) else 0
    if f.kind == TOWER_TOWER:
        return 1 if f.coeff else 0
    if f.kind == TOWER_CONE:
        return 1 if m2_cone_part(y - target.shift) == 'neg' else 0
    return 0


def page_matrix(page: Page, t: int, x: BiDegree) -> np.ndarray:
    """
    Matrix of d_r from filtration t at bidegree x into filtration t - r at x - (1, 0).
    """
    r = page.r
    source = page.filtrations.get(t)
    target = page.filtrations.get(t - r)
    if source is None or target is None:
        return np.zeros((0, 0), dtype=np.uint8)
    cols = [i for i, s in enumerate(source.summands) if s.dim(x)]
    rows = {j: k for k, j in enumerate(j for j, s in enumerate(target.summands) if s.dim(x - ONE))}
    mat = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for c, i in enumerate(cols):
        for f in page.maps_from.get((t, i), []):
            j = f.target[1]
            if j in rows and template_entry(source.summands[i], target.summands[j], f, x):
                mat[rows[j], c] ^= 1
    return mat


def check_d_squared(page: Page, region: Region = None) -> List[Tuple[int, BiDegree]]:
    """Bidegrees (t, x) where d o d is nonzero; empty when the page is a complex."""
    region = region or page.region
    bad = []
    for t in range(2 * page.r, page.t_max + 2):
        for x in region.bidegrees():
            first = page_matrix(page, t, x)
            second = page_matrix(page, t - page.r, x - ONE)
            if first.size and second.size and matmul_f2(second, first).any():
                bad.append((t, x))
    return bad


@dataclass
class E2Table:
    region: Region
    t_max: int
    e1: Dict[Tuple[int, BiDegree], int]
    dims: Dict[Tuple[int, BiDegree], int]
    generators: Dict[Tuple[int, BiDegree], int] = field(default_factory=dict)
    classes: List[TorClass] = field(default_factory=list)
    clipped: List[Tuple[str, str]] = field(default_factory=list)
    annotations: List[Dict] = field(default_factory=list)
    reconstruction: Dict[int, Reconstruction] = field(default_factory=dict)
    name: str = ''

    def dim(self, t, x) -> int:
        return self.dims.get((t, x), 0)

    def total(self, x) -> int:
        return sum(n for (t, y), n in self.dims.items() if y == x)

    def generator_counts(self, p_max=None) -> Counter:
        """Multiset of generator bidegrees over all filtrations."""
        out = Counter()
        for (t, s), n in self.generators.items():
            if p_max is None or s.p <= p_max:
                out[s] += n
        return out

    def to_csv(self) -> str:
        lines = ['p,q,t,dim']
        for (t, x), n in sorted(self.dims.items(), key=lambda kv: (kv[0][1].p, kv[0][1].q, kv[0][0])):
            lines.append('{},{},{},{}'.format(x.p, x.q, t, n))
        return '\n'.join(lines) + '\n'

    def to_json(self):
        return {'name': self.name,
                'region': str(self.region),
                'tmax': self.t_max,
                'dims': [{'t': t, 'bidegree': x.to_json(), 'e1': self.e1.get((t, x), 0), 'e2': n}
                         for (t, x), n in sorted(self.dims.items(), key=lambda kv: (kv[0][0], kv[0][1]))],
                'generators': [{'t': t, 'shift': s.to_json(), 'count': n}
                               for (t, s), n in sorted(self.generators.items())],
                'classes': [{'class': str(c), 'witness': str(c.witness), 'shift': c.shift.to_json()}
                            for c in self.classes],
                'clipped': [list(c) for c in self.clipped],
                'annotations': self.annotations,
                'reconstruction': {str(t): {'ok': r.ok, 'residual': len(r.residual)}
                                   for t, r in sorted(self.reconstruction.items())}}


def clipped_maps(page: Page, region: Region) -> List[Tuple[str, str]]:
    """Maps with exactly one of their two summands generated inside the region."""
    def inside(s: Summand):
        if s.is_cone:
            return region.contains(s.shift)
        return region.p_min <= s.p0 <= region.p_max

    out = []
    for f in page.differentials:
        if f.source[0] > page.t_max:
            continue
        a, b = page.summand(f.source), page.summand(f.target)
        if inside(a) != inside(b):
            out.append((a.label, b.label))
    return out


def page_dims(page: Page, region: Region, threads: int = 1):
    """E1 and E_(r+1) dimensions per (t, x) inside the region."""
    tasks = [(t, x) for t in range(page.t_max + 1) for x in region.bidegrees()]
    ranks = {}

    def rank(t, x):
        if (t, x) not in ranks:
            ranks[(t, x)] = matrix_rank_f2(page_matrix(page, t, x))
        return ranks[(t, x)]

    def task(key):
        t, x = key
        n = page.filtrations[t].dim(x) if t in page.filtrations else 0
        if not n:
            return key, 0, 0
        return key, n, n - rank(t, x) - rank(t + page.r, x + ONE)

    e1, dims = {}, {}
    for key, n, out in map_tasks(task, tasks, threads, desc='E{}'.format(page.r + 1)):
        if n:
            e1[key] = n
        if out:
            dims[key] = out
    return e1, dims


def _unit_layer(page: Page) -> WordComplex:
    """Word complex of the page split by (t, generator bidegree); d1 has unit coefficients on it."""
    words = defaultdict(list)
    for t, ws in page.words.items():
        for w in ws:
            words[(t, w.shift)].append(w)
    return WordComplex(words, _star, lambda key: (key[0] - 1, key[1] - ONE))


def _bar_classes(page: Page, layer: WordComplex, A_generators) -> List[TorClass]:
    region = page.region
    classes = []
    for m in A_generators:
        word = BarWord((m,))
        s = word.shift
        if word.t <= page.t_max and region.contains(s) and not layer.is_boundary(word, (1, s), (2, s + ONE)):
            classes.append(TorClass('suspension', word, m))
        for k in _transpotence_powers(page.t_max):
            word = BarWord((m,) * 2 ** k)
            s = word.shift
            if not region.contains(s):
                break
            key = (word.t, s)
            if layer.is_cycle(word, key) and not layer.is_boundary(word, key, (word.t + 1, s + ONE)):
                classes.append(TorClass('transpotence', word, m, k))
    return classes


def bar_e2(page: Page, region: Region = None, threads: int = 1) -> E2Table:
    """
    E2 of the bar spectral sequence per bidegree and filtration inside the region, with the generator
    bidegrees of the unit coefficient layer, the surviving suspensions and transpotences and a greedy cone
    reconstruction per filtration. Maps straddling the region boundary raise a TruncationWarning.
    """
    region = region or page.region
    e1, dims = page_dims(page, region, threads)

    layer = _unit_layer(page)
    bound = region.p_max - region.q_min
    generators, all_generators = {}, {}
    for (t, s) in sorted(layer.words):
        if t > page.t_max or not (s.p <= region.p_max or s.p - s.q <= bound):
            continue
        n = layer.homology_dim((t, s), (t + 1, s + ONE))
        if n:
            all_generators[(t, s)] = n
            if region.contains(s):
                generators[(t, s)] = n

    gens = [w.entries[0] for w in page.words.get(1, []) if len(w.entries[0].factors) == 1]
    classes = _bar_classes(page, layer, gens)

    reconstruction = {}
    for t in range(page.t_max + 1):
        candidates = []
        for (tt, s), n in sorted(all_generators.items(), key=lambda kv: kv[0][1]):
            if tt == t:
                candidates += [Summand.cone(s)] * n
        level = {x: n for (tt, x), n in dims.items() if tt == t}
        reconstruction[t] = reconstruct_module(level, candidates, region)

    clipped = clipped_maps(page, region)
    if clipped:
        warnings.warn(TruncationWarning('{} d{} components straddle the region {}: {}'.format(
            len(clipped), page.r, region, ', '.join('{} -> {}'.format(a, b) for a, b in clipped[:5]))))
    return E2Table(region, page.t_max, e1, dims, generators, classes, clipped,
                   reconstruction=reconstruction, name=page.name)


# ===============================================================
# Circle action on bar words and cycle identification
# ===============================================================

def iterated_coproduct(k: Monomial, n: int) -> Dict[Tuple[Monomial, ...], M2Element]:
    """psi^(n-1)(k) as a dict of n-tuples, through the generator coproducts."""
    acc = {(k,): M2_ONE}
    for _ in range(n - 1):
        nxt = {}
        for parts, c in acc.items():
            for (l, r), cc in hopf.monomial_coproduct(parts[-1]).items():
                hopf.add_term(nxt, parts[:-1] + (l, r), c * cc)
        acc = nxt
    return acc


def circle_on_bar_word(w: BarWord, k) -> Dict[BarWord, M2Element]:
    """
    (k_1|...|k_t) o k = sum (k_1 o k'|...|k_t o k^(t)) over the iterated coproduct of k.
    """
    k = hopf.as_monomial(k)
    if not w.entries:
        return {w: M2_ONE} if k.is_unit else {}
    out = {}
    for parts, c in iterated_coproduct(k, w.t).items():
        partial = {(): c}
        for entry, part in zip(w.entries, parts):
            nxt = {}
            for m, cm in hopf.circle_product(entry, part).items():
                if m.is_unit:
                    continue
                for prefix, cp in partial.items():
                    hopf.add_term(nxt, prefix + (m,), cp * cm)
            partial = nxt
            if not partial:
                break
        for entries, cw in partial.items():
            hopf.add_term(out, BarWord(entries), cw)
    return out


def bar_differential(chain: Dict[BarWord, M2Element]) -> Dict[BarWord, M2Element]:
    """d1 on an M2 combination of bar words."""
    out = {}
    for w, c in chain.items():
        for v in bar_boundary(w, _star):
            hopf.add_term(out, v, c)
    return out


UNIDENTIFIED = 'UNIDENTIFIED'


@dataclass
class Identification:
    matches: List[Tuple[TorClass, hopf.CircleMonomial]]
    unidentified: List[TorClass]

    def to_json(self):
        return {'matches': [{'class': str(c), 'shift': c.shift.to_json(), 'image': str(m)}
                            for c, m in self.matches],
                'unidentified': [{'class': str(c), 'shift': c.shift.to_json(), 'status': UNIDENTIFIED}
                                 for c in self.unidentified]}


def _deloop(c: hopf.CircleMonomial, k: int) -> Optional[hopf.CircleMonomial]:
    """
    Candidate image of phi^(k)(c): one e_sigma becomes bbar_(k), or without e_sigma alpha_(k-1) is added;
    the alpha_bar indices move up by k in both cases.
    """
    factors = list(c.factors)
    n_sigma = sum(1 for g in factors if g.family == 'e_sigma')
    moved = [gen('alpha_bar', g.index + k) for g in factors if g.family == 'alpha_bar']
    if any(g.family not in ('e_sigma', 'alpha_bar') for g in factors):
        return None
    if n_sigma == 1:
        return hopf.CircleMonomial(tuple(moved) + (gen('beta_bar', k),))
    if n_sigma == 0:
        return hopf.CircleMonomial(tuple(moved) + (gen('alpha', k - 1),))
    return None


def identify_permanent_cycles(e2: E2Table, catalog: List[hopf.CircleMonomial]) -> Identification:
    """
    Match suspensions [x] with e_1 o x and transpotences with their delooped circle monomials, requiring
    the candidate to be in the catalog and in the bidegree of the class.
    """
    known = set(catalog)
    matches, unidentified = [], []
    for cls in e2.classes:
        element = cls.element
        if not isinstance(element, Monomial) or len(element.factors) != 1:
            unidentified.append(cls)
            continue
        c = element.factors[0]
        if cls.kind == 'suspension':
            image = hopf.circle(hopf.CircleMonomial((gen('e_1'),)), c)
        else:
            image = _deloop(c, cls.k)
        if image is not None and image in known and image.bidegree == cls.shift:
            matches.append((cls, image))
        else:
            unidentified.append(cls)
    logger.info('Identified %d classes, %d unidentified', len(matches), len(unidentified))
    return Identification(matches, unidentified)
