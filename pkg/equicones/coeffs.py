"""
Coefficient ring arithmetic. Bidegrees, the RO(C2)-graded homology of a point M2, the free cone and induced
tower summands, graded modules and the per-bidegree linear algebra over F2.

Date: October 2026
Author: equicones developers
"""

import logging
from dataclasses import dataclass
from multiprocessing.pool import ThreadPool
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from equicones import config


logger = logging.getLogger(__name__)


class TruncationWarning(UserWarning):
    """A differential whose source or target lies outside the computed region."""


# ===============================================================
# Bidegrees
# ===============================================================

@dataclass(frozen=True, order=True)
class BiDegree:
    """
    Bidegree (p, q) of the virtual representation (p - q) + q sigma.
    """
    p: int
    q: int

    def __add__(self, other):
        return BiDegree(self.p + other.p, self.q + other.q)

    def __sub__(self, other):
        return BiDegree(self.p - other.p, self.q - other.q)

    def __neg__(self):
        return BiDegree(-self.p, -self.q)

    def __mul__(self, k):
        return BiDegree(k * self.p, k * self.q)

    __rmul__ = __mul__

    def __str__(self):
        return '({},{})'.format(self.p, self.q)

    def to_json(self):
        return [self.p, self.q]

    @classmethod
    def from_json(cls, data):
        return cls(int(data[0]), int(data[1]))


ZERO = BiDegree(0, 0)
SIGMA = BiDegree(1, 1)
RHO = BiDegree(2, 1)
ONE = BiDegree(1, 0)


def bidegree_sum(degrees: Iterable[BiDegree]) -> BiDegree:
    total = ZERO
    for d in degrees:
        total = total + d
    return total


@dataclass(frozen=True)
class Region:
    """
    Rectangular truncation window pMin..pMax x qMin..qMax (bounds included).
    """
    p_min: int
    p_max: int
    q_min: int
    q_max: int

    def __post_init__(self):
        if self.p_min > self.p_max or self.q_min > self.q_max:
            raise ValueError('The region {} is empty.'.format(self))

    @classmethod
    def parse(cls, text):
        return cls(*config.parse_region(text))

    def __str__(self):
        return '{}:{}:{}:{}'.format(self.p_min, self.p_max, self.q_min, self.q_max)

    def contains(self, d: BiDegree) -> bool:
        return self.p_min <= d.p <= self.p_max and self.q_min <= d.q <= self.q_max

    def bidegrees(self) -> List[BiDegree]:
        return [BiDegree(p, q) for p in range(self.p_min, self.p_max + 1)
                for q in range(self.q_min, self.q_max + 1)]


def p_bound(region) -> int:
    """Largest topological degree of a Region, or the int itself."""
    return region.p_max if isinstance(region, Region) else int(region)


# ===============================================================
# The coefficient ring M2
# ===============================================================

Term = Tuple[int, int]


def pos_degree(term: Term) -> BiDegree:
    """Bidegree of a^i u^j."""
    i, j = term
    return BiDegree(-i, -i - j)


def neg_degree(term: Term) -> BiDegree:
    """Bidegree of theta / (a^i u^j)."""
    i, j = term
    return BiDegree(i, i + j + 2)


def _term_str(term, theta=False):
    i, j = term
    body = ''
    if i:
        body += 'a' if i == 1 else 'a^{}'.format(i)
    if j:
        body += 'u' if j == 1 else 'u^{}'.format(j)
    if theta:
        return 'theta/{}'.format(body) if body else 'theta'
    return body or '1'


@dataclass(frozen=True)
class M2Element:
    """
    Element of M2 = F2[a, u] + F2[a, u]/(a^inf, u^inf){theta}.

    `pos` holds the exponents (i, j) of the positive cone monomials a^i u^j and `neg` the exponents of the
    negative cone classes theta/(a^i u^j). Coefficients are in F2, so each term is present at most once and
    addition is the symmetric difference.
    """
    pos: FrozenSet[Term] = frozenset()
    neg: FrozenSet[Term] = frozenset()

    def __post_init__(self):
        pos = frozenset((int(i), int(j)) for i, j in self.pos)
        neg = frozenset((int(i), int(j)) for i, j in self.neg)
        if any(min(t) < 0 for t in pos | neg):
            raise ValueError('M2 exponents must be non negative.')
        object.__setattr__(self, 'pos', pos)
        object.__setattr__(self, 'neg', neg)

    @classmethod
    def monomial(cls, i=0, j=0):
        return cls(pos=frozenset({(i, j)}))

    @classmethod
    def theta(cls, i=0, j=0):
        return cls(neg=frozenset({(i, j)}))

    def __add__(self, other):
        return M2Element(self.pos ^ other.pos, self.neg ^ other.neg)

    def __mul__(self, other):
        return m2_mul(self, other)

    def __bool__(self):
        return bool(self.pos or self.neg)

    def __str__(self):
        terms = [_term_str(t) for t in sorted(self.pos)]
        terms += [_term_str(t, theta=True) for t in sorted(self.neg)]
        return ' + '.join(terms) if terms else '0'

    def is_one(self):
        return self.pos == {(0, 0)} and not self.neg

    def terms(self) -> List[Tuple[str, Term]]:
        return [('pos', t) for t in sorted(self.pos)] + [('neg', t) for t in sorted(self.neg)]

    def bidegrees(self) -> List[BiDegree]:
        return [pos_degree(t) for t in sorted(self.pos)] + [neg_degree(t) for t in sorted(self.neg)]

    def bidegree(self) -> BiDegree:
        """
        Bidegree of a homogeneous nonzero element.
        """
        degrees = set(self.bidegrees())
        if len(degrees) != 1:
            raise ValueError('{} is not a homogeneous nonzero element of M2.'.format(self))
        return degrees.pop()

    def to_json(self):
        return {'pos': [list(t) for t in sorted(self.pos)], 'neg': [list(t) for t in sorted(self.neg)]}

    @classmethod
    def from_json(cls, data):
        return cls(pos=frozenset(tuple(t) for t in data.get('pos', [])),
                   neg=frozenset(tuple(t) for t in data.get('neg', [])))


M2_ZERO = M2Element()
M2_ONE = M2Element.monomial(0, 0)
A = M2Element.monomial(1, 0)
U = M2Element.monomial(0, 1)
THETA = M2Element.theta(0, 0)


def m2_mul(x: M2Element, y: M2Element) -> M2Element:
    """
    Product in M2.

    a^i u^j * a^k u^l = a^(i+k) u^(j+l), a^i u^j * theta/(a^k u^l) = theta/(a^(k-i) u^(l-j)) when k >= i and
    l >= j (zero otherwise), and the product of two negative cone classes vanishes.
    """
    pos, neg = set(), set()
    for i, j in x.pos:
        for k, l in y.pos:
            pos ^= {(i + k, j + l)}
        for k, l in y.neg:
            if k >= i and l >= j:
                neg ^= {(k - i, l - j)}
    for i, j in x.neg:
        for k, l in y.pos:
            if i >= k and j >= l:
                neg ^= {(i - k, j - l)}
    return M2Element(frozenset(pos), frozenset(neg))


def m2_basis_element(d: BiDegree) -> Optional[M2Element]:
    """
    The unique nonzero class of M2 in bidegree d, or None.
    """
    if d.p <= 0 and d.q <= d.p:
        return M2Element.monomial(-d.p, d.p - d.q)
    if d.p >= 0 and d.q >= d.p + 2:
        return M2Element.theta(d.p, d.q - d.p - 2)
    return None


def m2_dim(d: BiDegree) -> int:
    return 0 if m2_basis_element(d) is None else 1


def m2_cone_part(d: BiDegree) -> Optional[str]:
    """
    'pos' for the lower cone F2[a, u], 'neg' for the upper theta cone, None for the gap.
    """
    if d.p <= 0 and d.q <= d.p:
        return 'pos'
    if d.p >= 0 and d.q >= d.p + 2:
        return 'neg'
    return None


# ===============================================================
# Summands and graded modules
# ===============================================================

CONE = 'cone'
TOWER = 'tower'


@dataclass(frozen=True)
class Summand:
    """
    A free cone (shifted copy of M2) or an induced tower H(C2+) = F2[u, 1/u] at one topological degree.
    """
    kind: str
    shift: Optional[BiDegree] = None
    p0: Optional[int] = None
    label: str = ''

    def __post_init__(self):
        if self.kind == CONE and self.shift is None:
            raise ValueError('A free cone needs a shift.')
        if self.kind == TOWER and self.p0 is None:
            raise ValueError('An induced tower needs a topological degree p0.')
        if self.kind not in (CONE, TOWER):
            raise ValueError('Unknown summand kind {}.'.format(self.kind))

    @classmethod
    def cone(cls, shift: BiDegree, label=''):
        return cls(CONE, shift=shift, label=label)

    @classmethod
    def tower(cls, p0: int, label=''):
        return cls(TOWER, p0=p0, label=label)

    @property
    def is_cone(self):
        return self.kind == CONE

    def dim(self, x: BiDegree) -> int:
        if self.kind == CONE:
            return m2_dim(x - self.shift)
        return 1 if x.p == self.p0 else 0

    def shifted_by(self, d: BiDegree):
        if self.kind == CONE:
            return Summand.cone(self.shift + d, self.label)
        return Summand.tower(self.p0 + d.p, self.label)

    def __str__(self):
        where = self.shift if self.kind == CONE else 'p={}'.format(self.p0)
        return '{} {} {}'.format(self.kind, where, self.label).strip()

    def to_json(self):
        if self.kind == CONE:
            return {'kind': CONE, 'shift': self.shift.to_json(), 'label': self.label}
        return {'kind': TOWER, 'p0': self.p0, 'label': self.label}

    @classmethod
    def from_json(cls, data):
        if data['kind'] == CONE:
            return cls.cone(BiDegree.from_json(data['shift']), data.get('label', ''))
        return cls.tower(int(data['p0']), data.get('label', ''))


@dataclass(frozen=True)
class GradedModule:
    summands: Tuple[Summand, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'summands', tuple(self.summands))

    def __add__(self, other):
        return GradedModule(self.summands + other.summands)

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def dim(self, d: BiDegree) -> int:
        return sum(s.dim(d) for s in self.summands)

    def dims(self, region: Region) -> Dict[BiDegree, int]:
        """Nonzero dimensions inside the region."""
        out = {}
        for x in region.bidegrees():
            n = self.dim(x)
            if n:
                out[x] = n
        return out

    def cones(self):
        return [s for s in self.summands if s.kind == CONE]

    def towers(self):
        return [s for s in self.summands if s.kind == TOWER]

    def shifted_by(self, d: BiDegree):
        return GradedModule(tuple(s.shifted_by(d) for s in self.summands))

    def to_json(self):
        return {'summands': [s.to_json() for s in self.summands]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Summand.from_json(s) for s in data.get('summands', [])))


def module_dim(M: GradedModule, d: BiDegree) -> int:
    return M.dim(d)


@dataclass(frozen=True)
class Reconstruction:
    module: GradedModule
    residual: Dict[BiDegree, int]
    ok: bool


def reconstruct_module(dims: Dict[BiDegree, int], candidates: List[Summand],
                       region: Region) -> Reconstruction:
    """
    Greedy matching of per-bidegree dimensions with candidate summands.

    Each candidate is accepted when it has some support inside the region and its dimensions fit under the
    remaining ones. Whatever is left unexplained is returned as residual (negative entries never occur).
    """
    residual = {x: n for x, n in dims.items() if n}
    accepted = []
    points = region.bidegrees()
    for cand in candidates:
        support = [x for x in points if cand.dim(x)]
        if not support:
            continue
        if all(residual.get(x, 0) >= cand.dim(x) for x in support):
            for x in support:
                residual[x] -= cand.dim(x)
                if not residual[x]:
                    del residual[x]
            accepted.append(cand)
    ok = not residual
    if not ok:
        logger.debug('Reconstruction left %d unexplained bidegrees', len(residual))
    return Reconstruction(GradedModule(tuple(accepted)), residual, ok)


# ===============================================================
# Linear algebra over F2
# ===============================================================

def to_f2(matrix) -> np.ndarray:
    mat = np.asarray(matrix, dtype=np.int64) % 2
    if mat.ndim == 1:
        mat = mat.reshape(1, -1) if mat.size else np.zeros((0, 0), dtype=np.int64)
    return mat.astype(np.uint8)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def row_reduce_f2(matrix) -> RowReduceResult:
    """
    Reduced row echelon form over F2.
    """
    mat = to_f2(matrix).copy()
    m, n = mat.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        candidates = np.nonzero(mat[row:, col])[0]
        if not len(candidates):
            continue
        pivot = row + candidates[0]
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mask = mat[:, col].astype(bool)
        mask[row] = False
        mat[mask] ^= mat[row]
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def matrix_rank_f2(matrix) -> int:
    mat = to_f2(matrix)
    if not mat.size:
        return 0
    return row_reduce_f2(mat).rank


def nullspace_f2(matrix) -> np.ndarray:
    """
    Basis (as rows) of the kernel {v : M v = 0} over F2.
    """
    reduced = row_reduce_f2(matrix)
    mat = reduced.matrix
    n = mat.shape[1]
    pivots = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            if mat[row, free]:
                vec[col] = 1
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.uint8)
    return np.vstack(basis)


def in_span_f2(rows, vector) -> bool:
    """
    Whether `vector` is an F2 combination of `rows`.
    """
    vec = to_f2(vector).reshape(1, -1)
    mat = to_f2(rows)
    if not mat.size:
        return not vec.any()
    return matrix_rank_f2(mat) == matrix_rank_f2(np.vstack([mat, vec]))


def matmul_f2(a, b) -> np.ndarray:
    return (to_f2(a).astype(np.int64) @ to_f2(b).astype(np.int64) % 2).astype(np.uint8)


# ===============================================================
# Task dispatch
# ===============================================================

def map_tasks(func, items, threads=1, desc=None):
    """
    Apply `func` to every item, possibly on a thread pool, returning results in input order.
    """
    items = list(items)
    quiet = not logger.isEnabledFor(logging.INFO)
    if threads <= 1 or len(items) < 2:
        return [func(it) for it in tqdm(items, desc=desc, disable=quiet)]
    with ThreadPool(min(threads, len(items))) as p:
        return list(tqdm(p.imap(func, items), total=len(items), desc=desc, disable=quiet))
