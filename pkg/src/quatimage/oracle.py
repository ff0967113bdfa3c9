"""Brute-force ground truth over finite structures.

Exhaustive image enumeration and classification for quaternion algebras over
finite fields, and the matrix-ring checks over M_n of small commutative
rings.  Enumeration is exact and complete: classification is never decided
from sampling.  The evaluation space is linearized into element indices and
folded through precomputed multiplication/addition tables with numpy, which
is what makes full sweeps over millions of argument tuples practical.
"""

from __future__ import annotations

import enum
import itertools
import random
import time
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .fields import BinaryField, Field, FieldElement, PrimeField
from .multilinear import MultilinearPoly, make_s2, make_vk
from .quaternion import AlgebraSpec, Quaternion, _mul_table
from . import solvers


class BudgetExceeded(Exception):
    """The requested enumeration is larger than the evaluation budget.

    Sampling mode (:func:`sample_image`) gives lower-bound reports instead.
    """


DEFAULT_BUDGET = 10 ** 9
_CHUNK = 1 << 20


# ---------------------------------------------------------------------------
# small commutative rings Z/mZ (ducks the field-descriptor interface)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegersMod:
    """The ring Z/mZ; m need not be prime, so division is partial."""

    m: int
    kind = "Z/m"

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be at least 2")

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError(f"{value!r} does not live in {self}")
            return value
        if isinstance(value, Fraction):
            return self.element(value.numerator) / self.element(value.denominator)
        return FieldElement(self, int(value) % self.m)

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def characteristic(self):
        return self.m

    def order(self):
        return self.m

    def enumerate_elements(self):
        return [FieldElement(self, r) for r in range(self.m)]

    def sample(self, rng, height=10):
        return FieldElement(self, rng.randrange(self.m))

    def parse_scalar(self, text):
        return self.element(int(text.strip(), 0))

    def format_scalar(self, x):
        return str(x.value)

    def to_json(self, x):
        return str(x.value)

    def _add(self, a, b):
        return (a + b) % self.m

    def _sub(self, a, b):
        return (a - b) % self.m

    def _mul(self, a, b):
        return a * b % self.m

    def _neg(self, a):
        return -a % self.m

    def _inv(self, a):
        return pow(a, -1, self.m)

    def _is_zero(self, a):
        return a == 0

    def _sign(self, a):
        raise ValueError(f"{self} is not ordered")

    def __str__(self):
        return f"Z/{self.m}"


def parse_ring_spec(text: str):
    s = text.strip()
    if s.startswith("Z/"):
        return IntegersMod(int(s[2:]))
    from .fields import parse_field_spec
    return parse_field_spec(s)


# ---------------------------------------------------------------------------
# matrices over a small commutative ring or field
# ---------------------------------------------------------------------------

class Matrix:
    """A dense n x n matrix over a field or Z/mZ descriptor."""

    __slots__ = ("n", "domain", "rows")

    def __init__(self, domain, rows):
        rows = tuple(tuple(domain.element(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, val):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zero(cls, domain, n):
        z = domain.zero()
        return cls(domain, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, domain, n):
        z, o = domain.zero(), domain.one()
        return cls(domain, [[o if r == c else z for c in range(n)] for r in range(n)])

    @classmethod
    def unit(cls, domain, n, i, j, scale=1):
        z = domain.zero()
        rows = [[z] * n for _ in range(n)]
        rows[i][j] = domain.element(scale)
        return cls(domain, rows)

    def __add__(self, other):
        return Matrix(self.domain,
                      [[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix(self.domain,
                      [[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.domain, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scaled(other)
        n = self.n
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                acc = self.domain.zero()
                for t in range(n):
                    acc = acc + self.rows[r][t] * other.rows[t][c]
                row.append(acc)
            rows.append(row)
        return Matrix(self.domain, rows)

    def scaled(self, c):
        c = self.domain.element(c)
        return Matrix(self.domain, [[c * a for a in r] for r in self.rows])

    def trace(self):
        acc = self.domain.zero()
        for t in range(self.n):
            acc = acc + self.rows[t][t]
        return acc

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def is_diagonal(self):
        return all(self.rows[r][c].is_zero()
                   for r in range(self.n) for c in range(self.n) if r != c)

    def is_scalar(self):
        d = self.rows[0][0]
        return self.is_diagonal() and all(self.rows[t][t] == d for t in range(self.n))

    def single_off_diagonal_cell(self):
        """(i, j, value) when exactly one off-diagonal entry is nonzero and
        the diagonal vanishes; None otherwise."""
        cells = [(r, c) for r in range(self.n) for c in range(self.n)
                 if not self.rows[r][c].is_zero()]
        if len(cells) == 1 and cells[0][0] != cells[0][1]:
            r, c = cells[0]
            return r, c, self.rows[r][c]
        return None

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.domain == other.domain and self.rows == other.rows

    def __hash__(self):
        return hash((self.domain, self.rows))

    def __str__(self):
        return "[" + "; ".join(" ".join(str(a) for a in r) for r in self.rows) + "]"

    def to_json(self):
        return [[self.domain.to_json(a) for a in r] for r in self.rows]


def matrix_evaluate(p: MultilinearPoly, matrices) -> Matrix:
    matrices = tuple(matrices)
    if len(matrices) != p.m:
        raise ValueError(f"{p.m}-linear polynomial applied to {len(matrices)} matrices")
    domain, n = matrices[0].domain, matrices[0].n
    acc = Matrix.zero(domain, n)
    for perm, coeff in p.coeffs.items():
        prod = matrices[perm[0] - 1]
        for idx in perm[1:]:
            prod = prod * matrices[idx - 1]
        acc = acc + prod.scaled(coeff)
    return acc


# ---------------------------------------------------------------------------
# linearized finite structures
# ---------------------------------------------------------------------------

class _IndexOps:
    """Vectorized arithmetic on small scalar indices for one descriptor."""

    def __init__(self, domain):
        self.domain = domain
        self.q = domain.order()
        if self.q is None:
            raise BudgetExceeded(f"{domain} is infinite; use sampling mode")
        if isinstance(domain, (PrimeField, IntegersMod)):
            self.modulus = domain.order()
            self.table = None
        else:
            elems = domain.enumerate_elements()
            tab = np.zeros((self.q, self.q), dtype=np.int64)
            for a in range(self.q):
                for b in range(self.q):
                    tab[a, b] = (elems[a] * elems[b]).value
            self.modulus = None
            self.table = tab

    def add(self, a, b):
        if self.modulus is not None:
            return (a + b) % self.modulus
        return a ^ b

    def mul(self, a, b):
        if self.modulus is not None:
            return a * b % self.modulus
        return self.table[a, b]

    def neg(self, a):
        if self.modulus is not None:
            return (-a) % self.modulus
        return a

    def index_of(self, elem) -> int:
        return int(elem.value)

    def elem_of(self, index):
        if isinstance(self.domain, BinaryField):
            return FieldElement(self.domain, int(index))
        return self.domain.element(int(index))


class FiniteStructure:
    """Indexed elements with dense mul/add tables and predicate masks."""

    def __init__(self, size, mul, add, neg, smul, scalar_ops, decode, encode,
                 masks, zero_index=0, name=""):
        self.size = size
        self.mul = mul
        self.add = add
        self.neg = neg
        self.smul = smul
        self.scalar_ops = scalar_ops
        self.decode = decode
        self.encode = encode
        self.masks = masks
        self.zero_index = zero_index
        self.name = name

    def scalar_index(self, c) -> int:
        return self.scalar_ops.index_of(c)


def _int_dtype(n):
    return np.uint16 if n <= 0xFFFF else np.uint32


def _digits(N, q, places):
    idx = np.arange(N, dtype=np.int64)
    return [(idx // q ** (places - 1 - t)) % q for t in range(places)]


_structure_cache: dict = {}


def quaternion_structure(spec: AlgebraSpec, max_table=64_000_000) -> FiniteStructure:
    if spec in _structure_cache:
        return _structure_cache[spec]
    ops = _IndexOps(spec.field)
    q = ops.q
    N = q ** 4
    if N * N > max_table:
        raise BudgetExceeded(f"multiplication table would need {N * N} entries")
    D = _digits(N, q, 4)
    stc = {}
    for (s, t), entries in _mul_table(spec).items():
        stc[(s, t)] = [(cidx, ops.index_of(coeff)) for cidx, coeff in entries]
    dtype = _int_dtype(N)
    mul = np.empty((N, N), dtype=dtype)
    add = np.empty((N, N), dtype=dtype)
    block = max(1, (1 << 22) // N)
    for r0 in range(0, N, block):
        r1 = min(r0 + block, N)
        coords = [None, None, None, None]
        for s in range(4):
            a_s = D[s][r0:r1, None]
            for t in range(4):
                b_t = D[t][None, :]
                prod = ops.mul(a_s, b_t)
                for cidx, scal in stc[(s, t)]:
                    term = ops.mul(scal, prod)
                    coords[cidx] = term if coords[cidx] is None \
                        else ops.add(coords[cidx], term)
        packed = np.zeros((r1 - r0, N), dtype=np.int64)
        for c in range(4):
            packed = packed * q + (coords[c] if coords[c] is not None else 0)
        mul[r0:r1] = packed.astype(dtype)
        asum = [ops.add(D[c][r0:r1, None], D[c][None, :]) for c in range(4)]
        packed = np.zeros((r1 - r0, N), dtype=np.int64)
        for c in range(4):
            packed = packed * q + asum[c]
        add[r0:r1] = packed.astype(dtype)
    neg_digits = [ops.neg(D[c]) for c in range(4)]
    neg = np.zeros(N, dtype=np.int64)
    for c in range(4):
        neg = neg * q + neg_digits[c]
    neg = neg.astype(dtype)
    smul = np.empty((q, N), dtype=dtype)
    for s in range(q):
        packed = np.zeros(N, dtype=np.int64)
        for c in range(4):
            packed = packed * q + ops.mul(s, D[c])
        smul[s] = packed.astype(dtype)
    zero_digit = 0
    central = (D[1] == zero_digit) & (D[2] == zero_digit) & (D[3] == zero_digit)
    if spec.char_two:
        s2set = D[1] == zero_digit
    else:
        s2set = D[0] == zero_digit
    masks = {"central": central, "s2set": s2set, "trace_zero": s2set.copy()}

    def decode(i):
        i = int(i)
        cs = []
        for t in range(4):
            cs.append(ops.elem_of(i // q ** (3 - t) % q))
        return Quaternion(spec, cs)

    def encode(quat):
        i = 0
        for c in quat.coords:
            i = i * q + ops.index_of(c)
        return i

    st = FiniteStructure(N, mul, add, neg, smul, ops, decode, encode, masks,
                         name=str(spec))
    _structure_cache[spec] = st
    return st


def matrix_structure(domain, n, max_table=64_000_000) -> FiniteStructure:
    key = ("matrix", domain, n)
    if key in _structure_cache:
        return _structure_cache[key]
    ops = _IndexOps(domain)
    q = ops.q
    cells = n * n
    N = q ** cells
    if N * N > max_table:
        raise BudgetExceeded(f"matrix tables would need {N * N} entries")
    elems = domain.enumerate_elements()

    def decode(i):
        i = int(i)
        entries = []
        for t in range(cells):
            entries.append(elems[i // q ** (cells - 1 - t) % q])
        return Matrix(domain, [entries[r * n:(r + 1) * n] for r in range(n)])

    def encode(mat):
        i = 0
        for row in mat.rows:
            for x in row:
                i = i * q + ops.index_of(x)
        return i

    matrices = [decode(i) for i in range(N)]
    dtype = _int_dtype(N)
    mul = np.empty((N, N), dtype=dtype)
    add = np.empty((N, N), dtype=dtype)
    for a in range(N):
        ma = matrices[a]
        for b in range(N):
            mul[a, b] = encode(ma * matrices[b])
            add[a, b] = encode(ma + matrices[b])
    neg = np.array([encode(-m) for m in matrices], dtype=dtype)
    smul = np.empty((q, N), dtype=dtype)
    for s in range(q):
        se = elems[s]
        for a in range(N):
            smul[s, a] = encode(matrices[a].scaled(se))
    central = np.array([m.is_scalar() for m in matrices], dtype=bool)
    trace_zero = np.array([m.trace().is_zero() for m in matrices], dtype=bool)
    masks = {"central": central, "trace_zero": trace_zero}
    st = FiniteStructure(N, mul, add, neg, smul, ops, decode, encode, masks,
                         name=f"M_{n}({domain})")
    _structure_cache[key] = st
    return st


# ---------------------------------------------------------------------------
# vectorized multilinear image enumeration
# ---------------------------------------------------------------------------

def _image_indices(st: FiniteStructure, p: MultilinearPoly,
                   budget=DEFAULT_BUDGET, chunk=_CHUNK):
    m = p.m
    N = st.size
    total = N ** m
    if total > budget:
        raise BudgetExceeded(
            f"{total} evaluations exceed the budget of {budget}; "
            "raise --budget or use sampling mode")
    nz = [(perm, st.scalar_index(c)) for perm, c in p.coeffs.items()]
    mask = np.zeros(N, dtype=bool)
    if not nz:
        mask[st.zero_index] = True
        return np.flatnonzero(mask), total
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        variables = [(idx // N ** (m - 1 - t)) % N for t in range(m)]
        acc = None
        for perm, scal in nz:
            cur = variables[perm[0] - 1]
            for vpos in perm[1:]:
                cur = st.mul[cur, variables[vpos - 1]]
            term = st.smul[scal][cur]
            acc = term if acc is None else st.add[acc, term]
        mask[acc] = True
    return np.flatnonzero(mask), total


def find_preimage(st: FiniteStructure, p: MultilinearPoly, value_index: int,
                  budget=DEFAULT_BUDGET):
    """Some argument tuple evaluating to the given element index, or None."""
    m, N = p.m, st.size
    total = min(N ** m, budget)
    nz = [(perm, st.scalar_index(c)) for perm, c in p.coeffs.items()]
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        variables = [(idx // N ** (m - 1 - t)) % N for t in range(m)]
        acc = None
        for perm, scal in nz:
            cur = variables[perm[0] - 1]
            for vpos in perm[1:]:
                cur = st.mul[cur, variables[vpos - 1]]
            term = st.smul[scal][cur]
            acc = term if acc is None else st.add[acc, term]
        if acc is None:
            acc = np.full(stop - start, st.zero_index)
        hits = np.flatnonzero(acc == value_index)
        if len(hits):
            flat = int(idx[hits[0]])
            return tuple(st.decode(flat // N ** (m - 1 - t) % N) for t in range(m))
    return None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

class ImageClass(enum.Enum):
    ZERO = "Zero"
    CENTRAL = "Central"
    S2_SET_EQUAL = "S2SetEqual"
    PROPER_PURE_SUBSET = "ProperPureSubset"
    FULL = "Full"
    CONTAINS_S2_SET = "ContainsS2Set"
    OTHER = "Other"


@dataclass
class ImageReport:
    field_spec: str
    algebra_spec: str
    poly_spec: str
    image_size: int
    image_class: ImageClass | None
    witnesses: list = dataclass_field(default_factory=list)
    checks: list = dataclass_field(default_factory=list)
    adjoined_roots: list = dataclass_field(default_factory=list)
    seed: int | None = None
    eval_count: int = 0
    wall_ms: float | None = None
    lower_bound_only: bool = False
    indices: object = None  # numpy array of element indices (finite case)

    def to_json(self):
        return {
            "field": self.field_spec,
            "algebra": self.algebra_spec,
            "poly": self.poly_spec,
            "image_size": self.image_size,
            "class": self.image_class.value if self.image_class else None,
            "witnesses": list(self.witnesses),
            "checks": list(self.checks),
            "adjoined_roots": list(self.adjoined_roots),
            "seed": self.seed,
            "eval_count": self.eval_count,
            "wall_ms": self.wall_ms,
        }


def _classify(st: FiniteStructure, indices) -> ImageClass:
    s2set = np.flatnonzero(st.masks["s2set"])
    if len(indices) == 1 and indices[0] == st.zero_index:
        return ImageClass.ZERO
    if st.masks["central"][indices].all():
        return ImageClass.CENTRAL
    if np.array_equal(indices, s2set):
        return ImageClass.S2_SET_EQUAL
    if st.masks["s2set"][indices].all():
        return ImageClass.PROPER_PURE_SUBSET
    if len(indices) == st.size:
        return ImageClass.FULL
    if np.isin(s2set, indices, assume_unique=True).all():
        return ImageClass.CONTAINS_S2_SET
    return ImageClass.OTHER


def _class_witnesses(st, indices, image_class):
    picks = []
    if image_class in (ImageClass.OTHER, ImageClass.CONTAINS_S2_SET, ImageClass.FULL):
        outside = indices[~st.masks["s2set"][indices]]
        if len(outside):
            picks.append(("outside commutator target set", st.decode(outside[0])))
    if image_class in (ImageClass.CENTRAL, ImageClass.OTHER):
        nonzero = indices[indices != st.zero_index]
        if len(nonzero):
            picks.append(("nonzero value", st.decode(nonzero[0])))
    if image_class in (ImageClass.S2_SET_EQUAL, ImageClass.PROPER_PURE_SUBSET):
        noncentral = indices[~st.masks["central"][indices]]
        if len(noncentral):
            picks.append(("non-central value", st.decode(noncentral[0])))
    return [f"{label}: {value}" for label, value in picks]


def enumerate_image(p: MultilinearPoly, spec: AlgebraSpec,
                    budget=DEFAULT_BUDGET, poly_spec=None) -> ImageReport:
    """Exact image of p over a finite quaternion algebra, classified."""
    start = time.perf_counter()
    st = quaternion_structure(spec)
    indices, evals = _image_indices(st, p, budget)
    image_class = _classify(st, indices)
    wall = (time.perf_counter() - start) * 1000.0
    report = ImageReport(
        field_spec=str(spec.field), algebra_spec=str(spec),
        poly_spec=poly_spec or str(p), image_size=int(len(indices)),
        image_class=image_class,
        witnesses=_class_witnesses(st, indices, image_class),
        eval_count=int(evals), wall_ms=wall)
    report.indices = indices
    return report


def image_set(p: MultilinearPoly, spec: AlgebraSpec, budget=DEFAULT_BUDGET):
    """The image as a set of Quaternion values (exact, finite specs)."""
    st = quaternion_structure(spec)
    indices, _ = _image_indices(st, p, budget)
    return {st.decode(i) for i in indices}


@dataclass
class TrichotomyResult:
    passed: bool
    branch: str
    witnesses: list

    def __bool__(self):
        return self.passed


def verify_trichotomy(p: MultilinearPoly, spec: AlgebraSpec,
                      budget=DEFAULT_BUDGET) -> TrichotomyResult:
    """Image is {0}, or central nonzero, or contains the commutator target set."""
    st = quaternion_structure(spec)
    indices, _ = _image_indices(st, p, budget)
    if len(indices) == 1 and indices[0] == st.zero_index:
        return TrichotomyResult(True, "zero", [])
    if st.masks["central"][indices].all():
        return TrichotomyResult(True, "central", [])
    s2set = np.flatnonzero(st.masks["s2set"])
    missing = s2set[~np.isin(s2set, indices, assume_unique=True)]
    if len(missing) == 0:
        return TrichotomyResult(True, "contains-target-set", [])
    return TrichotomyResult(False, "none",
                            [f"target-set element not attained: {st.decode(missing[0])}"])


def is_trace_vanishing(p: MultilinearPoly, spec: AlgebraSpec,
                       budget=DEFAULT_BUDGET):
    """(verdict, witness): every enumerated value has trace zero?"""
    st = quaternion_structure(spec)
    indices, _ = _image_indices(st, p, budget)
    bad = indices[~st.masks["trace_zero"][indices]]
    if len(bad) == 0:
        return True, None
    value = st.decode(bad[0])
    args = find_preimage(st, p, int(bad[0]), budget)
    return False, (value, args)


def commutator_closure(st: FiniteStructure, indices):
    """All pairwise commutators of the given element indices, sorted."""
    a = indices[:, None]
    b = indices[None, :]
    comm = st.add[st.mul[a, b], st.neg[st.mul[b, a]]]
    return np.unique(comm)


def sampled_nested_commutators(st: FiniteStructure, k: int, count: int, rng):
    """Values of the depth-k iterated commutator on random argument tuples."""
    n_args = 2 ** k
    cols = np.array([[rng.randrange(st.size) for _ in range(count)]
                     for _ in range(n_args)], dtype=np.int64)
    level = [cols[t] for t in range(n_args)]
    while len(level) > 1:
        nxt = []
        for t in range(0, len(level), 2):
            a, b = level[t], level[t + 1]
            nxt.append(st.add[st.mul[a, b], st.neg[st.mul[b, a]]].astype(np.int64))
        level = nxt
    return np.unique(level[0])


@dataclass
class VkCollapseResult:
    passed: bool
    s2_size: int
    v2_size: int
    v2_equals_s2: bool
    realized: dict      # k -> (realized, total)
    sampled_inside: dict  # k -> bool
    details: list

    def __bool__(self):
        return self.passed


def verify_vk_collapse(spec: AlgebraSpec, k_max: int = 3, samples: int = 10 ** 4,
                       seed: int = 0, budget=DEFAULT_BUDGET) -> VkCollapseResult:
    """Check the iterated-commutator image chain against the s2 image.

    The depth-2 image is enumerated exhaustively (directly when the budget
    allows, and in any case as the closure of image pairs, which coincides
    with it); for each depth up to k_max every target-set element is pushed
    through the constructive decomposition, and sampled deeper values are
    checked to lie inside the s2 image.
    """
    st = quaternion_structure(spec)
    s2 = make_s2(spec.field)
    s2_indices, _ = _image_indices(st, s2, budget)
    details = []
    v2_indices = commutator_closure(st, s2_indices)
    if st.size ** 4 <= budget:
        direct, _ = _image_indices(st, make_vk(2, spec.field), budget)
        if not np.array_equal(direct, v2_indices):
            raise solvers.PostCheckError(
                "direct depth-2 enumeration disagrees with pair closure")
    v2_equal = np.array_equal(v2_indices, s2_indices)
    if not v2_equal:
        missing = s2_indices[~np.isin(s2_indices, v2_indices)]
        details.append(
            f"v2 image has {len(v2_indices)} elements vs s2 image "
            f"{len(s2_indices)}; first s2 element missing from v2: "
            f"{st.decode(missing[0])}")
    realized = {}
    target_indices = np.flatnonzero(st.masks["s2set"])
    for k in range(1, k_max + 1):
        ok = 0
        for ti in target_indices:
            target = st.decode(ti)
            try:
                solvers.vk_decompose(target, k)
                ok += 1
            except solvers.SolverError:
                pass
        realized[k] = (ok, len(target_indices))
        if ok != len(target_indices):
            details.append(f"depth {k}: realized {ok}/{len(target_indices)} "
                           "target-set elements")
    rng = random.Random(seed)
    sampled_inside = {}
    s2_mask = np.zeros(st.size, dtype=bool)
    s2_mask[s2_indices] = True
    for k in range(2, k_max + 1):
        values = sampled_nested_commutators(st, k, samples, rng)
        sampled_inside[k] = bool(s2_mask[values].all())
        if not sampled_inside[k]:
            details.append(f"depth {k}: sampled value escapes the s2 image")
    passed = v2_equal and all(ok == total for ok, total in realized.values()) \
        and all(sampled_inside.values())
    return VkCollapseResult(passed, int(len(s2_indices)), int(len(v2_indices)),
                            v2_equal, realized, sampled_inside, details)


# ---------------------------------------------------------------------------
# sampling mode for infinite fields: lower bounds only
# ---------------------------------------------------------------------------

def sample_image(p: MultilinearPoly, spec: AlgebraSpec, samples: int = 500,
                 seed: int = 0, height: int = 10, poly_spec=None) -> ImageReport:
    """Sampled lower-bound report over an infinite field.

    Never assigns a terminal class beyond ContainsS2Set (constructively
    verified on sampled pure targets) or Other.
    """
    from .quaternion import sample_quaternion
    start = time.perf_counter()
    rng = random.Random(seed)
    seen = set()
    noncentral = central_nonzero = outside = 0
    for _ in range(samples):
        args = tuple(sample_quaternion(spec, rng, height) for _ in range(p.m))
        from .multilinear import evaluate
        v = evaluate(p, args)
        seen.add(v)
        if not v.is_central():
            noncentral += 1
        elif not v.is_zero():
            central_nonzero += 1
        if not v.in_s2_target_set():
            outside += 1
    checks = [f"distinct sampled values: {len(seen)}",
              f"non-central: {noncentral}, central nonzero: {central_nonzero}, "
              f"outside target set: {outside}"]
    image_class = ImageClass.OTHER
    witnesses = []
    if not spec.char_two and spec.division_asserted and noncentral:
        realized = 0
        trials = 5
        for _ in range(trials):
            target = Quaternion.pure(spec, spec.field.sample(rng, height),
                                     spec.field.sample(rng, height),
                                     spec.field.sample(rng, height))
            try:
                solvers.express_pure_in_image(p, target)
                realized += 1
            except solvers.SolverError:
                break
        if realized == trials:
            image_class = ImageClass.CONTAINS_S2_SET
            checks.append(f"{trials} sampled pure targets constructively realized")
    wall = (time.perf_counter() - start) * 1000.0
    report = ImageReport(
        field_spec=str(spec.field), algebra_spec=str(spec),
        poly_spec=poly_spec or str(p), image_size=len(seen),
        image_class=image_class, witnesses=witnesses, checks=checks,
        seed=seed, eval_count=samples, wall_ms=wall, lower_bound_only=True)
    return report


# ---------------------------------------------------------------------------
# matrix-model checks
# ---------------------------------------------------------------------------

@dataclass
class UnitsCheckResult:
    passed: bool
    checked: int
    counterexample: tuple | None

    def __bool__(self):
        return self.passed


def matrix_units_check(p: MultilinearPoly, domain, n: int,
                       budget: int = 10 ** 6) -> UnitsCheckResult:
    """Evaluate p on all tuples of scaled matrix units; every value must be
    diagonal or concentrated in a single off-diagonal cell."""
    scalars = domain.enumerate_elements()
    units = [Matrix.unit(domain, n, i, j, a)
             for i in range(n) for j in range(n) for a in scalars]
    total = len(units) ** p.m
    if total > budget:
        raise BudgetExceeded(f"{total} unit tuples exceed the budget {budget}")
    checked = 0
    for combo in itertools.product(units, repeat=p.m):
        value = matrix_evaluate(p, combo)
        checked += 1
        if not value.is_diagonal() and value.single_off_diagonal_cell() is None:
            return UnitsCheckResult(False, checked, (combo, value))
    return UnitsCheckResult(True, checked, None)


@dataclass
class CenterTheoremResult:
    verdict: str  # "pass" | "vacuous" | "fail"
    image_size: int
    witnesses: list

    def __bool__(self):
        return self.verdict != "fail"


def verify_center_theorem(p: MultilinearPoly, n: int, domain,
                          budget=DEFAULT_BUDGET) -> CenterTheoremResult:
    """When the image avoids nonzero trace-zero values (and is not {0}),
    it must consist of central scalar matrices."""
    st = matrix_structure(domain, n)
    indices, _ = _image_indices(st, p, budget)
    if len(indices) == 1 and indices[0] == st.zero_index:
        return CenterTheoremResult("vacuous", 1, ["image is {0}"])
    nz_trace0 = indices[(indices != st.zero_index) & st.masks["trace_zero"][indices]]
    if len(nz_trace0):
        return CenterTheoremResult(
            "vacuous", int(len(indices)),
            [f"nonzero trace-zero value in image: {st.decode(nz_trace0[0])}"])
    bad = indices[~st.masks["central"][indices]]
    if len(bad):
        return CenterTheoremResult(
            "fail", int(len(indices)),
            [f"non-scalar value under the hypothesis: {st.decode(bad[0])}"])
    return CenterTheoremResult("pass", int(len(indices)), [])
