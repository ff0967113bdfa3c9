"""Multilinear polynomials as coefficient maps over the symmetric group.

A multilinear polynomial of arity m is sum_{sigma in S_m} lambda_sigma *
x_{sigma(1)} ... x_{sigma(m)}.  Permutations are stored in one-line notation
as 1-based tuples; a permutation doubles as the monomial word it indexes, so
free-algebra expansions (used to build and fit the canonical commutator
forms of arity 3 and 4) share the same encoding.
"""

from __future__ import annotations

import itertools
import json

from . import linalg
from .fields import Field, FieldElement
from .quaternion import Quaternion, SpecMismatch

MAX_ARITY = 8


class ArityError(ValueError):
    pass


class NotRepresentable(ValueError):
    """The polynomial is not a combination of the requested canonical forms."""

    def __init__(self, message, rank=None, consistent=None):
        super().__init__(message)
        self.rank = rank
        self.consistent = consistent


def _is_permutation(word, m):
    return len(word) == m and sorted(word) == list(range(1, m + 1))


class MultilinearPoly:
    """Coefficient map from permutations of {1..m} to field elements.

    The map is total over S_m; only nonzero coefficients are stored, which
    makes structural equality canonical.
    """

    __slots__ = ("m", "field", "coeffs")

    def __init__(self, m: int, field: Field, coeffs):
        if not 2 <= m <= MAX_ARITY:
            raise ArityError(f"arity must be between 2 and {MAX_ARITY}, got {m}")
        clean = {}
        for perm, c in dict(coeffs).items():
            perm = tuple(perm)
            if not _is_permutation(perm, m):
                raise ValueError(f"{perm} is not a permutation of 1..{m}")
            c = field.element(c)
            if not c.is_zero():
                clean[perm] = c
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, val):
        raise AttributeError("MultilinearPoly is immutable")

    def coefficient(self, perm) -> FieldElement:
        return self.coeffs.get(tuple(perm), self.field.zero())

    def permutations(self):
        return itertools.permutations(range(1, self.m + 1))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return (self.m == other.m and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.m, self.field, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if self.m != other.m or self.field != other.field:
            raise ArityError("cannot add polynomials of different shape")
        merged = dict(self.coeffs)
        for perm, c in other.coeffs.items():
            merged[perm] = merged.get(perm, self.field.zero()) + c
        return MultilinearPoly(self.m, self.field, merged)

    def scaled(self, c) -> "MultilinearPoly":
        c = self.field.element(c)
        return MultilinearPoly(self.m, self.field,
                               {p: c * v for p, v in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for perm in sorted(self.coeffs):
            word = "".join(f"x{i}" for i in perm)
            parts.append(f"({self.coeffs[perm]})*{word}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return {"m": self.m,
                "coeffs": [{"perm": list(p), "c": self.field.to_json(c)}
                           for p, c in sorted(self.coeffs.items())]}


def evaluate(p: MultilinearPoly, args) -> Quaternion:
    """Exact evaluation of p on a tuple of quaternions from one algebra."""
    args = tuple(args)
    if len(args) != p.m:
        raise ArityError(f"{p.m}-linear polynomial applied to {len(args)} arguments")
    spec = args[0].spec
    for a in args[1:]:
        if a.spec != spec:
            raise SpecMismatch("evaluation arguments belong to different algebras")
    acc = Quaternion.zero(spec)
    for perm, coeff in p.coeffs.items():
        prod = args[perm[0] - 1]
        for idx in perm[1:]:
            prod = prod * args[idx - 1]
        acc = acc + prod.scaled(coeff)
    return acc


def coefficient_sum(p: MultilinearPoly) -> FieldElement:
    total = p.field.zero()
    for c in p.coeffs.values():
        total = total + c
    return total


def in_s2_tideal(p: MultilinearPoly) -> bool:
    """Membership in the T-ideal generated by the commutator x1 x2 - x2 x1.

    For multilinear polynomials this is exactly the vanishing of the
    coefficient sum.
    """
    return coefficient_sum(p).is_zero()


# ---------------------------------------------------------------------------
# special families
# ---------------------------------------------------------------------------

def make_s2(field: Field) -> MultilinearPoly:
    return MultilinearPoly(2, field, {(1, 2): field.one(), (2, 1): -field.one()})


def _perm_sign(perm) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def make_standard(m: int, field: Field) -> MultilinearPoly:
    """The standard polynomial: signed sum over all of S_m."""
    one = field.one()
    return MultilinearPoly(
        m, field,
        {perm: one if _perm_sign(perm) > 0 else -one
         for perm in itertools.permutations(range(1, m + 1))})


def make_vk(k: int, field: Field) -> MultilinearPoly:
    """The iterated commutator of arity 2^k, expanded to coefficients."""
    if k < 1:
        raise ArityError("k must be >= 1")
    if 2 ** k > MAX_ARITY:
        raise ArityError(f"expanded arity 2^{k} exceeds {MAX_ARITY}; "
                         "use the nested evaluator for larger k")

    def build(vars_):
        if len(vars_) == 2:
            return _commutator_expansion(_word_var(field, vars_[0]),
                                         _word_var(field, vars_[1]))
        half = len(vars_) // 2
        return _commutator_expansion(build(vars_[:half]), build(vars_[half:]))

    expansion = build(list(range(1, 2 ** k + 1)))
    return MultilinearPoly(2 ** k, field, expansion.words)


def evaluate_vk_nested(args) -> Quaternion:
    """Evaluate the iterated commutator on 2^k arguments without expansion."""
    args = list(args)
    n = len(args)
    if n < 2 or n & (n - 1):
        raise ArityError("argument count must be a power of two, at least 2")
    while len(args) > 1:
        args = [args[i] * args[i + 1] - args[i + 1] * args[i]
                for i in range(0, len(args), 2)]
    return args[0]


# ---------------------------------------------------------------------------
# free-algebra expansions
# ---------------------------------------------------------------------------

class FreeExpansion:
    """A polynomial in the free algebra, as a map from words to coefficients.

    Words are tuples of 1-based variable indices.  Used as the expansion
    target for nested commutator expressions; when every word is a
    permutation the expansion is the coefficient map of a MultilinearPoly.
    """

    __slots__ = ("field", "words")

    def __init__(self, field, words=None):
        self.field = field
        self.words = {}
        for w, c in (words or {}).items():
            c = field.element(c)
            if not c.is_zero():
                self.words[tuple(w)] = c

    def __add__(self, other):
        merged = dict(self.words)
        for w, c in other.words.items():
            merged[w] = merged.get(w, self.field.zero()) + c
        return FreeExpansion(self.field, merged)

    def __sub__(self, other):
        return self + other.scaled(-self.field.one())

    def __mul__(self, other):
        out = {}
        zero = self.field.zero()
        for w1, c1 in self.words.items():
            for w2, c2 in other.words.items():
                w = w1 + w2
                out[w] = out.get(w, zero) + c1 * c2
        return FreeExpansion(self.field, out)

    def scaled(self, c):
        c = self.field.element(c)
        return FreeExpansion(self.field, {w: c * v for w, v in self.words.items()})

    def coefficient(self, word):
        return self.words.get(tuple(word), self.field.zero())

    def __eq__(self, other):
        return (isinstance(other, FreeExpansion)
                and self.field == other.field and self.words == other.words)

    def __hash__(self):
        return hash((self.field, frozenset(self.words.items())))


def _word_var(field, i):
    return FreeExpansion(field, {(i,): field.one()})


def _commutator_expansion(a: FreeExpansion, b: FreeExpansion) -> FreeExpansion:
    return a * b - b * a


def expansion_of(p: MultilinearPoly) -> FreeExpansion:
    return FreeExpansion(p.field, dict(p.coeffs))


# ---------------------------------------------------------------------------
# canonical commutator forms of arity 3 and 4
# ---------------------------------------------------------------------------

def _deg3_basis(field):
    x = [None] + [_word_var(field, i) for i in range(1, 4)]
    c = _commutator_expansion
    return [c(x[1], c(x[3], x[2])), c(x[3], c(x[1], x[2]))]


def _deg4_basis(field):
    x = [None] + [_word_var(field, i) for i in range(1, 5)]
    c = _commutator_expansion
    return [
        c(c(c(x[2], x[1]), x[3]), x[4]),
        c(c(c(x[3], x[1]), x[2]), x[4]),
        c(c(c(x[4], x[1]), x[2]), x[3]),
        c(x[1], x[2]) * c(x[3], x[4]),
        c(x[1], x[3]) * c(x[2], x[4]),
        c(x[1], x[4]) * c(x[2], x[3]),
        c(x[2], x[3]) * c(x[1], x[4]),
        c(x[2], x[4]) * c(x[1], x[3]),
        c(x[3], x[4]) * c(x[1], x[2]),
    ]


def _combine_forms(field, m, basis, lambdas):
    acc = FreeExpansion(field)
    for lam, b in zip(lambdas, basis):
        acc = acc + b.scaled(lam)
    return MultilinearPoly(m, field, acc.words)


def make_deg3_form(field, lambda1, lambda2) -> MultilinearPoly:
    """lambda1*[x1,[x3,x2]] + lambda2*[x3,[x1,x2]] as an explicit coefficient map."""
    return _combine_forms(field, 3, _deg3_basis(field),
                          (field.element(lambda1), field.element(lambda2)))


def make_deg4_form(field, *lambdas) -> MultilinearPoly:
    """The nine-parameter arity-4 commutator form (three triple-nested
    commutators followed by the six products of two disjoint commutators)."""
    if len(lambdas) != 9:
        raise ValueError("the arity-4 form takes exactly nine parameters")
    return _combine_forms(field, 4, _deg4_basis(field),
                          tuple(field.element(l) for l in lambdas))


def _fit_form(p: MultilinearPoly, basis):
    words = sorted(itertools.permutations(range(1, p.m + 1)))
    a_rows = [[b.coefficient(w) for b in basis] for w in words]
    rhs = [p.coefficient(w) for w in words]
    solution = linalg.solve(a_rows, rhs)
    rank = linalg.matrix_rank(a_rows)
    if solution is None:
        raise NotRepresentable(
            f"polynomial is outside the span of the canonical forms "
            f"(system rank {rank})", rank=rank, consistent=False)
    return tuple(solution), rank


def fit_deg3_form(p: MultilinearPoly):
    """Exact (lambda1, lambda2) with p = lambda1*[x1,[x3,x2]] + lambda2*[x3,[x1,x2]]."""
    if p.m != 3:
        raise ArityError("the arity-3 form fit needs an arity-3 polynomial")
    solution, _ = _fit_form(p, _deg3_basis(p.field))
    return solution


def fit_deg4_form(p: MultilinearPoly):
    """Exact nine-tuple for the arity-4 form; the lexicographically least
    solution is returned when the representation is not unique."""
    if p.m != 4:
        raise ArityError("the arity-4 form fit needs an arity-4 polynomial")
    solution, _ = _fit_form(p, _deg4_basis(p.field))
    return solution


# ---------------------------------------------------------------------------
# misc utilities
# ---------------------------------------------------------------------------

def compose(sigma, tau):
    """(sigma o tau)(i) = sigma(tau(i)), both in one-line notation."""
    return tuple(sigma[t - 1] for t in tau)


def relabel(p: MultilinearPoly, tau) -> MultilinearPoly:
    """Substitute x_i -> x_{tau(i)}; coefficients move along sigma -> tau o sigma."""
    tau = tuple(tau)
    if not _is_permutation(tau, p.m):
        raise ValueError(f"{tau} is not a permutation of 1..{p.m}")
    return MultilinearPoly(p.m, p.field,
                           {compose(tau, perm): c for perm, c in p.coeffs.items()})


def random_multilinear(m: int, field: Field, rng, height: int = 10) -> MultilinearPoly:
    """A polynomial with independently sampled coefficients for every sigma."""
    return MultilinearPoly(
        m, field,
        {perm: field.sample(rng, height)
         for perm in itertools.permutations(range(1, m + 1))})


# ---------------------------------------------------------------------------
# input formats: JSON files and named shortcuts
# ---------------------------------------------------------------------------

def poly_from_json(data, field: Field) -> MultilinearPoly:
    if isinstance(data, str):
        data = json.loads(data)
    coeffs = {tuple(entry["perm"]): field.parse_scalar(str(entry["c"]))
              for entry in data["coeffs"]}
    return MultilinearPoly(int(data["m"]), field, coeffs)


def parse_poly_spec(text: str, field: Field) -> MultilinearPoly:
    """Named shortcuts: s2 | standard:m | vk:k | deg3:l1,l2 | deg4:l1,..,l9,
    a JSON object, or @path to a JSON file."""
    s = text.strip()
    if s.startswith("@"):
        with open(s[1:], "r", encoding="utf-8") as fh:
            return poly_from_json(json.load(fh), field)
    if s.startswith("{"):
        return poly_from_json(s, field)
    if s == "s2":
        return make_s2(field)
    if s.startswith("standard:"):
        return make_standard(int(s.split(":", 1)[1]), field)
    if s.startswith("vk:"):
        return make_vk(int(s.split(":", 1)[1]), field)
    if s.startswith("deg3:"):
        parts = [field.parse_scalar(t) for t in s[5:].split(",")]
        if len(parts) != 2:
            raise ValueError("deg3 takes two parameters")
        return make_deg3_form(field, *parts)
    if s.startswith("deg4:"):
        parts = [field.parse_scalar(t) for t in s[5:].split(",")]
        return make_deg4_form(field, *parts)
    raise ValueError(f"cannot parse polynomial spec {text!r}")
