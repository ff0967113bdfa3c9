"""Generalized quaternion algebras over exact fields, in both characteristic
presentations.

Odd characteristic: basis 1, i, j, k with i^2 = qi, j^2 = qj nonzero scalars,
k = ij = -ji.  The classical H(a,b) notation corresponds to qi = -a, qj = -b.

Characteristic two: i^2 = i + u, j^2 = v nonzero, k = ij = j(i+1), from which
ji = k + j.

The remaining products are forced by associativity and are hard-coded below;
the test suite checks associativity exhaustively on small finite instances.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .fields import (DescriptorMismatch, Field, FieldElement, PrimeField,
                     BinaryField, TowerField, embed, parse_field_spec)


class AlgebraError(Exception):
    pass


class SpecMismatch(AlgebraError):
    """Operands belong to different algebra specs."""


class NotInvertible(AlgebraError):
    """The element has norm zero (possible in split algebras)."""


@dataclass(frozen=True)
class AlgebraSpec:
    """A quaternion algebra presentation over a field descriptor.

    Use the factories :func:`odd_char_algebra`, :func:`h_ab` and
    :func:`char_two_algebra` rather than the raw constructor.
    """

    field: Field
    char_two: bool
    params: tuple  # (qi, qj) in odd characteristic, (u, v) in characteristic 2
    division_asserted: bool = False

    def __post_init__(self):
        char = self.field.characteristic()
        a, b = self.params
        if self.char_two:
            if char != 2:
                raise AlgebraError("characteristic-2 presentation over a field of odd characteristic")
            if b.is_zero():
                raise AlgebraError("j^2 = v must be nonzero")
        else:
            if char == 2:
                raise AlgebraError("odd presentation needs characteristic != 2")
            if a.is_zero() or b.is_zero():
                raise AlgebraError("i^2 and j^2 must be nonzero")
        if self.division_asserted and self.field.order() is not None:
            raise AlgebraError("finite quaternion algebras always split; "
                               "division cannot be asserted")

    @property
    def qi(self):
        return self.params[0]

    @property
    def qj(self):
        return self.params[1]

    @property
    def u(self):
        return self.params[0]

    @property
    def v(self):
        return self.params[1]

    def scalar(self, value) -> FieldElement:
        return self.field.element(value)

    def with_field(self, new_field: Field) -> "AlgebraSpec":
        """The same presentation with every parameter embedded in new_field."""
        if new_field == self.field:
            return self
        return AlgebraSpec(new_field, self.char_two,
                           tuple(embed(p, new_field) for p in self.params),
                           self.division_asserted)

    def is_finite(self) -> bool:
        return self.field.order() is not None

    def __str__(self):
        names = ("u", "v") if self.char_two else ("qi", "qj")
        inner = ",".join(f"{n}={p}" for n, p in zip(names, self.params))
        return f"H[{inner} over {self.field}]"


def odd_char_algebra(field, qi, qj, division_asserted=None) -> AlgebraSpec:
    qi, qj = field.element(qi), field.element(qj)
    if division_asserted is None:
        division_asserted = _hamilton_over_real_tower(field, qi, qj)
    if field.order() is not None:
        division_asserted = False
    return AlgebraSpec(field, False, (qi, qj), division_asserted)


def h_ab(field, a, b, division_asserted=None) -> AlgebraSpec:
    """The H(a,b) convention: i^2 = -a, j^2 = -b."""
    return odd_char_algebra(field, -field.element(a), -field.element(b), division_asserted)


def char_two_algebra(field, u, v) -> AlgebraSpec:
    return AlgebraSpec(field, True, (field.element(u), field.element(v)), False)


def _hamilton_over_real_tower(field, qi, qj) -> bool:
    # 1 + x^2 + y^2 + z^2 never vanishes over a formally real field, so the
    # Hamilton parameters give a division algebra over any real tower.
    if not isinstance(field, TowerField):
        return False
    minus_one = -field.one()
    return qi == minus_one and qj == minus_one


def hamilton_tower(radicands=()) -> AlgebraSpec:
    """Hamilton quaternions over a rational quadratic tower."""
    field = TowerField(radicands)
    return odd_char_algebra(field, -1, -1)


# basis multiplication tables; entry [s][t] is a sparse coordinate list
@lru_cache(maxsize=None)
def _mul_table(spec: AlgebraSpec):
    one = spec.field.one()
    if spec.char_two:
        u, v = spec.params
        uv = u * v
        table = {
            (1, 1): ((0, u), (1, one)),          # ii = u + i
            (1, 2): ((3, one),),                 # ij = k
            (1, 3): ((2, u), (3, one)),          # ik = u j + k
            (2, 1): ((2, one), (3, one)),        # ji = j + k
            (2, 2): ((0, v),),                   # jj = v
            (2, 3): ((0, v), (1, v)),            # jk = v + v i
            (3, 1): ((2, u),),                   # ki = u j
            (3, 2): ((1, v),),                   # kj = v i
            (3, 3): ((0, uv),),                  # kk = u v
        }
    else:
        qi, qj = spec.params
        table = {
            (1, 1): ((0, qi),),
            (1, 2): ((3, one),),
            (1, 3): ((2, qi),),
            (2, 1): ((3, -one),),
            (2, 2): ((0, qj),),
            (2, 3): ((1, -qj),),
            (3, 1): ((2, -qi),),
            (3, 2): ((1, qj),),
            (3, 3): ((0, -(qi * qj)),),
        }
    full = {}
    for s in range(4):
        for t in range(4):
            if s == 0:
                full[(s, t)] = ((t, one),)
            elif t == 0:
                full[(s, t)] = ((s, one),)
            else:
                full[(s, t)] = table[(s, t)]
    return full


BASIS_NAMES = ("1", "i", "j", "k")


class Quaternion:
    """An element c0 + c1 i + c2 j + c3 k of a quaternion algebra."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec: AlgebraSpec, coords):
        coords = tuple(spec.field.element(c) for c in coords)
        if len(coords) != 4:
            raise AlgebraError("a quaternion has exactly four coordinates")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, val):
        raise AttributeError("Quaternion is immutable")

    # --- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, spec):
        z = spec.field.zero()
        return cls(spec, (z, z, z, z))

    @classmethod
    def one(cls, spec):
        z = spec.field.zero()
        return cls(spec, (spec.field.one(), z, z, z))

    @classmethod
    def basis(cls, spec, index):
        z = spec.field.zero()
        coords = [z, z, z, z]
        coords[index] = spec.field.one()
        return cls(spec, coords)

    @classmethod
    def from_scalar(cls, spec, value):
        z = spec.field.zero()
        return cls(spec, (spec.field.element(value), z, z, z))

    @classmethod
    def pure(cls, spec, c1, c2, c3):
        return cls(spec, (spec.field.zero(), c1, c2, c3))

    # --- ring structure ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Quaternion):
            raise SpecMismatch(f"expected a quaternion, got {other!r}")
        if other.spec != self.spec:
            raise SpecMismatch("operands belong to different algebra specs")

    def __add__(self, other):
        self._check(other)
        return Quaternion(self.spec, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Quaternion(self.spec, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Quaternion(self.spec, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scaled(other)
        self._check(other)
        table = _mul_table(self.spec)
        zero = self.spec.field.zero()
        out = [zero, zero, zero, zero]
        a, b = self.coords, other.coords
        for s in range(4):
            if a[s].is_zero():
                continue
            for t in range(4):
                if b[t].is_zero():
                    continue
                c = a[s] * b[t]
                for idx, coeff in table[(s, t)]:
                    out[idx] = out[idx] + c * coeff
        return Quaternion(self.spec, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scaled(other)
        return NotImplemented

    def scaled(self, c):
        c = self.spec.field.element(c)
        return Quaternion(self.spec, tuple(c * x for x in self.coords))

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.spec == other.spec and self.coords == other.coords

    def __hash__(self):
        return hash((self.spec, self.coords))

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    # --- involution, trace, norm ------------------------------------------

    def conj(self):
        c0, c1, c2, c3 = self.coords
        if self.spec.char_two:
            return Quaternion(self.spec, (c0 + c1, c1, c2, c3))
        return Quaternion(self.spec, (c0, -c1, -c2, -c3))

    def trace(self) -> FieldElement:
        c0, c1, _, _ = self.coords
        if self.spec.char_two:
            return c1
        return c0 + c0

    def norm(self) -> FieldElement:
        c0, c1, c2, c3 = self.coords
        if self.spec.char_two:
            u, v = self.spec.params
            return (c0 * c0 + c0 * c1 + u * c1 * c1
                    + v * c2 * c2 + v * c2 * c3 + u * v * c3 * c3)
        qi, qj = self.spec.params
        return c0 * c0 - qi * c1 * c1 - qj * c2 * c2 + qi * qj * c3 * c3

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n.is_zero():
            raise NotInvertible(f"{self} has norm zero")
        return self.conj().scaled(n.inverse())

    # --- distinguished subsets ---------------------------------------------

    def is_central(self) -> bool:
        return all(c.is_zero() for c in self.coords[1:])

    def in_h0(self) -> bool:
        return self.trace().is_zero()

    def in_s2_target_set(self) -> bool:
        # odd characteristic: span{i,j,k}; characteristic 2: span{1,j,k}
        if self.spec.char_two:
            return self.coords[1].is_zero()
        return self.coords[0].is_zero()

    def embed_into(self, new_spec: AlgebraSpec) -> "Quaternion":
        if new_spec == self.spec:
            return self
        return Quaternion(new_spec, tuple(embed(c, new_spec.field) for c in self.coords))

    # --- display ------------------------------------------------------------

    def __str__(self):
        parts = []
        for c, name in zip(self.coords, BASIS_NAMES):
            if c.is_zero():
                continue
            cs = str(c)
            if name == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(name)
            elif "+" in cs or " " in cs:
                parts.append(f"({cs}) {name}")
            else:
                parts.append(f"{cs} {name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self} | {self.spec}>"

    def to_json(self):
        return [self.spec.field.to_json(c) for c in self.coords]


# ---------------------------------------------------------------------------
# operation wrappers
# ---------------------------------------------------------------------------

def basis_product(x_index: int, y_index: int, spec: AlgebraSpec) -> Quaternion:
    """Product of two of the basis elements 1, i, j, k (by index)."""
    zero = spec.field.zero()
    coords = [zero, zero, zero, zero]
    for idx, coeff in _mul_table(spec)[(x_index, y_index)]:
        coords[idx] = coords[idx] + coeff
    return Quaternion(spec, coords)


def qmul(x: Quaternion, y: Quaternion) -> Quaternion:
    return x * y


def trace_of(x: Quaternion) -> FieldElement:
    return x.trace()


def norm_of(x: Quaternion) -> FieldElement:
    return x.norm()


def qinv(x: Quaternion) -> Quaternion:
    return x.inverse()


def in_h0(x: Quaternion) -> bool:
    return x.in_h0()


def in_s2_target_set(x: Quaternion) -> bool:
    return x.in_s2_target_set()


def is_central(x: Quaternion) -> bool:
    return x.is_central()


def commutator(x: Quaternion, y: Quaternion) -> Quaternion:
    return x * y - y * x


def enumerate_quaternions(spec: AlgebraSpec):
    """All q^4 elements of a finite quaternion algebra, lexicographic order."""
    elems = spec.field.enumerate_elements()
    for c0 in elems:
        for c1 in elems:
            for c2 in elems:
                for c3 in elems:
                    yield Quaternion(spec, (c0, c1, c2, c3))


def sample_quaternion(spec: AlgebraSpec, rng, height: int = 10) -> Quaternion:
    return Quaternion(spec, tuple(spec.field.sample(rng, height) for _ in range(4)))


# ---------------------------------------------------------------------------
# parsing:  algebra specs "H(a,b)" | "Hq(qi,qj)" | "H2[u,v)"
# and quaternion literals "c0 + c1 i + c2 j + c3 k"
# ---------------------------------------------------------------------------

def parse_algebra_spec(text: str, field: Field, division_asserted=None) -> AlgebraSpec:
    s = text.strip()
    for prefix, closer in (("H2[", ")]"), ("H2(", ")]")):
        if s.startswith(prefix) and s[-1] in closer:
            u, v = (field.parse_scalar(t) for t in s[len(prefix):-1].split(","))
            return char_two_algebra(field, u, v)
    if s.startswith("Hq(") and s.endswith(")"):
        qi, qj = (field.parse_scalar(t) for t in s[3:-1].split(","))
        return odd_char_algebra(field, qi, qj, division_asserted)
    if s.startswith("H(") and s.endswith(")"):
        a, b = (field.parse_scalar(t) for t in s[2:-1].split(","))
        return h_ab(field, a, b, division_asserted)
    raise ValueError(f"cannot parse algebra spec {text!r}")


def parse_quaternion(text: str, spec: AlgebraSpec) -> Quaternion:
    """Parse 'c0 + c1 i + c2 j + c3 k' with any subset of terms present."""
    s = text.strip().replace("*", " ")
    if not s:
        raise ValueError("empty quaternion literal")
    terms = re.findall(r"([+-]?)\s*([^+-]+)", s)
    if "".join(sign + body for sign, body in terms).replace(" ", "") != s.replace(" ", ""):
        raise ValueError(f"cannot parse quaternion literal {text!r}")
    zero = spec.field.zero()
    coords = [zero, zero, zero, zero]
    index = {"i": 1, "j": 2, "k": 3}
    for sign, term in terms:
        term = term.strip()
        if not term:
            raise ValueError(f"cannot parse quaternion literal {text!r}")
        basis = 0
        if term[-1] in "ijk":
            basis = index[term[-1]]
            term = term[:-1].strip()
        coeff = spec.field.one() if term == "" else spec.field.parse_scalar(term)
        if sign == "-":
            coeff = -coeff
        coords[basis] = coords[basis] + coeff
    return Quaternion(spec, coords)
