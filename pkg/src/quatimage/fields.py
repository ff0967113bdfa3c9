"""Exact arithmetic for the four field families used throughout the package.

Four kinds of field are supported, each with fully exact arithmetic (no
floating point anywhere):

  * ``RationalField``  -- arbitrary-precision fractions (``fractions.Fraction``).
  * ``PrimeField(p)``  -- residues modulo a prime p.
  * ``BinaryField(k, modulus)`` -- GF(2^k) in polynomial basis, elements are
    bitmask integers, modulus an irreducible polynomial over GF(2).
  * ``TowerField(radicands)`` -- a real quadratic tower Q(sqrt(d1))(sqrt(d2))...,
    the concrete stand-in for a Pythagorean field.  Square roots of sums of
    squares are made available on demand through :func:`tower_adjoin`.

Elements of every kind are wrapped in :class:`FieldElement`, which overloads
the usual operators and dispatches payload arithmetic to its descriptor.
Tower elements are nested pairs ``(a, b)`` meaning ``a + b*sqrt(d)`` over the
next-lower level; the base level is a ``Fraction``.  Tower elements admit
exact sign determination and a complete square-root decision procedure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction


class FieldError(Exception):
    """Base class for field arithmetic errors."""


class DescriptorMismatch(FieldError):
    """Two operands belong to different field descriptors."""


class InfiniteFieldError(FieldError):
    """A finite enumeration was requested from an infinite field."""


class NonPositiveRadicand(FieldError):
    """Tower extension requires a strictly positive radicand."""


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with fixed witness set)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Witnesses below are sufficient for all n < 3.3 * 10**24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _mod_sqrt(a: int, p: int):
    """A square root of a mod p, or None.  Returns the root in [0, p/2]."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks.
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


# carryless polynomial arithmetic over GF(2) on bitmask integers

def _pmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _pmod(a: int, mod: int) -> int:
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


def poly2_is_irreducible(mod: int) -> bool:
    """Exhaustive trial division; intended for degrees up to 16."""
    k = mod.bit_length() - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _pmod(mod, q) == 0:
                return False
    return True


# degree -> conventional irreducible modulus, bits high-to-low
DEFAULT_BINARY_MODULI = {
    1: 0b11,          # x + 1
    2: 0b111,         # x^2 + x + 1
    3: 0b1011,        # x^3 + x + 1
    4: 0b10011,       # x^4 + x + 1
    5: 0b100101,      # x^5 + x^2 + 1
    6: 0b1011011,     # x^6 + x^4 + x^3 + x + 1
    7: 0b10000011,    # x^7 + x + 1
    8: 0b100011101,   # x^8 + x^4 + x^3 + x^2 + 1
}


# ---------------------------------------------------------------------------
# element wrapper
# ---------------------------------------------------------------------------

class FieldElement:
    """An exact element of one of the supported fields.

    The payload representation depends on the descriptor kind; all operators
    delegate to the descriptor.  Elements are immutable and hashable.
    """

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DescriptorMismatch(
                    f"operands live in different fields: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(o.value, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = self.field.one()
        for _ in range(abs(n)):
            result = result * base
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {self.field}")
        return FieldElement(self.field, self.field._inv(self.value))

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def is_one(self) -> bool:
        return self == self.field.one()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field.element(other)
            except (ValueError, TypeError):
                return NotImplemented
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def sign(self) -> int:
        """Exact sign (-1, 0, +1); only ordered kinds support this."""
        return self.field._sign(self.value)

    def sqrt_if_square(self):
        """A canonical square root inside this field, or None."""
        r = self.field._sqrt(self.value)
        if r is None:
            return None
        return FieldElement(self.field, r)

    def __str__(self):
        return self.field.format_scalar(self)

    def __repr__(self):
        return f"<{self} in {self.field}>"


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

class Field:
    """Shared behaviour of field descriptors (a descriptor is the field)."""

    kind = "?"

    def element(self, value) -> FieldElement:
        raise NotImplementedError

    def zero(self) -> FieldElement:
        return self.element(0)

    def one(self) -> FieldElement:
        return self.element(1)

    def characteristic(self) -> int:
        raise NotImplementedError

    def order(self):
        """Number of elements, or None when infinite."""
        return None

    def enumerate_elements(self):
        raise InfiniteFieldError(f"{self} is infinite")

    def sample(self, rng: random.Random, height: int = 10) -> FieldElement:
        raise NotImplementedError

    def parse_scalar(self, text: str) -> FieldElement:
        return self.element(Fraction(text.strip()))

    def format_scalar(self, x: FieldElement) -> str:
        return str(x.value)

    def to_json(self, x: FieldElement):
        return str(x.value)

    def _sign(self, v):
        raise FieldError(f"{self} is not an ordered field")

    def _is_zero(self, v) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class RationalField(Field):
    """The rational numbers with reduced-fraction representation."""

    kind = "Rational"

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DescriptorMismatch(f"{value!r} is not rational")
            return value
        return FieldElement(self, Fraction(value))

    def characteristic(self):
        return 0

    def sample(self, rng, height=10):
        return self.element(Fraction(rng.randint(-height, height), rng.randint(1, height)))

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _sign(self, a):
        return (a > 0) - (a < 0)

    def _sqrt(self, a):
        if a < 0:
            return None
        rn, rd = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if rn * rn == a.numerator and rd * rd == a.denominator:
            return Fraction(rn, rd)
        return None

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    """GF(p) for prime p; payloads are residues in [0, p)."""

    p: int
    kind = "Prime"

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DescriptorMismatch(f"{value!r} does not live in {self}")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return FieldElement(
                self, value.numerator * pow(value.denominator, -1, self.p) % self.p)
        return FieldElement(self, int(value) % self.p)

    def characteristic(self):
        return self.p

    def order(self):
        return self.p

    def enumerate_elements(self):
        return [FieldElement(self, r) for r in range(self.p)]

    def sample(self, rng, height=10):
        return FieldElement(self, rng.randrange(self.p))

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _sqrt(self, a):
        return _mod_sqrt(a, self.p)

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class BinaryField(Field):
    """GF(2^k) in polynomial basis; payloads are bitmask integers."""

    k: int
    modulus: int = 0
    kind = "Binary"

    def __post_init__(self):
        if self.modulus == 0:
            if self.k not in DEFAULT_BINARY_MODULI:
                raise ValueError(f"no default modulus for degree {self.k}")
            object.__setattr__(self, "modulus", DEFAULT_BINARY_MODULI[self.k])
        if self.modulus.bit_length() - 1 != self.k:
            raise ValueError(f"modulus degree {self.modulus.bit_length() - 1} != {self.k}")
        if self.k > 16:
            raise ValueError("binary fields supported up to degree 16")
        if not poly2_is_irreducible(self.modulus):
            raise ValueError(f"modulus {bin(self.modulus)} is reducible over GF(2)")

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DescriptorMismatch(f"{value!r} does not live in {self}")
            return value
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"cannot coerce {value} into {self}")
            value = value.numerator
        v = int(value)
        if v in (0, 1):
            return FieldElement(self, v)
        if v < 0 or v >= (1 << self.k):
            v = _pmod(abs(v), self.modulus)
        return FieldElement(self, v)

    def characteristic(self):
        return 2

    def order(self):
        return 1 << self.k

    def enumerate_elements(self):
        return [FieldElement(self, b) for b in range(1 << self.k)]

    def sample(self, rng, height=10):
        return FieldElement(self, rng.randrange(1 << self.k))

    def _add(self, a, b):
        return a ^ b

    _sub = _add

    def _mul(self, a, b):
        return _pmod(_pmul(a, b), self.modulus)

    def _neg(self, a):
        return a

    def _inv(self, a):
        # a^(2^k - 2); the group of units is cyclic of order 2^k - 1.
        result, base, e = 1, a, (1 << self.k) - 2
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _is_zero(self, a):
        return a == 0

    def _sqrt(self, a):
        # Squaring is the Frobenius bijection, so the root is unique.
        r = a
        for _ in range(self.k - 1):
            r = self._mul(r, r)
        return r

    def parse_scalar(self, text):
        return self.element(int(text.strip(), 0))

    def __str__(self):
        return f"GF(2^{self.k}:{self.modulus:b})"


# --- quadratic towers ------------------------------------------------------
#
# A tower of depth n has radicands (d_1, ..., d_n); d_t is stored as a payload
# of depth t-1.  A payload of depth t >= 1 is a pair (a, b) of depth-(t-1)
# payloads meaning a + b*sqrt(d_t); depth 0 is a Fraction.

def _tzero(depth):
    return Fraction(0) if depth == 0 else (_tzero(depth - 1), _tzero(depth - 1))


def _tlift(v, depth_from, depth_to):
    for d in range(depth_from, depth_to):
        v = (v, _tzero(d))
    return v


def _tfromfrac(q, depth):
    return _tlift(Fraction(q), 0, depth)


def _tadd(x, y, depth):
    if depth == 0:
        return x + y
    return (_tadd(x[0], y[0], depth - 1), _tadd(x[1], y[1], depth - 1))


def _tsub(x, y, depth):
    if depth == 0:
        return x - y
    return (_tsub(x[0], y[0], depth - 1), _tsub(x[1], y[1], depth - 1))


def _tneg(x, depth):
    if depth == 0:
        return -x
    return (_tneg(x[0], depth - 1), _tneg(x[1], depth - 1))


def _tiszero(x, depth):
    if depth == 0:
        return x == 0
    return _tiszero(x[0], depth - 1) and _tiszero(x[1], depth - 1)


class TowerError(FieldError):
    pass


@dataclass(frozen=True)
class TowerField(Field):
    """An iterated real quadratic extension of Q.

    ``radicands[t]`` is the payload (at depth t) whose square root generates
    level t+1.  Every radicand is positive and is not a square at its own
    level, so each step is a genuine quadratic field extension and division
    stays total on nonzero elements.
    """

    radicands: tuple = ()
    kind = "Tower"

    def __post_init__(self):
        for t, d in enumerate(self.radicands):
            prefix = TowerField(self.radicands[:t])
            elem = FieldElement(prefix, d)
            if elem.sign() <= 0:
                raise NonPositiveRadicand(f"radicand {elem} at level {t} is not positive")
            if prefix._sqrt(d) is not None:
                raise ValueError(
                    f"radicand {elem} at level {t} is already a square; "
                    "the extension would be degenerate")

    @property
    def depth(self):
        return len(self.radicands)

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if isinstance(value.field, TowerField) and \
                    self.radicands[:value.field.depth] == value.field.radicands:
                return FieldElement(self, _tlift(value.value, value.field.depth, self.depth))
            if isinstance(value.field, RationalField):
                return FieldElement(self, _tfromfrac(value.value, self.depth))
            raise DescriptorMismatch(f"{value!r} does not embed into {self}")
        return FieldElement(self, _tfromfrac(Fraction(value), self.depth))

    def characteristic(self):
        return 0

    def sample(self, rng, height=10):
        def rand(depth):
            if depth == 0:
                return Fraction(rng.randint(-height, height), rng.randint(1, height))
            return (rand(depth - 1), rand(depth - 1))

        return FieldElement(self, rand(self.depth))

    def adjoin_root(self, x: FieldElement) -> "TowerField":
        """Smallest extension of this tower containing sqrt(x); see tower_adjoin."""
        x = self.element(x)
        if x.sign() <= 0:
            raise NonPositiveRadicand(f"cannot adjoin a root of non-positive {x}")
        if self._sqrt(x.value) is not None:
            return self
        return TowerField(self.radicands + (x.value,))

    def _add(self, a, b):
        return _tadd(a, b, self.depth)

    def _sub(self, a, b):
        return _tsub(a, b, self.depth)

    def _neg(self, a):
        return _tneg(a, self.depth)

    def _mul(self, a, b, depth=None):
        d = self.depth if depth is None else depth
        if d == 0:
            return a * b
        rad = self.radicands[d - 1]
        a0, a1 = a
        b0, b1 = b
        m = lambda x, y: self._mul(x, y, d - 1)
        return (_tadd(m(a0, b0), m(m(a1, b1), rad), d - 1),
                _tadd(m(a0, b1), m(a1, b0), d - 1))

    def _inv(self, a, depth=None):
        d = self.depth if depth is None else depth
        if d == 0:
            return 1 / a
        rad = self.radicands[d - 1]
        a0, a1 = a
        m = lambda x, y: self._mul(x, y, d - 1)
        n = _tsub(m(a0, a0), m(m(a1, a1), rad), d - 1)
        if _tiszero(n, d - 1):
            raise ZeroDivisionError("degenerate tower element has zero norm")
        ninv = self._inv(n, d - 1)
        return (m(a0, ninv), _tneg(m(a1, ninv), d - 1))

    def _is_zero(self, a):
        return _tiszero(a, self.depth)

    def _sign(self, a, depth=None):
        d = self.depth if depth is None else depth
        if d == 0:
            return (a > 0) - (a < 0)
        a0, a1 = a
        s0, s1 = self._sign(a0, d - 1), self._sign(a1, d - 1)
        if s1 == 0:
            return s0
        if s0 == 0:
            return s1
        if s0 == s1:
            return s0
        # opposite signs: compare a0^2 against a1^2 * rad
        m = lambda x, y: self._mul(x, y, d - 1)
        diff = _tsub(m(a0, a0), m(m(a1, a1), self.radicands[d - 1]), d - 1)
        t = self._sign(diff, d - 1)
        if t == 0:
            return 0
        return s0 if t > 0 else s1

    def _sqrt(self, a, depth=None):
        """Complete square-root decision in the tower; canonical root is >= 0."""
        d = self.depth if depth is None else depth
        if d == 0:
            if a < 0:
                return None
            rn, rd = math.isqrt(a.numerator), math.isqrt(a.denominator)
            if rn * rn == a.numerator and rd * rd == a.denominator:
                return Fraction(rn, rd)
            return None
        a0, a1 = a
        rad = self.radicands[d - 1]
        m = lambda x, y: self._mul(x, y, d - 1)
        zero = _tzero(d - 1)
        if _tiszero(a1, d - 1):
            r = self._sqrt(a0, d - 1)
            if r is not None:
                return self._abs_payload((r, zero), d)
            # a0 = (v*sqrt(rad))^2 requires a0/rad to be a square below.
            q = m(a0, self._inv(rad, d - 1))
            r = self._sqrt(q, d - 1)
            if r is not None:
                return self._abs_payload((zero, r), d)
            return None
        n = _tsub(m(a0, a0), m(m(a1, a1), rad), d - 1)
        s = self._sqrt(n, d - 1)
        if s is None:
            return None
        two = _tfromfrac(Fraction(2), d - 1)
        for cand_s in (s, _tneg(s, d - 1)):
            h = self._mul(_tadd(a0, cand_s, d - 1), self._inv(two, d - 1), d - 1)
            u = self._sqrt(h, d - 1)
            if u is None or _tiszero(u, d - 1):
                continue
            v = self._mul(a1, self._inv(m(two, u), d - 1), d - 1)
            cand = (u, v)
            if self._mul(cand, cand, d) == a:
                return self._abs_payload(cand, d)
        return None

    def _abs_payload(self, a, depth):
        return _tneg(a, depth) if self._sign(a, depth) < 0 else a

    def format_scalar(self, x):
        names = [f"sqrt({self._fmt(r, t)})" for t, r in enumerate(self.radicands)]

        def fmt(v, depth):
            if depth == 0:
                return str(v)
            a, b = v
            if _tiszero(b, depth - 1):
                return fmt(a, depth - 1)
            bs = fmt(b, depth - 1)
            term = names[depth - 1] if bs == "1" else f"{bs}*{names[depth - 1]}"
            if _tiszero(a, depth - 1):
                return term
            return f"{fmt(a, depth - 1)} + {term}"

        return fmt(x.value, self.depth)

    def _fmt(self, payload, depth):
        return TowerField(self.radicands[:depth]).format_scalar(
            FieldElement(TowerField(self.radicands[:depth]), payload))

    def to_json(self, x):
        def conv(v, depth):
            if depth == 0:
                return str(v)
            return [conv(v[0], depth - 1), conv(v[1], depth - 1)]

        return conv(x.value, self.depth)

    def __str__(self):
        if not self.radicands:
            return "QTower[]"
        return "QTower[" + ",".join(self._fmt(r, t) for t, r in enumerate(self.radicands)) + "]"


# ---------------------------------------------------------------------------
# module-level operations mirroring the public contracts
# ---------------------------------------------------------------------------

def arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    """Dispatch basic field arithmetic by name."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


def characteristic(field: Field) -> int:
    return field.characteristic()


def sqrt_if_square(x: FieldElement):
    """Canonical square root of x in its own field, or None.

    Prime fields return the root in [0, p/2]; towers the non-negative root;
    binary fields the unique root.  This never extends a tower.
    """
    return x.sqrt_if_square()


def tower_adjoin(field: TowerField, x) -> TowerField:
    """Extend a tower so that sqrt(x) exists; unchanged if it already does."""
    if not isinstance(field, TowerField):
        raise FieldError("adjoin is only available on tower fields")
    return field.adjoin_root(field.element(x))


def enumerate_elements(field: Field):
    return field.enumerate_elements()


def sample_element(field: Field, rng, height: int = 10) -> FieldElement:
    """Deterministic pseudo-random element; rng is a seed or random.Random."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    return field.sample(rng, height)


def embed(x: FieldElement, target: Field) -> FieldElement:
    """Embed x into target, which must contain x's field."""
    if x.field == target:
        return x
    return target.element(x)


# ---------------------------------------------------------------------------
# field spec grammar:  Q | GF(p) | GF(2^k) | GF(2^k:bits) | QTower[d1,...]
# ---------------------------------------------------------------------------

def parse_field_spec(text: str) -> Field:
    s = text.strip()
    if s == "Q":
        return RationalField()
    if s.startswith("QTower[") and s.endswith("]"):
        inner = s[len("QTower["):-1].strip()
        field = TowerField()
        if inner:
            for part in inner.split(","):
                field = TowerField(field.radicands + (_tfromfrac(Fraction(part.strip()), field.depth),))
        return field
    if s.startswith("GF(") and s.endswith(")"):
        inner = s[3:-1].strip()
        if inner.startswith("2^"):
            body = inner[2:]
            if ":" in body:
                kpart, bits = body.split(":", 1)
                return BinaryField(int(kpart), int(bits.strip(), 2))
            return BinaryField(int(body))
        p = int(inner)
        if not is_prime(p):
            raise ValueError(
                f"GF({p}) needs a prime; for prime powers use GF(2^k:bits)")
        return PrimeField(p)
    raise ValueError(f"cannot parse field spec {text!r}")
