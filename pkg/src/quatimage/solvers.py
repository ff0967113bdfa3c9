"""Witness-producing constructions for quaternion polynomial images.

Every solver returns explicit witnesses and re-verifies its defining
equations exactly before returning; a failed re-verification raises
:class:`PostCheckError` rather than ever returning a wrong answer.
Constructions over quadratic towers may extend the tower when a square root
is required; each adjunction is recorded, and returned values then live over
the extended field (visible through their spec).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dataclass_field

from . import linalg
from .fields import FieldElement, TowerField, embed
from .multilinear import MultilinearPoly, evaluate, evaluate_vk_nested
from .quaternion import (AlgebraSpec, NotInvertible, Quaternion,
                         sample_quaternion)


class SolverError(Exception):
    pass


class PostCheckError(SolverError):
    """A constructed witness failed its own defining equations (internal error)."""


class NoSolutionCertificate(SolverError):
    """The construction's obligations cannot be met; carries the failing one."""

    def __init__(self, obligation, value=None):
        super().__init__(obligation if value is None else f"{obligation}: {value}")
        self.obligation = obligation
        self.value = value


class DegenerateCase(NoSolutionCertificate):
    """Characteristic-2 corner a = b = c != 0 where the quadric system is
    provably unsolvable (the linear form forces x1+x2+x3 = 0 while the
    quadric needs (x1+x2+x3)^2 = 1)."""


class TargetNotPure(SolverError):
    pass


class NoNonzeroSolution(SolverError):
    pass


class NotCanonicalizable(SolverError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class PolynomialCentralOrZero(SolverError):
    pass


class SearchBudgetExhausted(SolverError):
    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats or {}


class NoInvertibleCommutator(SolverError):
    pass


class DepthTooLarge(SolverError):
    pass


MAX_VK_DEPTH = 10


# ---------------------------------------------------------------------------
# solution containers (validated on construction)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereSolution:
    """x1^2 + x2^2 + x3^2 = 1 with a x1 + b x2 + c x3 = 0."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    x1: FieldElement
    x2: FieldElement
    x3: FieldElement
    adjoined: tuple = ()

    def __post_init__(self):
        f = self.x1.field
        one = f.one()
        a, b, c = (embed(v, f) for v in (self.a, self.b, self.c))
        if self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3 != one:
            raise PostCheckError("sphere equation violated")
        if not (a * self.x1 + b * self.x2 + c * self.x3).is_zero():
            raise PostCheckError("orthogonality equation violated")

    @property
    def field(self):
        return self.x1.field

    def vector(self):
        return (self.x1, self.x2, self.x3)


@dataclass(frozen=True)
class CrossSolution:
    """x2 x6 - x3 x5 = a,  x3 x4 - x1 x6 = b,  x1 x5 - x2 x4 = c."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    xs: tuple  # (x1, ..., x6)
    adjoined: tuple = ()
    method: str = "sphere"

    def __post_init__(self):
        x1, x2, x3, x4, x5, x6 = self.xs
        f = x1.field
        a, b, c = (embed(v, f) for v in (self.a, self.b, self.c))
        if (x2 * x6 - x3 * x5 != a or x3 * x4 - x1 * x6 != b
                or x1 * x5 - x2 * x4 != c):
            raise PostCheckError("cross equations violated")

    @property
    def field(self):
        return self.xs[0].field


@dataclass(frozen=True)
class ImageWitness:
    """Arguments together with the exactly re-verified value they produce."""

    args: tuple
    value: Quaternion
    adjoined: tuple = ()
    stats: dict = dataclass_field(default_factory=dict)
    post_checked: bool = True

    @property
    def spec(self):
        return self.value.spec

    def to_json(self):
        return {
            "arguments": [a.to_json() for a in self.args],
            "value": self.value.to_json(),
            "adjoined_roots": [str(r) for r in self.adjoined],
            "search_stats": dict(self.stats),
            "post_check": self.post_checked,
        }


def _checked_witness(p, args, expected, adjoined=(), stats=None):
    got = evaluate(p, args)
    if got != expected:
        raise PostCheckError(f"witness evaluates to {got}, expected {expected}")
    return ImageWitness(tuple(args), expected, tuple(adjoined), stats or {})


# ---------------------------------------------------------------------------
# square roots with tower extension on demand
# ---------------------------------------------------------------------------

def _sqrt_or_adjoin(x: FieldElement, adjoin: bool, adjoined: list, exc_class,
                    obligation: str):
    r = x.sqrt_if_square()
    if r is not None:
        return r
    f = x.field
    if adjoin and isinstance(f, TowerField) and x.sign() > 0:
        nf = f.adjoin_root(x)
        lifted = embed(x, nf)
        adjoined.append(lifted)
        return lifted.sqrt_if_square()
    raise exc_class(obligation, value=x)


# ---------------------------------------------------------------------------
# the quadric/orthogonality system and forcing a target cross product
# ---------------------------------------------------------------------------

def solve_sphere_orthogonal(a, b, c, field=None, adjoin=True):
    """The case tree behind the unit-sphere-with-orthogonality system.

    Over quadratic towers the square-root obligation in the anisotropic case
    is met by extending the tower (recorded in ``adjoined``).  Over other
    fields a missing root raises :class:`NoSolutionCertificate`.
    """
    if field is None:
        field = a.field
    a, b, c = field.element(a), field.element(b), field.element(c)
    adjoined = []
    sol = _sphere(a, b, c, field, adjoin, adjoined)
    x1, x2, x3 = sol
    return SphereSolution(a, b, c, x1, x2, x3, tuple(adjoined))


def _sphere(a, b, c, field, adjoin, adjoined):
    one, zero = field.one(), field.zero()
    if a.is_zero() and b.is_zero() and c.is_zero():
        return (one, zero, zero)
    if a.is_zero():
        if b.is_zero():
            # only c x3 = 0 constrains; x3 = 0 and x1 = 1 works
            return (one, zero, zero)
        y1, y2, y3 = _sphere(b, a, c, field, adjoin, adjoined)
        return (y2, y1, y3)
    char2 = field.characteristic() == 2
    n = a * a + b * b
    if n.is_zero():
        # b != 0 here since a != 0
        if c.is_zero():
            return (-b / a, one, one)
        if not char2:
            two = one + one
            return (-c / (two * a), -c / (two * b), one)
        # characteristic 2 with a = b
        if (a + c).is_zero():
            raise DegenerateCase(
                "a = b = c != 0 in characteristic 2: the constraint forces "
                "x1+x2+x3 = 0 while the quadric needs (x1+x2+x3)^2 = 1")
        s = (a + c).inverse()
        return (zero, c * s, a * s)
    if char2:
        s = (a + b).inverse()
        return (b * s, a * s, zero)
    d = _sqrt_or_adjoin(n, adjoin, adjoined, NoSolutionCertificate,
                        "a^2 + b^2 must be a square in the coefficient field")
    f2 = d.field
    a2, b2 = embed(a, f2), embed(b, f2)
    return (-b2 / d, a2 / d, f2.zero())


def solve_cross(a, b, c, field=None, adjoin=True, linear_fallback=None):
    """Six values satisfying the three bilinear cross-product equations.

    The primary route derives them from :func:`solve_sphere_orthogonal`.
    When that route's obligations fail the solver can fall back to picking a
    nonzero vector orthogonal to (a, b, c) and solving the resulting
    consistent linear system; the fallback is enabled by default exactly on
    finite fields.
    """
    if field is None:
        field = a.field
    a, b, c = field.element(a), field.element(b), field.element(c)
    if linear_fallback is None:
        linear_fallback = field.order() is not None
    try:
        sph = solve_sphere_orthogonal(a, b, c, field, adjoin=adjoin)
        f2 = sph.field
        a2, b2, c2 = (embed(v, f2) for v in (a, b, c))
        x1, x2, x3 = sph.vector()
        x4 = b2 * x3 - x2 * c2
        x5 = x1 * c2 - a2 * x3
        x6 = a2 * x2 - x1 * b2
        return CrossSolution(a2, b2, c2, (x1, x2, x3, x4, x5, x6),
                             sph.adjoined, "sphere")
    except DegenerateCase:
        # a = b = c != 0 in characteristic 2: the cross system is still
        # solvable even though the quadric system is not.
        one, zero = field.one(), field.zero()
        xs = (one, one, zero, zero, a, a)
        return CrossSolution(a, b, c, xs, (), "direct-char2")
    except NoSolutionCertificate:
        if not linear_fallback:
            raise
        return _cross_linear(a, b, c, field)


def _cross_linear(a, b, c, field):
    # Pick x nonzero with <x, (a,b,c)> = 0; then x cross y = t is a
    # consistent linear system for y (the image of y -> x cross y is exactly
    # the plane orthogonal to x).
    zero, one = field.zero(), field.one()
    if a.is_zero() and b.is_zero():
        x = (one, zero, zero)
    else:
        x = (-b, a, zero)
    x1, x2, x3 = x
    rows = [[zero, -x3, x2],
            [x3, zero, -x1],
            [-x2, x1, zero]]
    y = linalg.solve(rows, [a, b, c])
    if y is None:
        raise PostCheckError("orthogonal cross system unexpectedly inconsistent")
    return CrossSolution(a, b, c, (x1, x2, x3, y[0], y[1], y[2]), (), "orthogonal")


# ---------------------------------------------------------------------------
# commutator decomposition and the iterated-commutator recursion
# ---------------------------------------------------------------------------

def commutator_decompose(target: Quaternion, adjoin=True, linear_fallback=None,
                         adjoined=None):
    """Write a trace-compatible target as a single commutator.

    Returns a pair (x, y) with x*y - y*x == target exactly; over towers the
    pair may live over an extended tower.  The target must lie in the
    candidate commutator-image set of its algebra.
    """
    spec = target.spec
    if not target.in_s2_target_set():
        raise TargetNotPure(f"{target} lies outside the commutator target set")
    if target.is_zero():
        z = Quaternion.zero(spec)
        return z, z
    f = spec.field
    if spec.char_two:
        u_, v_ = spec.params
        alpha = target.coords[0] / v_
        beta = target.coords[2]
        gamma = target.coords[3]
        cross = solve_cross(-alpha, -gamma, beta, f, adjoin=adjoin,
                            linear_fallback=linear_fallback)
    else:
        qi, qj = spec.params
        two = f.one() + f.one()
        alpha, beta, gamma = target.coords[1], target.coords[2], target.coords[3]
        cross = solve_cross(-alpha / (two * qj), -beta / (two * qi), gamma / two,
                            f, adjoin=adjoin, linear_fallback=linear_fallback)
    spec2 = spec.with_field(cross.field)
    x1, x2, x3, x4, x5, x6 = cross.xs
    u = Quaternion.pure(spec2, x1, x2, x3)
    w = Quaternion.pure(spec2, x4, x5, x6)
    expected = target.embed_into(spec2)
    if u * w - w * u != expected:
        raise PostCheckError("commutator decomposition failed re-evaluation")
    if adjoined is not None:
        adjoined.extend(cross.adjoined)
    return u, w


def vk_decompose(target: Quaternion, k: int, adjoin=True) -> ImageWitness:
    """Arguments realizing the target under the iterated commutator of depth k.

    Follows the recursion: split the target as a commutator of two elements
    that are themselves inside the commutator target set, then recurse.  In
    characteristic 2 the recursion is only possible on the collapsed image
    chain (scalar multiples of j^2 at depth 2, zero from depth 3 on).
    """
    if k < 1:
        raise DepthTooLarge("depth must be at least 1")
    if k > MAX_VK_DEPTH:
        raise DepthTooLarge(f"depth {k} exceeds the configured bound {MAX_VK_DEPTH}")
    adjoined: list = []
    args = _vk_rec(target, k, adjoin, adjoined)
    spec = args[0].spec
    args = tuple(a.embed_into(spec) for a in args)
    expected = target.embed_into(spec)
    got = evaluate_vk_nested(args)
    if got != expected:
        raise PostCheckError("iterated-commutator witness failed re-evaluation")
    return ImageWitness(args, expected, tuple(adjoined), {"depth": k})


def _vk_rec(target, k, adjoin, adjoined):
    spec = target.spec
    if k == 1:
        return list(commutator_decompose(target, adjoin=adjoin, adjoined=adjoined))
    if target.is_zero():
        z = Quaternion.zero(spec)
        return [z] * (2 ** k)
    if spec.char_two:
        b1, b2 = _char2_split_in_target_set(target, k)
    else:
        b1, b2 = commutator_decompose(target, adjoin=adjoin, adjoined=adjoined)
    left = _vk_rec(b1, k - 1, adjoin, adjoined)
    spec2 = left[0].spec
    right = _vk_rec(b2.embed_into(spec2), k - 1, adjoin, adjoined)
    spec3 = right[0].spec
    return [a.embed_into(spec3) for a in left] + right


def _char2_split_in_target_set(target, k):
    # Commutators of two elements of span{1, j, k} are central multiples of
    # j^2 = v, so a depth >= 2 target must be such a multiple (and must be
    # zero from depth 3 on); see the package notes on the image chain.
    spec = target.spec
    c0, c1, c2, c3 = target.coords
    if not (c2.is_zero() and c3.is_zero()):
        raise NoSolutionCertificate(
            "iterated commutators of depth >= 2 collapse to scalar multiples "
            "of j^2 in characteristic 2; target is not such a multiple",
            value=target)
    if k >= 3:
        raise NoSolutionCertificate(
            "iterated commutators of depth >= 3 vanish identically in "
            "characteristic 2; only the zero target is realizable", value=target)
    lam = c0 / spec.v
    b1 = Quaternion.pure(spec, spec.field.zero(), lam, spec.field.zero())  # lam * j
    b2 = Quaternion.basis(spec, 3)                                         # k
    return b1, b2


# ---------------------------------------------------------------------------
# intertwiners and conjugation to the canonical axis
# ---------------------------------------------------------------------------

def solve_intertwiner(alpha: Quaternion, beta: Quaternion) -> Quaternion:
    """A nonzero x with alpha * x == x * beta, by exact kernel computation."""
    if alpha.spec != beta.spec:
        raise SolverError("intertwiner endpoints live in different algebras")
    spec = alpha.spec
    rows = [[None] * 4 for _ in range(4)]
    for t in range(4):
        e = Quaternion.basis(spec, t)
        col = (alpha * e - e * beta).coords
        for r in range(4):
            rows[r][t] = col[r]
    basis = linalg.kernel(rows, 4, spec.field)
    if not basis:
        raise NoNonzeroSolution(
            f"only the zero solution intertwines {alpha} and {beta}"
            + ("" if spec.char_two else
               f" (necessary condition holds: {flaut_condition(alpha, beta)})"))
    x = Quaternion(spec, basis[0])
    if alpha * x != x * beta:
        raise PostCheckError("intertwiner failed re-evaluation")
    return x


def flaut_condition(alpha: Quaternion, beta: Quaternion) -> bool:
    """Diagnostic for odd characteristic: the classical necessary and
    sufficient condition for a nonzero intertwiner in a division algebra."""
    spec = alpha.spec
    if spec.char_two:
        raise SolverError("the intertwiner condition is stated for odd characteristic")
    a, b = -spec.qi, -spec.qj
    a0, a1, a2, a3 = alpha.coords
    b0, b1, b2, b3 = beta.coords
    qa = a * a1 * a1 + b * a2 * a2 + a * b * a3 * a3
    qb = a * b1 * b1 + b * b2 * b2 + a * b * b3 * b3
    return a0 == b0 and qa == qb


def conjugate_to_canonical(alpha: Quaternion, adjoin=True, adjoined=None):
    """Find invertible g and r with g^-1 * alpha * g == a0 + r*i exactly.

    Odd characteristic only.  r satisfies r^2 = a1^2 + (qj/qi) a2^2 - qj a3^2;
    over towers the root is adjoined on demand.
    """
    spec = alpha.spec
    if spec.char_two:
        raise SolverError("canonicalization to the i-axis needs odd characteristic")
    if alpha.is_central():
        return Quaternion.one(spec), alpha
    qi, qj = spec.params
    _, a1, a2, a3 = alpha.coords
    s = a1 * a1 + (qj / qi) * a2 * a2 - qj * a3 * a3
    local_adjoined: list = []
    if s.is_zero():
        r = spec.field.zero()
    else:
        r = _sqrt_or_adjoin(s, adjoin, local_adjoined, NotCanonicalizable,
                            "the canonical radius squared must be a square")
    spec2 = spec.with_field(r.field)
    alpha2 = alpha.embed_into(spec2)
    zero = spec2.field.zero()
    canonical = Quaternion(spec2, (embed(alpha.coords[0], spec2.field), r, zero, zero))
    g = solve_intertwiner(alpha2, canonical)
    if g.norm().is_zero():
        raise NotInvertible(
            f"the intertwiner {g} is not invertible (split algebra); "
            "canonicalization is unavailable for this element")
    if g.inverse() * alpha2 * g != canonical:
        raise PostCheckError("conjugation to canonical form failed re-evaluation")
    if adjoined is not None:
        adjoined.extend(local_adjoined)
    return g, canonical


# ---------------------------------------------------------------------------
# basis-tuple values and the containment construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisHit:
    args: tuple
    coefficient: FieldElement
    basis_index: int


def basis_value_search(p: MultilinearPoly, spec: AlgebraSpec):
    """Scan all 4^m basis tuples for a value c*q with c != 0 and q != 1.

    In odd characteristic every basis-tuple value is a scalar multiple of a
    single basis element; the scan verifies this shape for every tuple and
    raises if it fails (it does fail in characteristic 2, where basis
    products such as j*i = j + k are not monomial).
    """
    hit = None
    for combo in itertools.product(range(4), repeat=p.m):
        args = tuple(Quaternion.basis(spec, t) for t in combo)
        value = evaluate(p, args)
        support = [t for t in range(4) if not value.coords[t].is_zero()]
        if len(support) > 1:
            raise SolverError(
                f"basis tuple {combo} evaluates to {value}, which is not a "
                "scalar multiple of a basis element; this presentation does "
                "not have monomial basis products")
        if hit is None and support and support[0] != 0:
            hit = BasisHit(args, value.coords[support[0]], support[0])
    return hit


def express_pure_in_image(p: MultilinearPoly, target: Quaternion, adjoin=True
                          ) -> ImageWitness:
    """Realize a target from the commutator target set as a value of p.

    Odd characteristic with division guarantees: conjugates the target to the
    i-axis, finds a non-central basis value of p, aligns it with the same
    axis, and rescales one argument.
    """
    spec = target.spec
    if spec.char_two:
        raise SolverError("the containment construction needs odd characteristic")
    if not target.in_s2_target_set():
        raise TargetNotPure(f"{target} has a nonzero scalar part")
    if target.is_zero():
        args = tuple(Quaternion.zero(spec) for _ in range(p.m))
        return _checked_witness(p, args, target)
    adjoined: list = []
    g, canonical = conjugate_to_canonical(target, adjoin=adjoin, adjoined=adjoined)
    spec2 = canonical.spec
    r = canonical.coords[1]
    hit = basis_value_search(p, spec2)
    if hit is None:
        raise PolynomialCentralOrZero(
            "every basis value of the polynomial is central; the containment "
            "construction does not apply")
    xprime = Quaternion.basis(spec2, hit.basis_index)
    if hit.basis_index == 1:
        h = Quaternion.one(spec2)
        r2 = spec2.field.one()
        spec3 = spec2
    else:
        h, canon2 = conjugate_to_canonical(xprime, adjoin=adjoin, adjoined=adjoined)
        spec3 = canon2.spec
        r2 = canon2.coords[1]
    g3 = g.embed_into(spec3)
    scale = embed(r, spec3.field) / (embed(hit.coefficient, spec3.field) * r2)
    w = g3 * h.inverse()
    winv = w.inverse()
    args = [w * z.embed_into(spec3) * winv for z in hit.args]
    args[0] = args[0].scaled(scale)
    expected = target.embed_into(spec3)
    return _checked_witness(p, args, expected, adjoined,
                            {"basis_index": hit.basis_index})


# ---------------------------------------------------------------------------
# full-image realization (non-pure targets)
# ---------------------------------------------------------------------------

def realize_element(p: MultilinearPoly, target: Quaternion, adjoin=True,
                    search_budget=10 ** 5, seed=0) -> ImageWitness:
    """Realize an arbitrary target as a value of p.

    Requires a tuple where p takes a nonzero central value together with a
    single-slot replacement making it non-central; the tuple is found by
    searching basis tuples first and then seeded random tuples.
    """
    spec = target.spec
    if spec.char_two:
        raise SolverError("the realization construction needs odd characteristic")
    if target.in_s2_target_set():
        return express_pure_in_image(p, target, adjoin=adjoin)
    rng = random.Random(seed)
    found, evals = _central_with_replacement(p, spec, search_budget, rng)
    base_args, idx, replacement, alpha_q, beta = found
    alpha = alpha_q.coords[0]
    adjoined: list = []
    g, can_beta = conjugate_to_canonical(beta, adjoin=adjoin, adjoined=adjoined)
    spec2 = can_beta.spec
    a_prime, r_prime = can_beta.coords[0], can_beta.coords[1]
    if r_prime.is_zero():
        raise PostCheckError("non-central value canonicalized to a scalar")
    hx, can_x = conjugate_to_canonical(target.embed_into(spec2), adjoin=adjoin,
                                       adjoined=adjoined)
    spec3 = can_x.spec
    a, r = can_x.coords[0], can_x.coords[1]

    f3 = spec3.field
    g = g.embed_into(spec3)
    ginv = g.inverse()
    base_args = [q.embed_into(spec3) for q in base_args]
    replacement = replacement.embed_into(spec3)
    alpha3 = embed(alpha, f3)
    # r_slot** removes the scalar part of the replacement value
    r_star2 = replacement - base_args[idx].scaled(embed(a_prime, f3) / alpha3)
    slot = base_args[idx].scaled(a / alpha3) + \
        r_star2.scaled(r / embed(r_prime, f3))
    hxinv = hx.inverse()
    args = [hx * (ginv * q * g) * hxinv for q in base_args]
    args[idx] = hx * (ginv * slot * g) * hxinv
    expected = target.embed_into(spec3)
    return _checked_witness(p, args, expected, adjoined,
                            {"evaluations": evals, "slot": idx + 1})


def _central_with_replacement(p, spec, budget, rng):
    m = p.m
    basis = [Quaternion.basis(spec, t) for t in range(4)]
    evals = 0

    def try_replacements(args, value):
        nonlocal evals
        candidates = list(basis)
        candidates += [sample_quaternion(spec, rng) for _ in range(8)]
        for idx in range(m):
            for cand in candidates:
                if evals >= budget:
                    return None
                replaced = list(args)
                replaced[idx] = cand
                evals += 1
                beta = evaluate(p, replaced)
                if not beta.is_central():
                    return args, idx, cand, value, beta
        return None

    for combo in itertools.product(basis, repeat=m):
        if evals >= budget:
            break
        evals += 1
        value = evaluate(p, combo)
        if value.is_central() and not value.is_zero():
            found = try_replacements(list(combo), value)
            if found:
                return found, evals
    while evals < budget:
        args = tuple(sample_quaternion(spec, rng) for _ in range(m))
        evals += 1
        value = evaluate(p, args)
        if value.is_central() and not value.is_zero():
            found = try_replacements(list(args), value)
            if found:
                return found, evals
    raise SearchBudgetExhausted(
        f"no central value with a non-central single-slot replacement found "
        f"within {budget} evaluations", stats={"evaluations": evals})


# ---------------------------------------------------------------------------
# two-factor products
# ---------------------------------------------------------------------------

def waring_decompose(target: Quaternion, p1: MultilinearPoly,
                     p2: MultilinearPoly, adjoin=True):
    """Factor the target as (value of p1) * (value of p2).

    Conjugates the target to x + r*i, splits off the pure factors j and
    (x/qj) j - (r/qj) k whose product is x + r*i, and realizes each factor
    through the containment construction.
    """
    spec = target.spec
    if spec.char_two:
        raise SolverError("the two-factor construction needs odd characteristic")
    if target.is_zero():
        w1 = express_pure_in_image(p1, Quaternion.basis(spec, 2), adjoin=adjoin)
        w2 = express_pure_in_image(p2, Quaternion.zero(w1.spec), adjoin=adjoin)
        return w1, w2
    adjoined: list = []
    h, canonical = conjugate_to_canonical(target, adjoin=adjoin, adjoined=adjoined)
    spec2 = canonical.spec
    f2 = spec2.field
    qj = spec2.qj
    x, r = canonical.coords[0], canonical.coords[1]
    hinv = h.inverse()
    factor1 = h * Quaternion.basis(spec2, 2) * hinv
    pure2 = Quaternion.pure(spec2, f2.zero(), x / qj, -(r / qj))
    factor2 = h * pure2 * hinv
    w1 = express_pure_in_image(p1, factor1, adjoin=adjoin)
    spec3 = w1.spec
    w2 = express_pure_in_image(p2, factor2.embed_into(spec3), adjoin=adjoin)
    spec4 = w2.spec
    w1 = _embed_witness(p1, w1, spec4)
    product = w1.value * w2.value
    if product != target.embed_into(spec4):
        raise PostCheckError("two-factor product failed re-evaluation")
    return w1, w2


def _embed_witness(p, witness: ImageWitness, spec: AlgebraSpec) -> ImageWitness:
    if witness.spec == spec:
        return witness
    args = tuple(a.embed_into(spec) for a in witness.args)
    return _checked_witness(p, args, witness.value.embed_into(spec),
                            witness.adjoined, witness.stats)


# ---------------------------------------------------------------------------
# characteristic-2 decompositions
# ---------------------------------------------------------------------------

def _find_invertible_commutator_pair(spec, need_invertible_z=False):
    """(y, z) in the commutator target set with [y, z] invertible.

    j and k always work for the first requirement since [j, k] = v; the
    exhaustive fallback also enforces invertibility of z when requested.
    """
    j = Quaternion.basis(spec, 2)
    k = Quaternion.basis(spec, 3)
    if not need_invertible_z or not k.norm().is_zero():
        return j, k
    if spec.field.order() is None:
        raise NoInvertibleCommutator(
            "no invertible commutator pair with invertible second member found")
    elems = spec.field.enumerate_elements()
    for c0 in elems:
        for c2 in elems:
            for c3 in elems:
                z = Quaternion(spec, (c0, spec.field.zero(), c2, c3))
                if z.norm().is_zero():
                    continue
                for y in (j, k, j + k):
                    if not (y * z - z * y).norm().is_zero():
                        return y, z
    raise NoInvertibleCommutator(
        "exhausted the commutator target set without finding an invertible pair")


def char2_sum_decompose(target: Quaternion, adjoin=True) -> ImageWitness:
    """Witness for s2(x1,x2) + s2(x3,x4)*s2(x5,x6) = target (characteristic 2)."""
    spec = target.spec
    if not spec.char_two:
        raise SolverError("this decomposition is specific to characteristic 2")
    if target.is_zero():
        args = tuple(Quaternion.zero(spec) for _ in range(6))
        value = _char2_sum_value(args)
        return ImageWitness(args, value, (), {})
    y, z = _find_invertible_commutator_pair(spec)
    c = y * z - z * y
    cinv = c.inverse()
    x1 = target * cinv * y
    x2 = z
    x3 = z
    x4 = target * cinv
    x5, x6 = commutator_decompose(y, adjoin=adjoin)
    args = (x1, x2, x3, x4, x5, x6)
    value = _char2_sum_value(args)
    if value != target:
        raise PostCheckError("characteristic-2 sum decomposition failed re-evaluation")
    return ImageWitness(args, value, (), {})


def _char2_sum_value(args):
    x1, x2, x3, x4, x5, x6 = args
    s = lambda a, b: a * b - b * a
    return s(x1, x2) + s(x3, x4) * s(x5, x6)


def char2_product_sum_decompose(target: Quaternion, adjoin=True) -> ImageWitness:
    """Witness for s2(x1,x2)s2(x3,x4) + s2(x5,x6)s2(x7,x8) = target.

    The first summand of the sum decomposition is rewritten as a product,
    which additionally requires the second commutator member to be
    invertible.
    """
    spec = target.spec
    if not spec.char_two:
        raise SolverError("this decomposition is specific to characteristic 2")
    if target.is_zero():
        args = tuple(Quaternion.zero(spec) for _ in range(8))
        return ImageWitness(args, _char2_product_sum_value(args), (), {})
    y, z = _find_invertible_commutator_pair(spec, need_invertible_z=True)
    c = y * z - z * y
    cinv = c.inverse()
    w = target * cinv * y
    x1 = w * z.inverse()
    x2 = z
    x3, x4 = commutator_decompose(z, adjoin=adjoin)
    x5 = z
    x6 = target * cinv
    x7, x8 = commutator_decompose(y, adjoin=adjoin)
    args = (x1, x2, x3, x4, x5, x6, x7, x8)
    value = _char2_product_sum_value(args)
    if value != target:
        raise PostCheckError(
            "characteristic-2 product-sum decomposition failed re-evaluation")
    return ImageWitness(args, value, (), {})


def _char2_product_sum_value(args):
    x1, x2, x3, x4, x5, x6, x7, x8 = args
    s = lambda a, b: a * b - b * a
    return s(x1, x2) * s(x3, x4) + s(x5, x6) * s(x7, x8)
