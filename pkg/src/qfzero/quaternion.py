"""Quaternion algebras over GF(2^k)(t) in characteristic 2.

The algebra has basis 1, i, j, k with i^2 + i = a, j^2 = b and k = ij =
j(i+1).  Splitting is decided place by place through the norm form of the
degree-2 extension attached to a; algebras ramified exactly at a prescribed
even set of places are assembled from an irreducible in a residue class,
and quadratic subfields come from solving a quaternary form derived from
the reduced norm.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .artin_schreier import minimize_param, symbol, wp_solve_rational
from .binary_norm import NormEquation, solve_binary
from .factor import crt, factor
from .localsolve import norm_form_represents
from .poly import Poly
from .quaternary import (
    IrreducibleSearchSpec,
    QuaternaryForm,
    _small_class_scan,
    find_irreducible_in_class,
    solve_quaternary_report,
)
from .ratfunc import Place, RatFunc


class EmbeddingImpossible(ValueError):
    """The requested quadratic ring does not embed; carries the local proof."""

    def __init__(self, certificate):
        super().__init__(
            "no embedding: the attached quaternary form is anisotropic"
        )
        self.certificate = certificate


@dataclass(frozen=True)
class QuaternionAlgebra:
    """a is the Artin-Schreier parameter (i^2+i = a), b the square one."""

    a: RatFunc
    b: RatFunc

    def __post_init__(self):
        if self.b.is_zero:
            raise ValueError("the square parameter must be nonzero")

    @property
    def gf(self):
        return self.a.gf

    def element(self, x0, x1, x2, x3) -> "Quaternion":
        return Quaternion(self, (x0, x1, x2, x3))

    def scalar(self, x: RatFunc) -> "Quaternion":
        z = RatFunc.zero(self.gf)
        return self.element(x, z, z, z)

    def one(self) -> "Quaternion":
        return self.scalar(RatFunc.one(self.gf))

    def i(self) -> "Quaternion":
        z = RatFunc.zero(self.gf)
        return self.element(z, RatFunc.one(self.gf), z, z)

    def j(self) -> "Quaternion":
        z = RatFunc.zero(self.gf)
        return self.element(z, z, RatFunc.one(self.gf), z)

    def k(self) -> "Quaternion":
        z = RatFunc.zero(self.gf)
        return self.element(z, z, z, RatFunc.one(self.gf))

    def norm_form(self) -> QuaternaryForm:
        """nrd as a quaternary form in the coordinates (x0, x1, x2, x3)."""
        return QuaternaryForm.from_pair_coefficients(
            RatFunc.one(self.gf), self.a, self.b, self.a
        )


@dataclass(frozen=True)
class Quaternion:
    algebra: QuaternionAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("a quaternion has four coordinates")

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero for x in self.coords)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        if self.algebra != other.algebra:
            raise ValueError("cannot add across different algebras")
        return Quaternion(
            self.algebra,
            tuple(x + y for x, y in zip(self.coords, other.coords)),
        )

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return quat_mul(self, other)

    def conj(self) -> "Quaternion":
        x0, x1, x2, x3 = self.coords
        return Quaternion(self.algebra, (x0 + x1, x1, x2, x3))

    def trd(self) -> RatFunc:
        return self.coords[1]

    def nrd(self) -> RatFunc:
        x0, x1, x2, x3 = self.coords
        a, b = self.algebra.a, self.algebra.b
        return x0 * x0 + x0 * x1 + a * x1 * x1 + b * (
            x2 * x2 + x2 * x3 + a * x3 * x3
        )


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Product from i^2 = i + a, j^2 = b, ij = k, ji = j + k."""
    if p.algebra != q.algebra:
        raise ValueError("cannot multiply across different algebras")
    a, b = p.algebra.a, p.algebra.b
    x0, x1, x2, x3 = p.coords
    y0, y1, y2, y3 = q.coords
    z0 = x0 * y0 + a * x1 * y1 + b * x2 * y2 + b * x2 * y3 + a * b * x3 * y3
    z1 = x0 * y1 + x1 * y0 + x1 * y1 + b * x2 * y3 + b * x3 * y2
    z2 = x0 * y2 + x2 * y0 + x2 * y1 + a * x1 * y3 + a * x3 * y1
    z3 = x0 * y3 + x3 * y0 + x1 * y2 + x2 * y1 + x1 * y3
    return Quaternion(p.algebra, (z0, z1, z2, z3))


def _place_sort_key(place: Place):
    if place.is_infinite:
        return (1, ())
    return (0, place.prime.sort_key())


def ramified_places(alg: QuaternionAlgebra) -> frozenset:
    """Places where the algebra stays a division algebra locally.

    Only finitely many candidates can ramify: odd poles of the minimized
    Artin-Schreier parameter, places of odd valuation of the square
    parameter, and the infinite place.  Everywhere else the local norm
    form represents every unit and every even-valuation value.
    """
    gf = alg.gf
    candidates = {}
    reduced, _ = minimize_param(alg.a)
    for prime, _ in reduced.finite_poles():
        candidates[prime.sort_key()] = Place.finite_unchecked(prime)
    for source in (alg.b.num, alg.b.den):
        if source.is_constant:
            continue
        for prime, mult in factor(source)[1]:
            if mult % 2 == 1:
                candidates.setdefault(
                    prime.sort_key(), Place.finite_unchecked(prime)
                )
    ramified = [
        place
        for _, place in sorted(candidates.items())
        if not norm_form_represents(alg.a, alg.b, place)
    ]
    infinite = Place.infinite(gf)
    if not norm_form_represents(alg.a, alg.b, infinite):
        ramified.append(infinite)
    return frozenset(ramified)


def is_split(alg: QuaternionAlgebra, rng=None):
    """(True, zero divisor) for split algebras, (False, None) otherwise.

    The witness solves b*(x^2 + x*y + a*y^2) = 1 and packages the solution
    as u = 1 + x*j + y*k, which squares to zero.
    """
    if ramified_places(alg):
        return False, None
    gf = alg.gf
    if rng is None:
        rng = random.Random(0)
    eq = NormEquation.from_coefficients(alg.b, alg.a, RatFunc.one(gf))
    x, y = solve_binary(eq, rng)
    witness = alg.element(RatFunc.one(gf), RatFunc.zero(gf), x, y)
    if not quat_mul(witness, witness).is_zero:
        raise AssertionError("split witness failed to square to zero")
    return True, witness


def _nonresidue_mod(place: Place, rng) -> Poly:
    """Residue with Artin-Schreier symbol 1 at the place, by sampling."""
    prime = place.prime
    gf = prime.gf
    bits = gf.k * prime.degree
    for _ in range(64 << bits):
        r = Poly(gf, rng.getrandbits(bits))
        if r.is_zero:
            continue
        if symbol(RatFunc.from_poly(r), place) == 1:
            return r
    raise RuntimeError("no trace-one residue found; symbol data inconsistent")


def construct_ramified(places, rng, gf=None) -> QuaternionAlgebra:
    """Algebra ramified exactly at the given even-cardinality set of places.

    The square parameter is the product of the finite primes of the set;
    the Artin-Schreier parameter is an irreducible congruent to a
    non-residue modulo each of them.  The infinite place then comes out
    right by the parity of the ramified set, and the result is re-checked
    against ramified_places.  gf is only needed for the empty set, which
    has no place to read the field from.
    """
    wanted = sorted(set(places), key=_place_sort_key)
    if len(wanted) % 2:
        raise ValueError("ramified sets have even size; add the reciprocity partner")
    if not wanted:
        if gf is None:
            raise ValueError("pass the coefficient field to build a split algebra")
        alg = split_algebra(gf)
        if ramified_places(alg):
            raise AssertionError("split algebra claims ramification")
        return alg
    gf = wanted[0].gf
    finite = [p for p in wanted if not p.is_infinite]
    # an even set with at most one infinite member always has a finite one
    assert finite
    residues = []
    moduli = []
    for place in finite:
        residues.append(_nonresidue_mod(place, rng))
        moduli.append(place.prime)
    modulus = Poly.one(gf)
    for m in moduli:
        modulus = modulus * m
    residue = crt(residues, moduli)
    spec = IrreducibleSearchSpec(residue=residue, modulus=modulus)
    tail = _small_class_scan(spec, lambda h: False)
    if tail is None:
        tail = find_irreducible_in_class(spec, rng)
    alg = QuaternionAlgebra(RatFunc.from_poly(tail), RatFunc.from_poly(modulus))
    if ramified_places(alg) != frozenset(wanted):
        raise AssertionError("constructed algebra missed the requested ramification")
    return alg


def split_algebra(gf) -> QuaternionAlgebra:
    """The matrix algebra in quaternion clothing: a = 0, b = 1."""
    return QuaternionAlgebra(RatFunc.zero(gf), RatFunc.one(gf))


def _force_second_coordinate(form: QuaternaryForm, v):
    """Another zero of the form with a nonzero second coordinate.

    The polar form of the embedding quaternary is regular, so some probe
    direction pairs nontrivially with v and the standard chord through v
    lands on a second zero with the coordinate forced.
    """
    gf = form.gf
    one = RatFunc.one(gf)
    zero = RatFunc.zero(gf)
    basis = [tuple(one if i == j else zero for j in range(4)) for i in range(4)]
    if not form.polar(v, basis[1]).is_zero:
        w = basis[1]
    else:
        other = next(
            e for e in (basis[0], basis[2], basis[3])
            if not form.polar(v, e).is_zero
        )
        w = tuple(x + y for x, y in zip(basis[1], other))
    qw = form.evaluate(w)
    if qw.is_zero:
        return w
    lam = form.polar(v, w) / qw
    return tuple(x + lam * y for x, y in zip(v, w))


def embed_subfield(alg: QuaternionAlgebra, c: RatFunc, rng) -> Quaternion:
    """Non-central u with u^2 + u = c, so F[u] is the quadratic ring cut
    out by X^2 + X + c.

    Works through the quaternary form x1^2 + x1*x2 + (a+c)*x2^2 +
    b*(x3^2 + x3*x4 + a*x4^2): a zero with x2 nonzero rescales to x2 = 1
    and yields u = x1 + i + x3*j + x4*k.  Anisotropy of that form means no
    embedding exists and raises.
    """
    gf = alg.gf
    one = RatFunc.one(gf)
    zero = RatFunc.zero(gf)
    root = wp_solve_rational(c)
    if root is not None:
        base = wp_solve_rational(alg.a)
        if base is not None:
            u = alg.element(root + base, one, zero, zero)
            return _checked_embedding(alg, u, c)
    form = QuaternaryForm.from_pair_coefficients(one, alg.a + c, alg.b, alg.a)
    last = None
    for _ in range(8):
        report = solve_quaternary_report(form, rng)
        if report.verdict != "zero":
            raise EmbeddingImpossible(report.certificate)
        last = report.vector
        if not last[1].is_zero:
            break
    if last[1].is_zero:
        last = _force_second_coordinate(form, last)
    u = alg.element(last[0] / last[1], one, last[2] / last[1], last[3] / last[1])
    return _checked_embedding(alg, u, c)


def _checked_embedding(alg, u, c):
    residual = quat_mul(u, u) + u + alg.scalar(c)
    if not residual.is_zero:
        raise AssertionError("embedding candidate fails its defining equation")
    return u
