"""Quadratic residue symbols in characteristic 2 and norm-form minimization.

The symbol [a, place) is 0 exactly when x^2 + x = a is solvable in the
completion at the place (for a regular there).  A binary norm form
scale*(x^2 + xy + param*y^2) can always be shifted by x -> x + h*y so
that every pole of the parameter has odd multiplicity; that shift is
the minimization implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .factor import sqrt_mod, trace_to_gf2_mod
from .poly import Poly
from .ratfunc import POS_INF, Place, RatFunc


def symbol_finite(a: RatFunc, place: Place) -> int:
    if place.is_infinite:
        raise ValueError("finite symbol asked at the infinite place")
    prime = place.prime
    if not a.den.gcd(prime).is_one:
        raise ValueError("symbol undefined at pole")
    return trace_to_gf2_mod(a.mod_prime_power(prime, 1), prime)


def symbol_infinite(a: RatFunc) -> int:
    dn = a.num.degree
    dd = a.den.degree
    if isinstance(dn, int) and dn > dd:
        raise ValueError("symbol undefined at pole")
    return a.gf.trace(a.value_at_infinity())


def symbol(a: RatFunc, place: Place) -> int:
    if place.is_infinite:
        return symbol_infinite(a)
    return symbol_finite(a, place)


@dataclass(frozen=True)
class WpShift:
    """Substitution x -> x + h*y relating two parameters: old = new + h^2 + h."""

    h: RatFunc

    def relates(self, old: RatFunc, new: RatFunc) -> bool:
        return old == new + self.h.sqr() + self.h


@dataclass(frozen=True)
class BinaryNormForm:
    """scale * (x^2 + x*y + param * y^2)."""

    scale: RatFunc
    param: RatFunc
    minimal: bool = False

    def __post_init__(self):
        if self.scale.is_zero:
            raise ValueError("scale must be nonzero")

    def apply(self, x: RatFunc, y: RatFunc) -> RatFunc:
        return self.scale * (x.sqr() + x * y + self.param * y.sqr())


def reduce_param_at_place(a: RatFunc, prime: Poly) -> tuple[RatFunc, RatFunc]:
    """Kill even-order poles of a at one finite prime with wp-shifts."""
    gf = a.gf
    shift = RatFunc.zero(gf)
    place = Place.finite_unchecked(prime)
    while True:
        v = a.valuation(place)
        if v == POS_INF or v >= 0 or (-v) % 2 == 1:
            return a, shift
        r = (-v) // 2
        unit = (a * RatFunc.from_poly(prime ** (2 * r))).mod_prime_power(prime, 1)
        g = sqrt_mod(unit, prime)
        s = RatFunc(g, prime**r)
        a = a + s.sqr() + s
        shift = shift + s


def reduce_param_at_infinity(a: RatFunc) -> tuple[RatFunc, RatFunc]:
    """Kill an even-order pole of a at the infinite place."""
    gf = a.gf
    shift = RatFunc.zero(gf)
    inf = Place.infinite(gf)
    while True:
        v = a.valuation(inf)
        if v == POS_INF or v >= 0 or (-v) % 2 == 1:
            return a, shift
        r = (-v) // 2
        c = gf.div(a.num.lead, a.den.lead)
        s = RatFunc.from_poly(Poly.monomial(gf, gf.sqrt(c), r))
        a = a + s.sqr() + s
        shift = shift + s


def minimize_param(a: RatFunc) -> tuple[RatFunc, RatFunc]:
    """Shift a so every pole (finite and infinite) has odd multiplicity.

    Finite poles are processed in ascending degree order, then infinity.
    Returns (reduced, h) with a = reduced + h^2 + h.
    """
    shift = RatFunc.zero(a.gf)
    for prime, mult in a.finite_poles():
        if mult % 2 == 0:
            a, s = reduce_param_at_place(a, prime)
            shift = shift + s
    a, s = reduce_param_at_infinity(a)
    return a, shift + s


def minimize(form: BinaryNormForm) -> tuple[BinaryNormForm, WpShift]:
    reduced, h = minimize_param(form.param)
    return BinaryNormForm(form.scale, reduced, minimal=True), WpShift(h)


def wp_solve_rational(g: RatFunc) -> RatFunc | None:
    """Global solution of h^2 + h = g, or None when g is not of that shape."""
    if g.is_zero:
        return RatFunc.zero(g.gf)
    reduced, shift = minimize_param(g)
    if not reduced.is_constant:
        return None
    c0 = reduced.num.coeff(0)
    e = g.gf.wp_root(c0)
    if e is None:
        return None
    h = shift + RatFunc.constant(g.gf, e)
    assert h.sqr() + h == g
    return h
