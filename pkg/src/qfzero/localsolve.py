"""Local analysis of binary norm forms at places of GF(2^k)(t).

Decides whether x^2 + x*y + a*y^2 represents a given value in the
completion at a place, lifts approximate solutions by a Newton step, and
produces the per-place constraints that a value common to two such forms
must satisfy.  Completion arithmetic is always truncated to an explicit
precision: residues mod prime^N, never lazy power series.
"""

import random
from dataclasses import dataclass

from .artin_schreier import reduce_param_at_place, symbol
from .factor import artin_schreier_root_mod, sqrt_mod
from .poly import Poly
from .ratfunc import Place, RatFunc


class NotLiftable(Exception):
    """Raised when Newton iteration cannot start from the given witness."""


@dataclass(frozen=True)
class LocalWitness:
    """Solution of a ramified norm equation modulo prime^precision."""

    place: Place
    precision: int
    u0: Poly
    v0: Poly


@dataclass(frozen=True)
class RamifiedEquation:
    """The equation f^(2r+1)*(u^2 + u*v) + b*v^2 = c*f^(2r) at a finite place.

    Here f is the prime of the place, b is a unit at f and c has valuation
    0 or 1 there.  b and c may have denominators away from f.
    """

    place: Place
    r: int
    b: RatFunc
    c: RatFunc

    def residual(self, u: Poly, v: Poly, precision: int) -> Poly:
        """Left side minus right side at (u, v), reduced mod prime^precision."""
        f = RatFunc.from_poly(self.place.prime)
        uu = RatFunc.from_poly(u)
        vv = RatFunc.from_poly(v)
        e = f ** (2 * self.r + 1) * (uu * uu + uu * vv) + self.b * vv * vv
        e = e + self.c * f ** (2 * self.r)
        return e.mod_prime_power(self.place.prime, precision)


def represents_unramified(a: RatFunc, c: RatFunc, place: Place) -> bool:
    """Whether x^2 + x*y + a*y^2 = c is solvable in the completion at place.

    Requires a to be regular at the place.  The value is represented
    exactly when its valuation is even, or when it is odd but the residue
    class of a has absolute trace zero.
    """
    if c.is_zero:
        raise ValueError("represented value must be nonzero")
    va = a.valuation(place)
    if va < 0:
        raise ValueError("parameter has a pole at the place; use the ramified test")
    if int(c.valuation(place)) % 2 == 0:
        return True
    return symbol(a, place) == 0


def quaternary_isotropic_odd_place(
    a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc, place: Place
) -> bool:
    """Isotropy of a1*(x1^2+x1*x2+a2*x2^2) + a3*(x3^2+x3*x4+a4*x4^2) locally.

    Applies at places where both inner parameters are regular and the
    valuation of a1*a3 is odd.
    """
    if a1.is_zero or a3.is_zero:
        raise ValueError("outer coefficients must be nonzero")
    if a2.valuation(place) < 0:
        raise ValueError("second parameter has a pole at the place")
    if a4.valuation(place) < 0:
        raise ValueError("fourth parameter has a pole at the place")
    if int((a1 * a3).valuation(place)) % 2 == 0:
        raise ValueError("valuation of the outer product must be odd at the place")
    return symbol(a2, place) == 0 or symbol(a4, place) == 0


def _ramified_digits(b: RatFunc, c: RatFunc, place: Place, r: int):
    """Digit expansion (x, y) with f*x^2 + f^(r+1)*x*y + b*y^2 + c = 0
    mod f^(2r+3), or None when the trace obstruction blocks it.

    The input equation f^(2r+1)(u^2+uv) + b v^2 = c f^(2r) reduces to the
    above after writing u = x, v = f^r y and dividing by f^(2r).  Digits
    are forced level by level; squares are extracted by the inverse
    Frobenius and the single obstruction level is an Artin-Schreier
    equation in the residue field.
    """
    prime = place.prime
    gf = prime.gf
    window = 2 * r + 3
    pm = prime ** window
    bb = b.mod_prime_power(prime, window)
    cc = c.mod_prime_power(prime, window)
    b0 = bb % prime
    vc = 1 if (cc % prime).is_zero else 0
    cross = prime ** (r + 1)

    x = Poly.zero(gf)
    y = Poly.zero(gf)
    for m in range(window):
        g = (prime * x * x + cross * (x * y) + bb * (y * y) + cc) % pm
        q, rem = divmod(g, prime ** m)
        if not rem.is_zero:
            raise AssertionError("digit solver lost a lower level")
        rm = q % prime
        if rm.is_zero:
            continue
        if vc == 0:
            if m % 2 == 0 and m <= 2 * r:
                eta = sqrt_mod(rm.mul_mod(b0.inv_mod(prime), prime), prime)
                y = y + eta * prime ** (m // 2)
            elif m % 2 == 1 and m <= 2 * r - 1:
                xi = sqrt_mod(rm, prime)
                x = x + xi * prime ** ((m - 1) // 2)
            elif m == 2 * r + 1:
                eta0 = y % prime
                unit = eta0.mul_mod(eta0, prime).inv_mod(prime)
                e = artin_schreier_root_mod(rm.mul_mod(unit, prime), prime)
                if e is None:
                    return None
                x = x + eta0.mul_mod(e, prime) * prime ** r
            else:
                eta0 = y % prime
                xi = rm.mul_mod(eta0.inv_mod(prime), prime)
                x = x + xi * prime ** (r + 1)
        else:
            if m % 2 == 1 and m <= 2 * r + 1:
                xi = sqrt_mod(rm, prime)
                x = x + xi * prime ** ((m - 1) // 2)
            elif m % 2 == 0 and m <= 2 * r:
                eta = sqrt_mod(rm.mul_mod(b0.inv_mod(prime), prime), prime)
                y = y + eta * prime ** (m // 2)
            else:
                xi0 = x % prime
                unit = xi0.mul_mod(xi0, prime).inv_mod(prime)
                e = artin_schreier_root_mod(rm.mul_mod(unit, prime).mul_mod(b0, prime), prime)
                if e is None:
                    return None
                delta = xi0.mul_mod(b0.inv_mod(prime), prime).mul_mod(e, prime)
                y = y + delta * prime ** (r + 1)
    g = (prime * x * x + cross * (x * y) + bb * (y * y) + cc) % pm
    if not g.is_zero:
        raise AssertionError("digit solver left a nonzero residual")
    return x, y


def represents_ramified(b: RatFunc, c: RatFunc, place: Place, r: int):
    """Solve f^(2r+1)*(u^2 + u*v) + b*v^2 = c*f^(2r) in the completion.

    Returns a LocalWitness modulo prime^(4r+3), which is the precision at
    which solvability of the equation is decided, or None when the form
    does not represent the value.  Every solution in the completion is
    integral and has v divisible by f^r, so the search space is organized
    as v = f^r * y.
    """
    if place.is_infinite:
        raise ValueError("ramified solving expects a finite place")
    if r < 0:
        raise ValueError("pole order parameter must be nonnegative")
    if b.valuation(place) != 0:
        raise ValueError("quadratic coefficient must be a unit at the place")
    if c.valuation(place) not in (0, 1):
        raise ValueError("right side must have valuation 0 or 1 at the place")
    digits = _ramified_digits(b, c, place, r)
    if digits is None:
        return None
    x, y = digits
    prime = place.prime
    n = 4 * r + 3
    pn = prime ** n
    u0 = x % pn
    v0 = (prime ** r * y) % pn
    witness = LocalWitness(place, n, u0, v0)
    eq = RamifiedEquation(place, r, b, c)
    if not eq.residual(u0, v0, n).is_zero:
        raise AssertionError("ramified witness fails its own equation")
    return witness


def hensel_lift(
    witness: LocalWitness, equation: RamifiedEquation, target_precision: int
) -> LocalWitness:
    """Refine a witness of a ramified equation to the requested precision.

    Newton iteration on the divided equation f*x^2 + f^(r+1)*x*y + b*y^2
    + c = 0; each step roughly doubles the number of correct digits.  The
    witness must have nonzero gradient mod the prime, meaning u0 or the
    cofactor of f^r in v0 is a unit.
    """
    prime = equation.place.prime
    r = equation.r
    u0, v0 = witness.u0, witness.v0
    if (u0 % prime).is_zero and (v0 % prime ** (r + 1)).is_zero:
        raise NotLiftable("not liftable from this witness: gradient is zero mod the prime")
    y, rem = divmod(v0, prime ** r)
    if not rem.is_zero:
        raise ValueError("witness lacks the forced prime power factor in v0")
    if witness.precision < 4 * r + 3:
        raise ValueError("witness precision below the deciding level 4r+3")
    if not equation.residual(u0, v0, witness.precision).is_zero:
        raise ValueError("witness does not satisfy the equation at its stated precision")
    if target_precision <= witness.precision:
        pn = prime ** target_precision
        return LocalWitness(equation.place, target_precision, u0 % pn, v0 % pn)

    window = target_precision - 2 * r
    pm = prime ** window
    bb = equation.b.mod_prime_power(prime, window)
    cc = equation.c.mod_prime_power(prime, window)
    cross = prime ** (r + 1)
    x = u0 % pm
    y = y % pm
    err = witness.precision - 2 * r
    y_unit = not (y % prime).is_zero
    if y_unit:
        cof = y.inv_mod(pm)
    else:
        cof = x.inv_mod(pm)
    while err < window:
        g = (prime * x * x + cross * (x * y) + bb * (y * y) + cc) % pm
        step = (g // cross).mul_mod(cof, pm)
        if y_unit:
            x = (x + step) % pm
            err = 2 * err - 2 * r - 1
        else:
            y = (y + step) % pm
            err = 2 * err - 2 * r - 2
    pn = prime ** target_precision
    u = x % pn
    v = (prime ** r * y) % pn
    if not equation.residual(u, v, target_precision).is_zero:
        raise AssertionError("lifted witness fails the equation")
    return LocalWitness(equation.place, target_precision, u, v)


def norm_form_represents(a: RatFunc, w: RatFunc, place: Place) -> bool:
    """Whether x^2 + x*y + a*y^2 = w is solvable in the completion at place.

    Dispatches on the local shape of a: after clearing even pole parts by
    substitutions x -> x + s*y, a is either regular (parity and trace
    rule) or has an odd pole (explicit finite-precision solving).  The
    infinite place is handled through the substitution t -> 1/t.
    """
    if w.is_zero:
        raise ValueError("represented value must be nonzero")
    if place.is_infinite:
        tplace = Place.finite(Poly.t(w.gf))
        return norm_form_represents(a.subst_inv(), w.subst_inv(), tplace)
    prime = place.prime
    reduced, _ = reduce_param_at_place(a, prime)
    if reduced.valuation(place) >= 0:
        return represents_unramified(reduced, w, place)
    v = int(reduced.valuation(place))
    r = (-v - 1) // 2
    f = RatFunc.from_poly(prime)
    b = reduced * f ** (2 * r + 1)
    vw = int(w.valuation(place))
    s = (vw + 1) // 2
    c = w * f ** (1 - 2 * s)
    return represents_ramified(b, c, place, r) is not None


@dataclass(frozen=True)
class Congruence:
    """Any value congruent to residue mod prime^exponent is accepted."""

    place: Place
    residue: Poly
    exponent: int

    def modulus(self) -> Poly:
        return self.place.prime ** self.exponent

    def satisfied_by(self, c: Poly) -> bool:
        return ((c + self.residue) % self.modulus()).is_zero


@dataclass(frozen=True)
class ValuationParity:
    """Any value whose valuation at the place has the given parity."""

    place: Place
    parity: int

    def satisfied_by(self, c: Poly) -> bool:
        if c.is_zero:
            return False
        v = RatFunc.from_poly(c).valuation(self.place)
        return int(v) % 2 == self.parity


@dataclass(frozen=True)
class InfiniteCondition:
    """Constraint at the infinite place, expressed through t -> 1/t.

    A nonzero polynomial c qualifies when deg(c) has the stored parity
    (no parity constraint when degree_parity is None) and, if exponent is
    positive, the reversed coefficient sequence of c, shifted to match
    the valuation of the stored residue, agrees with it mod t^exponent.
    """

    residue: Poly
    exponent: int
    degree_parity: int | None

    def satisfied_by(self, c: Poly) -> bool:
        if c.is_zero:
            return False
        if self.degree_parity is not None and c.degree % 2 != self.degree_parity:
            return False
        if self.exponent <= 0:
            return True
        tp = Poly.t(c.gf)
        tn = tp ** self.exponent
        shift = 1 if (self.residue % tp).is_zero else 0
        lhs = c.reverse().shift(shift) % tn
        return lhs == self.residue % tn


def common_value_pole(
    a1: RatFunc,
    a2: RatFunc,
    a3: RatFunc,
    a4: RatFunc,
    place: Place,
    rng: random.Random,
):
    """Congruence class of values represented by both binary forms locally.

    The place must be a pole of a2 or a4.  Returns (residue, exponent)
    with residue of valuation at most 1, such that every polynomial in
    that class mod prime^exponent is represented by both
    a1*(x^2+xy+a2*y^2) and a3*(x^2+xy+a4*y^2) over the completion.
    Returns None when the two local norm groups share no value, which
    certifies anisotropy of the combined quaternary form.
    """
    if a1.is_zero or a3.is_zero:
        raise ValueError("outer coefficients must be nonzero")
    prime = place.prime
    v2 = a2.valuation(place)
    v4 = a4.valuation(place)
    depth = 0
    if v2 < 0:
        depth = -int(v2)
    if v4 < 0:
        depth = max(depth, -int(v4))
    if depth == 0:
        raise ValueError("place is not a pole of either inner parameter")
    n = 2 * depth + 1

    diff, _ = reduce_param_at_place(a2 + a4, prime)
    same_field = diff.valuation(place) >= 0 and symbol(diff, place) == 0
    if same_field and not norm_form_represents(a2, a1 / a3, place):
        return None

    gf = prime.gf
    bits = gf.k * prime.degree * n
    attempts = 64 << bits
    for _ in range(attempts):
        c = Poly(gf, rng.getrandbits(bits))
        if c.is_zero:
            continue
        if (c % prime).is_zero and ((c // prime) % prime).is_zero:
            continue
        value = RatFunc.from_poly(c)
        if norm_form_represents(a2, value / a1, place) and norm_form_represents(
            a4, value / a3, place
        ):
            return c, n
    raise RuntimeError("local common value sampling exhausted; residue data inconsistent")


def common_value_odd(
    a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc, place: Place
):
    """Required valuation parity of a common value at an odd place.

    Applies where a2, a4 are regular and v(a1*a3) is odd.  Returns 0 or
    1, or None when the trace obstructions exclude a common value.
    """
    if a1.is_zero or a3.is_zero:
        raise ValueError("outer coefficients must be nonzero")
    s2 = symbol(a2, place)
    s4 = symbol(a4, place)
    v1 = int(a1.valuation(place))
    v3 = int(a3.valuation(place))
    if (v1 + v3) % 2 == 0:
        raise ValueError("valuation of the outer product must be odd at the place")
    if s2 == 1 and s4 == 1:
        return None
    if s2 == 1:
        return v1 % 2
    if s4 == 1:
        return v3 % 2
    return 0


def common_value_inf(
    a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc, rng: random.Random
):
    """Condition a common polynomial value must satisfy at the infinite place.

    Substitutes t -> 1/t, renormalizes the outer coefficients by
    t^max(deg a1, deg a3), clears even pole parts of the transported
    inner parameters at t, and dispatches to the finite-place generators
    at the place t.  The answer is packaged as a constraint on the degree
    parity of the value together with an optional congruence on its
    reversed coefficient sequence.  Returns None when the form is
    anisotropic in the completion at infinity.
    """
    if a1.is_zero or not a1.is_poly:
        raise ValueError("first outer coefficient must be a nonzero polynomial")
    if a3.is_zero or not a3.is_poly:
        raise ValueError("third outer coefficient must be a nonzero polynomial")
    gf = a1.gf
    tp = Poly.t(gf)
    tplace = Place.finite(tp)
    d = max(a1.num.degree, a3.num.degree)
    ia1 = RatFunc.from_poly(a1.num.reverse().shift(d - a1.num.degree))
    ia3 = RatFunc.from_poly(a3.num.reverse().shift(d - a3.num.degree))
    ia2, _ = reduce_param_at_place(a2.subst_inv(), tp)
    ia4, _ = reduce_param_at_place(a4.subst_inv(), tp)

    if ia2.valuation(tplace) < 0 or ia4.valuation(tplace) < 0:
        res = common_value_pole(ia1, ia2, ia3, ia4, tplace, rng)
        if res is None:
            return None
        residue, exponent = res
        vt = 1 if (residue % tp).is_zero else 0
        return InfiniteCondition(residue, exponent, (d + vt) % 2)
    if int((ia1 * ia3).valuation(tplace)) % 2 == 1:
        nu = common_value_odd(ia1, ia2, ia3, ia4, tplace)
        if nu is None:
            return None
        return InfiniteCondition(tp ** nu, 0, (d + nu) % 2)
    if symbol(ia2, tplace) == 0 and symbol(ia4, tplace) == 0:
        return InfiniteCondition(Poly.one(gf), 0, None)
    return InfiniteCondition(Poly.one(gf), 0, a1.num.degree % 2)
