"""Local representability, Hensel lifting, and the condition generators.

Ground truth throughout is exhaustive residue enumeration at the place
(helpers.half_represents_at and inline packed-bitmask sweeps), never the
code paths under test.
"""

import random

import pytest

from helpers import clmul, half_represents_at, pmod, to_int, to_poly
from qfzero import GF, Place, Poly, RatFunc
from qfzero.localsolve import (
    InfiniteCondition,
    LocalWitness,
    NotLiftable,
    RamifiedEquation,
    common_value_inf,
    common_value_odd,
    common_value_pole,
    hensel_lift,
    norm_form_represents,
    quaternary_isotropic_odd_place,
    represents_ramified,
    represents_unramified,
)

F2 = GF(1)
T = Poly.t(F2)
ONE = RatFunc.one(F2)
TRF = RatFunc.t(F2)
F223 = Poly(F2, 0b111)
P_T = Place.finite(T)
P_T1 = Place.finite(Poly(F2, 0b11))
P_223 = Place.finite(F223)
P_INF = Place.infinite(F2)


def rf(n: int) -> RatFunc:
    return RatFunc.from_poly(Poly(F2, n))


def newton_confirm(a: RatFunc, c: RatFunc, place: Place, x0: Poly, y0: Poly, target: int) -> bool:
    """Lift a mod-prime^3 solution of x^2+xy+a*y^2 = c to prime^target.

    Plain Newton steps on whichever variable has a unit partial; when the
    starting pair is divisible by the prime, the equation is divided down
    first.  Independent of the library's lifting code.
    """
    prime = place.prime
    while (x0 % prime).is_zero and (y0 % prime).is_zero:
        c = c / RatFunc.from_poly(prime) ** 2
        x0 = x0 // prime
        y0 = y0 // prime
    pm = prime**target
    a_res = a.mod_prime_power(prime, target)
    c_res = c.mod_prime_power(prime, target)
    x, y = x0 % pm, y0 % pm
    for _ in range(12):
        g = (x * x + x * y + a_res * (y * y) + c_res) % pm
        if g.is_zero:
            return True
        if not (y % prime).is_zero:
            x = (x + g.mul_mod(y.inv_mod(pm), pm)) % pm
        else:
            y = (y + g.mul_mod(x.inv_mod(pm), pm)) % pm
    return ((x * x + x * y + a_res * (y * y) + c_res) % pm).is_zero


def test_represents_unramified_goldens():
    assert represents_unramified(TRF, RatFunc.from_poly(F223), P_223) is False
    assert represents_unramified(ONE, RatFunc.from_poly(F223), P_223) is True
    # even valuation is always represented, whatever the parameter
    for a in (rf(0), rf(2), rf(7)):
        assert represents_unramified(a, rf(5), P_223) is True
    with pytest.raises(ValueError):
        represents_unramified(ONE / TRF, ONE, P_T)
    with pytest.raises(ValueError):
        represents_unramified(ONE, RatFunc.zero(F2), P_T)


def test_represents_unramified_matches_exhaustive():
    """Verdict equals an exhaustive pair search mod prime^3 for every
    parameter of degree <= 2 and every nonzero value class; positives are
    Newton-lifted to prime^9 to rule out spurious finite solutions."""
    for place in (P_T, P_T1, P_223):
        prime = place.prime
        pn = prime**3
        pn_int = to_int(pn)
        nres = 1 << pn.degree
        sq = [pmod(clmul(x, x), pn_int) for x in range(nres)]
        for a_int in range(8):
            sols = {}
            for x in range(nres):
                for y in range(nres):
                    v = pmod(sq[x] ^ clmul(x, y) ^ clmul(a_int, sq[y]), pn_int)
                    sols.setdefault(v, (x, y))
            a = rf(a_int)
            for c_int in range(1, nres):
                c = rf(c_int)
                got = represents_unramified(a, c, place)
                assert got == (c_int in sols), (place, a_int, c_int)
                if got:
                    x0, y0 = sols[c_int]
                    assert newton_confirm(a, c, place, to_poly(x0), to_poly(y0), 9)


def test_quaternary_isotropy_at_odd_places():
    a1 = RatFunc.from_poly(F223)
    assert quaternary_isotropic_odd_place(a1, TRF, ONE, ONE, P_223) is True
    # both parameters in the nonsplit class at the place
    assert quaternary_isotropic_odd_place(a1, TRF, ONE, TRF, P_223) is False
    # an image of g^2+g always splits
    g = rf(0b1000)
    assert quaternary_isotropic_odd_place(a1, g * g + g, ONE, TRF, P_223) is True
    with pytest.raises(ValueError):
        quaternary_isotropic_odd_place(a1, ONE / TRF, ONE, ONE, P_T)
    with pytest.raises(ValueError):
        quaternary_isotropic_odd_place(ONE, TRF, ONE, ONE, P_T)


def test_represents_ramified_small_cases():
    # t*x^2 + t*x*y + y^2 = 1 has the obvious solution (0, 1)
    wit = represents_ramified(ONE, ONE, P_T, 0)
    assert wit is not None and wit.precision == 3
    eq = RamifiedEquation(P_T, 0, ONE, ONE)
    assert eq.residual(Poly.zero(F2), Poly.one(F2), 3).is_zero
    assert eq.residual(wit.u0, wit.v0, 3).is_zero
    # odd-valuation values split: t is represented, t*(t+1) is not
    # (both confirmed by enumerating all pairs mod t^3)
    assert represents_ramified(ONE, TRF, P_T, 0) is not None
    assert represents_ramified(ONE, TRF * (TRF + ONE), P_T, 0) is None
    with pytest.raises(ValueError):
        represents_ramified(TRF, ONE, P_T, 0)
    with pytest.raises(ValueError):
        represents_ramified(ONE, TRF * TRF, P_T, 0)


def test_represents_ramified_matches_brute_and_lifts():
    """Agreement with enumeration of every residue pair mod f^(4r+3) on
    random units b and values c, plus lifting each witness to f^(4r+13)."""
    rng = random.Random(7)
    for r in (0, 1):
        n = 4 * r + 3
        pn = T**n
        pn_int = to_int(pn)
        lead = to_int(T ** (2 * r + 1))
        t2r = to_int(T ** (2 * r))
        nres = 1 << n
        sq = [pmod(clmul(x, x), pn_int) for x in range(nres)]
        solvable = unsolvable = 0
        for trial in range(60):
            b = Poly(F2, (rng.randrange(16) << 1) | 1)
            c = Poly(F2, (rng.randrange(16) << 1) | 1)
            if trial % 2:
                c = c * T
            b_int = pmod(to_int(b), pn_int)
            rhs = pmod(clmul(to_int(c), t2r), pn_int)
            found = any(
                pmod(clmul(lead, sq[u] ^ clmul(u, v)) ^ clmul(b_int, sq[v]), pn_int) == rhs
                for u in range(nres)
                for v in range(nres)
            )
            wit = represents_ramified(RatFunc.from_poly(b), RatFunc.from_poly(c), P_T, r)
            assert (wit is not None) == found, (r, b, c)
            if wit is None:
                unsolvable += 1
                continue
            solvable += 1
            assert wit.precision == n
            eq = RamifiedEquation(P_T, r, RatFunc.from_poly(b), RatFunc.from_poly(c))
            assert eq.residual(wit.u0, wit.v0, n).is_zero
            lifted = hensel_lift(wit, eq, 4 * r + 13)
            assert lifted.precision == 4 * r + 13
            assert eq.residual(lifted.u0, lifted.v0, 4 * r + 13).is_zero
        assert solvable >= 10 and unsolvable >= 10


def test_hensel_lift_edges():
    eq = RamifiedEquation(P_T, 0, ONE, ONE)
    exact = LocalWitness(P_T, 3, Poly.zero(F2), Poly.one(F2))
    lifted = hensel_lift(exact, eq, 10)
    assert lifted.u0 == Poly.zero(F2) and lifted.v0 == Poly.one(F2)
    assert eq.residual(lifted.u0, lifted.v0, 10).is_zero
    # requesting no more precision returns the truncation
    same = hensel_lift(exact, eq, 3)
    assert same.precision == 3 and same.v0 == Poly.one(F2)
    with pytest.raises(NotLiftable):
        hensel_lift(LocalWitness(P_T, 3, Poly.zero(F2), Poly.zero(F2)), eq, 10)


def test_half_oracle_planted_solutions():
    """The test oracle itself: exact planted solutions must be visible to
    it at every kind of place, including poles and infinity."""
    rng = random.Random(5)
    checked = 0
    for i in range(60):
        place = [P_T, P_223, P_T1, P_INF][i % 4]
        a_den = [Poly.one(F2), T, Poly(F2, 0b11)][i % 3]
        param = RatFunc(Poly(F2, rng.randrange(8)), a_den)
        outer = rf(rng.randrange(1, 8))
        x = RatFunc(Poly(F2, rng.randrange(16)), Poly(F2, rng.randrange(1, 4)) if i % 5 else Poly.one(F2))
        y = RatFunc(Poly(F2, rng.randrange(1, 16)), Poly.one(F2))
        val = outer * (x * x + x * y + param * y * y)
        if val.is_zero:
            continue
        assert half_represents_at(outer, param, val, place), (i, outer, param, val)
        checked += 1
    assert checked >= 50


def _sample_in_class(residue: Poly, modulus: Poly, rng: random.Random) -> Poly:
    while True:
        c = residue + modulus * Poly(F2, rng.getrandbits(6))
        if not c.is_zero:
            return c


def test_common_value_pole_conditions_are_sound():
    """Every sampled polynomial in a returned congruence class must be
    represented by both halves, checked by exhaustive local search."""
    cases = [
        (ONE, ONE / TRF, ONE, TRF, P_T),
        (ONE, ONE / TRF, ONE, ONE / TRF, P_T),
        (ONE, ONE / (TRF + ONE), TRF, rf(4), P_T1),
        (ONE, ONE / RatFunc.from_poly(F223), ONE, TRF, P_223),
        (ONE, ONE / TRF**3, ONE, TRF, P_T),
    ]
    rng = random.Random(19)
    for a1, a2, a3, a4, place in cases:
        depth = max(0, -int(a2.valuation(place)), -int(a4.valuation(place)))
        got = common_value_pole(a1, a2, a3, a4, place, rng)
        assert got is not None
        residue, exponent = got
        assert exponent == 2 * depth + 1
        v_res = RatFunc.from_poly(residue).valuation(place)
        assert int(v_res) <= 1
        modulus = place.prime**exponent
        for _ in range(50):
            c = RatFunc.from_poly(_sample_in_class(residue, modulus, rng))
            assert half_represents_at(a1, a2, c, place), (place, a2, c)
            assert half_represents_at(a3, a4, c, place), (place, a4, c)


def test_common_value_pole_shared_pole_obstruction():
    """With both parameters sharing the pole, a non-norm ratio of the
    outer coefficients leaves no common value; confirmed by checking all
    residue classes."""
    a2 = ONE / TRF
    blocked = RatFunc.from_poly(Poly(F2, 0b11))  # t+1
    assert common_value_pole(blocked, a2, ONE, a2, P_T, random.Random(4)) is None
    for c_int in (1, 2, 3, 5, 6, 7):
        c = rf(c_int)
        both = half_represents_at(blocked, a2, c, P_T) and half_represents_at(ONE, a2, c, P_T)
        assert not both, c_int
    # a norm ratio restores a common class
    got = common_value_pole(ONE, a2, ONE, a2, P_T, random.Random(4))
    assert got is not None


def test_common_value_odd_parities():
    a1 = RatFunc.from_poly(F223)
    assert common_value_odd(a1, TRF, ONE, ONE, P_223) == 1
    assert common_value_odd(TRF, ONE, ONE, ONE, P_T) is None
    assert common_value_odd(TRF, TRF, ONE, ONE + TRF, P_T) == 0
    assert common_value_odd(TRF, TRF, ONE, TRF * TRF, P_T) == 0
    with pytest.raises(ValueError):
        common_value_odd(ONE, TRF, ONE, ONE, P_T)


def test_common_value_odd_conditions_are_sound():
    cases = [
        (RatFunc.from_poly(F223), TRF, ONE, ONE, P_223),
        (TRF, TRF, ONE, ONE + TRF, P_T),
        (TRF, TRF, ONE, TRF * TRF, P_T),
    ]
    rng = random.Random(23)
    for a1, a2, a3, a4, place in cases:
        nu = common_value_odd(a1, a2, a3, a4, place)
        assert nu is not None
        prime = place.prime
        for i in range(50):
            u = Poly(F2, rng.getrandbits(5))
            if u.is_zero or (u % prime).is_zero:
                continue
            c = RatFunc.from_poly(u * prime ** (nu + 2 * (i % 2)))
            assert half_represents_at(a1, a2, c, place), (place, c)
            assert half_represents_at(a3, a4, c, place), (place, c)
    # non-vacuity: the wrong parity really is blocked for a symbol-1 half
    assert not half_represents_at(ONE, ONE + TRF, TRF, P_T)


def test_common_value_inf_worked_instance():
    """The classic quadruple (t^2+t+1, t, 1, 1): the constraint at
    infinity fixes even degree, and the known global common value of that
    form passes both halves there."""
    rng = random.Random(11)
    cond = common_value_inf(RatFunc.from_poly(F223), TRF, ONE, ONE, rng)
    assert isinstance(cond, InfiniteCondition)
    assert cond.degree_parity == 0
    # both halves of the known solution produce the same value
    x1, x2, x3, x4 = Poly(F2, 0b1101), T, Poly(F2, 0b10001), T**3
    c1 = F223 * (x1 * x1 + x1 * x2 + T * (x2 * x2))
    c2 = x3 * x3 + x3 * x4 + x4 * x4
    assert c1 == c2
    assert c1.degree % 2 == 0
    c = RatFunc.from_poly(c1)
    assert half_represents_at(RatFunc.from_poly(F223), TRF, c, P_INF)
    assert half_represents_at(ONE, ONE, c, P_INF)
    # and its valuation parity at t^2+t+1 matches the odd-place condition
    assert int(c.valuation(P_223)) % 2 == 1


def test_common_value_inf_conditions_are_sound():
    cases = [
        (RatFunc.from_poly(F223), TRF, ONE, ONE),
        (ONE, RatFunc.zero(F2), ONE, RatFunc.zero(F2)),
        (ONE + TRF, TRF, TRF, ONE),
    ]
    rng = random.Random(29)
    for a1, a2, a3, a4 in cases:
        cond = common_value_inf(a1, a2, a3, a4, rng)
        assert cond is not None
        got = 0
        attempts = 0
        while got < 50 and attempts < 4000:
            attempts += 1
            c = Poly(F2, rng.getrandbits(7))
            if c.is_zero or not cond.satisfied_by(c):
                continue
            got += 1
            crf = RatFunc.from_poly(c)
            assert half_represents_at(a1, a2, crf, P_INF), (a2, c)
            assert half_represents_at(a3, a4, crf, P_INF), (a4, c)
        assert got == 50, "condition should be satisfiable in bulk"


def test_failure_places_never_exactly_one():
    """Representability failures of a fixed value come in pairs: over all
    places of degree <= 3 plus infinity, the failure count is never one.
    Shapes are chosen so no place outside the checked set can fail.  Each
    per-place verdict is also cross-checked against the enumeration
    oracle."""
    places = [
        P_T,
        P_T1,
        P_223,
        Place.finite(Poly(F2, 0b1011)),
        Place.finite(Poly(F2, 0b1101)),
        P_INF,
    ]
    outers = [ONE, TRF, ONE + TRF, RatFunc.from_poly(F223), TRF * (TRF + ONE)]
    param_dens = [Poly.one(F2), T, Poly(F2, 0b11), F223]
    rng = random.Random(31)
    saw_pair = False
    for _ in range(25):
        outer = outers[rng.randrange(len(outers))]
        param = RatFunc(Poly(F2, rng.randrange(8)), param_dens[rng.randrange(4)])
        c = rf(rng.randrange(1, 16))
        fails = 0
        for place in places:
            got = norm_form_represents(param, c / outer, place)
            assert got == half_represents_at(outer, param, c, place), (outer, param, c, place)
            fails += 0 if got else 1
        assert fails != 1, (outer, param, c)
        saw_pair = saw_pair or fails >= 2
    assert saw_pair
