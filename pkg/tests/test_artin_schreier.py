"""Additive symbol and global wp-solving invariants.

The symbol is pinned to ground truth by exhaustive root searches in small
residue rings; minimization and the rational solver are checked by exact
re-substitution.
"""

import random

from qfzero.artin_schreier import (
    BinaryNormForm,
    minimize,
    minimize_param,
    symbol,
    symbol_finite,
    symbol_infinite,
    wp_solve_rational,
)
from qfzero.factor import iter_monic_irreducibles, random_irreducible
from qfzero.fields import GF
from qfzero.poly import Poly
from qfzero.ratfunc import Place, RatFunc

F2 = GF(1)


def rand_poly(gf, rng, max_deg, nonzero=False):
    while True:
        p = Poly(gf, rng.randrange(1 << (gf.k * (max_deg + 1))))
        if not (nonzero and p.is_zero):
            return p


def rand_regular_at(gf, rng, places, max_deg=6):
    """Random rational function with no pole at any of the given places."""
    while True:
        num = rand_poly(gf, rng, max_deg)
        den = rand_poly(gf, rng, max_deg, nonzero=True)
        x = RatFunc(num, den)
        if all(x.valuation(p) >= 0 for p in places):
            return x


def test_wp_examples():
    t = RatFunc.t(F2)
    h = wp_solve_rational(t.sqr() + t)
    assert h is not None and h.sqr() + h == t.sqr() + t
    assert wp_solve_rational(t) is None
    assert wp_solve_rational(RatFunc.one(F2)) is None  # trace 1 constant
    z = wp_solve_rational(RatFunc.zero(F2))
    assert z is not None and z.is_zero


def test_symbol_additive():
    rng = random.Random(41)
    places = [Place.finite(p) for p in iter_monic_irreducibles(F2, 3)]
    places += [Place.finite(random_irreducible(F2, d, rng)) for d in (4, 4, 5, 5, 6)]
    assert len(places) >= 10
    for _ in range(1000):
        p = rng.choice(places)
        a = rand_regular_at(F2, rng, [p])
        b = rand_regular_at(F2, rng, [p])
        assert symbol_finite(a + b, p) == symbol_finite(a, p) ^ symbol_finite(b, p)


def test_symbol_congruence_stability():
    rng = random.Random(42)
    places = [Place.finite(p) for p in iter_monic_irreducibles(F2, 3)]
    for _ in range(300):
        p = rng.choice(places)
        a = rand_regular_at(F2, rng, [p])
        bump = RatFunc.from_poly(p.prime * rand_poly(F2, rng, 4))
        assert symbol_finite(a, p) == symbol_finite(a + bump, p)


def test_symbol_matches_exhaustive_root_search():
    # ground truth: x^2 + x = a has a root in the residue field iff symbol 0
    for gf, max_deg in ((GF(1), 4), (GF(2), 2), (GF(3), 1)):
        for prime in iter_monic_irreducibles(gf, max_deg):
            span = gf.k * prime.degree
            if (1 << span) > 256:
                continue
            place = Place.finite(prime)
            for n in range(1 << span):
                a = Poly(gf, n)
                solvable = any(
                    (Poly(gf, m).sqr() + Poly(gf, m) + a) % prime == Poly.zero(gf)
                    for m in range(1 << span)
                )
                got = symbol_finite(RatFunc.from_poly(a), place)
                assert got == (0 if solvable else 1)


def test_symbol_infinite_basics():
    t = RatFunc.t(F2)
    import pytest

    with pytest.raises(ValueError):
        symbol_infinite(t)  # pole at infinity: symbol undefined there
    assert symbol_infinite(RatFunc.zero(F2)) == 0
    assert symbol_infinite(RatFunc.one(F2)) == 1  # Tr(1) = 1 over F_2
    assert symbol_infinite(t.inv()) == 0  # positive valuation, residue 0
    ratio = (t + RatFunc.one(F2)) / t  # residue 1 at infinity
    assert symbol_infinite(ratio) == 1
    assert symbol(ratio, Place.infinite(F2)) == 1


def test_minimize_param_roundtrip_and_odd_poles():
    rng = random.Random(43)
    for _ in range(1000):
        base = RatFunc(rand_poly(F2, rng, 4), rand_poly(F2, rng, 4, nonzero=True))
        h = RatFunc(rand_poly(F2, rng, 3), rand_poly(F2, rng, 3, nonzero=True))
        planted = base + h.sqr() + h
        reduced, shift = minimize_param(planted)
        assert reduced + shift.sqr() + shift == planted
        for prime, order in reduced.finite_poles():
            assert order % 2 == 1
        inf_val = reduced.valuation(Place.infinite(F2))
        if inf_val < 0:
            assert inf_val % 2 == 1


def test_minimize_form_substitution_identity():
    rng = random.Random(44)
    for _ in range(300):
        scale = RatFunc(rand_poly(F2, rng, 3, nonzero=True), rand_poly(F2, rng, 2, nonzero=True))
        base = RatFunc(rand_poly(F2, rng, 4), rand_poly(F2, rng, 4, nonzero=True))
        h = RatFunc(rand_poly(F2, rng, 3), rand_poly(F2, rng, 3, nonzero=True))
        form = BinaryNormForm(scale, base + h.sqr() + h)
        form_min, shift = minimize(form)
        # x -> x + h*y turns the input form into the minimized one
        assert form_min.scale == form.scale
        assert form_min.param == form.param + shift.h.sqr() + shift.h


def test_wp_solve_rational_roundtrip():
    rng = random.Random(45)
    for _ in range(500):
        h = RatFunc(rand_poly(F2, rng, 5), rand_poly(F2, rng, 4, nonzero=True))
        g = h.sqr() + h
        z = wp_solve_rational(g)
        assert z is not None
        assert z.sqr() + z == g


def test_wp_solve_rational_absence_exhaustive():
    # over polynomials the solver's no-answer is confirmed by listing every
    # possible image h^2+h with deg h <= 6
    image = set()
    for n in range(1 << 7):
        h = Poly(F2, n)
        image.add((h.sqr() + h).n)
    for n in range(1 << 7):
        g = Poly(F2, n)
        z = wp_solve_rational(RatFunc.from_poly(g))
        if z is None:
            assert g.n not in image
        else:
            assert z.sqr() + z == RatFunc.from_poly(g)
