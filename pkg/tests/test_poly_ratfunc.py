"""Polynomial ring and rational function field invariants.

Canonical-form checks (gcd one, monic denominator), division round trips,
and the valuation product rule at a handful of places.
"""

import random

import pytest

from qfzero.factor import random_irreducible
from qfzero.fields import GF
from qfzero.poly import Poly
from qfzero.ratfunc import Place, RatFunc

F2 = GF(1)


def rand_poly(gf, rng, max_deg, nonzero=False):
    while True:
        p = Poly(gf, rng.randrange(1 << (gf.k * (max_deg + 1))))
        if not (nonzero and p.is_zero):
            return p


def test_divmod_roundtrip():
    rng = random.Random(2)
    for _ in range(500):
        a = rand_poly(F2, rng, 12)
        b = rand_poly(F2, rng, 6, nonzero=True)
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_gcd_divides_both():
    rng = random.Random(3)
    for _ in range(300):
        a = rand_poly(F2, rng, 10, nonzero=True)
        b = rand_poly(F2, rng, 10, nonzero=True)
        g = a.gcd(b)
        assert g.is_monic
        assert (a % g).is_zero and (b % g).is_zero
        got, u, v = a.extended_gcd(b)
        assert got == g
        assert u * a + v * b == g


def test_zero_degree_sentinel():
    z = Poly.zero(F2)
    assert z.degree == float("-inf")
    assert z.degree < 0
    assert Poly.one(F2).degree == 0


def test_even_odd_parts_identity():
    t = RatFunc.t(F2)
    rng = random.Random(4)
    for _ in range(200):
        p = rand_poly(F2, rng, 9)
        ev, od = p.even_odd_parts()
        recomposed = RatFunc.from_poly(ev.sqr()) + t * RatFunc.from_poly(od.sqr())
        assert recomposed == RatFunc.from_poly(p)


@pytest.mark.parametrize("k", [1, 2])
def test_ratfunc_canonical_after_planted_common_factor(k):
    gf = GF(k)
    rng = random.Random(10 + k)
    for _ in range(300):
        num = rand_poly(gf, rng, 6)
        den = rand_poly(gf, rng, 6, nonzero=True)
        g = rand_poly(gf, rng, 4, nonzero=True)
        x = RatFunc(num * g, den * g)
        assert x == RatFunc(num, den)
        assert x.den.is_monic
        assert x.num.gcd(x.den).is_one


def test_valuation_product_rule():
    rng = random.Random(11)
    places = [
        Place.finite(Poly(F2, 0b10)),          # t
        Place.finite(Poly(F2, 0b11)),          # t+1
        Place.finite(Poly(F2, 0b111)),         # t^2+t+1
        Place.finite(random_irreducible(F2, 3, rng)),
        Place.infinite(F2),
    ]
    for _ in range(1000):
        x = RatFunc(rand_poly(F2, rng, 6, nonzero=True), rand_poly(F2, rng, 5, nonzero=True))
        y = RatFunc(rand_poly(F2, rng, 6, nonzero=True), rand_poly(F2, rng, 5, nonzero=True))
        p = rng.choice(places)
        assert (x * y).valuation(p) == x.valuation(p) + y.valuation(p)


def test_valuation_of_zero_is_infinite():
    z = RatFunc.zero(F2)
    assert z.valuation(Place.infinite(F2)) == float("inf")
    assert z.valuation(Place.finite(Poly(F2, 0b10))) == float("inf")


def test_field_ops_and_inverse():
    rng = random.Random(12)
    for _ in range(300):
        x = RatFunc(rand_poly(F2, rng, 5, nonzero=True), rand_poly(F2, rng, 4, nonzero=True))
        y = RatFunc(rand_poly(F2, rng, 5, nonzero=True), rand_poly(F2, rng, 4, nonzero=True))
        assert x * x.inv() == RatFunc.one(F2)
        assert (x + y) * (x + y) == x.sqr() + y.sqr()  # char 2, cross terms cancel
        assert x / y * y == x


def test_square_detection_and_sqrt():
    rng = random.Random(13)
    for _ in range(200):
        x = RatFunc(rand_poly(F2, rng, 5, nonzero=True), rand_poly(F2, rng, 4, nonzero=True))
        sq = x.sqr()
        assert sq.is_square
        assert sq.sqrt() == x
    t = RatFunc.t(F2)
    assert not t.is_square


def test_subst_inv_is_involutive():
    rng = random.Random(14)
    for _ in range(100):
        x = RatFunc(rand_poly(F2, rng, 6, nonzero=True), rand_poly(F2, rng, 6, nonzero=True))
        assert x.subst_inv().subst_inv() == x


def test_infinite_valuation_is_degree_drop():
    rng = random.Random(15)
    inf = Place.infinite(F2)
    for _ in range(200):
        num = rand_poly(F2, rng, 7, nonzero=True)
        den = rand_poly(F2, rng, 7, nonzero=True)
        x = RatFunc(num, den)
        assert x.valuation(inf) == x.den.degree - x.num.degree
