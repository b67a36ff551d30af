"""Factorization, irreducibility and residue arithmetic checks.

The re-multiplication oracle needs no trusted factoring: the product of the
returned primes (with multiplicities and the unit) must reproduce the input
bit for bit.
"""

import random

import pytest

from qfzero.factor import (
    crt,
    factor,
    is_irreducible,
    is_squarefree,
    iter_monic_irreducibles,
    random_irreducible,
    sqrt_mod,
    squarefree_decomposition,
)
from qfzero.fields import GF
from qfzero.poly import Poly

F2 = GF(1)


def rand_poly(gf, rng, max_deg, nonzero=False):
    while True:
        p = Poly(gf, rng.randrange(1 << (gf.k * (max_deg + 1))))
        if not (nonzero and p.is_zero):
            return p


def test_factor_remultiplies_exactly():
    rng = random.Random(21)
    for _ in range(1000):
        f = rand_poly(F2, rng, 12, nonzero=True)
        unit, primes = factor(f)
        prod = Poly.one(F2).scale(unit)
        for p, mult in primes:
            assert p.is_monic
            assert is_irreducible(p)
            for _ in range(mult):
                prod = prod * p
        assert prod == f


def test_factor_over_extension_field():
    gf = GF(3)
    rng = random.Random(22)
    for _ in range(200):
        f = rand_poly(gf, rng, 8, nonzero=True)
        unit, primes = factor(f)
        prod = Poly.one(gf).scale(unit)
        for p, mult in primes:
            for _ in range(mult):
                prod = prod * p
        assert prod == f


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        factor(Poly.zero(F2))


def test_squarefree_decomposition_consistent():
    rng = random.Random(23)
    for _ in range(300):
        f = rand_poly(F2, rng, 10, nonzero=True)
        parts = squarefree_decomposition(f)
        prod = Poly.one(F2).scale(f.lead)
        for part, mult in parts:
            assert is_squarefree(part)
            for _ in range(mult):
                prod = prod * part
        assert prod == f


def test_iter_monic_irreducibles_small_counts():
    # 2, 1, 2, 3, 6 monic irreducibles of degree 1..5 over F_2
    by_degree = {}
    for p in iter_monic_irreducibles(F2, 5):
        by_degree.setdefault(p.degree, []).append(p)
        assert is_irreducible(p)
    assert [len(by_degree[d]) for d in range(1, 6)] == [2, 1, 2, 3, 6]


def test_random_irreducible_has_requested_degree():
    rng = random.Random(24)
    for degree in (1, 2, 3, 7, 20):
        p = random_irreducible(F2, degree, rng)
        assert p.degree == degree
        assert p.is_monic
        assert is_irreducible(p)


@pytest.mark.parametrize("k", [1, 2])
def test_sqrt_mod_all_residues_small_primes(k):
    gf = GF(k)
    for prime in iter_monic_irreducibles(gf, 3):
        span = gf.k * prime.degree
        for n in range(1 << span):
            a = Poly(gf, n)
            r = sqrt_mod(a, prime)
            assert r.sqr() % prime == a % prime


def test_crt_recombines():
    rng = random.Random(25)
    moduli = [Poly(F2, 0b10), Poly(F2, 0b11), Poly(F2, 0b111)]
    for _ in range(200):
        target = rand_poly(F2, rng, 7)
        residues = [target % m for m in moduli]
        got = crt(residues, moduli)
        prod = moduli[0] * moduli[1] * moduli[2]
        assert got == target % prod


def test_crt_rejects_shared_factor():
    with pytest.raises(ValueError):
        crt([Poly(F2, 0b1), Poly(F2, 0b0)], [Poly(F2, 0b10), Poly(F2, 0b110)])
