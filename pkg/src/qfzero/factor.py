"""Factorization and residue arithmetic for polynomials over GF(2^k).

Everything here is exact.  Factoring uses squarefree decomposition,
then distinct-degree splitting, then equal-degree splitting with the
absolute-trace method; the randomness is an internal generator seeded
from the input so results are reproducible run to run.
"""

from __future__ import annotations

import functools
import random

from .fields import solve_gf2_linear
from .poly import Poly


def pow_mod(a: Poly, e: int, modulus: Poly) -> Poly:
    if e < 0:
        raise ValueError("negative exponent")
    r = Poly.one(a.gf)
    b = a % modulus
    while e:
        if e & 1:
            r = r.mul_mod(b, modulus)
        b = b.sqr_mod(modulus)
        e >>= 1
    return r


def _frobenius_iterate(a: Poly, times: int, modulus: Poly) -> Poly:
    """a^(2^times) mod modulus."""
    r = a % modulus
    for _ in range(times):
        r = r.sqr_mod(modulus)
    return r


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over GF(2^k)."""
    d = f.degree
    if not isinstance(d, int) or d < 1:
        return False
    if d == 1:
        return True
    k = f.gf.k
    x = Poly.t(f.gf)
    if _frobenius_iterate(x, k * d, f) != x % f:
        return False
    primes = set()
    m = d
    p = 2
    while p * p <= m:
        if m % p == 0:
            primes.add(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.add(m)
    for p in sorted(primes):
        h = _frobenius_iterate(x, k * (d // p), f) + x % f
        if not f.gcd(h).is_one:
            return False
    return True


def is_squarefree(f: Poly) -> bool:
    return f.gcd(f.derivative()).is_one


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic pairwise-coprime squarefree parts with their multiplicities.

    Returns [(g, e)] with f = lead * prod g^e, exponents strictly increasing.
    """
    if f.is_zero:
        raise ValueError("cannot decompose the zero polynomial")
    out: dict[int, Poly] = {}
    one = Poly.one(f.gf)

    def rec(h: Poly, mult: int):
        c = h.gcd(h.derivative())
        w = h // c
        i = 1
        while not w.is_one:
            y = w.gcd(c)
            z = w // y
            if not z.is_one:
                e = i * mult
                out[e] = out.get(e, one) * z
            c = c // y
            w = y
            i += 1
        if not c.is_one:
            rec(c.sqrt(), 2 * mult)

    h0 = f.monic()[0]
    if not h0.is_one:
        rec(h0, 1)
    return [(g, e) for e, g in sorted(out.items())]


def _distinct_degree(g: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree monic g into products of same-degree primes."""
    k = g.gf.k
    x = Poly.t(g.gf)
    out = []
    rest = g
    h = x % rest
    i = 1
    while isinstance(rest.degree, int) and rest.degree >= 2 * i:
        h = _frobenius_iterate(h, k, rest)
        part = rest.gcd(h + x % rest)
        if not part.is_one:
            out.append((part, i))
            rest = rest // part
            h = h % rest
        i += 1
    if not rest.is_one:
        out.append((rest, rest.degree))
    return out


def _equal_degree(g: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split a squarefree monic product of degree-d primes into primes."""
    n = g.degree
    if n == d:
        return [g]
    kd = g.gf.k * d
    span = g.gf.k * n
    while True:
        u = Poly(g.gf, rng.randrange(1, 1 << span)) % g
        tr = u
        v = u
        for _ in range(kd - 1):
            v = v.sqr_mod(g)
            tr = tr + v
        c = g.gcd(tr)
        if not c.is_one and c != g:
            return _equal_degree(c, d, rng) + _equal_degree(g // c, d, rng)


@functools.lru_cache(maxsize=8192)
def _factor_cached(f: Poly) -> tuple[int, tuple[tuple[Poly, int], ...]]:
    lead = f.lead
    if f.is_constant:
        return lead, ()
    rng = random.Random(f"factor:{f.gf.k}:{f.gf.modulus}:{f.n}")
    out: list[tuple[Poly, int]] = []
    for part, mult in squarefree_decomposition(f):
        for same_deg, d in _distinct_degree(part):
            for prime in _equal_degree(same_deg, d, rng):
                out.append((prime, mult))
    out.sort(key=lambda pm: pm[0].sort_key())
    return lead, tuple(out)


def factor(f: Poly) -> tuple[int, list[tuple[Poly, int]]]:
    """(leading unit, [(monic prime, multiplicity)]) sorted deterministically."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    lead, primes = _factor_cached(f)
    return lead, list(primes)


def crt(residues: list[Poly], moduli: list[Poly]) -> Poly:
    """Unique residue modulo the product; moduli must be pairwise coprime."""
    if len(residues) != len(moduli):
        raise ValueError("residue and modulus lists differ in length")
    if not moduli:
        raise ValueError("need at least one congruence")
    for m in moduli:
        if m.is_constant:
            raise ValueError("constant modulus in crt")
    acc = residues[0] % moduli[0]
    mod = moduli[0]
    for r, m in zip(residues[1:], moduli[1:]):
        g = mod.gcd(m)
        if not g.is_one:
            for i in range(len(moduli)):
                for j in range(i + 1, len(moduli)):
                    if not moduli[i].gcd(moduli[j]).is_one:
                        raise ValueError(
                            "moduli not pairwise coprime: "
                            f"{moduli[i]} and {moduli[j]}"
                        )
            raise ValueError("moduli not pairwise coprime")
        u = ((r + acc) * mod.inv_mod(m)) % m
        acc = acc + mod * u
        mod = mod * m
    return acc % mod


def trace_to_gf2_mod(a: Poly, prime: Poly) -> int:
    """Absolute trace (down to GF(2)) of a in the residue field mod prime."""
    m = a.gf.k * prime.degree
    r = a % prime
    tr = r
    v = r
    for _ in range(m - 1):
        v = v.sqr_mod(prime)
        tr = tr + v
    if tr.is_zero:
        return 0
    if tr.is_one:
        return 1
    raise ArithmeticError("trace landed outside GF(2); modulus not irreducible?")


def sqrt_mod(a: Poly, prime: Poly) -> Poly:
    """Square root in the residue field of an irreducible modulus."""
    m = a.gf.k * prime.degree
    r = _frobenius_iterate(a, m - 1, prime)
    if r.sqr_mod(prime) != a % prime:
        raise ArithmeticError("squaring not bijective; modulus not irreducible?")
    return r


def artin_schreier_root_mod(a: Poly, prime: Poly) -> Poly | None:
    """Solve x^2 + x = a in the residue field, or None if the trace is 1."""
    if trace_to_gf2_mod(a, prime) != 0:
        return None
    gf = a.gf
    dim = gf.k * prime.degree
    cols = []
    for i in range(dim):
        e = Poly(gf, 1 << i)
        cols.append((e.sqr_mod(prime) + e).n)
    combo = solve_gf2_linear(cols, (a % prime).n)
    if combo is None:
        raise ArithmeticError("trace-zero element with no root; bad modulus?")
    x = Poly(gf, combo)
    assert x.sqr_mod(prime) + x == a % prime
    return x


def random_irreducible(gf, degree: int, rng: random.Random) -> Poly:
    if degree < 1:
        raise ValueError("degree must be >= 1")
    while True:
        f = Poly.random(gf, degree, rng, monic=True)
        if is_irreducible(f):
            return f


def iter_monic_irreducibles(gf, max_degree: int):
    """All monic irreducibles of degree 1..max_degree in sorted order."""
    for d in range(1, max_degree + 1):
        base = 1 << (d * gf.k)
        for low in range(base):
            f = Poly(gf, base | low)
            if is_irreducible(f):
                yield f
