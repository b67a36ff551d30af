"""Shared test utilities.

Packed-integer F_2[t] arithmetic (polynomials as bitmasks), a vectorized
brute-force zero search for quaternary forms, and an exhaustive local
checker that confirms anisotropy certificates by value-set enumeration
at the named place.  Everything here decides independently of the solver
code under test; library types are only used for input/output plumbing.
"""

import numpy as np

from qfzero import GF, Place, Poly, RatFunc

F2 = GF(1)


def clmul(a: int, b: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def pmod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def val_at(a: int, f: int) -> int:
    """Multiplicity of the irreducible bitmask f in a; a must be nonzero."""
    assert a != 0
    v = 0
    while pmod(a, f) == 0:
        # exact division by long division
        q = 0
        df = f.bit_length() - 1
        r = a
        while r.bit_length() - 1 >= df:
            sh = r.bit_length() - 1 - df
            q ^= 1 << sh
            r ^= f << sh
        assert r == 0
        a = q
        v += 1
    return v


def to_int(p: Poly) -> int:
    assert p.gf.k == 1
    return p.n


def to_poly(n: int) -> Poly:
    return Poly(F2, n)


def clmul_np(a, b, bbits: int):
    """Elementwise carryless product; entries of b must fit in bbits."""
    acc = np.zeros(np.broadcast(a, b).shape, dtype=np.uint64)
    aa = np.asarray(a, dtype=np.uint64)
    bb = np.asarray(b, dtype=np.uint64)
    for i in range(bbits):
        bit = (bb >> np.uint64(i)) & np.uint64(1)
        acc ^= (aa << np.uint64(i)) * bit
    return acc


def pmod_np(a, m: int, maxbits: int):
    acc = np.array(a, dtype=np.uint64, copy=True)
    dm = m.bit_length() - 1
    for i in range(maxbits - 1, dm - 1, -1):
        bit = (acc >> np.uint64(i)) & np.uint64(1)
        acc ^= np.uint64(m << (i - dm)) * bit
    return acc


# -- brute-force quaternary zero search over F_2 -----------------------------


def pfaffian(form) -> RatFunc:
    """Pfaffian of the alternating polar matrix; nonzero iff regular."""
    g = form.gram
    return g[0][1] * g[2][3] + g[0][2] * g[1][3] + g[0][3] * g[1][2]


def brute_quaternary_zero(form, max_deg: int):
    """Exhaustive nontrivial zero with polynomial coordinates of degree
    <= max_deg, or None.  Gram entries must be polynomials over F_2.

    The search is split in half: the value of the (x1, x2) part plus the
    cross terms against the (x3, x4) part, all as packed bitmask grids.
    """
    g = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(i, 4):
            entry = form.gram[i][j]
            assert entry.is_poly and entry.gf.k == 1
            g[i][j] = to_int(entry.num)
    gb = max(x.bit_length() for row in g for x in row) or 1

    w = 1 << (max_deg + 1)
    v = np.arange(w, dtype=np.uint64)
    sq = clmul_np(v, v, max_deg + 1)
    first = np.repeat(v, w)
    second = np.tile(v, w)
    sq_first = np.repeat(sq, w)
    sq_second = np.tile(sq, w)
    cross = clmul_np(first, second, max_deg + 1)

    def half(c_aa, c_ab, c_bb):
        return (
            clmul_np(sq_first, np.uint64(c_aa), gb)
            ^ clmul_np(cross, np.uint64(c_ab), gb)
            ^ clmul_np(sq_second, np.uint64(c_bb), gb)
        )

    p12 = half(g[0][0], g[0][1], g[1][1])
    p34 = half(g[2][2], g[2][3], g[3][3])
    l1 = clmul_np(first, np.uint64(g[0][2]), gb) ^ clmul_np(second, np.uint64(g[1][2]), gb)
    l2 = clmul_np(first, np.uint64(g[0][3]), gb) ^ clmul_np(second, np.uint64(g[1][3]), gb)

    total = (
        p12[:, None]
        ^ clmul_np(l1[:, None], first[None, :], max_deg + 1)
        ^ clmul_np(l2[:, None], second[None, :], max_deg + 1)
        ^ p34[None, :]
    )
    hits = np.argwhere(total == 0)
    for i, j in hits:
        if i == 0 and j == 0:
            continue
        coords = (int(i) >> (max_deg + 1), int(i) & (w - 1),
                  int(j) >> (max_deg + 1), int(j) & (w - 1))
        vec = tuple(RatFunc.from_poly(to_poly(c)) for c in coords)
        assert form.evaluate(vec).is_zero
        return vec
    return None


# -- brute-force local representability of one binary half -------------------


def half_represents_at(outer: RatFunc, param: RatFunc, value: RatFunc, place: Place) -> bool:
    """Whether outer*(x^2 + x*y + param*y^2) = value is solvable in the
    completion at place, decided by exhaustive residue enumeration.

    Homogeneity allows rescaling the target by even prime powers, after
    which solutions are integral and finite precision decides: prime^3
    when the minimized parameter is regular at the place, prime^(4r+3)
    when it carries a pole of order 2r+1.  Even pole parts are removed
    first by the value-preserving substitution x -> x + s*y.  F_2 only.
    """
    from qfzero.artin_schreier import reduce_param_at_place

    if value.is_zero:
        raise ValueError("value must be nonzero")
    gf = outer.gf
    assert gf.k == 1
    if place.is_infinite:
        return half_represents_at(
            outer.subst_inv(), param.subst_inv(), value.subst_inv(),
            Place.finite(Poly.t(gf)),
        )
    prime = place.prime
    reduced, _ = reduce_param_at_place(param, prime)
    w = value / outer
    vw = int(w.valuation(place))
    va = 0 if reduced.is_zero else int(reduced.valuation(place))
    f = RatFunc.from_poly(prime)
    f_int = to_int(prime)
    if va >= 0:
        target = w / f ** (2 * (vw // 2))
        n = 3
        pn = prime**n
        pn_int = to_int(pn)
        a_int = pmod(to_int(reduced.mod_prime_power(prime, n)), pn_int)
        t_int = pmod(to_int(target.mod_prime_power(prime, n)), pn_int)
        nres = 1 << pn.degree
        sq = [pmod(clmul(x, x), pn_int) for x in range(nres)]
        for x in range(nres):
            for y in range(nres):
                lhs = sq[x] ^ clmul(x, y) ^ clmul(a_int, sq[y])
                if pmod(lhs, pn_int) == t_int:
                    return True
        return False
    r = (-va - 1) // 2
    assert va == -(2 * r + 1), "parameter pole should be odd after reduction"
    b = reduced * f ** (2 * r + 1)
    ct = w * f ** (1 - 2 * ((vw + 1) // 2))
    n = 4 * r + 3
    pn = prime**n
    pn_int = to_int(pn)
    if pn.degree > 8:
        raise ValueError("enumeration space too large at this place")
    lead = to_int(prime ** (2 * r + 1))
    b_int = pmod(to_int(b.mod_prime_power(prime, n)), pn_int)
    rhs = pmod(clmul(to_int(ct.mod_prime_power(prime, n)), to_int(prime ** (2 * r))), pn_int)
    nres = 1 << pn.degree
    sq = [pmod(clmul(x, x), pn_int) for x in range(nres)]
    for u in range(nres):
        for v in range(nres):
            lhs = clmul(lead, sq[u] ^ clmul(u, v)) ^ clmul(b_int, sq[v])
            if pmod(lhs, pn_int) == rhs:
                return True
    return False


# -- exhaustive local anisotropy checker -------------------------------------


def _half_value_sets(caa: int, cab: int, cbb: int, f_int: int, k: int):
    """Values of caa*x^2 + cab*x*y + cbb*y^2 mod f^k over residue pairs.

    Returns (all values, values over pairs that are primitive mod f),
    both as sorted unique uint64 arrays.
    """
    df = f_int.bit_length() - 1
    dk = df * k
    mk = 1
    for _ in range(k):
        mk = clmul(mk, f_int)
    caa, cab, cbb = pmod(caa, mk), pmod(cab, mk), pmod(cbb, mk)
    n = 1 << dk
    res = np.arange(n, dtype=np.uint64)
    divf = pmod_np(res, f_int, dk) == 0
    sqs = pmod_np(clmul_np(res, res, dk), mk, 2 * dk)
    term_aa = pmod_np(clmul_np(sqs, np.uint64(caa), dk), mk, 2 * dk)
    term_bb = pmod_np(clmul_np(sqs, np.uint64(cbb), dk), mk, 2 * dk)
    cross = pmod_np(clmul_np(res[:, None], res[None, :], dk), mk, 2 * dk)
    cross = pmod_np(clmul_np(cross, np.uint64(cab), dk), mk, 2 * dk)
    vals = term_aa[:, None] ^ cross ^ term_bb[None, :]
    prim = ~(divf[:, None] & divf[None, :])
    return np.unique(vals), np.unique(vals[prim])


def _depth_at(a: RatFunc, place: Place) -> int:
    if a.is_zero:
        return 0
    return max(0, -int(a.valuation(place)))


def certificate_confirmed(cert) -> bool:
    """Exhaustively confirm a local obstruction by value-set enumeration.

    Clears the certificate's coefficient quadruple to six polynomial
    coefficients, enumerates all residue pairs mod f^K for each binary
    half, and checks that no combination with at least one half primitive
    sums to zero.  Such a combination would be a primitive zero of the
    quaternary form mod f^K, which a true local obstruction forbids at
    every precision.  The precision K is taken beyond the deciding level
    for the pole structure at hand, so a spurious pass is not possible
    either.
    """
    if cert.kind == "infinite":
        params = [p.subst_inv() for p in cert.params]
        prime = Poly.t(F2)
        place = Place.finite(prime)
    else:
        place = cert.place
        prime = place.prime
        params = list(cert.params)
    a1, a2, a3, a4 = params
    coeffs = [a1, a1, a1 * a2, a3, a3, a3 * a4]
    den = Poly.one(prime.gf)
    for c in coeffs:
        den = den * c.den
    den_rf = RatFunc.from_poly(den)
    cleared = []
    for c in coeffs:
        p = c * den_rf
        assert p.is_poly
        cleared.append(to_int(p.num))
    f_int = to_int(prime)
    m = min(val_at(c, f_int) for c in cleared if c)
    if m:
        mf = 1
        for _ in range(m):
            mf = clmul(mf, f_int)
        divided = []
        for c in cleared:
            q = 0
            r = c
            df = mf.bit_length() - 1
            while r and r.bit_length() - 1 >= df:
                sh = r.bit_length() - 1 - df
                q ^= 1 << sh
                r ^= mf << sh
            assert r == 0
            divided.append(q)
        cleared = divided
    vmax = max(val_at(c, f_int) for c in cleared if c)
    depth = max(_depth_at(a2, place), _depth_at(a4, place))
    if cert.kind == "odd-place-symbols":
        k = vmax + 2
    else:
        k = 2 * depth + vmax + 3
    dk = prime.degree * k
    if dk > 12:
        raise ValueError(f"checker precision f^{k} at degree {prime.degree} too large")
    a_all, a_prim = _half_value_sets(cleared[0], cleared[1], cleared[2], f_int, k)
    b_all, b_prim = _half_value_sets(cleared[3], cleared[4], cleared[5], f_int, k)
    if np.intersect1d(a_prim, b_all).size:
        return False
    if np.intersect1d(a_all, b_prim).size:
        return False
    return True
