"""Arithmetic in GF(2^k), elements packed as ints.

An element is an int in [0, 2^k) holding the coordinates of the power
basis 1, g, g^2, ... where g is a root of the modulus polynomial.
Addition is XOR.  The helpers at module level are plain GF(2)[x]
operations on ints (bit i = coefficient of x^i).
"""

from __future__ import annotations


def gf2_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials packed in ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_sqr(a: int) -> int:
    r = 0
    i = 0
    while a:
        if a & 1:
            r |= 1 << (2 * i)
        a >>= 1
        i += 1
    return r


def gf2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length() - 1
    q = 0
    da = a.bit_length() - 1
    while a and da >= db:
        sh = da - db
        q ^= 1 << sh
        a ^= b << sh
        da = a.bit_length() - 1
    return q, a


def gf2_mod(a: int, b: int) -> int:
    return gf2_divmod(a, b)[1]


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def gf2_is_irreducible(m: int) -> bool:
    """Rabin test for a GF(2)[x] polynomial packed in an int."""
    n = m.bit_length() - 1
    if n <= 0:
        return False

    def frob(j: int) -> int:
        u = gf2_mod(2, m)
        for _ in range(j):
            u = gf2_mod(gf2_sqr(u), m)
        return u

    if frob(n) != gf2_mod(2, m):
        return False
    for p in _prime_divisors(n):
        if gf2_gcd(frob(n // p) ^ gf2_mod(2, m), m) != 1:
            return False
    return True


# Defaults for small k: the smallest irreducible of each degree when the
# packed int is read as a binary number.  Verified by test_fields.
_DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
    13: 0b10000000011011,
    14: 0b100000000100001,
    15: 0b1000000000000011,
    16: 0b10000000000101011,
}


def default_modulus(k: int) -> int:
    if k in _DEFAULT_MODULI:
        return _DEFAULT_MODULI[k]
    m = (1 << k) + 1
    while not gf2_is_irreducible(m):
        m += 2
    return m


def solve_gf2_linear(cols: list[int], target: int) -> int | None:
    """One solution x of XOR_j x_j*cols[j] = target, as a bit mask, or None."""
    pivots: dict[int, tuple[int, int]] = {}
    for j, v in enumerate(cols):
        c = 1 << j
        while v:
            p = v & -v
            if p in pivots:
                pv, pc = pivots[p]
                v ^= pv
                c ^= pc
            else:
                pivots[p] = (v, c)
                break
    t = target
    combo = 0
    while t:
        p = t & -t
        if p not in pivots:
            return None
        pv, pc = pivots[p]
        t ^= pv
        combo ^= pc
    return combo


class GF:
    """The field GF(2^k) with a fixed irreducible modulus over GF(2)."""

    __slots__ = ("k", "modulus", "order", "mask", "_exp", "_log")

    _TABLE_LIMIT = 12  # log/exp tables up to 2^12 elements

    def __init__(self, k: int, modulus: int | None = None):
        if k < 1:
            raise ValueError("field degree k must be >= 1")
        if modulus is None:
            modulus = default_modulus(k)
        if modulus.bit_length() - 1 != k:
            raise ValueError("modulus degree does not match k")
        if not gf2_is_irreducible(modulus):
            raise ValueError("modulus is reducible over GF(2)")
        self.k = k
        self.modulus = modulus
        self.order = 1 << k
        self.mask = self.order - 1
        self._exp = None
        self._log = None
        if 2 <= k <= self._TABLE_LIMIT:
            self._build_tables()

    # -- low level ---------------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        return gf2_mod(gf2_mul(a, b), self.modulus)

    def _build_tables(self):
        n = self.order - 1
        for g in range(2, self.order):
            exp = [1] * n
            e = 1
            ok = True
            for i in range(1, n):
                e = self._mul_raw(e, g)
                if e == 1:
                    ok = False
                    break
                exp[i] = e
            if ok and self._mul_raw(e, g) == 1:
                log = [0] * self.order
                for i, v in enumerate(exp):
                    log[v] = i
                self._exp = exp + exp  # doubled so mul needs no reduction
                self._log = log
                return
        raise AssertionError("no multiplicative generator found")

    # -- field operations --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return 1
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        b = a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        if self.k == 1:
            return 1
        if self._log is not None:
            n = self.order - 1
            return self._exp[n - self._log[a]]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        """Frobenius inverse: the unique b with b*b = a."""
        r = a
        for _ in range(self.k - 1):
            r = self.sqr(r)
        return r

    def trace(self, a: int) -> int:
        """Absolute trace down to GF(2), an int in {0, 1}."""
        acc = 0
        s = a
        for _ in range(self.k):
            acc ^= s
            s = self.sqr(s)
        if acc not in (0, 1):
            raise AssertionError("absolute trace left the prime field")
        return acc

    def wp(self, a: int) -> int:
        """a^2 + a, the additive map whose kernel is GF(2)."""
        return self.sqr(a) ^ a

    def wp_root(self, a: int) -> int | None:
        """Some e with e^2 + e = a, or None when the trace of a is 1."""
        if self.trace(a) != 0:
            return None
        cols = [self.wp(1 << j) for j in range(self.k)]
        e = solve_gf2_linear(cols, a)
        if e is None or self.wp(e) != a:
            raise AssertionError("inconsistent wp preimage solve")
        return e

    # -- misc --------------------------------------------------------------

    def elements(self):
        return range(self.order)

    def random_element(self, rng) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.order)

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("GF", self.k, self.modulus))

    def __repr__(self):
        return f"GF(2^{self.k}, modulus={bin(self.modulus)})"
