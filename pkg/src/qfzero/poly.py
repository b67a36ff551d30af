"""Univariate polynomials over GF(2^k), coefficients packed in one int.

Coefficient i of a polynomial in t occupies bits [i*k, (i+1)*k) of the
packed int, so addition of polynomials is a single XOR and the packing
is canonical (no leading-zero representation exists).  The degree of
the zero polynomial is the NEG_INF sentinel, never -1.
"""

from __future__ import annotations

from .fields import GF, gf2_divmod, gf2_mul, gf2_sqr

NEG_INF = float("-inf")


def _scale_shift(gf: GF, bn: int, c: int, sh: int) -> int:
    """bn scaled by the field element c and shifted by sh positions."""
    k = gf.k
    if c == 1:
        return bn << (sh * k)
    mask = gf.mask
    r = 0
    j = sh
    b = bn
    while b:
        d = b & mask
        if d:
            r |= gf.mul(c, d) << (j * k)
        b >>= k
        j += 1
    return r


def _mul_raw(gf: GF, an: int, bn: int) -> int:
    if gf.k == 1:
        return gf2_mul(an, bn)
    mask = gf.mask
    k = gf.k
    r = 0
    i = 0
    a = an
    while a:
        c = a & mask
        if c:
            r ^= _scale_shift(gf, bn, c, i)
        a >>= k
        i += 1
    return r


def _sqr_raw(gf: GF, an: int) -> int:
    if gf.k == 1:
        return gf2_sqr(an)
    mask = gf.mask
    k = gf.k
    r = 0
    i = 0
    a = an
    while a:
        c = a & mask
        if c:
            r |= gf.sqr(c) << (2 * i * k)
        a >>= k
        i += 1
    return r


def _divmod_raw(gf: GF, an: int, bn: int) -> tuple[int, int]:
    if bn == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if gf.k == 1:
        return gf2_divmod(an, bn)
    k = gf.k
    mask = gf.mask
    db = (bn.bit_length() - 1) // k
    linv = gf.inv((bn >> (db * k)) & mask)
    q = 0
    a = an
    while a:
        da = (a.bit_length() - 1) // k
        if da < db:
            break
        c = gf.mul((a >> (da * k)) & mask, linv)
        sh = da - db
        q |= c << (sh * k)
        a ^= _scale_shift(gf, bn, c, sh)
    return q, a


class Poly:
    """Immutable polynomial over a GF(2^k) instance."""

    __slots__ = ("gf", "n")

    def __init__(self, gf: GF, n: int):
        if n < 0:
            raise ValueError("packed representation must be non-negative")
        object.__setattr__(self, "gf", gf)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, gf: GF) -> "Poly":
        return cls(gf, 0)

    @classmethod
    def one(cls, gf: GF) -> "Poly":
        return cls(gf, 1)

    @classmethod
    def t(cls, gf: GF) -> "Poly":
        return cls(gf, 1 << gf.k)

    @classmethod
    def constant(cls, gf: GF, c: int) -> "Poly":
        if not 0 <= c < gf.order:
            raise ValueError("constant out of field range")
        return cls(gf, c)

    @classmethod
    def monomial(cls, gf: GF, c: int, e: int) -> "Poly":
        if not 0 <= c < gf.order:
            raise ValueError("coefficient out of field range")
        if e < 0:
            raise ValueError("negative exponent")
        return cls(gf, c << (e * gf.k))

    @classmethod
    def from_coeffs(cls, gf: GF, coeffs) -> "Poly":
        n = 0
        for i, c in enumerate(coeffs):
            if not 0 <= c < gf.order:
                raise ValueError("coefficient out of field range")
            n |= c << (i * gf.k)
        return cls(gf, n)

    @classmethod
    def random(cls, gf: GF, degree: int, rng, monic: bool = False) -> "Poly":
        """Uniform polynomial of exact degree `degree` (monic if asked)."""
        if degree < 0:
            raise ValueError("degree must be >= 0")
        lead = 1 if monic else gf.random_nonzero(rng)
        n = lead << (degree * gf.k)
        if degree:
            n |= rng.randrange(1 << (degree * gf.k))
        return cls(gf, n)

    @classmethod
    def all_up_to(cls, gf: GF, degree: int):
        """Iterate every polynomial of degree <= degree (including zero)."""
        for n in range(1 << (gf.k * (degree + 1))):
            yield cls(gf, n)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        if self.n == 0:
            return NEG_INF
        return (self.n.bit_length() - 1) // self.gf.k

    def coeff(self, i: int) -> int:
        if i < 0:
            raise ValueError("negative index")
        return (self.n >> (i * self.gf.k)) & self.gf.mask

    @property
    def lead(self) -> int:
        if self.n == 0:
            return 0
        return self.coeff(self.degree)

    @property
    def is_zero(self) -> bool:
        return self.n == 0

    @property
    def is_one(self) -> bool:
        return self.n == 1

    @property
    def is_monic(self) -> bool:
        return self.n != 0 and self.lead == 1

    @property
    def is_constant(self) -> bool:
        return self.n < self.gf.order

    def coeffs(self) -> list[int]:
        d = self.degree
        if d is NEG_INF:
            return []
        return [self.coeff(i) for i in range(d + 1)]

    def sort_key(self):
        return (self.n.bit_length(), self.n)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError("expected a Poly")
        if other.gf != self.gf:
            raise ValueError("mixed coefficient fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.gf, self.n ^ other.n)

    __sub__ = __add__

    def __neg__(self) -> "Poly":
        return self

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.gf, _mul_raw(self.gf, self.n, other.n))

    def scale(self, c: int) -> "Poly":
        """Multiply by a field element."""
        if c == 0:
            return Poly(self.gf, 0)
        return Poly(self.gf, _scale_shift(self.gf, self.n, c, 0))

    def shift(self, e: int) -> "Poly":
        """Multiply by t^e."""
        if e < 0:
            raise ValueError("negative shift")
        return Poly(self.gf, self.n << (e * self.gf.k))

    def sqr(self) -> "Poly":
        return Poly(self.gf, _sqr_raw(self.gf, self.n))

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        r = Poly.one(self.gf)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b.sqr()
            e >>= 1
        return r

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        q, r = _divmod_raw(self.gf, self.n, other.n)
        return Poly(self.gf, q), Poly(self.gf, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.gf, _divmod_raw(self.gf, self.n, other.n)[1])

    def mul_mod(self, other: "Poly", modulus: "Poly") -> "Poly":
        self._check(other)
        return Poly(
            self.gf,
            _divmod_raw(self.gf, _mul_raw(self.gf, self.n, other.n), modulus.n)[1],
        )

    def sqr_mod(self, modulus: "Poly") -> "Poly":
        return Poly(self.gf, _divmod_raw(self.gf, _sqr_raw(self.gf, self.n), modulus.n)[1])

    def monic(self) -> tuple["Poly", int]:
        """(self / lead, lead); the zero polynomial is returned unchanged."""
        if self.n == 0:
            return self, 1
        lead = self.lead
        if lead == 1:
            return self, 1
        return self.scale(self.gf.inv(lead)), lead

    def gcd(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()[0]

    def extended_gcd(self, other: "Poly"):
        """(g, s, u) with s*self + u*other = g and g monic."""
        self._check(other)
        a, b = self, other
        sa, sb = Poly.one(self.gf), Poly.zero(self.gf)
        ua, ub = Poly.zero(self.gf), Poly.one(self.gf)
        while not b.is_zero:
            q, r = divmod(a, b)
            a, b = b, r
            sa, sb = sb, sa + q * sb
            ua, ub = ub, ua + q * ub
        g, lead = a.monic()
        if lead != 1:
            inv = self.gf.inv(lead)
            sa, ua = sa.scale(inv), ua.scale(inv)
        return g, sa, ua

    def inv_mod(self, modulus: "Poly") -> "Poly":
        g, s, _ = self.extended_gcd(modulus)
        if not g.is_one:
            raise ValueError("element not invertible modulo the given polynomial")
        return s % modulus

    # -- characteristic-2 specials -----------------------------------------

    def derivative(self) -> "Poly":
        k = self.gf.k
        r = 0
        d = self.degree
        if d is NEG_INF:
            return self
        i = 1
        while i <= d:
            c = self.coeff(i)
            if c:
                r |= c << ((i - 1) * k)
            i += 2
        return Poly(self.gf, r)

    @property
    def is_perfect_square(self) -> bool:
        d = self.degree
        if d is NEG_INF:
            return True
        i = 1
        while i <= d:
            if self.coeff(i):
                return False
            i += 2
        return True

    def sqrt(self) -> "Poly":
        """Exact square root of a perfect square (all odd coefficients zero)."""
        if not self.is_perfect_square:
            raise ValueError("polynomial is not a perfect square")
        gf = self.gf
        r = 0
        d = self.degree
        if d is NEG_INF:
            return self
        for i in range(0, d + 1, 2):
            c = self.coeff(i)
            if c:
                r |= gf.sqrt(c) << ((i // 2) * gf.k)
        return Poly(gf, r)

    def even_odd_parts(self) -> tuple["Poly", "Poly"]:
        """(e, o) with self = e(t)^2 + t*o(t)^2."""
        gf = self.gf
        e = 0
        o = 0
        d = self.degree
        if d is NEG_INF:
            z = Poly.zero(gf)
            return z, z
        for i in range(d + 1):
            c = self.coeff(i)
            if not c:
                continue
            root = gf.sqrt(c)
            if i % 2 == 0:
                e |= root << ((i // 2) * gf.k)
            else:
                o |= root << (((i - 1) // 2) * gf.k)
        return Poly(gf, e), Poly(gf, o)

    def reverse(self, width: int | None = None) -> "Poly":
        """Coefficients in reverse order; width pads as degree `width`."""
        d = self.degree
        if d is NEG_INF:
            return self
        w = d if width is None else width
        if w < d:
            raise ValueError("reverse width below degree")
        gf = self.gf
        r = 0
        for i in range(d + 1):
            c = self.coeff(i)
            if c:
                r |= c << ((w - i) * gf.k)
        return Poly(gf, r)

    def evaluate(self, x: int) -> int:
        gf = self.gf
        acc = 0
        d = self.degree
        if d is NEG_INF:
            return 0
        for i in range(d, -1, -1):
            acc = gf.mul(acc, x) ^ self.coeff(i)
        return acc

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poly) and self.gf == other.gf and self.n == other.n

    def __hash__(self):
        return hash((self.gf.k, self.gf.modulus, self.n))

    def __bool__(self):
        return self.n != 0

    def __str__(self):
        from .parsing import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"
