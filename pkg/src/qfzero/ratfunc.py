"""Rational functions over GF(2^k) and places of the rational function field.

A place is either a monic irreducible polynomial or the degree valuation
at infinity.  RatFunc keeps num/den coprime with monic denominator, so
equality is plain structural equality.
"""

from __future__ import annotations

import random

from .factor import factor, is_irreducible
from .fields import GF
from .poly import NEG_INF, Poly

POS_INF = float("inf")


class Place:
    """A closed point of the projective t-line: finite prime or infinity."""

    __slots__ = ("gf", "prime")

    def __init__(self, gf: GF, prime: Poly | None, _checked: bool = False):
        if prime is not None:
            if prime.gf != gf:
                raise ValueError("prime is over a different field")
            if not _checked:
                if not prime.is_monic:
                    raise ValueError("finite place needs a monic polynomial")
                if not is_irreducible(prime):
                    raise ValueError("finite place needs an irreducible polynomial")
        object.__setattr__(self, "gf", gf)
        object.__setattr__(self, "prime", prime)

    def __setattr__(self, name, value):
        raise AttributeError("Place is immutable")

    @classmethod
    def finite(cls, prime: Poly) -> "Place":
        return cls(prime.gf, prime)

    @classmethod
    def finite_unchecked(cls, prime: Poly) -> "Place":
        """Skip the irreducibility test; caller vouches for it."""
        return cls(prime.gf, prime, _checked=True)

    @classmethod
    def infinite(cls, gf: GF) -> "Place":
        return cls(gf, None)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def degree(self) -> int:
        return 1 if self.prime is None else self.prime.degree

    def __eq__(self, other):
        return (
            isinstance(other, Place)
            and self.gf == other.gf
            and self.prime == other.prime
        )

    def __hash__(self):
        return hash((self.gf.k, self.gf.modulus, None if self.prime is None else self.prime.n))

    def sort_key(self):
        if self.prime is None:
            return (1, 0, 0)
        return (0,) + self.prime.sort_key()

    def __str__(self):
        from .parsing import format_place

        return format_place(self)

    def __repr__(self):
        return f"Place({self})"


def _multiplicity(p: Poly, prime: Poly) -> int:
    if p.is_zero:
        raise ValueError("zero polynomial has no finite multiplicity")
    m = 0
    while True:
        q, r = divmod(p, prime)
        if not r.is_zero:
            return m
        p = q
        m += 1


class RatFunc:
    """Fraction of polynomials, always reduced, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if num.gf != den.gf:
            raise ValueError("mixed coefficient fields")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = Poly.one(num.gf)
        else:
            g = num.gcd(den)
            if not g.is_one:
                num = num // g
                den = den // g
            den, lead = den.monic()
            if lead != 1:
                num = num.scale(num.gf.inv(lead))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> "RatFunc":
        """Trusted constructor: inputs already coprime with monic den."""
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._reduced(p, Poly.one(p.gf))

    @classmethod
    def zero(cls, gf: GF) -> "RatFunc":
        return cls.from_poly(Poly.zero(gf))

    @classmethod
    def one(cls, gf: GF) -> "RatFunc":
        return cls.from_poly(Poly.one(gf))

    @classmethod
    def t(cls, gf: GF) -> "RatFunc":
        return cls.from_poly(Poly.t(gf))

    @classmethod
    def constant(cls, gf: GF, c: int) -> "RatFunc":
        return cls.from_poly(Poly.constant(gf, c))

    @property
    def gf(self) -> GF:
        return self.num.gf

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    @property
    def is_poly(self) -> bool:
        return self.den.is_one

    @property
    def is_constant(self) -> bool:
        return self.den.is_one and self.num.is_constant

    @property
    def height(self) -> int:
        """max(deg num, deg den), with 0 for the zero function."""
        dn = self.num.degree
        dd = self.den.degree
        if dn is NEG_INF:
            return 0
        return max(dn, dd)

    # -- field operations --------------------------------------------------

    def _check(self, other):
        if not isinstance(other, RatFunc):
            raise TypeError("expected a RatFunc")
        if other.gf != self.gf:
            raise ValueError("mixed coefficient fields")

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inv(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def scale(self, c: int) -> "RatFunc":
        if c == 0:
            return RatFunc.zero(self.gf)
        return RatFunc._reduced(self.num.scale(c), self.den)

    def sqr(self) -> "RatFunc":
        return RatFunc._reduced(self.num.sqr(), self.den.sqr())

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inv() ** (-e)
        r = RatFunc.one(self.gf)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b.sqr()
            e >>= 1
        return r

    # -- valuations and local data ----------------------------------------

    def valuation(self, place: Place):
        if self.is_zero:
            return POS_INF
        if place.is_infinite:
            return self.den.degree - self.num.degree
        return _multiplicity(self.num, place.prime) - _multiplicity(self.den, place.prime)

    def finite_poles(self) -> list[tuple[Poly, int]]:
        """[(monic prime, pole order)] sorted, from the denominator."""
        if self.den.is_one:
            return []
        _, parts = factor(self.den)
        return parts

    def poles(self) -> list[tuple[Place, int]]:
        out = [(Place.finite_unchecked(p), m) for p, m in self.finite_poles()]
        dd = self.den.degree
        dn = self.num.degree
        if dn is not NEG_INF and dn > dd:
            out.append((Place.infinite(self.gf), dn - dd))
        return out

    def mod_prime_power(self, prime: Poly, n: int) -> Poly:
        """Residue modulo prime^n; requires no pole at the prime."""
        modulus = prime**n
        if not self.den.gcd(prime).is_one:
            raise ValueError("pole at the requested prime")
        return self.num.mul_mod(self.den.inv_mod(modulus), modulus)

    def evaluate(self, x: int) -> int:
        dv = self.den.evaluate(x)
        if dv == 0:
            raise ZeroDivisionError("pole at the evaluation point")
        return self.gf.div(self.num.evaluate(x), dv)

    def value_at_infinity(self) -> int:
        """Value at the infinite place; requires no pole there."""
        dn = self.num.degree
        dd = self.den.degree
        if dn is NEG_INF:
            return 0
        if dn > dd:
            raise ValueError("pole at infinity")
        if dn < dd:
            return 0
        return self.gf.div(self.num.lead, self.den.lead)

    def subst_inv(self) -> "RatFunc":
        """The substitution t -> 1/t."""
        dn = self.num.degree
        dd = self.den.degree
        if dn is NEG_INF:
            return self
        num = self.num.reverse().shift(dd)
        den = self.den.reverse().shift(dn)
        return RatFunc(num, den)

    # -- squares -----------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.num.is_perfect_square and self.den.is_perfect_square

    def sqrt(self) -> "RatFunc":
        return RatFunc._reduced(self.num.sqrt(), self.den.sqrt())

    # -- protocol ----------------------------------------------------------

    @classmethod
    def random(cls, gf: GF, height: int, rng: random.Random) -> "RatFunc":
        num = Poly(gf, rng.randrange(1 << (gf.k * (height + 1))))
        if height:
            den = Poly.random(gf, rng.randrange(height + 1), rng, monic=True)
        else:
            den = Poly.one(gf)
        return cls(num, den)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.gf == other.gf
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.gf.k, self.gf.modulus, self.num.n, self.den.n))

    def __bool__(self):
        return not self.is_zero

    def sort_key(self):
        return self.num.sort_key() + self.den.sort_key()

    def __str__(self):
        from .parsing import format_ratfunc

        return format_ratfunc(self)

    def __repr__(self):
        return f"RatFunc({self})"
