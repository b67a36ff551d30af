"""Global solver for the scaled norm equation a1*(x^2 + x*y + a2*y^2) = c.

The equation is stored minimized (parameter poles of odd order) and with the
target cleared to a polynomial; candidate second coordinates y are enumerated
by increasing degree and each reduces the problem to h^2 + h = g, which
wp_solve_rational decides globally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .artin_schreier import BinaryNormForm, WpShift, minimize, wp_solve_rational
from .factor import factor
from .poly import Poly
from .ratfunc import RatFunc

_NUMERATOR_CAP = 4096
_SCAN_CAP = 8192
_LATTICE_SIZE_CAP = 512


class BudgetExhausted(Exception):
    """The degree budget ran out; not a disproof of solvability."""


@dataclass(frozen=True)
class NormEquation:
    """Minimized, denominator-cleared view of a1*(x^2+xy+a2*y^2) = c.

    The cleared equation is X^2 + X*Y + param*Y^2 = target with param =
    form.param and polynomial target; a cleared solution (X, Y) maps to the
    original one via ((X + shift.h*Y)/clear_denom, Y/clear_denom).
    """

    form: BinaryNormForm
    target: RatFunc
    shift: WpShift
    clear_denom: Poly
    original: tuple[RatFunc, RatFunc, RatFunc] = field(repr=False)

    @classmethod
    def from_coefficients(cls, a1: RatFunc, a2: RatFunc, c: RatFunc) -> "NormEquation":
        if a1.is_zero:
            raise ValueError("scale must be nonzero")
        if c.is_zero:
            raise ValueError("target must be nonzero")
        form_min, shift = minimize(BinaryNormForm(a1, a2))
        scaled = c / a1
        d = scaled.den
        target = RatFunc.from_poly(scaled.num * d)
        return cls(form_min, target, shift, d, (a1, a2, c))

    def denominator_primes(self) -> list[Poly]:
        """Primes allowed in candidate denominators: pole structure of a2 and c."""
        primes = {}
        for source in (self.form.param.den, self.clear_denom):
            if source.degree > 0:
                for p, _ in factor(source)[1]:
                    primes[p.sort_key()] = p
        return [primes[key] for key in sorted(primes)]

    def check(self, x: RatFunc, y: RatFunc) -> bool:
        a1, a2, c = self.original
        return a1 * (x.sqr() + x * y + a2 * y.sqr()) == c


def _finish(eq: NormEquation, big_x: RatFunc, big_y: RatFunc) -> tuple[RatFunc, RatFunc]:
    d = RatFunc.from_poly(eq.clear_denom)
    x = (big_x + eq.shift.h * big_y) / d
    y = big_y / d
    if not eq.check(x, y):
        raise AssertionError("binary solver produced a pair that fails the equation")
    return x, y


def _lattice_denominators(primes: list[Poly], max_degree: int) -> list[Poly]:
    """Monic products of lattice primes with degree <= max_degree."""
    if not primes:
        return []
    gf = primes[0].gf
    dens = {Poly.one(gf).sort_key(): Poly.one(gf)}
    frontier = list(dens.values())
    while frontier:
        nxt = []
        for d in frontier:
            for p in primes:
                cand = d * p
                if cand.degree > max_degree:
                    continue
                key = cand.sort_key()
                if key not in dens and len(dens) < _LATTICE_SIZE_CAP:
                    dens[key] = cand
                    nxt.append(cand)
        frontier = nxt
    out = [dens[key] for key in sorted(dens)]
    return [d for d in out if d.degree > 0]


def _denominators(eq: NormEquation, budget: int) -> list[Poly]:
    gf = eq.target.gf
    dens = {Poly.one(gf).sort_key(): Poly.one(gf)}
    for d in _lattice_denominators(eq.denominator_primes(), min(budget, 10)):
        dens[d.sort_key()] = d
    # widening stage: small arbitrary monic denominators cover solutions whose
    # poles sit at primes outside the lattice (possible at split places)
    for d in Poly.all_up_to(gf, max(0, budget // 4)):
        if d.is_monic and d.degree > 0:
            dens.setdefault(d.sort_key(), d)
    return [dens[key] for key in sorted(dens)]


def _exact_degree(gf, d: int, rng, cap: int) -> list[Poly]:
    """Polynomials of degree exactly d, shuffled; sampled when too many."""
    lo = 1 << (gf.k * d)
    hi = 1 << (gf.k * (d + 1))
    if hi - lo <= cap:
        raws = list(range(lo, hi))
        rng.shuffle(raws)
    else:
        raws = [rng.randrange(lo, hi) for _ in range(cap)]
    return [p for p in (Poly(gf, n) for n in raws) if p.degree == d]


def _scan(eq: NormEquation, rng, budget: int):
    target = eq.target
    a = eq.form.param
    gf = target.gf
    dens = _denominators(eq, budget)
    tried = 0
    for total in range(budget + 1):
        for den in dens:
            if den.degree > total:
                continue
            for num in _exact_degree(gf, total - den.degree, rng, _NUMERATOR_CAP):
                if num.is_zero:
                    continue
                if den.degree > 0 and not num.extended_gcd(den)[0].is_one:
                    continue
                y = RatFunc(num, den)
                z = wp_solve_rational(target / y.sqr() + a)
                tried += 1
                if z is not None:
                    return _finish(eq, y * z, y)
                if tried >= _SCAN_CAP:
                    return None
    return None


def solve_binary(eq: NormEquation, rng, degree_budget: int = 24):
    """Search for (x, y) with a1*(x^2+xy+a2*y^2) = c; raises BudgetExhausted on miss.

    Local solvability everywhere guarantees a global solution exists, but the
    enumeration is bounded, so a miss is an inconclusive outcome by design.
    """
    a1, _, c = eq.original
    scaled = c / a1
    if scaled.is_square:
        x = scaled.sqrt()
        y = RatFunc.zero(x.gf)
        if not eq.check(x, y):
            raise AssertionError("square-root branch failed the equation")
        return x, y
    budget = 4
    while True:
        found = _scan(eq, rng, min(budget, degree_budget))
        if found is not None:
            return found
        if budget >= degree_budget:
            raise BudgetExhausted("no solution found within degree budget")
        budget *= 2


def brute_force_binary(eq: NormEquation, d: int):
    """Exhaustive scan over cleared pairs with numerator degree <= d.

    Denominators range over the fixed lattice of products of primes from the
    pole structure of a2 and c. Returns a solution or None, the latter being a
    proof of absence within the scanned bound.
    """
    gf = eq.target.gf
    dens = [Poly.one(gf)] + _lattice_denominators(eq.denominator_primes(), d)
    per_var = 1 << (gf.k * (d + 1))
    if len(dens) * per_var * per_var > 1 << 24:
        raise ValueError("brute-force guard exceeded: shrink the degree bound")
    a = eq.form.param
    for den in dens:
        den_rf = RatFunc.from_poly(den)
        scaled_target = eq.target * den_rf.sqr()
        for nx in Poly.all_up_to(gf, d):
            for ny in Poly.all_up_to(gf, d):
                if nx.is_zero and ny.is_zero:
                    continue
                lhs = RatFunc.from_poly(nx.sqr() + nx * ny) + a * RatFunc.from_poly(ny.sqr())
                if lhs == scaled_target:
                    return _finish(eq, RatFunc(nx, den), RatFunc(ny, den))
    return None
