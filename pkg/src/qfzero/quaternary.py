"""Zero-finding for quaternary quadratic forms over GF(2^k)(t).

Pipeline: symplectic canonicalization into two scaled norm-form pairs,
coefficient normalization, a per-place analysis producing congruence data for
a value represented by both pairs, a bounded search for an irreducible tail
completing that value, and two binary norm-equation solves assembled into an
explicit nontrivial zero.  Anisotropy verdicts carry a checkable local
certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .artin_schreier import minimize_param, symbol, wp_solve_rational
from .binary_norm import (
    BudgetExhausted,
    NormEquation,
    _lattice_denominators,
    solve_binary,
)
from .factor import crt, factor, is_irreducible, is_squarefree
from .localsolve import (
    Congruence,
    ValuationParity,
    common_value_inf,
    common_value_odd,
    common_value_pole,
    norm_form_represents,
)
from .poly import Poly
from .ratfunc import Place, RatFunc

_SMALL_SCAN_PER_DEGREE = 256
_SMALL_SCAN_EXTRA_DEGREES = 12
_ASSEMBLY_ATTEMPTS = 8


class EarlyZero(Exception):
    """A zero of the form surfaced before the full pipeline ran."""

    def __init__(self, vector):
        super().__init__("early zero found")
        self.vector = tuple(vector)


class DegenerateForm(Exception):
    """The polar bilinear form has a radical; carries a basis of it."""

    def __init__(self, radical_basis):
        super().__init__("polar form is degenerate")
        self.radical_basis = tuple(tuple(v) for v in radical_basis)

    @property
    def radical(self):
        return self.radical_basis[0]


# -- vectors and matrices over RatFunc --------------------------------------


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vec_scale(v, s: RatFunc):
    return tuple(s * a for a in v)


def _vec_is_zero(v):
    return all(a.is_zero for a in v)


def _identity(gf):
    one = RatFunc.one(gf)
    zero = RatFunc.zero(gf)
    return tuple(
        tuple(one if i == j else zero for j in range(4)) for i in range(4)
    )


def _columns_to_matrix(cols):
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def mat_vec(m, v):
    gf = v[0].gf
    out = []
    for i in range(4):
        acc = RatFunc.zero(gf)
        for j in range(4):
            acc = acc + m[i][j] * v[j]
        out.append(acc)
    return tuple(out)


def mat_mul(a, b):
    gf = a[0][0].gf
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            acc = RatFunc.zero(gf)
            for x in range(4):
                acc = acc + a[i][x] * b[x][j]
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


# -- the form itself ---------------------------------------------------------


@dataclass
class QuaternaryForm:
    """Q(x) = sum over i <= j of gram[i][j] * x_i * x_j."""

    gram: tuple
    canonical: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.gram)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("gram must be 4x4")
        object.__setattr__(self, "gram", rows)

    @classmethod
    def from_matrix(cls, rows) -> "QuaternaryForm":
        """Fold an arbitrary coefficient matrix into upper-triangular shape."""
        rows = [list(r) for r in rows]
        gf = rows[0][0].gf
        zero = RatFunc.zero(gf)
        gram = [[zero] * 4 for _ in range(4)]
        for i in range(4):
            gram[i][i] = rows[i][i]
            for j in range(i + 1, 4):
                gram[i][j] = rows[i][j] + rows[j][i]
        return cls(tuple(tuple(r) for r in gram))

    @classmethod
    def from_pair_coefficients(
        cls, a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc
    ) -> "QuaternaryForm":
        """a1*(x1^2 + x1*x2 + a2*x2^2) + a3*(x3^2 + x3*x4 + a4*x4^2)."""
        gf = a1.gf
        zero = RatFunc.zero(gf)
        gram = [
            [a1, a1, zero, zero],
            [zero, a1 * a2, zero, zero],
            [zero, zero, a3, a3],
            [zero, zero, zero, a3 * a4],
        ]
        return cls(tuple(tuple(r) for r in gram))

    @property
    def gf(self):
        return self.gram[0][0].gf

    def evaluate(self, v) -> RatFunc:
        acc = RatFunc.zero(self.gf)
        for i in range(4):
            for j in range(i, 4):
                g = self.gram[i][j]
                if not g.is_zero:
                    acc = acc + g * v[i] * v[j]
        return acc

    def polar(self, u, w) -> RatFunc:
        """b(u, w) = Q(u+w) + Q(u) + Q(w); alternating in characteristic 2."""
        acc = RatFunc.zero(self.gf)
        for i in range(4):
            for j in range(i + 1, 4):
                g = self.gram[i][j]
                if not g.is_zero:
                    acc = acc + g * (u[i] * w[j] + u[j] * w[i])
        return acc

    def polar_matrix(self):
        zero = RatFunc.zero(self.gf)
        rows = [[zero] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i + 1, 4):
                rows[i][j] = self.gram[i][j]
                rows[j][i] = self.gram[i][j]
        return tuple(tuple(r) for r in rows)


def _kernel(rows, gf):
    mat = [list(r) for r in rows]
    n = len(mat)
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if not mat[i][c].is_zero), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = RatFunc.one(gf) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(n):
            if i != r and not mat[i][c].is_zero:
                f = mat[i][c]
                mat[i] = [a + f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(n) if c not in pivots):
        v = [RatFunc.zero(gf)] * n
        v[fc] = RatFunc.one(gf)
        for pi, pc in enumerate(pivots):
            v[pc] = mat[pi][fc]
        basis.append(tuple(v))
    return basis


# -- canonicalization --------------------------------------------------------


def canonicalize(form: QuaternaryForm):
    """Reduce to paired shape a1*(x1^2+x1x2+a2*x2^2) + a3*(x3^2+x3x4+a4*x4^2).

    Returns (a1, a2, a3, a4, transform) with Q(transform * v) equal to the
    paired form at v, as an identity.  Raises EarlyZero when a zero vector of
    Q shows up during the reduction and DegenerateForm when the polar form
    has a radical.
    """
    if form.canonical is not None:
        return form.canonical
    gf = form.gf
    radical = _kernel(form.polar_matrix(), gf)
    if radical:
        raise DegenerateForm(radical)
    one = RatFunc.one(gf)
    zero = RatFunc.zero(gf)
    basis = [
        tuple(one if i == j else zero for j in range(4)) for i in range(4)
    ]
    remaining = basis
    pairs = []
    for _ in range(2):
        for v in remaining:
            if form.evaluate(v).is_zero:
                raise EarlyZero(v)
        v1 = remaining[0]
        partner = None
        for w in remaining[1:]:
            beta = form.polar(v1, w)
            if not beta.is_zero:
                partner = w
                break
        if partner is None:
            raise AssertionError("regular form lost polar rank during reduction")
        v2 = _vec_scale(partner, one / beta)
        if form.evaluate(v2).is_zero:
            raise EarlyZero(v2)
        pairs.append((v1, v2))
        remaining = [
            _vec_add(
                w,
                _vec_add(
                    _vec_scale(v1, form.polar(w, v2)),
                    _vec_scale(v2, form.polar(w, v1)),
                ),
            )
            for w in remaining
            if w is not v1 and w is not partner
        ]
    (v1, v2), (v3, v4) = pairs
    a1 = form.evaluate(v1)
    a2 = a1 * form.evaluate(v2)
    a3 = form.evaluate(v3)
    a4 = a3 * form.evaluate(v4)
    transform = _columns_to_matrix(
        [v1, _vec_scale(v2, a1), v3, _vec_scale(v4, a3)]
    )
    _assert_similar(form, QuaternaryForm.from_pair_coefficients(a1, a2, a3, a4),
                    transform, RatFunc.one(gf))
    form.canonical = (a1, a2, a3, a4, transform)
    return form.canonical


def _assert_similar(original, reduced, transform, scale):
    """Q_original(T v) = scale * Q_reduced(v) checked on a determining set."""
    gf = original.gf
    one = RatFunc.one(gf)
    zero = RatFunc.zero(gf)
    probes = [tuple(one if i == j else zero for j in range(4)) for i in range(4)]
    probes += [
        _vec_add(probes[i], probes[j]) for i in range(4) for j in range(i + 1, 4)
    ]
    for v in probes:
        lhs = original.evaluate(mat_vec(transform, v))
        rhs = scale * reduced.evaluate(v)
        if lhs != rhs:
            raise AssertionError("transform bookkeeping broke the similarity")


# -- coefficient normalization ----------------------------------------------


def _square_free_scale(a: RatFunc):
    """(s, p) with a * s^2 = p, p monic square-free (possibly 1)."""
    gf = a.gf
    n, d = a.num, a.den
    w = Poly.one(gf)
    rad = Poly.one(gf)
    lead, factors = factor(n * d)
    for p, e in factors:
        w = w * p ** (e // 2)
        if e % 2:
            rad = rad * p
    lam = gf.sqrt(lead)
    s = RatFunc(d, w * Poly.constant(gf, lam))
    return s, rad


def normalize_coefficients(a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc):
    """Rescale so the outer coefficients are coprime square-free monic
    polynomials and the inner parameters are minimal.

    Returns (a1', a2', a3', a4', transform, scale) with the original paired
    form satisfying Q(transform * v) = scale * Q'(v).
    """
    if a1.is_zero or a3.is_zero:
        raise ValueError("outer coefficients must be nonzero")
    gf = a1.gf
    s1, p1 = _square_free_scale(a1)
    s3, p3 = _square_free_scale(a3)
    g = p1.gcd(p3)
    m1 = (p1 // g) if not g.is_one else p1
    m3 = (p3 // g) if not g.is_one else p3
    a2m, h2 = minimize_param(a2)
    a4m, h4 = minimize_param(a4)
    zero = RatFunc.zero(gf)
    transform = _columns_to_matrix(
        [
            (s1, zero, zero, zero),
            (s1 * h2, s1, zero, zero),
            (zero, zero, s3, zero),
            (zero, zero, s3 * h4, s3),
        ]
    )
    scale = RatFunc.from_poly(g)
    original = QuaternaryForm.from_pair_coefficients(a1, a2, a3, a4)
    reduced = QuaternaryForm.from_pair_coefficients(
        RatFunc.from_poly(m1), a2m, RatFunc.from_poly(m3), a4m
    )
    _assert_similar(original, reduced, transform, scale)
    return m1, a2m, m3, a4m, transform, scale


# -- anisotropy certificates -------------------------------------------------


@dataclass(frozen=True)
class AnisotropyCertificate:
    """Local obstruction: no value is represented by both pairs at the place.

    kind is one of "odd-place-symbols" (both inner symbols are 1 at a place
    of odd outer valuation), "pole-classes" (no common residue class at a
    pole of an inner parameter), or "infinite" (the same, transported to the
    infinite place).  params is the normalized coefficient tuple the
    obstruction refers to.
    """

    place: Place
    kind: str
    params: tuple
    symbols: tuple | None = None

    def verify(self) -> bool:
        a1, a2, a3, a4 = self.params
        if self.kind == "odd-place-symbols":
            return (
                symbol(a2, self.place) == 1
                and symbol(a4, self.place) == 1
                and int((a1 * a3).valuation(self.place)) % 2 == 1
            )
        probe = random.Random(0)
        if self.kind == "pole-classes":
            return common_value_pole(a1, a2, a3, a4, self.place, probe) is None
        if self.kind == "infinite":
            return common_value_inf(a1, a2, a3, a4, probe) is None
        return False


# -- common value over the function field ------------------------------------


@dataclass(frozen=True)
class CommonValue:
    """c = lead * f_1 ... f_m * h represented by both pairs at every place."""

    forced_places: tuple
    tail: Poly
    value: Poly
    conditions: tuple = ()


@dataclass(frozen=True)
class IrreducibleSearchSpec:
    """Search space for an irreducible in a residue class with constraints.

    residue/modulus fix h mod modulus; parity (when set) fixes deg(h) mod 2;
    top_residue (when top_exponent > 0) fixes the reversed coefficient
    sequence of h mod t^top_exponent, i.e. the leading coefficients; degree
    overrides the computed search degree.
    """

    residue: Poly
    modulus: Poly
    parity: int | None = None
    top_residue: Poly | None = None
    top_exponent: int = 0
    degree: int | None = None

    def __post_init__(self):
        if self.modulus.is_zero:
            raise ValueError("modulus must be nonzero")
        if not self.modulus.is_constant:
            if not self.residue.gcd(self.modulus).is_one:
                raise ValueError("residue class is not invertible mod the modulus")
        if self.top_exponent > 0:
            if self.top_residue is None:
                raise ValueError("top_exponent without a top residue")
            if self.top_residue.coeff(0) != 1:
                raise ValueError("top residue must start with 1 (monic targets)")

    @property
    def gf(self):
        return self.modulus.gf

    def modulus_degree(self) -> int:
        return self.modulus.degree if not self.modulus.is_constant else 0

    def unit_count(self) -> int:
        """Number of invertible residue classes modulo the modulus."""
        if self.modulus.is_constant:
            return 1
        q = 1 << self.gf.k
        count = 1
        for p, e in factor(self.modulus)[1]:
            d = p.degree
            count *= q ** (d * e) - q ** (d * (e - 1))
        return count

    def search_degree(self) -> int:
        """Smallest degree at which the class provably contains irreducibles.

        Uses the effective-modulus form of the irreducible-count bound:
        q^(N/2) must exceed Phi * (D+1) where D adds the leading-coefficient
        window to the modulus degree.
        """
        if self.degree is not None:
            if self.parity is not None and self.degree % 2 != self.parity:
                raise ValueError("degree parity constraint unsatisfiable")
            return self.degree
        q = 1 << self.gf.k
        d_eff = self.modulus_degree() + self.top_exponent
        bound = self.unit_count() * (q ** self.top_exponent) * (d_eff + 1)
        n = 1
        while q ** n <= bound * bound:
            n += 1
        n = max(n, d_eff + 1, 2)
        if self.parity is not None and n % 2 != self.parity:
            n += 1
        return n

    def _top_window(self, d_u: int) -> Poly | None:
        """Reversed-u window forced by the top residue, or None."""
        if self.top_exponent <= 0:
            return None
        t_pow = Poly.t(self.gf) ** self.top_exponent
        rev_m = self.modulus.reverse()
        window = self.top_residue.mul_mod(rev_m.inv_mod(t_pow), t_pow)
        if window.coeff(0) != 1:
            raise AssertionError("top window lost monic consistency")
        return window

    def assemble(self, d_u: int, free_raw: int) -> Poly:
        """Member of the class with u of degree d_u built from free bits."""
        gf = self.gf
        window = self._top_window(d_u)
        if window is None:
            free_width = gf.k * d_u
            u_raw = (1 << free_width) | (free_raw & ((1 << free_width) - 1))
            u = Poly(gf, u_raw) if d_u > 0 else Poly.one(gf)
        else:
            if d_u < self.top_exponent:
                raise ValueError("degree too small for the leading window")
            top = Poly.zero(gf)
            for j in range(self.top_exponent):
                cj = window.coeff(j)
                if cj:
                    top = top + Poly.monomial(gf, cj, d_u - j)
            free_count = d_u - self.top_exponent + 1
            free_width = gf.k * free_count
            u = top + Poly(gf, free_raw & ((1 << free_width) - 1))
        if self.modulus.is_constant:
            h = u
        else:
            h = (self.residue % self.modulus) + self.modulus * u
        return h

    def free_width(self, d_u: int) -> int:
        if self.top_exponent > 0:
            return self.gf.k * (d_u - self.top_exponent + 1)
        return self.gf.k * d_u

    def admits(self, h: Poly) -> bool:
        """Does h meet the congruence, parity and leading-window constraints?"""
        if h.is_zero or not h.is_monic:
            return False
        if not self.modulus.is_constant and not ((h + self.residue) % self.modulus).is_zero:
            return False
        if self.parity is not None and h.degree % 2 != self.parity:
            return False
        if self.top_exponent > 0:
            t_pow = Poly.t(self.gf) ** self.top_exponent
            if h.reverse() % t_pow != self.top_residue % t_pow:
                return False
        return True

    def count_admissible(self, degree: int) -> int:
        """Exhaustive count of admissible irreducibles of the given degree.

        Desk-scale helper for audits; cost grows as q^(degree - deg modulus).
        """
        d_u = degree - self.modulus_degree()
        if d_u < max(self.top_exponent, 0):
            return 0
        if self.parity is not None and degree % 2 != self.parity:
            return 0
        width = max(self.free_width(d_u), 0)
        total = 0
        for raw in range(1 << width):
            h = self.assemble(d_u, raw)
            if h.degree == degree and self.admits(h) and is_irreducible(h):
                total += 1
        return total


def find_irreducible_in_class(spec: IrreducibleSearchSpec, rng) -> Poly:
    """Random irreducible meeting the spec, growing the degree on exhaustion."""
    n = spec.search_degree()
    deg_m = spec.modulus_degree()
    rounds = 0
    while True:
        d_u = n - deg_m
        if d_u >= max(spec.top_exponent, 0) and (
            spec.parity is None or n % 2 == spec.parity
        ):
            width = max(spec.free_width(d_u), 0)
            budget = 64 * n * max(1, deg_m + spec.top_exponent)
            for _ in range(budget):
                h = spec.assemble(d_u, rng.getrandbits(width) if width else 0)
                if h.degree == n and is_irreducible(h):
                    if not spec.admits(h):
                        raise AssertionError("assembled candidate broke the spec")
                    return h
        n += 2 if spec.parity is not None else 1
        rounds += 1
        if rounds > 64:
            raise RuntimeError("irreducible search failed far beyond its bound")


def _small_class_scan(spec: IrreducibleSearchSpec, reject) -> Poly | None:
    """Deterministic low-degree sweep of the class before the sized search.

    Keeps deg(c) small, which dominates the cost of the later norm-equation
    solves; the sized randomized search remains the completeness backstop.
    """
    deg_m = spec.modulus_degree()
    start = max(spec.top_exponent, 0 if deg_m > 0 else 1)
    for d_u in range(start, start + _SMALL_SCAN_EXTRA_DEGREES + 1):
        n = deg_m + d_u
        if spec.parity is not None and n % 2 != spec.parity:
            continue
        width = max(spec.free_width(d_u), 0)
        total = 1 << width
        for raw in range(min(total, _SMALL_SCAN_PER_DEGREE)):
            h = spec.assemble(d_u, raw)
            if h.degree != n or reject(h):
                continue
            if is_irreducible(h) and spec.admits(h):
                return h
    return None


def _odd_place_symbols(a2, a4, place):
    return symbol(a2, place), symbol(a4, place)


def _common_value_or_certificate(a1, a2, a3, a4, rng):
    """Either a CommonValue or the AnisotropyCertificate blocking it."""
    gf = a1.gf
    params = (a1, a2, a3, a4)
    _check_normalized(a1, a2, a3, a4)
    pole_primes = {}
    for source in (a2, a4):
        for p, _ in source.finite_poles():
            pole_primes[p.sort_key()] = p
    outer = a1.num * a3.num
    odd_primes = {}
    for p, _ in factor(outer)[1]:
        # outer coefficients are square-free and coprime: every prime factor
        # carries odd valuation
        if p.sort_key() not in pole_primes:
            odd_primes[p.sort_key()] = p
    conditions = []
    forced = []
    avoid = []
    for key in sorted(pole_primes):
        prime = pole_primes[key]
        place = Place.finite_unchecked(prime)
        local = common_value_pole(a1, a2, a3, a4, place, rng)
        if local is None:
            return AnisotropyCertificate(place, "pole-classes", params)
        residue, exponent = local
        conditions.append(Congruence(place, residue, exponent))
        if RatFunc.from_poly(residue).valuation(place) == 1:
            forced.append(prime)
    for key in sorted(odd_primes):
        prime = odd_primes[key]
        place = Place.finite_unchecked(prime)
        nu = common_value_odd(a1, a2, a3, a4, place)
        if nu is None:
            return AnisotropyCertificate(
                place, "odd-place-symbols", params,
                symbols=_odd_place_symbols(a2, a4, place),
            )
        conditions.append(ValuationParity(place, nu))
        if nu == 1:
            forced.append(prime)
        else:
            avoid.append(prime)
    inf_condition = common_value_inf(a1, a2, a3, a4, rng)
    if inf_condition is None:
        return AnisotropyCertificate(Place.infinite(gf), "infinite", params)
    conditions.append(inf_condition)
    return _build_common_value(
        a1, a3, conditions, forced, avoid, inf_condition, rng
    )


def _check_normalized(a1, a2, a3, a4):
    if not (a1.is_poly and a3.is_poly):
        raise ValueError("outer coefficients must be polynomials")
    if a1.is_zero or a3.is_zero:
        raise ValueError("outer coefficients must be nonzero")
    if not a1.num.gcd(a3.num).is_one:
        raise ValueError("outer coefficients must be coprime")
    for outer in (a1.num, a3.num):
        if not outer.is_constant and not is_squarefree(outer):
            raise ValueError("outer coefficients must be square-free")
    for inner in (a2, a4):
        for _, mult in inner.finite_poles():
            if mult % 2 == 0:
                raise ValueError("inner parameters must have odd-order poles")


def _build_common_value(a1, a3, conditions, forced, avoid, inf_condition, rng):
    gf = a1.gf
    t = Poly.t(gf)
    product = Poly.one(gf)
    for prime in forced:
        product = product * prime
    # leading-coefficient window transported from the infinite place
    lam = 1
    top_residue = None
    top_exponent = 0
    if inf_condition.exponent > 0:
        residue = inf_condition.residue
        shift = 1 if residue.coeff(0) == 0 else 0
        unit = residue // t if shift else residue
        if unit.coeff(0) == 0:
            raise AssertionError("infinite residue has valuation above one")
        top_exponent = inf_condition.exponent - shift
        if top_exponent > 0:
            lam = unit.coeff(0)
            t_pow = t**top_exponent
            rev_p = product.reverse() % t_pow
            scaled = rev_p * Poly.constant(gf, lam)
            top_residue = unit.mul_mod(scaled.inv_mod(t_pow), t_pow)
    # finite congruence targets for the tail h, with c = lam * product * h
    residues = []
    moduli = []
    forced_keys = {p.sort_key() for p in forced}
    for cond in conditions:
        if not isinstance(cond, Congruence):
            continue
        prime = cond.place.prime
        if prime.sort_key() in forced_keys:
            cofactor = Poly.one(gf)
            for other in forced:
                if other.sort_key() != prime.sort_key():
                    cofactor = cofactor * other
            mod = prime ** (cond.exponent - 1)
            target_residue = cond.residue // prime
        else:
            cofactor = product
            mod = prime**cond.exponent
            target_residue = cond.residue
        scaled = (cofactor * Poly.constant(gf, lam)) % mod
        residues.append(target_residue.mul_mod(scaled.inv_mod(mod), mod))
        moduli.append(mod)
    if moduli:
        combined = crt(residues, moduli)
        modulus = Poly.one(gf)
        for m in moduli:
            modulus = modulus * m
    else:
        combined = Poly.zero(gf)
        modulus = Poly.one(gf)
    if not modulus.is_constant and not combined.gcd(modulus).is_one:
        raise AssertionError(
            "tail congruence class collapsed onto a condition place"
        )
    parity = None
    if inf_condition.degree_parity is not None:
        parity = (inf_condition.degree_parity + product.degree) % 2
    spec = IrreducibleSearchSpec(
        residue=combined,
        modulus=modulus,
        parity=parity,
        top_residue=top_residue,
        top_exponent=top_exponent,
    )
    # forced, avoided and congruence places already cover every prime of the
    # outer product and every inner pole; the tail must dodge them all
    excluded = set(forced_keys)
    for prime in avoid:
        excluded.add(prime.sort_key())
    for cond in conditions:
        if isinstance(cond, Congruence):
            excluded.add(cond.place.prime.sort_key())

    def reject(h):
        return h.sort_key() in excluded

    tail = _small_class_scan(spec, reject)
    if tail is None:
        for _ in range(64):
            h = find_irreducible_in_class(spec, rng)
            if not reject(h):
                tail = h
                break
        else:
            raise RuntimeError("tail sampling kept colliding with condition places")
    value = product * tail * Poly.constant(gf, lam)
    for cond in conditions:
        if not cond.satisfied_by(value):
            raise AssertionError("constructed value violates an emitted condition")
    return CommonValue(
        forced_places=tuple(sorted(forced, key=lambda p: p.sort_key())),
        tail=tail,
        value=value,
        conditions=tuple(conditions),
    )


def find_common_value(a1, a2, a3, a4, rng):
    """CommonValue represented by both pairs at every place, or None."""
    result = _common_value_or_certificate(a1, a2, a3, a4, rng)
    if isinstance(result, AnisotropyCertificate):
        return None
    return result


# -- the full solver ---------------------------------------------------------


@dataclass(frozen=True)
class SolveReport:
    verdict: str
    vector: tuple | None = None
    certificate: AnisotropyCertificate | None = None
    common_value: CommonValue | None = None


def _checked_zero(form: QuaternaryForm, vector) -> SolveReport:
    vector = tuple(vector)
    if _vec_is_zero(vector):
        raise AssertionError("zero vector offered as a zero of the form")
    if not form.evaluate(vector).is_zero:
        raise AssertionError("candidate zero fails the original form")
    return SolveReport("zero", vector=vector)


def _even_odd(x: RatFunc):
    """(A, B) with x = A^2 + t*B^2; the coordinates of x over squares."""
    w = x.num * x.den
    e, o = w.even_odd_parts()
    d = RatFunc.from_poly(x.den)
    return RatFunc.from_poly(e) / d, RatFunc.from_poly(o) / d


def _degenerate_zero(form: QuaternaryForm, radical_basis):
    """Explicit zero of a form with nontrivial radical (always exists here).

    On the radical Q is additive and Frobenius-semilinear, so zeros come from
    square ratios of radical values; otherwise two independent radical values
    span the field over its squares and any vector outside the radical can be
    corrected into a zero coordinate-by-coordinate.
    """
    gf = form.gf
    one = RatFunc.one(gf)
    zero = RatFunc.zero(gf)
    basis = [tuple(one if i == j else zero for j in range(4)) for i in range(4)]
    for v in list(radical_basis) + basis:
        if form.evaluate(v).is_zero:
            return v
    rad = list(radical_basis)
    if len(rad) not in (2, 4):
        raise AssertionError("alternating polar form with odd corank")
    values = [form.evaluate(r) for r in rad]
    for i in range(len(rad)):
        for j in range(i + 1, len(rad)):
            ratio = values[i] / values[j]
            if ratio.is_square:
                return _vec_add(rad[i], _vec_scale(rad[j], ratio.sqrt()))
    # independent radical values: express a target value over the square-field
    # basis (values[0], values[1]) by 2x2 linear algebra in the even/odd parts
    if len(rad) == 4:
        target = values[2]
        correction = rad[2]
    else:
        outside = next(
            b for b in basis
            if any(not form.polar(b, r).is_zero for r in basis)
        )
        target = form.evaluate(outside)
        correction = outside
    a1c, b1c = _even_odd(values[0])
    a2c, b2c = _even_odd(values[1])
    cc, dc = _even_odd(target)
    det = a1c * b2c + a2c * b1c
    if det.is_zero:
        raise AssertionError("independent radical values with zero resolvent")
    s1 = (cc * b2c + dc * a2c) / det
    s2 = (a1c * dc + b1c * cc) / det
    candidate = _vec_add(
        correction,
        _vec_add(_vec_scale(rad[0], s1), _vec_scale(rad[1], s2)),
    )
    return candidate


def _represented_everywhere(outer: RatFunc, inner: RatFunc, value: RatFunc) -> bool:
    """Whether outer*(x^2+xy+inner*y^2) represents value in every completion.

    Only finitely many places can obstruct: poles of the inner parameter,
    primes of the outer coefficient and of the value, and infinity.  By the
    product formula for the norm form, local representability everywhere
    implies a global solution exists.
    """
    w = value / outer
    seen = set()
    places = []
    sources = [inner.den, outer.num, outer.den, value.num, value.den]
    for source in sources:
        if source.degree <= 0:
            continue
        for p, _ in factor(source)[1]:
            key = p.sort_key()
            if key not in seen:
                seen.add(key)
                places.append(Place.finite(p))
    places.append(Place.infinite(outer.gf))
    return all(norm_form_represents(inner, w, place) for place in places)


def _direct_search_polynomial(form: QuaternaryForm, max_deg: int):
    """Exhaustive zero search over polynomial coordinates of degree <= max_deg.

    Homogeneity means any rational zero clears to a polynomial one, so this
    misses nothing below the degree bound.  Runs on the original gram with
    denominators cleared; packed-bitmask arithmetic keeps the full degree-4
    sweep under a second.  Only wired for prime-field coefficients.
    """
    gf = form.gf
    if gf.k != 1:
        return None
    lcm = Poly.one(gf)
    for row in form.gram:
        for entry in row:
            if entry.den.degree > 0:
                g = lcm.gcd(entry.den)
                lcm = lcm * (entry.den // g)
    cleared = [
        [(entry * RatFunc.from_poly(lcm)) for entry in row] for row in form.gram
    ]
    g = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if not cleared[i][j].is_poly:
                raise AssertionError("denominator clearing left a fraction")
            g[i][j] = cleared[i][j].num.n

    def cm(a, b):
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            a <<= 1
            b >>= 1
        return acc

    width = 1 << (max_deg + 1)
    sq = [cm(x, x) for x in range(width)]
    t11 = [cm(g[0][0], s) for s in sq]
    t22 = [cm(g[1][1], s) for s in sq]
    cross = [[cm(g[0][1], cm(a, b)) for b in range(width)] for a in range(width)]
    for v3 in range(width):
        part3 = cm(g[2][2], sq[v3])
        for v4 in range(width):
            const = part3 ^ cm(g[2][3], cm(v3, v4)) ^ cm(g[3][3], sq[v4])
            lin1 = cm(g[0][2], v3) ^ cm(g[0][3], v4)
            lin2 = cm(g[1][2], v3) ^ cm(g[1][3], v4)
            row1 = [cm(v1, lin1) for v1 in range(width)]
            row2 = [cm(v2, lin2) for v2 in range(width)]
            for v1 in range(width):
                base = t11[v1] ^ row1[v1] ^ const
                crow = cross[v1]
                for v2 in range(width):
                    if base ^ crow[v2] ^ t22[v2] ^ row2[v2]:
                        continue
                    if v1 or v2 or v3 or v4:
                        vec = tuple(
                            RatFunc.from_poly(Poly(gf, n))
                            for n in (v1, v2, v3, v4)
                        )
                        if form.evaluate(vec).is_zero:
                            return vec
    return None


def _paired_direct_search(b1r, b2, b3r, b4, numerator_degree):
    """Deterministic meet-in-the-middle zero search in paired coordinates.

    The paired shape has no cross terms between the halves, so (v1..v4) is a
    zero exactly when the two half values coincide (characteristic 2).  Hash
    one half's values over small rational pairs, probe with the other half.
    Catches the low-height zeros that the common-value construction can only
    reach through oversized binary solves.
    """
    gf = b1r.gf

    def lattice(inner):
        primes = []
        if inner.den.degree > 0:
            primes = [p for p, _ in factor(inner.den)[1]]
        dens = [Poly.one(gf)] + _lattice_denominators(primes, 6)
        return dens[:12]

    def pairs(outer, inner):
        for den in lattice(inner):
            d = RatFunc.from_poly(den)
            for n1 in Poly.all_up_to(gf, numerator_degree):
                x = RatFunc.from_poly(n1) / d
                base = outer * x.sqr()
                for n2 in Poly.all_up_to(gf, numerator_degree):
                    if n1.is_zero and n2.is_zero:
                        continue
                    y = RatFunc.from_poly(n2) / d
                    yield x, y, base + outer * (x * y + inner * y.sqr())

    seen = {}
    for x, y, value in pairs(b1r, b2):
        if value.is_zero:
            return (x, y, RatFunc.zero(gf), RatFunc.zero(gf))
        seen.setdefault(value, (x, y))
    for x, y, value in pairs(b3r, b4):
        if value.is_zero:
            return (RatFunc.zero(gf), RatFunc.zero(gf), x, y)
        match = seen.get(value)
        if match is not None:
            return (match[0], match[1], x, y)
    return None


def _small_common_value_zero(b1r, b2, b3r, b4, rng, degree_budget):
    """Fallback assembly: rejection-sample low-degree jointly represented values.

    The principal construction sizes its value by the congruence modulus, which
    can push the binary solutions past the enumeration budget.  Representable
    values of much lower degree usually exist; they just cannot be written
    down from one congruence class.  Sampling candidates and testing local
    representability by both halves directly at every critical place finds
    them, and the resulting binary solves stay small.
    """
    gf = b1r.gf

    def weight(outer, inner):
        return outer.num.degree + outer.den.degree + inner.den.degree

    first_is_harder = weight(b1r, b2) >= weight(b3r, b4)
    for degree in range(2, 16):
        for _ in range(48):
            c = RatFunc.from_poly(Poly.random(gf, degree, rng, monic=True))
            if not _represented_everywhere(b1r, b2, c):
                continue
            if not _represented_everywhere(b3r, b4, c):
                continue
            budget = min(degree_budget, c.height + 6)
            try:
                if first_is_harder:
                    x1, x2 = solve_binary(
                        NormEquation.from_coefficients(b1r, b2, c), rng, budget
                    )
                    x3, x4 = solve_binary(
                        NormEquation.from_coefficients(b3r, b4, c), rng, budget
                    )
                else:
                    x3, x4 = solve_binary(
                        NormEquation.from_coefficients(b3r, b4, c), rng, budget
                    )
                    x1, x2 = solve_binary(
                        NormEquation.from_coefficients(b1r, b2, c), rng, budget
                    )
            except BudgetExhausted:
                continue
            return (x1, x2, x3, x4)
    return None


def _witness_sampling_zero(b1r, b2, b3r, b4, rng, degree_budget):
    """Fallback assembly: plant a witness on one half and solve the other.

    A random pair (x, y) gives a value c represented by the sampled half by
    construction; if c passes the other half's local tests at its finitely
    many critical places, one binary solve finishes the zero.  Useful when
    the joint common-value route produces targets whose binary solutions sit
    beyond the enumeration budget on one side.
    """
    gf = b1r.gf
    halves = ((b3r, b4, b1r, b2, False), (b1r, b2, b3r, b4, True))
    for sampled_out, sampled_in, other_out, other_in, sampled_first in halves:
        for round_no in range(48):
            d = 1 + round_no % 4
            x = RatFunc.from_poly(Poly.random(gf, d, rng))
            y = RatFunc.from_poly(Poly.random(gf, d, rng))
            if x.is_zero and y.is_zero:
                continue
            c = sampled_out * (x.sqr() + x * y + sampled_in * y.sqr())
            if c.is_zero:
                pair = (x, y)
                other = (RatFunc.zero(gf), RatFunc.zero(gf))
                return pair + other if sampled_first else other + pair
            if not _represented_everywhere(other_out, other_in, c):
                continue
            try:
                u, v = solve_binary(
                    NormEquation.from_coefficients(other_out, other_in, c),
                    rng,
                    max(degree_budget, c.height + 2),
                )
            except BudgetExhausted:
                continue
            if sampled_first:
                return (x, y, u, v)
            return (u, v, x, y)
    return None


def solve_quaternary_report(
    form: QuaternaryForm, rng, degree_budget: int = 24
) -> SolveReport:
    """Full pipeline with the evidence attached to the verdict."""
    gf = form.gf
    try:
        a1, a2, a3, a4, t_canon = canonicalize(form)
    except EarlyZero as early:
        return _checked_zero(form, early.vector)
    except DegenerateForm as degen:
        return _checked_zero(form, _degenerate_zero(form, degen.radical_basis))
    b1, b2, b3, b4, t_norm, _scale = normalize_coefficients(a1, a2, a3, a4)
    pullback = mat_mul(t_canon, t_norm)
    b1r = RatFunc.from_poly(b1)
    b3r = RatFunc.from_poly(b3)
    root2 = wp_solve_rational(b2)
    if root2 is not None:
        vec = mat_vec(pullback, (root2, RatFunc.one(gf), RatFunc.zero(gf), RatFunc.zero(gf)))
        return _checked_zero(form, vec)
    root4 = wp_solve_rational(b4)
    if root4 is not None:
        vec = mat_vec(pullback, (RatFunc.zero(gf), RatFunc.zero(gf), root4, RatFunc.one(gf)))
        return _checked_zero(form, vec)
    if b1 == b3 and b2 == b4:
        vec = mat_vec(pullback, (RatFunc.one(gf), RatFunc.zero(gf), RatFunc.one(gf), RatFunc.zero(gf)))
        return _checked_zero(form, vec)
    # cheap complete sweep at tiny degree before the heavy machinery, the
    # same way factoring code trial-divides first
    vec = _direct_search_polynomial(form, 3)
    if vec is not None:
        return _checked_zero(form, vec)
    last_exhaustion = None
    misses = 0
    for _ in range(_ASSEMBLY_ATTEMPTS):
        outcome = _common_value_or_certificate(b1r, b2, b3r, b4, rng)
        if isinstance(outcome, AnisotropyCertificate):
            return SolveReport("anisotropic", certificate=outcome)
        c = RatFunc.from_poly(outcome.value)
        budget = max(degree_budget, outcome.value.degree + 2)
        try:
            x1, x2 = solve_binary(
                NormEquation.from_coefficients(b1r, b2, c), rng, budget
            )
            x3, x4 = solve_binary(
                NormEquation.from_coefficients(b3r, b4, c), rng, budget
            )
        except BudgetExhausted as miss:
            last_exhaustion = miss
            misses += 1
            # an unlucky principal value happens; repeated misses say the
            # construction is sizing c past the binary solver's reach, so
            # fall back to direct searches, then to sampled small values
            if misses == 1:
                vec = _direct_search_polynomial(form, 4)
                if vec is not None:
                    return _checked_zero(form, vec)
                planted = _paired_direct_search(b1r, b2, b3r, b4, 3)
                if planted is not None:
                    return _checked_zero(form, mat_vec(pullback, planted))
            elif misses == 2:
                planted = _small_common_value_zero(
                    b1r, b2, b3r, b4, rng, degree_budget
                )
                if planted is None:
                    planted = _witness_sampling_zero(
                        b1r, b2, b3r, b4, rng, degree_budget
                    )
                if planted is not None:
                    return _checked_zero(form, mat_vec(pullback, planted))
                vec = _direct_search_polynomial(form, 5)
                if vec is not None:
                    return _checked_zero(form, vec)
            continue
        vec = mat_vec(pullback, (x1, x2, x3, x4))
        report = _checked_zero(form, vec)
        return SolveReport(
            "zero", vector=report.vector, common_value=outcome
        )
    raise BudgetExhausted(
        "binary solves kept missing within the degree budget"
    ) from last_exhaustion


def solve_quaternary(form: QuaternaryForm, rng, degree_budget: int = 24):
    """Nontrivial zero of Q, or None when the form is anisotropic."""
    report = solve_quaternary_report(form, rng, degree_budget)
    return report.vector
