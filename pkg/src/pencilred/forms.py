"""Integral binary forms: heights, discriminants, roots, Mahler measure,
irreducibility.

A degree-n binary form f(x,y) = f0 x^n + f1 x^(n-1) y + ... + fn y^n is
stored by its coefficient list.  Exact questions (discriminant, real root
count, irreducibility) are answered with integer/rational arithmetic only;
complex roots and the Mahler measure carry certified error bounds at a
requested bit precision.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

import mpmath as mp

from . import polys
from .errors import DegenerateForm
from .roots import certified_roots

DEFAULT_PRECISION = 256


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("need degree+1 coefficients")
        object.__setattr__(self, "coeffs", tuple(
            c if isinstance(c, Fraction) and c.denominator != 1 else int(c)
            for c in self.coeffs))

    @property
    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def __call__(self, x, y):
        n = self.degree
        acc = 0
        for i, c in enumerate(self.coeffs):
            acc += c * x ** (n - i) * y ** i
        return acc

    def dehomogenized(self):
        """Coefficients of f(X,1), descending, leading zeros kept."""
        return list(self.coeffs)

    def partial_x(self):
        n = self.degree
        cs = [c * (n - i) for i, c in enumerate(self.coeffs[:-1])]
        return BinaryForm(n - 1, cs) if n >= 1 else BinaryForm(0, (0,))

    def partial_y(self):
        n = self.degree
        cs = [c * i for i, c in enumerate(self.coeffs) if i >= 1]
        return BinaryForm(n - 1, cs) if n >= 1 else BinaryForm(0, (0,))

    def content(self):
        g = 0
        for c in self.coeffs:
            if not isinstance(c, int):
                raise ValueError("content of a non-integral form")
            g = gcd(g, abs(c))
        return g

    def primitive(self):
        g = self.content()
        if g in (0, 1):
            return self
        return BinaryForm(self.degree, tuple(c // g for c in self.coeffs))

    def scale(self, s):
        return BinaryForm(self.degree, tuple(Fraction(c) * s for c in self.coeffs))

    def to_json_dict(self):
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, d):
        coeffs = []
        for s in d["coeffs"]:
            coeffs.append(Fraction(s) if "/" in str(s) else int(s))
        return cls(int(d["degree"]), tuple(coeffs))


def form_from_linear_factors(factors):
    """Product of (a*x - b*y) factors given as (a, b) pairs."""
    coeffs = [1]
    for a, b in factors:
        new = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c * a
            new[i + 1] += c * (-b)
        coeffs = new
    return BinaryForm(len(coeffs) - 1, tuple(coeffs))


@dataclass(frozen=True)
class RootEntry:
    value: object        # mpc, or None for the root at infinity
    radius: object       # mpf error radius (0-width not claimed; certified)
    outside: bool        # assigned to the {|rho| > 1} class
    boundary: bool       # | |rho| - 1 | below the boundary tolerance

    @property
    def at_infinity(self):
        return self.value is None


@dataclass(frozen=True)
class RootSet:
    degree: int
    leading: object      # f0 of the input form
    entries: tuple
    boundary_tol: object

    def inside(self):
        return [e for e in self.entries if not e.outside]

    def outside_entries(self):
        return [e for e in self.entries if e.outside]


def height(f: BinaryForm):
    """Ht(f) = max |f_i|."""
    return max(abs(c) for c in f.coeffs)


def _univariate_disc(coeffs):
    """Discriminant of a degree-n polynomial given with nonzero lead coeff."""
    n = polys.pdeg(coeffs)
    if n <= 0:
        return 0
    res = polys.sylvester_resultant(coeffs, polys.pderiv(coeffs))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    out = Fraction(sign, 1) * Fraction(res) / Fraction(coeffs[0])
    return int(out) if out.denominator == 1 else out


def _shear(f: BinaryForm, t: int):
    """f(x, y + t*x); a determinant-1 substitution, so Delta is unchanged."""
    n = f.degree
    out = [0] * (n + 1)
    for i, c in enumerate(f.coeffs):
        # c * x^(n-i) * (y + t x)^i
        term = [0] * (i + 1)
        b = 1
        for k in range(i + 1):
            term[k] = c * b * t ** (i - k)   # coefficient of x^(n-k) y^k
            b = b * (i - k) // (k + 1)
        for k in range(i + 1):
            out[k] += term[k]
    return BinaryForm(n, tuple(out))


@lru_cache(maxsize=8192)
def discriminant(f: BinaryForm):
    """Delta(f), exact.

    Computed as the degree-n discriminant of f(X,1) when f0 != 0; otherwise a
    unimodular shear makes the leading coefficient nonzero first.  The sign
    normalization is the one matching the splitting-field product formula
    (validated against split examples in the test suite).
    """
    if all(c == 0 for c in f.coeffs):
        return 0
    if f.degree <= 1:
        return 1
    if f.coeffs[0] != 0:
        return _univariate_disc(list(f.coeffs))
    for t in range(1, f.degree + 2):
        if f(1, t) != 0:
            return discriminant(_shear(f, t))
    return 0


def complex_roots(f: BinaryForm, precision=DEFAULT_PRECISION) -> RootSet:
    """Certified projective roots of f; f0 = 0 contributes a root at infinity.

    Roots are split into the {|rho| <= 1} and {|rho| > 1} classes with a
    boundary tolerance of 2^(-precision/2); boundary roots keep their side
    but are flagged.
    """
    if discriminant(f) == 0:
        raise DegenerateForm("form has zero discriminant")
    coeffs = list(f.coeffs)
    n_inf = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        n_inf += 1
    n_zero = 0
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        n_zero += 1
    pairs = certified_roots(coeffs, precision) if len(coeffs) > 1 else []
    with mp.workprec(precision + 16):
        tol = mp.mpf(2) ** (-precision // 2)
        entries = []
        for _ in range(n_zero):
            entries.append(RootEntry(mp.mpc(0), mp.mpf(0), False, False))
        for z, r in pairs:
            mag = abs(z)
            boundary = abs(mag - 1) <= tol
            entries.append(RootEntry(z, r, bool(mag > 1), bool(boundary)))
        for _ in range(n_inf):
            entries.append(RootEntry(None, mp.mpf(0), True, False))
        return RootSet(f.degree, f.coeffs[0], tuple(entries), tol)


def _to_mpf(c):
    if isinstance(c, Fraction):
        return mp.mpf(c.numerator) / mp.mpf(c.denominator)
    return mp.mpf(c)


def mahler_measure_with_error(f: BinaryForm, precision=DEFAULT_PRECISION):
    """(value, certified absolute error bound) for the Mahler measure.

    This is |c| in the normalized factorization of f into (x - omega y) and
    (eta x - y) factors: the absolute leading coefficient of f(X,1) times the
    product of the moduli of its roots outside the unit circle.  Roots at
    infinity reduce the degree and contribute nothing.
    """
    rs = complex_roots(f, precision)
    with mp.workprec(precision + 16):
        i = 0
        while f.coeffs[i] == 0:
            i += 1
        lead = abs(_to_mpf(f.coeffs[i]))
        lo = hi = mp.mpf(1)
        for e in rs.entries:
            if e.at_infinity or not e.outside:
                continue
            mag = abs(e.value)
            lo *= max(mag - e.radius, mp.mpf(0))
            hi *= mag + e.radius
        value = lead * mp.sqrt(lo * hi) if lo > 0 else lead * hi / 2
        err = lead * (hi - lo) + mp.mpf(2) ** (-precision) * (1 + lead * hi)
        return value, err


def mahler_measure(f: BinaryForm, precision=DEFAULT_PRECISION):
    return mahler_measure_with_error(f, precision)[0]


def real_root_count(f: BinaryForm) -> int:
    """Number of real projective roots, exact (Sturm on f(X,1), plus the
    point at infinity when f0 = 0)."""
    if discriminant(f) == 0:
        raise DegenerateForm("form has zero discriminant")
    coeffs = [Fraction(c) for c in f.coeffs]
    count = polys.sturm_real_root_count(coeffs)
    if f.coeffs[0] == 0:
        count += 1
    return count


def leading_coefficient_bound_check(f: BinaryForm,
                                    precision=DEFAULT_PRECISION) -> bool:
    """mahler(f)^2 <= n * sum(f_i^2), within the certified root error."""
    if f.coeffs[0] == 0 or f.coeffs[-1] == 0:
        raise DegenerateForm("f0*fn = 0")
    value, err = mahler_measure_with_error(f, precision)
    bound = f.degree * sum(Fraction(c) ** 2 for c in f.coeffs)
    with mp.workprec(precision + 16):
        return bool((value - err) ** 2 <= _to_mpf(Fraction(bound)) + err)


# ----------------------------------------------------------------------------
# irreducibility over Q


_WITNESS_PRIMES = 25
_MAX_MODULAR_FACTORS = 16
_RATIONAL_ROOT_CAP = 20000


def _divisors(n, cap):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n and len(out) < cap:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out) if d * d > n else None


def _rational_root(p):
    """A rational root of the integer polynomial p, or None (bounded search)."""
    p = polys.ptrim(p)
    if p[-1] == 0:
        return Fraction(0)
    nums = _divisors(p[-1], _RATIONAL_ROOT_CAP)
    dens = _divisors(p[0], _RATIONAL_ROOT_CAP)
    if nums is None or dens is None:
        return None
    for a in nums:
        for b in dens:
            for s in (1, -1):
                r = Fraction(s * a, b)
                if polys.peval(p, r) == 0:
                    return r
    return None


def _norm2_sq(p):
    return sum(c * c for c in p)


def is_irreducible(f: BinaryForm):
    """Three-valued irreducibility over Q[x,y]: True, False, or None (unknown).

    True comes from a modular witness (f irreducible mod p for a good prime),
    or from exhausting all modular factor recombinations at one big prime.
    False comes from an exhibited factorization (y-factor, rational root,
    repeated factor, or a recombined modular factor that divides).
    """
    if all(c == 0 for c in f.coeffs):
        return False
    n = f.degree
    if n == 0:
        return False
    if not f.is_integral:
        den = 1
        for c in f.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        f = BinaryForm(n, tuple(int(c * den) for c in f.coeffs))
    f = f.primitive()
    if f.coeffs[0] == 0:
        # y divides f; only a linear form survives that
        return n == 1
    if n == 1:
        return True
    p = [int(c) for c in f.coeffs]
    if _rational_root(p) is not None:
        return False
    disc = discriminant(f)
    if disc == 0:
        return False
    # modular witness
    bad = abs(p[0] * disc)
    tried = 0
    q = 2
    while tried < _WITNESS_PRIMES:
        q = polys.next_prime(q)
        if bad % q == 0:
            continue
        tried += 1
        if polys.pm_is_irreducible(p, q):
            return True
    # big-prime Zassenhaus: factor mod one prime beyond the Mignotte bound,
    # then try all small subsets as rational divisors
    bound = 2 ** (n + 1) * polys.isqrt_ceil(_norm2_sq(p)) * abs(p[0])
    P = polys.next_prime(max(2 * bound, 101))
    while bad % P == 0:
        P = polys.next_prime(P)
    rng = random.Random(0x5EED ^ n)
    factors = polys.pm_factor(p, P, rng)
    r = len(factors)
    if r == 1:
        return True
    if r > _MAX_MODULAR_FACTORS:
        return None
    half = P // 2

    def lift(poly):
        return [c - P if c > half else c for c in poly]

    for size in range(1, r // 2 + 1):
        for subset in combinations(range(r), size):
            prod = [p[0] % P]
            for i in subset:
                prod = polys.pm_mul(prod, factors[i], P)
            cand = polys.primitive_part(lift(prod))
            if polys.pdeg(cand) in (0, n):
                continue
            quo, rem = polys.pdivmod(p, cand)
            if polys.pdeg(rem) < 0 and all(
                    Fraction(c).denominator == 1 for c in quo):
                return False
    return True
