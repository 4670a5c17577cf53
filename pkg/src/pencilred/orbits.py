"""Orbit construction: arithmetic in L_f = Q[X]/(f(X,1)), pencils from orbit
data (alpha, z), data from divisors on the hyperelliptic curve z^2 = f(x,y),
integralization, and the covariant norm of the distinguished vector.

The pencil attached to a valid datum is written in the basis
{z*1, X, ..., X^(n-1)} of L_f, whose determinant against the power basis is
z; in that basis the two Gram matrices have entries f0^-1 tau(alpha b_i b_j)
and f0^-1 tau(X alpha b_i b_j), where tau reads off the X^(n-1) coordinate.
The distinguished vector 1 has coordinates (1/z, 0, ..., 0).
"""

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath as mp

from . import linalg, polys
from .errors import (DivisorMeetsWeierstrass, InconsistentW, InvalidDatum,
                     NotFound, NotPrimitive, PreconditionError)
from .forms import DEFAULT_PRECISION, BinaryForm, complex_roots
from .pencil import Pencil, invariant_form


@dataclass(frozen=True)
class AlgebraElement:
    """Element of L_f = Q[X]/(f(X,1)), coordinates in the power basis
    1, X, ..., X^(n-1) (ascending)."""
    modulus: BinaryForm
    coeffs: tuple

    def __post_init__(self):
        if self.modulus.coeffs[0] == 0:
            raise ValueError("modulus must have f0 != 0")
        n = self.modulus.degree
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != n:
            raise ValueError("need exactly n coordinates")
        object.__setattr__(self, "coeffs", cs)

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.modulus, tuple(
            a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.modulus, tuple(
            a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            prod = _poly_mul_ascending(self.coeffs, other.coeffs)
            return element_from_poly(self.modulus, prod)
        return AlgebraElement(self.modulus, tuple(
            Fraction(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        result = one(self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ValueError("elements of different algebras")

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def multiplication_matrix(self):
        """Matrix of multiplication by self on the power basis (columns are
        the images of X^j)."""
        n = self.modulus.degree
        cols = []
        cur = list(self.coeffs)
        for _ in range(n):
            cols.append(list(cur))
            cur = _reduce_ascending(self.modulus, [Fraction(0)] + cur)
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def _monic_modulus_descending(f: BinaryForm):
    f0 = Fraction(f.coeffs[0])
    return [Fraction(c) / f0 for c in f.coeffs]


def _poly_mul_ascending(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _reduce_ascending(f: BinaryForm, coeffs):
    """Reduce an ascending coefficient list mod the monic rescaling of f(X,1)."""
    n = f.degree
    monic = _monic_modulus_descending(f)   # descending, length n+1, lead 1
    cs = list(coeffs)
    for k in range(len(cs) - 1, n - 1, -1):
        c = cs[k]
        if c:
            # subtract c * X^(k-n) * monic
            for t in range(n + 1):
                cs[k - t] -= c * monic[t]
        cs.pop()
    while len(cs) < n:
        cs.append(Fraction(0))
    return cs


def element_from_poly(f: BinaryForm, coeffs_ascending):
    return AlgebraElement(f, tuple(_reduce_ascending(f, [
        Fraction(c) for c in coeffs_ascending])))


def one(f: BinaryForm):
    return element_from_poly(f, [1])


def generator(f: BinaryForm):
    """The class of X."""
    return element_from_poly(f, [0, 1])


def tau_functional(a: AlgebraElement):
    """Coefficient of X^(n-1) of the reduced representative (the dual-basis
    functional attached to the top power)."""
    return a.coeffs[-1]


def norm(a: AlgebraElement):
    """Determinant of multiplication by a, exact."""
    return Fraction(linalg.det_exact(a.multiplication_matrix()))


@dataclass(frozen=True)
class OrbitDatum:
    f: BinaryForm
    alpha: AlgebraElement
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "z", Fraction(self.z))
        if self.z == 0:
            raise ValueError("z must be nonzero")
        if self.alpha.modulus != self.f:
            raise ValueError("alpha must live in L_f")

    def to_json_dict(self):
        return {"f": self.f.to_json_dict(),
                "alpha": [str(c) for c in self.alpha.coeffs],
                "z": str(self.z)}

    @classmethod
    def from_json_dict(cls, d):
        f = BinaryForm.from_json_dict(d["f"])
        alpha = AlgebraElement(f, tuple(Fraction(s) for s in d["alpha"]))
        return cls(f, alpha, Fraction(d["z"]))


def validate_datum(d: OrbitDatum) -> bool:
    """Exact check of z^2 N(alpha) = f0^(n+1)."""
    n = d.f.degree
    return d.z ** 2 * norm(d.alpha) == Fraction(d.f.coeffs[0]) ** (n + 1)


def pencil_from_datum(d: OrbitDatum):
    """Pencil of the orbit of (alpha, z), plus the distinguished vector.

    Basis {z*1, X, ..., X^(n-1)}; returns (p, one_bar) with one_bar the
    coordinates (1/z, 0, ..., 0) of 1 in that basis.  The invariant form of
    p equals f exactly; anything else marks the datum as invalid.
    """
    if not validate_datum(d):
        raise InvalidDatum("z^2 N(alpha) != f0^(n+1)")
    f = d.f
    n = f.degree
    f0 = Fraction(f.coeffs[0])
    # t[k] = f0^-1 tau(alpha X^k) for k = 0..2n-1
    t = []
    cur = d.alpha
    X = generator(f)
    for _ in range(2 * n):
        t.append(tau_functional(cur) / f0)
        cur = cur * X
    z = d.z
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            scale = z ** ((i == 0) + (j == 0))
            A[i][j] = scale * t[i + j]
            B[i][j] = scale * t[i + j + 1]
    p = Pencil(n, tuple(tuple(r) for r in A), tuple(tuple(r) for r in B))
    if invariant_form(p) != f:
        raise InvalidDatum("datum does not produce the requested form")
    one_bar = tuple([1 / z] + [Fraction(0)] * (n - 1))
    return p, one_bar


@dataclass(frozen=True)
class DivisorSpec:
    """Effective degree-(2g-1) divisor data: the primitive image form U, and
    the product w of the z-coordinates of its points."""
    f: BinaryForm
    U: BinaryForm
    w: Fraction

    def __post_init__(self):
        object.__setattr__(self, "w", Fraction(self.w))
        if self.w == 0:
            raise ValueError("w must be nonzero")

    @property
    def genus(self):
        return (self.f.degree - 2) // 2

    def affine_degree(self):
        """Degree k of U(X,1) and its leading coefficient u_k."""
        cs = list(self.U.coeffs)
        i = 0
        while i < len(cs) - 1 and cs[i] == 0:
            i += 1
        return self.U.degree - i, cs[i]

    def to_json_dict(self):
        return {"f": self.f.to_json_dict(), "U": self.U.to_json_dict(),
                "w": str(self.w)}

    @classmethod
    def from_json_dict(cls, d):
        return cls(BinaryForm.from_json_dict(d["f"]),
                   BinaryForm.from_json_dict(d["U"]), Fraction(d["w"]))


def datum_from_divisor(ds: DivisorSpec) -> OrbitDatum:
    """(alpha, z) = (U(X,1) mod f(X,1), u_k^-(g+1) f0^(n-1) w^-1)."""
    f = ds.f
    n = f.degree
    if n < 4 or n % 2:
        raise PreconditionError("divisor pipeline needs even degree n >= 4")
    if f.coeffs[0] == 0:
        raise PreconditionError("f0 must be nonzero")
    g = ds.genus
    if ds.U.degree != 2 * g - 1:
        raise PreconditionError("U must have degree 2g-1")
    if ds.U.is_integral and ds.U.content() != 1:
        raise NotPrimitive("U must be primitive")
    fX = [Fraction(c) for c in f.coeffs]
    UX = [Fraction(c) for c in ds.U.coeffs]
    common = polys.pgcd(fX, UX)
    if polys.pdeg(common) > 0:
        raise DivisorMeetsWeierstrass("U shares a factor with f")
    k, u_k = ds.affine_degree()
    z = Fraction(f.coeffs[0]) ** (n - 1) / (Fraction(u_k) ** (g + 1) * ds.w)
    alpha = element_from_poly(f, list(reversed(list(ds.U.coeffs))))
    d = OrbitDatum(f, alpha, z)
    if not validate_datum(d):
        raise InconsistentW("w is inconsistent with U on the curve")
    return d


def norm_of_one_formula(ds: DivisorSpec, precision=DEFAULT_PRECISION):
    """Root-sum formula for the covariant norm of the distinguished vector:
    sum |U(w,1)|/|f_x(w,1)| over roots inside the unit circle plus
    sum |U(1,1/w)|/|f_y(1,1/w)| over the rest."""
    f = ds.f
    if f.coeffs[0] == 0:
        raise PreconditionError("f0 must be nonzero")
    rs = complex_roots(f, precision)
    fx = f.partial_x()
    fy = f.partial_y()
    with mp.workprec(precision + 32):
        total = mp.mpf(0)
        for e in rs.entries:
            if not e.outside:
                w = e.value
                total += abs(_eval_mp(ds.U, w, 1)) / abs(_eval_mp(fx, w, 1))
            else:
                winv = mp.mpc(0) if e.at_infinity else 1 / e.value
                total += abs(_eval_mp(ds.U, 1, winv)) / abs(_eval_mp(fy, 1, winv))
        return mp.mpf(total)


def _eval_mp(form: BinaryForm, x, y):
    n = form.degree
    acc = mp.mpc(0)
    x = mp.mpc(x)
    y = mp.mpc(y)
    for i, c in enumerate(form.coeffs):
        if isinstance(c, Fraction):
            cm = mp.mpf(c.numerator) / mp.mpf(c.denominator)
        else:
            cm = mp.mpf(c)
        acc += cm * x ** (n - i) * y ** i
    return acc


# ----------------------------------------------------------------------------
# integralization


@dataclass(frozen=True)
class IntegralizeResult:
    pencil: Pencil
    transform: tuple     # rational matrix g with act(g, input) = pencil

    def transport(self, vec):
        """Coordinates of a vector in the integral basis."""
        return tuple(linalg.mat_vec([list(r) for r in self.transform],
                                    [Fraction(v) for v in vec]))


def _lattice_key(rows):
    den = 1
    for row in rows:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [[int(x * den) for x in row] for row in rows]
    H = linalg.row_hnf(ints)
    g = den
    for row in H:
        for x in row:
            g = gcd(g, abs(x))
    if g > 1:
        den //= g
        H = [[x // g for x in row] for row in H]
    return den, tuple(tuple(row) for row in H)


def _rows_from_key(key):
    den, H = key
    return [[Fraction(x, den) for x in row] for row in H]


def _gram(rows, M):
    RM = linalg.mat_mul(rows, [list(r) for r in M])
    return linalg.mat_mul(RM, linalg.transpose(rows))


def _gram_denominator(G):
    d = 1
    for row in G:
        for x in row:
            f = Fraction(x)
            d = d * f.denominator // gcd(d, f.denominator)
    return d


def _shrink_to_integral(rows, A, B):
    """Largest sublattice on which both forms pair integrally with everything."""
    GA = _gram(rows, A)
    GB = _gram(rows, B)
    D = max(_gram_denominator(GA), _gram_denominator(GB))
    if D == 1:
        return rows
    n = len(rows)
    M = []
    for G in (GA, GB):
        for i in range(n):
            M.append([int(Fraction(G[i][j]) * D) % D for j in range(n)])
    K = linalg.kernel_mod(M, D)
    return linalg.mat_mul(K, rows)


def _fp_lines(basis, p, cap):
    """Representatives of the projective lines spanned by an F_p basis."""
    k = len(basis)
    out = []
    if k == 0:
        return out
    coeff = [0] * k

    def rec(i, started):
        if len(out) >= cap:
            return
        if i == k:
            if started:
                vec = [0] * len(basis[0])
                for t in range(k):
                    if coeff[t]:
                        vec = [(a + coeff[t] * b) % p
                               for a, b in zip(vec, basis[t])]
                if any(vec):
                    out.append(vec)
            return
        if not started:
            coeff[i] = 1
            rec(i + 1, True)
            coeff[i] = 0
            rec(i + 1, False)
        else:
            for v in range(p):
                coeff[i] = v
                rec(i + 1, True)
            coeff[i] = 0

    rec(0, False)
    return out


def _solve_fp(rows_lhs, rhs, p):
    """One solution of a small linear system over F_p, or None."""
    m = len(rows_lhs)
    ncols = len(rows_lhs[0])
    aug = [[rows_lhs[i][j] % p for j in range(ncols)] + [rhs[i] % p]
           for i in range(m)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if aug[i][ncols]:
            return None
    sol = [0] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return sol


def _grow_candidates(rows, A, B, p, cap=64):
    """Index-p overlattices L + (1/p)u keeping both forms integral.

    u must pair into pZ with the whole lattice (kernel of the Grams mod p)
    and have both self-pairings divisible by p^2; for odd p the latter can be
    arranged by shifting u by p*w, which is a linear condition on w.
    """
    GA = _gram(rows, A)
    GB = _gram(rows, B)
    if _gram_denominator(GA) != 1 or _gram_denominator(GB) != 1:
        return []
    n = len(rows)
    GAi = [[int(x) for x in row] for row in GA]
    GBi = [[int(x) for x in row] for row in GB]
    M = [row[:] for row in GAi] + [row[:] for row in GBi]
    lines = _fp_lines(linalg.fp_nullspace(M, p), p, cap)
    out = []
    for x in lines:
        qa = sum(GAi[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        qb = sum(GBi[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        xx = None
        if qa % (p * p) == 0 and qb % (p * p) == 0:
            xx = list(x)
        elif p != 2:
            # (x + pw)^T G (x + pw) = q + 2p w.Gx mod p^2
            ga_x = linalg.mat_vec(GAi, x)
            gb_x = linalg.mat_vec(GBi, x)
            lhs = [[2 * v % p for v in ga_x], [2 * v % p for v in gb_x]]
            rhs = [(-(qa // p)) % p, (-(qb // p)) % p]
            w = _solve_fp(lhs, rhs, p)
            if w is not None:
                xx = [a + p * b for a, b in zip(x, w)]
                qa2 = sum(GAi[i][j] * xx[i] * xx[j]
                          for i in range(n) for j in range(n))
                qb2 = sum(GBi[i][j] * xx[i] * xx[j]
                          for i in range(n) for j in range(n))
                if qa2 % (p * p) or qb2 % (p * p):
                    xx = None
        if xx is not None:
            u = linalg.mat_vec(linalg.transpose(rows), xx)
            out.append([list(r) for r in rows] + [[Fraction(c, p) for c in u]])
    return out


def _sublattice_candidates(rows, p, cap=64):
    n = len(rows)
    out = []
    lines = _fp_lines([[int(i == j) for j in range(n)] for i in range(n)],
                      p, cap)
    for lam in lines:
        K = linalg.kernel_mod([lam], p)
        out.append(linalg.mat_mul(K, rows))
    return out


def _prime_factors(m):
    return polys._prime_divisors(m)


def integralize(p: Pencil, max_states=8000) -> IntegralizeResult:
    """Search for an integral pencil in the unimodular rational orbit.

    Best-effort: a shrink-to-integral pass followed by a best-first search
    over index-p overlattices (and index-p sublattices when the covolume
    drops below 1), all while keeping both forms integral.  Raises NotFound
    once the state budget is exhausted; that is not a disproof.
    """
    f = invariant_form(p)
    if not f.is_integral:
        raise PreconditionError("invariant form of the pencil is not integral")
    n = p.n
    A = [list(r) for r in p.A]
    B = [list(r) for r in p.B]
    if p.is_integral:
        ident = tuple(tuple(Fraction(int(i == j)) for j in range(n))
                      for i in range(n))
        return IntegralizeResult(p, ident)

    den = 1
    for M in (A, B):
        for row in M:
            for x in row:
                fx = Fraction(x)
                den = den * fx.denominator // gcd(den, fx.denominator)

    seen = set()
    heap = []
    counter = 0

    def covol(rows):
        return abs(Fraction(linalg.det_exact(rows)))

    def push(rows):
        nonlocal counter
        key = _lattice_key([[Fraction(x) for x in row] for row in rows])
        if key in seen:
            return
        seen.add(key)
        canon = _rows_from_key(key)
        c = covol(canon)
        # prefer small covolume, then small Gram entries (more reduced states)
        size = 1
        for G in (_gram(canon, A), _gram(canon, B)):
            for row in G:
                for x in row:
                    size = max(size, abs(Fraction(x).numerator))
        score = (abs(math.log(c.numerator) - math.log(c.denominator)),
                 math.log(size))
        heapq.heappush(heap, (score, counter, key))
        counter += 1

    # seeds: the integral hull of Z^n and of its q-refinements
    push(_shrink_to_integral(linalg.identity_matrix(n), A, B))
    for q in _prime_factors(den):
        refined = [[Fraction(int(i == j), q) for j in range(n)]
                   for i in range(n)]
        push(_shrink_to_integral(refined, A, B))
    explored = 0
    while heap and explored < max_states:
        _, _, key = heapq.heappop(heap)
        explored += 1
        rows = _rows_from_key(key)
        c = covol(rows)
        if c == 1:
            return _finish(p, rows, A, B)
        if c > 1:
            for q in _prime_factors(c.numerator):
                for cand in _grow_candidates(rows, A, B, q):
                    GA = _gram(cand, A)
                    GB = _gram(cand, B)
                    if (_gram_denominator(GA) == 1
                            and _gram_denominator(GB) == 1):
                        push(cand)
        else:
            for q in _prime_factors(c.denominator):
                for cand in _sublattice_candidates(rows, q):
                    push(cand)
    raise NotFound("no integral representative within the search budget")


def _finish(p, rows, A, B):
    n = p.n
    det = Fraction(linalg.det_exact(rows))
    if det == -1:
        rows = [[-x for x in rows[0]]] + [list(r) for r in rows[1:]]
    GA = _gram(rows, A)
    GB = _gram(rows, B)
    out = Pencil(n,
                 tuple(tuple(int(x) for x in row) for row in GA),
                 tuple(tuple(int(x) for x in row) for row in GB))
    if invariant_form(out) != invariant_form(p):
        raise NotFound("search produced a pencil with the wrong form")
    g = linalg.inverse_exact(linalg.transpose(rows))
    return IntegralizeResult(out, tuple(tuple(x for x in row) for row in g))
