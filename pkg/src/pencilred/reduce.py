"""Lattice reduction of pencils, short vectors, and Siegel coordinates.

LLL runs exactly on a dyadic rationalization of the covariant Gram matrix;
the unimodular change of basis is exact integers, so reducing a pencil never
perturbs it.  Short vectors come from exact Fincke-Pohst enumeration on the
rational Gram.  Iwasawa coordinates follow the convention H = (nt)^-T (nt)^-1
with n unit upper triangular and t the positive diagonal, which is the one
that makes a short lattice vector force t_1 large (the cusp test).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath as mp

from . import linalg
from .covariant import GramMatrix, reduction_covariant
from .errors import DegeneratePencil, DimensionTooLarge, RangeError
from .forms import DEFAULT_PRECISION
from .pencil import Pencil, UnimodularMatrix, act, pencil_discriminant

# Covering Siegel constant sqrt(3)/2; the cusp estimates need c < 1.
SIEGEL_C = 0.86602540378443864676


@dataclass(frozen=True)
class ReductionResult:
    g: UnimodularMatrix
    reduced: Pencil
    gram_reduced: GramMatrix
    det_g: int


@dataclass(frozen=True)
class IwasawaCoordinates:
    t: tuple                 # positive diagonal, det-1 normalized
    nu: tuple                # strictly upper unipotent entries, row-major
    satisfies_siegel: bool
    c: float


def rationalize_gram(H: GramMatrix, bits):
    """Symmetric Fraction approximation with denominators 2^bits."""
    n = H.n
    den = 1 << bits
    out = [[Fraction(0)] * n for _ in range(n)]
    with mp.workprec(bits + 64):
        for i in range(n):
            for j in range(i, n):
                x = (H.entries[i][j] + H.entries[j][i]) / 2
                q = Fraction(int(mp.nint(x * den)), den)
                out[i][j] = out[j][i] = q
    return out


def _gso_from_gram(G):
    """Gram-Schmidt data (mu, B*) from a Gram matrix, exact."""
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    Bs = [Fraction(0)] * n
    c = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            c[i][j] = Fraction(G[i][j]) - sum(
                mu[j][k] * c[i][k] for k in range(j))
            if j < i:
                mu[i][j] = c[i][j] / Bs[j]
        Bs[i] = c[i][i]
    return mu, Bs


def lll_gram(G, delta=0.99):
    """LLL on a positive definite Fraction Gram matrix.

    Returns an integer unimodular matrix U whose rows are the coordinates of
    the reduced basis; the reduced Gram is U G U^T.
    """
    if not 0.25 < delta < 1:
        raise ValueError("delta must lie in (0.25, 1)")
    deltaf = Fraction(delta)
    n = len(G)
    G = [[Fraction(x) for x in row] for row in G]
    U = linalg.identity_matrix(n)

    def row_op(k, j, q):
        # b_k -= q * b_j
        U[k] = [a - q * b for a, b in zip(U[k], U[j])]
        new_row = [G[k][t] - q * G[j][t] for t in range(n)]
        new_row[k] = G[k][k] - 2 * q * G[k][j] + q * q * G[j][j]
        G[k] = new_row
        for t in range(n):
            G[t][k] = new_row[t]

    mu, Bs = _gso_from_gram(G)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                row_op(k, j, q)
                for t in range(j):
                    mu[k][t] -= q * mu[j][t]
                mu[k][j] -= q
        if Bs[k] >= (deltaf - mu[k][k - 1] ** 2) * Bs[k - 1]:
            k += 1
        else:
            U[k], U[k - 1] = U[k - 1], U[k]
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, Bs = _gso_from_gram(G)
            k = max(k - 1, 1)
    return U


def is_lll_reduced_gram(G, delta=0.99):
    """Exact check of size reduction and the Lovasz condition on a Gram."""
    mu, Bs = _gso_from_gram([[Fraction(x) for x in row] for row in G])
    n = len(G)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    deltaf = Fraction(delta)
    for k in range(1, n):
        if Bs[k] < (deltaf - mu[k][k - 1] ** 2) * Bs[k - 1]:
            return False
    return True


def lll_reduce(p: Pencil, delta=0.99, precision=DEFAULT_PRECISION,
               sl_normalize=False) -> ReductionResult:
    """Reduce a nondegenerate integral pencil via LLL on its covariant.

    The returned g satisfies reduced = act(g, p) exactly; gram_reduced is the
    covariant Gram in the new basis, LLL-reduced by construction.  With
    sl_normalize the sign of the first basis vector is flipped if needed to
    force det(g) = +1 (this preserves LLL-reducedness).
    """
    if pencil_discriminant(p) == 0:
        raise DegeneratePencil("pencil has zero discriminant")
    H = reduction_covariant(p, precision)
    G = rationalize_gram(H, precision)
    U = lll_gram(G, delta)
    if sl_normalize and linalg.det_bareiss(U) == -1:
        U = [[-x for x in U[0]]] + [list(r) for r in U[1:]]
    g_entries = linalg.inverse_unimodular(linalg.transpose(U))
    g = UnimodularMatrix(p.n, tuple(tuple(r) for r in g_entries))
    reduced = act(g, p)
    with mp.workprec(precision + 32):
        Hm = H.as_mp()
        Um = mp.matrix(U)
        Hr = Um * Hm * Um.T
        scale = max(1, max(abs(x) for row in U for x in row)) ** 2 * p.n * p.n
        gram_reduced = GramMatrix.from_mp(Hr, H.error_bound * scale)
    return ReductionResult(g, reduced, gram_reduced, g.det)


def _ldl_fraction(G):
    """Exact LDL^T of a positive definite Fraction Gram: returns (L, D)."""
    n = len(G)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        d = Fraction(G[j][j]) - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if d <= 0:
            raise ValueError("Gram matrix is not positive definite")
        D[j] = d
        for i in range(j + 1, n):
            L[i][j] = (Fraction(G[i][j]) - sum(
                L[i][k] * L[j][k] * D[k] for k in range(j))) / d
    return L, D


def _enumerate_minima(G):
    """All nonzero minimizers of the exact rational form G, with the minimum.

    Fincke-Pohst from the last coordinate down, with rational arithmetic
    only; the radius starts at the smallest diagonal entry and shrinks as
    better vectors appear.
    """
    n = len(G)
    L, D = _ldl_fraction(G)
    best = min(Fraction(G[i][i]) for i in range(n))
    minima = []

    x = [0] * n

    def norm_of(vec):
        return sum(Fraction(G[i][j]) * vec[i] * vec[j]
                   for i in range(n) for j in range(n))

    def recurse(i, partial):
        nonlocal best, minima
        if i < 0:
            if any(x):
                if partial < best:
                    best = partial
                    minima = [tuple(x)]
                elif partial == best:
                    minima.append(tuple(x))
            return
        c = sum(L[j][i] * x[j] for j in range(i + 1, n))
        budget = best - partial
        if budget < 0:
            return
        base = round(-c)
        # the term is a parabola in xi centered at -c, so walk outward
        xi = base
        while True:
            term = D[i] * (xi + c) ** 2
            if term > budget:
                break
            x[i] = xi
            recurse(i - 1, partial + term)
            x[i] = 0
            xi += 1
        xi = base - 1
        while True:
            term = D[i] * (xi + c) ** 2
            if term > budget:
                break
            x[i] = xi
            recurse(i - 1, partial + term)
            x[i] = 0
            xi -= 1

    recurse(n - 1, Fraction(0))
    # best may have shrunk after a tied vector was recorded
    minima = [v for v in minima if norm_of(v) == best]
    return best, minima


def _canonical_minimizer(vectors):
    """Sign-normalize (first nonzero positive) and pick the colex-least."""
    normed = set()
    for v in vectors:
        lead = next((x for x in v if x != 0), 0)
        if lead < 0:
            v = tuple(-x for x in v)
        normed.add(tuple(v))
    return min(normed, key=lambda v: tuple(reversed(v)))


def shortest_vector(H: GramMatrix, precision=DEFAULT_PRECISION):
    """Exact shortest nonzero vector of Z^n under the form H (n <= 12).

    Enumeration runs on the dyadic rationalization of H; ties are broken by
    sign normalization followed by colexicographic order, so the result is
    deterministic.  Returns (v, norm) with the norm evaluated against H.
    """
    if H.n > 12:
        raise DimensionTooLarge("exact enumeration supports n <= 12")
    bits = min(precision, 192)
    G = rationalize_gram(H, bits)
    U = lll_gram(G)
    Gr = linalg.mat_mul(U, linalg.mat_mul(G, linalg.transpose(U)))
    _, minima = _enumerate_minima(Gr)
    candidates = [tuple(linalg.mat_vec(linalg.transpose(U), list(xv)))
                  for xv in minima]
    v = _canonical_minimizer(candidates)
    with mp.workprec(precision + 32):
        Hm = H.as_mp()
        vec = mp.matrix(list(v))
        norm = (vec.T * Hm * vec)[0, 0]
    return v, norm


def shortest_norm_exact(H: GramMatrix, bits=128):
    """Exact minimum of the rationalized form, as a Fraction."""
    if H.n > 12:
        raise DimensionTooLarge("exact enumeration supports n <= 12")
    G = rationalize_gram(H, bits)
    U = lll_gram(G)
    Gr = linalg.mat_mul(U, linalg.mat_mul(G, linalg.transpose(U)))
    best, _ = _enumerate_minima(Gr)
    return best


def epsilon_small_test(H: GramMatrix, eps, precision=DEFAULT_PRECISION) -> bool:
    """True iff the shortest vector satisfies (v,v)^(1/2) < eps*det(H)^(1/2n)."""
    v, norm = shortest_vector(H, precision)
    with mp.workprec(precision + 32):
        d = mp.det(H.as_mp())
        return bool(mp.sqrt(norm) < mp.mpf(eps) * d ** (mp.mpf(1) / (2 * H.n)))


def _ldl_mp(M, n):
    L = mp.eye(n)
    D = [mp.mpf(0)] * n
    for j in range(n):
        d = M[j, j] - mp.fsum(L[j, k] ** 2 * D[k] for k in range(j))
        D[j] = d
        for i in range(j + 1, n):
            L[i, j] = (M[i, j] - mp.fsum(
                L[i, k] * L[j, k] * D[k] for k in range(j))) / d
    return L, D


def iwasawa_coordinates(H: GramMatrix, c=SIEGEL_C,
                        precision=DEFAULT_PRECISION) -> IwasawaCoordinates:
    """Iwasawa coordinates of the det-1 rescaling of H.

    Writes H1 = (nu * t)^-T (nu * t)^-1 with nu unit upper triangular and t
    positive diagonal with product 1; equivalently H1^-1 = nu t^2 nu^T, a
    UDU^T factorization, computed as an order-reversed LDL^T.
    """
    n = H.n
    with mp.workprec(precision + 32):
        Hm = H.as_mp()
        d = mp.det(Hm)
        H1 = Hm / d ** (mp.mpf(1) / n)
        C = H1 ** -1
        Cf = mp.matrix(n)
        for i in range(n):
            for j in range(n):
                Cf[i, j] = C[n - 1 - i, n - 1 - j]
        L, D = _ldl_mp(Cf, n)
        t = tuple(mp.sqrt(D[n - 1 - i]) for i in range(n))
        nu = tuple(tuple(L[n - 1 - i, n - 1 - j] for j in range(i + 1, n))
                   for i in range(n))
        ok = all(t[i] / t[i + 1] > c for i in range(n - 1))
    return IwasawaCoordinates(t, nu, bool(ok), float(c))


def cusp_membership(H: GramMatrix, eps, c=SIEGEL_C,
                    precision=DEFAULT_PRECISION) -> bool:
    """True iff t_1 of the reduced representative exceeds c^(n-1)/eps.

    The lattice is first rebased so the exact shortest vector comes first
    (falling back to plain LLL beyond n = 12); with c < 1 this makes the
    small-vector implication of the cusp estimate hold verbatim.
    """
    n = H.n
    if n <= 12:
        v, _ = shortest_vector(H, precision)
        g = 0
        for xx in v:
            g = gcd(g, xx)
        v = tuple(xx // g for xx in v)
        W = linalg.complete_primitive_vector(list(v))
    else:
        G = rationalize_gram(H, min(precision, 192))
        W = lll_gram(G)
    with mp.workprec(precision + 32):
        Wm = mp.matrix([list(r) for r in W])
        Hr = Wm * H.as_mp() * Wm.T
        Hred = GramMatrix.from_mp(Hr, H.error_bound * n * n * max(
            1, max(abs(x) for row in W for x in row)) ** 2)
        iw = iwasawa_coordinates(Hred, c, precision)
        threshold = mp.mpf(c) ** (n - 1) / mp.mpf(eps)
        return bool(iw.t[0] > threshold)


def stabilizer_order(m: int, n: int) -> int:
    """Order of the real stabilizer on the component with 2m real roots."""
    if n <= 0 or n % 2:
        raise RangeError("n must be a positive even integer")
    if not 0 <= m <= n // 2:
        raise RangeError("m must satisfy 0 <= m <= n/2")
    if m == 0:
        return 2 ** (n // 2)
    return 2 ** (n // 2 + m - 1)
