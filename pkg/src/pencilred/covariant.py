"""The reduction covariant H_{A,B}.

Simultaneous diagonalization of a nondegenerate pencil over C, followed by
the entrywise-maximum construction: in a basis b_1..b_n diagonalizing both
forms, (b_i, b_i)_H = max(|(b_i,b_i)_A|, |(b_i,b_i)_B|) and off-diagonals
vanish.  H is real, positive definite, independent of the basis scaling, and
transforms like the pencil under the unimodular action.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import (DegeneratePencil, PrecisionExhausted, SingularVariant)
from .forms import DEFAULT_PRECISION, mahler_measure_with_error
from .pencil import Pencil, invariant_form, pencil_discriminant
from .roots import certified_roots

_MAX_ESCALATIONS = 4


@dataclass(frozen=True)
class GramMatrix:
    n: int
    entries: tuple          # n x n of mpf
    error_bound: object     # mpf, entrywise absolute error estimate
    scale_class_tag: str = ""

    def as_mp(self):
        return mp.matrix([list(row) for row in self.entries])

    def to_json_dict(self, digits=30):
        return {"n": self.n,
                "entries": [[mp.nstr(x, digits) for x in row]
                            for row in self.entries],
                "error_bound": mp.nstr(self.error_bound, 8)}

    @classmethod
    def from_mp(cls, M, error_bound, tag=""):
        n = M.rows
        entries = tuple(tuple(mp.mpf(M[i, j]) for j in range(n))
                        for i in range(n))
        return cls(n, entries, mp.mpf(error_bound), tag)


@dataclass(frozen=True)
class DiagonalizingBasis:
    n: int
    columns: tuple          # n columns, each a tuple of mpc
    dA: tuple               # (b_i, b_i)_A
    dB: tuple               # (b_i, b_i)_B

    def matrix(self):
        P = mp.matrix(self.n)
        for j, col in enumerate(self.columns):
            for i, x in enumerate(col):
                P[i, j] = x
        return P


def _mat_to_mp(rows):
    n = len(rows)
    M = mp.matrix(n)
    for i in range(n):
        for j in range(n):
            x = rows[i][j]
            if isinstance(x, Fraction):
                M[i, j] = mp.mpf(x.numerator) / mp.mpf(x.denominator)
            else:
                M[i, j] = mp.mpf(x)
    return M


def _nullvector(M, n):
    """Unit null vector of a numerically rank-(n-1) complex matrix.

    Gaussian elimination with full pivoting; the free column after n-1 steps
    carries the solution.
    """
    a = [[mp.mpc(M[i, j]) for j in range(n)] for i in range(n)]
    col_perm = list(range(n))
    for step in range(n - 1):
        # full pivot on the remaining block
        best, bi, bj = mp.mpf(-1), step, step
        for i in range(step, n):
            for j in range(step, n):
                m = abs(a[i][j])
                if m > best:
                    best, bi, bj = m, i, j
        if best == 0:
            break
        a[step], a[bi] = a[bi], a[step]
        if bj != step:
            for row in a:
                row[step], row[bj] = row[bj], row[step]
            col_perm[step], col_perm[bj] = col_perm[bj], col_perm[step]
        piv = a[step][step]
        for i in range(step + 1, n):
            f = a[i][step] / piv
            if f != 0:
                for j in range(step, n):
                    a[i][j] -= f * a[step][j]
    x = [mp.mpc(0)] * n
    x[n - 1] = mp.mpc(1)
    for i in range(n - 2, -1, -1):
        s = sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = -s / a[i][i]
    v = [mp.mpc(0)] * n
    for pos, orig in enumerate(col_perm):
        v[orig] = x[pos]
    norm = mp.sqrt(sum(abs(c) ** 2 for c in v))
    return [c / norm for c in v]


def _bilinear_mp(M, u, v):
    n = M.rows
    w = M * mp.matrix(list(v))
    return sum(u[i] * w[i] for i in range(n))


def _validate_aux(p, f, aux):
    if aux is None:
        return
    r, s = aux
    if s * f(s, -r) == 0:
        raise ValueError("auxiliary (r, s) with s*f(s,-r) = 0 is not valid")


def simultaneous_diagonalize(p: Pencil, precision=DEFAULT_PRECISION,
                             aux=None) -> DiagonalizingBasis:
    """Common diagonalizing basis of a nondegenerate pencil over C.

    Columns are null vectors of x0*A - y0*B over the projective roots
    (x0 : y0) of the invariant form; these are exactly the eigenvectors of
    A_a^-1 B for any valid auxiliary form a (the result is provably
    independent of that choice, so `aux` is only validated).  Residuals of
    the two transformed Gram matrices certify the output.
    """
    if pencil_discriminant(p) == 0:
        raise DegeneratePencil("pencil has zero discriminant")
    f = invariant_form(p)
    _validate_aux(p, f, aux)
    n = p.n
    prec = precision
    for _ in range(_MAX_ESCALATIONS):
        with mp.workprec(prec + 2 * n + 32):
            Amp = _mat_to_mp(p.A)
            Bmp = _mat_to_mp(p.B)
            rs = _projective_roots(f, prec)
            cols, dA, dB = [], [], []
            for (x0, y0) in rs:
                M = mp.matrix(n)
                for i in range(n):
                    for j in range(n):
                        M[i, j] = x0 * Amp[i, j] - y0 * Bmp[i, j]
                v = _nullvector(M, n)
                cols.append(tuple(v))
                dA.append(_bilinear_mp(Amp, v, v))
                dB.append(_bilinear_mp(Bmp, v, v))
            scale = max(max(abs(a), abs(b)) for a, b in zip(dA, dB))
            tol = mp.mpf(2) ** (-prec // 2) * max(scale, mp.mpf(1)) * n
            resid = mp.mpf(0)
            for i in range(n):
                for j in range(i + 1, n):
                    resid = max(resid,
                                abs(_bilinear_mp(Amp, cols[i], cols[j])),
                                abs(_bilinear_mp(Bmp, cols[i], cols[j])))
            if resid <= tol and min(
                    max(abs(a), abs(b)) for a, b in zip(dA, dB)) > tol:
                return DiagonalizingBasis(n, tuple(cols), tuple(dA), tuple(dB))
        prec *= 2
    raise PrecisionExhausted("simultaneous diagonalization did not certify")


def _projective_roots(f, precision):
    """Projective roots (x0 : y0) of f, |x0|^2 + |y0|^2 = 1, conjugate-closed."""
    coeffs = list(f.coeffs)
    n_inf = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        n_inf += 1
    pairs = certified_roots(coeffs, precision) if len(coeffs) > 1 else []
    out = []
    for z, _ in pairs:
        s = mp.sqrt(1 + abs(z) ** 2)
        out.append((z / s, 1 / s))
    for _ in range(n_inf):
        out.append((mp.mpc(1), mp.mpc(0)))
    return out


def _assemble_gram(db: DiagonalizingBasis, diag, precision):
    """H = P^-H diag P^-1, Hermitian by construction; returns (H_real, err)."""
    n = db.n
    P = db.matrix()
    S = P ** -1
    H = mp.matrix(n)
    for i in range(n):
        for j in range(n):
            acc = mp.mpc(0)
            for k in range(n):
                acc += mp.conj(S[k, i]) * diag[k] * S[k, j]
            H[i, j] = acc
    scale = max(abs(H[i, j]) for i in range(n) for j in range(n))
    imag_max = max(abs(mp.im(H[i, j])) for i in range(n) for j in range(n))
    asym = max(abs(H[i, j] - mp.conj(H[j, i]))
               for i in range(n) for j in range(n))
    tol = n * mp.mpf(2) ** (-precision // 2) * max(scale, mp.mpf(1))
    if imag_max > tol or asym > tol:
        return None, None
    R = mp.matrix(n)
    for i in range(n):
        for j in range(n):
            R[i, j] = (mp.re(H[i, j]) + mp.re(H[j, i])) / 2
    err = imag_max + asym + max(scale, mp.mpf(1)) * mp.mpf(2) ** (-precision // 2)
    return R, err


def reduction_covariant(p: Pencil, precision=DEFAULT_PRECISION) -> GramMatrix:
    """The positive definite Gram matrix H_{A,B} in the standard basis."""
    prec = precision
    for _ in range(_MAX_ESCALATIONS):
        db = simultaneous_diagonalize(p, prec)
        with mp.workprec(prec + 2 * p.n + 32):
            diag = [max(abs(a), abs(b)) for a, b in zip(db.dA, db.dB)]
            R, err = _assemble_gram(db, diag, prec)
            if R is not None:
                return GramMatrix.from_mp(R, err)
        prec *= 2
    raise PrecisionExhausted("covariant assembly did not certify")


def covariant_variant(p: Pencil, which: str,
                      precision=DEFAULT_PRECISION) -> GramMatrix:
    """Single-form variants: diagonal |dA_i| (R1) or |dB_i| (R2).

    Positive definiteness is not guaranteed; a vanishing diagonal value
    raises SingularVariant.
    """
    if which not in ("R1", "R2"):
        raise ValueError("variant must be 'R1' or 'R2'")
    db = simultaneous_diagonalize(p, precision)
    with mp.workprec(precision + 2 * p.n + 32):
        vals = db.dA if which == "R1" else db.dB
        scale = max(max(abs(a), abs(b)) for a, b in zip(db.dA, db.dB))
        tol = p.n * mp.mpf(2) ** (-precision // 2) * max(scale, mp.mpf(1))
        diag = [abs(v) for v in vals]
        if min(diag) <= tol:
            raise SingularVariant("%s has a zero diagonal value" % which)
        R, err = _assemble_gram(db, diag, precision)
        if R is None:
            raise PrecisionExhausted("variant assembly did not certify")
        return GramMatrix.from_mp(R, err)


def gram_det_with_error(H: GramMatrix):
    """Determinant of a GramMatrix with a crude forward error bound."""
    n = H.n
    with mp.extraprec(64):
        d = mp.det(H.as_mp())
        norm = max(abs(x) for row in H.entries for x in row)
        err = (n * n * max(norm, mp.mpf(1)) ** (n - 1) * H.error_bound
               + abs(d) * mp.mpf(2) ** (-mp.mp.prec + 16))
    return d, err


def det_identity_check(p: Pencil, precision=DEFAULT_PRECISION):
    """Compare det H_{A,B} with the Mahler-type leading constant |c| of the
    invariant form.  Returns (det_h, mahler, agree)."""
    H = reduction_covariant(p, precision)
    with mp.workprec(precision + 32):
        det_h, det_err = gram_det_with_error(H)
        f = invariant_form(p)
        m, m_err = mahler_measure_with_error(f, precision)
        combined = det_err + m_err + mp.mpf(2) ** (-precision // 2) * max(
            mp.mpf(1), m)
        agree = bool(abs(det_h - m) <= combined)
    return det_h, m, agree
