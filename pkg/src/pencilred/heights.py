"""Divisor and point heights, the density-1 family filter, and the explicit
height inequalities with their constant.

The family F_delta(X) consists of irreducible integral forms of height < X
with |Delta(f)| >= X^(2n-2-delta); on it, the covariant norm of the
distinguished vector obeys an explicit upper bound whose constant kappa_{n,m}
is assembled from two elementary estimates: a product bound on the root
differences and a bound keeping the roots near the unit circle.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .covariant import gram_det_with_error, reduction_covariant
from .errors import HeightExceedsCutoff, NotFound, NotPrimitive
from .forms import (DEFAULT_PRECISION, BinaryForm, discriminant, height,
                    is_irreducible, mahler_measure_with_error)
from .orbits import (DivisorSpec, datum_from_divisor, integralize,
                     norm_of_one_formula, pencil_from_datum)

INEQ_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FamilyParams:
    X: float
    delta: float

    def __post_init__(self):
        if not self.X > 0:
            raise ValueError("X must be positive")
        if not 0 <= self.delta < 1:
            raise ValueError("delta must lie in [0, 1)")


@dataclass(frozen=True)
class BoundCheck:
    lhs: object
    rhs: object
    holds: bool
    flags: tuple = ()

    def to_json_dict(self):
        return {"lhs": mp.nstr(mp.mpf(self.lhs), 20),
                "rhs": mp.nstr(mp.mpf(self.rhs), 20),
                "holds": self.holds, "flags": list(self.flags)}


def divisor_height(U: BinaryForm):
    """h(D) = log max |u_i| for the primitive form U cutting out pi(D)."""
    if not U.is_integral or U.content() != 1:
        raise NotPrimitive("U must be a primitive integral form")
    return mp.log(max(abs(c) for c in U.coeffs))


def point_height_bound_check(minpoly: BinaryForm, U: BinaryForm,
                             precision=DEFAULT_PRECISION) -> bool:
    """|h(D) - m*h(pi(P))| <= m log 2 for the Galois orbit D of a point.

    m*h(pi(P)) is computed as the log Mahler measure of the primitive minimal
    polynomial, the standard expression for the Weil height.
    """
    m = minpoly.degree
    hd = divisor_height(U)
    with mp.workprec(precision + 16):
        value, err = mahler_measure_with_error(minpoly.primitive(), precision)
        mh = mp.log(value)
        slack = err / value + INEQ_TOLERANCE
        return bool(abs(hd - mh) <= m * mp.log(2) + slack)


def family_membership(f: BinaryForm, fp: FamilyParams,
                      precision=DEFAULT_PRECISION) -> bool:
    """f irreducible and |Delta(f)| >= X^(2n-2-delta); requires Ht(f) < X.

    The comparison rounds outward: anything uncertain (including an unknown
    irreducibility verdict) is excluded.
    """
    if height(f) > fp.X:
        raise HeightExceedsCutoff("Ht(f) must be at most X")
    if is_irreducible(f) is not True:
        return False
    d = abs(discriminant(f))
    if d == 0:
        return False
    n = f.degree
    with mp.workprec(precision + 16):
        lhs = mp.log(d)
        rhs = (2 * n - 2 - mp.mpf(fp.delta)) * mp.log(mp.mpf(fp.X))
        return bool(lhs >= rhs + mp.mpf(2) ** (-precision // 2))


def kappa_constant(n: int, m: int):
    """kappa_{n,m} = n log(n(m+1) 2^((n-1)^2))
                     + (n(2n-3)-1) * (1/2) log(n(n+1))."""
    with mp.extraprec(32):
        first = n * mp.log(n * (m + 1) * mp.mpf(2) ** ((n - 1) ** 2))
        second = (n * (2 * n - 3) - 1) * mp.log(n * (n + 1)) / 2
        return first + second


def prop_bound_check(f: BinaryForm, U: BinaryForm, fp: FamilyParams,
                     precision=DEFAULT_PRECISION) -> BoundCheck:
    """Root-sum bound on the family: n log(S) - log|c| against
    n h(U) - (n+1) log X + n delta log X + kappa_{n,m}."""
    if not family_membership(f, fp, precision):
        raise HeightExceedsCutoff("f is not in the family F_delta(X)")
    n = f.degree
    m = U.degree
    ds = DivisorSpec(f, U, 1)   # w is irrelevant to the root sum
    with mp.workprec(precision + 32):
        S = norm_of_one_formula(ds, precision)
        mah, mah_err = mahler_measure_with_error(f, precision)
        lhs = n * mp.log(S) - mp.log(mah)
        logX = mp.log(mp.mpf(fp.X))
        rhs = (n * divisor_height(U) - (n + 1) * logX
               + n * mp.mpf(fp.delta) * logX + kappa_constant(n, m))
        slack = INEQ_TOLERANCE + mah_err / mah
        holds = bool(lhs <= rhs + slack)
    return BoundCheck(lhs, rhs, holds)


def vector_length_bound_check(ds: DivisorSpec, fp: FamilyParams,
                              precision=DEFAULT_PRECISION,
                              integralize_states=1200) -> BoundCheck:
    """Covariant-norm bound along the full pipeline: the divisor is turned
    into a pencil, integralized when possible (bounded search; the inequality
    is basis-independent so a NotFound only flags the output), and the
    distinguished vector is measured against the reduction covariant."""
    f = ds.f
    if not family_membership(f, fp, precision):
        raise HeightExceedsCutoff("f is not in the family F_delta(X)")
    n = f.degree
    g = ds.genus
    datum = datum_from_divisor(ds)
    p, one_bar = pencil_from_datum(datum)
    flags = []
    try:
        result = integralize(p, max_states=integralize_states)
        p_used = result.pencil
        vec = result.transport(one_bar)
        if any(Fraction(v).denominator != 1 for v in vec):
            flags.append("one_bar_not_integral")
        flags.append("integralized")
    except NotFound:
        p_used = p
        vec = one_bar
        flags.append("rational_pencil")
    H = reduction_covariant(p_used, precision)
    with mp.workprec(precision + 32):
        Hm = H.as_mp()
        v = mp.matrix([_fr_to_mp(x) for x in vec])
        q = (v.T * Hm * v)[0, 0]
        det_h, _ = gram_det_with_error(H)
        lhs = n * mp.log(q) - mp.log(det_h)
        logX = mp.log(mp.mpf(fp.X))
        kappa_n = kappa_constant(n, 2 * g - 1)
        rhs = (n * divisor_height(ds.U) - (n + 1) * logX
               + n * mp.mpf(fp.delta) * logX + kappa_n)
        holds = bool(lhs <= rhs + INEQ_TOLERANCE + n * H.error_bound)
    return BoundCheck(lhs, rhs, holds, tuple(flags))


def _fr_to_mp(x):
    x = Fraction(x)
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)
