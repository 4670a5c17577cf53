"""Shared generators and independent oracles for the test suite.

Oracles here must stay independent of the code paths they check: the
bivariate determinant is a direct cofactor expansion over a polynomial ring,
reducedness is checked by a vector-based Gram-Schmidt, and closed-form root
sets come from radicals, not the library root finder.
"""

from fractions import Fraction

import mpmath as mp

import pencilred as pr


# ---------------------------------------------------------------------------
# random objects

def rand_unimodular(rng, n, ops=8, coeff=3):
    """Product of integer shears and swaps; exact determinant +-1."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.sample(range(n), 2)
        kind = rng.random()
        if kind < 0.75:
            c = rng.randint(-coeff, coeff)
            if c:
                for t in range(n):
                    M[i][t] += c * M[j][t]
        elif kind < 0.9:
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [-x for x in M[i]]
    return pr.UnimodularMatrix(n, tuple(tuple(r) for r in M))


def rand_symmetric(rng, n, bound):
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = rng.randint(-bound, bound)
    return tuple(tuple(r) for r in M)


def rand_pencil(rng, n=4, bound=3, nondegenerate=True):
    while True:
        p = pr.Pencil(n, rand_symmetric(rng, n, bound),
                      rand_symmetric(rng, n, bound))
        if not nondegenerate or pr.pencil_discriminant(p) != 0:
            return p


def rand_monic_form(rng, n, bound=4):
    while True:
        coeffs = (1,) + tuple(rng.randint(-bound, bound) for _ in range(n))
        f = pr.BinaryForm(n, coeffs)
        if pr.discriminant(f) != 0:
            return f


def rand_valid_datum(rng, f, bound=2):
    """alpha = beta^2, z = 1/N(beta): always satisfies the norm equation."""
    n = f.degree
    while True:
        beta = pr.element_from_poly(f, [rng.randint(-bound, bound)
                                        for _ in range(n)])
        nb = pr.norm(beta)
        if nb != 0:
            return pr.OrbitDatum(f, beta * beta, Fraction(1) / nb)


def rand_point_divisor(rng, coef=6, beta_max=5, f0_choices=(1, 1, 1, 2)):
    """Quartic with a planted rational point (a : 1 : beta); U = x - a*y."""
    while True:
        a = rng.randint(-3, 3)
        beta = rng.randint(1, beta_max)
        f0 = rng.choice(f0_choices)
        f1, f2, f3 = (rng.randint(-coef, coef) for _ in range(3))
        f4 = beta ** 2 - (f0 * a ** 4 + f1 * a ** 3 + f2 * a ** 2 + f3 * a)
        if abs(f4) > 60:
            continue
        f = pr.BinaryForm(4, (f0, f1, f2, f3, f4))
        if pr.discriminant(f) == 0:
            continue
        return pr.DivisorSpec(f, pr.BinaryForm(1, (1, -a)), Fraction(beta))


def rand_family_instance(rng, X, delta, max_tries=4000):
    """Planted-point quartic inside F_delta(X), with its degree-1 divisor."""
    fp = pr.FamilyParams(X, delta)
    bound = int(X) - 1
    for _ in range(max_tries):
        a = rng.randint(-2, 2)
        beta = rng.randint(1, 3)
        f0 = rng.randint(1, min(bound, 5))
        f1, f2, f3 = (rng.randint(-bound, bound) for _ in range(3))
        f4 = beta ** 2 - (f0 * a ** 4 + f1 * a ** 3 + f2 * a ** 2 + f3 * a)
        if abs(f4) > bound:
            continue
        f = pr.BinaryForm(4, (f0, f1, f2, f3, f4))
        if pr.discriminant(f) == 0:
            continue
        if not pr.family_membership(f, fp, precision=96):
            continue
        return pr.DivisorSpec(f, pr.BinaryForm(1, (1, -a)), Fraction(beta)), fp
    raise AssertionError("family instance sampling failed")


def planted_gram(rng, n, s, precision=192):
    """H = g^-T diag(s^2, 1, ..., 1) g^-1 for a random unimodular g."""
    g = rand_unimodular(rng, n, ops=6)
    hinv = [list(r) for r in pr.UnimodularMatrix(n, g.entries).inverse().entries]
    with mp.workprec(precision):
        D = mp.diag([mp.mpf(s) ** 2] + [mp.mpf(1)] * (n - 1))
        Hm = mp.matrix([[mp.mpf(x) for x in row] for row in hinv]).T * D * \
            mp.matrix([[mp.mpf(x) for x in row] for row in hinv])
        return pr.GramMatrix.from_mp(Hm, mp.mpf(2) ** (-precision + 8))


# ---------------------------------------------------------------------------
# oracles

def poly_xy_mul(a, b):
    out = {}
    for (i, j), ca in a.items():
        for (k, l), cb in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def poly_xy_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v != 0}


def det_xy_oracle(p):
    """det(Ax - By) by cofactor expansion over Z[x,y]; independent of the
    interpolation route."""
    n = p.n
    entries = [[{(1, 0): p.A[i][j], (0, 1): -p.B[i][j]} for j in range(n)]
               for i in range(n)]
    entries = [[{k: v for k, v in e.items() if v != 0} for e in row]
               for row in entries]

    def det(rows):
        m = len(rows)
        if m == 1:
            return rows[0][0]
        total = {}
        for j in range(m):
            if not rows[0][j]:
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = poly_xy_mul(rows[0][j], det(minor))
            if j % 2:
                term = {k: -v for k, v in term.items()}
            for k, v in term.items():
                total[k] = total.get(k, 0) + v
        return {k: v for k, v in total.items() if v != 0}

    return det(entries)


def invariant_form_oracle(p):
    d = det_xy_oracle(p)
    n = p.n
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    coeffs = [sign * d.get((n - i, i), 0) for i in range(n + 1)]
    return pr.BinaryForm(n, tuple(coeffs))


def disc_product_oracle(factors):
    """Delta = prod_{i<j} (a_i b_j - a_j b_i)^2 for f = prod (a_i x - b_i y)."""
    out = 1
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            ai, bi = factors[i]
            aj, bj = factors[j]
            out *= (ai * bj - aj * bi) ** 2
    return out


def gram_of_basis(U, H):
    """U H U^T for integer rows U and GramMatrix H, in mp."""
    Um = mp.matrix([list(r) for r in U])
    return Um * H.as_mp() * Um.T


def is_reduced_oracle(U, G0, delta=0.99):
    """Vector-based LLL-reducedness check of the rows of U against the exact
    Fraction Gram G0 (independent of the library's Gram-only GSO)."""
    n = len(U)
    basis = [[Fraction(x) for x in row] for row in U]

    def inner(u, v):
        return sum(u[i] * Fraction(G0[i][j]) * v[j]
                   for i in range(n) for j in range(n))

    star = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        vec = list(basis[i])
        for j in range(i):
            mu[i][j] = inner(basis[i], star[j]) / inner(star[j], star[j])
            vec = [a - mu[i][j] * b for a, b in zip(vec, star[j])]
        star.append(vec)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    d = Fraction(delta)
    for k in range(1, n):
        lhs = inner(star[k], star[k])
        rhs = (d - mu[k][k - 1] ** 2) * inner(star[k - 1], star[k - 1])
        if lhs < rhs:
            return False
    return True


def mp_matrix_of(rows):
    return mp.matrix([[mp.mpf(x) if not isinstance(x, Fraction)
                       else mp.mpf(x.numerator) / mp.mpf(x.denominator)
                       for x in row] for row in rows])


def form_mul(f, g):
    """Product of two binary forms, exact."""
    n, m = f.degree, g.degree
    out = [0] * (n + m + 1)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return pr.BinaryForm(n + m, tuple(out))
