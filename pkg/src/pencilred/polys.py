"""Exact univariate polynomial helpers.

Polynomials are lists of coefficients in descending powers; entries are ints
or Fractions.  Also contains arithmetic mod a prime used by the modular
irreducibility tests.
"""

import random
from fractions import Fraction
from math import gcd, isqrt

from .linalg import det_bareiss


def ptrim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:])


def pdeg(p):
    p = ptrim(p)
    if len(p) == 1 and p[0] == 0:
        return -1
    return len(p) - 1


def padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    off = len(p) - len(q)
    for i, c in enumerate(q):
        out[off + i] += c
    return ptrim(out)


def pneg(p):
    return [-c for c in p]


def pmul(p, q):
    if pdeg(p) < 0 or pdeg(q) < 0:
        return [0]
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return ptrim(out)


def pscale(p, s):
    return ptrim([s * c for c in p])


def peval(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def pderiv(p):
    n = len(p) - 1
    if n <= 0:
        return [0]
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def pdivmod(p, q):
    """Exact division with Fraction arithmetic: p = quo*q + rem."""
    p = [Fraction(c) for c in ptrim(p)]
    q = [Fraction(c) for c in ptrim(q)]
    if pdeg(q) < 0:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    while pdeg(p) >= pdeg(q):
        shift = pdeg(p) - pdeg(q)
        coef = p[0] / q[0]
        quo[len(quo) - 1 - shift] = coef
        sub = [coef * c for c in q] + [Fraction(0)] * shift
        p = padd(p, pneg(sub))
        if pdeg(p) < 0:
            break
        p = ptrim(p)
    return ptrim(quo), ptrim(p)


def pgcd(p, q):
    """Monic gcd over the rationals."""
    a = [Fraction(c) for c in ptrim(p)]
    b = [Fraction(c) for c in ptrim(q)]
    while pdeg(b) >= 0:
        _, r = pdivmod(a, b)
        a, b = b, r
    if pdeg(a) < 0:
        return [Fraction(0)]
    return [c / a[0] for c in a]


def content(p):
    g = 0
    for c in p:
        g = gcd(g, abs(int(c)))
    return g


def primitive_part(p):
    """Integer primitive part (positive leading coefficient) of a rational poly."""
    p = ptrim(p)
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = content(ints)
    if g == 0:
        return [0]
    ints = [c // g for c in ints]
    if ints[0] < 0:
        ints = [-c for c in ints]
    return ints


def sylvester_resultant(p, q):
    """Resultant via the Sylvester matrix, exact (Bareiss on integers)."""
    p = ptrim(p)
    q = ptrim(q)
    n, m = pdeg(p), pdeg(q)
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return p[0] ** m
    if m == 0:
        return q[0] ** n
    den = 1
    for c in list(p) + list(q):
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    pi = [int(c * den) for c in p]
    qi = [int(c * den) for c in q]
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + pi + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + qi + [0] * (size - m - 1 - i))
    res = det_bareiss(rows)
    if den == 1:
        return res
    return Fraction(res, den ** size)


def _sign(x):
    return (x > 0) - (x < 0)


def _sign_changes(vals):
    signs = [_sign(v) for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p):
    chain = [[Fraction(c) for c in ptrim(p)]]
    d = pderiv(chain[0])
    if pdeg(d) >= 0:
        chain.append(d)
        while pdeg(chain[-1]) > 0:
            _, r = pdivmod(chain[-2], chain[-1])
            if pdeg(r) < 0:
                break
            chain.append(pneg(r))
    return chain


def sturm_real_root_count(p):
    """Number of distinct real roots of p, exact (Sturm over the rationals)."""
    p = ptrim(p)
    if pdeg(p) <= 0:
        return 0
    chain = sturm_chain(p)
    # signs at -inf / +inf from leading terms
    at_pos = [q[0] for q in chain]
    at_neg = [q[0] * (-1) ** pdeg(q) for q in chain]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


# ----------------------------------------------------------------------------
# arithmetic mod a prime


def pm_trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def pm_mul(a, b, p):
    if a == [0] or b == [0]:
        return [0]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return pm_trim(out)


def pm_divmod(a, b, p):
    a = pm_trim([c % p for c in a])
    b = pm_trim([c % p for c in b])
    if b == [0]:
        raise ZeroDivisionError
    binv = pow(b[0], -1, p)
    quo = [0] * max(len(a) - len(b) + 1, 1)
    a = list(a)
    while len(a) >= len(b) and a != [0]:
        if a[0] == 0:
            a = pm_trim(a)
            continue
        shift = len(a) - len(b)
        c = a[0] * binv % p
        quo[len(quo) - 1 - shift] = c
        for i in range(len(b)):
            a[i] = (a[i] - c * b[i]) % p
        a = pm_trim(a)
        if a == [0]:
            break
    return pm_trim(quo), pm_trim(a)


def pm_gcd(a, b, p):
    a = pm_trim([c % p for c in a])
    b = pm_trim([c % p for c in b])
    while b != [0]:
        _, r = pm_divmod(a, b, p)
        a, b = b, r
    if a != [0]:
        ainv = pow(a[0], -1, p)
        a = [c * ainv % p for c in a]
    return a


def pm_powmod(base, e, mod, p):
    result = [1]
    base = pm_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = pm_divmod(pm_mul(result, base, p), mod, p)[1]
        base = pm_divmod(pm_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def pm_is_irreducible(f, p):
    """Rabin irreducibility test for f mod p (f squarefree mod p assumed not)."""
    f = pm_trim([c % p for c in f])
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    finv = pow(f[0], -1, p)
    f = [c * finv % p for c in f]
    x = [1, 0]
    xq = pm_powmod(x, p ** n, f, p)
    if pm_sub(xq, x, p) != [0]:
        return False
    for q in _prime_divisors(n):
        xqk = pm_powmod(x, p ** (n // q), f, p)
        d = pm_sub(xqk, x, p)
        if pm_gcd(d, f, p) != [1]:
            return False
    return True


def pm_sub(a, b, p):
    la, lb = len(a), len(b)
    m = max(la, lb)
    a = [0] * (m - la) + list(a)
    b = [0] * (m - lb) + list(b)
    return pm_trim([(x - y) % p for x, y in zip(a, b)])


def pm_factor(f, p, rng=None):
    """Factor a squarefree monic f mod p (p odd) into monic irreducibles.

    Distinct-degree then Cantor-Zassenhaus equal-degree splitting.
    """
    if rng is None:
        rng = random.Random(0xC0FFEE)
    f = pm_trim([c % p for c in f])
    finv = pow(f[0], -1, p)
    f = [c * finv % p for c in f]
    factors = []
    rem = f
    x = [1, 0]
    d = 1
    xq = x
    while len(rem) - 1 >= 2 * d:
        xq = pm_powmod(xq, p, rem, p)
        g = pm_gcd(pm_sub(xq, x, p), rem, p)
        if g != [1]:
            factors.extend(_pm_edf(g, d, p, rng))
            rem = pm_divmod(rem, g, p)[0]
            xq = pm_divmod(xq, rem, p)[1]
        d += 1
    if len(rem) - 1 >= 1:
        factors.append(rem)
    factors.sort(key=lambda g: (len(g), g))
    return factors


def _pm_edf(f, d, p, rng):
    """Equal-degree splitting: all irreducible factors of f have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p ** d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = pm_trim(a) if pm_trim(a) != [0] else [1, 0]
        b = pm_powmod(a, exponent, f, p)
        g = pm_gcd(pm_sub(b, [1], p), f, p)
        if g != [1] and len(g) != len(f):
            return sorted(_pm_edf(g, d, p, rng) +
                          _pm_edf(pm_divmod(f, g, p)[0], d, p, rng),
                          key=lambda h: (len(h), h))


# ----------------------------------------------------------------------------
# primes

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n):
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    n = max(n + 1, 2)
    if n % 2 == 0 and n > 2:
        n += 1
    while not is_probable_prime(n):
        n += 2 if n > 2 else 1
    return n


def small_primes(count, start=3):
    out = []
    p = start - 1
    while len(out) < count:
        p = next_prime(p)
        out.append(p)
    return out


def isqrt_ceil(n):
    r = isqrt(n)
    return r if r * r == n else r + 1
