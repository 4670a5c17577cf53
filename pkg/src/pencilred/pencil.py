"""Pairs of symmetric matrices, the unimodular action, and the invariant form.

The group acts by g . (A, B) = (g^-T A g^-1, g^-T B g^-1); the invariant
binary form is f_{A,B}(x,y) = (-1)^(n(n-1)/2) det(Ax - By), computed exactly
by interpolation of integer (or rational) determinants.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import DimensionMismatch
from .forms import BinaryForm, discriminant


def _norm_entry(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class Pencil:
    n: int
    A: tuple
    B: tuple

    def __post_init__(self):
        if self.n <= 0 or self.n % 2:
            raise ValueError("n must be a positive even integer")
        A = tuple(tuple(_norm_entry(x) for x in row) for row in self.A)
        B = tuple(tuple(_norm_entry(x) for x in row) for row in self.B)
        if len(A) != self.n or len(B) != self.n or any(
                len(r) != self.n for r in A + B):
            raise DimensionMismatch("matrices must be n x n")
        if not linalg.is_symmetric(A) or not linalg.is_symmetric(B):
            raise ValueError("matrices must be exactly symmetric")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def is_integral(self):
        return all(isinstance(x, int) for row in self.A + self.B for x in row)

    def to_json_dict(self):
        return {"n": self.n,
                "A": [[str(x) for x in row] for row in self.A],
                "B": [[str(x) for x in row] for row in self.B]}

    @classmethod
    def from_json_dict(cls, d):
        def parse(rows):
            return tuple(tuple(
                Fraction(s) if "/" in str(s) else int(s) for s in row)
                for row in rows)
        return cls(int(d["n"]), parse(d["A"]), parse(d["B"]))


@dataclass(frozen=True)
class UnimodularMatrix:
    n: int
    entries: tuple
    det: int = 0

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(entries) != self.n or any(len(r) != self.n for r in entries):
            raise DimensionMismatch("matrix must be n x n")
        d = linalg.det_bareiss([list(r) for r in entries])
        if d not in (1, -1):
            raise ValueError("determinant must be +-1, got %s" % d)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "det", d)

    def inverse(self):
        rows = linalg.inverse_unimodular([list(r) for r in self.entries])
        return UnimodularMatrix(self.n, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(tuple(linalg.identity_matrix(n)[i]) for i in range(n)))


def act(g: UnimodularMatrix, p: Pencil) -> Pencil:
    """g . (A, B) = (g^-T A g^-1, g^-T B g^-1), exact."""
    if g.n != p.n:
        raise DimensionMismatch("group element and pencil dimensions differ")
    h = linalg.inverse_unimodular([list(r) for r in g.entries])
    A2 = linalg.congruent(h, [list(r) for r in p.A])
    B2 = linalg.congruent(h, [list(r) for r in p.B])
    return Pencil(p.n, tuple(tuple(r) for r in A2), tuple(tuple(r) for r in B2))


def _disc_sign(n):
    return -1 if (n * (n - 1) // 2) % 2 else 1


@lru_cache(maxsize=4096)
def invariant_form(p: Pencil) -> BinaryForm:
    """f_{A,B}(x,y) = (-1)^(n(n-1)/2) det(Ax - By), by exact interpolation.

    det(kA - B) is evaluated at n+1 integer nodes and the degree-n polynomial
    in k is recovered by Lagrange interpolation; coefficient of k^j becomes
    the coefficient of x^j y^(n-j).
    """
    n = p.n
    nodes = []
    k = 0
    while len(nodes) < n + 1:
        nodes.append(k)
        k = -k if k > 0 else -k + 1
    values = []
    for k in nodes:
        M = [[Fraction(p.A[i][j]) * k - Fraction(p.B[i][j]) for j in range(n)]
             for i in range(n)]
        values.append(linalg.det_exact(M))
    # Lagrange interpolation, exact
    coeffs = [Fraction(0)] * (n + 1)   # descending in k
    for idx, k0 in enumerate(nodes):
        # basis polynomial prod (k - kj)/(k0 - kj)
        num = [Fraction(1)]
        den = Fraction(1)
        for j, kj in enumerate(nodes):
            if j == idx:
                continue
            new = [Fraction(0)] * (len(num) + 1)
            for t, c in enumerate(num):
                new[t] += c
                new[t + 1] += c * (-kj)
            num = new
            den *= (k0 - kj)
        w = Fraction(values[idx]) / den
        off = n + 1 - len(num)
        for t, c in enumerate(num):
            coeffs[off + t] += c * w
    sign = _disc_sign(n)
    # coeffs[i] is the coefficient of k^(n-i); x^(n-i) y^i matches position i
    out = [sign * c for c in coeffs]
    return BinaryForm(n, tuple(out))


def pencil_discriminant(p: Pencil):
    """Delta(A, B) = Delta(f_{A,B}), exact."""
    return discriminant(invariant_form(p))
