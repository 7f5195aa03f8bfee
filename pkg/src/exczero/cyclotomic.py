"""Exact cyclotomic numbers and the dual exact/float scalar type CValue.

Gauss-sum identities are checked exactly in Q(zeta_M); irrational parameters
like sqrt(q) force complex floats, where every comparison carries a
tolerance.
"""

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = ["Cyclotomic", "CValue", "zeta", "FLOAT_TOL"]

FLOAT_TOL = 1e-9


@lru_cache(maxsize=None)
def cyclotomic_poly(M):
    """Integer coefficient tuple (low to high) of the M-th cyclotomic polynomial."""
    # x^M - 1 divided by all lower-level cyclotomic polynomials
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _polydiv_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert all(c == 0 for c in num[:len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _euler_phi(M):
    return len(cyclotomic_poly(M)) - 1


class Cyclotomic:
    """Element of Q(zeta_M) in the power basis 1, z, ..., z^(phi(M)-1)."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level, coeffs):
        d = _euler_phi(level)
        coeffs = list(coeffs)
        if len(coeffs) > d:
            coeffs = _reduce_mod_phi(coeffs, level)
        coeffs += [Fraction(0)] * (d - len(coeffs))
        self.level = level
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def from_rational(cls, x, level=1):
        return cls(level, [Fraction(x)])

    def raise_level(self, L):
        """Rewrite in Q(zeta_L) for a multiple L of the level (z -> z^(L/M))."""
        assert L % self.level == 0
        k = L // self.level
        out = [Fraction(0)] * (_euler_phi(self.level) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] += c
        return Cyclotomic(L, out)

    def _match(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other, 1)
        L = self.level * other.level // gcd(self.level, other.level)
        return self.raise_level(L), other.raise_level(L)

    def __add__(self, other):
        a, b = self._match(other)
        return Cyclotomic(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.level, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._match(other)
        return Cyclotomic(a.level, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        a, b = self._match(other)
        out = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y != 0:
                    out[i + j] += x * y
        return Cyclotomic(a.level, out)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse by exact linear solve against the multiplication matrix."""
        d = _euler_phi(self.level)
        cols = []
        basis = Cyclotomic(self.level, [0])
        for j in range(d):
            e = [Fraction(0)] * d
            e[j] = Fraction(1)
            col = (self * Cyclotomic(self.level, e)).coeffs
            cols.append(list(col))
        # solve M x = e_0
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
        x = _solve_exact(mat, rhs)
        if x is None:
            raise ZeroDivisionError("zero cyclotomic element")
        return Cyclotomic(self.level, x)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._match(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        assert self.is_rational()
        return self.coeffs[0]

    def to_complex(self):
        z = cmath.exp(2j * cmath.pi / self.level)
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self.level}, {[str(c) for c in self.coeffs]})"


def _reduce_mod_phi(coeffs, level):
    phi = cyclotomic_poly(level)
    d = len(phi) - 1
    coeffs = [Fraction(c) for c in coeffs]
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        for j in range(d + 1):
            coeffs[i - d + j] -= c * phi[j]
    return coeffs[:d]


def _solve_exact(mat, rhs):
    """Gaussian elimination over Fractions; returns None if singular."""
    n = len(mat)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def zeta(M, k=1):
    """zeta_M^k as an exact CValue."""
    k %= M
    e = [Fraction(0)] * (k + 1)
    e[k] = Fraction(1)
    return CValue.exact(Cyclotomic(M, e))


class CValue:
    """A complex scalar, either exact cyclotomic or a float with tolerance."""

    __slots__ = ("mode", "val")

    def __init__(self, mode, val):
        self.mode = mode
        self.val = val

    @classmethod
    def exact(cls, x):
        if isinstance(x, (int, Fraction)):
            x = Cyclotomic.from_rational(x)
        return cls("exact", x)

    @classmethod
    def from_float(cls, z):
        return cls("float", complex(z))

    @classmethod
    def lift(cls, x):
        if isinstance(x, CValue):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.exact(x)
        if isinstance(x, Cyclotomic):
            return cls("exact", x)
        return cls.from_float(x)

    def to_complex(self):
        return self.val.to_complex() if self.mode == "exact" else self.val

    def is_exact(self):
        return self.mode == "exact"

    def _pair(self, other):
        other = CValue.lift(other)
        if self.mode == "exact" and other.mode == "exact":
            return "exact", self.val, other.val
        return "float", self.to_complex(), other.to_complex()

    def __add__(self, other):
        m, a, b = self._pair(other)
        return CValue(m, a + b)

    __radd__ = __add__

    def __neg__(self):
        return CValue(self.mode, -self.val)

    def __sub__(self, other):
        m, a, b = self._pair(other)
        return CValue(m, a - b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        m, a, b = self._pair(other)
        return CValue(m, a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        m, a, b = self._pair(other)
        if m == "exact":
            return CValue(m, a * b.inverse())
        return CValue(m, a / b)

    def __rtruediv__(self, other):
        return CValue.lift(other) / self

    def __pow__(self, k):
        assert isinstance(k, int)
        if k < 0:
            return (CValue.exact(1) / self) ** (-k)
        out = CValue.exact(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        m, a, b = self._pair(other)
        if m == "exact":
            return a == b
        raise TypeError("float-mode CValues must be compared with .close()")

    def __hash__(self):
        if self.mode == "exact":
            return hash(self.val)
        raise TypeError("float CValue not hashable")

    def close(self, other, tol=FLOAT_TOL):
        return abs(self.to_complex() - CValue.lift(other).to_complex()) <= tol

    def abs2(self):
        z = self.to_complex()
        return z.real * z.real + z.imag * z.imag

    def rational_value(self):
        assert self.mode == "exact" and self.val.is_rational()
        return self.val.rational_value()

    def __repr__(self):
        if self.mode == "exact":
            if self.val.is_rational():
                return f"CValue({self.val.rational_value()})"
            return f"CValue({self.val!r})"
        return f"CValue({self.val:.12g})"
