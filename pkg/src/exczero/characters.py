"""Quasicharacters of Q_p^*, the additive character psi, Gauss sums, the
closed-form Mellin integral, local L-factors, and the Euler factors e(alpha, chi)."""

import cmath
from fractions import Fraction

from .cyclotomic import CValue, zeta
from .padic import ord_p

__all__ = [
    "AdditiveCharacterPsi", "Quasicharacter", "gauss_sum",
    "mellin_closed_form", "euler_factor", "local_L",
    "trivial_character", "character_from_log", "all_primitive_characters",
    "legendre_character", "primitive_root",
]


class AdditiveCharacterPsi:
    """The standard additive character of Q_p, trivial exactly on Z_p.

    psi(x) = e(2*pi*i*fr(x)) where fr(x) is the p-power fractional part.
    """

    def __init__(self, p):
        self.p = p

    def __call__(self, x, exact=True):
        x = Fraction(x)
        p = self.p
        den = x.denominator
        k = 0
        while den % p == 0:
            den //= p
            k += 1
        if k == 0:
            return CValue.exact(1)
        # x = a / (p^k * m) with gcd(m, p) = 1; the class of x in Q_p/Z_p
        # is b / p^k with b = a * m^{-1} mod p^k
        a = x.numerator
        m = den
        b = a * pow(m, -1, p ** k) % p ** k
        if not exact:
            return CValue.from_float(cmath.exp(2j * cmath.pi * b / p ** k))
        return zeta(p ** k, b)


def primitive_root(p, f):
    """A generator of (Z/p^f)^* for odd p."""
    assert p % 2 == 1 and f >= 1
    q = p ** f
    order = q - q // p
    # any g that is primitive mod p^2 is primitive mod all powers
    for g in range(2, p ** min(f, 2) + 1):
        if g % p == 0:
            continue
        if _mult_order(g, p) == p - 1 and (f == 1 or _mult_order(g, p * p) == p * (p - 1)):
            assert pow(g, order, q) == 1
            return g
    raise AssertionError("no primitive root found")


def _mult_order(g, m):
    x, k = g % m, 1
    while x != 1:
        x = x * g % m
        k += 1
    return k


class Quasicharacter:
    """A character of Q_p^*: value t at p plus a finite table on units.

    The unit table is stored at the true conductor p^f (primitive by
    construction); f = 0 means unramified.
    """

    def __init__(self, p, t, f, unit_table=None):
        self.p = p
        self.t = CValue.lift(t)
        table = dict(unit_table or {})
        f, table = _primitivize(p, f, table)
        self.f = f
        self.unit_table = table

    def value_at_unit(self, u):
        """chi(u) for a p-adic unit u (rational, prime-to-p denominator)."""
        if self.f == 0:
            return CValue.exact(1)
        m = self.p ** self.f
        u = Fraction(u)
        r = u.numerator * pow(u.denominator, -1, m) % m
        return self.unit_table[r]

    def __call__(self, x):
        x = Fraction(x)
        assert x != 0
        v = ord_p(x, self.p)
        return self.t ** v * self.value_at_unit(x / Fraction(self.p) ** v)

    def inverse(self):
        table = {u: CValue.exact(1) / c for u, c in self.unit_table.items()}
        return Quasicharacter(self.p, CValue.exact(1) / self.t, self.f, table)

    def at_minus_one(self):
        return self.value_at_unit(-1)

    def is_unramified(self):
        return self.f == 0

    def __repr__(self):
        return f"Quasicharacter(p={self.p}, f={self.f}, t={self.t!r})"


def _primitivize(p, f, table):
    """Drop the conductor exponent while the table factors through a lower level."""
    while f >= 1:
        if f == 1:
            if all(v == CValue.exact(1) for v in table.values()):
                return 0, {}
            return f, table
        lower = p ** (f - 1)
        grouped = {}
        for u, v in table.items():
            grouped.setdefault(u % lower, []).append(v)
        if any(any(not (v == vs[0]) for v in vs[1:]) for vs in grouped.values()):
            return f, table
        table = {u: vs[0] for u, vs in grouped.items()}
        f -= 1
    return f, table


def trivial_character(p, t=1):
    return Quasicharacter(p, CValue.lift(t), 0)


def character_from_log(p, f, k, t=1):
    """The character of conductor dividing p^f sending a fixed primitive root
    g to zeta_phi^k, extended by chi(p) = t."""
    assert f >= 1 and p % 2 == 1
    q = p ** f
    phi = q - q // p
    g = primitive_root(p, f)
    table = {}
    x = 1
    for j in range(phi):
        table[x] = zeta(phi, (k * j) % phi)
        x = x * g % q
    return Quasicharacter(p, t, f, table)


def all_primitive_characters(p, f, t=1):
    """All characters of conductor exactly p^f (odd p)."""
    assert f >= 1
    q = p ** f
    phi = q - q // p
    out = []
    for k in range(phi):
        chi = character_from_log(p, f, k, t)
        if chi.f == f:
            out.append(chi)
    return out


def legendre_character(p, t=1):
    """The quadratic character mod p."""
    return character_from_log(p, 1, (p - 1) // 2, t)


def gauss_sum(chi, psi=None, exact=True):
    """tau(chi) = sum over unit residues u mod p^f of psi(u/p^f) chi(u/p^f).

    Normalized so that tau of an unramified character is 1.
    """
    p = chi.p
    if psi is None:
        psi = AdditiveCharacterPsi(p)
    if chi.f == 0:
        return CValue.exact(1)
    q = p ** chi.f
    a = Fraction(1, q)  # ord(a) = -f
    total = CValue.exact(0)
    for u in range(1, q):
        if u % p == 0:
            continue
        total = total + psi(a * u, exact=exact) * chi.value_at_unit(u)
    return total * chi.t ** (-chi.f)


def mellin_closed_form(chi):
    """The closed form of the full Mellin integral of psi against chi:

    (1 - t^{-1}) / (1 - t/q) for unramified chi, tau(chi) for ramified chi.
    Requires |t| < q for convergence.
    """
    q = chi.p
    t = chi.t
    if abs(t.to_complex()) >= q:
        raise ValueError("divergent: |chi(p)| >= q")
    if chi.f > 0:
        return gauss_sum(chi)
    one = CValue.exact(1)
    return (one - one / t) / (one - t * Fraction(1, q))


def euler_factor(alpha, chi):
    """The interpolation factor e(alpha, chi) for an ordinary parameter alpha."""
    alpha = CValue.lift(alpha)
    one = CValue.exact(1)
    if chi.f > 0:
        return alpha ** (-chi.f)
    t = chi.t
    if _is_pm_one(alpha):
        return one - alpha * (one / t)
    return (one - t / alpha) * (one - one / (alpha * t))


def local_L(s, alpha, chi):
    """The local L-factor L(s, pi_alpha x chi): trivial for ramified chi, one
    geometric factor in the special case, two in the spherical case."""
    if chi.f > 0:
        return CValue.exact(1)
    alpha = CValue.lift(alpha)
    q = chi.p
    t = chi.t
    one = CValue.exact(1)
    s = Fraction(s)
    if _is_pm_one(alpha):
        return one / (one - t * alpha * _q_power(q, -(s + Fraction(1, 2))))
    f1 = one - t * (one / alpha) * _q_power(q, -(s - Fraction(1, 2)))
    f2 = one - t * alpha * _q_power(q, -(s + Fraction(1, 2)))
    return one / (f1 * f2)


def _q_power(q, e):
    e = Fraction(e)
    if e.denominator == 1:
        return CValue.exact(Fraction(q) ** e.numerator)
    return CValue.from_float(float(q) ** float(e))


def _is_pm_one(alpha):
    if not alpha.is_exact():
        return False
    v = alpha.val
    return v.is_rational() and v.rational_value() in (1, -1)
