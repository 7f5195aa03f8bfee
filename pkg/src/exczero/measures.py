"""p-adic measures on Z_p^* stored on residue balls up to a maximal level,
with distribution-relation and boundedness checking, Riemann-sum integration
of <a>^s (the Gamma-transform L_p(s)), log-power moments, and vanishing-order
detection.  p is odd throughout (the logarithm pipeline excludes 2)."""

from dataclasses import dataclass, field
from fractions import Fraction

from .padic import (
    DEFAULT_PREC, PadicNumber, exp_p, from_rational, log_iwasawa, ord_p,
)

__all__ = [
    "BallMeasure", "DistributionReport", "check_distribution_and_bound",
    "dirac", "gamma_transform", "moment", "vanishing_order",
    "load_measure", "save_measure",
]


class BallMeasure:
    """values[(n, a)] = mu(a + p^n Z_p) for 1 <= n <= N, a a unit mod p^n.

    modulus = None means the values are exact rationals; modulus = m means
    they are only trusted mod p^m (the case of an irrational unit root
    approximated by a rational)."""

    def __init__(self, p, N, values, modulus=None):
        assert p % 2 == 1
        self.p = p
        self.N = N
        self.modulus = modulus
        self.values = {}
        for (n, a), v in values.items():
            assert 1 <= n <= N and a % p != 0
            self.values[(n, a % p ** n)] = Fraction(v)

    def __call__(self, n, a):
        assert 1 <= n <= self.N
        return self.values.get((n, a % self.p ** n), Fraction(0))

    def level_keys(self, n):
        p = self.p
        return [a for a in range(1, p ** n) if a % p]

    def __add__(self, other):
        assert (self.p, self.N) == (other.p, other.N)
        mod = None
        if self.modulus is not None or other.modulus is not None:
            mod = min(m for m in (self.modulus, other.modulus) if m is not None)
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BallMeasure(self.p, self.N, out, mod)

    def scale(self, t):
        return BallMeasure(self.p, self.N,
                           {k: v * Fraction(t) for k, v in self.values.items()},
                           self.modulus)


def dirac(p, N, at):
    """The Dirac measure at a unit of Z_p^* (given as a rational)."""
    at = Fraction(at)
    assert ord_p(at, p) == 0
    vals = {}
    for n in range(1, N + 1):
        m = p ** n
        r = at.numerator * pow(at.denominator, -1, m) % m
        vals[(n, r)] = Fraction(1)
    return BallMeasure(p, N, vals)


@dataclass
class DistributionReport:
    ok: bool
    bound_cert: int
    failures: list = field(default_factory=list)


def check_distribution_and_bound(mu):
    """Exhaustively verify mu(a + p^n) = sum of the p refinements (exactly,
    or mod p^modulus for approximate measures) and compute the minimal
    boundedness certificate c with ord_p(value) >= -c."""
    p = mu.p
    failures = []
    for n in range(1, mu.N):
        for a in mu.level_keys(n):
            coarse = mu(n, a)
            fine = sum(mu(n + 1, a + b * p ** n) for b in range(p))
            diff = coarse - fine
            if diff != 0:
                if mu.modulus is None or ord_p(diff, p) < mu.modulus:
                    failures.append((n, a))
    worst = 0
    for v in mu.values.values():
        if v != 0:
            worst = max(worst, -ord_p(v, p))
    return DistributionReport(not failures, worst, failures)


def _gauge_bracket(a, p, prec):
    """<a> = a / omega(a), the principal-unit part; returned as log value."""
    return log_iwasawa(Fraction(a), p, prec)


def gamma_transform(mu, s, level, prec=DEFAULT_PREC):
    """Riemann sum of <a>^s = exp_p(s log_p<a>) against mu at the given level.

    Returns (value, error_exponent).  Error analysis: for a = b mod p^level
    the integrand difference is exp(s log<a>) - exp(s log<b>) with
    ord(log<a> - log<b>) >= level, so each ball contributes an error of
    ord >= level + ord(s) - c where c is the boundedness certificate; the
    ultrametric makes the total error no worse.  s = 0 is exact."""
    p = mu.p
    assert 1 <= level <= mu.N
    if not isinstance(s, PadicNumber):
        s = from_rational(s, p, prec)
    c = check_distribution_and_bound(mu).bound_cert
    if s.is_zero:
        total = sum(mu(level, a) for a in mu.level_keys(level))
        return from_rational(total, p, prec), None
    assert s.val >= 1, "Gamma-transform needs ord(s) >= 1"
    total = from_rational(0, p, prec)
    for a in mu.level_keys(level):
        w = mu(level, a)
        if w == 0:
            continue
        bracket_pow = exp_p(s * _gauge_bracket(a, p, prec))
        total = total + bracket_pow * from_rational(w, p, prec + c)
    err_exp = level + s.val - c
    if mu.modulus is not None:
        err_exp = min(err_exp, mu.modulus - c)
    return total, err_exp


def moment(mu, k, level, prec=DEFAULT_PREC):
    """Riemann sum of (log_p<a>)^k against mu; the k-th Taylor coefficient
    of the Gamma-transform at s = 0 up to k!."""
    assert 0 <= k <= 4
    p = mu.p
    assert 1 <= level <= mu.N
    if k == 0:
        total = sum(mu(level, a) for a in mu.level_keys(level))
        return from_rational(total, p, prec)
    c = check_distribution_and_bound(mu).bound_cert
    total = from_rational(0, p, prec)
    for a in mu.level_keys(level):
        w = mu(level, a)
        if w == 0:
            continue
        lg = _gauge_bracket(a, p, prec)
        total = total + lg ** k * from_rational(w, p, prec + c)
    # the integrand varies by ord >= level + (k-1) on each ball, so the sum
    # is accurate to ord >= level + k - 1 - c (and mod p^modulus if set)
    err_exp = level + k - 1 - c
    if mu.modulus is not None:
        err_exp = min(err_exp, mu.modulus - c)
    return total.truncate_abs(min(err_exp, total.abs_prec))


def vanishing_order(mu, r_max, level, prec=DEFAULT_PREC):
    """The least k <= r_max with a provably nonzero k-th moment, together
    with the moments; r_max + 1 means all computed moments vanish at their
    precision."""
    moments = []
    for k in range(r_max + 1):
        m = moment(mu, k, level, prec)
        moments.append(m)
        if not m.is_zero:
            return k, moments
    return r_max + 1, moments


def save_measure(mu, path):
    c = check_distribution_and_bound(mu).bound_cert
    with open(path, "w") as fh:
        fh.write(f"{mu.p} {mu.N} {c}\n")
        for (n, a), v in sorted(mu.values.items()):
            fh.write(f"{n} {a} {v.numerator}/{v.denominator}\n")


def load_measure(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    p, N, _c = (int(x) for x in lines[0].split())
    vals = {}
    for ln in lines[1:]:
        n, a, frac = ln.split()
        num, _, den = frac.partition("/")
        vals[(int(n), int(a))] = Fraction(int(num), int(den or 1))
    return BallMeasure(p, N, vals)
