"""The local distributions mu_alpha = psi(x) chi_alpha(x) dx on Q_p^*
(on Q_p for alpha = 1): exact integration of ball functions, shell-sum
Mellin transforms with a rigorous tail bound, and diagonal Whittaker
values."""

from dataclasses import dataclass
from fractions import Fraction

from .balls import Ball, MultBall
from .characters import (
    AdditiveCharacterPsi, euler_factor, gauss_sum, local_L,
)
from .cyclotomic import CValue
from .padic import ord_p

__all__ = [
    "psi_ball_integral", "mu_alpha_ball", "integrate_mu_alpha",
    "unit_psi_chi_integral", "shell_integral", "mellin_mu_alpha",
    "MellinResult", "mellin_target", "whittaker_value",
]


def psi_ball_integral(ball, psi=None):
    """int over a + p^k O of psi(x) dx: p^{-k} psi(a) if k >= 0, else 0
    (psi is nontrivial on p^{-1}O/O, so deeper balls cancel exactly)."""
    psi = psi or AdditiveCharacterPsi(ball.p)
    if ball.depth < 0:
        return CValue.exact(0)
    return CValue.exact(ball.haar_measure()) * psi(ball.center)


def _is_one(alpha):
    return alpha.is_exact() and alpha.val.is_rational() \
        and alpha.val.rational_value() == 1


def mu_alpha_ball(alpha, piece, psi=None):
    """mu_alpha of a basic piece: an additive Ball (alpha = 1, or a ball of
    constant valuation) or a multiplicative coset aU^(n)."""
    alpha = CValue.lift(alpha)
    p = piece.p
    psi = psi or AdditiveCharacterPsi(p)
    if isinstance(piece, Ball):
        if _is_one(alpha):
            return psi_ball_integral(piece, psi)
        v = ord_p(piece.center, p) if piece.center != 0 else None
        assert v is not None and v < piece.depth, \
            "chi_alpha is not constant on a ball containing 0"
        return alpha ** v * psi_ball_integral(piece, psi)
    assert isinstance(piece, MultBall)
    total = CValue.exact(0)
    for b in piece.additive_pieces():
        total = total + psi_ball_integral(b, psi)
    return alpha ** piece.val * total


def integrate_mu_alpha(f, alpha, psi=None):
    """Linear extension of mu_alpha_ball over the pieces of a BallFunction."""
    alpha = CValue.lift(alpha)
    psi = psi or AdditiveCharacterPsi(f.p)
    total = CValue.exact(0)
    for piece, coeff in f.pieces:
        total = total + CValue.lift(coeff) * mu_alpha_ball(alpha, piece, psi)
    return total


def unit_psi_chi_integral(chi, a, psi=None, exact=True):
    """int over U of psi(a u) chi(u) d*u (vol(U) = 1), by a character sum at
    the minimal sufficient level (exact cyclotomic or float mode)."""
    p = chi.p
    psi = psi or AdditiveCharacterPsi(p)
    a = Fraction(a)
    m = max(chi.f, -ord_p(a, p) if a != 0 else 0, 1)
    pm = p ** m
    if not exact:
        # raw complex accumulation with the (few) chi values cached
        pf = p ** chi.f
        cache = {}
        total = 0j
        count = 0
        for u in range(1, pm):
            if u % p == 0:
                continue
            key = u % pf
            cv = cache.get(key)
            if cv is None:
                cv = chi.value_at_unit(u).to_complex()
                cache[key] = cv
            total += psi(a * u, exact=False).to_complex() * cv
            count += 1
        return CValue.from_float(total / count)
    total = CValue.exact(0)
    count = 0
    for u in range(1, pm):
        if u % p == 0:
            continue
        total = total + psi(a * u, exact=exact) * chi.value_at_unit(u)
        count += 1
    return total * Fraction(1, count)


def shell_integral(chi, alpha, n, psi=None, exact=True):
    """int over p^n U of chi(x) chi_alpha(x) psi(x) d*x."""
    alpha = CValue.lift(alpha)
    p = chi.p
    a = Fraction(p) ** n
    return (chi.t * alpha) ** n * unit_psi_chi_integral(chi, a, psi, exact)


@dataclass
class MellinResult:
    value: CValue
    tail_bound: float
    n_min: int
    n_max: int


def mellin_mu_alpha(chi, alpha, n_max=40, psi=None, exact=True):
    """Truncated shell sum for int chi d mu_alpha with dx = (1-1/q)|x| d*x.

    Shells below -(f+2) vanish exactly (the shifted unit integrals are zero
    there, tested separately); the positive tail is geometric with ratio
    |chi(p) alpha| / q < 1, and the reported bound covers it."""
    alpha = CValue.lift(alpha)
    q = chi.p
    r = (abs(chi.t.to_complex()) * abs(alpha.to_complex())) / q
    if r >= 1:
        raise ValueError("divergent: |chi(p) alpha| >= q")
    psi = psi or AdditiveCharacterPsi(q)
    n_min = -(chi.f + 2)
    total = CValue.exact(0)
    scale = Fraction(q - 1, q)
    # psi is trivial on Z_p, so the unit integral is one and the same for
    # every shell with n >= 0; hoist it out of the loop
    unit_nonneg = unit_psi_chi_integral(chi, Fraction(1), psi, exact)
    for n in range(n_min, n_max + 1):
        if n >= 0:
            unit = unit_nonneg
        else:
            unit = unit_psi_chi_integral(chi, Fraction(q) ** n, psi, exact)
        term = (chi.t * alpha) ** n * unit * scale * _q_int_pow(q, -n)
        total = total + term
    tail = float(scale) * r ** (n_max + 1) / (1 - r)
    return MellinResult(total, tail, n_min, n_max)


def _q_int_pow(q, n):
    return Fraction(q) ** n


def mellin_target(chi, alpha):
    """The closed-form target tau(chi) e(alpha, chi) L(1/2, pi_alpha x chi)."""
    return gauss_sum(chi) * euler_factor(alpha, chi) \
        * local_L(Fraction(1, 2), alpha, chi)


def whittaker_value(f, alpha, a):
    """The diagonal Whittaker value: int (a.f) d mu_alpha with
    (a.f)(x) = f(a^{-1} x)."""
    return integrate_mu_alpha(f.act(a), alpha)
