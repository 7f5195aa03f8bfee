"""The explicit extension function phi_0 attached to a continuous
homomorphism ell on Q_p^*, the 1-cocycle z_ell(a) = (1 - a)(ell * 1_O),
and the coboundary identity relating the two.

ell is either ord_p (integer-valued) or the Iwasawa logarithm (p-adic
valued).  z_ell(a) is a locally "affine in ell" function on Q_p^*: a finite
list of disjoint regions, each carrying a constant term and an ell-weight,
so the value at x is const + weight * ell(x).  This keeps the log kind
exact: log is not locally constant on valuation shells, so a plain
ball-coefficient expansion would not represent it.
"""

from dataclasses import dataclass
from fractions import Fraction

from .balls import Ball, MultBall
from .padic import DEFAULT_PREC, from_rational, log_iwasawa, ord_p

__all__ = ["EllSpec", "EllFunction", "phi0", "z_ell", "coboundary_check"]


@dataclass(frozen=True)
class EllSpec:
    """A continuous homomorphism ell: Q_p^* -> R, kind 'ord' or 'log'."""
    kind: str
    p: int
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        assert self.kind in ("ord", "log")
        if self.kind == "log":
            assert self.p != 2, "log kind needs p odd"

    def __call__(self, x):
        x = Fraction(x)
        assert x != 0
        if self.kind == "ord":
            return Fraction(ord_p(x, self.p))
        return log_iwasawa(x, self.p, self.prec)

    def zero(self):
        if self.kind == "ord":
            return Fraction(0)
        return from_rational(0, self.p, self.prec)


class EllFunction:
    """Finite sum of pieces (region, const, weight) with disjoint regions;
    the value at x is sum over regions containing x of const + weight*ell(x)."""

    def __init__(self, ell, pieces=()):
        self.ell = ell
        self.pieces = list(pieces)

    def evaluate(self, x):
        x = Fraction(x)
        assert x != 0
        total = self.ell.zero()
        for region, const, weight in self.pieces:
            if region.contains(x):
                total = total + const
                if weight != 0:
                    total = total + self.ell(x) * weight
        return total

    def __add__(self, other):
        assert self.ell == other.ell
        return EllFunction(self.ell, self.pieces + other.pieces)

    def act(self, t):
        """(t.f)(x) = f(t^{-1} x): scale regions by t and absorb the shift
        of the ell-weighted part, ell(t^{-1}x) = ell(x) - ell(t)."""
        t = Fraction(t)
        assert t != 0
        lt = self.ell(t)
        out = []
        for region, const, weight in self.pieces:
            out.append((region.scale(t), const - lt * weight, weight))
        return EllFunction(self.ell, out)

    def __repr__(self):
        return f"EllFunction({self.pieces!r})"


def phi0(g, ell):
    """The two-case section value: ell(a^2/det) if ord(a) < ord(c), else
    ell(c^2/det), with ord(0) treated as +infinity."""
    (a, b), (c, d) = [[Fraction(t) for t in row] for row in g]
    det = a * d - b * c
    assert det != 0, "singular matrix"
    p = ell.p
    oa = ord_p(a, p) if a != 0 else None
    oc = ord_p(c, p) if c != 0 else None
    a_branch = oc is None or (oa is not None and oa < oc)
    top = a if a_branch else c
    return ell(top * top / det)


def z_ell(a, ell):
    """The cocycle value z_ell(a) = (1 - a)(ell * 1_O) as an EllFunction:
    ell(a) on aO plus (or minus) ell itself on the valuation shells between
    O and aO."""
    a = Fraction(a)
    assert a != 0
    p = ell.p
    m = ord_p(a, p)
    pieces = [(Ball(p, Fraction(0), m), ell(a), 0)]
    if m >= 0:
        shells = [(MultBall(p, Fraction(p) ** k, 0), ell.zero(), Fraction(1))
                  for k in range(0, m)]
    else:
        shells = [(MultBall(p, Fraction(p) ** k, 0), ell.zero(), Fraction(-1))
                  for k in range(m, 0)]
    return EllFunction(ell, pieces + shells)


def coboundary_check(a, x, ell):
    """Both sides of the coboundary identity: lhs from phi_0 around the
    torus element diag(a,1) evaluated at the point section (x -1; 1 0),
    rhs = 2 z_ell(a)(x)."""
    a, x = Fraction(a), Fraction(x)
    assert a != 0 and x != 0
    ainv = [[1 / a, 0], [0, 1]]
    mx = [[x, -1], [1, 0]]
    ainv_mx = [[x / a, -1 / a], [1, 0]]
    lhs = (phi0(ainv_mx, ell) - phi0(ainv, ell)
           - phi0(mx, ell) + phi0([[1, 0], [0, 1]], ell))
    rhs = z_ell(a, ell).evaluate(x) * 2
    return lhs, rhs
