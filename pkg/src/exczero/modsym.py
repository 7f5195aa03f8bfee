"""Weight-two modular symbols for Gamma_0(N) via Manin symbols.

Symbols are indexed by P^1(Z/N); the quotient by the two- and three-term
relations is cut out with exact linear algebra, and the dual Hecke
eigensymbol of an elliptic curve is isolated as the joint eigenvector of
the transposed Hecke operators and the plus involution.  The resulting
functional lam(r) computes the normalized period of the path from infinity
to a rational r through continued-fraction convergents."""

from bisect import bisect_left
from fractions import Fraction
from math import gcd

from sympy import Matrix, SparseMatrix, eye

from .curves import ap

__all__ = ["P1", "ModularSymbolSpace", "heilbronn_matrices"]


def _gcdex(a, b):
    """(x, y, g) with a*x + b*y = g = gcd(a, b), g >= 0."""
    if b == 0:
        return (-1, 0, -a) if a < 0 else (1, 0, a)
    q, r = divmod(a, b)
    x, y, g = _gcdex(b, r)
    return y, x - y * q, g


def _lift_unit(n, d, a):
    """Lift a unit a mod d (d | n) to a unit mod n."""
    u, v = 1, n
    g = gcd(v, d)
    while g > 1:
        u *= g
        v //= g
        g = gcd(v, g)
    x, y, _ = _gcdex(u, v)
    return (u * x + a * y * v) % n


class P1:
    """Representatives for the projective line over Z/N."""

    def __init__(self, N):
        assert isinstance(N, int) and N >= 1
        self.N = N
        reps = set()
        for u in range(N):
            for v in range(N):
                r = self.reduce((u, v))
                if r is not None:
                    reps.add(r)
        self._list = sorted(reps)

    def __len__(self):
        return len(self._list)

    def __getitem__(self, i):
        return self._list[i]

    def __iter__(self):
        return iter(self._list)

    def reduce(self, pair):
        """Canonical representative, or None when gcd(u, v, N) > 1."""
        N = self.N
        u, v = pair
        u %= N
        v %= N
        if u == 0:
            return (0, 1) if gcd(N, v) == 1 else None
        _, s, g = _gcdex(N, u)
        if gcd(g, v) > 1:
            return None
        s = _lift_unit(N, N // g, s)
        u, v = g, (s * v) % N
        if g == 1:
            return 1, v
        v = min((v * t) % N for t in range(1, N, N // g) if gcd(N, t) == 1)
        return g, v

    def index(self, pair):
        r = self.reduce(pair)
        assert r is not None, "pair not coprime to the level"
        i = bisect_left(self._list, r)
        assert self._list[i] == r
        return i


def heilbronn_matrices(n):
    """Merel's set of integer matrices of determinant n driving T_n."""
    for a in range(1, n + 1):
        for d in range((n + a - 1) // a, n + 2 - a):
            bc = a * d - n
            if bc == 0:
                for b in range(a):
                    yield a, b, 0, d
                for c in range(1, d):
                    yield a, 0, c, d
            else:
                for b in range((bc - 1) // (d - 1) + 1, a):
                    if bc % b == 0:
                        yield a, b, bc // b, d


def _cf_symbols(r):
    """Bottom rows (c, d) of the unimodular matrices whose translates of
    the path from 0 to infinity chain from infinity to r."""
    r = Fraction(r)
    digits = []
    while True:
        a = r.numerator // r.denominator
        digits.append(a)
        frac = r - a
        if frac == 0:
            break
        r = 1 / frac
    syms = []
    q_prev2, q_prev = 1, 0  # q_{-2}, q_{-1}
    sign = 1                # (-1)^(k-1) for k = 0
    for a in digits:
        q = a * q_prev + q_prev2
        syms.append((q, sign * q_prev))
        q_prev2, q_prev = q_prev, q
        sign = -sign
    return syms


class ModularSymbolSpace:
    """The weight-two Manin symbol quotient for Gamma_0(N), carrying the
    dual eigensymbol of a fixed elliptic curve."""

    def __init__(self, E, max_hecke_prime=50):
        self.E = E
        self.N = E.N
        self.p1 = P1(self.N)
        self._build_quotient()
        self._build_eigensymbol(max_hecke_prime)

    # -- quotient by the two- and three-term relations -----------------------

    def _build_quotient(self):
        p1 = self.p1
        ncols = len(p1)
        entries = {}
        for row, (c, d) in enumerate(p1):
            for col in (p1.index((c, d)), p1.index((d, -c))):
                entries[(row, col)] = entries.get((row, col), 0) + 1
            for col in (p1.index((c, d)), p1.index((d, -c - d)),
                        p1.index((-c - d, c))):
                key = (row + ncols, col)
                entries[key] = entries.get(key, 0) + 1
        mat, piv = SparseMatrix(2 * ncols, ncols, entries).rref()
        self.free = tuple(j for j in range(ncols) if j not in piv)
        self.dim = len(self.free)
        rel = Matrix.zeros(self.dim, ncols)
        for e, col in enumerate(piv):
            for row, j in enumerate(self.free):
                rel[row, col] = -mat[e, j]
        for row, col in enumerate(self.free):
            rel[row, col] = 1
        self.rel_mat = rel

    def _action_matrix(self, mats):
        """Quotient matrix of the sum of right actions of 2x2 integer mats."""
        N = self.N
        ans = SparseMatrix(len(self.p1), self.dim, {})
        for col, idx in enumerate(self.free):
            c, d = self.p1[idx]
            for (a, b, cc, dd) in mats:
                c1 = (a * c + cc * d) % N
                d1 = (b * c + dd * d) % N
                if gcd(N, gcd(c1, d1)) > 1:
                    continue
                row = self.p1.index((c1, d1))
                ans[row, col] += 1
        return self.rel_mat * ans

    def hecke_matrix(self, n):
        return self._action_matrix(list(heilbronn_matrices(n)))

    def star_matrix(self):
        return self._action_matrix([(-1, 0, 0, 1)])

    # -- the dual eigensymbol ------------------------------------------------

    def _build_eigensymbol(self, max_hecke_prime):
        constraints = (self.star_matrix() - eye(self.dim)).T
        space = constraints.nullspace()
        ell = 2
        while len(space) > 1:
            assert ell <= max_hecke_prime, "eigensymbol not isolated"
            if self.N % ell != 0:
                t = (self.hecke_matrix(ell) - ap(self.E, ell) * eye(self.dim)).T
                constraints = constraints.col_join(t)
                space = constraints.nullspace()
            ell = _next_prime(ell)
        assert len(space) == 1, "no plus eigensymbol found"
        lam = space[0]
        values = [sum(_frac(lam[i]) * _frac(self.rel_mat[i, j])
                      for i in range(self.dim)) for j in range(len(self.p1))]
        # normalize: integral values of content one, positive at (1 : 0)
        denom = 1
        for v in values:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        ints = [int(v * denom) for v in values]
        content = 0
        for v in ints:
            content = gcd(content, v)
        assert content > 0, "eigensymbol vanishes identically"
        ints = [v // content for v in ints]
        base = ints[self.p1.index((1, 0))]
        assert base != 0, "eigensymbol vanishes at the path from 0 to infinity"
        if base < 0:
            ints = [-v for v in ints]
        self.lam_sym = ints

    # -- evaluation ------------------------------------------------------------

    def lam(self, r):
        """The eigensymbol paired with the path from infinity to r."""
        return sum(self.lam_sym[self.p1.index(s)] for s in _cf_symbols(r))

    def lam_zero(self):
        return self.lam_sym[self.p1.index((1, 0))]


def _frac(x):
    r = Fraction(x.p, x.q)
    return r


def _next_prime(n):
    n += 1
    while any(n % d == 0 for d in range(2, int(n ** 0.5) + 1)):
        n += 1
    return n
