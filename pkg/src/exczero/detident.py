"""Determinant expansion for zero-row-sum matrices: the determinant of the
left k x k block of a k x m matrix whose rows sum to zero equals
(-1)^k times the sum over "escaping" maps f: {1..k} -> {1..m} of the
products a_{1 f(1)} ... a_{k f(k)}.

A map is admissible when f(S) is not contained in S for any nonempty
S of {1..k}; equivalently, iterating f from any start in {1..k}
eventually escapes past k (any trapped orbit ends in a cycle C with
f(C) = C)."""

from fractions import Fraction
from itertools import product

__all__ = ["is_admissible", "admissible_maps", "det_exact",
           "det_fixedpointfree_expansion"]


def is_admissible(f, k):
    """f given 0-based as a tuple of length k with values in 0..m-1."""
    for start in range(k):
        seen = set()
        i = start
        while i < k:
            if i in seen:
                return False
            seen.add(i)
            i = f[i]
    return True


def admissible_maps(k, m):
    for f in product(range(m), repeat=k):
        if is_admissible(f, k):
            yield f


def det_exact(rows):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                fac = a[i][col] * inv
                a[i] = [x - fac * y for x, y in zip(a[i], a[col])]
    return det


def det_fixedpointfree_expansion(rows):
    """Both sides of the identity for a k x m zero-row-sum matrix: the
    determinant of the left k x k block, and the signed admissible-map sum.
    Returns (lhs, rhs); the contract is lhs == rhs."""
    k = len(rows)
    m = len(rows[0])
    assert 1 <= k <= m, "need 1 <= k <= m"
    rows = [[Fraction(x) for x in row] for row in rows]
    for i, row in enumerate(rows):
        assert sum(row) == 0, f"row {i} does not sum to zero"
    lhs = det_exact([row[:k] for row in rows])
    rhs = Fraction(0)
    for f in admissible_maps(k, m):
        term = Fraction(1)
        for i in range(k):
            term *= rows[i][f[i]]
            if term == 0:
                break
        rhs += term
    rhs *= (-1) ** k
    return lhs, rhs
