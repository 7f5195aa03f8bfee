"""Local and tree-theoretic machinery for p-adic L-functions of elliptic
curves over Q, ending in a desk-scale exceptional-zero verification."""

__version__ = "0.1.0"
