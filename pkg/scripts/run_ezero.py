#!/usr/bin/env python3
"""Reproduce the exceptional-zero check for 11a1 at p = 11 at several levels,
printing the first log-moment against the Tate-period L-invariant."""

import argparse
import time

from exczero.curves import EllipticCurve, l_invariant, tate_period
from exczero.pipeline import exceptional_zero_report

E11 = EllipticCurve("11a1", 11, 0, -1, 1, -10, -20)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-level", type=int, default=4)
    ap.add_argument("--prec", type=int, default=12)
    args = ap.parse_args()

    q = tate_period(E11, 11, args.prec)
    print(f"tate period: {q}  (ord = {q.val})")
    print(f"l-invariant: {l_invariant(E11, 11, args.prec)}")
    for level in range(1, args.max_level + 1):
        t0 = time.time()
        rep = exceptional_zero_report(E11, 11, level, args.prec)
        print(f"level {level}: L_p(0) = {rep.total_mass}, "
              f"moment1/lam(0) = {rep.moment1_ratio}, "
              f"ok = {rep.ok}  [{time.time() - t0:.2f}s]")


if __name__ == "__main__":
    main()
