#!/usr/bin/env python3
"""Error of each F_k evaluator against an independent value as N doubles.

The reference is a high-N G-series value; plain truncation and the
extrapolated limit are tabulated side by side.
"""

import argparse

import mpmath

from kawashima import EvalConfig, kawashima
from kawashima.cli import parse_index


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--index", default="1,2")
    ap.add_argument("--z", default="0.5")
    ap.add_argument("--max-terms", type=int, default=4096)
    args = ap.parse_args(argv)

    k = parse_index(args.index)
    ref = kawashima(k, args.z, EvalConfig(terms=4 * args.max_terms, precision=192)).value
    print(f"F_{k}({args.z}) ~ {mpmath.nstr(ref, 30)}")
    print(f"{'N':>6s} {'method':>10s} {'plain':>10s} {'extrap':>10s} {'estimate':>10s}")
    N = 64
    while N <= args.max_terms:
        for method in ("g", "newton", "inductive"):
            plain = kawashima(k, args.z, EvalConfig(terms=N, extrapolation="none"), method)
            extr = kawashima(k, args.z, EvalConfig(terms=N), method)
            print(f"{N:6d} {method:>10s} {float(abs(plain.value - ref)):10.2e} "
                  f"{float(abs(extr.value - ref)):10.2e} {float(extr.error_estimate):10.2e}")
        N *= 2


if __name__ == "__main__":
    main()
