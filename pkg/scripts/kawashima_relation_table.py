#!/usr/bin/env python3
"""Print the symbolic and numeric sides of Kawashima's relation for small k, l, m."""

import sys

import mpmath

from kawashima import mzv
from kawashima.indices import compositions
from kawashima.relations import check_kawashima_relation, kawashima_relation_sides


def main(max_weight=3, max_m=3):
    pool = [k for w in range(1, max_weight) for k in compositions(w)]
    for k in pool:
        for l in pool:
            if sum(k) + sum(l) > max_weight:
                continue
            for m in range(1, max_m + 1):
                left, right = kawashima_relation_sides(k, l, m)
                lhs = " + ".join(f"z[{a}]z[{b}]" for a, b in left) or "0"
                r = check_kawashima_relation(k, l, m)
                print(f"k={k} l={l} m={m}: {lhs} = -z[{right}]   "
                      f"residual {mpmath.nstr(abs(r.residual), 3)} ({r.verdict})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
