#!/usr/bin/env python3
"""Run a verification profile and print a per-check summary.

    python scripts/verify_desk.py [--profile quick|desk] [--jsonl out.jsonl]
"""

import argparse
import json
import sys
import time
from collections import Counter

from kawashima import EvalConfig, run_profile


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--profile", default="desk", choices=("quick", "desk"))
    ap.add_argument("--terms", type=int, default=2048)
    ap.add_argument("--jsonl", help="also write every report as a JSON line")
    args = ap.parse_args(argv)

    cfg = EvalConfig(terms=args.terms)
    counts = Counter()
    worst = {}
    sink = open(args.jsonl, "w") if args.jsonl else None
    t0 = time.perf_counter()
    for report in run_profile(args.profile, cfg):
        counts[report.name, report.verdict] += 1
        if report.kind == "numeric":
            worst[report.name] = max(worst.get(report.name, 0), abs(report.residual))
        if sink:
            sink.write(json.dumps(report.to_json()) + "\n")
    if sink:
        sink.close()

    names = sorted({n for n, _ in counts})
    print(f"{'check':28s} {'pass':>6s} {'fail':>6s}  worst residual")
    for n in names:
        w = f"{float(worst[n]):.2e}" if n in worst else "exact"
        print(f"{n:28s} {counts[n, 'pass']:6d} {counts[n, 'fail']:6d}  {w}")
    failed = sum(v for (_, verdict), v in counts.items() if verdict == "fail")
    print(f"{sum(counts.values())} checks, {failed} failed, {time.perf_counter() - t0:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
