#!/usr/bin/env python3
"""Run all verification campaigns and print one summary line each.

Usage:
    python scripts/run_verifications.py [--quick] [--workers N]

--quick shrinks the exhaustive bounds for a fast smoke run.
"""

from __future__ import annotations

import argparse
import json
import sys

from matchpow.harness import (
    verify_lemma22,
    verify_lemma31,
    verify_thm11_exhaustive,
    verify_thm11_random,
    verify_thm34_exhaustive,
    verify_thm34_random,
    worker_count,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller exhaustive bounds")
    parser.add_argument("--workers", type=int, default=None)
    args = parser.parse_args()
    workers = worker_count(args.workers)
    n11 = 5 if args.quick else 7
    n34 = 5 if args.quick else 6

    failures = 0

    s = verify_thm11_exhaustive(max_n=n11, workers=workers)
    ok = not s["failures"]
    failures += not ok
    print(f"[{'ok' if ok else 'FAIL'}] exchange/exhaustive: "
          f"{s['graphs_checked']} graphs, {s['elapsed_s']}s")

    s = verify_thm11_random(trials=100 if args.quick else 500, max_n=9, seed=42)
    ok = not s["failures"]
    failures += not ok
    print(f"[{'ok' if ok else 'FAIL'}] exchange/random: {s['trials']} trials, {s['elapsed_s']}s")

    s = verify_thm34_exhaustive(max_n=n34, max_weight=3, workers=workers)
    ok = (
        s["disagreement_count"] == 0
        and not s["low_power_violations"]
        and not s["constant_degree_violations"]
    )
    failures += not ok
    print(f"[{'ok' if ok else 'FAIL'}] forest equivalence/exhaustive: "
          f"{s['instances']} instances, {s['low_power_checked']} lower powers, {s['elapsed_s']}s")
    if not ok:
        print(json.dumps(s["disagreements"][:3], indent=2))

    s = verify_thm34_random(trials=100, seed=1)
    ok = not s["disagreements"]
    failures += not ok
    print(f"[{'ok' if ok else 'FAIL'}] forest equivalence/random: "
          f"{s['trials']} trials, {s['elapsed_s']}s")

    s = verify_lemma22(pairs=50, seed=7)
    ok = not s["failures"]
    failures += not ok
    print(f"[{'ok' if ok else 'FAIL'}] Betti monotonicity: {s['pairs']} pairs, {s['elapsed_s']}s")

    s = verify_lemma31(max_n=n34)
    ok = not s["mismatches"]
    failures += not ok
    print(f"[{'ok' if ok else 'FAIL'}] pendant criterion: "
          f"{s['configurations_checked']} configurations, {s['elapsed_s']}s")

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
