"""Run the ten acceptance suites and print one line per criterion.

    python3 scripts/run_acceptance.py [--seed N] [--workers W] [--json DIR]

Exit status 0 when every criterion passes, 1 otherwise.
"""

import argparse
import os
import sys
import time

from virtwist.acceptance import SUITES, criterion_10, run_suite
from virtwist.config import AcceptanceConfig
from virtwist.sampling import default_seed


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--workers", type=int, default=max(8, os.cpu_count() or 1))
    ap.add_argument("--json", help="write one report per suite into this directory")
    args = ap.parse_args()
    cfg = AcceptanceConfig(seed=args.seed if args.seed is not None else default_seed())
    serial = {}
    ok = True
    for n, (title, _) in SUITES.items():
        passed, text, secs = run_suite(n, cfg)
        serial[n] = text
        good = passed and secs < cfg.time_limit
        ok = ok and good
        print(f"[{'PASS' if good else 'FAIL'}] {n:2d}. {title} ({secs:.2f}s)")
        if args.json:
            os.makedirs(args.json, exist_ok=True)
            with open(os.path.join(args.json, f"criterion_{n:02d}.json"), "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    start = time.perf_counter()
    passed, details = criterion_10(cfg, args.workers, baseline=serial)
    secs = time.perf_counter() - start
    good = passed and secs < cfg.time_limit
    ok = ok and good
    print(f"[{'PASS' if good else 'FAIL'}] 10. byte-identical reruns under parallelism ({secs:.2f}s)"
          + ("" if passed else f" differing: {details['differing']}"))
    print(f"seed {cfg.seed}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
