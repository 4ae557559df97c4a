"""Run every acceptance bundle and print one verdict line each.

    python scripts/run_acceptance.py [--threads N]

Exit status is 0 only when every bundle passes.
"""

import argparse
import sys

from thetaquad.verify.suites import run_bundle

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    results = run_bundle("all", workers=args.threads)
    for r in results:
        print(r.line())
        for f in r.failures[:10]:
            print(f"    {f}")
    sys.exit(0 if all(r.passed for r in results) else 1)
