"""Scan all conjecture branches and append the reports to a JSON-lines log.

    python scripts/scan_conjectures.py --n-max 5000 --log runs/scan.jsonl

Each run appends; earlier lines are never rewritten, so the log records how
the verified frontier grew.
"""

import argparse
from pathlib import Path

from thetaquad.verify.scan import append_jsonl, scan_all

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=1000)
    ap.add_argument("--log", default="runs/scan.jsonl")
    args = ap.parse_args()
    reports = scan_all(args.n_max)
    Path(args.log).parent.mkdir(parents=True, exist_ok=True)
    append_jsonl(args.log, reports, timings=True)
    failing = [r for r in reports if not r.ok]
    print(f"{len(reports)} branches scanned to n = {args.n_max}; {len(failing)} with counterexamples")
    for r in failing:
        print("  ", r.summary())
