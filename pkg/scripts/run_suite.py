"""Run the acceptance suite and write a JSON report next to the console summary.

    python scripts/run_suite.py --scale 0.1 --out suite.json

Equivalent to ``dualmp suite`` plus a saved report with per-criterion timings.
"""

import argparse
import json
import sys

from dualmp.suite import SuiteConfig, run_suite, summary_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scale", type=float, default=1.0, help="fraction of the full corpus sizes")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    ap.add_argument("--out", help="write the JSON report here")
    args = ap.parse_args()

    cfg = SuiteConfig(seed=args.seed, scale=args.scale, workers=args.workers)

    def progress(r):
        print(r.line(), file=sys.stderr, flush=True)

    results = run_suite(cfg, set(args.only) if args.only else None, progress=progress)
    print(summary_table(results, timings=True), end="")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump([r.as_dict(timings=True) for r in results], fh, indent=2)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
