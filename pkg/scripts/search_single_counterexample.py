"""Search for a pair where (AB)^N = B^N A^N holds but the single-condition premise fails.

Candidates are small matrices with integer entries in [-1, 1] so a hit can be
pinned verbatim as a regression case. Prints the first hit as JSON.
"""

import argparse
import json

import numpy as np

from dualmp.io import to_obj
from dualmp.laws import check_rol_single
from dualmp.matrix import DualMatrix


def candidate(rng, m, q, n):
    def part(a, b, density):
        return (rng.integers(-1, 2, size=(a, b)) * (rng.random((a, b)) < density)).astype(float)

    A = DualMatrix(part(m, q, 0.6), part(m, q, 0.4))
    B = DualMatrix(part(q, n, 0.6), part(q, n, 0.4))
    return A, B


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tries", type=int, default=20000)
    ap.add_argument("--size", type=int, default=2)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for k in range(args.tries):
        A, B = candidate(rng, args.size, args.size, args.size)
        rep = check_rol_single(A, B)
        # want a clear miss, not a borderline one
        if rep.conclusion_residual == 0.0 and rep.premise_residuals[0] > 0.1:
            print(json.dumps({"try": k, "A": to_obj(A), "B": to_obj(B), "report": rep.as_dict()}, separators=(",", ":")))
            return 0
    print("no witness found")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
