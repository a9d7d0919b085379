"""Sample both asymptotic rate bounds on a tau grid and write a CSV.

    python3 scripts/rate_curve.py --step 0.01 --out results/rate_curve.csv
"""

import argparse
import os

from zfeedback.bounds import emit_curve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--step", type=float, default=0.01)
    ap.add_argument("--out", default="results/rate_curve.csv")
    args = ap.parse_args()
    n = int(round(1 / args.step))
    grid = [round(i * args.step, 10) for i in range(1, n)]
    curve = emit_curve(grid)
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    with open(args.out, "w") as fh:
        fh.write(curve.to_csv())
    print(f"{len(curve)} samples -> {args.out}")


if __name__ == "__main__":
    main()
