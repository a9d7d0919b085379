"""Exact M(n, t) next to the fixed-t asymptotic estimate and the Weight floor.

    python3 scripts/oracle_table.py --max-n 10 --max-t 3
"""

import argparse
import csv
import sys
import time

from zfeedback.oracle import asymptotic_estimate, max_messages


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-t", type=int, default=3)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "t", "M", "weight_floor", "asymptotic", "seconds"])
    for n in range(1, args.max_n + 1):
        for t in range(0, min(args.max_t, n) + 1):
            t0 = time.perf_counter()
            M = max_messages(n, t)
            w.writerow([n, t, M, n - t + 1, f"{asymptotic_estimate(n, t):.6g}",
                        f"{time.perf_counter() - t0:.3f}"])
            fh.flush()
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
