"""Command-line front end: ``zfeedback {bounds,simulate,verify,oracle,trace}``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds
from .channel import (FeasibilityError, greedy_adversary, iter_leaves, no_adversary,
                      random_adversary, simulate)
from .core import CodeParams, ConfigError
from .encoder import select_params
from .numerics import binomial
from .oracle import OracleLimitError, asymptotic_estimate, max_messages, outputs_disjoint

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_VERIFY_N = 16

# (delta, p, A, k, t); eps is C(delta, p) / A so that A = ceil(C / eps) exactly
SWEEP = [
    (2, 1, 5, 1, 0), (2, 1, 8, 2, 0), (3, 1, 6, 2, 0),
    (2, 1, 5, 1, 1), (2, 1, 8, 2, 1), (2, 1, 6, 3, 1), (4, 1, 6, 1, 1), (3, 1, 6, 2, 1),
    (2, 1, 7, 2, 2), (2, 1, 5, 3, 2), (3, 2, 10, 1, 2), (4, 1, 6, 2, 2), (5, 1, 7, 1, 2),
]


def stretched_instance() -> CodeParams:
    """More messages than the guarantee, still decodable: one tree reaches
    Partitioning, Weight and Uncoded."""
    return CodeParams(2, 1, Fraction(1, 4), 8, 2, 12, 1, 20, validate=False)


def builtin_sweep(max_n: int) -> list[tuple[str, CodeParams]]:
    out = []
    for delta, p, A, k, t in SWEEP:
        params = CodeParams.build(delta, p, Fraction(binomial(delta, p), A), k, t)
        if params.n <= max_n:
            out.append(("valid", params))
    extra = stretched_instance()
    if extra.n <= max_n:
        out.append(("stretched", extra))
    return out


def check_instance(params: CodeParams, limit: int = 10**6, decoder_cls=None) -> bool:
    """Every message decodes on every leaf and the output sets are disjoint."""
    kw = {} if decoder_cls is None else {"decoder_cls": decoder_cls}
    for m in range(params.M):
        for _, decoded in iter_leaves(params, m, limit, **kw):
            if decoded != m:
                return False
    if decoder_cls is not None:
        return True
    return outputs_disjoint(params, max_n=MAX_VERIFY_N)


def parse_grid(text: str) -> list[float]:
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ValueError(f"grid must be start:end:step, got {text!r}")
    if not 0 < a <= b < 1:
        raise ValueError(f"need 0 < start <= end < 1, got {a}:{b}")
    if step <= 0:
        raise ValueError("grid step must be positive")
    count = int(round((b - a) / step)) + 1
    pts = [round(a + i * step, 12) for i in range(count)]
    return [x for x in pts if x <= b + 1e-12]


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bounds(args) -> int:
    grid = parse_grid(args.grid)
    _write(bounds.emit_curve(grid).to_csv(), args.out)
    return EXIT_OK


def _adversary(name: str, seed: int):
    if name == "none":
        return no_adversary()
    if name == "greedy":
        return greedy_adversary()
    if name == "random":
        return random_adversary(seed)
    raise ValueError(f"adversary {name!r} not usable here")


def cmd_simulate(args) -> int:
    params = select_params(args.tau, args.delta, args.k)
    if not 0 <= args.message < params.M:
        raise ValueError(f"message {args.message} outside [0, {params.M})")
    print(params.describe())
    if args.adversary == "exhaustive":
        leaves = bad = 0
        for _, decoded in iter_leaves(params, args.message):
            leaves += 1
            bad += decoded != args.message
        print(f"leaves={leaves} failures={bad}")
        ok = bad == 0
    else:
        res = simulate(params, args.message, _adversary(args.adversary, args.seed))
        sys.stdout.write(res.transcript.dumps())
        print(f"decoded={res.decoded} flips={res.transcript.flips}")
        ok = res.decoded == args.message
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if not 0 <= args.max_n <= MAX_VERIFY_N:
        raise ValueError(f"--max-n must lie in [0, {MAX_VERIFY_N}]")
    passed = total = 0
    for kind, params in builtin_sweep(args.max_n):
        ok = check_instance(params)
        total += 1
        passed += ok
        print(f"{'PASS' if ok else 'FAIL'} [{kind}] {params.describe()}")
    print(f"{passed}/{total} instances passed")
    return EXIT_OK if passed == total else EXIT_FAIL


def cmd_oracle(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "t", "M", "asymptotic"])
    for n in range(1, args.max_n + 1):
        for t in range(0, min(args.max_t, n) + 1):
            w.writerow([n, t, max_messages(n, t), f"{asymptotic_estimate(n, t):.6g}"])
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_trace(args) -> int:
    params = select_params(args.tau, args.delta, args.k)
    if not 0 <= args.message < params.M:
        raise ValueError(f"message {args.message} outside [0, {params.M})")
    res = simulate(params, args.message, _adversary(args.adversary, args.seed))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "M", "n", "t", "phase"])
    for i, rec in enumerate(res.encoder.history):
        w.writerow([i, rec.M, rec.n, rec.t, rec.phase.value])
    _write(buf.getvalue(), args.out)
    return EXIT_OK if res.decoded == args.message else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zfeedback", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="lower/upper asymptotic rate curve as CSV")
    b.add_argument("--grid", default="0.05:0.95:0.05", help="start:end:step inside (0, 1)")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    def schedule(p, adversaries):
        p.add_argument("--tau", type=float, default=0.5)
        p.add_argument("--delta", type=int, default=4)
        p.add_argument("--k", type=int, default=8)
        p.add_argument("--message", type=int, default=0)
        p.add_argument("--adversary", choices=adversaries, default="none")
        p.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("simulate", help="one session with a chosen adversary")
    schedule(s, ["none", "greedy", "random", "exhaustive"])
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="exhaustive check of the built-in sweep")
    v.add_argument("--max-n", type=int, default=12)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact M(n, t) table as CSV")
    o.add_argument("--max-n", type=int, default=8)
    o.add_argument("--max-t", type=int, default=3)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    tr = sub.add_parser("trace", help="dispatch states (M, n, t, phase) of one session")
    schedule(tr, ["none", "greedy", "random"])
    tr.add_argument("--out")
    tr.set_defaults(func=cmd_trace)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"zfeedback {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FeasibilityError, OracleLimitError) as exc:
        print(f"zfeedback {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
