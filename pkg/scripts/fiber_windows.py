"""Scan the fiber parameter b of the triangular quadratic family at fixed a
and report the windows where the composed fiber map g_P has an attracting
critical orbit, with the kneading entropy of the product in each window.

    python3 scripts/fiber_windows.py --a 1.76 --lo 0.6 --hi 0.87 --steps 1000 [--csv out.csv]
"""

from __future__ import annotations

import argparse
import csv
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from knead.errors import KneadError
from knead.pipeline import MapSpec, entropy_report, numeric_kneading


def probe(a: float, max_period: int, b: float):
    try:
        res = numeric_kneading(MapSpec("triangular_quadratic", {"a": a, "b": b}), max_period=max_period)
    except (KneadError, ArithmeticError, OverflowError):
        return b, None, None
    word = res.data_y.strings()[0] if res.data_y.modality else ""
    return b, word, entropy_report(res.data_x, res.data_y).h_spectral


def windows(rows):
    """Group consecutive samples sharing one fiber word."""
    out, cur = [], None
    for b, word, h in rows:
        if word is None:
            cur = None
            continue
        if cur and cur["word"] == word:
            cur["hi"], cur["n"] = b, cur["n"] + 1
        else:
            cur = {"word": word, "lo": b, "hi": b, "n": 1, "h": h}
            out.append(cur)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=1.76)
    ap.add_argument("--lo", type=float, default=0.6)
    ap.add_argument("--hi", type=float, default=0.87)
    ap.add_argument("--steps", type=int, default=1000)
    ap.add_argument("--max-period", type=int, default=32)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--csv", help="write every sample here")
    args = ap.parse_args()

    bs = [float(b) for b in np.linspace(args.lo, args.hi, args.steps)]
    fn = partial(probe, args.a, args.max_period)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(fn, bs, chunksize=16))
    else:
        rows = [fn(b) for b in bs]

    hits = sum(1 for r in rows if r[1] is not None)
    print(f"a = {args.a}: {hits}/{len(rows)} samples with a detected fiber critical orbit")
    print(f"{'b range':<24} {'samples':>7}  {'fiber word':<20} h(T)")
    for w in windows(rows):
        span = f"[{w['lo']:.5f}, {w['hi']:.5f}]"
        print(f"{span:<24} {w['n']:>7}  {w['word'] or '(monotone)':<20} {w['h']:.6f}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["b", "fiber_word", "h_T"])
            for b, word, h in rows:
                wr.writerow([f"{b:.8g}", word or "", "" if h is None else f"{h:.10g}"])


if __name__ == "__main__":
    main()
