#!/usr/bin/env python3
"""Residual versus grid depth for a few marginal families.

Shows how far the finite-depth swap construction gets for targets of
different shapes: the flat profile, the ramp, and a two-level step.  The
residual can only fall or stall with depth; this sweep measures which.

Usage: python3 scripts/residual_sweep.py
"""

import sys
from fractions import Fraction

from crosscut import GridParams, reconstruct
from crosscut.ingest import RawMarginal, quantize


def flat(level: Fraction) -> RawMarginal:
    return RawMarginal((Fraction(0),), (level,))


def ramp(steps: int = 256) -> RawMarginal:
    breaks = tuple(Fraction(j, steps) for j in range(steps))
    return RawMarginal(
        breaks, tuple((1 - (b + Fraction(1, steps) / 2)) / 2 for b in breaks)
    )


def two_level() -> RawMarginal:
    return RawMarginal(
        (Fraction(0), Fraction(1, 4)), (Fraction(7, 8), Fraction(1, 8))
    )


def main() -> int:
    families = [
        ("flat 1/3", flat(Fraction(1, 3)), flat(Fraction(1, 3))),
        ("ramp", ramp(), ramp()),
        ("two-level vs flat", two_level(), flat(Fraction(5, 16))),
    ]
    subres = 4
    print(f"residual |f - v|_1 after the full generation sweep (K={subres})")
    header = "family".ljust(20) + "".join(f"N={d}".rjust(12) for d in range(2, 7))
    print(header)
    for name, raw_f, raw_g in families:
        cells = [name.ljust(20)]
        for depth in range(2, 7):
            params = GridParams(depth, subres)
            fq, _ = quantize(raw_f, params)
            gq, _ = quantize(raw_g, params)
            _, summary = reconstruct(fq, gq, params)
            cells.append(f"{float(summary.final_residual):.6f}".rjust(12))
        print("".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
