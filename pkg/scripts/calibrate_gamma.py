#!/usr/bin/env python3
"""Scan the free net cavity rate Gamma and report the figure features.

Usage: python scripts/calibrate_gamma.py [--min -1.0] [--max 0.5] [--points 31]
(Gamma given as Gamma/2pi in MHz.)
"""

import argparse
import math

import numpy as np

from magnomech.calibration import (
    best_gamma_gain,
    phase_features,
    scan_gamma_gain,
    squeezing_features,
    temperature_features,
)
from magnomech.model import mhz, to_mhz
from magnomech.sweep import preset, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min", type=float, default=-0.5)
    ap.add_argument("--max", type=float, default=0.5)
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--features", action="store_true", help="also print figure features per Gamma")
    args = ap.parse_args()

    grid = [mhz(v) for v in np.linspace(args.min, args.max, args.points)]
    scan = scan_gamma_gain(grid)
    print("gamma/2pi [MHz]  fully_stable  E_N,am(theta=0.44pi)")
    for p in scan:
        print(f"{to_mhz(p.gamma_gain):+.4f}        {str(p.fully_stable):5}        {p.en_am_at_optimum:.6g}")
    best = best_gamma_gain(scan)
    if best is None:
        print("no fully stable Gamma in range")
    else:
        print(f"best: Gamma/2pi = {to_mhz(best.gamma_gain):+.6f} MHz, E_N,am = {best.en_am_at_optimum:.6g}")

    if args.features:
        for p in scan:
            if not p.fully_stable:
                continue
            gam = p.gamma_gain
            f2 = phase_features(run_sweep(preset("fig2", gam)), "en_am", mhz(3.5))
            r3 = run_sweep(preset("fig3", gam))
            f3a = squeezing_features(r3, "en_am", mhz(3.5))
            f3b = squeezing_features(r3, "en_bm", mhz(4.7))
            f4 = temperature_features(run_sweep(preset("fig4", gam)), "en_am")
            f5 = temperature_features(run_sweep(preset("fig5", gam)), "en_bm")
            print(f"\nGamma/2pi = {to_mhz(gam):+.4f} MHz")
            print(f"  fig2 am: {f2}")
            print(f"  fig3 am: {f3a}")
            print(f"  fig3 bm: {f3b}")
            for label, f in (("fig4 am", f4), ("fig5 bm", f5)):
                for cv, v in f.items():
                    print(f"  {label} chi={cv / mhz(10):.2f} omega_b: {v}")
            if math.isnan(p.en_am_at_optimum):
                print("  (objective undefined)")


if __name__ == "__main__":
    main()
