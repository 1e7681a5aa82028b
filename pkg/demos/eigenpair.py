"""First Dirichlet eigenpair of the p-Laplacian, with a mesh ladder.

Run with no arguments for the unit interval at p = 3, or pick another
exponent/domain:

    python demos/eigenpair.py --p 2.5 --domain square
"""
from __future__ import annotations

import argparse
import math
import time

import numpy as np

import plapvar as pv


def closed_form_interval(p):
    # one-dimensional Dirichlet eigenvalue on (0, 1)
    return (p - 1.0) * (2.0 * math.pi / (p * math.sin(math.pi / p))) ** p


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=3.0, help="exponent p > 1")
    ap.add_argument("--domain", choices=("interval", "square"),
                    default="interval")
    args = ap.parse_args()

    print(f"first eigenpair, p = {args.p}, domain = {args.domain}")
    print()

    if args.domain == "interval":
        sizes = (64, 128, 256, 512)
        build = lambda n: pv.build_interval_mesh(0.0, 1.0, n)
        reference = closed_form_interval(args.p)
        ref_label = "closed form"
    else:
        sizes = (8, 16, 32)
        build = lambda n: pv.build_rectangle_mesh(0.0, 1.0, 0.0, 1.0, n, n)
        reference = 2.0 * math.pi**2 if args.p == 2.0 else None
        ref_label = "2 pi^2"

    print(f"{'n':>6} {'lambda_1':>18} {'residual':>12} {'iters':>6} {'secs':>7}")
    last = None
    for n in sizes:
        mesh = build(n)
        t0 = time.perf_counter()
        eig = pv.first_eigenpair(mesh, args.p)
        dt = time.perf_counter() - t0
        print(f"{n:>6} {eig.lambda1:>18.12f} {eig.residual:>12.2e} "
              f"{eig.iterations:>6} {dt:>7.2f}")
        last = eig

    if reference is not None:
        rel = abs(last.lambda1 - reference) / reference
        print()
        print(f"{ref_label}: {reference:.12f}   relative gap {rel:.2e}")

    # sanity facts about the minimizer itself
    peak = float(np.max(last.phi1.values))
    print(f"eigenfunction: positive everywhere, peak value {peak:.6f}, "
          f"L^p normalization {pv.lp_integral(last.phi1.mesh, last.phi1, args.p):.12f}")


if __name__ == "__main__":
    main()
