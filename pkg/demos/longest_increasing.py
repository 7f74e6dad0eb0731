"""The longest increasing subsequence law from two independent directions.

For a Poisson(alpha) number of uniform points, the length L of the longest
increasing subsequence has CDF equal to a Fredholm determinant of the
discrete Bessel kernel.  This demo computes that determinant and checks it
against direct Monte Carlo over random permutations via patience sorting,
then prints the one-point density of the associated particle system.

Usage: python3 demos/longest_increasing.py [--alpha 4.0] [--samples 20000]
"""
import argparse

import numpy as np

from detlab import fredholm, kernels
from detlab.growth import lis
from detlab.rng import stream


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alpha", type=float, default=4.0)
    ap.add_argument("--samples", type=int, default=20000)
    args = ap.parse_args()

    rng = stream(11, 0)
    sizes = rng.poisson(args.alpha, size=args.samples)
    draws = np.array([lis(rng.permutation(k) + 1) for k in sizes])

    print(f"alpha={args.alpha}: P[L <= n] exact vs {args.samples} samples")
    print(f"{'n':>3} {'exact':>10} {'empirical':>10} {'diff':>8}")
    for n in range(0, 9):
        exact = fredholm.l_alpha_cdf(args.alpha, n)
        emp = float(np.mean(draws <= n))
        print(f"{n:>3} {exact:>10.5f} {emp:>10.5f} {emp - exact:>+8.4f}")

    B = kernels.discrete_bessel(args.alpha)
    print("\none-point density of the shifted-shape particles, "
          "rho_1(x) = B(x,x):")
    for x in range(-6, 7, 2):
        print(f"  x={x:>3}: {B.evaluate(x, x):.5f}")


if __name__ == "__main__":
    main()
