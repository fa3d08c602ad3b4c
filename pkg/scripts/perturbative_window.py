#!/usr/bin/env python3
"""Accuracy window of the first-order geometric-phase correction.

Scans gamma for both ohmicities and prints the exact correction, the
first-order prediction, and two relative-error readings:

  on delta : |pred - exact| / |exact|          (error of the correction)
  on phi_G : |pred - exact| / |phi_u + exact|  (error of the full phase)

The two differ by the ratio delta/phi_G, which is why statements like
"below 10% at gamma = 0.1" depend on which quantity is meant.  The
acceptance battery pins the correction reading; this scan prints both
so the choice stays visible.
"""

import argparse
import math

import numpy as np

from neqbath.bath import BathConfig
from neqbath.geomphase import (
    geometric_phase,
    perturbative_correction,
    unitary_phase,
)


def scan(ohmicity, gammas, theta0, diffusion):
    phi_u = unitary_phase(theta0)
    print(f"\nohmicity n={ohmicity}  theta0={theta0:.4f}  D={diffusion}")
    print(f"{'gamma':>6} {'exact delta':>12} {'pred delta':>12} "
          f"{'err(delta)':>10} {'err(phi_G)':>10}")
    for ga in gammas:
        cfg = BathConfig(gamma=float(ga), cutoff=1.0, diffusion=diffusion,
                         phase_lambda=1.0, ohmicity=ohmicity)
        exact = geometric_phase(cfg, theta0).delta
        pred = perturbative_correction(cfg, theta0)
        err_d = abs(pred - exact) / abs(exact)
        err_p = abs(pred - exact) / abs(phi_u + exact)
        print(f"{ga:>6.2f} {exact:>12.6f} {pred:>12.6f} "
              f"{err_d:>10.4f} {err_p:>10.4f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta0", type=float, default=math.pi / 4.0)
    ap.add_argument("--diffusion", type=float, default=1.0)
    ap.add_argument("--gamma-max", type=float, default=0.3)
    ap.add_argument("--steps", type=int, default=15)
    args = ap.parse_args()

    gammas = np.linspace(args.gamma_max / args.steps, args.gamma_max,
                         args.steps)
    for n in (1, 3):
        scan(n, gammas, args.theta0, args.diffusion)


if __name__ == "__main__":
    main()
