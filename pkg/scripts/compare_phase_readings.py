#!/usr/bin/env python3
"""Endpoint vs pathwise phase accumulation in the ensemble average.

Two ways to read the random phase a trajectory contributes:

  endpoint  phi_j = sum_k c_k [sin(w_k t + theta_k + x_j(t)) - sin(theta_k)]
  integral  phi_j = int_0^t sum_k c_k cos(w_k s + theta_k + x_j(s)) ds

The endpoint reading's second cumulant is exactly the damping exponent
beta(t), so its ensemble average lands on exp(-beta).  The pathwise
integral carries an extra secular variance from the Stratonovich cross
term and drifts well below the analytic curve.  This script measures
both against the closed form at desk scale and prints the deviations
that motivated shipping the endpoint reading as the default.
"""

import argparse

import numpy as np

from neqbath.bath import BathConfig
from neqbath.dephasing import beta_closed
from neqbath.montecarlo import EnsembleConfig, mc_decoherence_factor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-modes", type=int, default=256)
    ap.add_argument("--n-trajectories", type=int, default=400)
    ap.add_argument("--seed", type=int, default=20240817)
    ap.add_argument("--horizon", type=float, default=6.0)
    args = ap.parse_args()

    cfg = BathConfig(gamma=0.5, cutoff=1.0, diffusion=0.1, phase_lambda=1.0)
    ens = EnsembleConfig(n_modes=args.n_modes,
                         n_trajectories=args.n_trajectories,
                         seed=args.seed, dt=0.005, horizon=args.horizon)

    analytic = None
    print(f"K={ens.n_modes} M={ens.n_trajectories} dt={ens.dt} "
          f"T={ens.horizon} seed={ens.seed}")
    print(f"{'reading':<10} {'max|dev|':>10} {'dev@T':>10} {'mean stderr':>12}")
    for model in ("endpoint", "integral"):
        mc = mc_decoherence_factor(cfg, ens, phase_model=model)
        if analytic is None:
            analytic = np.exp(-beta_closed(mc.times, cfg))
        dev = np.abs(mc.estimates) - analytic
        print(f"{model:<10} {np.max(np.abs(dev)):>10.4f} "
              f"{dev[-1]:>10.4f} {np.mean(mc.stderr):>12.4f}")
    print("\nendpoint deviation should sit at the stderr scale; the")
    print("integral reading is retained only as a comparison mode.")


if __name__ == "__main__":
    main()
