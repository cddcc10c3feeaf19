"""Size of the conjugate of random complex matrices relative to the matrix itself."""

from nhcalc.experiments import random_experiment

for row in random_experiment([10, 25, 50], trials=10, seed=1):
    print(f"n={row['n']:>3}  ||A^c||/||A|| = {row['ratio_mean']:.3f}  (/log n: {row['ratio_over_log_n']:.3f})"
          f"  kappa/n = {row['kappa_over_n']:.3f}  ||A||/rho = {row['norm_over_rho_mean']:.3f}")
