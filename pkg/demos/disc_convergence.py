"""How the quadrature error of the conjugate shrinks with the radius of the omitted discs."""

import numpy as np

from nhcalc import convergence_study
from nhcalc.fixtures import fixture_from_blocks

fx = fixture_from_blocks([(0.5 + 0.5j, 2), (-0.6 + 0.1j, 1), (0.2 - 0.7j, 1)], np.random.default_rng(0))
eps_list = [0.1, 0.05, 0.025, 0.0125]
for mode in ("boundary_only", "with_area_centered", "with_area_offcenter"):
    res = convergence_study(fx.a, eps_list, mode, cluster_tol=1e-4)
    errors = "  ".join(f"{err:.2e}" for _, err, _ in res.rows)
    print(f"{mode:>20}: slope {res.slope:.3f}   errors {errors}")
