"""The conjugate agrees with the adjoint on normal matrices and forgets Jordan structure otherwise."""

import numpy as np

from nhcalc import bounds_report, conjugate
from nhcalc.fixtures import nilpotent_chain_example, random_normal

rng = np.random.default_rng(0)
normal = random_normal(4, rng)
print("normal:    ||A^c - A^H|| =", f"{np.linalg.norm(conjugate(normal) - normal.conj().T, 2):.2e}")

lam = 0.1 + 0.05j
chain = nilpotent_chain_example(lam, 4, coupled=True)
tol = 1e-8 * abs(lam)
bc = conjugate(chain, cluster_tol=tol)
bcc = conjugate(bc, cluster_tol=tol)
print("chain:     ||B|| =", f"{np.linalg.norm(chain, 2):.3f}",
      " ||B^c|| =", f"{np.linalg.norm(bc, 2):.3f}",
      " ||B^cc|| =", f"{np.linalg.norm(bcc, 2):.1f}")

report = bounds_report(chain, tol)
print("bounds:    lower", f"{report['spectral']['lower']:.3f}",
      " triangular", f"{report['triangular']:.3g}",
      " sampled", f"{report['von_neumann']['value']:.3g}")
