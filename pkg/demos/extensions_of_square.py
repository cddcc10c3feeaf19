"""Five ways to extend x -> x^2 off the real line, applied to a 2x2 Jordan block."""

import numpy as np

from nhcalc import phi_parlett
from nhcalc.wirtinger import holo_poly, monomial, zzbar_poly

lam = 0.6 + 0.8j
block = np.array([[lam, 1], [0, lam]])
extensions = {
    "z^2": holo_poly([0, 0, 1]),
    "|z|^2": monomial(1, 1),
    "conj(z)^2": monomial(0, 2),
    "Re(z)^2": zzbar_poly([(2, 0, 0.25), (1, 1, 0.5), (0, 2, 0.25)]),
    "Re(z^2)": zzbar_poly([(2, 0, 0.5), (0, 2, 0.5)]),
}

np.set_printoptions(precision=4, suppress=True)
print(f"block eigenvalue {lam}\n")
for name, f in extensions.items():
    print(f"{name:>10}:  diagonal {phi_parlett(f, block)[0, 0]:.4f}   corner {phi_parlett(f, block)[0, 1]:.4f}")
