"""abs(A) and the commuting polar factor for an upper triangular 2x2 matrix."""

import numpy as np

from nhcalc import abs_matrix, polar_representation

np.set_printoptions(precision=4, suppress=True)
for alpha, beta, gamma in ((1 + 1j, 2 - 1j, 0.7), (1 + 1j, 1 + 1j, 0.7)):
    a = np.array([[alpha, gamma], [0, beta]])
    parts = polar_representation(a)
    print(f"A = [[{alpha}, {gamma}], [0, {beta}]]")
    print("abs(A) =\n", parts.abs_part)
    print("V =\n", parts.v_part)
    print("||abs(A) V - A|| =", f"{np.linalg.norm(parts.abs_part @ parts.v_part - a, 2):.1e}")
    print("abs(abs(A)) == abs(A):", np.allclose(abs_matrix(parts.abs_part), parts.abs_part), "\n")
