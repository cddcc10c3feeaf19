"""
Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or through pytest; the
lines are repeated in the terminal summary under "acceptance criteria".
"""

import math
import time

import numpy as np
import pytest

from conftest import record_acceptance
from nhcalc.calculus import divided_differences, phi_hermite, phi_parlett
from nhcalc.cauchy_green import (
    DiscSet,
    convergence_study,
    disc_omission_error,
    phi_integral,
    pompeiu_scalar,
)
from nhcalc.conjugate import (
    bound_interpolation_diag,
    bound_spectral,
    bound_triangular,
    bound_von_neumann,
    conjugate,
    conjugating_polynomial,
    polar_representation,
)
from nhcalc.experiments import random_experiment
from nhcalc.fixtures import companion, nilpotent_chain_example, random_normal, random_unitary
from nhcalc.linalg import Spectrum, eigen_structure, operator_norm, schur_decompose
from nhcalc.wirtinger import abs_fn, holo_poly, monomial, tau, zzbar_poly
from oracles import (
    block_triangular_conjugate,
    chain_conjugates,
    chain_polynomial,
    companion_conjugate,
    disc_omission_closed_form,
    extension_examples,
    polar_two_by_two,
    rank_one_conjugate,
    tau_double_and_simple,
    tau_split_pair,
    two_by_two_corner,
)
from suite import TOL, jordan_suite, random_suite, rel_err, study_fixture

EXACT = 1e-8


class Tally:
    """Collects named sub-checks and turns them into one report line."""

    def __init__(self, number: int):
        self.number = number
        self.failed: list[str] = []
        self.count = 0
        self.start = time.perf_counter()

    def check(self, name: str, ok: bool, info: str = "") -> None:
        self.count += 1
        if not ok:
            self.failed.append(f"{name} ({info})" if info else name)

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def finish(self, summary: str, budget: float) -> None:
        self.check("runtime", self.elapsed < budget, f"{self.elapsed:.1f}s >= {budget:.0f}s")
        passed = not self.failed
        detail = f"{summary}; {self.count} checks, {self.elapsed:.1f}s"
        if not passed:
            detail += "; failed: " + ", ".join(self.failed)
        record_acceptance(self.number, passed, detail)
        print(f"criterion {self.number}: {'PASS' if passed else 'FAIL'}  {detail}")
        assert passed, detail


def scale(x) -> float:
    return max(1.0, float(np.linalg.norm(x, 2)))


# 1. axioms -----------------------------------------------------------------------------

def test_criterion_1_axiom_suite():
    tally = Tally(1)
    fixtures = random_suite(200, seed=2024, sizes=range(2, 9))
    rng = np.random.default_rng(99)
    worst_iv = 0.0
    for idx, fx in enumerate(fixtures):
        a, n = fx.a, fx.a.shape[0]
        ac = conjugate(a, cluster_tol=TOL)
        j = idx % n
        unit = np.zeros((n, n))
        unit[j, j] = 1
        tally.check(f"(i)#{idx}", np.array_equal(conjugate(unit), unit))

        alpha = complex(*rng.uniform(-3, 3, 2))
        lhs = conjugate(alpha * a, cluster_tol=TOL * abs(alpha))
        tally.check(f"(ii)#{idx}", rel_err(lhs, np.conj(alpha) * ac) <= EXACT * scale(ac))

        t = np.eye(n) + 0.4 * random_unitary(n, rng)
        tinv = np.linalg.inv(t)
        lhs = conjugate(t @ a @ tinv, cluster_tol=TOL)
        err = rel_err(lhs, t @ ac @ tinv)
        tally.check(f"(iii)#{idx}", err <= 1e-7 * np.linalg.cond(t) * scale(ac), f"{err:.1e}")

        b = 0.3 * a @ a - 0.5j * a + 0.2 * np.eye(n)
        bc = conjugate(b, cluster_tol=TOL)
        err = rel_err(conjugate(a + b, cluster_tol=TOL), ac + bc)
        worst_iv = max(worst_iv, err)
        tally.check(f"(iv)#{idx}", err <= 1e-6 * scale(ac + bc), f"{err:.1e}")

        q = a @ a @ a - 2 * a + 1j * np.eye(n)
        comm = np.linalg.norm(ac @ q - q @ ac, 2)
        tally.check(f"(v)#{idx}", comm <= EXACT * scale(ac) * scale(q), f"{comm:.1e}")

        err = rel_err(conjugate(ac, cluster_tol=TOL), a)
        if fx.diagonalizable:
            tally.check(f"(vi)diag#{idx}", err <= EXACT, f"{err:.1e}")
        else:
            tally.check(f"(vi)defective#{idx}", err >= 1e-3, f"{err:.1e}")

    # the coupled chain: B^cc = (lam / conj(lam)) B^c and grows past ||B||
    for lam in (0.2 + 0.1j, 0.05j):
        b = nilpotent_chain_example(lam, 4, coupled=True)
        bc = conjugate(b, cluster_tol=TOL * abs(lam))
        bcc = conjugate(bc, cluster_tol=TOL * abs(lam))
        tally.check(f"(vi)chain{lam}", rel_err(bcc, lam / np.conj(lam) * bc) <= EXACT)
        tally.check(f"(vi)growth{lam}", operator_norm(bcc) > 10 * operator_norm(b))

    n_def = sum(not fx.diagonalizable for fx in fixtures)
    tally.finish(f"{len(fixtures)} fixtures ({n_def} defective), worst (iv) {worst_iv:.1e}", 60)


# 2. cross-method agreement -------------------------------------------------------------

ACCEPT_FUNCTIONS = {
    "tau": tau(),
    "|z|^2": monomial(1, 1),
    "conj(z)^2": monomial(0, 2),
    "z^2": holo_poly([0, 0, 1]),
}


def test_criterion_2_cross_method_agreement():
    tally = Tally(2)
    fixtures = jordan_suite() + random_suite(10, seed=31, sizes=range(2, 7))
    worst = 0.0
    for idx, fx in enumerate(fixtures):
        for name, f in ACCEPT_FUNCTIONS.items():
            results = {
                "hermite": phi_hermite(f, fx.a, TOL),
                "parlett": phi_parlett(f, fx.a, TOL),
                "integral": phi_integral(f, fx.a, cluster_tol=TOL),
            }
            for m1, m2 in (("hermite", "parlett"), ("hermite", "integral"), ("parlett", "integral")):
                err = rel_err(results[m1], results[m2])
                worst = max(worst, err)
                tally.check(f"{name}:{m1}/{m2}#{idx}", err <= 1e-5, f"{err:.1e}")
    biggest = max(size for fx in fixtures for _, size in fx.blocks)
    tally.finish(f"{len(fixtures)} fixtures, Jordan blocks up to {biggest}, worst {worst:.1e}", 120)


# 3. closed forms -----------------------------------------------------------------------

def _poly_close(p, oracle, points) -> float:
    got, want = np.asarray(p(points)), np.asarray(oracle(points))
    return float(np.max(np.abs(got - want)) / max(1.0, np.max(np.abs(want))))


def test_criterion_3_closed_forms():
    tally = Tally(3)
    rng = np.random.default_rng(5)
    samples = rng.uniform(-1, 1, 12) + 1j * rng.uniform(-1, 1, 12)

    for size in (1, 2, 3, 5):
        lam = 0.7 - 1.1j
        jb = lam * np.eye(size) + np.eye(size, k=1)
        for method in ("parlett", "hermite"):
            err = rel_err(conjugate(jb, method), np.conj(lam) * np.eye(size))
            tally.check(f"tau(J) n={size} {method}", err <= EXACT, f"{err:.1e}")

    for alpha, beta, gamma in ((0.3 + 1j, -0.8 + 0.1j, 2.5 - 1j), (1j, 1, 1)):
        a = np.array([[alpha, gamma], [0, beta]])
        err = rel_err(conjugate(a), two_by_two_corner(alpha, beta, gamma))
        tally.check(f"corner {alpha},{beta}", err <= EXACT, f"{err:.1e}")

    extensions = {
        "z^2": holo_poly([0, 0, 1]),
        "|z|^2": monomial(1, 1),
        "conj(z)^2": monomial(0, 2),
        "Re(z)^2": zzbar_poly([(2, 0, 0.25), (1, 1, 0.5), (0, 2, 0.25)]),
        "Re(z^2)": zzbar_poly([(2, 0, 0.5), (0, 2, 0.5)]),
    }
    for lam in (0.6 + 0.8j, -1.3 + 0.2j):
        expected = extension_examples(lam)
        jb = np.array([[lam, 1], [0, lam]])
        for name, f in extensions.items():
            for method, fn in (("parlett", phi_parlett), ("hermite", phi_hermite)):
                err = rel_err(fn(f, jb), expected[name])
                tally.check(f"{name} {method}", err <= EXACT, f"{err:.1e}")

    u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    err = rel_err(conjugate(np.outer(u, v.conj()), cluster_tol=1e-8), rank_one_conjugate(u, v))
    tally.check("rank one", err <= EXACT, f"{err:.1e}")

    l1, l2 = 0.4 + 1.2j, -0.9 + 0.3j
    err = rel_err(conjugate(companion([l1, l2])), companion_conjugate(l1, l2))
    tally.check("companion simple roots", err <= EXACT, f"{err:.1e}")
    lam = 0.6 - 0.2j
    err = rel_err(conjugate(companion([lam, lam]), cluster_tol=1e-6), np.conj(lam) * np.eye(2))
    tally.check("companion double root", err <= EXACT, f"{err:.1e}")

    top = np.triu(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)), 1) + np.diag([1, 1.5j, 2])
    bot = np.array([[-1, 1], [0, -1 - 1j]])
    coupling = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    m = np.block([[top, coupling], [np.zeros((2, 3)), bot]])
    oracle = block_triangular_conjugate(top, bot, coupling, conjugate(top), conjugate(bot))
    err = rel_err(conjugate(m), oracle)
    tally.check("block triangular", err <= EXACT, f"{err:.1e}")

    for lam, n in ((0.3 + 0.1j, 3), (0.25 - 0.2j, 5)):
        ctol = TOL * abs(lam)
        b0c, bc = chain_conjugates(lam, n)
        b = nilpotent_chain_example(lam, n, coupled=True)
        spec = eigen_structure(schur_decompose(b, ctol), ctol)
        err = _poly_close(conjugating_polynomial(spec), chain_polynomial(lam, n), samples)
        tally.check(f"tau_B n={n}", err <= EXACT, f"{err:.1e}")
        err = rel_err(conjugate(nilpotent_chain_example(lam, n), cluster_tol=ctol), b0c)
        tally.check(f"B0^c n={n}", err <= EXACT, f"{err:.1e}")
        err = rel_err(conjugate(b, cluster_tol=ctol), bc)
        tally.check(f"B^c n={n}", err <= EXACT, f"{err:.1e}")

    lam, mu = 0.5 + 0.2j, -0.4 + 0.6j
    p0 = conjugating_polynomial(Spectrum.from_pairs([(lam, 2), (mu, 1)]))
    err = _poly_close(p0, tau_double_and_simple(lam, mu), samples)
    tally.check("tau_A0", err <= EXACT, f"{err:.1e}")
    gaps, limits = [], {}
    for theta in (0.0, math.pi / 2):
        for r in (1e-2, 5e-3, 2.5e-3):
            eps = r * np.exp(1j * theta)
            p_eps = conjugating_polynomial(Spectrum.from_pairs([(lam + eps, 1), (lam - eps, 1), (mu, 1)]))
            err = _poly_close(p_eps, tau_split_pair(lam, mu, eps), samples)
            tally.check(f"tau_A(eps) r={r} theta={theta:.2f}", err <= 1e-6, f"{err:.1e}")
            a_eps = np.diag([lam + eps, lam - eps, mu])
            gap = operator_norm(p_eps.at_matrix(a_eps) - p0.at_matrix(a_eps))
            if theta == 0.0:
                gaps.append(gap)
            limits[theta] = p_eps(0.0) - p0(0.0)
    ratios = [gaps[i] / gaps[i + 1] for i in range(len(gaps) - 1)]
    tally.check("A(eps) gap is O(eps)", all(1.8 <= q <= 2.2 for q in ratios) and gaps[0] <= 2e-2,
                f"ratios {ratios}")
    # the coefficients jump with the direction of eps, so there is no limit polynomial
    tally.check("tau_A(eps) discontinuity", abs(limits[0.0] - limits[math.pi / 2]) > 0.1,
                f"{abs(limits[0.0] - limits[math.pi / 2]):.2e}")

    for alpha, beta, gamma in ((1 + 1j, 2 - 1j, 0.7), (0.5j, -3, 2 + 1j), (1 + 1j, 1 + 1j, 0.7)):
        parts = polar_representation(np.array([[alpha, gamma], [0, beta]]))
        ab, vv = polar_two_by_two(alpha, beta, gamma)
        err = max(rel_err(parts.abs_part, ab), rel_err(parts.v_part, vv))
        tally.check(f"abs/V {alpha},{beta}", err <= EXACT, f"{err:.1e}")

    eps, lam = 1e-2, 0.2 - 0.4j
    got = divided_differences(tau(), [lam, lam + eps, lam + 1j * eps])[0, 2]
    stated = np.conj(eps) / ((1 - 1j) * eps ** 2)
    tally.check("tau[lam, lam+eps, lam+i eps]", abs(got - stated) <= EXACT * abs(stated),
                f"got {got:.6g}, stated {stated:.6g}")

    tally.finish("closed forms at 1e-8", 60)


# 4. disc-radius convergence ------------------------------------------------------------

def test_criterion_4_convergence_laws():
    tally = Tally(4)
    fx = study_fixture()
    eps_list = [0.1, 0.05, 0.025, 0.0125]
    brackets = {"boundary_only": (0.8, 1.2), "with_area_centered": (1.8, 2.2),
                "with_area_offcenter": (1.7, 2.2)}
    slopes = {}
    for mode, (lo, hi) in brackets.items():
        slope = convergence_study(fx.a, eps_list, mode, cluster_tol=1e-4).slope
        slopes[mode] = slope
        tally.check(mode, lo <= slope <= hi, f"slope {slope:.3f}")
    centers = tuple(lam for lam, _ in fx.blocks)
    worst = 0.0
    for radii in ((0.05, 0.03, 0.04), (0.1, 0.1, 0.1), (0.0125,) * 3):
        got = disc_omission_error(fx.a, DiscSet(centers, radii), cluster_tol=1e-4)
        oracle = disc_omission_closed_form(fx.t, fx.blocks, radii)
        err = np.linalg.norm(got - oracle, 2) / np.linalg.norm(oracle, 2)
        worst = max(worst, err)
        tally.check(f"omission {radii}", err <= 1e-6, f"{err:.1e}")
    shown = ", ".join(f"{k} {v:.3f}" for k, v in slopes.items())
    tally.finish(f"slopes {shown}; omission worst {worst:.1e}", 120)


# 5. bound sandwiches -------------------------------------------------------------------

def test_criterion_5_bound_sandwiches():
    tally = Tally(5)
    slack = 1 + 1e-10
    fixtures = random_suite(80, seed=77, sizes=range(2, 9)) + jordan_suite()
    for idx, fx in enumerate(fixtures):
        ac_norm = operator_norm(conjugate(fx.a, cluster_tol=TOL))
        if fx.diagonalizable:
            sb = bound_spectral(fx.a, TOL)
            tally.check(f"spectral#{idx}", sb.lower <= ac_norm * slack and ac_norm <= sb.upper * slack)
        tri = bound_triangular(fx.a, TOL)
        tally.check(f"triangular#{idx}", ac_norm <= tri * slack, f"{ac_norm:.3g} > {tri:.3g}")
        spec = eigen_structure(schur_decompose(fx.a, TOL), TOL)
        vn = bound_von_neumann(conjugating_polynomial(spec), operator_norm(fx.a)).value
        tally.check(f"von Neumann#{idx}", ac_norm <= vn * slack, f"{ac_norm:.3g} > {vn:.3g}")
    rng = np.random.default_rng(17)
    normals = 0
    for k in range(40):
        a = random_normal(int(rng.integers(2, 7)), rng, radius=0.95)
        spec = eigen_structure(schur_decompose(a), 1e-8)
        for name, vals, mat in (("tau", np.conj(spec.values), conjugate(a)),
                                ("abs", np.abs(spec.values), phi_parlett(abs_fn(), a))):
            bound = bound_interpolation_diag(spec, vals)
            tally.check(f"interpolation {name}#{k}", operator_norm(mat) <= bound * slack)
        normals += 1
    tally.finish(f"{len(fixtures)} general fixtures, {normals} contractive normal fixtures, "
                 f"{len(tally.failed)} violations", 60)


# 6. random-matrix trend ----------------------------------------------------------------

def test_criterion_6_random_matrix_trend():
    tally = Tally(6)
    rows = random_experiment([50, 100, 200], trials=20, seed=0)
    parts = []
    for row in rows:
        n, log_n = row["n"], math.log(row["n"])
        ratio = row["ratio_mean"]
        tally.check(f"ratio n={n}", 0.3 * log_n <= ratio <= 1.5 * log_n, f"{ratio / log_n:.3f} log n")
        tally.check(f"norm/rho n={n}", row["norm_mean"] <= 2.5 * row["rho_mean"],
                    f"{row['norm_mean'] / row['rho_mean']:.3f}")
        parts.append(f"n={n}: ratio/log n {ratio / log_n:.3f}, norm/rho {row['norm_mean'] / row['rho_mean']:.3f}")
    tally.finish("; ".join(parts), 300)


# 7. scalar Pompeiu checks --------------------------------------------------------------

def test_criterion_7_scalar_pompeiu():
    tally = Tally(7)
    rng = np.random.default_rng(3)
    worst = 0.0
    for z in rng.uniform(-0.8, 0.8, 8) + 1j * rng.uniform(-0.8, 0.8, 8):
        err = abs(pompeiu_scalar(tau(), z, (0, 1.5)) - np.conj(z))
        worst = max(worst, err)
        tally.check(f"conj at {z:.2f}", err <= 1e-6, f"{err:.1e}")
    f, z, r = monomial(1, 1), 0.2 - 0.1j, 0.1
    with_corr = pompeiu_scalar(f, z, (0, 1.0), omit_r=r)
    without = pompeiu_scalar(f, z, (0, 1.0), omit_r=r, correct=False)
    tally.check("corrected |z|^2", abs(with_corr - abs(z) ** 2) <= 1e-6, f"{abs(with_corr - abs(z) ** 2):.1e}")
    # the uncorrected error is r^2 times the mixed derivative, which is 1 here
    miss = without - abs(z) ** 2
    tally.check("uncorrected gap is r^2", abs(miss - r * r) <= 1e-6 * r * r, f"{miss:.6g}")
    tally.finish(f"conj worst {worst:.1e}, uncorrected gap {miss.real:.6g} vs r^2 {r * r:.6g}", 30)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
