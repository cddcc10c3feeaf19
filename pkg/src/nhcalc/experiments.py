"""Random-matrix experiment on the size of the conjugate."""

from __future__ import annotations

import math

import numpy as np

from .conjugate import conjugate
from .linalg import eigenvector_matrix, operator_norm, schur_decompose

__all__ = ["random_experiment", "trial_statistics"]


def trial_statistics(a: np.ndarray) -> dict:
    """Norm of ``a``, its conjugate, spectral radius and eigenvector condition number."""
    s = schur_decompose(a)
    norm_a = operator_norm(a)
    norm_c = operator_norm(conjugate(a))
    rho = float(np.abs(np.diag(s.t)).max())
    v = eigenvector_matrix(s)
    kappa = operator_norm(v) * operator_norm(np.linalg.inv(v))
    return {"norm": norm_a, "norm_conjugate": norm_c, "rho": rho, "kappa": kappa}


def random_experiment(n_list, trials: int, seed: int) -> list[dict]:
    """
    For each ``n``: ``A = X + iY`` with entries uniform on ``[-1/2, 1/2]``.

    Each ``(n, trial)`` draws from its own child of ``SeedSequence(seed)``,
    so the table is reproducible and independent of evaluation order.

    Returns
    -------
    list of dict
        One row per ``n`` with means and standard deviations of
        ``||A^c|| / ||A||``, the same ratio over ``log n``, ``kappa``,
        ``kappa / n`` and ``||A|| / rho``, plus mean ``||A||`` and ``rho``.
    """
    n_list = [int(n) for n in n_list]
    if any(n < 2 for n in n_list):
        raise ValueError("matrix sizes must be at least 2")
    if trials < 1:
        raise ValueError("at least one trial is required")
    children = np.random.SeedSequence(seed).spawn(len(n_list))
    rows = []
    for n, child in zip(n_list, children):
        stats = []
        for ts in child.spawn(trials):
            rng = np.random.default_rng(ts)
            a = rng.uniform(-0.5, 0.5, (n, n)) + 1j * rng.uniform(-0.5, 0.5, (n, n))
            stats.append(trial_statistics(a))
        ratio = np.array([s["norm_conjugate"] / s["norm"] for s in stats])
        kappa = np.array([s["kappa"] for s in stats])
        spread = np.array([s["norm"] / s["rho"] for s in stats])
        rows.append({
            "n": n,
            "trials": trials,
            "ratio_mean": float(ratio.mean()),
            "ratio_std": float(ratio.std()),
            "ratio_over_log_n": float(ratio.mean() / math.log(n)),
            "kappa_mean": float(kappa.mean()),
            "kappa_std": float(kappa.std()),
            "kappa_over_n": float(kappa.mean() / n),
            "norm_over_rho_mean": float(spread.mean()),
            "norm_over_rho_std": float(spread.std()),
            "norm_mean": float(np.mean([s["norm"] for s in stats])),
            "rho_mean": float(np.mean([s["rho"] for s in stats])),
        })
    return rows
