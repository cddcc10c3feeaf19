"""
The matrix conjugate and the constructions built on it.

``conjugate(A)`` applies ``z -> conj(z)`` through the calculus.  The result
is diagonalizable, a polynomial in ``A``, and equals ``A^H`` exactly when
``A`` is normal.  Also here: the conjugating polynomial, four norm bounds,
``abs(A) = (A conj(A))^(1/2)``, the commutative polar representation and the
sign decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .calculus import (
    HermitePolynomial,
    eval_poly_at_matrix,
    hermite_interpolant,
    matrix_function,
    parlett_schur,
)
from .errors import DomainError, NotDiagonalizableError, NumericalError
from .linalg import (
    Spectrum,
    as_cmatrix,
    default_cluster_tol,
    eigen_structure,
    kappa_eigvec,
    operator_norm,
    schur_decompose,
    solve_sylvester_tri,
)
from .wirtinger import tau

__all__ = [
    "conjugate",
    "ConjugatingPolynomial",
    "conjugating_polynomial",
    "SpectralBound",
    "SampledBound",
    "bound_spectral",
    "bound_triangular",
    "bound_von_neumann",
    "bound_interpolation_diag",
    "bounds_report",
    "abs_matrix",
    "PolarParts",
    "polar_representation",
    "sign_decomposition",
]


def conjugate(a, method: str = "parlett", cluster_tol: float | None = None, **integral_opts) -> np.ndarray:
    """
    The conjugate of `a`, i.e. ``tau(A)`` for ``tau(z) = conj(z)``.

    Parameters
    ----------
    a : (n, n) array_like
    method : {'parlett', 'hermite', 'integral'}
    cluster_tol : float, optional
        Eigenvalue clustering tolerance, default ``1e-8 * max(1, ||A||)``.
    **integral_opts
        ``discs`` and ``cfg`` for the quadrature route.
    """
    return matrix_function(tau(), a, method, cluster_tol, **integral_opts)


@dataclass(frozen=True)
class ConjugatingPolynomial:
    """The polynomial ``p`` of least degree with ``p(A) = conj(A)``."""

    coefficients: np.ndarray
    spectrum: Spectrum
    newton: HermitePolynomial

    def __call__(self, z):
        return self.newton(z)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def derivatives(self, z: complex, count: int) -> np.ndarray:
        return self.newton.derivatives(z, count)

    def at_matrix(self, a) -> np.ndarray:
        return eval_poly_at_matrix(self.newton, as_cmatrix(a))


def conjugating_polynomial(spec: Spectrum) -> ConjugatingPolynomial:
    """Interpolate ``conj(lam_j)`` with vanishing derivatives up to ``exponent_j - 1``."""
    if not spec.clusters:
        raise ValueError("empty spectrum")
    p = hermite_interpolant(spec, tau())
    return ConjugatingPolynomial(p.to_power(), spec, p)


# bounds ---------------------------------------------------------------------

class SpectralBound(NamedTuple):
    lower: float
    upper: float | None
    kappa: float | None


class SampledBound(NamedTuple):
    value: float
    samples: int


def bound_spectral(a, cluster_tol: float | None = None) -> SpectralBound:
    """``rho(A) <= ||conj(A)|| <= kappa * rho(A)``; upper part is ``None`` for defective `a`."""
    a = as_cmatrix(a)
    tol = default_cluster_tol(a) if cluster_tol is None else cluster_tol
    s = schur_decompose(a, tol)
    rho = float(np.abs(np.diag(s.t)).max())
    try:
        kappa = kappa_eigvec(a, tol)
    except NotDiagonalizableError:
        return SpectralBound(rho, None, None)
    return SpectralBound(rho, kappa * rho, kappa)


def bound_triangular(a, cluster_tol: float | None = None) -> float:
    """``||A||`` for one cluster, otherwise ``n (2||A||/delta + 1)^(n-2) ||A||``."""
    a = as_cmatrix(a)
    tol = default_cluster_tol(a) if cluster_tol is None else cluster_tol
    spec = eigen_structure(schur_decompose(a, tol), tol)
    norm = operator_norm(a)
    if len(spec.clusters) == 1:
        return norm
    n = a.shape[0]
    return n * (2 * norm / spec.separation + 1) ** (n - 2) * norm


def bound_von_neumann(p: ConjugatingPolynomial, radius: float, samples: int = 4096) -> SampledBound:
    """Largest ``|p|`` over `samples` equispaced points of ``|z| = radius``."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    return SampledBound(float(np.abs(p(z)).max()), samples)


def blaschke_separation(values) -> float:
    """``min_lam prod_{mu != lam} |(mu - lam) / (1 - mu conj(lam))|``; 1 for a single point."""
    v = np.asarray(values, dtype=np.complex128)
    if len(v) < 2:
        return 1.0
    ratio = np.abs((v[None, :] - v[:, None]) / (1 - v[None, :] * np.conj(v[:, None])))
    np.fill_diagonal(ratio, 1.0)
    return float(ratio.prod(axis=1).min())


def bound_interpolation_diag(spec: Spectrum, values) -> float:
    """``4 / delta^2 * max |values|`` for a simple spectrum inside the open unit disc."""
    lam = spec.values
    if np.any(np.abs(lam) >= 1):
        raise DomainError(f"eigenvalues must lie in the open unit disc, got {lam[np.abs(lam) >= 1]}")
    if not spec.is_simple:
        raise DomainError("bound needs simple (diagonalizable) spectrum")
    vals = np.abs(np.asarray(values, dtype=np.complex128))
    if len(vals) != len(lam):
        raise ValueError("one value per eigenvalue is required")
    return 4.0 / blaschke_separation(lam) ** 2 * float(vals.max())


def bounds_report(a, cluster_tol: float | None = None) -> dict:
    """Every applicable norm bound for ``conj(A)`` next to its realized norm."""
    a = as_cmatrix(a)
    tol = default_cluster_tol(a) if cluster_tol is None else cluster_tol
    spec = eigen_structure(schur_decompose(a, tol), tol)
    ac = conjugate(a, cluster_tol=tol)
    norm_a = operator_norm(a)
    sb = bound_spectral(a, tol)
    report = {
        "norm_conjugate": operator_norm(ac),
        "norm_matrix": norm_a,
        "spectral": {"lower": sb.lower, "upper": sb.upper, "kappa": sb.kappa,
                     "upper_available": sb.upper is not None},
        "triangular": bound_triangular(a, tol),
    }
    vn = bound_von_neumann(conjugating_polynomial(spec), norm_a)
    report["von_neumann"] = {"value": vn.value, "samples": vn.samples}
    if spec.is_simple and np.all(np.abs(spec.values) < 1) and norm_a <= 1:
        report["interpolation"] = bound_interpolation_diag(spec, np.conj(spec.values))
    else:
        report["interpolation"] = None
    return report


# abs, polar, sign -----------------------------------------------------------

def _sqrt_upper(p: np.ndarray) -> np.ndarray:
    """Principal square root of an upper triangular matrix with a nonvanishing diagonal."""
    n = p.shape[0]
    r = np.zeros_like(p)
    d = np.sqrt(np.diag(p))
    np.fill_diagonal(r, d)
    for j in range(1, n):
        for i in range(j - 1, -1, -1):
            s = p[i, j] - r[i, i + 1:j] @ r[i + 1:j, j]
            r[i, j] = s / (d[i] + d[j])
    return r


def abs_matrix(a, cluster_tol: float | None = None) -> np.ndarray:
    """
    ``abs(A) = (A conj(A))^(1/2)`` with the principal branch.

    Works in the clustered Schur basis of `a`, where ``A conj(A)`` is upper
    triangular.  A cluster at the origin contributes a zero diagonal block.
    """
    a = as_cmatrix(a)
    tol = default_cluster_tol(a) if cluster_tol is None else cluster_tol
    s = schur_decompose(a, tol)
    spec = eigen_structure(s, tol)
    t = s.t
    prod = t @ parlett_schur(tau(), s, spec)
    blocks = s.blocks
    r = np.zeros_like(prod)
    for blk, cl in zip(blocks, spec.clusters):
        if abs(cl.value) > tol:
            r[blk, blk] = _sqrt_upper(prod[blk, blk])
    for j in range(len(blocks)):
        rj = blocks[j]
        for i in range(j - 1, -1, -1):
            ri = blocks[i]
            mid = slice(ri.stop, rj.start)
            rhs = prod[ri, rj] - r[ri, mid] @ r[mid, rj]
            r[ri, rj] = solve_sylvester_tri(r[ri, ri], -r[rj, rj], rhs)
    return s.q @ r @ s.q.conj().T


@dataclass(frozen=True)
class PolarParts:
    """``A = abs_part @ v_part`` with commuting factors."""

    abs_part: np.ndarray
    v_part: np.ndarray


def polar_representation(a, cluster_tol: float | None = None) -> PolarParts:
    """
    Commutative polar representation ``A = abs(A) V``.

    Raises :class:`DomainError` when an eigenvalue lies within
    ``1e-12 ||A||`` of zero.
    """
    a = as_cmatrix(a)
    eig = np.diag(schur_decompose(a, cluster_tol).t)
    scale = operator_norm(a)
    if scale == 0 or np.abs(eig).min() <= 1e-12 * scale:
        raise DomainError(f"matrix is singular: eigenvalue {eig[np.argmin(np.abs(eig))]} at the origin")
    ab = abs_matrix(a, cluster_tol)
    return PolarParts(ab, np.linalg.solve(ab, a))


def sign_decomposition(a, maxiter: int = 100, rtol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """
    ``A = S N`` with ``S^2 = I`` and ``N = S A``, by Newton iteration for ``S``.

    Raises
    ------
    DomainError
        An eigenvalue lies within ``1e-8 ||A||`` of the imaginary axis.
    NumericalError
        No convergence within `maxiter` steps.
    """
    a = as_cmatrix(a)
    scale = operator_norm(a)
    eig = np.diag(schur_decompose(a).t)
    bad = np.abs(eig.real) <= 1e-8 * scale
    if scale == 0 or bad.any():
        raise DomainError(f"eigenvalue {eig[bad][0] if bad.any() else 0} on the imaginary axis")
    x = a.copy()
    for _ in range(maxiter):
        try:
            nxt = 0.5 * (x + np.linalg.inv(x))
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"sign iteration hit a singular iterate: {exc}") from exc
        done = np.linalg.norm(nxt - x) <= rtol * np.linalg.norm(x)
        x = nxt
        if done:
            return x, x @ a
    raise NumericalError(f"sign iteration did not converge in {maxiter} steps")
