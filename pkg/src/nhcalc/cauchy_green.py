"""
Quadrature for the Cauchy-Green (Pompeiu) representation.

A smooth ``f`` on a region ``Omega`` is the sum of a boundary Cauchy
integral and an area integral of ``dbar f`` against the Cauchy kernel.
Replacing the kernel by the resolvent gives ``f(A)``.  Regions here are
disjoint unions of discs ``B(z_j, R_j)``; each area integral runs over an
annulus ``eps_j < |zeta - z_j| < R_j`` in local polar coordinates
(trapezoid in angle, Gauss-Legendre in radius), and the inner disc is either
dropped or accounted for from a Taylor expansion of ``dbar f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .conjugate import conjugate
from .errors import DomainError, NumericalError
from .linalg import (
    SchurForm,
    Spectrum,
    ShiftedInverse,
    as_cmatrix,
    default_cluster_tol,
    eigen_structure,
    operator_norm,
    schur_decompose,
)
from .wirtinger import WirtingerFunction, tau

__all__ = [
    "DiscSet",
    "QuadratureConfig",
    "pompeiu_scalar",
    "phi_integral",
    "boundary_only_conjugate",
    "disc_omission_error",
    "StudyResult",
    "convergence_study",
    "STUDY_MODES",
]

STUDY_MODES = ("boundary_only", "with_area_centered", "with_area_offcenter")
_NODE_GAP = 1e-10
_TAYLOR_CAP = 10


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts: trapezoid in angle, Gauss-Legendre in radius."""

    angular_nodes: int = 256
    radial_nodes: int = 64

    def __post_init__(self):
        if self.angular_nodes < 8 or self.radial_nodes < 8:
            raise ValueError("quadrature needs at least 8 nodes in each direction")


@dataclass(frozen=True)
class DiscSet:
    """
    Inner discs ``B(z_j, eps_j)`` and outer radii ``R_j > eps_j``.

    Inner discs must be pairwise disjoint as closed sets; outer discs may
    touch but not overlap, so the region is a disjoint union.
    """

    centers: tuple
    radii: tuple
    outer: tuple = field(default=())

    def __post_init__(self):
        c = tuple(complex(x) for x in self.centers)
        e = tuple(float(x) for x in self.radii)
        if len(c) != len(e) or not c:
            raise ValueError("one radius per center is required")
        if any(x <= 0 for x in e):
            raise ValueError("disc radii must be positive")
        outer = tuple(float(x) for x in self.outer) if self.outer else _default_outer(c, e)
        if len(outer) != len(c):
            raise ValueError("one outer radius per center is required")
        if any(r <= x for r, x in zip(outer, e)):
            raise ValueError("outer radius must exceed the inner radius")
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                d = abs(c[i] - c[j])
                if d <= e[i] + e[j]:
                    raise DomainError(f"discs around {c[i]} and {c[j]} intersect")
                if d < outer[i] + outer[j] * (1 - 1e-12):
                    raise DomainError(f"outer discs around {c[i]} and {c[j]} overlap")
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "radii", e)
        object.__setattr__(self, "outer", outer)

    def __len__(self):
        return len(self.centers)

    @classmethod
    def from_spectrum(cls, spec: Spectrum, eps: float | None = None) -> "DiscSet":
        """
        Discs centered on the cluster representatives.

        With several clusters the default inner radius is one eighth of the
        separation, so the outer discs reach half-way to the nearest center.
        A single cluster gets ``eps = 0.25``.
        """
        centers = tuple(spec.values)
        if eps is None:
            eps = 0.25 if len(centers) == 1 else spec.separation / 8
        return cls(centers, (eps,) * len(centers))

    def with_outer(self, outer) -> "DiscSet":
        return DiscSet(self.centers, self.radii, tuple(outer))


def _default_outer(c, e):
    out = []
    for i, ci in enumerate(c):
        others = [abs(ci - cj) for j, cj in enumerate(c) if j != i]
        half = min(others) / 2 if others else 0.0
        out.append(max(3 * e[i], half))
    return tuple(out)


def _gauss(a, b, m):
    x, w = np.polynomial.legendre.leggauss(m)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def _angles(m, phase=0.0):
    return 2 * np.pi * np.arange(m) / m + phase


# scalar formula --------------------------------------------------------------

def _correction_terms(f: WirtingerFunction, n: int) -> int:
    """How many ``r^(2k)`` terms the correction sum can use for `f`."""
    if f.is_polynomial:
        return max(0, (f.degree - n + 1) // 2)
    if f.max_order is None:
        return _TAYLOR_CAP
    return max(0, (f.max_order - n + 1) // 2)


def pompeiu_scalar(f: WirtingerFunction, z: complex, disc, n: int = 1, omit_r: float = 0.0,
                   cfg: QuadratureConfig | None = None, correct: bool = True) -> complex:
    """
    Quadrature estimate of ``d^(n-1) f(z) / (n-1)!`` from boundary and area integrals.

    The area integral excludes the disc ``|zeta - z| < omit_r``; with
    `correct` the ``r^(2k)`` terms ``d^(n-1+k) dbar^k f(z) / ((n-1+k)! k!)``
    are subtracted, which compensates the omitted disc.

    Parameters
    ----------
    f : WirtingerFunction
    z : complex
        Evaluation point inside the disc.
    disc : (center, radius)
    n : int
        Derivative order plus one.
    omit_r : float
        Radius of the excluded disc around `z`; must be positive for ``n > 1``.
    cfg : QuadratureConfig, optional
    correct : bool
        Subtract the correction sum.
    """
    cfg = cfg or QuadratureConfig()
    center, radius = complex(disc[0]), float(disc[1])
    z = complex(z)
    d = z - center
    if n < 1:
        raise ValueError("order n must be at least 1")
    if abs(d) + omit_r >= radius:
        raise DomainError("evaluation point and omitted disc must lie inside the disc")
    if n > 1 and omit_r <= 0:
        raise ValueError("orders above 1 need a positive omitted radius")
    kmax = _correction_terms(f, n) if correct and omit_r > 0 else 0
    if correct and omit_r > 0:
        f.check_order(n - 1 + 2 * kmax)

    theta = _angles(cfg.angular_nodes)
    u = np.exp(1j * theta)
    zeta = center + radius * u
    boundary = np.mean(f(zeta) * (zeta - center) / (zeta - z) ** n)

    # polar coordinates around z; rho_max(theta) reaches the circle
    proj = (np.conj(d) * u).real
    rho_max = -proj + np.sqrt(proj ** 2 + radius ** 2 - abs(d) ** 2)
    x, w = np.polynomial.legendre.leggauss(cfg.radial_nodes)
    rho = 0.5 * (rho_max[:, None] - omit_r) * x[None, :] + 0.5 * (rho_max[:, None] + omit_r)
    wr = 0.5 * (rho_max[:, None] - omit_r) * w[None, :]
    pts = z + rho * u[:, None]
    integrand = f.partial(0, 1, pts) * rho ** (1 - n) * u[:, None] ** (-n)
    area = -(1 / np.pi) * (2 * np.pi / cfg.angular_nodes) * np.sum(integrand * wr)

    corr = 0j
    for k in range(1, kmax + 1):
        corr += f.partial(n - 1 + k, k, z) / (factorial(n - 1 + k) * factorial(k)) * omit_r ** (2 * k)
    return complex(boundary + area - corr)


# matrix formula --------------------------------------------------------------

def _check_nodes(zeta: np.ndarray, eig: np.ndarray) -> bool:
    return bool(np.abs(zeta.ravel()[:, None] - eig[None, :]).min() > _NODE_GAP)


def _annulus_nodes(center, inner, outer, cfg, jitter=0.0):
    rho, wr = _gauss(inner, outer * (1 + jitter), cfg.radial_nodes)
    theta = _angles(cfg.angular_nodes, phase=jitter * np.pi)
    u = np.exp(1j * theta)
    zeta = center + rho[:, None] * u[None, :]
    # -(1/pi) dmu = -(1/pi) rho drho dtheta
    weight = -(2.0 / cfg.angular_nodes) * (rho * wr)[:, None] * np.ones_like(u)[None, :]
    return zeta.ravel(), weight.ravel()


def _laurent_moments(inv: ShiftedInverse, center, radius, orders, m) -> dict:
    """``a_k = mean over the circle of w^-k (center + w - T)^-1`` for each ``k`` in `orders`."""
    w = radius * np.exp(1j * _angles(m))
    stack = inv.batch_schur(center + w)
    return {k: np.einsum("m,mij->ij", w ** (-k), stack) / m for k in orders}


def _taylor_order(f: WirtingerFunction) -> int:
    if f.is_polynomial:
        return max(f.degree - 1, -1)
    if f.max_order is None:
        return _TAYLOR_CAP
    return min(f.max_order - 1, _TAYLOR_CAP)


def _inner_taylor(f, inv, center, eps, cfg):
    """Contribution of ``-(1/pi) int_{|w|<eps} dbar f(center + w) R(center + w) dmu``."""
    top = _taylor_order(f)
    if top < 0:
        return 0
    coef = {}
    for p in range(top + 1):
        for q in range(top + 1 - p):
            c = f.partial(p, q + 1, center)
            if c != 0:
                coef[(p, q)] = c / (factorial(p) * factorial(q))
    if not coef:
        return 0
    moments = _laurent_moments(inv, center, eps, {q - p for p, q in coef}, cfg.angular_nodes)
    out = 0
    for (p, q), c in coef.items():
        out = out - c * moments[q - p] * eps ** (2 * q + 2) / (q + 1)
    return out


def _prepare(a, cluster_tol):
    a = as_cmatrix(a)
    tol = default_cluster_tol(a) if cluster_tol is None else float(cluster_tol)
    s = schur_decompose(a, tol)
    return a, s, eigen_structure(s, tol)


def _owner(discs: DiscSet, eig: np.ndarray) -> None:
    c = np.array(discs.centers)
    eps = np.array(discs.radii)
    inside = np.abs(eig[:, None] - c[None, :]) < eps[None, :]
    lost = ~inside.any(axis=1)
    if lost.any():
        raise DomainError(f"eigenvalue {eig[lost][0]} lies outside every disc")


def phi_integral(f: WirtingerFunction, a, discs: DiscSet | None = None,
                 cfg: QuadratureConfig | None = None, cluster_tol: float | None = None,
                 inner: str = "taylor") -> np.ndarray:
    """
    ``f(A)`` from the boundary and area integrals over a union of discs.

    Parameters
    ----------
    f : WirtingerFunction
    a : (n, n) array_like
    discs : DiscSet, optional
        Every eigenvalue must lie strictly inside some inner disc.  Defaults
        to :meth:`DiscSet.from_spectrum`.
    cfg : QuadratureConfig, optional
    cluster_tol : float, optional
    inner : {'taylor', 'omit'}
        How the inner discs enter: ``'taylor'`` integrates a Taylor
        expansion of ``dbar f`` against the Laurent expansion of the
        resolvent exactly; ``'omit'`` drops them.

    Returns
    -------
    ndarray
    """
    if inner not in ("taylor", "omit"):
        raise ValueError("inner must be 'taylor' or 'omit'")
    cfg = cfg or QuadratureConfig()
    a, s, spec = _prepare(a, cluster_tol)
    discs = discs or DiscSet.from_spectrum(spec)
    eig = np.diag(s.t)
    _owner(discs, eig)
    inv = ShiftedInverse(s)
    total = np.zeros_like(s.t)
    holo = f.is_holomorphic
    for center, eps, outer in zip(discs.centers, discs.radii, discs.outer):
        for jitter in (0.0, 1e-3):
            theta = _angles(cfg.angular_nodes, phase=jitter * np.pi)
            zb = center + outer * (1 + jitter) * np.exp(1j * theta)
            za, wa = (np.empty(0), np.empty(0)) if holo else _annulus_nodes(center, eps, outer, cfg, jitter)
            if _check_nodes(zb, eig) and (za.size == 0 or _check_nodes(za, eig)):
                break
        else:
            raise NumericalError(f"quadrature nodes around {center} hit an eigenvalue")
        total += inv.weighted_sum_schur(zb, f(zb) * (zb - center) / cfg.angular_nodes)
        if not holo:
            total += inv.weighted_sum_schur(za, f.partial(0, 1, za) * wa)
            if inner == "taylor":
                total += _inner_taylor(f, inv, center, eps, cfg)
    return inv.to_original(total)


def boundary_only_conjugate(a, discs: DiscSet, cfg: QuadratureConfig | None = None,
                            cluster_tol: float | None = None) -> np.ndarray:
    """Sum over discs of ``(1/2 pi i) oint conj(zeta) (zeta - A)^-1 dzeta`` on ``|zeta - z_j| = eps_j``."""
    cfg = cfg or QuadratureConfig()
    a, s, _ = _prepare(a, cluster_tol)
    eig = np.diag(s.t)
    _owner(discs, eig)
    inv = ShiftedInverse(s)
    theta = _angles(cfg.angular_nodes)
    total = np.zeros_like(s.t)
    for center, eps in zip(discs.centers, discs.radii):
        zb = center + eps * np.exp(1j * theta)
        if not _check_nodes(zb, eig):
            raise NumericalError(f"circle of radius {eps} around {center} passes through an eigenvalue")
        total += inv.weighted_sum_schur(zb, np.conj(zb) * (zb - center) / cfg.angular_nodes)
    return inv.to_original(total)


def disc_omission_error(a, discs: DiscSet, cfg: QuadratureConfig | None = None,
                        cluster_tol: float | None = None) -> np.ndarray:
    """
    ``(1/pi) sum_j int_{B(z_j, eps_j)} (zeta - A)^-1 dmu`` for discs centered on clusters.

    In polar coordinates about a center, the angular trapezoid annihilates
    every negative Laurent mode of the resolvent, and the regular part has
    the mean-value property.  Each disc therefore contributes
    ``eps_j^2`` times the angular mean of the resolvent on its rim, which is
    evaluated where the resolvent is well conditioned.
    """
    cfg = cfg or QuadratureConfig()
    a, s, spec = _prepare(a, cluster_tol)
    eig = np.diag(s.t)
    _owner(discs, eig)
    reps = spec.values
    for center, eps in zip(discs.centers, discs.radii):
        near = np.abs(reps - center)
        if near.min() > spec.cluster_tol + 1e-12 * max(1.0, abs(center)):
            raise DomainError(f"disc at {center} is not centered on an eigenvalue cluster")
    inv = ShiftedInverse(s)
    total = np.zeros_like(s.t)
    for center, eps in zip(discs.centers, discs.radii):
        total += eps ** 2 * _laurent_moments(inv, center, eps, [0], cfg.angular_nodes)[0]
    return inv.to_original(total)


# convergence study -----------------------------------------------------------

@dataclass(frozen=True)
class StudyResult:
    """Rows ``(eps, error, slope_to_prev)`` and the least-squares log-log slope."""

    mode: str
    rows: tuple
    slope: float | None

    def to_csv(self) -> str:
        lines = ["eps,error,slope_to_prev"]
        for eps, err, sl in self.rows:
            lines.append(f"{eps!r},{err!r},{'' if sl is None else repr(sl)}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"mode": self.mode, "slope": self.slope,
                "rows": [{"eps": e, "error": r, "slope_to_prev": s} for e, r, s in self.rows]}


def _offsets(count: int) -> np.ndarray:
    return np.exp(1j * (2 * np.pi * np.arange(count) / max(count, 1) + 0.3))


def convergence_study(a, eps_list, mode: str = "with_area_centered",
                      cfg: QuadratureConfig | None = None, cluster_tol: float | None = None,
                      offset: float = 0.5, offcenter_const: float = 1.0) -> StudyResult:
    """
    Error of disc-based conjugate approximations as the disc radius shrinks.

    Modes
    -----
    boundary_only
        Circles of radius ``eps`` with centers displaced by ``offset * eps``.
    with_area_centered
        Boundary over fixed outer circles plus the area integral with inner
        discs of radius ``eps`` dropped; discs centered on the clusters.
    with_area_offcenter
        As above with centers displaced by ``offcenter_const * eps^2``.

    The error is the operator norm of the difference to
    ``conjugate(a, 'parlett')``.
    """
    if mode not in STUDY_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {STUDY_MODES}")
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise ValueError("eps list is empty")
    if any(e <= 0 for e in eps_list):
        raise ValueError("eps values must be positive")
    cfg = cfg or QuadratureConfig()
    a, s, spec = _prepare(a, cluster_tol)
    exact = conjugate(a, "parlett", spec.cluster_tol)
    reps = spec.values
    rot = _offsets(len(reps))
    # outer circles stay put while eps shrinks; 0.45 leaves room for shifted centers
    reach = 0.45 * spec.separation if len(reps) > 1 else 4 * max(eps_list)
    fixed_outer = (reach,) * len(reps)
    rows = []
    for eps in eps_list:
        if mode == "boundary_only":
            discs = DiscSet(tuple(reps + offset * eps * rot), (eps,) * len(reps))
            approx = boundary_only_conjugate(a, discs, cfg, spec.cluster_tol)
        else:
            shift = 0 if mode == "with_area_centered" else offcenter_const * eps ** 2
            discs = DiscSet(tuple(reps + shift * rot), (eps,) * len(reps), fixed_outer)
            approx = phi_integral(tau(), a, discs, cfg, spec.cluster_tol, inner="omit")
        err = operator_norm(approx - exact)
        prev = rows[-1] if rows else None
        slope = None
        if prev is not None and err > 0 and prev[1] > 0 and eps != prev[0]:
            slope = float(np.log(err / prev[1]) / np.log(eps / prev[0]))
        rows.append((eps, err, slope))
    good = [(e, r) for e, r, _ in rows if r > 0]
    fit = None
    if len(good) >= 2:
        fit = float(np.polyfit(np.log([e for e, _ in good]), np.log([r for _, r in good]), 1)[0])
    return StudyResult(mode, tuple(rows), fit)
