"""
Evaluation of ``phi(A)`` for smooth, not necessarily holomorphic ``phi``.

Two routes live here:

* :func:`phi_hermite` interpolates ``d^nu phi`` at the eigenvalues with a
  polynomial in Newton form and evaluates it at the matrix;
* :func:`phi_parlett` works block-wise on a clustered Schur form, expanding
  each diagonal block in powers of its nilpotent part and filling the
  off-diagonal blocks by triangular Sylvester solves.

Both use only ``d``-derivatives at the eigenvalues, never ``dbar``: this is
what separates the calculus from the classical holomorphic one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import InadmissibleOrderError
from .linalg import (
    SchurForm,
    Spectrum,
    as_cmatrix,
    default_cluster_tol,
    eigen_structure,
    schur_decompose,
    solve_sylvester_tri,
)
from .wirtinger import WirtingerFunction

__all__ = [
    "HermitePolynomial",
    "DividedDifferenceTable",
    "divided_differences",
    "leja_order",
    "hermite_interpolant",
    "eval_poly_at_matrix",
    "phi_hermite",
    "opitz_matrix",
    "phi_parlett",
    "matrix_function",
    "METHODS",
]

METHODS = ("hermite", "parlett", "integral")


@dataclass(frozen=True)
class HermitePolynomial:
    """Polynomial ``sum_k coeffs[k] prod_{i<k} (z - nodes[i])``."""

    nodes: np.ndarray
    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        c, x = self.coeffs, self.nodes
        out = np.full(z.shape, c[-1], dtype=np.complex128)
        for k in range(len(c) - 2, -1, -1):
            out = out * (z - x[k]) + c[k]
        return out if out.ndim else complex(out)

    def derivatives(self, z: complex, count: int) -> np.ndarray:
        """``[p(z), p'(z), ..., p^(count)(z)]``."""
        c, x = self.coeffs, self.nodes
        d = np.zeros(count + 1, dtype=np.complex128)
        d[0] = c[-1]
        for k in range(len(c) - 2, -1, -1):
            d[1:] = d[1:] * (z - x[k]) + d[:-1]
            d[0] = d[0] * (z - x[k]) + c[k]
        return d * np.array([factorial(j) for j in range(count + 1)])

    def to_power(self) -> np.ndarray:
        """Ascending monomial coefficients."""
        out = np.zeros(len(self.coeffs), dtype=np.complex128)
        basis = np.zeros(len(self.coeffs), dtype=np.complex128)
        basis[0] = 1.0
        for k, ck in enumerate(self.coeffs):
            out += ck * basis
            if k + 1 < len(self.coeffs):
                shifted = np.zeros_like(basis)
                shifted[1:] = basis[:-1]
                basis = shifted - self.nodes[k] * basis
        return out


@dataclass(frozen=True)
class DividedDifferenceTable:
    """``table[i, j]`` holds ``phi[x_i, ..., x_j]`` for ``i <= j``."""

    nodes: np.ndarray
    table: np.ndarray

    def __getitem__(self, ij):
        return self.table[ij]

    @property
    def newton_coefficients(self) -> np.ndarray:
        return self.table[0].copy()


def _check_admissible(nodes: np.ndarray, tol: float) -> None:
    m = len(nodes)
    for i in range(m):
        for j in range(i + 2, m):
            if abs(nodes[i] - nodes[j]) <= tol and any(
                    abs(nodes[k] - nodes[i]) > tol for k in range(i + 1, j)):
                raise InadmissibleOrderError(
                    f"equal nodes at positions {i} and {j} are separated by a different node")


def divided_differences(f: WirtingerFunction, nodes, tol: float = 0.0) -> DividedDifferenceTable:
    """
    Divided-difference table with confluent entries taken from ``d``-derivatives.

    Where ``x_i`` and ``x_j`` coincide (within `tol`) the entry is
    ``d^(j-i) f(x_i) / (j-i)!``; elsewhere the usual recurrence applies.
    Equal nodes must be adjacent.
    """
    x = np.asarray(nodes, dtype=np.complex128).ravel()
    m = len(x)
    if m == 0:
        raise ValueError("node list is empty")
    _check_admissible(x, tol)
    tab = np.zeros((m, m), dtype=np.complex128)
    for i in range(m):
        tab[i, i] = f(x[i])
    for gap in range(1, m):
        for i in range(m - gap):
            j = i + gap
            if abs(x[j] - x[i]) <= tol:
                tab[i, j] = f.partial(gap, 0, x[i]) / factorial(gap)
            else:
                tab[i, j] = (tab[i + 1, j] - tab[i, j - 1]) / (x[j] - x[i])
    return DividedDifferenceTable(x, tab)


def leja_order(values) -> list[int]:
    """Greedy Leja ordering: start at the largest modulus, then maximise the distance product."""
    v = np.asarray(values, dtype=np.complex128)
    if len(v) == 0:
        return []
    order = [int(np.argmax(np.abs(v)))]
    logprod = np.zeros(len(v))
    while len(order) < len(v):
        with np.errstate(divide="ignore"):
            logprod += np.log(np.abs(v - v[order[-1]]))
        cand = np.where(np.isin(np.arange(len(v)), order), -np.inf, logprod)
        order.append(int(np.argmax(cand)))
    return order


def _validate(f: WirtingerFunction, spec: Spectrum) -> None:
    f.check_order(max(spec.exponents) - 1)
    f.check_domain(spec.values)


def hermite_interpolant(spec: Spectrum, f: WirtingerFunction) -> HermitePolynomial:
    """
    Interpolant ``p`` with ``p^(nu)(lam_j) = d^nu f(lam_j)`` for ``nu < exponent_j``.

    Clusters are visited in Leja order and each representative is repeated
    ``exponent_bound`` times, which keeps the node list admissible.
    """
    _validate(f, spec)
    nodes = []
    for j in leja_order(spec.values):
        c = spec.clusters[j]
        nodes.extend([c.value] * c.exponent_bound)
    x = np.array(nodes, dtype=np.complex128)
    tab = divided_differences(f, x, tol=0.0)
    return HermitePolynomial(x, tab.newton_coefficients)


def eval_poly_at_matrix(p: HermitePolynomial, a) -> np.ndarray:
    """Nested Newton-form evaluation of ``p(A)``."""
    a = np.asarray(a, dtype=np.complex128)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    out = p.coeffs[-1] * eye
    for k in range(len(p.coeffs) - 2, -1, -1):
        out = out @ (a - p.nodes[k] * eye) + p.coeffs[k] * eye
    return out


def _structure(a, cluster_tol):
    a = as_cmatrix(a)
    tol = default_cluster_tol(a) if cluster_tol is None else float(cluster_tol)
    s = schur_decompose(a, tol)
    return a, s, eigen_structure(s, tol)


def phi_hermite(f: WirtingerFunction, a, cluster_tol: float | None = None) -> np.ndarray:
    """``phi(A)`` as ``p(A)`` with ``p`` the ``d``-Hermite interpolant on the spectrum."""
    a, _, spec = _structure(a, cluster_tol)
    return eval_poly_at_matrix(hermite_interpolant(spec, f), a)


def opitz_matrix(nodes) -> np.ndarray:
    """Upper bidiagonal matrix with `nodes` on the diagonal and ones above it."""
    x = np.asarray(nodes, dtype=np.complex128).ravel()
    return np.diag(x) + np.diag(np.ones(len(x) - 1, dtype=np.complex128), 1)


def _diagonal_block(f: WirtingerFunction, t_block: np.ndarray, rep: complex) -> np.ndarray:
    k = t_block.shape[0]
    if k == 1:
        return np.array([[f(rep)]], dtype=np.complex128)
    eye = np.eye(k, dtype=np.complex128)
    # the diagonal of N is left as computed (not forced to zero) so the block
    # stays a polynomial in t_block and commutes with it
    nil = t_block - rep * eye
    floor = 1e-14 * max(np.linalg.norm(t_block, 2), np.finfo(float).tiny)
    out = f(rep) * eye
    power = eye
    for nu in range(1, k):
        power = power @ nil
        if np.linalg.norm(power, 2) < floor:
            break
        out = out + f.partial(nu, 0, rep) / factorial(nu) * power
    return out


def parlett_schur(f: WirtingerFunction, s: SchurForm, spec: Spectrum) -> np.ndarray:
    """Block Schur-Parlett recurrence on ``s.t``; returns ``phi(T)``."""
    _validate(f, spec)
    t = s.t
    n = s.n
    blocks = s.blocks
    fm = np.zeros((n, n), dtype=np.complex128)
    for blk, cl in zip(blocks, spec.clusters):
        fm[blk, blk] = _diagonal_block(f, t[blk, blk], cl.value)
    if all(b.stop - b.start == 1 for b in blocks):
        return _parlett_scalar(t, fm)
    for j in range(len(blocks)):
        rj = blocks[j]
        for i in range(j - 1, -1, -1):
            ri = blocks[i]
            mid = slice(ri.stop, rj.start)
            rhs = fm[ri, ri] @ t[ri, rj] - t[ri, rj] @ fm[rj, rj]
            if mid.start < mid.stop:
                rhs += fm[ri, mid] @ t[mid, rj] - t[ri, mid] @ fm[mid, rj]
            fm[ri, rj] = solve_sylvester_tri(t[ri, ri], t[rj, rj], rhs)
    return fm


def _parlett_scalar(t: np.ndarray, fm: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    d = np.diag(t)
    fd = np.diag(fm).copy()
    for j in range(1, n):
        for i in range(j - 1, -1, -1):
            acc = t[i, j] * (fd[i] - fd[j])
            if j - i > 1:
                acc += fm[i, i + 1:j] @ t[i + 1:j, j] - t[i, i + 1:j] @ fm[i + 1:j, j]
            fm[i, j] = acc / (d[i] - d[j])
    return fm


def phi_parlett(f: WirtingerFunction, a, cluster_tol: float | None = None) -> np.ndarray:
    """
    ``phi(A)`` by the block Schur-Parlett recurrence.

    Parameters
    ----------
    f : WirtingerFunction
        Needs ``d``-derivatives up to the largest cluster size minus one.
    a : (n, n) array_like
    cluster_tol : float, optional
        Eigenvalues closer than this are treated as one; default
        ``1e-8 * max(1, ||A||)``.

    Returns
    -------
    ndarray
        ``Q phi(T) Q^H``.
    """
    _, s, spec = _structure(a, cluster_tol)
    fm = parlett_schur(f, s, spec)
    return s.q @ fm @ s.q.conj().T


def matrix_function(f: WirtingerFunction, a, method: str = "parlett",
                    cluster_tol: float | None = None, **integral_opts) -> np.ndarray:
    """Dispatch to :func:`phi_hermite`, :func:`phi_parlett` or the quadrature route."""
    if method == "hermite":
        return phi_hermite(f, a, cluster_tol)
    if method == "parlett":
        return phi_parlett(f, a, cluster_tol)
    if method == "integral":
        from .cauchy_green import phi_integral
        return phi_integral(f, a, cluster_tol=cluster_tol, **integral_opts)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")

