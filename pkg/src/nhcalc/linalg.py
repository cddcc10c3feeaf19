"""
Dense complex linear algebra used by the functional calculus.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_cmatrix`
validates and copies inputs.  The Schur form carries a partition of its
diagonal into eigenvalue clusters, which every higher-level routine treats as
the eigenvalue structure of the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DomainError, NotDiagonalizableError, NumericalError

__all__ = [
    "as_cmatrix",
    "default_cluster_tol",
    "SchurForm",
    "Cluster",
    "Spectrum",
    "schur_decompose",
    "reorder_schur",
    "eigen_structure",
    "solve_sylvester_tri",
    "operator_norm",
    "spectral_radius",
    "kappa_eigvec",
    "eigenvector_matrix",
    "resolvent",
    "ShiftedInverse",
]


def as_cmatrix(a) -> np.ndarray:
    """Return a finite, square ``complex128`` copy of `a`."""
    m = np.array(a, dtype=np.complex128, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def default_cluster_tol(a: np.ndarray) -> float:
    """``1e-8 * max(1, ||A||)``."""
    return 1e-8 * max(1.0, operator_norm(a))


def _components(values: np.ndarray, tol: float) -> list[list[int]]:
    """Connected components of ``|v_i - v_j| <= tol``, ordered by first member."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if n > 1:
        close = np.abs(values[:, None] - values[None, :]) <= tol
        for i, j in zip(*np.nonzero(np.triu(close, 1))):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class SchurForm:
    """Unitary `q` and upper triangular `t` with ``a = q @ t @ q^H``.

    `block_starts` partitions the diagonal of `t` into contiguous clusters.
    """

    q: np.ndarray
    t: np.ndarray
    block_starts: tuple[int, ...] = (0,)

    @property
    def n(self) -> int:
        return self.t.shape[0]

    @property
    def blocks(self) -> list[slice]:
        ends = list(self.block_starts[1:]) + [self.n]
        return [slice(s, e) for s, e in zip(self.block_starts, ends)]

    def reconstruct(self) -> np.ndarray:
        return self.q @ self.t @ self.q.conj().T


@dataclass(frozen=True)
class Cluster:
    """One eigenvalue cluster: mean value, member count, Schur-diagonal indices."""

    value: complex
    exponent_bound: int
    members: tuple[int, ...] = ()


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue clusters with minimal-polynomial exponent bounds."""

    clusters: tuple[Cluster, ...]
    cluster_tol: float = 0.0

    @classmethod
    def from_pairs(cls, pairs, cluster_tol: float = 0.0) -> "Spectrum":
        """Build from ``[(eigenvalue, exponent_bound), ...]``."""
        return cls(tuple(Cluster(complex(v), int(e)) for v, e in pairs), cluster_tol)

    @property
    def values(self) -> np.ndarray:
        return np.array([c.value for c in self.clusters], dtype=np.complex128)

    @property
    def exponents(self) -> list[int]:
        return [c.exponent_bound for c in self.clusters]

    @property
    def degree(self) -> int:
        """Sum of exponent bounds (degree of the bounding minimal polynomial)."""
        return sum(self.exponents)

    @property
    def is_simple(self) -> bool:
        return all(e == 1 for e in self.exponents)

    @property
    def separation(self) -> float:
        """Smallest distance between cluster representatives (inf for one cluster)."""
        v = self.values
        if len(v) < 2:
            return float("inf")
        d = np.abs(v[:, None] - v[None, :])
        return float(d[np.triu_indices(len(v), 1)].min())


def _swap_adjacent(q: np.ndarray, t: np.ndarray, k: int) -> None:
    """Swap diagonal entries k, k+1 of `t` in place by a Givens rotation."""
    a, b = t[k, k], t[k + 1, k + 1]
    v = np.array([t[k, k + 1], b - a])
    nv = np.hypot(abs(v[0]), abs(v[1]))
    if nv == 0.0:
        return
    c, s = v / nv
    g = np.array([[c, -np.conj(s)], [s, np.conj(c)]])
    t[k:k + 2, :] = g.conj().T @ t[k:k + 2, :]
    t[:, k:k + 2] = t[:, k:k + 2] @ g
    q[:, k:k + 2] = q[:, k:k + 2] @ g
    if not np.isfinite(t[k:k + 2, k:k + 2]).all():
        raise NumericalError(f"Schur swap broke down at position {k}")
    t[k + 1, k] = 0.0
    t[k, k], t[k + 1, k + 1] = b, a


def reorder_schur(s: SchurForm, target_order, cluster_tol: float | None = None) -> SchurForm:
    """
    Permute the diagonal of a Schur form by adjacent unitary swaps.

    Parameters
    ----------
    s : SchurForm
    target_order : sequence of int
        ``target_order[k]`` is the current diagonal position that should end
        up at position ``k``.
    cluster_tol : float, optional
        Tolerance used to recompute the block partition of the result.
        Defaults to ``1e-8 * max(1, ||T||)``.

    Returns
    -------
    SchurForm
        The reordered form.  Its clusters must be contiguous, otherwise
        ``ValueError`` is raised.
    """
    order = [int(i) for i in target_order]
    n = s.n
    if sorted(order) != list(range(n)):
        raise ValueError("target_order is not a permutation")
    q, t = s.q.copy(), s.t.copy()
    cur = list(range(n))
    for k, want in enumerate(order):
        pos = cur.index(want)
        for p in range(pos - 1, k - 1, -1):
            _swap_adjacent(q, t, p)
            cur[p], cur[p + 1] = cur[p + 1], cur[p]
    if cluster_tol is None:
        cluster_tol = 1e-8 * max(1.0, np.linalg.norm(t, 2))
    return SchurForm(q, t, _block_starts(np.diag(t), cluster_tol))


def _block_starts(diag: np.ndarray, tol: float) -> tuple[int, ...]:
    starts = []
    for g in _components(diag, tol):
        if g != list(range(g[0], g[0] + len(g))):
            raise ValueError("reordering splits an eigenvalue cluster")
        starts.append(g[0])
    return tuple(sorted(starts))


def schur_decompose(a, tol: float | None = None) -> SchurForm:
    """
    Complex Schur decomposition with clustered, contiguous diagonal blocks.

    Eigenvalues whose distance is at most `tol` (transitively) form one
    cluster; clusters are made contiguous by unitary reordering.

    Parameters
    ----------
    a : (n, n) array_like
    tol : float, optional
        Cluster tolerance, default ``1e-8 * max(1, ||A||)``.
    """
    a = as_cmatrix(a)
    if tol is None:
        tol = default_cluster_tol(a)
    if tol <= 0:
        raise ValueError("cluster tolerance must be positive")
    try:
        t, q = scipy.linalg.schur(a, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"QR iteration failed: {exc}") from exc
    t = np.triu(t)
    groups = _components(np.diag(t), tol)
    order = [i for g in groups for i in g]
    s = reorder_schur(SchurForm(q, t), order, cluster_tol=np.inf)
    starts, pos = [], 0
    for g in groups:
        starts.append(pos)
        pos += len(g)
    return SchurForm(s.q, s.t, tuple(starts))


def eigen_structure(s: SchurForm, cluster_tol: float | None = None) -> Spectrum:
    """Cluster the Schur diagonal; representative = mean, exponent = size."""
    diag = np.diag(s.t)
    if cluster_tol is None:
        cluster_tol = 1e-8 * max(1.0, np.linalg.norm(s.t, 2))
    clusters = tuple(
        Cluster(complex(diag[g].mean()), len(g), tuple(g))
        for g in _components(diag, cluster_tol)
    )
    return Spectrum(clusters, float(cluster_tol))


def solve_sylvester_tri(t_ii, t_jj, c, tol: float | None = None) -> np.ndarray:
    """
    Solve ``t_ii @ X - X @ t_jj = c`` for upper triangular `t_ii`, `t_jj`.

    Back-substitution over rows of `t_ii` (bottom up) and columns of `t_jj`
    (left to right).  Raises :class:`NumericalError` when a diagonal pair
    is closer than `tol`.
    """
    a = np.asarray(t_ii, dtype=np.complex128)
    b = np.asarray(t_jj, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128)
    p, q = a.shape[0], b.shape[0]
    if tol is None:
        tol = 1e-14 * max(1.0, np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0))
    if p == 1 and q == 1:
        d = a[0, 0] - b[0, 0]
        if abs(d) <= tol:
            raise NumericalError(f"singular Sylvester system: eigenvalues {a[0, 0]} and {b[0, 0]} coincide")
        return c / d
    x = np.zeros((p, q), dtype=np.complex128)
    for i in range(p - 1, -1, -1):
        for j in range(q):
            d = a[i, i] - b[j, j]
            if abs(d) <= tol:
                raise NumericalError(
                    f"singular Sylvester system: eigenvalues {a[i, i]} and {b[j, j]} coincide")
            rhs = c[i, j] - a[i, i + 1:] @ x[i + 1:, j] + x[i, :j] @ b[:j, j]
            x[i, j] = rhs / d
    return x


def operator_norm(a, tol: float = 1e-10, maxiter: int = 10_000) -> float:
    """Largest singular value by power iteration on ``A^H A``."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0 or not np.any(a):
        return 0.0
    # start from the column of largest norm: never orthogonal to the top
    # right singular vector in practice, and deterministic
    x = a.conj().T @ a[:, np.argmax(np.linalg.norm(a, axis=0))]
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(maxiter):
        y = a.conj().T @ (a @ x)
        new = float(np.real(np.vdot(x, y)))
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0
        x = y / ny
        if abs(new - est) <= tol * new:
            est = new
            break
        est = new
    return float(np.sqrt(max(est, 0.0)))


def spectral_radius(a) -> float:
    """``max |lambda|`` over the Schur diagonal."""
    t = scipy.linalg.schur(as_cmatrix(a), output="complex")[0]
    return float(np.abs(np.diag(t)).max())


def eigenvector_matrix(s: SchurForm) -> np.ndarray:
    """Unit-norm eigenvectors assembled from a Schur form (columns)."""
    t = s.t
    n = s.n
    v = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        v[k, k] = 1.0
        if k:
            m = t[:k, :k] - t[k, k] * np.eye(k)
            v[:k, k] = scipy.linalg.solve_triangular(m, -t[:k, k])
    x = s.q @ v
    return x / np.linalg.norm(x, axis=0)


def kappa_eigvec(a, cluster_tol: float | None = None) -> float:
    """Condition number ``||V|| ||V^-1||`` of the unit-column eigenvector matrix."""
    a = as_cmatrix(a)
    s = schur_decompose(a, cluster_tol)
    spec = eigen_structure(s, cluster_tol if cluster_tol is not None else default_cluster_tol(a))
    if not spec.is_simple:
        bad = [c.value for c in spec.clusters if c.exponent_bound > 1]
        raise NotDiagonalizableError(f"clustered eigenvalues {bad}; eigenvector basis unavailable")
    v = eigenvector_matrix(s)
    return operator_norm(v) * operator_norm(np.linalg.inv(v))


def resolvent(a, zeta: complex) -> np.ndarray:
    """``(zeta I - A)^-1``; refuses shifts within ``1e-14 ||A||`` of an eigenvalue."""
    a = as_cmatrix(a)
    n = a.shape[0]
    eig = np.diag(scipy.linalg.schur(a, output="complex")[0])
    gap = np.abs(eig - zeta).min()
    if gap <= 1e-14 * max(operator_norm(a), np.finfo(float).tiny):
        raise DomainError(f"shift {zeta} is an eigenvalue (distance {gap:.3e})")
    return np.linalg.solve(zeta * np.eye(n) - a, np.eye(n))


@dataclass
class ShiftedInverse:
    """Batched resolvents computed in Schur coordinates.

    Inverting ``zeta I - T`` with `T` triangular keeps the entries
    componentwise accurate even close to defective eigenvalues, which a dense
    solve with `A` does not.
    """

    schur: SchurForm
    chunk: int = 4096
    _eye: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self._eye = np.eye(self.schur.n, dtype=np.complex128)

    def weighted_sum(self, zetas, weights) -> np.ndarray:
        """``sum_k weights[k] (zetas[k] I - A)^-1`` in original coordinates."""
        return self.to_original(self.weighted_sum_schur(zetas, weights))

    def weighted_sum_schur(self, zetas, weights) -> np.ndarray:
        zetas = np.ravel(np.asarray(zetas, dtype=np.complex128))
        weights = np.ravel(np.asarray(weights, dtype=np.complex128))
        t = self.schur.t
        acc = np.zeros_like(t)
        for lo in range(0, len(zetas), self.chunk):
            z = zetas[lo:lo + self.chunk]
            m = z[:, None, None] * self._eye - t
            acc += np.einsum("k,kij->ij", weights[lo:lo + self.chunk], np.linalg.inv(m))
        return acc

    def batch_schur(self, zetas) -> np.ndarray:
        """Stack of ``(zeta I - T)^-1`` for each shift."""
        z = np.ravel(np.asarray(zetas, dtype=np.complex128))
        return np.linalg.inv(z[:, None, None] * self._eye - self.schur.t)

    def to_original(self, x: np.ndarray) -> np.ndarray:
        q = self.schur.q
        return q @ x @ q.conj().T
