"""Reproducible test matrices with known Jordan structure."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "FIXTURE_CLUSTER_TOL",
    "JordanFixture",
    "jordan_block",
    "jordan_matrix",
    "well_conditioned",
    "random_unitary",
    "random_normal",
    "separated_points",
    "random_fixture",
    "fixture_from_blocks",
    "nilpotent_chain_example",
    "companion",
]

# computed eigenvalues of a size-k Jordan block spread like eps^(1/k)
FIXTURE_CLUSTER_TOL = 1e-2


@dataclass(frozen=True)
class JordanFixture:
    """``a = t @ j @ inv(t)`` with ``j`` block diagonal, blocks ``(lam, size)``."""

    a: np.ndarray
    t: np.ndarray
    j: np.ndarray
    blocks: tuple

    @property
    def diagonalizable(self) -> bool:
        return all(k == 1 for _, k in self.blocks)

    def transform(self, x: np.ndarray) -> np.ndarray:
        return self.t @ x @ np.linalg.inv(self.t)


def jordan_block(lam: complex, size: int) -> np.ndarray:
    return lam * np.eye(size, dtype=np.complex128) + np.eye(size, k=1, dtype=np.complex128)


def jordan_matrix(blocks) -> np.ndarray:
    return scipy.linalg.block_diag(*[jordan_block(lam, k) for lam, k in blocks]).astype(np.complex128)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def well_conditioned(n: int, rng: np.random.Generator, spread: float = 0.3) -> np.ndarray:
    """``I + spread * U`` with ``U`` unitary: condition number at most ``(1+spread)/(1-spread)``."""
    return np.eye(n) + spread * random_unitary(n, rng)


def random_normal(n: int, rng: np.random.Generator, radius: float = 2.0) -> np.ndarray:
    u = random_unitary(n, rng)
    lam = radius * np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    return u @ np.diag(lam) @ u.conj().T


def separated_points(count: int, rng: np.random.Generator, gap: float = 0.5,
                     radius: float = 2.0) -> np.ndarray:
    """Rejection-sampled points in a disc with pairwise distance at least `gap`."""
    pts: list[complex] = []
    while len(pts) < count:
        z = radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - p) >= gap for p in pts):
            pts.append(complex(z))
    return np.array(pts)


def random_fixture(n: int, rng: np.random.Generator, defective: bool | None = None,
                   max_block: int = 4) -> JordanFixture:
    """
    Random ``T J T^-1`` with separated eigenvalues and well-conditioned ``T``.

    With `defective` the block sizes form a random partition of `n` with at
    least one block of size two or more; otherwise all blocks are 1x1.
    ``None`` picks either at random.
    """
    if defective is None:
        defective = bool(rng.integers(2)) and n >= 2
    sizes: list[int] = []
    if defective:
        first = int(rng.integers(2, min(max_block, n) + 1))
        sizes.append(first)
        rest = n - first
        while rest:
            k = int(rng.integers(1, min(max_block, rest) + 1))
            sizes.append(k)
            rest -= k
    else:
        sizes = [1] * n
    lam = separated_points(len(sizes), rng)
    return fixture_from_blocks(zip(lam, sizes), rng)


def fixture_from_blocks(blocks, rng: np.random.Generator, spread: float = 0.3) -> JordanFixture:
    """``T J T^-1`` for the given ``(lam, size)`` blocks and ``T = I + spread * U``."""
    blocks = tuple((complex(l), int(k)) for l, k in blocks)
    j = jordan_matrix(blocks)
    t = well_conditioned(j.shape[0], rng, spread)
    return JordanFixture(t @ j @ np.linalg.inv(t), t, j, blocks)


def nilpotent_chain_example(lam: complex, n: int, coupled: bool = False) -> np.ndarray:
    """
    ``lam e1 e1^T`` plus a nilpotent shift on coordinates ``2..n``.

    With `coupled`, the entry ``(1, 2)`` is set to one, which links the
    simple eigenvalue to the chain.
    """
    b = np.zeros((n, n), dtype=np.complex128)
    b[0, 0] = lam
    for j in range(1, n - 1):
        b[j, j + 1] = 1.0
    if coupled:
        b[0, 1] = 1.0
    return b


def companion(roots) -> np.ndarray:
    """Companion matrix with ones on the subdiagonal and ``-c_k`` in the last column."""
    coeffs = np.poly(np.asarray(roots, dtype=np.complex128))  # monic, descending
    n = len(coeffs) - 1
    c = np.zeros((n, n), dtype=np.complex128)
    c[1:, :-1] = np.eye(n - 1)
    c[:, -1] = -coeffs[1:][::-1]
    return c
