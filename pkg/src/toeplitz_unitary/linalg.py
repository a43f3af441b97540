"""Dense linear-algebra helpers shared across the package.

All rank decisions use a relative singular-value threshold
``tol * max(largest singular value, 1)``.  The floor at 1 keeps kernels of
numerically-zero matrices well defined: everything in this package is built
from contractions, so 1 is the natural scale.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-8


def as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def spectral_norm(a) -> float:
    """Largest singular value; 0.0 for empty matrices."""
    a = as_complex(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def empty_basis(n: int) -> np.ndarray:
    return np.zeros((n, 0), dtype=complex)


def normalize_column_phases(b: np.ndarray) -> np.ndarray:
    """Scale each column so its first significantly-nonzero entry is real positive.

    Makes orthonormalization output deterministic for golden-file tests.
    """
    b = as_complex(b).copy()
    for j in range(b.shape[1]):
        col = b[:, j]
        mags = np.abs(col)
        top = mags.max() if mags.size else 0.0
        if top == 0.0:
            continue
        i = int(np.argmax(mags > 1e-12 * top))
        phase = col[i] / abs(col[i])
        b[:, j] = col * np.conj(phase)
    return b


def orthonormal_columns(x, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column space of ``x`` (SVD based)."""
    x = as_complex(x)
    if x.size == 0:
        return empty_basis(x.shape[0])
    u, s, _ = np.linalg.svd(x, full_matrices=False)
    cut = tol * max(s[0] if s.size else 0.0, 1.0)
    r = int(np.sum(s > cut))
    return normalize_column_phases(u[:, :r])


def nullspace(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ``ker a``, columns of shape (a.shape[1], k)."""
    a = as_complex(a)
    n = a.shape[1]
    if a.size == 0 or n == 0:
        return np.eye(n, dtype=complex) if n else empty_basis(0)
    # the economy SVD already carries the full right factor when rows >= cols
    _, s, vh = np.linalg.svd(a, full_matrices=a.shape[0] < n)
    cut = tol * max(s[0] if s.size else 0.0, 1.0)
    r = int(np.sum(s > cut))
    return normalize_column_phases(vh[r:].conj().T)


def psd_kernel(q, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Kernel of a positive-semidefinite matrix via Hermitian eigendecomposition."""
    q = as_complex(q)
    n = q.shape[0]
    if n == 0:
        return empty_basis(0)
    q = 0.5 * (q + q.conj().T)
    w, v = np.linalg.eigh(q)
    cut = tol * max(abs(w[-1]) if w.size else 0.0, 1.0)
    keep = np.abs(w) <= cut
    return normalize_column_phases(v[:, keep])


def intersect_subspaces(b1, b2, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of range(b1) ∩ range(b2).

    Uses the nullspace of the stacked complementary projectors, which is
    numerically robust for nearly-aligned subspaces.
    """
    b1 = as_complex(b1)
    b2 = as_complex(b2)
    n = b1.shape[0]
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return empty_basis(n)
    eye = np.eye(n, dtype=complex)
    stacked = np.vstack([eye - b1 @ b1.conj().T, eye - b2 @ b2.conj().T])
    return nullspace(stacked, tol)


def principal_angles(b1, b2) -> np.ndarray:
    """Principal angles (radians, ascending) between two orthonormal ranges.

    Sine-based formulation: the cosine formula cannot resolve angles below
    sqrt(machine eps), which matters when certifying agreement at 1e-7.
    """
    b1 = as_complex(b1)
    b2 = as_complex(b2)
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return np.zeros(0)
    if b2.shape[1] > b1.shape[1]:
        b1, b2 = b2, b1
    residual = b2 - b1 @ (b1.conj().T @ b2)
    s = np.linalg.svd(residual, compute_uv=False)
    return np.arcsin(np.clip(np.sort(s), -1.0, 1.0))


def subspace_gap(b1, b2) -> float:
    """Operator-norm distance between the two range projectors."""
    b1 = as_complex(b1)
    b2 = as_complex(b2)
    n = b1.shape[0]
    p1 = b1 @ b1.conj().T if b1.shape[1] else np.zeros((n, n), dtype=complex)
    p2 = b2 @ b2.conj().T if b2.shape[1] else np.zeros((n, n), dtype=complex)
    return spectral_norm(p1 - p2)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_projection(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Random rank-``rank`` orthogonal projection on C^n."""
    if rank == 0:
        return np.zeros((n, n), dtype=complex)
    q = haar_unitary(n, rng)[:, :rank]
    return q @ q.conj().T


def random_contraction(n: int, rng: np.random.Generator, norm: float = 1.0) -> np.ndarray:
    """Complex Ginibre matrix rescaled to the requested spectral norm."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g * (norm / spectral_norm(g))
