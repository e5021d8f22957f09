"""Dense complex linear-algebra kernel shared by the whole package.

Everything operates on plain numpy ``complex128`` arrays. Inputs are
validated for finiteness, Hermitian inputs are checked against a relative
asymmetry tolerance and symmetrized before factorization, and unitary
propagators are built from the spectral decomposition so they stay unitary
to machine precision for arbitrarily long evolution times.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimMismatch, NonFinite, NotHermitian, Singular

HERMITICITY_RTOL = 1e-10


class HermEig(NamedTuple):
    """Full spectrum of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]


class SvdFactorization(NamedTuple):
    """Thin left factor, descending singular values, full right factor."""

    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimMismatch(f"{name} must be two-dimensional")
    if not np.isfinite(a).all():
        raise NonFinite(f"{name} contains non-finite entries")
    return a


def as_complex_vector(v, name: str = "vector") -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim == 2 and 1 in v.shape:
        v = v.reshape(-1)
    if v.ndim != 1 or v.size == 0:
        raise DimMismatch(f"{name} must be a nonempty one-dimensional array")
    if not np.isfinite(v).all():
        raise NonFinite(f"{name} contains non-finite entries")
    return v


def _checked_hermitian(h) -> np.ndarray:
    h = as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotHermitian("matrix is not square")
    scale = float(np.abs(h).max()) if h.size else 0.0
    deviation = float(np.abs(h - h.conj().T).max())
    if deviation > HERMITICITY_RTOL * scale:
        raise NotHermitian(
            f"asymmetry {deviation:.3e} exceeds {HERMITICITY_RTOL:g} * {scale:.3e}")
    return (h + h.conj().T) / 2.0


def hermitian_eig(h) -> HermEig:
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix."""
    h = _checked_hermitian(h)
    values, vectors = np.linalg.eigh(h)
    return HermEig(values, vectors)


def svd(a) -> SvdFactorization:
    """Singular value decomposition with a thin left and a full right factor.

    The right factor always carries all ``cols`` right-singular vectors, so
    the null-space direction of a tall matrix is available directly:
    ``a == left @ diag(singulars) @ right[:, :k].conj().T`` with
    ``k = min(rows, cols)``.
    """
    a = as_complex_matrix(a)
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    k = min(a.shape)
    return SvdFactorization(u[:, :k], s, vh.conj().T)


def expm_unitary(h, t: float) -> np.ndarray:
    """``exp(-i h t)`` through the spectral decomposition of ``h``.

    Exact up to the accuracy of the eigendecomposition, which keeps the
    result unitary even for evolution times where series or splitting
    schemes would drift.
    """
    eig = hermitian_eig(h)
    phases = np.exp(-1j * eig.eigenvalues * float(t))
    return (eig.eigenvectors * phases) @ eig.eigenvectors.conj().T


def solve_hermitian(h, rhs) -> np.ndarray:
    """Solve ``h @ x = rhs`` for a well-conditioned Hermitian ``h``."""
    eig = hermitian_eig(h)
    rhs = as_complex_vector(rhs, "rhs")
    if rhs.size != eig.eigenvectors.shape[0]:
        raise DimMismatch("rhs length must match the matrix dimension")
    magnitudes = np.abs(eig.eigenvalues)
    if magnitudes.max() == 0.0 or magnitudes.min() <= 1e-12 * magnitudes.max():
        raise Singular("matrix is singular to working precision")
    weights = eig.eigenvectors.conj().T @ rhs
    return eig.eigenvectors @ (weights / eig.eigenvalues)


def poly_roots(coeffs) -> np.ndarray:
    """Roots of a monic polynomial given ascending coefficients.

    ``coeffs[k]`` multiplies ``t**k`` and the leading entry must be one.
    Roots are eigenvalues of the companion matrix, returned sorted by real
    part then imaginary part.
    """
    c = np.asarray(coeffs, dtype=complex).reshape(-1)
    if not np.isfinite(c).all():
        raise NonFinite("polynomial coefficients contain non-finite values")
    if c.size < 2:
        raise ValueError("polynomial degree must be at least one")
    if abs(c[-1] - 1.0) > 1e-12:
        raise ValueError("polynomial must be monic (leading coefficient one)")
    n = c.size - 1
    companion = np.zeros((n, n), dtype=complex)
    if n > 1:
        companion[1:, :-1] = np.eye(n - 1)
    companion[:, -1] = -c[:n]
    return np.sort_complex(np.linalg.eigvals(companion))
