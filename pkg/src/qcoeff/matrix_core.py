"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every public
function validates its inputs through :func:`as_matrix`, never mutates its
arguments and returns fresh arrays.

The eigen- and singular-value routines are written out here (cyclic Jacobi)
rather than delegated to LAPACK, so that the whole numerical path used by the
entanglement criteria is small enough to read and test in isolation.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from qcoeff.errors import DimensionError, NotHermitianError, SingularMatrixError

DEFAULT_TOL = 1e-9
"""Relative tolerance for rank and normalization decisions."""

JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

_EPS = np.finfo(float).eps


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    """Real eigenvalues, descending."""
    eigenvectors: np.ndarray
    """Unit eigenvectors as columns, in the order of ``eigenvalues``."""


class Svd(NamedTuple):
    """Thin SVD with ``a == u @ diag(singular_values) @ v.conj().T``."""

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite two-dimensional complex array (a copy)."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def conjugate(a) -> np.ndarray:
    return np.conj(as_matrix(a))


def transpose(a) -> np.ndarray:
    return as_matrix(a).T.copy()


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(as_matrix(a)).T.copy()


def trace(a) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"trace of non-square matrix {a.shape}")
    return complex(np.trace(a))


def frobenius_norm(a) -> float:
    a = as_matrix(a)
    return float(np.sqrt(np.sum(a.real**2 + a.imag**2)))


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off.real**2 + off.imag**2)))


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    # Zero a[p, q] in place with the unitary G = diag(1, conj(phase)) @ R,
    # where the phase makes the (p, q) entry real and R is a real Jacobi rotation.
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    phase = apq / r
    app = a[p, p].real
    aqq = a[q, q].real
    tau = (aqq - app) / (2.0 * r)
    if tau == 0.0:
        t = 1.0
    else:
        t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ g
    a[idx, :] = g.conj().T @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ g


def hermitian_eig(a, tol: float = DEFAULT_TOL) -> HermitianEig:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Sweeps stop once the off-diagonal Frobenius mass falls to
    ``JACOBI_OFFDIAG_TOL * ||a||_F`` or after ``JACOBI_MAX_SWEEPS`` sweeps.
    Eigenvalues are returned in descending order; ties keep their diagonal
    position order.

    Raises:
        DimensionError: ``a`` is not square.
        NotHermitianError: ``||a - a^dagger||_F > tol * ||a||_F``.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[1] != n:
        raise DimensionError(f"hermitian_eig needs a square matrix, got {a.shape}")
    scale = frobenius_norm(a)
    if frobenius_norm(a - a.conj().T) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")

    work = 0.5 * (a + a.conj().T)
    vecs = identity(n)
    target = JACOBI_OFFDIAG_TOL * scale
    for _ in range(JACOBI_MAX_SWEEPS):
        if _offdiag_norm(work) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(work, vecs, p, q)

    values = np.diag(work).real.copy()
    order = np.argsort(-values, kind="stable")
    return HermitianEig(values[order], vecs[:, order])


def _orthonormal_complement(basis: list[np.ndarray], m: int) -> np.ndarray:
    # Next unit vector orthogonal to every vector in ``basis``; candidates are
    # the standard basis vectors, taking the one with the largest residual.
    best, best_norm = None, -1.0
    for j in range(m):
        w = np.zeros(m, dtype=np.complex128)
        w[j] = 1.0
        for _ in range(2):
            for b in basis:
                w = w - b * np.vdot(b, w)
        nrm = np.linalg.norm(w)
        if nrm > best_norm:
            best, best_norm = w, nrm
    return best / best_norm


def svd(a) -> Svd:
    """Thin singular value decomposition.

    ``v`` comes from :func:`hermitian_eig` of ``a^dagger a`` (of ``a a^dagger``
    for wide inputs, via the transpose). Singular values are taken as the
    column norms of ``a @ v`` rather than square roots of eigenvalues, which
    keeps null directions at roughly machine precision instead of
    ``sqrt(eps)``. Columns of ``u`` are Gram-Schmidt orthonormalized; those
    belonging to vanishing singular values are completed from the standard
    basis.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        t = svd(a.conj().T)
        return Svd(t.v, t.singular_values, t.u)

    eig = hermitian_eig(a.conj().T @ a, tol=1e-8)
    v = eig.eigenvectors
    b = a @ v
    sigma = np.linalg.norm(b, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, v, b = sigma[order], v[:, order], b[:, order]

    floor = 10.0 * max(m, n) * _EPS * (sigma[0] if n else 0.0)
    cols: list[np.ndarray] = []
    for k in range(n):
        w = b[:, k].copy()
        for _ in range(2):
            for c in cols:
                w = w - c * np.vdot(c, w)
        nrm = np.linalg.norm(w)
        if sigma[k] > floor and nrm > floor:
            cols.append(w / nrm)
        else:
            cols.append(_orthonormal_complement(cols, m))
    u = np.column_stack(cols)
    return Svd(u, sigma, v)


def rank(a, tol: float = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol * sigma_max`` (0 for a zero matrix)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    sigma = svd(a).singular_values
    if sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > tol * sigma[0]))


def inverse(a, tol: float = 1e-12) -> np.ndarray:
    """Inverse of a square full-rank matrix, built from its SVD.

    Raises:
        SingularMatrixError: some singular value is ``<= tol * sigma_max``.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"inverse of non-square matrix {a.shape}")
    u, sigma, v = svd(a)
    if sigma[0] == 0.0 or sigma[-1] <= tol * sigma[0]:
        raise SingularMatrixError(
            f"matrix is singular at tolerance {tol:g} (sigma_min/sigma_max = "
            f"{(sigma[-1] / sigma[0]) if sigma[0] else 0.0:.3g})"
        )
    return (v / sigma) @ u.conj().T


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return frobenius_norm(u @ u.conj().T - identity(u.shape[0])) <= tol
