"""Pure bipartite states as coefficient matrices.

A state ``sum_ij a_ij |i>_1 |j>_2`` is stored as its ``d1 x d2`` coefficient
matrix ``A``. Local operations act by matrix multiplication: ``U`` on party 1
gives ``U @ A`` and ``U`` on party 2 gives ``A @ U.T``. The reduced density
operator of party 1 is ``A @ A^dagger``, so Schmidt data falls out of either
its spectrum or the singular values of ``A`` directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qcoeff import matrix_core as mc
from qcoeff.errors import DimensionError, NormalizationError, NotUnitaryError, ZeroStateError

EIGENVALUE_NOISE_FLOOR = 1e-14
"""Relative floor under which eigenvalues of ``A A^dagger`` count as zero.

Forming ``A A^dagger`` in double precision leaves zero eigenvalues at around
``1e-17 * lambda_max``, so eigenvalue thresholds below this floor would
count rounding noise as Schmidt weight.
"""


@dataclass(frozen=True)
class PureBipartiteState:
    """Normalized pure state of a ``dim_left x dim_right`` system.

    Build instances with :func:`make_state`; the constructor trusts its input.
    """

    dim_left: int
    dim_right: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, PureBipartiteState):
            return NotImplemented
        return (self.dim_left, self.dim_right) == (other.dim_left, other.dim_right) and bool(
            np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``A == sum_k coefficients[k] * outer(left_basis[:, k], right_basis[:, k])``."""

    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    @property
    def schmidt_number(self) -> int:
        return len(self.coefficients)

    @property
    def weights(self) -> np.ndarray:
        """Squared coefficients, i.e. the eigenvalues of the reduced density operator."""
        return self.coefficients**2

    def reconstruct(self) -> np.ndarray:
        return (self.left_basis * self.coefficients) @ self.right_basis.T


def make_state(dim_left: int, dim_right: int, coeffs, normalize: bool = False) -> PureBipartiteState:
    """Validate a coefficient matrix and wrap it as a state.

    Raises:
        DimensionError: ``coeffs`` is not ``dim_left x dim_right``.
        ZeroStateError: ``coeffs`` is zero and ``normalize`` is set.
        NormalizationError: ``normalize`` is off and ``||coeffs||_F`` differs
            from 1 by more than ``1e-9``.
    """
    a = mc.as_matrix(coeffs, "coeffs")
    if a.shape != (dim_left, dim_right):
        raise DimensionError(f"coeffs has shape {a.shape}, expected ({dim_left}, {dim_right})")
    norm = mc.frobenius_norm(a)
    if normalize:
        if norm == 0.0:
            raise ZeroStateError("cannot normalize the zero vector")
        a = a / norm
    elif abs(norm - 1.0) > mc.DEFAULT_TOL:
        raise NormalizationError(f"state norm is {norm:.12g}, expected 1")
    return PureBipartiteState(dim_left, dim_right, a)


def from_matrix(coeffs, normalize: bool = False) -> PureBipartiteState:
    """Like :func:`make_state` with the dimensions read off the matrix."""
    a = mc.as_matrix(coeffs, "coeffs")
    return make_state(a.shape[0], a.shape[1], a, normalize=normalize)


def _check_local_unitary(u, dim: int) -> np.ndarray:
    u = mc.as_matrix(u, "operator")
    if u.shape != (dim, dim):
        raise DimensionError(f"operator has shape {u.shape}, expected ({dim}, {dim})")
    if not mc.is_unitary(u, mc.DEFAULT_TOL):
        raise NotUnitaryError("local operation must be unitary")
    return u


def apply_left(state: PureBipartiteState, u) -> PureBipartiteState:
    """Apply the unitary ``u`` to party 1: ``A -> u A``."""
    u = _check_local_unitary(u, state.dim_left)
    return PureBipartiteState(state.dim_left, state.dim_right, u @ state.coeffs)


def apply_right(state: PureBipartiteState, u) -> PureBipartiteState:
    """Apply the unitary ``u`` to party 2: ``A -> A u^T``."""
    u = _check_local_unitary(u, state.dim_right)
    return PureBipartiteState(state.dim_left, state.dim_right, state.coeffs @ u.T)


def reduced_density_left(state: PureBipartiteState) -> np.ndarray:
    a = state.coeffs
    return a @ a.conj().T


def _threshold(values: np.ndarray, rel: float) -> np.ndarray:
    top = values[0] if len(values) else 0.0
    if top <= 0.0:
        return values[:0]
    return values[values > rel * top]


def schmidt_coefficients(state: PureBipartiteState, tol: float = mc.DEFAULT_TOL**2) -> np.ndarray:
    """Non-zero eigenvalues of the reduced density operator, descending.

    ``tol`` is relative to the largest eigenvalue. It is applied as
    ``max(tol, EIGENVALUE_NOISE_FLOOR)``. To compare with
    :func:`schmidt_number` at singular-value tolerance ``t``, pass ``t**2``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    values = mc.hermitian_eig(reduced_density_left(state)).eigenvalues
    return _threshold(values, max(tol, EIGENVALUE_NOISE_FLOOR))


def schmidt_number(state: PureBipartiteState, tol: float = mc.DEFAULT_TOL) -> int:
    """Rank of the coefficient matrix at relative singular-value tolerance ``tol``."""
    return mc.rank(state.coeffs, tol)


def is_entangled(state: PureBipartiteState, tol: float = mc.DEFAULT_TOL) -> bool:
    return schmidt_number(state, tol) >= 2


def schmidt_decompose(state: PureBipartiteState, tol: float = mc.DEFAULT_TOL) -> SchmidtDecomposition:
    """Schmidt form of ``state`` from the SVD ``A = U diag(s) V^dagger``.

    The expansion needs ``A = sum_k s_k u_k w_k^T``, so the right-hand basis
    vectors are ``w_k = conj(v_k)``. Terms with ``s_k <= tol * s_max`` are
    dropped.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    u, sigma, v = mc.svd(state.coeffs)
    keep = sigma > tol * sigma[0]
    return SchmidtDecomposition(
        coefficients=sigma[keep].copy(),
        left_basis=u[:, keep].copy(),
        right_basis=np.conj(v[:, keep]),
    )


def product_state(left, right) -> PureBipartiteState:
    """State ``|left> |right>`` from two (not necessarily normalized) vectors."""
    left = np.asarray(left, dtype=np.complex128).ravel()
    right = np.asarray(right, dtype=np.complex128).ravel()
    return from_matrix(np.outer(left, right), normalize=True)


def bell_state(d: int = 2) -> PureBipartiteState:
    """Maximally entangled state ``sum_i |ii> / sqrt(d)``."""
    return PureBipartiteState(d, d, mc.identity(d) / np.sqrt(d))
