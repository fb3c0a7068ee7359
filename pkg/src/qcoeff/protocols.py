"""Entanglement swapping, swap chains and two-pair bipartite teleportation.

All protocols work on coefficient matrices. Projecting the middle particles
of ``|A>_12 |C>_34`` onto the outcome state ``|B>_23`` leaves particles 1 and
4 in the (unnormalized) state with matrix ``A @ conj(B) @ C``; its squared
Frobenius norm is the Born probability of the outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qcoeff import matrix_core as mc
from qcoeff.errors import DimensionError, ImpossibleOutcomeError, NormalizationError
from qcoeff.state_algebra import PureBipartiteState

MIN_PROBABILITY = 1e-18
SINGULAR_TOL = 1e-12
UNITARY_TOL = 1e-8


@dataclass(frozen=True)
class MeasurementOutcome:
    """Two-party state a joint measurement projected onto, as a coefficient matrix."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape


def outcome(coeffs, normalize: bool = False) -> MeasurementOutcome:
    a = mc.as_matrix(coeffs, "outcome")
    norm = mc.frobenius_norm(a)
    if normalize and norm > 0.0:
        a = a / norm
    elif abs(norm - 1.0) > mc.DEFAULT_TOL:
        raise NormalizationError(f"outcome norm is {norm:.12g}, expected 1")
    return MeasurementOutcome(a)


def weyl_operator(d: int, shift: int, clock: int) -> np.ndarray:
    """``X**shift @ Z**clock`` with ``X|j> = |j+1 mod d>`` and ``Z|j> = w**j |j>``."""
    x = np.roll(mc.identity(d), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return np.linalg.matrix_power(x, shift) @ np.linalg.matrix_power(z, clock)


def bell_basis(d: int) -> list[MeasurementOutcome]:
    """The ``d**2`` generalized Bell states ``(X^m Z^n) / sqrt(d)``, orthonormal."""
    return [MeasurementOutcome(weyl_operator(d, m, n) / np.sqrt(d)) for m in range(d) for n in range(d)]


@dataclass(frozen=True)
class SwapResult:
    state: PureBipartiteState
    probability: float


def _normalized(raw: np.ndarray) -> SwapResult:
    probability = float(np.sum(raw.real**2 + raw.imag**2))
    if probability < MIN_PROBABILITY:
        raise ImpossibleOutcomeError(f"outcome probability {probability:.3g} is zero")
    coeffs = raw / np.sqrt(probability)
    return SwapResult(PureBipartiteState(*coeffs.shape, coeffs), probability)


def _swap_product(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0] or b.shape[1] != c.shape[0]:
        raise DimensionError(f"incompatible swap shapes {a.shape}, {b.shape}, {c.shape}")
    return a @ np.conj(b) @ c


def entanglement_swap(
    left: PureBipartiteState, measurement: MeasurementOutcome, right: PureBipartiteState
) -> SwapResult:
    """Joint measurement of the inner particles of two pairs.

    The outer particles end up in ``A conj(B) C / rho`` with probability
    ``rho**2 = ||A conj(B) C||_F**2``.
    """
    return _normalized(_swap_product(left.coeffs, measurement.coeffs, right.coeffs))


def swap_chain(
    pairs: Sequence[PureBipartiteState], measurements: Sequence[MeasurementOutcome]
) -> SwapResult:
    """End-to-end state of ``n`` pairs linked by ``n - 1`` joint measurements.

    The raw product ``A_1 conj(B_1) A_2 ... conj(B_{n-1}) A_n`` is folded
    strictly left to right and normalized once; the reported probability is
    the joint probability of the whole outcome sequence.
    """
    if len(pairs) < 1:
        raise DimensionError("a chain needs at least one pair")
    if len(measurements) != len(pairs) - 1:
        raise DimensionError(f"{len(pairs)} pairs need {len(pairs) - 1} measurements, got {len(measurements)}")
    if len(pairs) == 1:
        return SwapResult(pairs[0], 1.0)
    raw = pairs[0].coeffs
    for meas, pair in zip(measurements, pairs[1:]):
        raw = _swap_product(raw, meas.coeffs, pair.coeffs)
    return _normalized(raw)


@dataclass(frozen=True)
class TeleportPlan:
    """Everything Bob needs after Alice's two joint measurements.

    Particles: input on (1, 2), resources on (3, 4) and (5, 6); Alice measures
    (2, 3) then (1, 5). Bob ends up holding (6, 4) with coefficient matrix
    ``final_state`` (rows index particle 6, columns particle 4).

    ``correction`` is the single operator on particle 4, ``(G^T)^-1`` with
    ``G = conj(D) B conj(F) C / (rho1 rho2)``. It recovers the input exactly
    only when ``conj(F) C`` is proportional to the identity, reported as
    ``single_sided``. ``left_correction`` (particle 6) and
    ``right_correction`` (particle 4) together always recover it.
    """

    m_matrix: np.ndarray
    n_matrix: np.ndarray
    rho1: float
    rho2: float
    correction: np.ndarray
    correction_is_unitary: bool
    total_probability: float
    final_state: np.ndarray
    single_sided: bool
    left_correction: np.ndarray
    right_correction: np.ndarray
    recovered: np.ndarray
    residual: float
    two_sided_residual: float


def _is_scalar_multiple_of_identity(a: np.ndarray, tol: float) -> bool:
    d = a.shape[0]
    scalar = np.trace(a) / d
    return mc.frobenius_norm(a - scalar * mc.identity(d)) <= tol * mc.frobenius_norm(a)


def teleport_bipartite(
    input: PureBipartiteState,
    resource1: PureBipartiteState,
    resource2: PureBipartiteState,
    outcome1: MeasurementOutcome,
    outcome2: MeasurementOutcome,
) -> TeleportPlan:
    """Teleport a two-particle state through two shared pairs.

    ``outcome1`` is the (2, 3) measurement result ``D``; ``outcome2`` the
    (1, 5) result ``F``.

    Raises:
        DimensionError: the five matrices do not share one square dimension.
        ImpossibleOutcomeError: either measurement has zero probability.
        SingularMatrixError: ``G`` is singular, so no correction exists.
    """
    a, b, c = input.coeffs, resource1.coeffs, resource2.coeffs
    d_mat, f_mat = outcome1.coeffs, outcome2.coeffs
    d = a.shape[0]
    for name, m in (("input", a), ("resource1", b), ("resource2", c), ("outcome1", d_mat), ("outcome2", f_mat)):
        if m.shape != (d, d):
            raise DimensionError(f"{name} has shape {m.shape}, expected ({d}, {d})")

    first = _normalized(a @ np.conj(d_mat) @ b)
    m_matrix = first.state.coeffs
    rho1 = float(np.sqrt(first.probability))
    second = _normalized(m_matrix.T @ np.conj(f_mat) @ c)
    n_matrix = second.state.coeffs
    rho2 = float(np.sqrt(second.probability))

    inner = np.conj(d_mat) @ b
    outer = np.conj(f_mat) @ c
    g = inner @ outer / (rho1 * rho2)
    correction = mc.inverse(g.T, SINGULAR_TOL)
    is_unitary = mc.frobenius_norm(g @ g.conj().T - mc.identity(d)) <= UNITARY_TOL

    # (6, 4) ordering: particle 6 carries input particle 1, particle 4 carries particle 2.
    final_state = n_matrix.T
    left_correction = mc.inverse(outer.T / rho2, SINGULAR_TOL)
    right_correction = mc.inverse((inner / rho1).T, SINGULAR_TOL)
    recovered = final_state @ correction.T
    two_sided = left_correction @ final_state @ right_correction.T

    return TeleportPlan(
        m_matrix=m_matrix,
        n_matrix=n_matrix,
        rho1=rho1,
        rho2=rho2,
        correction=correction,
        correction_is_unitary=bool(is_unitary),
        total_probability=first.probability * second.probability,
        final_state=final_state,
        single_sided=_is_scalar_multiple_of_identity(outer, mc.DEFAULT_TOL),
        left_correction=left_correction,
        right_correction=right_correction,
        recovered=recovered,
        residual=mc.frobenius_norm(recovered - a),
        two_sided_residual=mc.frobenius_norm(two_sided - a),
    )


def correction_state_independence_check(
    resource1: PureBipartiteState,
    resource2: PureBipartiteState,
    outcome1: MeasurementOutcome,
    outcome2: MeasurementOutcome,
    trial_inputs: Sequence[PureBipartiteState],
    tol: float = 1e-9,
) -> bool:
    """True if every trial input yields the same correction within ``tol`` entrywise."""
    if not trial_inputs:
        raise ValueError("trial_inputs must be non-empty")
    corrections = [
        teleport_bipartite(state, resource1, resource2, outcome1, outcome2).correction for state in trial_inputs
    ]
    return all(np.max(np.abs(c - corrections[0])) <= tol for c in corrections[1:])
