"""Brute-force multi-party state vectors used to cross-check the matrix shortcuts.

A state of parties with dimensions ``(d_0, ..., d_{n-1})`` is a flat amplitude
vector indexed row-major, last party fastest. Everything here is explicit
index bookkeeping and summation over basis labels; none of it goes through
the coefficient-matrix products in :mod:`qcoeff.protocols`, and it is slow on
purpose.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from qcoeff.errors import DimensionError, ImpossibleOutcomeError
from qcoeff.protocols import MIN_PROBABILITY, MeasurementOutcome
from qcoeff.state_algebra import PureBipartiteState


@dataclass(frozen=True)
class MultiPartyState:
    party_dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        if len(self.amplitudes) != math.prod(self.party_dims):
            raise DimensionError(f"{len(self.amplitudes)} amplitudes for dims {self.party_dims}")
        self.amplitudes.setflags(write=False)

    def norm(self) -> float:
        return math.sqrt(sum(abs(x) ** 2 for x in self.amplitudes))


def _flat_index(labels, dims) -> int:
    index = 0
    for label, dim in zip(labels, dims):
        index = index * dim + label
    return index


def _labels(dims):
    return itertools.product(*(range(d) for d in dims))


def from_bipartite(state: PureBipartiteState) -> MultiPartyState:
    dims = (state.dim_left, state.dim_right)
    amps = np.zeros(math.prod(dims), dtype=np.complex128)
    for i, j in _labels(dims):
        amps[_flat_index((i, j), dims)] = state.coeffs[i, j]
    return MultiPartyState(dims, amps)


def to_bipartite(state: MultiPartyState) -> np.ndarray:
    """Coefficient matrix of a two-party state."""
    if len(state.party_dims) != 2:
        raise DimensionError(f"expected two parties, got {len(state.party_dims)}")
    d1, d2 = state.party_dims
    out = np.zeros((d1, d2), dtype=np.complex128)
    for i, j in _labels((d1, d2)):
        out[i, j] = state.amplitudes[_flat_index((i, j), (d1, d2))]
    return out


def tensor_product(a: MultiPartyState, b: MultiPartyState) -> MultiPartyState:
    dims = a.party_dims + b.party_dims
    amps = np.zeros(math.prod(dims), dtype=np.complex128)
    for left in _labels(a.party_dims):
        x = a.amplitudes[_flat_index(left, a.party_dims)]
        for right in _labels(b.party_dims):
            amps[_flat_index(left + right, dims)] = x * b.amplitudes[_flat_index(right, b.party_dims)]
    return MultiPartyState(dims, amps)


def project_pair(
    state: MultiPartyState, party_a: int, party_b: int, outcome: MeasurementOutcome
) -> tuple[MultiPartyState, float]:
    """Project parties ``party_a`` and ``party_b`` onto ``outcome``.

    Returns the renormalized state of the remaining parties (original order
    kept, indices renumbered) and the outcome probability. Party indices are
    0-based positions in ``state.party_dims``.

    Raises:
        ImpossibleOutcomeError: the probability is below ``1e-18``.
    """
    dims = state.party_dims
    n = len(dims)
    if party_a == party_b or not (0 <= party_a < n and 0 <= party_b < n):
        raise DimensionError(f"invalid party pair ({party_a}, {party_b}) for {n} parties")
    rows, cols = outcome.coeffs.shape
    if (rows, cols) != (dims[party_a], dims[party_b]):
        raise DimensionError(f"outcome shape {(rows, cols)} does not match parties {dims[party_a]}, {dims[party_b]}")

    rest = [p for p in range(n) if p not in (party_a, party_b)]
    rest_dims = tuple(dims[p] for p in rest)
    amps = np.zeros(math.prod(rest_dims), dtype=np.complex128)
    labels = [0] * n
    for rest_labels in _labels(rest_dims):
        for p, lab in zip(rest, rest_labels):
            labels[p] = lab
        total = 0j
        for j in range(rows):
            for k in range(cols):
                labels[party_a], labels[party_b] = j, k
                total += outcome.coeffs[j, k].conjugate() * state.amplitudes[_flat_index(labels, dims)]
        amps[_flat_index(rest_labels, rest_dims)] = total

    probability = sum(abs(x) ** 2 for x in amps)
    if probability < MIN_PROBABILITY:
        raise ImpossibleOutcomeError(f"outcome probability {probability:.3g} is zero")
    return MultiPartyState(rest_dims, amps / math.sqrt(probability)), float(probability)


def apply_local(state: MultiPartyState, party: int, operator, renormalize: bool = True) -> MultiPartyState:
    """Apply a (not necessarily unitary) operator to one party."""
    op = np.asarray(operator, dtype=np.complex128)
    dims = state.party_dims
    if op.shape != (dims[party], dims[party]):
        raise DimensionError(f"operator shape {op.shape} does not match party dimension {dims[party]}")
    amps = np.zeros_like(state.amplitudes)
    for labels in _labels(dims):
        src = list(labels)
        total = 0j
        for k in range(dims[party]):
            src[party] = k
            total += op[labels[party], k] * state.amplitudes[_flat_index(src, dims)]
        amps[_flat_index(labels, dims)] = total
    if renormalize:
        amps = amps / math.sqrt(sum(abs(x) ** 2 for x in amps))
    return MultiPartyState(dims, amps)


def permute(state: MultiPartyState, order) -> MultiPartyState:
    """Reorder parties so that new party ``i`` is old party ``order[i]``."""
    dims = tuple(state.party_dims[p] for p in order)
    amps = np.zeros_like(state.amplitudes)
    for labels in _labels(state.party_dims):
        amps[_flat_index([labels[p] for p in order], dims)] = state.amplitudes[_flat_index(labels, state.party_dims)]
    return MultiPartyState(dims, amps)


def states_equal(a: MultiPartyState, b: MultiPartyState, tol: float = 1e-9) -> bool:
    """Exact (phase-sensitive) entrywise comparison."""
    if a.party_dims != b.party_dims:
        raise DimensionError(f"party dims differ: {a.party_dims} vs {b.party_dims}")
    return max(abs(x - y) for x, y in zip(a.amplitudes, b.amplitudes)) <= tol


def max_deviation(a: MultiPartyState, b: MultiPartyState) -> float:
    if a.party_dims != b.party_dims:
        raise DimensionError(f"party dims differ: {a.party_dims} vs {b.party_dims}")
    return float(max(abs(x - y) for x, y in zip(a.amplitudes, b.amplitudes)))


def oracle_swap(
    left: PureBipartiteState, measurement: MeasurementOutcome, right: PureBipartiteState
) -> tuple[MultiPartyState, float]:
    """Project the middle two of four parties; the outer two remain."""
    joint = tensor_product(from_bipartite(left), from_bipartite(right))
    return project_pair(joint, 1, 2, measurement)


def oracle_chain(pairs, measurements) -> tuple[MultiPartyState, float]:
    """Sequential projections over a chain of pairs, with the joint probability."""
    state = from_bipartite(pairs[0])
    for pair in pairs[1:]:
        state = tensor_product(state, from_bipartite(pair))
    probability = 1.0
    # After each projection the next inner pair sits at positions 1 and 2 again.
    for meas in measurements:
        state, p = project_pair(state, 1, 2, meas)
        probability *= p
    return state, probability


def oracle_teleport(
    input: PureBipartiteState,
    resource1: PureBipartiteState,
    resource2: PureBipartiteState,
    outcome1: MeasurementOutcome,
    outcome2: MeasurementOutcome,
) -> tuple[MultiPartyState, float]:
    """Six-party teleportation run; returns Bob's state on (6, 4) and the total probability.

    Parties 1..6 sit at positions 0..5. Measuring (2, 3) leaves (1, 4, 5, 6),
    where particles 1 and 5 are at positions 0 and 2.
    """
    joint = tensor_product(tensor_product(from_bipartite(input), from_bipartite(resource1)), from_bipartite(resource2))
    state, p1 = project_pair(joint, 1, 2, outcome1)
    state, p2 = project_pair(state, 0, 2, outcome2)
    return permute(state, (1, 0)), p1 * p2
