import itertools

import numpy as np
import pytest

from helpers import random_state
from qcoeff import tensor_oracle as to
from qcoeff.errors import DimensionError, ImpossibleOutcomeError
from qcoeff.protocols import outcome
from qcoeff.state_algebra import bell_state, make_state

BELL = bell_state()
BELL_OUTCOME = outcome(np.eye(2) / np.sqrt(2))
H = 1 / np.sqrt(2)


def ket(*labels, dims=None):
    dims = dims or (2,) * len(labels)
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[np.ravel_multi_index(labels, dims)] = 1
    return to.MultiPartyState(tuple(dims), amps)


def test_from_bipartite_examples():
    np.testing.assert_allclose(to.from_bipartite(BELL).amplitudes, [H, 0, 0, H])
    product_01 = make_state(2, 2, [[0, 1], [0, 0]])
    np.testing.assert_array_equal(to.from_bipartite(product_01).amplitudes, [0, 1, 0, 0])


def test_bipartite_round_trip(rng):
    state = random_state(rng, 3, 2)
    multi = to.from_bipartite(state)
    assert multi.party_dims == (3, 2)
    np.testing.assert_array_equal(to.to_bipartite(multi), state.coeffs)


def test_tensor_product_examples():
    np.testing.assert_array_equal(to.tensor_product(ket(0), ket(0)).amplitudes, [1, 0, 0, 0])
    bb = to.tensor_product(to.from_bipartite(BELL), to.from_bipartite(BELL))
    assert bb.party_dims == (2, 2, 2, 2)
    nonzero = {i for i, x in enumerate(bb.amplitudes) if abs(x) > 0}
    # |0000>, |0011>, |1100>, |1111>
    assert nonzero == {0b0000, 0b0011, 0b1100, 0b1111}
    np.testing.assert_allclose(bb.amplitudes[sorted(nonzero)], 0.5)


def test_tensor_product_norms_multiply(rng):
    a = to.MultiPartyState((3,), rng.normal(size=3) + 0j)
    b = to.from_bipartite(random_state(rng, 2, 2))
    assert to.tensor_product(a, b).norm() == pytest.approx(a.norm() * b.norm(), rel=1e-14)


def test_project_bell_pairs_middle():
    bb = to.tensor_product(to.from_bipartite(BELL), to.from_bipartite(BELL))
    rest, p = to.project_pair(bb, 1, 2, BELL_OUTCOME)
    # hand expansion: <Phi+|_23 of the four-term sum leaves (|00> + |11>) / (2 sqrt 2)
    assert p == pytest.approx(0.25, abs=1e-15)
    assert to.states_equal(rest, to.from_bipartite(BELL), 1e-15)


def test_project_product_state():
    rest, p = to.project_pair(ket(0, 0, 0, 0), 1, 2, BELL_OUTCOME)
    assert p == pytest.approx(0.5, abs=1e-15)
    assert to.states_equal(rest, ket(0, 0), 1e-15)


def test_project_orthogonal_outcome():
    with pytest.raises(ImpossibleOutcomeError):
        to.project_pair(ket(0, 0, 0, 0), 1, 2, outcome([[0, 0], [0, 1]]))


def test_project_invalid_parties():
    with pytest.raises(DimensionError):
        to.project_pair(ket(0, 0, 0), 1, 1, BELL_OUTCOME)
    with pytest.raises(DimensionError):
        to.project_pair(ket(0, 0, 0, dims=(2, 3, 2)), 0, 1, BELL_OUTCOME)


def test_project_non_adjacent_parties_keeps_order(rng):
    # parties (0, 2) of |a>|b>|c>: leaves b in place of the removed slots
    state = to.tensor_product(to.from_bipartite(BELL), ket(1))
    rest, p = to.project_pair(state, 0, 2, outcome([[0, 1], [0, 0]]))
    assert rest.party_dims == (2,)
    assert p == pytest.approx(0.5)
    assert to.states_equal(rest, ket(0), 1e-15)


def test_probability_conservation_over_complete_basis(rng):
    joint = to.tensor_product(to.from_bipartite(random_state(rng, 2, 3)), to.from_bipartite(random_state(rng, 2, 2)))
    total = 0.0
    for j, k in itertools.product(range(3), range(2)):
        basis = np.zeros((3, 2))
        basis[j, k] = 1
        try:
            total += to.project_pair(joint, 1, 2, outcome(basis))[1]
        except ImpossibleOutcomeError:
            pass
    assert total == pytest.approx(1.0, abs=1e-9)


def test_states_equal_is_phase_sensitive():
    bell = to.from_bipartite(BELL)
    minus = to.MultiPartyState(bell.party_dims, -bell.amplitudes)
    assert to.states_equal(bell, bell, 0.0)
    assert not to.states_equal(bell, minus, 1e-9)


def test_states_equal_dims_mismatch():
    with pytest.raises(DimensionError):
        to.states_equal(ket(0, 0), ket(0, dims=(4,)))


def test_apply_local_and_permute():
    state = to.apply_local(ket(0, 0), 1, [[0, 1], [1, 0]])
    assert to.states_equal(state, ket(0, 1), 0.0)
    assert to.states_equal(to.permute(state, (1, 0)), ket(1, 0), 0.0)
