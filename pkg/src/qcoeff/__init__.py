"""Coefficient-matrix toolkit for pure bipartite quantum states.

A bipartite state ``sum_ij a_ij |i>|j>`` is handled through its coefficient
matrix ``A``; Schmidt analysis, entanglement swapping and two-pair
teleportation all reduce to small products of such matrices.
"""

from qcoeff.errors import (
    DimensionError,
    ImpossibleOutcomeError,
    NormalizationError,
    NotHermitianError,
    NotUnitaryError,
    QcoeffError,
    SingularMatrixError,
    ZeroStateError,
)
from qcoeff.protocols import (
    MeasurementOutcome,
    SwapResult,
    TeleportPlan,
    bell_basis,
    correction_state_independence_check,
    entanglement_swap,
    outcome,
    swap_chain,
    teleport_bipartite,
)
from qcoeff.state_algebra import (
    PureBipartiteState,
    SchmidtDecomposition,
    apply_left,
    apply_right,
    bell_state,
    from_matrix,
    is_entangled,
    make_state,
    product_state,
    reduced_density_left,
    schmidt_coefficients,
    schmidt_decompose,
    schmidt_number,
)

__version__ = "0.1.0"
