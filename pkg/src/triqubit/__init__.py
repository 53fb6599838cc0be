"""Local-unitary invariants of three-qubit pure states and their relation to
two-qubit concurrence under single-qubit projective measurement."""

from .errors import InconsistencyError, InputError
from .invariants import (
    InvariantSet,
    compute_invariants,
    concurrence_mixed,
    concurrence_pure_coeff,
    concurrence_pure_reduced,
    rescaled_coords,
)
from .measurement import (
    CSet,
    ProjectionOutcome,
    QuadratureSpec,
    closedform_cset,
    invert_invariants,
    project,
    quadrature_cset,
    residual_concurrence,
    verify_identities,
)
from .states import (
    LocalUnitaryTriple,
    MeasurementDirection,
    ThreeQubitPure,
    TwoQubitDensity,
    TwoQubitPure,
    apply_local_unitaries,
    boundary_state,
    haar_random_state,
    load_state,
    named_state,
    normalize,
    permute_qubits,
    random_local_unitary,
    save_state,
)

__version__ = "0.1.0"
