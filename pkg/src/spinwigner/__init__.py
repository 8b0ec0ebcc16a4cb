"""Spin Wigner functions of N-qubit states built from displaced extended parities."""

from .errors import (
    DegenerateSuperposition,
    InvalidArgument,
    NotInformationallyComplete,
    NumericFailure,
    SchemaError,
    SpinWignerError,
    UnderdeterminedFit,
    UnsupportedForKind,
)
from .kernels import (
    Kind,
    composite_rotation,
    extended_parity,
    kernel_at,
    kernel_axis,
    su2_rotation,
)
from .states import (
    bell,
    clock_state,
    density,
    ghz,
    ghz_family,
    mixture,
    product_state,
    reduced_density,
    superpose,
    w_state,
)
from .tomography import (
    CountRecord,
    MeasurementSetting,
    NoiseModel,
    design_matrix,
    estimate_wigner,
    fidelity,
    reconstruct_density,
    rotate_state,
    sample_counts,
    simulate_records,
    tetrahedral_points,
    weyl_inverse_tensor,
)
from .wigner import (
    Quadrature,
    SliceGrid,
    analytic_clock_wigner,
    analytic_ghz_wigner,
    equal_angle_slice,
    equator_scan,
    theta_theta_slice,
    wigner_at,
    wigner_via_populations,
)
from .witness import (
    EquatorScanResult,
    certify_ghz_entanglement,
    fit_equatorial_oscillation,
    separable_bound,
    template_distance,
)

__version__ = "0.1.0"
