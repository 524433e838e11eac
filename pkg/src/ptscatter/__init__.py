"""Plane-wave scattering on a discrete 1D chain with a finite interaction block."""

from ._version import __version__
from .analysis import (
    CrossValidation,
    OracleAgreement,
    SweepRow,
    SweepSpec,
    SweepTable,
    UnitarityReport,
    cross_validate,
    default_coupling_grid,
    default_phi_grid,
    run_sweep,
    transfer_matching_agreement,
    unitarity_report,
)
from .closedforms import (
    ClosedFormParams,
    cf_m1,
    cf_m2,
    cf_m3,
    cf_ultralocal,
    cf_ultralocal_prob_sum,
    closed_form_amplitudes,
    closed_form_params,
    ultralocal_anomaly_u,
)
from .core import (
    InteractionWindow,
    LatticeConvention,
    ModelFamily,
    PhiAngle,
    ScatteringAmplitudes,
    WaveFunctionWindow,
    build_pt_delta_pair,
    build_ultralocal,
    embed_symmetric,
    energy_from_phi,
    first_pt_violation,
    is_pt_symmetric,
    pt_conjugate,
)
from .errors import NotTridiagonal, SingularCoupling, SingularSystem, SolverError, ZeroHopping
from .solver import (
    MatchingSystem,
    SolveReport,
    build_matching_system,
    residual,
    solve_complex_linear,
    solve_matching,
    solve_transfer_matrix,
)

__all__ = [
    "__version__",
    "PhiAngle",
    "LatticeConvention",
    "InteractionWindow",
    "ModelFamily",
    "ScatteringAmplitudes",
    "WaveFunctionWindow",
    "energy_from_phi",
    "build_pt_delta_pair",
    "build_ultralocal",
    "embed_symmetric",
    "pt_conjugate",
    "is_pt_symmetric",
    "first_pt_violation",
    "MatchingSystem",
    "SolveReport",
    "build_matching_system",
    "solve_matching",
    "solve_transfer_matrix",
    "solve_complex_linear",
    "residual",
    "ClosedFormParams",
    "closed_form_params",
    "cf_m1",
    "cf_m2",
    "cf_m3",
    "cf_ultralocal",
    "cf_ultralocal_prob_sum",
    "ultralocal_anomaly_u",
    "closed_form_amplitudes",
    "SweepSpec",
    "SweepRow",
    "SweepTable",
    "run_sweep",
    "unitarity_report",
    "UnitarityReport",
    "cross_validate",
    "CrossValidation",
    "transfer_matching_agreement",
    "OracleAgreement",
    "default_coupling_grid",
    "default_phi_grid",
    "SolverError",
    "SingularSystem",
    "ZeroHopping",
    "NotTridiagonal",
    "SingularCoupling",
]
