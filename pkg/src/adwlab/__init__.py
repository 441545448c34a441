"""adwlab: asymptotic expansions for abstract damped wave equations.

The package builds exact exponential-polynomial solutions of
u'' + u' + lambda u = 0 mode by mode over a discrete spectral measure,
forms the diffusion-like profile hierarchy and its remainder chain, and
checks the resulting identities, decay rates, and coefficient tables.
"""

from .analysis import (
    CannotFitError,
    DecayFit,
    EnergyReport,
    MaxRegIdentity,
    TailCheck,
    WindowError,
    energy,
    energy_curve,
    fit_decay,
    max_reg_identity,
    semigroup_tail_curve,
    state_norm,
    state_norm_curve,
    weighted_tail_check,
)
from .exppoly import (
    RATE_TOL,
    ExpPoly,
    ep_combine,
    ep_definite_integral,
    ep_derivative,
    ep_eval,
)
from .modal import (
    CharRoots,
    ModalSolution,
    char_roots,
    remainder_chain,
    solve_damped_mode,
    solve_forced_mode,
)
from .profiles import (
    asymptotic_profile,
    expansion_error,
    expansion_error_curve,
    export_profile_curves,
    modal_expansion_errors,
    profile,
    profile_norm_curve,
    recursion_residual,
    shifted_profile,
)
from .scenarios import (
    Scenario,
    SchemaError,
    TimeGrid,
    builtin_names,
    load_scenario,
    scenario_from_dict,
)
from .series import (
    BigradedSeries,
    CoefficientReport,
    SeriesCapacityError,
    SingularSeriesError,
    TakedaTable,
    TruncatedSeries,
    expected_profile_coefficients,
    slow_branch_amplitude_series,
    slow_root_offset_series,
    slow_root_series,
    takeda_coefficients,
    verify_expansion_coefficients,
)
from .spectral import (
    ModalVector,
    SpectralMeasure,
    apply_spectral_function,
    build_symbol_measure,
    load_measure,
    measure_from_json,
    measure_to_json,
    modal_inner,
    path_graph_measure,
    quadrature_grid,
    save_measure,
    sobolev_norm,
    symbol_modes,
)
from .suites import (
    CHECK_REGISTRY,
    SUITES,
    ScenarioContext,
    emit_error_curve,
    render_report,
    report_exit_code,
    run_verification_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BigradedSeries",
    "CHECK_REGISTRY",
    "CannotFitError",
    "CharRoots",
    "CoefficientReport",
    "DecayFit",
    "EnergyReport",
    "ExpPoly",
    "MaxRegIdentity",
    "ModalSolution",
    "ModalVector",
    "RATE_TOL",
    "SUITES",
    "Scenario",
    "ScenarioContext",
    "SchemaError",
    "SeriesCapacityError",
    "SingularSeriesError",
    "SpectralMeasure",
    "TailCheck",
    "TakedaTable",
    "TimeGrid",
    "TruncatedSeries",
    "WindowError",
    "apply_spectral_function",
    "asymptotic_profile",
    "build_symbol_measure",
    "builtin_names",
    "char_roots",
    "emit_error_curve",
    "energy",
    "energy_curve",
    "ep_combine",
    "ep_definite_integral",
    "ep_derivative",
    "ep_eval",
    "expansion_error",
    "expansion_error_curve",
    "expected_profile_coefficients",
    "export_profile_curves",
    "fit_decay",
    "load_measure",
    "load_scenario",
    "max_reg_identity",
    "measure_from_json",
    "measure_to_json",
    "modal_expansion_errors",
    "modal_inner",
    "path_graph_measure",
    "profile",
    "profile_norm_curve",
    "quadrature_grid",
    "recursion_residual",
    "remainder_chain",
    "render_report",
    "report_exit_code",
    "run_verification_suite",
    "save_measure",
    "scenario_from_dict",
    "semigroup_tail_curve",
    "shifted_profile",
    "slow_branch_amplitude_series",
    "slow_root_offset_series",
    "slow_root_series",
    "sobolev_norm",
    "solve_damped_mode",
    "solve_forced_mode",
    "state_norm",
    "state_norm_curve",
    "symbol_modes",
    "takeda_coefficients",
    "verify_expansion_coefficients",
    "weighted_tail_check",
]
