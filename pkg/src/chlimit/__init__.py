"""chlimit: pseudospectral toolkit for the zero-filter limit of the
Camassa-Holm equation on a periodic box.

The package provides the spectral substrate (grids, transforms,
multipliers), Littlewood-Paley blocks and Besov norms, the Helmholtz
filter and the CH/Burgers right-hand sides, the lacunary wave-packet
datum with its localization diagnostics, guarded RK4 time integration,
and the CSV-emitting experiment drivers behind the ``chlimit`` CLI.
"""

from .counterexample import (
    BumpProfile,
    CounterexampleDatum,
    block_identity_error,
    block_product_lower_bound,
    bump_hat,
    e0_approximant,
    make_bump_profile,
    make_u0,
    max_packet_index,
    packet_field,
    phi_profile,
    pointwise_floor,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    InvariantViolation,
    parse_config,
    run_contrast,
    run_lp_report,
    run_sweep,
    run_taylor,
    run_uniform,
    u0_diagnostics,
)
from .filter_ops import (
    burgers_rhs,
    ch_rhs,
    helmholtz_inv,
    multiplier_bound_check,
    validate_alpha,
)
from .grid import (
    Grid,
    RealField,
    Spectrum,
    apply_multiplier,
    dealias,
    derivative,
    edge_tail,
    field_mean,
    inverse_transform,
    l2_norm,
    make_grid,
    spectrum_l2_norm,
    transform,
)
from .littlewood_paley import (
    CutoffPair,
    DyadicDecomposition,
    besov_norm,
    build_cutoffs,
    commutator_block,
    decompose,
    dyadic_block,
    grid_max_block,
)
from .solvers import (
    BlowupError,
    BoundaryContaminationError,
    ShockProximityError,
    SolverConfig,
    SolverGuardError,
    Trajectory,
    burgers_characteristics_solution,
    energy_check,
    integrate,
    shock_time_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupError",
    "BoundaryContaminationError",
    "BumpProfile",
    "ConfigError",
    "CounterexampleDatum",
    "CutoffPair",
    "DyadicDecomposition",
    "ExperimentConfig",
    "Grid",
    "InvariantViolation",
    "RealField",
    "ShockProximityError",
    "SolverConfig",
    "SolverGuardError",
    "Spectrum",
    "Trajectory",
    "apply_multiplier",
    "besov_norm",
    "block_identity_error",
    "block_product_lower_bound",
    "build_cutoffs",
    "bump_hat",
    "burgers_characteristics_solution",
    "burgers_rhs",
    "ch_rhs",
    "commutator_block",
    "dealias",
    "decompose",
    "derivative",
    "dyadic_block",
    "e0_approximant",
    "edge_tail",
    "energy_check",
    "field_mean",
    "grid_max_block",
    "helmholtz_inv",
    "integrate",
    "inverse_transform",
    "l2_norm",
    "make_bump_profile",
    "make_grid",
    "make_u0",
    "max_packet_index",
    "multiplier_bound_check",
    "packet_field",
    "parse_config",
    "phi_profile",
    "pointwise_floor",
    "run_contrast",
    "run_lp_report",
    "run_sweep",
    "run_taylor",
    "run_uniform",
    "shock_time_estimate",
    "spectrum_l2_norm",
    "transform",
    "u0_diagnostics",
    "validate_alpha",
]
