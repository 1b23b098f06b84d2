"""Quasistatic quantum heat engines on the long-range Kitaev chain."""

from .chain import (
    SHORT_RANGE,
    ChainParams,
    DegenerateModeError,
    GaplessConfigurationError,
    InvalidParameterError,
    QuasiparticleSpectrum,
    WindingResult,
    bogoliubov_angle,
    build_spectrum,
    min_gap,
    momentum_grid,
    pairing_function,
    quasiparticle_energy,
    spectrum_scan,
    winding_number,
)
from .cycles import (
    BathPair,
    ContractViolationError,
    CycleSpec,
    OttoResult,
    RatioDiagnostics,
    StirlingResult,
    carnot_efficiency,
    otto_cycle,
    ratio_diagnostics,
    stirling_cycle,
)
from .sweep import (
    InsufficientDataError,
    MaxRatioPoint,
    OptimalCondition,
    ReferenceCache,
    RegionMap,
    SweepConfig,
    SweepRow,
    enhancement_regions,
    max_ratios,
    optimal_condition,
    sweep_mu,
)
from .thermo import (
    ThermoState,
    UndefinedLimitError,
    entropy,
    free_energy,
    internal_energy,
    log_partition,
    thermo_state,
)

__version__ = "0.1.0"
