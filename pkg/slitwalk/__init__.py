"""slitwalk simulates coined quantum walks on the 2-D lattice.

A walker with a four-state coin moves diagonally on the lattice. Links can be
broken to build walls with slits. The package runs the single- and
double-slit experiments and writes plot-ready screen profiles.

"""

__version__ = "0.1.0"

from .coins import (
    CoinOperator,
    coin_by_name,
    custom,
    fourier,
    grover,
    hadamard,
    identity,
    random_coin,
)
from .config import parse_config, render_config
from .errors import (
    CONFIG_ERROR_TUPLE,
    ConfigError,
    OutputError,
    ParseError,
    SupportTouchesBoundary,
    UnknownKey,
    UnknownPreset,
    ValidationError,
    WalkError,
)
from .evolution import evolve, step
from .experiments import (
    PRESETS,
    ExperimentConfig,
    ExperimentResult,
    OutputOptions,
    ScreenSpec,
    intensity_deviation,
    preset,
    preset_names,
    run,
    superposition_deviation,
)
from .lattice import AmplitudeField, Site, new_localized, norm, support
from .measurement import (
    ProbabilityField,
    column_profile,
    column_totals,
    find_extrema,
    new_screen,
    probability,
    screen_observe,
    screen_profile,
)
from .oracle import apply_dense, build_dense, walk1d_hadamard
from .output import RunManifest, staged_directory, write_outputs
from .topology import (
    BarrierSpec,
    LinkSet,
    Slit,
    barrier_with_slits,
    break_edge,
    diagonal_barrier_with_slits,
    is_broken,
    l1,
    l2,
    restore_edge,
)

__all__ = [
    "AmplitudeField",
    "BarrierSpec",
    "CONFIG_ERROR_TUPLE",
    "CoinOperator",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentResult",
    "LinkSet",
    "OutputError",
    "OutputOptions",
    "PRESETS",
    "ParseError",
    "ProbabilityField",
    "RunManifest",
    "ScreenSpec",
    "Site",
    "Slit",
    "SupportTouchesBoundary",
    "UnknownKey",
    "UnknownPreset",
    "ValidationError",
    "WalkError",
    "__version__",
    "apply_dense",
    "barrier_with_slits",
    "break_edge",
    "build_dense",
    "coin_by_name",
    "column_profile",
    "column_totals",
    "custom",
    "diagonal_barrier_with_slits",
    "evolve",
    "find_extrema",
    "fourier",
    "grover",
    "hadamard",
    "identity",
    "intensity_deviation",
    "is_broken",
    "l1",
    "l2",
    "new_localized",
    "new_screen",
    "norm",
    "parse_config",
    "preset",
    "preset_names",
    "probability",
    "random_coin",
    "render_config",
    "restore_edge",
    "run",
    "screen_observe",
    "screen_profile",
    "staged_directory",
    "step",
    "superposition_deviation",
    "support",
    "walk1d_hadamard",
    "write_outputs",
]
