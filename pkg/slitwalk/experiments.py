"""Experiment configurations, the named presets, and running them."""

import logging
import time
from dataclasses import dataclass, field as dataclass_field, replace
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .coins import COIN_NAMES, coin_by_name
from .errors import (
    MismatchedScreens,
    NonNormalizedCoinState,
    OddParitySite,
    UnknownPreset,
    ValidationError,
)
from .evolution import evolve
from .lattice import ORIGIN, AmplitudeField, Site, new_localized, norm
from .measurement import (
    DEFAULT_THRESHOLD,
    ProbabilityField,
    ProfileExtrema,
    ScreenAccumulator,
    find_extrema,
    new_screen,
    probability,
    region_probability,
    screen_observe,
    screen_profile,
)
from .misc import utcnow
from .topology import AXIS, DIAGONAL, EMPTY, SITES, BarrierSpec, Slit, links_for

log = logging.getLogger(__name__)

PRODUCTS = ("field", "screen", "extrema")
FORMATS = ("csv",)

_S = 1 / np.sqrt(2.0)

INITIAL_STATES: Dict[str, Tuple[complex, ...]] = {
    "hadamard": (0.5, 0.5j, 0.5j, -0.5),
    "grover": (0.5, -0.5, -0.5, 0.5),
    "fourier": (0.5, 0.5 * (1 - 1j) * _S, 0.5, -0.5 * (1 - 1j) * _S),
}

# coins whose default initial state is not stated alongside the experiments
ASSUMED_INITIAL_STATES = ("grover", "fourier", "custom")


@dataclass(frozen=True)
class ScreenSpec:
    x: int
    window: Tuple[int, int]
    orientation: str = AXIS

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", tuple(int(t) for t in self.window))


@dataclass(frozen=True)
class OutputOptions:
    directory: str = "out"
    formats: Tuple[str, ...] = FORMATS
    filter_nonzero: bool = False
    eps: float = 0.0
    threshold: float = DEFAULT_THRESHOLD
    products: Tuple[str, ...] = PRODUCTS

    def __post_init__(self) -> None:
        if not self.directory or not self.directory.isprintable():
            raise ValidationError(
                f"output directory must be a printable path, got {self.directory!r}"
            )
        for f in self.formats:
            if f not in FORMATS:
                raise ValidationError(f"unsupported output format {f!r}, expected one of {FORMATS}")
        for p in self.products:
            if p not in PRODUCTS:
                raise ValidationError(f"unknown output product {p!r}, expected one of {PRODUCTS}")
        if self.eps < 0:
            raise ValidationError(f"eps must be >= 0, got {self.eps}")
        if not 0 <= self.threshold < 1:
            raise ValidationError(f"threshold must be in [0, 1), got {self.threshold}")


def _line_position(site: Site, orientation: str) -> int:
    """Coordinate across a wall: m for columns, (m + n) / 2 for anti-diagonals."""
    if orientation == AXIS:
        return site.m
    return (site.m + site.n) // 2


def _row_of(site: Site, orientation: str) -> int:
    """Coordinate along a screen: n for columns, u for the anti-diagonal sites (x - u, x + u)."""
    if orientation == AXIS:
        return site.n
    return (site.n - site.m) // 2


@dataclass(frozen=True)
class ExperimentConfig:
    coin: str
    steps: int
    initial_site: Site = ORIGIN
    initial_coin_state: Optional[Tuple[complex, ...]] = None
    coin_matrix: Optional[Tuple[Tuple[complex, ...], ...]] = None
    barrier: Optional[BarrierSpec] = None
    screen: Optional[ScreenSpec] = None
    box_radius: Optional[int] = None
    outputs: OutputOptions = dataclass_field(default_factory=OutputOptions)
    name: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial_site", Site(*self.initial_site))
        if self.initial_coin_state is not None:
            object.__setattr__(
                self, "initial_coin_state", tuple(complex(a) for a in self.initial_coin_state)
            )
        if self.coin_matrix is not None:
            object.__setattr__(
                self,
                "coin_matrix",
                tuple(tuple(complex(a) for a in row) for row in self.coin_matrix),
            )
        self._validate()

    def _validate(self) -> None:
        if not self.name or not self.name.isprintable():
            raise ValidationError(f"experiment name must be printable text, got {self.name!r}")
        if self.coin not in COIN_NAMES:
            raise ValidationError(f"unknown coin {self.coin!r}, expected one of {COIN_NAMES}")
        if self.coin == "custom" and self.coin_matrix is None:
            raise ValidationError("coin = custom needs a coin matrix")
        if self.coin != "custom" and self.coin_matrix is not None:
            raise ValidationError(f"a coin matrix only goes with coin = custom, not {self.coin!r}")
        if self.coin_matrix is not None:
            coin_by_name("custom", self.coin_matrix)
        if self.steps < 0:
            raise ValidationError(f"steps must be >= 0, got {self.steps}")
        if not self.initial_site.even:
            raise OddParitySite(f"initial site {tuple(self.initial_site)} has odd parity")
        if self.initial_coin_state is not None:
            state = np.asarray(self.initial_coin_state)
            if state.shape != (4,):
                raise ValidationError("initial coin state needs 4 complex amplitudes")
            weight = float(np.sum(np.abs(state) ** 2))
            if abs(weight - 1) > 1e-12:
                raise NonNormalizedCoinState(f"initial coin state has squared norm {weight!r}")

        start_extent = max(abs(self.initial_site.m), abs(self.initial_site.n))
        needed = self.steps + 2 + start_extent
        if self.box_radius is not None and self.box_radius < needed:
            raise ValidationError(
                f"box_radius {self.box_radius} is too small for {self.steps} steps, need >= {needed}"
            )
        radius = self.radius

        if self.barrier is not None and abs(self.barrier.x) > radius:
            raise ValidationError(f"barrier x={self.barrier.x} is outside the radius-{radius} box")
        if self.screen is not None:
            t0, t1 = self.screen.window
            if abs(self.screen.x) > radius:
                raise ValidationError(f"screen x={self.screen.x} is outside the radius-{radius} box")
            if t0 < 0 or t1 < t0 or t1 > self.steps:
                raise ValidationError(
                    f"screen window {self.screen.window} must lie within [0, {self.steps}]"
                )
        if self.barrier is not None and self.screen is not None:
            if self.barrier.orientation != self.screen.orientation:
                raise ValidationError("screen and barrier must have the same orientation")
            start = _line_position(self.initial_site, self.barrier.orientation)
            b, s = self.barrier.x, self.screen.x
            if not (start < b < s or s < b < start):
                raise ValidationError(
                    f"barrier x={b} must lie strictly between the walker ({start}) and the screen ({s})"
                )

    @property
    def radius(self) -> int:
        if self.box_radius is not None:
            return self.box_radius
        return self.steps + 2 + max(abs(self.initial_site.m), abs(self.initial_site.n))

    def coin_state(self) -> Tuple[complex, ...]:
        if self.initial_coin_state is not None:
            return self.initial_coin_state
        return default_initial_state(self.coin)

    def assumptions(self) -> Tuple[str, ...]:
        """Flags for choices that do not come from the experiments being reproduced."""
        flags = []
        if self.initial_coin_state is None and self.coin in ASSUMED_INITIAL_STATES:
            flags.append(f"default-initial-state:{self.coin}")
        if self.screen is not None:
            flags.append(f"extremum-threshold:{self.outputs.threshold!r}")
        if self.barrier is not None and self.barrier.orientation == DIAGONAL:
            flags.append("diagonal-slit-positions")
        return tuple(flags)


def default_initial_state(coin: str) -> Tuple[complex, ...]:
    """
    The product state ``(|0> + i|1>)(|0> + i|1>) / 2`` for Hadamard, and the
    usual maximal-spreading states for Grover and Fourier. A custom coin gets
    the Hadamard state.
    """
    if coin == "custom":
        return INITIAL_STATES["hadamard"]
    if coin not in INITIAL_STATES:
        raise ValidationError(f"unknown coin {coin!r}")
    return INITIAL_STATES[coin]


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    config: ExperimentConfig
    field: AmplitudeField
    probability: ProbabilityField
    screen: Optional[ScreenAccumulator]
    extrema: Optional[ProfileExtrema]
    transmitted_fraction: Optional[float]
    norms: np.ndarray
    assumptions: Tuple[str, ...] = ()
    metadata: Dict[str, Any] = dataclass_field(default_factory=dict)

    @property
    def max_norm_drift(self) -> float:
        return float(np.max(np.abs(self.norms - 1.0)))


class ScreenRecorder:
    """Observer that accumulates a screen for the times inside its window."""

    def __init__(self, accumulator: Optional[ScreenAccumulator]) -> None:
        self.accumulator = accumulator

    def __call__(self, t: int, field: AmplitudeField) -> None:
        acc = self.accumulator
        if acc is not None and acc.window[0] <= t <= acc.window[1]:
            self.accumulator = screen_observe(acc, field)


def run(config: ExperimentConfig) -> ExperimentResult:
    """
    Build the walker, the broken links and the screen, evolve ``config.steps``
    steps, and summarise.
    """
    started_at = utcnow()
    clock = time.perf_counter()
    radius = config.radius

    coin = coin_by_name(config.coin, config.coin_matrix)
    field = new_localized(config.initial_site, config.coin_state(), radius)

    barrier = config.barrier
    links = EMPTY
    if barrier is not None:
        if barrier.extent is None:
            barrier = replace(barrier, extent=radius + 2)
        links = links_for(barrier)

    recorder = ScreenRecorder(None)
    if config.screen is not None:
        s = config.screen
        recorder = ScreenRecorder(new_screen(s.x, s.window, radius, s.orientation))
    recorder(field.time, field)

    log.info(
        "running %s: coin=%s steps=%d radius=%d broken_links=%d",
        config.name,
        config.coin,
        config.steps,
        radius,
        len(links),
    )
    final, (norms, _) = evolve(
        field, coin, links, config.steps, observers=[lambda t, f: norm(f), recorder]
    )
    norms = np.array([norm(field)] + norms)

    P = probability(final)
    extrema = None
    if recorder.accumulator is not None:
        axis = _row_of(config.initial_site, recorder.accumulator.orientation)
        extrema = find_extrema(
            screen_profile(recorder.accumulator), config.outputs.threshold, axis=axis
        )

    transmitted = None
    if barrier is not None:
        transmitted = region_probability(P, barrier.beyond)
        log.info("%s: transmitted fraction %.6f", config.name, transmitted)

    elapsed = time.perf_counter() - clock
    result = ExperimentResult(
        config=config,
        field=final,
        probability=P,
        screen=recorder.accumulator,
        extrema=extrema,
        transmitted_fraction=transmitted,
        norms=norms,
        assumptions=config.assumptions(),
        metadata={
            "name": config.name,
            "started_at": started_at.to_iso8601_string(),
            "elapsed_seconds": elapsed,
            "radius": radius,
            "broken_links": len(links),
        },
    )
    log.info("%s: finished %d steps in %.2fs", config.name, config.steps, elapsed)
    log.debug("%s: max norm drift %.3e", config.name, result.max_norm_drift)
    return result


def intensity_deviation(
    double: ScreenAccumulator, upper: ScreenAccumulator, lower: ScreenAccumulator
) -> float:
    """``|I_double - (I_upper + I_lower)|_1 / |I_double|_1``."""
    if not (double.same_screen(upper) and double.same_screen(lower)):
        raise MismatchedScreens("screens differ in position, window, orientation or rows")
    scale = float(np.sum(np.abs(double.intensity)))
    if scale == 0:
        raise ValidationError("double-slit screen recorded no intensity")
    diff = double.intensity - (upper.intensity + lower.intensity)
    return float(np.sum(np.abs(diff))) / scale


def superposition_deviation(
    double: ExperimentResult, upper: ExperimentResult, lower: ExperimentResult
) -> float:
    screens = [double.screen, upper.screen, lower.screen]
    if any(s is None for s in screens):
        raise MismatchedScreens("every run needs a screen")
    return intensity_deviation(*screens)  # type: ignore[arg-type]


def _slit_barrier(x: int, slits: Tuple[Slit, ...], orientation: str = AXIS) -> BarrierSpec:
    # widths in the reproduced experiments count wall sites
    return BarrierSpec(x, slits, orientation, width_unit=SITES)


def _single_slit(width: float) -> ExperimentConfig:
    return ExperimentConfig(
        coin="hadamard",
        steps=100,
        barrier=_slit_barrier(20, (Slit(0, width),)),
        screen=ScreenSpec(60, (0, 100)),
        name=f"fig3_w{width:g}",
    )


def _hadamard_double(name: str, slits: Tuple[Slit, ...]) -> ExperimentConfig:
    return ExperimentConfig(
        coin="hadamard",
        steps=100,
        barrier=_slit_barrier(20, slits),
        screen=ScreenSpec(60, (0, 100)),
        name=name,
    )


def _wide_double(name: str, coin: str, slits: Tuple[Slit, ...]) -> ExperimentConfig:
    return ExperimentConfig(
        coin=coin,
        steps=120,
        barrier=_slit_barrier(30, slits),
        screen=ScreenSpec(70, (0, 120)),
        name=name,
    )


def _diagonal_double(name: str, coin: str) -> ExperimentConfig:
    """
    The wide double slit turned onto the main diagonal, with distances kept:
    the wall m+n=42 and the screen m+n=100 sit about 30 and 70 units from the
    origin, and slits at u=+-4 are about 11 units apart.
    """
    return ExperimentConfig(
        coin=coin,
        steps=120,
        barrier=_slit_barrier(21, (Slit(-4, 1), Slit(4, 1)), DIAGONAL),
        screen=ScreenSpec(50, (0, 120), DIAGONAL),
        name=name,
    )


UPPER = Slit(6, 1)
LOWER = Slit(-6, 1)
BOTH = (LOWER, UPPER)

PRESETS: Dict[str, Tuple[str, Callable[[], ExperimentConfig]]] = {
    "fig2": (
        "Hadamard, one slit of width 5 at x=20, 80 steps",
        lambda: ExperimentConfig(
            coin="hadamard", steps=80, barrier=_slit_barrier(20, (Slit(0, 5),)), name="fig2"
        ),
    ),
    "fig3_w5": ("Hadamard, slit width 5, screen x=60", lambda: _single_slit(5)),
    "fig3_w9": ("Hadamard, slit width 9, screen x=60", lambda: _single_slit(9)),
    "fig3_w13": ("Hadamard, slit width 13, screen x=60", lambda: _single_slit(13)),
    "fig4": (
        "Hadamard, two slits at y=+-6, 100 steps",
        lambda: _hadamard_double("fig4", BOTH),
    ),
    "fig5_double": (
        "Hadamard, two slits at y=+-6, screen x=60",
        lambda: _hadamard_double("fig5_double", BOTH),
    ),
    "fig5_upper_only": (
        "Hadamard, lower slit closed",
        lambda: _hadamard_double("fig5_upper_only", (UPPER,)),
    ),
    "fig5_lower_only": (
        "Hadamard, upper slit closed",
        lambda: _hadamard_double("fig5_lower_only", (LOWER,)),
    ),
    "fig6_grover": (
        "Grover, two slits at x=30, screen x=70, 120 steps",
        lambda: _wide_double("fig6_grover", "grover", BOTH),
    ),
    "fig6_upper_only": (
        "Grover, lower slit closed",
        lambda: _wide_double("fig6_upper_only", "grover", (UPPER,)),
    ),
    "fig6_lower_only": (
        "Grover, upper slit closed",
        lambda: _wide_double("fig6_lower_only", "grover", (LOWER,)),
    ),
    "grover_diagonal": (
        "Grover, two slits on the anti-diagonal m+n=42, diagonal screen m+n=100",
        lambda: _diagonal_double("grover_diagonal", "grover"),
    ),
    "fourier_double": (
        "Fourier, two slits at x=30, screen x=70, 120 steps",
        lambda: _wide_double("fourier_double", "fourier", BOTH),
    ),
    "free_hadamard": (
        "Hadamard, no barrier, 50 steps",
        lambda: ExperimentConfig(coin="hadamard", steps=50, name="free_hadamard"),
    ),
}


def preset_names() -> List[str]:
    return list(PRESETS)


def preset(name: str) -> ExperimentConfig:
    try:
        _, factory = PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown preset {name!r}, expected one of {', '.join(PRESETS)}"
        ) from None
    return factory()
