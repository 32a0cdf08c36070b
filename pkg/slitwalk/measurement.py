"""Probability distributions, screens and profile analysis."""

from dataclasses import dataclass, field as dataclass_field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import EmptyProfile, TimeOutsideWindow, ValidationError
from .lattice import ORIGIN, AmplitudeField, Site, site_probabilities
from .topology import AXIS, ORIENTATIONS

DEFAULT_THRESHOLD = 0.05

Profile = List[Tuple[int, float]]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ProbabilityField:
    """``P[m, n] = sum_{j,k} |A[j,k; m,n]|**2`` on the box of the source field."""

    radius: int
    values: np.ndarray
    time: int = 0
    origin: Site = ORIGIN

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=float)))

    def total(self) -> float:
        return float(self.values.sum())

    def at(self, site: Site) -> float:
        i = site[0] - self.origin.m + self.radius
        j = site[1] - self.origin.n + self.radius
        w = 2 * self.radius + 1
        if not (0 <= i < w and 0 <= j < w):
            return 0.0
        return float(self.values[i, j])

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        axis = np.arange(-self.radius, self.radius + 1)
        return axis + self.origin.m, axis + self.origin.n


def probability(field: AmplitudeField) -> ProbabilityField:
    return ProbabilityField(field.radius, site_probabilities(field), field.time, field.origin)


def column_profile(
    P: ProbabilityField, x: int, filter_nonzero: bool = False, eps: float = 0.0
) -> Profile:
    """
    Args:
        P: a probability field.
        x: the column ``m = x``.
        filter_nonzero: drop rows whose value is ``<= eps``.
        eps: filtering cutoff.

    Returns:
        ``(n, P[x, n])`` pairs for the lattice sites of the column, ascending in n.
    """
    i = x - P.origin.m + P.radius
    if not 0 <= i < 2 * P.radius + 1:
        raise ValidationError(f"column x={x} is outside the radius-{P.radius} box")
    ms, ns = P.coordinates()
    out = []
    for l, n in enumerate(ns):
        if (x + int(n)) % 2:
            continue
        value = float(P.values[i, l])
        if filter_nonzero and value <= eps:
            continue
        out.append((int(n), value))
    return out


def column_totals(P: ProbabilityField) -> Tuple[np.ndarray, np.ndarray]:
    """Column coordinates and the total probability in each column."""
    ms, _ = P.coordinates()
    return ms, P.values.sum(axis=1)


def region_probability(P: ProbabilityField, predicate: Callable[[Site], bool]) -> float:
    """Sum of P over the sites satisfying ``predicate``."""
    ms, ns = P.coordinates()
    total = 0.0
    for i, l in zip(*np.nonzero(P.values)):
        site = Site(int(ms[i]), int(ns[l]))
        if predicate(site):
            total += float(P.values[i, l])
    return total


@dataclass(frozen=True, eq=False)
class ScreenAccumulator:
    """
    Probability summed over time along a screen line.

    An ``axis`` screen is the column ``m = x`` with rows ``n``; a
    ``diagonal`` screen is the line ``m + n = 2x`` with rows ``u`` for the
    sites ``(x - u, x + u)``. Only rows that are lattice sites are kept.
    """

    x: int
    window: Tuple[int, int]
    rows: np.ndarray
    intensity: np.ndarray
    radius: int
    orientation: str = AXIS
    origin: Site = ORIGIN
    observed: Tuple[int, ...] = dataclass_field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", _frozen(np.asarray(self.rows, dtype=int)))
        object.__setattr__(self, "intensity", _frozen(np.asarray(self.intensity, dtype=float)))
        object.__setattr__(self, "window", tuple(int(t) for t in self.window))

    def sites(self) -> List[Site]:
        if self.orientation == AXIS:
            return [Site(self.x, int(n)) for n in self.rows]
        return [Site(self.x - int(u), self.x + int(u)) for u in self.rows]

    def at(self, row: int) -> float:
        hits = np.nonzero(self.rows == row)[0]
        return float(self.intensity[hits[0]]) if len(hits) else 0.0

    def same_screen(self, other: "ScreenAccumulator") -> bool:
        return (
            self.x == other.x
            and self.window == other.window
            and self.orientation == other.orientation
            and np.array_equal(self.rows, other.rows)
        )


def new_screen(
    x: int,
    window: Tuple[int, int],
    radius: int,
    orientation: str = AXIS,
    origin: Site = ORIGIN,
) -> ScreenAccumulator:
    """An empty screen covering every lattice site of its line inside the box."""
    t0, t1 = window
    if t0 < 0 or t1 < t0:
        raise ValidationError(f"screen window must satisfy 0 <= begin <= end, got {window}")
    if orientation not in ORIENTATIONS:
        raise ValidationError(f"screen orientation must be one of {ORIENTATIONS}")

    lo_m, hi_m = origin.m - radius, origin.m + radius
    lo_n, hi_n = origin.n - radius, origin.n + radius
    if orientation == AXIS:
        if not lo_m <= x <= hi_m:
            raise ValidationError(f"screen x={x} is outside the radius-{radius} box")
        rows = [n for n in range(lo_n, hi_n + 1) if (x + n) % 2 == 0]
    else:
        rows = [
            u
            for u in range(-2 * radius - abs(x), 2 * radius + abs(x) + 1)
            if lo_m <= x - u <= hi_m and lo_n <= x + u <= hi_n
        ]
        if not rows:
            raise ValidationError(f"diagonal screen m+n={2 * x} misses the radius-{radius} box")
    return ScreenAccumulator(x, (t0, t1), rows, np.zeros(len(rows)), radius, orientation, origin)


def screen_observe(acc: ScreenAccumulator, field: AmplitudeField) -> ScreenAccumulator:
    """Add the field's probability along the screen; the field is untouched."""
    t0, t1 = acc.window
    if not t0 <= field.time <= t1:
        raise TimeOutsideWindow(f"t={field.time} is outside the screen window [{t0}, {t1}]")
    if field.radius != acc.radius or field.origin != acc.origin:
        raise ValidationError("field and screen are on different boxes")

    P = site_probabilities(field)
    sites = acc.sites()
    i = np.array([s.m - acc.origin.m + acc.radius for s in sites], dtype=int)
    l = np.array([s.n - acc.origin.n + acc.radius for s in sites], dtype=int)
    return replace(
        acc,
        intensity=acc.intensity + P[i, l],
        observed=acc.observed + (field.time,),
    )


def screen_profile(
    acc: ScreenAccumulator, filter_nonzero: bool = False, eps: float = 0.0
) -> Profile:
    return [
        (int(r), float(v))
        for r, v in zip(acc.rows, acc.intensity)
        if not (filter_nonzero and v <= eps)
    ]


@dataclass(frozen=True)
class ProfileExtrema:
    maxima: Tuple[Tuple[int, float], ...]
    minima: Tuple[Tuple[int, float], ...]
    threshold: float
    axis: int = 0

    @property
    def central_index(self) -> Optional[int]:
        """Index into ``maxima`` of the peak nearest ``axis``; the higher one on a tie."""
        if not self.maxima:
            return None
        return min(
            range(len(self.maxima)),
            key=lambda i: (abs(self.maxima[i][0] - self.axis), -self.maxima[i][1]),
        )

    @property
    def highest_index(self) -> Optional[int]:
        if not self.maxima:
            return None
        return max(range(len(self.maxima)), key=lambda i: self.maxima[i][1])

    def inner_minima(self) -> Tuple[Tuple[int, float], ...]:
        """The valleys on either side of the central peak."""
        c = self.central_index
        if c is None:
            return ()
        out = []
        if c > 0:
            out.append(self.minima[c - 1])
        if c < len(self.minima):
            out.append(self.minima[c])
        return tuple(out)

    def valley_ratio(self) -> Optional[float]:
        """The higher of the two valleys beside the central peak, over that peak; None without valleys."""
        inner = self.inner_minima()
        c = self.central_index
        if not inner or c is None:
            return None
        return max(v for _, v in inner) / self.maxima[c][1]


def find_extrema(
    profile: Sequence[Tuple[int, float]],
    rel_threshold: float = DEFAULT_THRESHOLD,
    axis: int = 0,
) -> ProfileExtrema:
    """
    Args:
        profile: ``(row, value)`` pairs on consecutive parity rows.
        rel_threshold: peaks lower than this fraction of the global maximum
            are ignored.
        axis: the row the walker's own line crosses; the peak nearest it is
            the central one.

    Returns:
        Maxima strictly above both neighbours (endpoints compare with their
        single neighbour), and the lowest point between each pair of
        consecutive maxima.
    """
    if not profile:
        raise EmptyProfile("cannot find extrema of an empty profile")
    if not 0 <= rel_threshold < 1:
        raise ValidationError(f"rel_threshold must be in [0, 1), got {rel_threshold}")

    rows = [int(r) for r, _ in profile]
    values = np.array([v for _, v in profile], dtype=float)
    cutoff = rel_threshold * values.max()
    padded = np.concatenate([[-np.inf], values, [-np.inf]])

    peaks = [
        i
        for i, v in enumerate(values)
        if v > padded[i] and v > padded[i + 2] and v >= cutoff and v > 0
    ]
    valleys = [p + 1 + int(np.argmin(values[p + 1 : q])) for p, q in zip(peaks, peaks[1:])]

    return ProfileExtrema(
        maxima=tuple((rows[i], float(values[i])) for i in peaks),
        minima=tuple((rows[i], float(values[i])) for i in valleys),
        threshold=rel_threshold,
        axis=axis,
    )
