"""The walker wavefunction on the diagonal lattice.

A field is stored densely over the square box ``|m|, |n| <= radius`` as a
complex array of shape ``(4, 2R+1, 2R+1)``. The first axis is the coin
component, flattened as ``2j + k``; coin ``(j, k)`` points toward the
neighbour ``(m + (-1)**j, n + (-1)**k)``. Positions with ``m + n`` odd are
not lattice sites: they are kept as zero padding and never reported.
"""

from dataclasses import dataclass, field as dataclass_field
from typing import FrozenSet, Iterator, NamedTuple, Sequence, Tuple

import numpy as np

from .errors import (
    NonNormalizedCoinState,
    OddParitySite,
    SiteOutsideBox,
    ValidationError,
)

COIN_STATES = 4
NORM_TOLERANCE = 1e-12


class Site(NamedTuple):
    m: int
    n: int

    @property
    def even(self) -> bool:
        return (self.m + self.n) % 2 == 0


class CoinIndex(NamedTuple):
    j: int
    k: int

    @property
    def flat(self) -> int:
        return 2 * self.j + self.k

    @property
    def flipped(self) -> "CoinIndex":
        return CoinIndex(1 - self.j, 1 - self.k)

    @property
    def offset(self) -> Tuple[int, int]:
        """Displacement toward the neighbour this coin value points at."""
        return (-1) ** self.j, (-1) ** self.k

    @classmethod
    def from_flat(cls, c: int) -> "CoinIndex":
        j, k = divmod(c, 2)
        return cls(j, k)


COIN_INDICES = tuple(CoinIndex.from_flat(c) for c in range(COIN_STATES))

ORIGIN = Site(0, 0)


def box_width(radius: int) -> int:
    return 2 * radius + 1


def parity_mask(radius: int) -> np.ndarray:
    """Boolean ``(2R+1, 2R+1)`` array, true where ``m + n`` is even."""
    idx = np.arange(box_width(radius))
    return (idx[:, None] + idx[None, :]) % 2 == 0


@dataclass(frozen=True, eq=False)
class AmplitudeField:
    """Complex amplitudes ``A[j,k; m,n](t)`` over a bounded box.

    Fields are values: the array is made read-only on construction, and
    every operation returns a new field.
    """

    radius: int
    data: np.ndarray
    time: int = 0
    origin: Site = dataclass_field(default=ORIGIN)

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValidationError(f"radius must be >= 0, got {self.radius}")
        if not Site(*self.origin).even:
            raise OddParitySite(f"box origin {tuple(self.origin)} has odd parity")

        w = box_width(self.radius)
        data = np.array(self.data, dtype=np.complex128)
        if data.shape != (COIN_STATES, w, w):
            raise ValidationError(
                f"expected amplitude array of shape {(COIN_STATES, w, w)}, got {data.shape}"
            )
        if not np.all(np.isfinite(data)):
            raise ValidationError("amplitudes must be finite")
        if np.any(data[:, ~parity_mask(self.radius)]):
            raise OddParitySite("amplitude stored at an odd-parity position")

        data.flags.writeable = False
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "origin", Site(*self.origin))

    @property
    def width(self) -> int:
        return box_width(self.radius)

    def index_of(self, site: Site) -> Tuple[int, int]:
        """Array indices of a site, or SiteOutsideBox."""
        i = site[0] - self.origin.m + self.radius
        j = site[1] - self.origin.n + self.radius
        if not (0 <= i < self.width and 0 <= j < self.width):
            raise SiteOutsideBox(f"site {tuple(site)} is outside the radius-{self.radius} box")
        return i, j

    def site_of(self, i: int, j: int) -> Site:
        return Site(i - self.radius + self.origin.m, j - self.radius + self.origin.n)

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lattice ``m`` and ``n`` coordinates along each box axis."""
        axis = np.arange(-self.radius, self.radius + 1)
        return axis + self.origin.m, axis + self.origin.n

    def amplitudes_at(self, site: Site) -> np.ndarray:
        i, j = self.index_of(site)
        return self.data[:, i, j].copy()

    def evolved(self, data: np.ndarray) -> "AmplitudeField":
        """The next-time field carrying ``data`` on the same box."""
        return AmplitudeField(self.radius, data, self.time + 1, self.origin)

    def scaled(self, factor: complex) -> "AmplitudeField":
        return AmplitudeField(self.radius, self.data * factor, self.time, self.origin)

    def __add__(self, other: "AmplitudeField") -> "AmplitudeField":
        if not isinstance(other, AmplitudeField):
            return NotImplemented
        if (other.radius, other.origin, other.time) != (self.radius, self.origin, self.time):
            raise ValidationError("can only add fields on the same box at the same time")
        return AmplitudeField(self.radius, self.data + other.data, self.time, self.origin)

    def __repr__(self) -> str:
        return f"AmplitudeField(radius={self.radius}, time={self.time}, norm={norm(self):.12f})"


def zeros(radius: int, time: int = 0, origin: Site = ORIGIN) -> AmplitudeField:
    w = box_width(radius)
    return AmplitudeField(radius, np.zeros((COIN_STATES, w, w), dtype=np.complex128), time, origin)


def new_localized(
    site: Site, coin_state: Sequence[complex], radius: int
) -> AmplitudeField:
    """
    Args:
        site: where the walker starts; must have even parity.
        coin_state: the 4 coin amplitudes, in ``2j + k`` order.
        radius: half-width of the box centred on the lattice origin.

    Returns:
        A field at ``time = 0`` with all amplitude on ``site``.
    """
    site = Site(*site)
    if radius < 0:
        raise ValidationError(f"radius must be >= 0, got {radius}")
    if not site.even:
        raise OddParitySite(f"site {tuple(site)} has odd parity (m + n must be even)")

    state = np.asarray(coin_state, dtype=np.complex128)
    if state.shape != (COIN_STATES,):
        raise ValidationError(f"coin state needs {COIN_STATES} amplitudes, got {state.shape}")
    weight = float(np.sum(np.abs(state) ** 2))
    if abs(weight - 1.0) > NORM_TOLERANCE:
        raise NonNormalizedCoinState(f"coin state has squared norm {weight!r}, expected 1")

    w = box_width(radius)
    data = np.zeros((COIN_STATES, w, w), dtype=np.complex128)
    placed = AmplitudeField(radius, data)
    i, j = placed.index_of(site)
    data[:, i, j] = state
    return AmplitudeField(radius, data)


def norm(field: AmplitudeField) -> float:
    """Total probability ``sum |A|**2``."""
    return float(np.sum(np.abs(field.data) ** 2))


def site_probabilities(field: AmplitudeField) -> np.ndarray:
    return np.sum(np.abs(field.data) ** 2, axis=0)


def iter_sites(radius: int, origin: Site = ORIGIN) -> Iterator[Site]:
    """Even-parity sites of the box, row-major in ``(m, n)``."""
    for i in range(box_width(radius)):
        for j in range(box_width(radius)):
            if (i + j) % 2 == 0:
                yield Site(i - radius + origin.m, j - radius + origin.n)


def support(field: AmplitudeField, eps: float = 0.0) -> FrozenSet[Site]:
    """Sites whose probability exceeds ``eps``."""
    if eps < 0:
        raise ValidationError(f"eps must be >= 0, got {eps}")
    probs = site_probabilities(field)
    probs[~parity_mask(field.radius)] = 0.0
    return frozenset(field.site_of(int(i), int(j)) for i, j in zip(*np.nonzero(probs > eps)))


def extent(field: AmplitudeField) -> int:
    """Largest ``max(|m|, |n|)`` offset from the box origin carrying amplitude, -1 if none."""
    occupied = np.any(field.data != 0, axis=0)
    if not occupied.any():
        return -1
    rows, cols = np.nonzero(occupied)
    offsets = np.concatenate([rows, cols]) - field.radius
    return int(np.max(np.abs(offsets)))
