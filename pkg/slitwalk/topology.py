"""Broken links, the link functions and barrier geometries.

A link is "closed" when it is intact (the walker crosses it) and "open" when
it is broken (the walker stays put and its coin is flipped). Barriers are
lines of sites with all four links broken; slits are sites on the line that
keep their links.
"""

from dataclasses import dataclass, field, replace
from typing import FrozenSet, Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import OddParitySite, OverlappingSlits, ValidationError
from .lattice import COIN_INDICES, COIN_STATES, ORIGIN, CoinIndex, Site, box_width

AXIS = "axis"
DIAGONAL = "diagonal"
ORIENTATIONS = (AXIS, DIAGONAL)

LENGTH = "length"
SITES = "sites"
WIDTH_UNITS = (LENGTH, SITES)

DEFAULT_EXTENT = 128

Edge = Tuple[int, int, int, int]
Direction = Union[CoinIndex, Tuple[int, int]]


def _neighbour(site: Site, d: CoinIndex) -> Site:
    dm, dn = d.offset
    return Site(site[0] + dm, site[1] + dn)


def canonical_edge(site: Site, direction: Direction) -> Edge:
    """
    Key an undirected edge by its lexicographically smaller endpoint and the
    direction pointing away from it.
    """
    site = Site(*site)
    d = CoinIndex(*direction)
    if not site.even:
        raise OddParitySite(f"site {tuple(site)} has odd parity")
    if d.j not in (0, 1) or d.k not in (0, 1):
        raise ValidationError(f"coin direction must be bits, got {tuple(direction)}")
    other = _neighbour(site, d)
    if site <= other:
        return (site.m, site.n, d.j, d.k)
    flip = d.flipped
    return (other.m, other.n, flip.j, flip.k)


@dataclass(frozen=True)
class LinkSet:
    """An immutable set of broken undirected edges."""

    broken: FrozenSet[Edge] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.broken)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.broken))


EMPTY = LinkSet()


def is_broken(links: LinkSet, site: Site, direction: Direction) -> bool:
    return canonical_edge(site, direction) in links.broken


def l1(links: LinkSet, j: int, k: int, m: int, n: int) -> int:
    """``(-1)**j`` if the link from (m, n) toward coin (j, k) is intact, else 0."""
    if is_broken(links, Site(m, n), (j, k)):
        return 0
    return (-1) ** j


def l2(links: LinkSet, j: int, k: int, m: int, n: int) -> int:
    """``(-1)**k`` if the link from (m, n) toward coin (j, k) is intact, else 0."""
    if is_broken(links, Site(m, n), (j, k)):
        return 0
    return (-1) ** k


def break_edge(links: LinkSet, site: Site, direction: Direction) -> LinkSet:
    return LinkSet(links.broken | {canonical_edge(site, direction)})


def restore_edge(links: LinkSet, site: Site, direction: Direction) -> LinkSet:
    return LinkSet(links.broken - {canonical_edge(site, direction)})


def break_edges(links: LinkSet, edges: Iterable[Tuple[Site, Direction]]) -> LinkSet:
    return LinkSet(links.broken | {canonical_edge(s, d) for s, d in edges})


def isolate_sites(links: LinkSet, sites: Iterable[Site]) -> LinkSet:
    """Break all four links of every given site."""
    return break_edges(links, ((s, d) for s in sites for d in COIN_INDICES))


def broken_mask(links: LinkSet, radius: int, origin: Site = ORIGIN) -> np.ndarray:
    """
    Boolean ``(4, 2R+1, 2R+1)`` array: ``mask[2j+k, i, l]`` is true when the
    link leaving the site at box index (i, l) toward coin (j, k) is broken.
    Both endpoints of every broken edge are marked when they lie in the box.
    """
    w = box_width(radius)
    mask = np.zeros((COIN_STATES, w, w), dtype=bool)
    for m, n, j, k in links.broken:
        d = CoinIndex(j, k)
        for (sm, sn), e in (((m, n), d), (_neighbour(Site(m, n), d), d.flipped)):
            i = sm - origin.m + radius
            l = sn - origin.n + radius
            if 0 <= i < w and 0 <= l < w:
                mask[e.flat, i, l] = True
    return mask


class Slit(NamedTuple):
    center: int
    width: float


@dataclass(frozen=True)
class BarrierSpec:
    """
    A wall of isolated sites with slits.

    For ``orientation="axis"`` the wall is column ``m = x`` and slit centres
    are ``n`` values. For ``orientation="diagonal"`` the wall is the
    anti-diagonal ``m + n = 2x``, made of sites ``(x - u, x + u)``, and slit
    centres are ``u`` values.

    Slit widths are lattice lengths by default: a slit opens the wall sites
    with ``|position - center| <= width / 2``. With ``width_unit="sites"``
    the width counts consecutive wall sites instead, so width 5 on a column
    opens ``n = center - 4 .. center + 4``.

    ``extent`` bounds the wall to ``|n| <= extent`` (axis) or
    ``|u| <= extent`` (diagonal). Left as None, :func:`run` sizes the wall
    to its box and direct builders use ``DEFAULT_EXTENT``.
    """

    x: int
    slits: Tuple[Slit, ...] = ()
    orientation: str = AXIS
    extent: Optional[int] = None
    width_unit: str = LENGTH

    def __post_init__(self) -> None:
        slits = tuple(Slit(int(c), float(w)) for c, w in self.slits)
        object.__setattr__(self, "slits", slits)

        if self.orientation not in ORIENTATIONS:
            raise ValidationError(
                f"barrier orientation must be one of {ORIENTATIONS}, got {self.orientation!r}"
            )
        if self.width_unit not in WIDTH_UNITS:
            raise ValidationError(
                f"slit width unit must be one of {WIDTH_UNITS}, got {self.width_unit!r}"
            )
        if self.extent is not None and self.extent < 0:
            raise ValidationError(f"barrier extent must be >= 0, got {self.extent}")
        for slit in slits:
            if slit.width <= 0:
                raise ValidationError(f"slit width must be positive, got {slit.width}")
            if self.width_unit == SITES and slit.width < 1:
                raise ValidationError(f"a slit counted in sites needs width >= 1, got {slit.width}")
            if self.orientation == AXIS and (self.x + slit.center) % 2:
                raise ValidationError(
                    f"slit centre {slit.center} is not a lattice site in column x={self.x}"
                )

        ordered = sorted(slits)
        for a, b in zip(ordered, ordered[1:]):
            if b.center - self.half_width(b) < a.center + self.half_width(a):
                raise OverlappingSlits(f"slits {tuple(a)} and {tuple(b)} overlap")

    @property
    def spacing(self) -> int:
        """Distance between neighbouring wall sites, in wall positions."""
        return 2 if self.orientation == AXIS else 1

    def half_width(self, slit: Slit) -> float:
        if self.width_unit == SITES:
            return (int(slit.width) - 1) * self.spacing / 2
        return slit.width / 2

    def is_open(self, position: int) -> bool:
        return any(abs(position - s.center) <= self.half_width(s) for s in self.slits)

    def line_sites(self) -> Iterator[Tuple[int, Site]]:
        """``(position along the wall, site)`` for every site on the wall line."""
        extent = DEFAULT_EXTENT if self.extent is None else self.extent
        if self.orientation == AXIS:
            for n in range(-extent, extent + 1):
                if (self.x + n) % 2 == 0:
                    yield n, Site(self.x, n)
        else:
            for u in range(-extent, extent + 1):
                yield u, Site(self.x - u, self.x + u)

    def wall_sites(self) -> Iterator[Site]:
        return (s for p, s in self.line_sites() if not self.is_open(p))

    def slit_sites(self) -> Iterator[Site]:
        return (s for p, s in self.line_sites() if self.is_open(p))

    def beyond(self, site: Site) -> bool:
        """True for sites strictly on the far side of the wall."""
        if self.orientation == AXIS:
            return site[0] > self.x
        return site[0] + site[1] > 2 * self.x

    def without_slits(self, keep: Sequence[int]) -> "BarrierSpec":
        """The same wall keeping only the slits at the given indices."""
        return replace(self, slits=tuple(self.slits[i] for i in keep))


def barrier_with_slits(spec: BarrierSpec) -> LinkSet:
    """A column wall: every non-slit site of column ``spec.x`` is fully cut."""
    if spec.orientation != AXIS:
        raise ValidationError("barrier_with_slits needs an axis-perpendicular barrier")
    return isolate_sites(EMPTY, spec.wall_sites())


def diagonal_barrier_with_slits(spec: BarrierSpec) -> LinkSet:
    """An anti-diagonal wall ``m + n = 2 * spec.x``, slits measured along it."""
    if spec.orientation != DIAGONAL:
        raise ValidationError("diagonal_barrier_with_slits needs a diagonal barrier")
    return isolate_sites(EMPTY, spec.wall_sites())


def links_for(spec: BarrierSpec) -> LinkSet:
    if spec.orientation == AXIS:
        return barrier_with_slits(spec)
    return diagonal_barrier_with_slits(spec)
