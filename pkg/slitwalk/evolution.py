"""One step of the broken-link walk, and multi-step runs.

The update is a gather over target sites. For a target ``(m, n)`` and coin
``(j, k)``::

    A[1-j, 1-k; m, n](t+1) = sum_{j'k'} C[j+L1, k+L2; j'k'] A[j'k'; m+L1, n+L2](t)

with ``L1, L2`` the link functions and coin indices taken mod 2. On an
intact link this moves component ``(1-j, 1-k)`` in from the neighbour; on a
broken one the component ``(j, k)`` stays on ``(m, n)`` and is flipped.

Links leaving the box are treated as broken, so the truncated step is
exactly unitary. Callers that want the infinite-lattice result keep the
walker away from the edge; :func:`step` checks this by default.
"""

import logging
from typing import Any, Callable, List, Sequence, Tuple

import numpy as np

from .coins import CoinOperator
from .errors import SupportTouchesBoundary, ValidationError
from .lattice import COIN_INDICES, AmplitudeField, Site, box_width, extent
from .topology import LinkSet, broken_mask

log = logging.getLogger(__name__)

BOUNDARY_MARGIN = 2

Observer = Callable[[int, AmplitudeField], Any]


def closed_mask(links: LinkSet, radius: int, origin: Site) -> np.ndarray:
    """:func:`broken_mask` plus every link that leaves the box."""
    mask = broken_mask(links, radius, origin)
    w = box_width(radius)
    for d in COIN_INDICES:
        dm, dn = d.offset
        mask[d.flat, 0 if dm < 0 else w - 1, :] = True
        mask[d.flat, :, 0 if dn < 0 else w - 1] = True
    return mask


def _shift(a: np.ndarray, dm: int, dn: int) -> np.ndarray:
    """``out[i, l] = a[i - dm, l - dn]``, zero where that falls off the box."""
    out = np.zeros_like(a)
    w = a.shape[0]
    src_i = slice(max(0, -dm), w - max(0, dm))
    dst_i = slice(max(0, dm), w - max(0, -dm))
    src_l = slice(max(0, -dn), w - max(0, dn))
    dst_l = slice(max(0, dn), w - max(0, -dn))
    out[dst_i, dst_l] = a[src_i, src_l]
    return out


def advance(data: np.ndarray, coin: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """
    Args:
        data: ``(4, W, W)`` amplitudes at time t.
        coin: the 4x4 coin matrix.
        mask: ``(4, W, W)`` broken-link mask, box edges included.

    Returns:
        A new ``(4, W, W)`` array of amplitudes at time t+1.
    """
    tossed = np.einsum("ab,bij->aij", coin, data)
    new = np.empty_like(tossed)
    for a in COIN_INDICES:
        # target component a comes through the link pointing along flip(a)
        f = a.flipped.flat
        dm, dn = a.offset
        moved = _shift(tossed[a.flat], dm, dn)
        new[a.flat] = np.where(mask[f], tossed[f], moved)
    return new


def touches_boundary(field: AmplitudeField, margin: int = BOUNDARY_MARGIN) -> bool:
    """True if any amplitude lies closer than ``margin`` to the box edge."""
    reach = extent(field)
    return reach >= 0 and reach > field.radius - margin


def step(
    field: AmplitudeField,
    coin: CoinOperator,
    links: LinkSet,
    check_boundary: bool = True,
) -> AmplitudeField:
    """
    Args:
        field: the time-t field.
        coin: coin operator.
        links: broken links, static for the run.
        check_boundary: refuse fields that come within two sites of the box
            edge. With False, links leaving the box act as broken.

    Returns:
        The time-(t+1) field. The input is not modified.
    """
    if check_boundary and touches_boundary(field):
        raise SupportTouchesBoundary(
            f"field at t={field.time} reaches within {BOUNDARY_MARGIN} sites of its "
            f"radius-{field.radius} box; use a larger radius"
        )
    mask = closed_mask(links, field.radius, field.origin)
    return field.evolved(advance(field.data, coin.matrix, mask))


def evolve(
    field: AmplitudeField,
    coin: CoinOperator,
    links: LinkSet,
    steps: int,
    observers: Sequence[Observer] = (),
) -> Tuple[AmplitudeField, List[List[Any]]]:
    """
    Apply :func:`step` ``steps`` times, calling every observer with
    ``(t, field)`` after each step.

    Returns:
        The final field and, per observer, the list of values it returned.
    """
    if steps < 0:
        raise ValidationError(f"steps must be >= 0, got {steps}")

    mask = closed_mask(links, field.radius, field.origin)
    outputs: List[List[Any]] = [[] for _ in observers]

    log.debug(
        "evolving %d steps on radius %d with coin %s and %d broken links",
        steps,
        field.radius,
        coin.name,
        len(links),
    )
    for _ in range(steps):
        if touches_boundary(field):
            raise SupportTouchesBoundary(
                f"field at t={field.time} reaches within {BOUNDARY_MARGIN} sites of its "
                f"radius-{field.radius} box; use a larger radius"
            )
        field = field.evolved(advance(field.data, coin.matrix, mask))
        for observer, out in zip(observers, outputs):
            out.append(observer(field.time, field))
    return field, outputs
