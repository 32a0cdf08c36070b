"""Dense evolution matrices and a 1-D Hadamard walk, for checking the stepper.

Basis ordering of the dense matrix: index ``c * S + s`` where ``c = 2j + k``
is the coin and ``s`` enumerates the even-parity sites of the box row-major
in ``(m, n)``. Links leaving the box are broken, which keeps the truncated
operator unitary.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .coins import CoinOperator
from .errors import DimensionMismatch, RadiusTooLarge, ValidationError
from .evolution import advance, closed_mask
from .lattice import COIN_STATES, ORIGIN, AmplitudeField, Site, box_width, parity_mask
from .topology import LinkSet

MAX_RADIUS = 8


@dataclass(frozen=True, eq=False)
class DenseEvolution:
    radius: int
    matrix: np.ndarray
    origin: Site = ORIGIN

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def unitarity_residual(self) -> float:
        u = self.matrix
        return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def _site_indices(radius: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.nonzero(parity_mask(radius))


def field_to_vector(field: AmplitudeField) -> np.ndarray:
    i, l = _site_indices(field.radius)
    return field.data[:, i, l].reshape(-1)


def vector_to_field(vector: np.ndarray, radius: int, time: int = 0, origin: Site = ORIGIN) -> AmplitudeField:
    i, l = _site_indices(radius)
    w = box_width(radius)
    data = np.zeros((COIN_STATES, w, w), dtype=np.complex128)
    data[:, i, l] = np.asarray(vector).reshape(COIN_STATES, len(i))
    return AmplitudeField(radius, data, time, origin)


def dense_from_mask(coin: CoinOperator, mask: np.ndarray, radius: int) -> DenseEvolution:
    """
    Build the matrix column by column by stepping each basis state. ``mask``
    is used as given, so test code can pass masks no LinkSet could produce.
    """
    if radius > MAX_RADIUS:
        raise RadiusTooLarge(f"dense oracle supports radius <= {MAX_RADIUS}, got {radius}")
    if radius < 0:
        raise ValidationError(f"radius must be >= 0, got {radius}")
    i, l = _site_indices(radius)
    sites = len(i)
    dim = COIN_STATES * sites
    w = box_width(radius)
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    basis = np.zeros((COIN_STATES, w, w), dtype=np.complex128)
    for col in range(dim):
        c, s = divmod(col, sites)
        basis[c, i[s], l[s]] = 1.0
        matrix[:, col] = advance(basis, coin.matrix, mask)[:, i, l].reshape(-1)
        basis[c, i[s], l[s]] = 0.0
    matrix.flags.writeable = False
    return DenseEvolution(radius, matrix)


def build_dense(coin: CoinOperator, links: LinkSet, R: int) -> DenseEvolution:
    if R > MAX_RADIUS:
        raise RadiusTooLarge(f"dense oracle supports radius <= {MAX_RADIUS}, got {R}")
    return dense_from_mask(coin, closed_mask(links, R, ORIGIN), R)


def apply_dense(U: DenseEvolution, field: AmplitudeField) -> AmplitudeField:
    if field.radius != U.radius or field.origin != U.origin:
        raise DimensionMismatch(
            f"field box (radius {field.radius}) does not match the operator (radius {U.radius})"
        )
    return vector_to_field(U.matrix @ field_to_vector(field), U.radius, field.time + 1, field.origin)


def random_field(radius: int, rng: np.random.Generator) -> AmplitudeField:
    """A normalized field with random amplitude on every site of the box."""
    dim = COIN_STATES * len(_site_indices(radius)[0])
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vector_to_field(v / np.linalg.norm(v), radius)


_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def walk1d_hadamard(T: int) -> np.ndarray:
    """
    Distribution of the 1-D Hadamard walk after T steps from coin
    ``(|0> + i|1>) / sqrt(2)`` at the origin. Coin 0 moves right, coin 1 left.

    Returns:
        Array of length ``2T + 1``; entry ``m + T`` is ``p_m(T)``.
    """
    if T < 0:
        raise ValidationError(f"T must be >= 0, got {T}")
    psi = np.zeros((2, 2 * T + 1), dtype=np.complex128)
    psi[:, T] = np.array([1.0, 1.0j]) / np.sqrt(2.0)
    for _ in range(T):
        tossed = _H @ psi
        psi = np.zeros_like(psi)
        psi[0, 1:] = tossed[0, :-1]
        psi[1, :-1] = tossed[1, 1:]
    return np.sum(np.abs(psi) ** 2, axis=0)
