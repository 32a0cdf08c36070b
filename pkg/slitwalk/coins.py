"""Coin operators.

Each coin is a 4x4 unitary acting on the two-qubit coin space. Rows are the
outgoing coin ``(j, k)``, columns the incoming ``(j', k')``, both flattened
as ``2j + k``.

Available coins
---------------
- hadamard(): H tensor H
- grover(): Grover diffusion, ``2|s><s| - I``
- fourier(): 4-point DFT with entries ``i**(r*c) / 2``
- custom(entries): any validated 4x4 unitary
- random_coin(rng): Haar-random unitary
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from .errors import NonUnitary, ValidationError
from .lattice import COIN_STATES

UNITARITY_TOLERANCE = 1e-12

COIN_NAMES = ("hadamard", "grover", "fourier", "custom")


def unitarity_residual(matrix: np.ndarray) -> float:
    """``max |C^dagger C - I|`` over all entries."""
    m = np.asarray(matrix, dtype=np.complex128)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True, eq=False)
class CoinOperator:
    name: str
    matrix: NDArray[np.complex128]

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.shape != (COIN_STATES, COIN_STATES):
            raise ValidationError(f"coin must be 4x4, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValidationError("coin entries must be finite")
        residual = unitarity_residual(matrix)
        if residual > UNITARITY_TOLERANCE:
            raise NonUnitary(f"coin {self.name!r} is not unitary (residual {residual:.3e})")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    def entry(self, row: Union[int, Sequence[int]], col: Union[int, Sequence[int]]) -> complex:
        """Look up an entry by flat index or by ``(j, k)`` pair."""
        return complex(self.matrix[_flat(row), _flat(col)])

    def __repr__(self) -> str:
        return f"CoinOperator({self.name!r})"


def _flat(index: Union[int, Sequence[int]]) -> int:
    if isinstance(index, (int, np.integer)):
        return int(index)
    j, k = index
    return 2 * j + k


def hadamard() -> CoinOperator:
    """H tensor H; every entry is +-1/2."""
    h = np.array([[1, 1], [1, -1]], dtype=np.complex128)
    return CoinOperator("hadamard", 0.5 * np.kron(h, h))


def grover() -> CoinOperator:
    """Diagonal entries -1/2, off-diagonal +1/2."""
    ones = np.ones((COIN_STATES, COIN_STATES), dtype=np.complex128)
    return CoinOperator("grover", 0.5 * ones - np.eye(COIN_STATES, dtype=np.complex128))


def fourier() -> CoinOperator:
    """Entries ``i**(r*c) / 2``, forward transform, no conjugation."""
    powers = np.array([1, 1j, -1, -1j], dtype=np.complex128)
    rc = np.outer(np.arange(COIN_STATES), np.arange(COIN_STATES)) % 4
    return CoinOperator("fourier", powers[rc] / 2)


def custom(entries: Sequence[Sequence[complex]], name: str = "custom") -> CoinOperator:
    return CoinOperator(name, np.asarray(entries, dtype=np.complex128))


def identity() -> CoinOperator:
    return CoinOperator("identity", np.eye(COIN_STATES, dtype=np.complex128))


def random_coin(rng: Optional[np.random.Generator] = None) -> CoinOperator:
    """
    A Ginibre matrix is QR-decomposed and the Q factor's columns are rephased
    so the diagonal of R is positive, which gives Haar measure.
    """
    rng = rng or np.random.default_rng()
    z = rng.normal(size=(COIN_STATES, COIN_STATES)) + 1j * rng.normal(
        size=(COIN_STATES, COIN_STATES)
    )
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return CoinOperator("random", q)


def coin_by_name(name: str, entries: Optional[Sequence[Sequence[complex]]] = None) -> CoinOperator:
    if name == "hadamard":
        return hadamard()
    elif name == "grover":
        return grover()
    elif name == "fourier":
        return fourier()
    elif name == "custom":
        if entries is None:
            raise ValidationError("custom coin requires a coin matrix")
        return custom(entries)
    raise ValidationError(f"unknown coin {name!r}, expected one of {', '.join(COIN_NAMES)}")
