import numpy as np
from pytest import raises

from slitwalk.errors import NonNormalizedCoinState, OddParitySite, SiteOutsideBox, ValidationError
from slitwalk.lattice import (
    AmplitudeField,
    CoinIndex,
    Site,
    extent,
    iter_sites,
    new_localized,
    norm,
    parity_mask,
    support,
    zeros,
)

HADAMARD_STATE = (0.5, 0.5j, 0.5j, -0.5)


def test_coin_index():
    assert CoinIndex(0, 0).offset == (1, 1)
    assert CoinIndex(1, 0).offset == (-1, 1)
    assert CoinIndex(1, 1).flat == 3
    assert CoinIndex(0, 1).flipped == CoinIndex(1, 0)
    assert CoinIndex.from_flat(2) == CoinIndex(1, 0)


def test_new_localized():
    f = new_localized(Site(0, 0), HADAMARD_STATE, 120)
    assert f.time == 0
    assert f.data.shape == (4, 241, 241)
    assert np.allclose(f.amplitudes_at(Site(0, 0)), HADAMARD_STATE)
    assert norm(f) == 1.0

    f = new_localized(Site(0, 0), (1, 0, 0, 0), 5)
    assert f.amplitudes_at(Site(0, 0))[0] == 1
    assert np.count_nonzero(f.data) == 1

    f = new_localized(Site(2, -4), (0, 1, 0, 0), 5)
    assert f.amplitudes_at(Site(2, -4))[1] == 1


def test_new_localized_errors():
    with raises(NonNormalizedCoinState):
        new_localized(Site(0, 0), (1, 1, 0, 0), 5)
    with raises(OddParitySite):
        new_localized(Site(1, 0), (1, 0, 0, 0), 5)
    with raises(SiteOutsideBox):
        new_localized(Site(8, 0), (1, 0, 0, 0), 5)
    with raises(ValidationError):
        new_localized(Site(0, 0), (1, 0, 0), 5)

    # builtin base classes are catchable too
    with raises(ValueError):
        new_localized(Site(0, 0), (1, 1, 0, 0), 5)


def test_field_is_immutable():
    f = new_localized(Site(0, 0), (1, 0, 0, 0), 3)
    with raises(ValueError):
        f.data[0, 3, 3] = 2
    with raises(Exception):
        f.time = 4


def test_field_rejects_odd_parity_amplitude():
    data = np.zeros((4, 5, 5), dtype=complex)
    data[0, 1, 2] = 1
    with raises(OddParitySite):
        AmplitudeField(2, data)
    with raises(ValidationError):
        AmplitudeField(2, np.zeros((4, 3, 3)))


def test_norm():
    f = new_localized(Site(0, 0), HADAMARD_STATE, 4)
    assert norm(f) == 1.0
    assert norm(f.scaled(0)) == 0.0
    assert norm(zeros(4)) == 0.0
    assert abs(norm(f + f) - 4.0) < 1e-15


def test_support():
    f = new_localized(Site(2, 0), HADAMARD_STATE, 4)
    assert support(f) == {Site(2, 0)}
    assert support(f, eps=2) == frozenset()
    with raises(ValidationError):
        support(f, eps=-1)


def test_extent():
    assert extent(zeros(3)) == -1
    assert extent(new_localized(Site(0, 0), (1, 0, 0, 0), 3)) == 0
    assert extent(new_localized(Site(-2, 0), (1, 0, 0, 0), 3)) == 2


def test_parity_and_sites():
    mask = parity_mask(2)
    assert mask.sum() == 13
    sites = list(iter_sites(2))
    assert len(sites) == 13
    assert all(s.even for s in sites)
    assert sites[0] == Site(-2, -2)
