import numpy as np
import pytest

from slitwalk.lattice import COIN_INDICES, iter_sites
from slitwalk.topology import EMPTY, break_edges


def pytest_addoption(parser):
    parser.addoption(
        "--skip-figures",
        action="store_true",
        default=False,
        help="Skip the full-size experiment reproductions",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "figure: full-size experiment reproduction")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skip-figures"):
        return
    skip = pytest.mark.skip(reason="--skip-figures given")
    for item in items:
        if "figure" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def make_random_links(rng, radius, fraction=0.3):
    """Break a random fraction of the edges between sites of the box."""
    edges = [
        (s, d)
        for s in iter_sites(radius)
        for d in COIN_INDICES
        if rng.random() < fraction / 2
    ]
    return break_edges(EMPTY, edges)


@pytest.fixture
def random_links(rng):
    def factory(radius, fraction=0.3):
        return make_random_links(rng, radius, fraction)

    return factory
