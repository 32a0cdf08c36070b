from hypothesis import given
from hypothesis import strategies as st
from pytest import raises

from slitwalk.errors import OddParitySite, OverlappingSlits, ValidationError
from slitwalk.lattice import COIN_INDICES, Site
from slitwalk.topology import (
    AXIS,
    DEFAULT_EXTENT,
    DIAGONAL,
    EMPTY,
    SITES,
    BarrierSpec,
    Slit,
    barrier_with_slits,
    break_edge,
    broken_mask,
    canonical_edge,
    diagonal_barrier_with_slits,
    is_broken,
    isolate_sites,
    l1,
    l2,
    links_for,
    restore_edge,
)

even_sites = st.builds(
    lambda m, n: Site(m, n if (m + n) % 2 == 0 else n + 1),
    st.integers(-50, 50),
    st.integers(-50, 50),
)
directions = st.sampled_from(COIN_INDICES)


def open_sites(spec, links):
    """Sites on the wall line that keep all four links."""
    return {
        s
        for _, s in spec.line_sites()
        if not any(is_broken(links, s, d) for d in COIN_INDICES)
    }


def test_is_broken():
    assert not is_broken(EMPTY, Site(0, 0), (0, 0))
    links = break_edge(EMPTY, Site(0, 0), (0, 0))
    assert is_broken(links, Site(0, 0), (0, 0))
    assert is_broken(links, Site(1, 1), (1, 1))
    assert not is_broken(links, Site(0, 0), (1, 1))
    with raises(OddParitySite):
        is_broken(EMPTY, Site(0, 1), (0, 0))


def test_link_functions():
    assert l1(EMPTY, 0, 0, 0, 0) == 1
    assert l2(EMPTY, 0, 0, 0, 0) == 1
    assert l1(EMPTY, 1, 0, 0, 0) == -1
    assert l2(EMPTY, 1, 0, 0, 0) == 1

    links = break_edge(EMPTY, Site(0, 0), (0, 0))
    assert l1(links, 0, 0, 0, 0) == 0
    assert l2(links, 0, 0, 0, 0) == 0
    assert l1(links, 1, 1, 1, 1) == 0


def test_break_restore():
    links = break_edge(EMPTY, Site(2, 2), (1, 0))
    assert break_edge(links, Site(2, 2), (1, 0)) == links
    assert restore_edge(links, Site(2, 2), (1, 0)) == EMPTY
    assert restore_edge(links, Site(1, 3), (0, 1)) == EMPTY
    assert len(isolate_sites(EMPTY, [Site(0, 0)])) == 4


@given(even_sites, directions)
def test_canonical_edge_is_undirected(site, d):
    m, n = site
    dm, dn = d.offset
    other = Site(m + dm, n + dn)
    assert canonical_edge(site, d) == canonical_edge(other, d.flipped)
    links = break_edge(EMPTY, site, d)
    assert is_broken(links, other, d.flipped)
    assert restore_edge(links, other, d.flipped) == EMPTY


@given(st.lists(st.tuples(even_sites, directions), max_size=20))
def test_broken_mask_marks_both_endpoints(edges):
    links = EMPTY
    for s, d in edges:
        links = break_edge(links, s, d)
    mask = broken_mask(links, 60)
    for s, d in edges:
        dm, dn = d.offset
        assert mask[d.flat, s.m + 60, s.n + 60]
        assert mask[d.flipped.flat, s.m + dm + 60, s.n + dn + 60]
    assert mask.sum() == 2 * len(links)


def test_single_slit_barrier():
    spec = BarrierSpec(20, (Slit(0, 5),), extent=30)
    links = barrier_with_slits(spec)
    assert open_sites(spec, links) == {Site(20, -2), Site(20, 0), Site(20, 2)}
    assert is_broken(links, Site(20, 4), (1, 0))
    assert is_broken(links, Site(20, -30), (0, 0))


def test_double_slit_barrier():
    spec = BarrierSpec(20, (Slit(6, 1), Slit(-6, 1)), extent=30)
    links = barrier_with_slits(spec)
    assert open_sites(spec, links) == {Site(20, 6), Site(20, -6)}
    assert not is_broken(links, Site(20, 6), (0, 0))
    assert not is_broken(links, Site(20, 6), (1, 1))


def test_solid_barrier():
    spec = BarrierSpec(20, extent=10)
    links = barrier_with_slits(spec)
    assert open_sites(spec, links) == set()
    assert len(links) == 4 * 11


def test_diagonal_barrier():
    spec = BarrierSpec(30, (Slit(0, 1),), DIAGONAL, extent=10)
    links = diagonal_barrier_with_slits(spec)
    # the slit keeps only the links that cross the wall line
    assert open_sites(spec, links) == set()
    assert not is_broken(links, Site(30, 30), (0, 0))
    assert not is_broken(links, Site(30, 30), (1, 1))
    assert is_broken(links, Site(30, 30), (0, 1))
    assert is_broken(links, Site(31, 29), (0, 0))
    assert spec.beyond(Site(31, 31))
    assert not spec.beyond(Site(30, 30))

    assert links_for(spec) == links
    with raises(ValidationError):
        barrier_with_slits(spec)
    with raises(ValidationError):
        diagonal_barrier_with_slits(BarrierSpec(30))


def test_barrier_spec_validation():
    with raises(OverlappingSlits):
        BarrierSpec(20, (Slit(0, 5), Slit(2, 3)))
    BarrierSpec(20, (Slit(0, 2), Slit(2, 2)))
    with raises(ValidationError):
        BarrierSpec(20, (Slit(0, 0),))
    with raises(ValidationError):
        BarrierSpec(20, (Slit(1, 1),))
    with raises(ValidationError):
        BarrierSpec(20, orientation="sideways")

    spec = BarrierSpec(20, (Slit(-6, 1), Slit(6, 1)), AXIS)
    assert spec.without_slits([1]).slits == (Slit(6, 1.0),)
    assert spec.without_slits([0]).width_unit == spec.width_unit


def test_slit_widths_in_sites():
    spec = BarrierSpec(20, (Slit(0, 5),), extent=30, width_unit=SITES)
    links = barrier_with_slits(spec)
    assert open_sites(spec, links) == {Site(20, n) for n in (-4, -2, 0, 2, 4)}

    one = BarrierSpec(20, (Slit(6, 1),), extent=30, width_unit=SITES)
    assert set(one.slit_sites()) == {Site(20, 6)}

    diagonal = BarrierSpec(30, (Slit(0, 3),), DIAGONAL, extent=10, width_unit=SITES)
    assert set(diagonal.slit_sites()) == {Site(31, 29), Site(30, 30), Site(29, 31)}

    with raises(OverlappingSlits):
        BarrierSpec(20, (Slit(0, 3), Slit(2, 3)), width_unit=SITES)
    with raises(ValidationError):
        BarrierSpec(20, (Slit(0, 0.5),), width_unit=SITES)
    with raises(ValidationError):
        BarrierSpec(20, width_unit="furlongs")


def test_default_extent():
    spec = BarrierSpec(20)
    assert spec.extent is None
    ns = [s.n for s in spec.wall_sites()]
    assert min(ns) == -DEFAULT_EXTENT
    assert max(ns) == DEFAULT_EXTENT
