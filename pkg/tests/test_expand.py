from fractions import Fraction

import pytest

from arrwwid.exact import ONE, coord
from arrwwid.expand import (expand, vertex_degrees, count_tiles, tile_at,
                            rasterize, max_interior_degree_fast, BudgetError)


def test_counts_and_partition(quadtree, daun, lifted_daun):
    for rs, depth, n in ((quadtree, 2, 16), (daun, 1, 16), (lifted_daun, 1, 64)):
        ts = expand(rs, depth)
        assert len(ts) == n
        assert ts.total_measure() == rs.unit_rule.base.measure()


def test_partition_exactness_deeper(daun):
    for depth in (2, 3):
        ts = expand(daun, depth)
        assert ts.total_measure() == daun.unit_rule.base.measure()


def test_lifted_daun_layers(lifted_daun):
    ts = expand(lifted_daun, 1)
    layers = {}
    for t in ts:
        layers.setdefault(t.geometry.lo[2], 0)
        layers[t.geometry.lo[2]] += 1
    assert sorted(layers.values()) == [16, 16, 16, 16]


def test_geometry_address_coherence(hilbert):
    ts = expand(hilbert, 3)
    for t in list(ts)[::17]:
        rule_name, transform, rev = tile_at(hilbert, t.address)
        assert rule_name == t.rule
        assert hilbert.rules[rule_name].base.transform(transform) == t.geometry


def test_quadtree_degrees(quadtree):
    dm = vertex_degrees(expand(quadtree, 2))
    assert dm.max_interior == 4


def test_daun_degrees_exact_and_fast(daun):
    for depth in (1, 2):
        assert vertex_degrees(expand(daun, depth)).max_interior == 3
    for depth in (1, 2, 3, 4):
        assert max_interior_degree_fast(daun, depth) == 3


def test_degree_monotone(quadtree, daun):
    for rs in (quadtree, daun):
        degs = [max_interior_degree_fast(rs, k) for k in (1, 2, 3)]
        assert degs == sorted(degs)


def test_t_junction_counts_stem(daun):
    # a vertex interior to another tile's edge must count that tile
    ts = expand(daun, 1)
    dm = vertex_degrees(ts)
    assert 3 in dm.interior.values()


def test_lifted_daun_degree(lifted_daun):
    assert max_interior_degree_fast(lifted_daun, 1) == 6
    assert vertex_degrees(expand(lifted_daun, 1)).max_interior == 6


def test_raster_matches_exact(daun):
    raster = rasterize(daun, 2)
    assert raster.ids.shape == (48, 32)
    assert int(raster.ids.max()) == 255


def test_budget(quadtree):
    with pytest.raises(BudgetError):
        expand(quadtree, 5, budget=100)


def test_address_order_deterministic(hilbert):
    a = [t.address for t in expand(hilbert, 2)]
    assert a == sorted(a)
