from fractions import Fraction

import pytest

from arrwwid.certify import certify_max_degree, UnsupportedShapeError
from arrwwid.expand import expand, vertex_degrees, max_interior_degree_fast
from arrwwid.rules import parse_ruleset


def test_daun_certified(daun):
    cert = certify_max_degree(daun, 3)
    assert cert.certified
    assert cert.configurations   # closed set of edge configurations


def test_certificate_soundness_cross_check(daun):
    # certified bound must hold in actual expansions up to depth 5
    for k in (1, 2, 3, 4, 5):
        assert max_interior_degree_fast(daun, k) <= 3


def test_quadtree_bound3_counterexample(quadtree):
    cert = certify_max_degree(quadtree, 3)
    assert cert.status == "counterexample"
    assert cert.degree == 4
    assert tuple(float(v) for v in cert.vertex) == (0.5, 0.5)
    assert cert.depth == 1


def test_quadtree_bound4_certified(quadtree):
    assert certify_max_degree(quadtree, 4).certified


def test_daun_bound2_counterexample(daun):
    # oracle: a degree-3 vertex read off the depth-2 expansion
    dm = vertex_degrees(expand(daun, 2))
    oracle_vertices = {p for p, d in dm.interior.items() if d == 3}
    assert oracle_vertices
    cert = certify_max_degree(daun, 2)
    assert cert.status == "counterexample"
    assert cert.degree >= 3


def test_counterexample_vertex_is_real(quadtree):
    cert = certify_max_degree(quadtree, 3)
    dm = vertex_degrees(expand(quadtree, cert.depth))
    assert dm.interior[cert.vertex] == cert.degree


def test_3d_unsupported(lifted_daun):
    with pytest.raises(UnsupportedShapeError):
        certify_max_degree(lifted_daun, 6)


def test_non_uniform_scale_unsupported():
    rs = parse_ruleset("""
unit R
rule R
base box 0 0 1 1
child rule=R scale=1/2 rot=0 reflect=0 reversed=0 translate=(0,0)
child rule=R scale=1/2 rot=0 reflect=0 reversed=0 translate=(1/2,0)
child rule=R scale=1/2 rot=0 reflect=0 reversed=0 translate=(0,1/2)
child rule=R scale=1/4 rot=0 reflect=0 reversed=0 translate=(1/2,1/2)
child rule=R scale=1/4 rot=0 reflect=0 reversed=0 translate=(3/4,1/2)
child rule=R scale=1/4 rot=0 reflect=0 reversed=0 translate=(1/2,3/4)
child rule=R scale=1/4 rot=0 reflect=0 reversed=0 translate=(3/4,3/4)
""")
    with pytest.raises(UnsupportedShapeError):
        certify_max_degree(rs, 3)
