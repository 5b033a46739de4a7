import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from arrwwid.exact import Coord, coord, ZERO, ONE
from arrwwid.transforms import Ortho, Similarity, fixed_point, parse_rot, format_rot

ORTHOS2 = [Ortho(2, rot, refl) for rot in range(12) for refl in (False, True)]
ORTHOS3 = [Ortho(3, perm=p, signs=s)
           for p in itertools.permutations(range(3))
           for s in itertools.product((1, -1), repeat=3)]

pts2 = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).map(
    lambda t: (coord(t[0]), coord(t[1])))


@given(st.sampled_from(ORTHOS2), st.sampled_from(ORTHOS2), pts2)
def test_compose_matches_apply(a, b, p):
    assert a.compose(b).apply(p) == a.apply(b.apply(p))


@given(st.sampled_from(ORTHOS2), pts2)
def test_inverse(a, p):
    assert a.inverse().apply(a.apply(p)) == p


def test_compose_matches_apply_3d():
    p = (coord(1), coord(2), coord(-3))
    for a in ORTHOS3[:12]:
        for b in ORTHOS3[::7]:
            assert a.compose(b).apply(p) == a.apply(b.apply(p))
            assert a.inverse().apply(a.apply(p)) == p


def test_rotation_30_exact():
    o = Ortho(2, 1)  # 30 degrees
    x, y = o.apply((ONE, ZERO))
    assert x == Coord(0, 1, 2) and y == Coord(1, 0, 2)


def test_similarity_compose_and_inverse():
    s1 = Similarity(Fraction(1, 2), Ortho(2, 3), (coord(1), coord(0)))
    s2 = Similarity(Fraction(1, 4), Ortho(2, 6, True), (coord(Fraction(1, 3)), coord(2)))
    p = (coord(Fraction(2, 7)), coord(Fraction(-3, 5)))
    assert s1.compose(s2).apply(p) == s1.apply(s2.apply(p))
    assert s1.inverse().apply(s1.apply(p)) == p


def test_fixed_point_exact():
    # contraction toward (1, 0): scale 1/2 rotation 0, t = (1/2, 0)
    s = Similarity(Fraction(1, 2), Ortho(2, 0), (coord(Fraction(1, 2)), ZERO))
    assert fixed_point(s) == (ONE, ZERO)
    # with rotation: verify by applying
    s2 = Similarity(Fraction(1, 2), Ortho(2, 3), (coord(1), coord(1)))
    fp = fixed_point(s2)
    assert s2.apply(fp) == fp


def test_rot_parse_format():
    assert parse_rot("90", 2) == 3
    with pytest.raises(ValueError):
        parse_rot("45", 2)
    perm, signs = parse_rot("-y,x,z", 3)
    o = Ortho(3, perm=perm, signs=signs)
    assert format_rot(o) == "-y,x,z"
    assert o.apply((coord(1), coord(0), coord(0))) == (ZERO, ONE, ZERO)
