from fractions import Fraction

import pytest

from arrwwid.recursify import (get_spec, recursify, lattice_degree, hex_vertex_degree,
                               coarse_degree, connected, displacement_bound,
                               exact_compare, owner, LatticeError,
                               shifted_cube_box, shifted_square_box)


def test_counts_per_label():
    for name, per_label in (("hex-9", 9), ("gosper-7", 7), ("rhombus-4", 4),
                            ("shifted-square", 25)):
        ll = recursify(get_spec(name), 1)
        assert set(ll.label_counts().values()) == {per_label}, name


def test_shifted_cube_125():
    ll = recursify(get_spec("shifted-cube"), 1)
    assert set(ll.label_counts().values()) == {125}


def test_count_power_law():
    for name, f in (("hex-9", 9), ("gosper-7", 7), ("rhombus-4", 4)):
        ll = recursify(get_spec(name), 2)
        assert set(ll.label_counts().values()) == {f * f}, name


def test_labels_congruent():
    # all label cell sets are translates of one another on the lattice
    for name, m in (("hex-9", 3), ("gosper-7", None), ("rhombus-4", 2)):
        spec = get_spec(name)
        ll = recursify(spec, 2)
        shapes = set()
        for lab in ll.core_labels:
            cells = ll.cells_of(lab)
            q0 = min(c[0] for c in cells)
            r0 = min(c[1] for c in cells)
            shapes.add(frozenset((c[0] - q0, c[1] - r0) for c in cells))
        assert len(shapes) == 1, name


def test_degrees_match_claims():
    for name, levels, want in (("hex-9", (1, 2, 3, 4), 3),
                               ("gosper-7", (1, 2, 3, 4), 3)):
        spec = get_spec(name)
        for lvl in levels:
            assert lattice_degree(recursify(spec, lvl)) == want, (name, lvl)


def test_rhombus_degenerates_to_four():
    spec = get_spec("rhombus-4")
    degrees = [lattice_degree(recursify(spec, lvl)) for lvl in (1, 2, 3)]
    assert max(degrees) == 4
    assert any(d == 4 for d in degrees[:3])


def test_hex_vertex_degree_is_three():
    # the raw per-vertex audit is 3 on hexagonal lattices
    ll = recursify(get_spec("hex-9"), 2)
    assert hex_vertex_degree(ll) == 3


def test_disconnection_diagnostic():
    spec = get_spec("disconnected-4")
    found = False
    for lvl in (1, 2, 3):
        ll = recursify(spec, lvl)
        if any(not connected(ll.cells_of(lab), "hex") for lab in ll.core_labels):
            found = True
            break
    assert found


def test_connected_labels_for_good_specs():
    for name in ("hex-9", "gosper-7"):
        ll = recursify(get_spec(name), 2)
        assert all(connected(ll.cells_of(lab), "hex") for lab in ll.core_labels)


def test_gosper_coset_partition():
    # the seven offsets decompose every cell uniquely
    spec = get_spec("gosper-7")
    seen = {}
    for q in range(-8, 9):
        for r in range(-8, 9):
            seen.setdefault(owner(spec, (q, r)), []).append((q, r))
    assert all(len(v) <= 7 for v in seen.values())
    full = [k for k, v in seen.items() if len(v) == 7]
    assert full


def test_shifted_cube_owner_is_largest_overlap():
    # cross-check the closed-form owner against explicit volume comparison
    spec = get_spec("shifted-cube")
    for cell in ((0, 0, 0), (3, 1, 2), (7, -2, 4), (-3, 5, -1), (4, 4, 9)):
        fine = shifted_cube_box(cell, Fraction(1, 5))
        best, best_vol = None, Fraction(-1)
        ci, cj, ck = owner(spec, cell)
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                for dk in (-1, 0, 1):
                    cand = (ci + di, cj + dj, ck + dk)
                    coarse = shifted_cube_box(cand, Fraction(1))
                    vol = Fraction(1)
                    for ax in range(3):
                        lo = max(fine[ax], coarse[ax])
                        hi = min(fine[3 + ax], coarse[3 + ax])
                        if hi <= lo:
                            vol = Fraction(0)
                            break
                        vol *= hi - lo
                    if vol > best_vol:
                        best, best_vol = cand, vol
        assert best == (ci, cj, ck), cell


def test_coarse_and_recursified_degrees_shifted():
    sq = get_spec("shifted-square")
    assert coarse_degree(sq) == 3
    assert lattice_degree(recursify(sq, 1)) == 3
    sc = get_spec("shifted-cube")
    assert coarse_degree(sc) == 4
    assert lattice_degree(recursify(sc, 1)) == 4


def test_displacement_gosper():
    db = displacement_bound(get_spec("gosper-7"))
    import math
    assert db.d1 == pytest.approx(math.sqrt(3) / 14)
    assert db.factor == pytest.approx(1 / math.sqrt(7))
    assert db.d_inf < 0.199 - 1e-6
    assert db.safe_radius > 0.301 + 1e-6


def test_displacement_shifted_cube_exact():
    db = displacement_bound(get_spec("shifted-cube"))
    # d_inf = sqrt(2)/12 exactly; safe radius exceeds 1/21 exactly
    assert exact_compare(db, "d_inf", Fraction(0)) > 0
    import math
    assert db.d_inf == pytest.approx(math.sqrt(2) / 12)
    assert exact_compare(db, "safe_radius", Fraction(1, 21)) > 0


def test_displacement_requires_contraction():
    from arrwwid.recursify import DisplacementBound
    with pytest.raises(LatticeError):
        DisplacementBound("degenerate", 0.1, 1.0, 0.5)
    with pytest.raises(LatticeError):
        displacement_bound(get_spec("hex-9"))
