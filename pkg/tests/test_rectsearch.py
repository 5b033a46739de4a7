from fractions import Fraction

import pytest

from arrwwid.rectsearch import (eligible_ratios, enumerate_packings, Packing,
                                packing_ruleset, assignment_solutions,
                                _FastCertifier, search_min_rect_tiling)
from arrwwid.rules import validate_ruleset
from arrwwid.certify import certify_max_degree


def _oracle_ratios(t):
    """Brute-force eligible ratios straight from the filling equations."""
    from math import isqrt
    s = isqrt(t)
    if s * s != t:
        return []
    out = set()
    for n_wh in range(1, s):
        for n_hh in range(1, s):
            alpha = Fraction(s - n_hh, n_wh)
            if alpha <= 1 or alpha.numerator > s or alpha.denominator >= s:
                continue
            p, q = alpha.numerator, alpha.denominator

            def flexible(rhs):
                sols = [(x, (rhs - p * x) // q) for x in range(rhs // p + 1)
                        if (rhs - p * x) % q == 0]
                return any(x >= 1 for x, _ in sols) and any(y >= 1 for _, y in sols)

            if flexible(p * s) and flexible(q * s):
                out.add(alpha)
    return sorted(out)


def test_eligible_ratios_examples():
    assert eligible_ratios(4) == []
    assert eligible_ratios(9) == [Fraction(2)]
    assert Fraction(3, 2) in eligible_ratios(16)
    assert eligible_ratios(5) == []      # not a perfect square


def test_eligible_ratios_against_oracle():
    for t in (4, 9, 16, 25, 36):
        assert eligible_ratios(t) == _oracle_ratios(t), t


def test_packing_counts_against_oracle():
    # 41 domino tilings of the 6x3 grid; 33 brick tilings of 12x8 by 3x2
    pk9 = enumerate_packings(9, Fraction(2))
    assert sum(len(set(p.symmetry_images())) for p in pk9) == 41
    pk16 = enumerate_packings(16, Fraction(3, 2))
    assert sum(len(set(p.symmetry_images())) for p in pk16) == 33


def test_packings_canonical_and_exact():
    pks = enumerate_packings(16, Fraction(3, 2))
    keys = [p.canonical_key() for p in pks]
    assert len(keys) == len(set(keys))
    for p in pks[:3]:
        rs = packing_ruleset(p, ["id" if w == 3 else "r90" for _, _, w, _ in p.pieces])
        assert validate_ruleset(rs).valid


def test_regular_grid_flag():
    pks = enumerate_packings(9, Fraction(2))
    assert any(p.is_regular_grid for p in pks)


def test_cut_lattice_claim():
    # all cut coordinates are integers on the 1/(q*sqrt(t)) lattice by
    # construction; re-verify on emitted packings
    for pk in enumerate_packings(16, Fraction(3, 2)):
        W, H = pk.grid
        for x, y, w, h in pk.pieces:
            assert 0 <= x and x + w <= W and 0 <= y and y + h <= H
            assert isinstance(x, int) and isinstance(y, int)


def test_fast_certifier_agrees_with_exact():
    pk = [p for p in enumerate_packings(16, Fraction(3, 2))
          if p.max_vertex_degree() <= 3][0]
    sols = assignment_solutions(pk)
    fast = _FastCertifier(pk)
    import random
    rng = random.Random(13)
    sample = sols[:24] + rng.sample(sols, 24)
    known_good = ('id', 'r90', 'r270', 'id', 'id', 'id', 'r180', 'r270', 'r90',
                  'id', 'r180', 'r180', 'r180', 'r180', 'r90', 'r270')
    sample.append(known_good)
    for orthos in sample:
        exact = certify_max_degree(packing_ruleset(pk, orthos), 3).certified
        assert fast.certified(orthos) == exact, orthos


def test_search_small_sizes_refute_everything():
    report = search_min_rect_tiling(9)
    assert report.accepted == []
    assert report.total_inconclusive == 0
    by_t = {(r["t"], r["alpha"]): r for r in report.per_ratio}
    assert by_t[(9, "2")]["packings"] == 14
    assert by_t[(9, "2")]["certified"] == 0
