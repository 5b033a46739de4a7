"""Scanning orders: gates, connections, worst-case query fragmentation.

Run from the repository root:  python demos/02_curves_and_fragmentation.py
"""

import os
from fractions import Fraction

from arrwwid import catalog
from arrwwid.cover import QueryRange, SamplePlan, cover_fragments, estimate_arrwwid
from arrwwid.curves import classify_connections, entry_exit
from arrwwid.render import RenderStyle, render_svg

HERE = os.path.dirname(os.path.abspath(__file__))
CURVES = ("hilbert", "zorder", "peano", "coil", "ar2w2", "kochel", "dekking")


def main():
    print("entry/exit gates and connection census at depth 3:")
    for name in CURVES:
        entry = catalog.builtin(name)
        rs = entry.ruleset
        e, x = entry_exit(rs)
        st = classify_connections(rs, 3)
        print("  %-8s gates %s -> %s  edges h/v %d/%d diagonal %d jumps %d"
              % (name, tuple(map(float, e)), tuple(map(float, x)),
                 st.horizontal, st.vertical, st.diagonal, st.jump))
    print()

    print("worst-case fragments per curve (vertex plans + seeded random balls):")
    plan = SamplePlan(depths=(2, 3), n_random=300, seed=7)
    for name in CURVES:
        entry = catalog.builtin(name)
        est = estimate_arrwwid(entry.ruleset, plan, kappa=entry.window_kappa)
        w = est.fragments_witness
        print("  %-8s max_fragments=%d  witness ball at %s radius %.4f"
              % (name, est.max_fragments,
                 tuple(round(float(c), 4) for c in w.center), float(w.radius)))
    print()

    dekking = catalog.builtin("dekking").ruleset
    q = QueryRange("ball", (Fraction(2, 5), Fraction(2, 5)), Fraction(1, 30))
    rep = cover_fragments(dekking, q)
    print("one 25-square-curve cover: level %d, %d tiles in %d fragment(s), "
          "cover ratio %.2f" % (rep.level, rep.tile_count, rep.fragment_count,
                                rep.cover_ratio))
    merged = cover_fragments(dekking, q, merge_budget=36 / 3.141592653589793)
    print("with gap merging up to 36/pi times the query measure: %d fragment(s)"
          % merged.fragment_count)

    out = os.path.join(HERE, "dekking_sketch.svg")
    with open(out, "w") as f:
        f.write(render_svg(dekking, RenderStyle(sketch=True), depth=2))
    print("wrote", out)


if __name__ == "__main__":
    main()
