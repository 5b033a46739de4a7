"""Recursified tilings: hexagon substitutions, shifted squares and cubes.

Run from the repository root:  python demos/03_recursified_lattices.py
"""

import os

from arrwwid.recursify import (SPECS, get_spec, recursify, lattice_degree,
                               coarse_degree, connected, displacement_bound)
from arrwwid.render import render_svg

HERE = os.path.dirname(os.path.abspath(__file__))


def main():
    for name in ("hex-9", "gosper-7", "rhombus-4", "disconnected-4"):
        spec = get_spec(name)
        print("== %s ==" % name)
        for lvl in (1, 2, 3):
            ll = recursify(spec, lvl)
            per = sorted(set(ll.label_counts().values()))
            disc = sum(1 for lab in ll.core_labels
                       if not connected(ll.cells_of(lab), "hex"))
            print("  level %d: %d cells, %s per label, degree %d, "
                  "disconnected labels %d"
                  % (lvl, len(ll.cells), per, lattice_degree(ll), disc))
        out = os.path.join(HERE, "%s_level2.svg" % name.replace("-", "_"))
        with open(out, "w") as f:
            f.write(render_svg(recursify(spec, 2)))
        print("  wrote", out)
        print()

    for name in ("shifted-square", "shifted-cube"):
        spec = get_spec(name)
        print("== %s ==" % name)
        print("  coarse tiling degree:", coarse_degree(spec))
        ll = recursify(spec, 1)
        print("  level 1: %s cells per label, degree %d"
              % (sorted(set(ll.label_counts().values())), lattice_degree(ll)))
        try:
            db = displacement_bound(spec)
            print("  displacement: d1=%.6f, factor=%.3f, limit=%.6f, "
                  "safe radius=%.6f (per coarse cell width)"
                  % (db.d1, db.factor, db.d_inf, db.safe_radius))
        except Exception:
            pass
        print()

    g = displacement_bound(get_spec("gosper-7"))
    print("gosper displacement: limit %.6f < 0.199 and safe radius %.6f > 0.301"
          % (g.d_inf, g.safe_radius))


if __name__ == "__main__":
    main()
