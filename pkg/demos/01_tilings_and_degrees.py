"""Tour of the built-in tilings: expansion, vertex degrees, certification.

Run from the repository root:  python demos/01_tilings_and_degrees.py
Writes SVG renderings next to this script.
"""

import os

from arrwwid import catalog
from arrwwid.certify import certify_max_degree
from arrwwid.expand import expand, max_interior_degree_fast, vertex_degrees
from arrwwid.render import render_svg

HERE = os.path.dirname(os.path.abspath(__file__))


def main():
    print("== regular square tiling (quadtree) ==")
    quadtree = catalog.builtin("quadtree").ruleset
    ts = expand(quadtree, 3)
    print("depth 3:", len(ts), "tiles, total area", float(ts.total_measure()))
    print("max interior vertex degree:", vertex_degrees(ts).max_interior)
    cert = certify_max_degree(quadtree, 3)
    print("degree <= 3?", cert.status, "- counterexample vertex",
          tuple(map(float, cert.vertex)), "has degree", cert.degree)
    print()

    print("== the 16-rectangle tiling with vertex degree three ==")
    daun = catalog.builtin("daun").ruleset
    for depth in (1, 2, 3, 4):
        print("depth %d: max interior degree %d"
              % (depth, max_interior_degree_fast(daun, depth)))
    cert = certify_max_degree(daun, 3)
    print("certificate:", cert.status, "after", cert.steps, "closure steps,",
          len(cert.configurations), "edge configurations")
    out = os.path.join(HERE, "daun_depth2.svg")
    with open(out, "w") as f:
        f.write(render_svg(expand(daun, 2)))
    print("wrote", out)
    print()

    print("== three dimensions ==")
    lifted = catalog.builtin("lifted-daun").ruleset
    print("lifted 16-rectangle tiling: 64 boxes per rule;",
          "max degree at depths 1..2:",
          [max_interior_degree_fast(lifted, k) for k in (1, 2)])
    cube = catalog.builtin("cube").ruleset
    print("regular cube tiling: max degree depth 2:",
          max_interior_degree_fast(cube, 2))


if __name__ == "__main__":
    main()
