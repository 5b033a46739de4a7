import xml.etree.ElementTree as ET

from arrwwid.expand import expand
from arrwwid.render import render_svg, RenderStyle
from arrwwid.recursify import get_spec, recursify


def test_daun_level_two_has_256_rectangles(daun):
    svg = render_svg(expand(daun, 2))
    root = ET.fromstring(svg)
    polys = [el for el in root if el.tag.endswith("polygon")]
    assert len(polys) == 256


def test_sketch_polyline_through_625_centers(dekking):
    svg = render_svg(dekking, RenderStyle(sketch=True), depth=2)
    root = ET.fromstring(svg)
    lines = [el for el in root if el.tag.endswith("polyline")]
    assert len(lines) == 1
    assert len(lines[0].attrib["points"].split()) == 625


def test_deterministic_bytes(kochel):
    a = render_svg(kochel, depth=2)
    b = render_svg(kochel, depth=2)
    assert a == b


def test_lattice_render_well_formed():
    ll = recursify(get_spec("hex-9"), 1)
    svg = render_svg(ll)
    root = ET.fromstring(svg)
    assert len([el for el in root if el.tag.endswith("polygon")]) == len(ll.cells)


def test_shifted_square_render():
    ll = recursify(get_spec("shifted-square"), 1)
    root = ET.fromstring(render_svg(ll))
    assert len(list(root)) == len(ll.cells)
