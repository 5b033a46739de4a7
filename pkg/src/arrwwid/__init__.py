"""Recursive tilings, scanning orders, and their query fragmentation.

Exact-arithmetic analysis of recursive substitution tilings and the scanning
orders (space-filling curves) built on them: expansion, vertex degrees and
degree certification, query covers and worst-case cover estimation,
recursified lattice constructions, exhaustive rectangular-tiling search, and
a seek/scan cost simulator.
"""

from .exact import Coord, coord, parse_coord
from .transforms import Ortho, Similarity
from .shapes import Box, Polygon, solid_angles
from .rules import (Rule, RuleSet, Child, RuleError, parse_ruleset,
                    serialize_ruleset, ruleset_to_json, validate_ruleset)
from .expand import expand, TileSet, vertex_degrees, BudgetError
from .certify import certify_max_degree, DegreeCertificate
from .curves import (Interval, tile_interval, scan_leaves, entry_exit,
                     index_to_point, classify_connections, vertex_audit, Gates)
from .cover import (QueryRange, CoverReport, canonical_level, cover_tiles,
                    cover_fragments, estimate_arrwwid, SamplePlan, ArrwwidEstimate)
from .recursify import (LatticeSpec, LabelledLattice, SPECS, get_spec, recursify,
                        lattice_degree, coarse_degree, connected,
                        displacement_bound, exact_compare)
from .rectsearch import (eligible_ratios, enumerate_packings, Packing,
                         packing_ruleset, search_min_rect_tiling)
from . import catalog
from .locality import CostModel, simulate, uniform_points, ball_queries, comparison_table
from .render import render_svg, RenderStyle

__version__ = "1.0.0"
