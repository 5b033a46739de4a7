"""Expansion of rule sets into tile sets, with exact vertex analysis."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exact import ZERO
from .shapes import Box
from .transforms import Similarity
from .rules import RuleError

DEFAULT_TILE_BUDGET = 10 ** 7


class BudgetError(RuntimeError):
    pass


class Tile:
    __slots__ = ("address", "rule", "transform", "geometry", "reversed")

    def __init__(self, address, rule, transform, geometry, reversed_=False):
        self.address = address
        self.rule = rule
        self.transform = transform
        self.geometry = geometry
        self.reversed = reversed_

    def __repr__(self):
        return "Tile(%r, rule=%r)" % (self.address, self.rule)


class TileSet:
    """All tiles of one expansion depth, ordered lexicographically by address."""

    def __init__(self, ruleset, depth, tiles):
        self.ruleset = ruleset
        self.depth = depth
        self.tiles = tiles
        self._vertex_index = None

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    @property
    def vertex_index(self):
        """Map corner point -> sorted list of indices of incident tiles.

        Incidence means the point lies on the tile's closed boundary, so a
        T-junction stem counts even though the point is not one of its
        corners.  Candidate tiles per point come from a float bucket grid;
        membership is decided exactly.
        """
        if self._vertex_index is None:
            index = {}
            for i, t in enumerate(self.tiles):
                for p in t.geometry.corners():
                    index.setdefault(p, set()).add(i)
            buckets, h = _bucket_tiles(self.tiles)
            for p, incident in index.items():
                fp = tuple(float(v) for v in p)
                key = tuple(int(v // h) for v in fp)
                seen = set()
                for nb in _bucket_neighborhood(key, len(fp)):
                    for i in buckets.get(nb, ()):
                        if i in incident or i in seen:
                            continue
                        seen.add(i)
                        g = self.tiles[i].geometry
                        bb = g if isinstance(g, Box) else g.bounding_box()
                        if bb.contains_point(p) and g.on_boundary(p):
                            incident.add(i)
            self._vertex_index = {p: sorted(s) for p, s in index.items()}
        return self._vertex_index

    def total_measure(self):
        total = ZERO
        for t in self.tiles:
            total = total + t.geometry.measure()
        return total


def _bucket_tiles(tiles):
    """Hash tiles into a float grid keyed by bucket tuple; returns (dict, h)."""
    import itertools
    h = None
    for t in tiles[:64]:
        g = t.geometry
        bb = g if isinstance(g, Box) else g.bounding_box()
        ext = min(float(v) for v in bb.extent())
        h = ext if h is None else min(h, ext)
    h = max(h or 1.0, 1e-9)
    buckets = {}
    for i, t in enumerate(tiles):
        g = t.geometry
        bb = g if isinstance(g, Box) else g.bounding_box()
        los = [int(float(v) // h) - 1 for v in bb.lo]
        his = [int(float(v) // h) + 1 for v in bb.hi]
        for key in itertools.product(*(range(l, u + 1) for l, u in zip(los, his))):
            buckets.setdefault(key, []).append(i)
    return buckets, h


def _bucket_neighborhood(key, dim):
    import itertools
    for off in itertools.product((-1, 0, 1), repeat=dim):
        yield tuple(k + o for k, o in zip(key, off))


def count_tiles(rs, depth):
    counts = {name: 1 for name in rs.rules}
    for _ in range(depth):
        counts = {name: sum(counts[ch.rule] for ch in rule.children)
                  for name, rule in rs.rules.items()}
    return counts[rs.unit]


def expand(rs, depth, budget=DEFAULT_TILE_BUDGET):
    """Expand the unit rule `depth` levels; tiles come back in address order."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    n = count_tiles(rs, depth)
    if n > budget:
        raise BudgetError("expansion would produce %d tiles (budget %d)" % (n, budget))
    tiles = []
    ident = Similarity.identity(rs.dim)

    def rec(rule_name, transform, address, rev, level):
        if level == depth:
            geom = rs.rules[rule_name].base.transform(transform)
            tiles.append(Tile(address, rule_name, transform, geom, rev))
            return
        for i, ch in enumerate(rs.rules[rule_name].children):
            rec(ch.rule, transform.compose(ch.placement), address + (i,),
                rev ^ ch.reversed, level + 1)

    rec(rs.unit, ident, (), False, 0)
    return TileSet(rs, depth, tiles)


def tile_at(rs, address):
    """Transform, rule name and accumulated reversal for one address."""
    transform = Similarity.identity(rs.dim)
    rule_name = rs.unit
    rev = False
    for i in address:
        ch = rs.rules[rule_name].children[i]
        transform = transform.compose(ch.placement)
        rev ^= ch.reversed
        rule_name = ch.rule
    return rule_name, transform, rev


class DegreeMap:
    def __init__(self, interior, boundary):
        self.interior = interior      # point -> degree
        self.boundary = boundary
        self.max_interior = max(interior.values(), default=0)
        self.max_boundary = max(boundary.values(), default=0)

    @property
    def max_degree(self):
        return max(self.max_interior, self.max_boundary)


def vertex_degrees(ts):
    """Degree (number of interior-disjoint tiles meeting) at every vertex."""
    unit_base = ts.ruleset.unit_rule.base
    interior, boundary = {}, {}
    for p, incident in ts.vertex_index.items():
        deg = len(incident)
        if unit_base.on_boundary(p):
            boundary[p] = deg
        else:
            interior[p] = deg
    return DegreeMap(interior, boundary)


# -- integer-lattice rasterization fast path ----------------------------------

class LatticeRaster:
    """Tile-id grid for a rectilinear expansion whose cuts live on a lattice.

    `ids` is a numpy array indexed [ix, iy(, iz)] over unit cells of pitch
    `pitch`; entry = position of the owning tile in address order.
    """

    def __init__(self, ids, pitch, origin, depth):
        self.ids = ids
        self.pitch = pitch
        self.origin = origin
        self.depth = depth

    def interior_vertex_ids(self):
        """For 2D: (V, 4) array of the tile ids around each interior vertex."""
        ids = self.ids
        if ids.ndim == 2:
            a = ids[:-1, :-1]
            b = ids[1:, :-1]
            c = ids[:-1, 1:]
            d = ids[1:, 1:]
            return np.stack([a, b, c, d], axis=-1).reshape(-1, 4)
        a = []
        for dx in (0, 1):
            for dy in (0, 1):
                for dz in (0, 1):
                    a.append(ids[dx:ids.shape[0] - 1 + dx,
                                 dy:ids.shape[1] - 1 + dy,
                                 dz:ids.shape[2] - 1 + dz])
        return np.stack(a, axis=-1).reshape(-1, 8)


def lattice_pitch(rs, depth):
    """Common lattice pitch of all tile corners at `depth`, or None."""
    if not rs.is_rectilinear():
        return None
    ts = expand(rs, min(depth, 1))
    denom = 1
    for t in ts.tiles:
        for v in list(t.geometry.lo) + list(t.geometry.hi):
            fr = v.as_fraction()
            denom = denom * fr.denominator // _gcd(denom, fr.denominator)
    scale = rs.child_scale().as_fraction() if rs.is_uniform() else None
    if scale is None:
        return None
    pitch = Fraction(1, denom)
    for _ in range(depth - 1):
        pitch *= scale
    return pitch


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def rasterize(rs, depth, budget=DEFAULT_TILE_BUDGET):
    """Rasterize a uniform rectilinear expansion onto its cut lattice."""
    pitch = lattice_pitch(rs, max(depth, 1))
    if pitch is None:
        raise RuleError("rule set has no common cut lattice")
    base = rs.unit_rule.base
    if not isinstance(base, Box):
        raise RuleError("rasterization needs a box unit tile")
    dim = rs.dim
    shape = []
    for l, h in zip(base.lo, base.hi):
        n = (h.as_fraction() - l.as_fraction()) / pitch
        if n.denominator != 1:
            raise RuleError("unit extent is not a lattice multiple")
        shape.append(int(n))
    import math
    if math.prod(shape) > budget * 64:
        raise BudgetError("raster of %s cells exceeds budget" % shape)
    ids = np.full(shape, -1, dtype=np.int64)
    counter = [0]

    def rec(rule_name, transform, level):
        if level == depth:
            geom = rs.rules[rule_name].base.transform(transform)
            sl = []
            for ax in range(dim):
                lo = (geom.lo[ax].as_fraction() - base.lo[ax].as_fraction()) / pitch
                hi = (geom.hi[ax].as_fraction() - base.lo[ax].as_fraction()) / pitch
                sl.append(slice(int(lo), int(hi)))
            ids[tuple(sl)] = counter[0]
            counter[0] += 1
            return
        for ch in rs.rules[rule_name].children:
            rec(ch.rule, transform.compose(ch.placement), level + 1)

    rec(rs.unit, Similarity.identity(dim), 0)
    if (ids < 0).any():
        raise RuleError("rasterization left uncovered cells (invalid rule set?)")
    return LatticeRaster(ids, pitch, base.lo, depth)


def max_interior_degree_fast(rs, depth, budget=DEFAULT_TILE_BUDGET):
    """Max interior vertex degree via rasterization (2D/3D rectilinear).

    In 3D this also inspects lattice edge midpoints, where boxes can meet
    without sharing a lattice vertex.
    """
    raster = rasterize(rs, depth, budget)
    ids = raster.ids
    best = 0
    if ids.ndim == 2:
        quad = raster.interior_vertex_ids()
        best = _max_distinct(quad)
    else:
        oct_ = raster.interior_vertex_ids()
        best = _max_distinct(oct_)
        # interior points of lattice edges: 4 cells around each edge direction
        for axis in range(3):
            stacks = []
            for da in (0, 1):
                for db in (0, 1):
                    idx = [slice(None)] * 3
                    axes = [a for a in range(3) if a != axis]
                    idx[axes[0]] = slice(da, ids.shape[axes[0]] - 1 + da)
                    idx[axes[1]] = slice(db, ids.shape[axes[1]] - 1 + db)
                    stacks.append(ids[tuple(idx)])
            quad = np.stack(stacks, axis=-1).reshape(-1, 4)
            best = max(best, _max_distinct(quad))
    return best


def _max_distinct(rows):
    rows = np.sort(rows, axis=1)
    distinct = (np.diff(rows, axis=1) != 0).sum(axis=1) + 1
    return int(distinct.max()) if len(rows) else 0
