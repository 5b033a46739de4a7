"""Query covers, canonical levels, and worst-case cover estimation.

A query (ball or axis box inside the unit tile) is covered by the tiles of
the canonical level that meet it; for scanning orders the tiles group into
maximal runs of order-consecutive tiles (fragments).  The estimator sweeps
balls centered on every interior vertex of chosen expansion depths, plus
seeded pseudo-random balls, and reports the worst counts with witnesses.
These are exact lower bounds on the true worst case.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .exact import ZERO, ONE, coord
from .shapes import Box
from .transforms import Similarity
from .rules import RuleError
from .expand import BudgetError, DEFAULT_TILE_BUDGET, count_tiles
from .curves import tile_interval, _relative_areas


class QueryRange:
    """Ball or axis-aligned box query, exact coordinates."""

    def __init__(self, kind, center, radius=None, half_extents=None):
        if kind not in ("ball", "box"):
            raise ValueError("kind must be ball or box")
        self.kind = kind
        self.center = tuple(coord(c) for c in center)
        self.radius = coord(radius) if radius is not None else None
        self.half_extents = tuple(coord(h) for h in half_extents) if half_extents else None
        if kind == "ball" and (self.radius is None or self.radius.sign() <= 0):
            raise ValueError("ball query needs a positive radius")
        if kind == "box" and not self.half_extents:
            raise ValueError("box query needs half extents")

    @property
    def dim(self):
        return len(self.center)

    def measure(self):
        if self.kind == "box":
            m = 1.0
            for h in self.half_extents:
                m *= 2 * float(h)
            return m
        r = float(self.radius)
        if self.dim == 2:
            return math.pi * r * r
        return 4.0 / 3.0 * math.pi * r ** 3

    def bounding_halfwidths(self):
        if self.kind == "ball":
            return (self.radius,) * self.dim
        return self.half_extents

    def inside_unit(self, base):
        for c, h, lo, hi in zip(self.center, self.bounding_halfwidths(), base.lo, base.hi):
            if (c - h - lo).sign() < 0 or (hi - c - h).sign() < 0:
                return False
        return True

    def intersects_box(self, box):
        """Exact closed-closed intersection test."""
        if self.kind == "box":
            for c, h, lo, hi in zip(self.center, self.half_extents, box.lo, box.hi):
                if (lo - c - h).sign() > 0 or (c - h - hi).sign() > 0:
                    return False
            return True
        d2 = ZERO
        for c, lo, hi in zip(self.center, box.lo, box.hi):
            if (c - lo).sign() < 0:
                gap = lo - c
            elif (c - hi).sign() > 0:
                gap = c - hi
            else:
                continue
            d2 = d2 + gap * gap
        return (d2 - self.radius * self.radius).sign() <= 0

    def contains_point(self, p):
        if self.kind == "box":
            return all((abs(c - v) - h).sign() <= 0
                       for c, h, v in zip(self.center, self.half_extents, p))
        d2 = ZERO
        for c, v in zip(self.center, p):
            d = c - v
            d2 = d2 + d * d
        return (d2 - self.radius * self.radius).sign() <= 0

    def __repr__(self):
        if self.kind == "ball":
            return "QueryRange(ball, c=%s, r=%s)" % (
                tuple(map(float, self.center)), float(self.radius))
        return "QueryRange(box, c=%s, h=%s)" % (
            tuple(map(float, self.center)), tuple(map(float, self.half_extents)))


class CoverReport:
    def __init__(self, query, level, tiles, fragments, total_area, measure):
        self.query = query
        self.level = level
        self.tiles = tiles                    # addresses, in scanning order
        self.fragments = fragments            # list of address runs
        self.total_area = total_area
        self._measure = measure

    @property
    def cover_ratio(self):
        if not self._measure:
            return float("inf")
        return float(self.total_area) / self._measure

    @property
    def tile_count(self):
        return len(self.tiles)

    @property
    def fragment_count(self):
        return len(self.fragments)

    def __repr__(self):
        return "CoverReport(level=%d, tiles=%d, fragments=%d, ratio=%.3f)" % (
            self.level, self.tile_count, self.fragment_count, self.cover_ratio)


def subdivision_ratio(rs):
    """Linear shrink factor per level (reciprocal of the common child scale)."""
    return (ONE / rs.child_scale())


def reference_side(rs):
    """Smallest extent of the unit base shape."""
    base = rs.unit_rule.base
    if isinstance(base, Box):
        return min(base.extent())
    bb = base.bounding_box()
    return min(bb.extent())


def canonical_level(rs, r, kappa=Fraction(2), max_level=64):
    """Unique level where the tile's reference side is in (kappa*r, kappa*lam*r].

    kappa defaults to the window used for regular square tilings; catalog
    entries carry their own constants.
    """
    r = coord(r)
    if r.sign() <= 0:
        raise ValueError("radius must be positive")
    lam = subdivision_ratio(rs)
    kap = coord(kappa)
    side = reference_side(rs)
    hi = kap * lam * r
    lo = kap * r
    if (side - hi).sign() > 0:
        k = 0
        while (side - hi).sign() > 0:
            side = side * (ONE / lam)
            k += 1
            if k > max_level:
                raise RuleError("no canonical level below %d" % max_level)
        return k
    if (side - lo).sign() <= 0:
        raise RuleError("radius too large: level-0 window violated")
    return 0


def cover_tiles(rs, q, level=None, kappa=Fraction(2), budget=DEFAULT_TILE_BUDGET):
    """Tiles at the canonical level whose closure meets the query."""
    if not q.inside_unit(rs.unit_rule.base):
        raise RuleError("query is not contained in the unit tile")
    if level is None:
        if q.kind == "ball":
            level = canonical_level(rs, q.radius, kappa)
        else:
            level = canonical_level(rs, max(q.half_extents), kappa)
    tiles = []
    visited = [0]

    def rec(rule_name, transform, address, depth):
        visited[0] += 1
        if visited[0] > budget:
            raise BudgetError("cover descent exceeded budget")
        geom = rs.rules[rule_name].base.transform(transform)
        bb = geom if isinstance(geom, Box) else geom.bounding_box()
        if not q.intersects_box(bb):
            return
        if depth == level:
            tiles.append((address, geom))
            return
        for i, ch in enumerate(rs.rules[rule_name].children):
            rec(ch.rule, transform.compose(ch.placement), address + (i,), depth + 1)

    rec(rs.unit, Similarity.identity(rs.dim), (), 0)
    total = ZERO
    for _, g in tiles:
        total = total + g.measure()
    order = sorted(range(len(tiles)), key=lambda i: tile_interval(rs, tiles[i][0]).lo)
    addresses = [tiles[i][0] for i in order]
    return CoverReport(q, level, addresses, [addresses] if addresses else [],
                       total, q.measure())


def cover_fragments(rs, q, level=None, kappa=Fraction(2), merge_budget=None,
                    budget=DEFAULT_TILE_BUDGET):
    """Cover grouped into maximal runs of order-consecutive tiles.

    merge_budget, when set, greedily merges adjacent runs (including the
    intervening tiles) while total area stays at most merge_budget times the
    query measure.
    """
    report = cover_tiles(rs, q, level=level, kappa=kappa, budget=budget)
    addresses = report.tiles
    intervals = [tile_interval(rs, a) for a in addresses]
    runs = []
    for addr, iv in zip(addresses, intervals):
        if runs and runs[-1][-1][1].hi == iv.lo:
            runs[-1].append((addr, iv))
        else:
            runs.append([(addr, iv)])
    if merge_budget is not None and len(runs) > 1:
        runs = _merge_runs(rs, runs, report, merge_budget)
    report.fragments = [[a for a, _ in run] for run in runs]
    return report


def _addresses_between(rs, lo, hi, level):
    """Level addresses whose parameter interval lies inside [lo, hi]."""
    out = []

    def rec(rule_name, address, i_lo, length, rev, depth):
        if i_lo >= hi or i_lo + length <= lo:
            return
        if depth == level:
            if lo <= i_lo and i_lo + length <= hi:
                out.append((i_lo, address))
            return
        rels = _relative_areas(rs, rule_name)
        rule = rs.rules[rule_name]
        prefix = Fraction(0)
        for i, ch in enumerate(rule.children):
            if rev:
                c_lo = i_lo + length * (1 - prefix - rels[i])
            else:
                c_lo = i_lo + length * prefix
            rec(ch.rule, address + (i,), c_lo, length * rels[i],
                rev ^ ch.reversed, depth + 1)
            prefix += rels[i]

    rec(rs.unit, (), Fraction(0), Fraction(1), False, 0)
    return [a for _, a in sorted(out)]


def _merge_runs(rs, runs, report, merge_budget):
    """Greedy smallest-gap-first merging while total area stays at most
    merge_budget times the query measure; gap tiles join the merged run."""
    measure = report.query.measure()
    unit_area = rs.unit_rule.base.measure()
    total = report.total_area
    level = report.level
    while len(runs) > 1:
        best = None
        for i in range(len(runs) - 1):
            gap = runs[i + 1][0][1].lo - runs[i][-1][1].hi
            if best is None or gap < best[0]:
                best = (gap, i)
        gap_frac, i = best
        added = coord(gap_frac) * unit_area
        if float(total + added) > merge_budget * measure:
            break
        total = total + added
        gap_addrs = _addresses_between(rs, runs[i][-1][1].hi,
                                       runs[i + 1][0][1].lo, level)
        fillers = [(a, tile_interval(rs, a)) for a in gap_addrs]
        runs[i:i + 2] = [runs[i] + fillers + runs[i + 1]]
    report.total_area = total
    return runs


# -- estimation ---------------------------------------------------------------

class SamplePlan:
    """Deterministic sampling plan: vertex-centered balls per depth plus
    seeded random balls, radii spanning each depth's canonical window."""

    def __init__(self, depths=(2, 3), n_random=200, seed=0, radii_per_depth=2,
                 query_kind="ball"):
        self.depths = tuple(depths)
        self.n_random = n_random
        self.seed = seed
        self.radii_per_depth = radii_per_depth
        self.query_kind = query_kind

    def describe(self):
        return {"depths": list(self.depths), "n_random": self.n_random,
                "seed": self.seed, "radii_per_depth": self.radii_per_depth,
                "query_kind": self.query_kind}


class Witness:
    def __init__(self, center, radius, level, count):
        self.center = center
        self.radius = radius
        self.level = level
        self.count = count

    def as_dict(self):
        return {"center": [float(c) for c in self.center],
                "radius": float(self.radius), "level": self.level,
                "count": self.count}

    def __repr__(self):
        return "Witness(c=%s, r=%s, level=%d, count=%d)" % (
            tuple(map(float, self.center)), float(self.radius), self.level, self.count)


class ArrwwidEstimate:
    """Empirical lower bound on the worst-case cover counts."""

    def __init__(self, max_tiles, tiles_witness, max_fragments, fragments_witness, plan):
        self.max_tiles = max_tiles
        self.tiles_witness = tiles_witness
        self.max_fragments = max_fragments
        self.fragments_witness = fragments_witness
        self.plan = plan

    def __repr__(self):
        return "ArrwwidEstimate(tiles=%s, fragments=%s)" % (
            self.max_tiles, self.max_fragments)


def window_radii(rs, depth, kappa, n):
    """n exact radii whose canonical level is `depth`."""
    lam = subdivision_ratio(rs).as_fraction()
    side = reference_side(rs).as_fraction() * (Fraction(1, 1) / lam) ** depth
    kappa = Fraction(kappa)
    lo = side / (kappa * lam)          # exclusive
    hi = side / kappa                  # inclusive
    if n == 1:
        return [coord((lo + hi) / 2)]
    out = []
    for i in range(n):
        t = Fraction(2 * i + 1, 2 * n)
        out.append(coord(lo + (hi - lo) * t))
    return out


def _is_unit_grid(rs):
    """Uniform rule set whose tiles at each level live on a square lattice."""
    from .expand import lattice_pitch
    if not (rs.is_rectilinear() and rs.is_uniform()):
        return False
    try:
        return lattice_pitch(rs, 1) is not None
    except Exception:
        return False


def scan_raster(rs, depth, budget=DEFAULT_TILE_BUDGET):
    """Integer grid of scan positions for a rectilinear lattice expansion."""
    from .expand import lattice_pitch
    if count_tiles(rs, depth) > budget:
        raise BudgetError("raster exceeds tile budget")
    pitch = lattice_pitch(rs, max(depth, 1))
    base = rs.unit_rule.base
    dim = rs.dim
    shape = []
    for l, h in zip(base.lo, base.hi):
        n = (h.as_fraction() - l.as_fraction()) / pitch
        shape.append(int(n))
    ids = np.full(shape, -1, dtype=np.int64)
    counter = [0]

    def rec(rule_name, transform, rev, level):
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
        children = rs.rules[rule_name].children
        order = range(len(children) - 1, -1, -1) if rev else range(len(children))
        for i in order:
            ch = children[i]
            rec(ch.rule, transform.compose(ch.placement), rev ^ ch.reversed, level + 1)

    rec(rs.unit, Similarity.identity(dim), False, 0)
    if (ids < 0).any():
        raise RuleError("scan raster left holes")
    return ids, pitch


def _vertex_stats_grid(ids):
    """(tiles, fragments) per interior lattice vertex, vectorized."""
    dim = ids.ndim
    stacks = []
    import itertools
    for off in itertools.product((0, 1), repeat=dim):
        sl = tuple(slice(o, s - 1 + o) for o, s in zip(off, ids.shape))
        stacks.append(ids[sl])
    arr = np.stack(stacks, axis=-1).reshape(-1, 2 ** dim)
    arr = np.sort(arr, axis=1)
    diffs = np.diff(arr, axis=1)
    tiles = (diffs != 0).sum(axis=1) + 1
    fragments = (diffs > 1).sum(axis=1) + 1
    return tiles, fragments


def estimate_arrwwid(rs, plan=None, kappa=Fraction(2), is_order=None,
                     budget=DEFAULT_TILE_BUDGET):
    """Worst cover counts over the plan's queries, with witnesses.

    For tilings only max_tiles is meaningful; orders also get max_fragments.
    Vertex-centered balls on lattice rule sets use a vectorized raster (the
    window radii keep each ball inside the cells around its vertex); random
    balls always go through the exact cover path.
    """
    plan = plan or SamplePlan()
    if is_order is None:
        is_order = True
    max_tiles, tiles_w = 0, None
    max_frag, frag_w = 0, None

    def consider(count, frag_count, center, radius, level):
        nonlocal max_tiles, tiles_w, max_frag, frag_w
        if count > max_tiles:
            max_tiles = count
            tiles_w = Witness(center, radius, level, count)
        if frag_count is not None and frag_count > max_frag:
            max_frag = frag_count
            frag_w = Witness(center, radius, level, frag_count)

    grid_ok = _is_unit_grid(rs)
    for depth in plan.depths:
        radii = window_radii(rs, depth, kappa, plan.radii_per_depth)
        if grid_ok:
            ids, pitch = scan_raster(rs, depth, budget=budget)
            tiles, fragments = _vertex_stats_grid(ids)
            if len(tiles):
                ti = int(tiles.argmax())
                fi = int(fragments.argmax())
                base = rs.unit_rule.base
                for which, idx in (("t", ti), ("f", fi)):
                    vert = np.unravel_index(idx, tuple(s - 1 for s in ids.shape))
                    center = tuple(base.lo[ax] + coord(pitch) * coord(int(vert[ax]) + 1)
                                   for ax in range(rs.dim))
                    r = radii[0]
                    if which == "t":
                        consider(int(tiles[idx]), None, center, r, depth)
                    elif is_order:
                        consider(0, int(fragments[idx]), center, r, depth)
        else:
            # exact vertex enumeration through expansion
            from .expand import expand
            ts = expand(rs, depth, budget=budget)
            unit_base = rs.unit_rule.base
            for p, incident in ts.vertex_index.items():
                if unit_base.on_boundary(p):
                    continue
                r = radii[0]
                q = QueryRange("ball", p, r)
                if not q.inside_unit(unit_base):
                    continue
                rep = cover_fragments(rs, q, kappa=kappa, budget=budget)
                consider(rep.tile_count, rep.fragment_count if is_order else None,
                         p, r, rep.level)
    # seeded random interior balls
    rng = np.random.default_rng(plan.seed)
    base = rs.unit_rule.base
    lo = [float(v) for v in base.lo]
    hi = [float(v) for v in base.hi]
    depth_lo, depth_hi = min(plan.depths), max(plan.depths)
    for _ in range(plan.n_random):
        depth = int(rng.integers(depth_lo, depth_hi + 1))
        radii = window_radii(rs, depth, kappa, 1)
        r = radii[0]
        rf = float(r)
        center = []
        ok = True
        for ax in range(rs.dim):
            span = hi[ax] - lo[ax] - 2 * rf
            if span <= 0:
                ok = False
                break
            u = rng.random()
            center.append(coord(Fraction(lo[ax] + rf + u * span).limit_denominator(10 ** 9)))
        if not ok:
            continue
        q = QueryRange(plan.query_kind, center,
                       radius=r if plan.query_kind == "ball" else None,
                       half_extents=(r,) * rs.dim if plan.query_kind == "box" else None)
        if not q.inside_unit(base):
            continue
        rep = cover_fragments(rs, q, kappa=kappa, budget=budget)
        consider(rep.tile_count, rep.fragment_count if is_order else None,
                 q.center, r, rep.level)
    return ArrwwidEstimate(max_tiles, tiles_w, max_frag if is_order else None,
                           frag_w if is_order else None, plan.describe())
