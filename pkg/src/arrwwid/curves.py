"""Scanning-order semantics on top of rule sets.

A scanning order is a rule set whose child list order is the traversal order;
a child's reversed flag runs its whole subtree backwards.  This module gives
the exact parameter interval of a tile, the two one-sided curve maps, exact
entry/exit gates via fixed points, connection classification between
order-consecutive tiles, and the per-vertex audit quantities used in
lower-bound arguments.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import ONE, coord
from .shapes import Box
from .transforms import Similarity, fixed_point
from .expand import BudgetError, count_tiles, DEFAULT_TILE_BUDGET
from .rules import RuleError


class Interval:
    """Closed parameter interval [lo, hi] inside [0, 1], exact rationals."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        if not (0 <= self.lo <= self.hi <= 1):
            raise ValueError("interval out of range: [%s, %s]" % (lo, hi))

    @property
    def length(self):
        return self.hi - self.lo

    def __eq__(self, other):
        return isinstance(other, Interval) and (self.lo, self.hi) == (other.lo, other.hi)

    def __repr__(self):
        return "Interval(%s, %s)" % (self.lo, self.hi)


import weakref

_REL_CACHE = weakref.WeakKeyDictionary()


def _relative_areas(rs, rule_name):
    """Exact child areas relative to the rule's base, in child list order."""
    per_rule = _REL_CACHE.get(rs)
    if per_rule is None:
        per_rule = _REL_CACHE[rs] = {}
    cached = per_rule.get(rule_name)
    if cached is not None:
        return cached
    rule = rs.rules[rule_name]
    base_area = rule.base.measure()
    rels = []
    for ch in rule.children:
        scale_pow = ch.placement.scale
        for _ in range(rs.dim - 1):
            scale_pow = scale_pow * ch.placement.scale
        rel = (scale_pow * rs.rules[ch.rule].base.measure()) / base_area
        rels.append(rel.as_fraction())
    per_rule[rule_name] = rels
    return rels


def tile_interval(rs, address):
    """Exact [x, y] such that the tile at `address` equals fragment U[x, y]."""
    lo, length = Fraction(0), Fraction(1)
    rev = False
    rule_name = rs.unit
    for i in address:
        rule = rs.rules[rule_name]
        if not 0 <= i < len(rule.children):
            raise RuleError("invalid address component %d for rule %r" % (i, rule_name))
        rels = _relative_areas(rs, rule_name)
        prefix = sum(rels[:i], Fraction(0))
        if rev:
            new_lo = lo + length * (1 - prefix - rels[i])
        else:
            new_lo = lo + length * prefix
        lo, length = new_lo, length * rels[i]
        ch = rule.children[i]
        rev ^= ch.reversed
        rule_name = ch.rule
    return Interval(lo, lo + length)


def scan_leaves(rs, depth, budget=DEFAULT_TILE_BUDGET):
    """Leaves of the depth-expansion in scanning order.

    Yields (address, rule_name, transform, reversed) tuples.
    """
    if count_tiles(rs, depth) > budget:
        raise BudgetError("scan of depth %d exceeds tile budget" % depth)

    def rec(rule_name, transform, addr, rev, level):
        if level == depth:
            yield addr, rule_name, transform, rev
            return
        children = rs.rules[rule_name].children
        order = range(len(children) - 1, -1, -1) if rev else range(len(children))
        for i in order:
            ch = children[i]
            yield from rec(ch.rule, transform.compose(ch.placement),
                           addr + (i,), rev ^ ch.reversed, level + 1)

    yield from rec(rs.unit, Similarity.identity(rs.dim), (), False, 0)


# -- entry and exit gates -------------------------------------------------------

def _gate(rs, rule_name, rev, end, cache):
    """Exact point where scanning of `rule_name` (reversed if rev) starts/ends."""
    key = (rule_name, rev, end)
    if key in cache:
        return cache[key]
    state = key
    prefix = []          # placements applied before the cycle
    seen = {}
    transforms = []
    cur = Similarity.identity(rs.dim)
    while state not in seen:
        seen[state] = len(transforms)
        transforms.append(cur)
        rname, rv, ed = state
        children = rs.rules[rname].children
        take_last = ed ^ rv
        ch = children[-1] if take_last else children[0]
        cur = cur.compose(ch.placement)
        state = (ch.rule, rv ^ ch.reversed, ed)
    start_idx = seen[state]
    t_start = transforms[start_idx]
    cycle = t_start.inverse().compose(cur)
    if (cycle.scale - ONE).sign() >= 0:
        raise RuleError("rule %r has a non-contracting gate composition" % rule_name)
    p = fixed_point(cycle)
    result = t_start.apply(p)
    cache[key] = result
    # cache gates for every state on the chain (clipped to the visited prefix)
    for st, idx in seen.items():
        if st not in cache:
            cache[st] = transforms[idx].inverse().apply(result) if idx else result
    return result


class Gates:
    """Memoized exact entry/exit points per (rule, reversed) state."""

    def __init__(self, rs):
        self.rs = rs
        self._cache = {}

    def start(self, rule_name, rev=False):
        return _gate(self.rs, rule_name, rev, False, self._cache)

    def end(self, rule_name, rev=False):
        return _gate(self.rs, rule_name, rev, True, self._cache)

    def of_tile(self, transform, rule_name, rev):
        """(entry, exit) of a placed tile in absolute coordinates."""
        return (transform.apply(self.start(rule_name, rev)),
                transform.apply(self.end(rule_name, rev)))


def entry_exit(rs, rule_name=None):
    """Exact (entry, exit) points of a rule (default: the unit rule)."""
    g = Gates(rs)
    rule_name = rule_name or rs.unit
    if rule_name not in rs.rules:
        raise RuleError("unknown rule %r" % rule_name)
    return g.start(rule_name), g.end(rule_name)


# -- one-sided curve maps --------------------------------------------------------

def index_to_point(rs, x, eps):
    """Approximate the one-sided limits (sigma_down(x), sigma_up(x)).

    Descends the order until fragment diameter < eps on each side of x and
    returns the tile centers; each is within eps of the true limit point.
    At x == 0 only the lower map exists, at x == 1 only the upper map.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("parameter must lie in [0, 1]")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    down = _descend(rs, x, eps, upper=False) if x < 1 else None
    up = _descend(rs, x, eps, upper=True) if x > 0 else None
    if x == 0:
        return down, down
    if x == 1:
        return up, up
    return down, up


def _descend(rs, x, eps, upper):
    rule_name = rs.unit
    transform = Similarity.identity(rs.dim)
    rev = False
    lo, length = Fraction(0), Fraction(1)
    eps_sq = coord(eps * eps)
    while True:
        geom = rs.rules[rule_name].base.transform(transform)
        bb = geom if isinstance(geom, Box) else geom.bounding_box()
        if (bb.diameter_sq() - eps_sq).sign() < 0:
            return bb.center()
        rels = _relative_areas(rs, rule_name)
        rule = rs.rules[rule_name]
        # scanning-position intervals for each child index
        chosen = None
        for i in range(len(rule.children)):
            prefix = sum(rels[:i], Fraction(0))
            if rev:
                c_lo = lo + length * (1 - prefix - rels[i])
            else:
                c_lo = lo + length * prefix
            c_hi = c_lo + length * rels[i]
            if (c_lo < x < c_hi) or (not upper and c_lo == x and x < c_hi) \
                    or (upper and c_hi == x and c_lo < x):
                chosen = (i, c_lo)
                break
        if chosen is None:
            # x sits exactly on a boundary; pick the side requested
            best = None
            for i in range(len(rule.children)):
                prefix = sum(rels[:i], Fraction(0))
                c_lo = lo + length * (1 - prefix - rels[i]) if rev else lo + length * prefix
                c_hi = c_lo + length * rels[i]
                if not upper and c_lo <= x < c_hi:
                    best = (i, c_lo)
                if upper and c_lo < x <= c_hi:
                    best = (i, c_lo)
            chosen = best
        i, c_lo = chosen
        ch = rule.children[i]
        transform = transform.compose(ch.placement)
        lo, length = c_lo, length * rels[i]
        rev ^= ch.reversed
        rule_name = ch.rule


# -- connections -------------------------------------------------------------------

class ConnectionStats:
    """Counts of connection kinds between order-consecutive tiles.

    horizontal/vertical: shared vertical/horizontal edge (2D); facet: shared
    2D face (3D); diagonal: vertex- or edge-only contact with matching gates;
    jump: exit of the earlier tile differs from entry of the later one.  The
    five counts sum to (tiles - 1).  `jump_contact_dims` breaks the jumps
    down by the dimension of the shared boundary (None = no contact).
    """

    def __init__(self):
        self.horizontal = 0
        self.vertical = 0
        self.facet = 0
        self.diagonal = 0
        self.jump = 0
        self.jump_contact_dims = {}

    @property
    def total(self):
        return self.horizontal + self.vertical + self.facet + self.diagonal + self.jump

    def as_dict(self):
        return {"horizontal": self.horizontal, "vertical": self.vertical,
                "facet": self.facet, "diagonal": self.diagonal, "jump": self.jump,
                "jump_contact_dims": {str(k): v for k, v in self.jump_contact_dims.items()}}

    def __repr__(self):
        return "ConnectionStats(%r)" % self.as_dict()


def classify_connections(rs, depth, budget=DEFAULT_TILE_BUDGET):
    """Classify every order-consecutive tile pair of the depth expansion."""
    gates = Gates(rs)
    stats = ConnectionStats()
    prev = None
    for addr, rule_name, transform, rev in scan_leaves(rs, depth, budget):
        geom = rs.rules[rule_name].base.transform(transform)
        if not isinstance(geom, Box):
            raise RuleError("connection classification supports box tiles only")
        entry, exit_ = gates.of_tile(transform, rule_name, rev)
        if prev is not None:
            p_geom, p_exit = prev
            _classify_pair(stats, p_geom, geom, p_exit, entry)
        prev = (geom, exit_)
    return stats


def _classify_pair(stats, geom_a, geom_b, exit_a, entry_b):
    contact = geom_a.shared_boundary_dim(geom_b)
    if exit_a != entry_b:
        stats.jump += 1
        stats.jump_contact_dims[contact] = stats.jump_contact_dims.get(contact, 0) + 1
        return
    dim = geom_a.dim
    if contact is None:
        # gates agree but closures are disjoint: cannot happen for valid tilings
        stats.jump += 1
        stats.jump_contact_dims[None] = stats.jump_contact_dims.get(None, 0) + 1
        return
    if dim == 2:
        if contact == 1:
            # find degenerate axis: x-degenerate means a shared vertical edge
            if (max(geom_a.lo[0], geom_b.lo[0]) - min(geom_a.hi[0], geom_b.hi[0])).sign() == 0:
                stats.horizontal += 1
            else:
                stats.vertical += 1
        else:
            stats.diagonal += 1
    else:
        if contact == 2:
            stats.facet += 1
        else:
            stats.diagonal += 1


# -- vertex audits --------------------------------------------------------------------

class VertexAudit:
    __slots__ = ("vertex", "tiles_v", "ends_v", "degenerate_bridges", "nondegenerate_bridges")

    def __init__(self, vertex, tiles_v, ends_v, degenerate, nondegenerate):
        self.vertex = vertex
        self.tiles_v = tiles_v
        self.ends_v = ends_v
        self.degenerate_bridges = degenerate
        self.nondegenerate_bridges = nondegenerate

    def __repr__(self):
        return ("VertexAudit(%s, tiles=%d, ends=%d, deg=%d, nondeg=%d)"
                % (tuple(map(float, self.vertex)), self.tiles_v, self.ends_v,
                   self.degenerate_bridges, self.nondegenerate_bridges))


def vertex_audit(rs, depth, budget=DEFAULT_TILE_BUDGET):
    """Per interior vertex: incident tiles, curve endpoints, bridge degeneracy.

    Bridges are counted between scan-order-consecutive incident tiles; a
    bridge is degenerate exactly when the two tiles are globally consecutive
    and connect at the vertex.
    """
    gates = Gates(rs)
    leaves = list(scan_leaves(rs, depth, budget))
    from .expand import TileSet, Tile
    tiles = [Tile(addr, rule, tr, rs.rules[rule].base.transform(tr), rev)
             for addr, rule, tr, rev in leaves]
    ts = TileSet(rs, depth, tiles)
    unit_base = rs.unit_rule.base
    tile_gates = [gates.of_tile(tr, rule, rev) for _, rule, tr, rev in leaves]
    audits = []
    for p, incident in ts.vertex_index.items():
        if unit_base.on_boundary(p):
            continue
        ends = 0
        for i in incident:
            entry, exit_ = tile_gates[i]
            if entry == p:
                ends += 1
            if exit_ == p:
                ends += 1
        degenerate = nondegenerate = 0
        for a, b in zip(incident, incident[1:]):
            if b == a + 1 and tile_gates[a][1] == p and tile_gates[b][0] == p:
                degenerate += 1
            else:
                nondegenerate += 1
        audits.append(VertexAudit(p, len(incident), ends, degenerate, nondegenerate))
    return audits
