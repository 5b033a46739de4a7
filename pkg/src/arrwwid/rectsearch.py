"""Exhaustive search for uniform rectangular tilings with vertex degree three.

Size/ratio candidates follow two structural facts: the size t must be a
perfect square, and the aspect ratio alpha must be rational with numerator at
most sqrt(t) and denominator below sqrt(t), with the width/height filling
equations admitting solutions in which each orientation count is positive.
Packings are enumerated by exact backtracking on the cut lattice (all cuts
are multiples of 1/(q*sqrt(t)) of the unit height); per-tile transform
assignments are searched with local corner-compatibility pruning and each
survivor goes through the degree certifier.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .builders import ORTHO2, place_in_cell
from .exact import ZERO, coord
from .shapes import Box
from .rules import Rule, RuleSet, Child
from .certify import certify_max_degree

_UPRIGHT = ["id", "r180", "mx", "my"]
_ROTATED = ["r90", "r270", "transpose", "antitranspose"]


def eligible_ratios(t):
    """Aspect ratios a uniform size-t rectangular tiling of degree 3 may have."""
    if t < 2:
        return []
    s = isqrt(t)
    if s * s != t:
        return []
    ratios = set()
    for n_wh in range(1, s + 1):
        for n_hh in range(1, s):
            alpha = Fraction(s - n_hh, n_wh)
            if alpha > 1:
                ratios.add(alpha)
    keep = []
    for alpha in sorted(ratios):
        p, q = alpha.numerator, alpha.denominator
        if p > s or q >= s:
            continue
        if _each_var_positive(p, q, p * s) and _each_var_positive(p, q, q * s):
            keep.append(alpha)
    return keep


def _each_var_positive(a, b, rhs):
    """a*x + b*y = rhs has nonneg solutions with x >= 1 and (some) with y >= 1."""
    xs = [(x, (rhs - a * x) // b) for x in range(rhs // a + 1)
          if (rhs - a * x) % b == 0]
    return any(x >= 1 for x, _ in xs) and any(y >= 1 for _, y in xs)


class Packing:
    """t axis-aligned rectangles tiling the alpha-rectangle on the cut lattice.

    pieces: tuple of (x, y, w, h) lattice boxes.  W x H is the lattice grid;
    a piece is upright when (w, h) == (p, q).
    """

    def __init__(self, t, alpha, grid, pieces):
        self.t = t
        self.alpha = alpha
        self.grid = grid
        self.pieces = tuple(sorted(pieces))

    @property
    def is_regular_grid(self):
        ws = {(w, h) for _, _, w, h in self.pieces}
        return len(ws) == 1

    def symmetry_images(self):
        W, H = self.grid
        def mx(b):
            x, y, w, h = b
            return (W - x - w, y, w, h)
        def my(b):
            x, y, w, h = b
            return (x, H - y - h, w, h)
        yield self.pieces
        yield tuple(sorted(mx(b) for b in self.pieces))
        yield tuple(sorted(my(b) for b in self.pieces))
        yield tuple(sorted(mx(my(b)) for b in self.pieces))

    def canonical_key(self):
        return min(self.symmetry_images())

    def interior_vertices(self):
        """Map interior lattice vertex -> list of pieces whose closure meets it."""
        W, H = self.grid
        verts = {}
        for i, (x, y, w, h) in enumerate(self.pieces):
            for vx in (x, x + w):
                for vy in (y, y + h):
                    if 0 < vx < W and 0 < vy < H:
                        verts.setdefault((vx, vy), None)
        out = {}
        for v in verts:
            out[v] = [i for i, (x, y, w, h) in enumerate(self.pieces)
                      if x <= v[0] <= x + w and y <= v[1] <= y + h]
        return out

    def max_vertex_degree(self):
        iv = self.interior_vertices()
        return max((len(t) for t in iv.values()), default=0)


def enumerate_packings(t, alpha, budget=10 ** 6):
    """All packings for (t, alpha), canonical under the rectangle symmetries.

    Deterministic order; raises BudgetError-style RuntimeError past budget.
    """
    s = isqrt(t)
    p, q = alpha.numerator, alpha.denominator
    W, H = p * s, q * s
    grid = [[False] * H for _ in range(W)]
    pieces = []
    found = {}
    nodes = [0]

    def first_empty():
        for x in range(W):
            col = grid[x]
            for y in range(H):
                if not col[y]:
                    return x, y
        return None

    def place(x, y, w, h, val):
        for dx in range(w):
            col = grid[x + dx]
            for dy in range(h):
                col[y + dy] = val

    def fits(x, y, w, h):
        if x + w > W or y + h > H:
            return False
        for dx in range(w):
            col = grid[x + dx]
            for dy in range(h):
                if col[y + dy]:
                    return False
        return True

    def rec():
        nodes[0] += 1
        if nodes[0] > budget:
            raise RuntimeError("packing enumeration exceeded budget of %d nodes" % budget)
        spot = first_empty()
        if spot is None:
            pk = Packing(t, alpha, (W, H), pieces)
            found.setdefault(pk.canonical_key(), pk)
            return
        x, y = spot
        for w, h in ((p, q), (q, p)) if p != q else ((p, q),):
            if fits(x, y, w, h):
                pieces.append((x, y, w, h))
                place(x, y, w, h, True)
                rec()
                place(x, y, w, h, False)
                pieces.pop()

    rec()
    return [found[k] for k in sorted(found)]


def packing_ruleset(packing, orthos, name="rect"):
    """Rule set for a packing plus per-piece transform assignment."""
    s = isqrt(packing.t)
    W, H = packing.grid
    base = Box((ZERO, ZERO), (coord(W), coord(H)))
    children = []
    for (x, y, w, h), oname in zip(packing.pieces, orthos):
        sim = place_in_cell(base, Fraction(1, s), ORTHO2[oname], (Fraction(x), Fraction(y)))
        children.append(Child(name, sim))
    return RuleSet({name: Rule(name, base, children)}, name, name=name)


# -- transform assignment search ------------------------------------------------

def _boundary_cuts(packing):
    """Subdivision cut positions on each side of the unit rectangle.

    Returns dict side -> sorted positions along that side (lattice units),
    sides keyed as 'left','right','bottom','top'; unit corners excluded.
    """
    W, H = packing.grid
    cuts = {"left": set(), "right": set(), "bottom": set(), "top": set()}
    for x, y, w, h in packing.pieces:
        for vx, vy in ((x, y), (x + w, y), (x, y + h), (x + w, y + h)):
            if vx == 0 and 0 < vy < H:
                cuts["left"].add(vy)
            if vx == W and 0 < vy < H:
                cuts["right"].add(vy)
            if vy == 0 and 0 < vx < W:
                cuts["bottom"].add(vx)
            if vy == H and 0 < vx < W:
                cuts["top"].add(vx)
    return {k: sorted(v) for k, v in cuts.items()}


def _piece_edge_cuts(packing, piece, oname):
    """Level-2 cut points on the four edges of `piece` under transform oname.

    Points come back as a set of exact (x, y) lattice-unit pairs.
    """
    x, y, w, h = piece
    s = isqrt(packing.t)
    base = Box((ZERO, ZERO), (coord(packing.grid[0]), coord(packing.grid[1])))
    sim = place_in_cell(base, Fraction(1, s), ORTHO2[oname], (Fraction(x), Fraction(y)))
    cuts = _boundary_cuts(packing)
    pts = set()
    W, H = packing.grid
    for side, positions in cuts.items():
        for v in positions:
            if side in ("left", "right"):
                p = (Fraction(0 if side == "left" else W), Fraction(v))
            else:
                p = (Fraction(v), Fraction(0 if side == "bottom" else H))
            img = sim.apply((coord(p[0]), coord(p[1])))
            pts.add((img[0].as_fraction(), img[1].as_fraction()))
    return pts


def _assignment_candidates(packing):
    """Per-piece ortho values filtered by the T-junction (unary) constraint."""
    iv = packing.interior_vertices()
    p = packing.alpha.numerator
    q = packing.alpha.denominator
    cand = []
    cut_cache = {}
    for i, piece in enumerate(packing.pieces):
        x, y, w, h = piece
        upright = (w, h) == (p, q)
        values = []
        stems = []
        for v, tiles in iv.items():
            if i in tiles:
                vx, vy = v
                corner = vx in (x, x + w) and vy in (y, y + h)
                if not corner:
                    stems.append((Fraction(vx), Fraction(vy)))
        for oname in (_UPRIGHT if upright else _ROTATED):
            key = (piece, oname)
            if key not in cut_cache:
                cut_cache[key] = _piece_edge_cuts(packing, piece, oname)
            cuts = cut_cache[key]
            if not any(sv in cuts for sv in stems):
                values.append(oname)
        cand.append(values)
    return cand


def _binary_conflicts(packing, cand):
    """Forbidden ortho pairs for pieces abutting along a positive segment."""
    conflicts = {}
    pieces = packing.pieces
    cut_cache = {}

    def cuts(i, oname):
        key = (i, oname)
        if key not in cut_cache:
            cut_cache[key] = _piece_edge_cuts(packing, pieces[i], oname)
        return cut_cache[key]

    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            seg = _shared_segment(pieces[i], pieces[j])
            if seg is None:
                continue
            bad = set()
            for oa in cand[i]:
                ca = {pt for pt in cuts(i, oa) if _strictly_inside(pt, seg)}
                if not ca:
                    continue
                for ob in cand[j]:
                    cb = cuts(j, ob)
                    if ca & cb:
                        bad.add((oa, ob))
            if bad:
                conflicts[(i, j)] = bad
    return conflicts


def _shared_segment(a, b):
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    if ax + aw == bx or bx + bw == ax:
        lo, hi = max(ay, by), min(ay + ah, by + bh)
        if hi > lo:
            x = ax + aw if ax + aw == bx else bx + bw
            return ("v", Fraction(x), Fraction(lo), Fraction(hi))
    if ay + ah == by or by + bh == ay:
        lo, hi = max(ax, bx), min(ax + aw, bx + bw)
        if hi > lo:
            y = ay + ah if ay + ah == by else by + bh
            return ("h", Fraction(y), Fraction(lo), Fraction(hi))
    return None


def _strictly_inside(pt, seg):
    kind, line, lo, hi = seg
    if kind == "v":
        return pt[0] == line and lo < pt[1] < hi
    return pt[1] == line and lo < pt[0] < hi


def assignment_solutions(packing, cap=50000):
    """Transform assignments surviving the local pruning, up to `cap`."""
    cand = _assignment_candidates(packing)
    if any(not c for c in cand):
        return []
    conflicts = _binary_conflicts(packing, cand)
    n = len(cand)
    order = sorted(range(n), key=lambda i: len(cand[i]))
    pos = {v: k for k, v in enumerate(order)}
    sols = []
    chosen = [None] * n

    def rec(k):
        if len(sols) >= cap:
            return
        if k == n:
            sols.append(tuple(chosen))
            return
        i = order[k]
        for val in cand[i]:
            ok = True
            for (a, b), bad in conflicts.items():
                if a == i and chosen[b] is not None and (val, chosen[b]) in bad:
                    ok = False
                    break
                if b == i and chosen[a] is not None and (chosen[a], val) in bad:
                    ok = False
                    break
            if ok:
                chosen[i] = val
                rec(k + 1)
                chosen[i] = None

    rec(0)
    return sols


# -- fast integer closure for single-rule grid packings -------------------------
#
# Same configuration-closure algorithm as certify.certify_max_degree, but on
# the integer cut lattice of one packing, so scanning very many transform
# assignments is cheap.  Accepted candidates are always re-verified with the
# generic exact certifier.

def _ortho_box_maps(W, H):
    """For each ortho name: mapped dims and an integer box-mapping function."""
    maps = {}
    for name, o in ORTHO2.items():
        c, s_ = {0: (1, 0), 3: (0, 1), 6: (-1, 0), 9: (0, -1)}[o.rot]
        refl = -1 if o.reflect else 1

        def make(c=c, s_=s_, refl=refl):
            def apply_pt(x, y):
                y2 = y * refl
                return (c * x - s_ * y2, s_ * x + c * y2)
            return apply_pt

        fn = make()
        corners = [fn(0, 0), fn(W, 0), fn(0, H), fn(W, H)]
        minx = min(p[0] for p in corners)
        miny = min(p[1] for p in corners)
        dims = (max(p[0] for p in corners) - minx, max(p[1] for p in corners) - miny)

        def box_map(box, fn=fn, minx=minx, miny=miny):
            x0, y0, x1, y1 = box
            pa, pb = fn(x0, y0), fn(x1, y1)
            return (min(pa[0], pb[0]) - minx, min(pa[1], pb[1]) - miny,
                    max(pa[0], pb[0]) - minx, max(pa[1], pb[1]) - miny)

        maps[name] = (dims, box_map)
    return maps


class _FastCertifier:
    def __init__(self, packing):
        self.packing = packing
        W, H = packing.grid
        self.k = isqrt(packing.t)
        maps = _ortho_box_maps(W, H)
        corner_boxes = [(x, y, x + w, y + h) for x, y, w, h in packing.pieces]
        self.geo = {}
        for name, (dims, box_map) in maps.items():
            self.geo[name] = (dims, tuple(box_map(b) for b in corner_boxes))
        by_key = {o.key(): n for n, o in ORTHO2.items()}
        self.comp = {(a, b): by_key[ORTHO2[a].compose(ORTHO2[b]).key()]
                     for a in ORTHO2 for b in ORTHO2}
        k = self.k
        # geometry-only precomputation, shared by every assignment:
        # initial edge configs, initial vertex points, and per-side child lists
        self.init_ecs = {}
        self.init_vcs = {}
        self.on_side = {}
        for o, ((w, h), boxes) in self.geo.items():
            ecs = []
            n = len(boxes)
            for i in range(n):
                ax0, ay0, ax1, ay1 = boxes[i]
                for j in range(n):
                    if i == j:
                        continue
                    bx0, by0, bx1, by1 = boxes[j]
                    if ax1 == bx0 and min(ay1, by1) > max(ay0, by0):
                        ecs.append((0, i, j, k * (by0 - ay0)))
                    elif ay1 == by0 and min(ax1, bx1) > max(ax0, bx0):
                        ecs.append((1, i, j, k * (bx0 - ax0)))
            self.init_ecs[o] = tuple(ecs)
            pts = {}
            for x0, y0, x1, y1 in boxes:
                for p in ((x0, y0), (x1, y0), (x0, y1), (x1, y1)):
                    if 0 < p[0] < w and 0 < p[1] < h:
                        pts[p] = None
            vcs = []
            for p in pts:
                inc = tuple((i, k * (b[0] - p[0]), k * (b[1] - p[1]))
                            for i, b in enumerate(boxes)
                            if b[0] <= p[0] <= b[2] and b[1] <= p[1] <= b[3])
                vcs.append(inc)
            self.init_vcs[o] = tuple(vcs)
            self.on_side[o] = {
                ("a", 0): tuple((i, b) for i, b in enumerate(boxes) if b[2] == w),
                ("b", 0): tuple((i, b) for i, b in enumerate(boxes) if b[0] == 0),
                ("a", 1): tuple((i, b) for i, b in enumerate(boxes) if b[3] == h),
                ("b", 1): tuple((i, b) for i, b in enumerate(boxes) if b[1] == 0),
            }

    def certified(self, assign, bound=3):
        """True when the integer closure closes without a degree violation."""
        comp, geo, k = self.comp, self.geo, self.k
        types_of = {}
        reach = ["id"]
        types_of["id"] = [comp[("id", oc)] for oc in assign]
        i = 0
        while i < len(reach):
            o = reach[i]
            i += 1
            for t in types_of[o]:
                if t not in types_of:
                    reach.append(t)
                    types_of[t] = [comp[(t, oc)] for oc in assign]
        seen = set()
        queue = []

        for o in reach:
            types = types_of[o]
            for axis, i_, j_, delta in self.init_ecs[o]:
                cfg = ("E", axis, types[i_], types[j_], delta)
                if cfg not in seen:
                    seen.add(cfg)
                    queue.append(cfg)
            for inc in self.init_vcs[o]:
                if len(inc) > bound:
                    return False
                cfg = ("V", tuple(sorted((types[i_], dx, dy) for i_, dx, dy in inc)))
                if cfg not in seen:
                    seen.add(cfg)
                    queue.append(cfg)

        while queue:
            cfg = queue.pop()
            if cfg[0] == "V":
                entries = []
                for t, dx, dy in cfg[1]:
                    boxes = geo[t][1]
                    types = types_of[t]
                    px, py = -dx, -dy
                    for i_, (x0, y0, x1, y1) in enumerate(boxes):
                        if x0 <= px <= x1 and y0 <= py <= y1:
                            entries.append((types[i_], k * (x0 - px), k * (y0 - py)))
                if len(entries) > bound:
                    return False
                new = ("V", tuple(sorted(entries)))
                if new not in seen:
                    seen.add(new)
                    queue.append(new)
                continue
            _, axis, ta, tb, delta = cfg
            (wa, ha), _boxes_a = geo[ta]
            (wb, hb), _boxes_b = geo[tb]
            types_a, types_b = types_of[ta], types_of[tb]
            a_side = self.on_side[ta][("a", axis)]
            b_side = self.on_side[tb][("b", axis)]
            if axis == 0:
                line = wa
                b_on = [(i, (b[0] + line, b[1] + delta, b[2] + line, b[3] + delta))
                        for i, b in b_side]
                lo_i, hi_i = 1, 3
                seg_lo, seg_hi = max(0, delta), min(ha, delta + hb)
            else:
                line = ha
                b_on = [(i, (b[0] + delta, b[1] + line, b[2] + delta, b[3] + line))
                        for i, b in b_side]
                lo_i, hi_i = 0, 2
                seg_lo, seg_hi = max(0, delta), min(wa, delta + wb)
            cuts = set()
            for ia, ba in a_side:
                t_a = types_a[ia]
                a_lo, a_hi = ba[lo_i], ba[hi_i]
                for ib, bb in b_on:
                    if min(a_hi, bb[hi_i]) > max(a_lo, bb[lo_i]):
                        new = ("E", axis, t_a, types_b[ib], k * (bb[lo_i] - a_lo))
                        if new not in seen:
                            seen.add(new)
                            queue.append(new)
                if seg_lo < a_lo < seg_hi:
                    cuts.add(a_lo)
                if seg_lo < a_hi < seg_hi:
                    cuts.add(a_hi)
            for _, b in b_on:
                for v in (b[lo_i], b[hi_i]):
                    if seg_lo < v < seg_hi:
                        cuts.add(v)
            for v in cuts:
                point = (line, v) if axis == 0 else (v, line)
                entries = []
                for ia, (x0, y0, x1, y1) in a_side:
                    if x0 <= point[0] <= x1 and y0 <= point[1] <= y1:
                        entries.append((types_a[ia], k * (x0 - point[0]), k * (y0 - point[1])))
                for ib, (x0, y0, x1, y1) in b_on:
                    if x0 <= point[0] <= x1 and y0 <= point[1] <= y1:
                        entries.append((types_b[ib], k * (x0 - point[0]), k * (y0 - point[1])))
                if len(entries) > bound:
                    return False
                new = ("V", tuple(sorted(entries)))
                if new not in seen:
                    seen.add(new)
                    queue.append(new)
        return True


class SearchReport:
    def __init__(self):
        self.per_ratio = []       # dicts with t, alpha, stats
        self.accepted = []        # (t, alpha, packing, orthos, certificate)
        self.budget_exceeded = False

    @property
    def total_inconclusive(self):
        return sum(r["inconclusive"] for r in self.per_ratio)

    def as_dict(self):
        return {
            "budget_exceeded": self.budget_exceeded,
            "per_ratio": self.per_ratio,
            "accepted": [
                {"t": t, "alpha": str(alpha), "pieces": list(pk.pieces),
                 "orthos": list(orthos)}
                for t, alpha, pk, orthos, _ in self.accepted
            ],
        }


def search_min_rect_tiling(t_max, packing_budget=10 ** 6, certify_budget=200000,
                           assignment_cap=10 ** 6):
    """Search all square sizes t <= t_max for degree-3 rectangular tilings."""
    report = SearchReport()
    for t in range(4, t_max + 1):
        for alpha in eligible_ratios(t):
            entry = {"t": t, "alpha": str(alpha), "packings": 0,
                     "crossing_packings": 0, "assignments": 0,
                     "certified": 0, "refuted": 0, "inconclusive": 0,
                     "regular_grid_packings": 0}
            packings = enumerate_packings(t, alpha, budget=packing_budget)
            entry["packings"] = len(packings)
            for pk in packings:
                if pk.is_regular_grid:
                    entry["regular_grid_packings"] += 1
                if pk.max_vertex_degree() > 3:
                    entry["crossing_packings"] += 1
                    entry["refuted"] += 1
                    continue
                sols = assignment_solutions(pk, cap=assignment_cap)
                if len(sols) >= assignment_cap:
                    entry["assignment_cap_hit"] = True
                    report.budget_exceeded = True
                entry["assignments"] += len(sols)
                fast = _FastCertifier(pk) if sols else None
                for orthos in sols:
                    if not fast.certified(orthos):
                        entry["refuted"] += 1
                        continue
                    # re-verify every acceptance with the generic exact certifier
                    rs = packing_ruleset(pk, orthos)
                    cert = certify_max_degree(rs, 3, budget=certify_budget)
                    if cert.certified:
                        entry["certified"] += 1
                        report.accepted.append((t, alpha, pk, list(orthos), cert))
                    elif cert.status == "counterexample":
                        raise AssertionError(
                            "fast and exact certifiers disagree on %r" % (orthos,))
                    else:
                        entry["inconclusive"] += 1
            report.per_ratio.append(entry)
    report.accepted = _dedupe_accepted(report.accepted)
    return report


def _dedupe_accepted(accepted):
    """Drop accepted candidates equal to an earlier one up to symmetry."""
    seen = set()
    out = []
    for t, alpha, pk, orthos, cert in accepted:
        key = _candidate_key(pk, orthos)
        if key not in seen:
            seen.add(key)
            out.append((t, alpha, pk, orthos, cert))
    return out


def _conjugation_table():
    by_key = {o.key(): name for name, o in ORTHO2.items()}
    table = {}
    for sym in ("mx", "my", "r180"):
        g = ORTHO2[sym]
        table[sym] = {name: by_key[g.compose(o).compose(g.inverse()).key()]
                      for name, o in ORTHO2.items()}
    return table


_CONJ = _conjugation_table()


def _candidate_key(pk, orthos):
    W, H = pk.grid
    variants = []
    labelled = list(zip(pk.pieces, orthos))

    def img(sym):
        out = []
        for (x, y, w, h), o in labelled:
            if sym in ("mx", "r180"):
                x = W - x - w
            if sym in ("my", "r180"):
                y = H - y - h
            o2 = o if sym == "id" else _CONJ[sym][o]
            out.append(((x, y, w, h), o2))
        return tuple(sorted(out))

    for sym in ("id", "mx", "my", "r180"):
        variants.append(img(sym))
    return min(variants)
