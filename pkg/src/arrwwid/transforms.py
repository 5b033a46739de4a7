"""Similarity transforms with exact coordinates.

2D linear parts are rotations by multiples of 30 degrees with an optional
reflection (across the x axis, applied before the rotation).  3D linear parts
are signed axis permutations.  Both are closed under composition and keep all
matrix entries inside the Coord field.
"""

from __future__ import annotations

from .exact import Coord, ZERO, ONE, HALF, coord

# cos/sin of k*30 degrees, exact
_COS = [Coord(1), Coord(0, 1, 2), HALF, ZERO, -HALF, Coord(0, -1, 2),
        Coord(-1), Coord(0, -1, 2), -HALF, ZERO, HALF, Coord(0, 1, 2)]
_SIN = [_COS[(k - 3) % 12] for k in range(12)]


class Ortho:
    """Orthogonal linear map: 2D (rot30 * k, reflect) or 3D signed permutation.

    3D maps are stored as (perm, signs): output[i] = signs[i] * p[perm[i]].
    The 2D reflection is across the x axis and is applied before the rotation.
    """

    __slots__ = ("dim", "rot", "reflect", "perm", "signs")

    def __init__(self, dim, rot=0, reflect=False, perm=None, signs=None):
        self.dim = dim
        if dim == 2:
            self.rot = rot % 12
            self.reflect = bool(reflect)
            self.perm = None
            self.signs = None
        elif dim == 3:
            self.perm = tuple(perm if perm is not None else (0, 1, 2))
            self.signs = tuple(signs if signs is not None else (1, 1, 1))
            if sorted(self.perm) != [0, 1, 2] or any(s not in (-1, 1) for s in self.signs):
                raise ValueError("bad signed permutation")
            self.rot = None
            self.reflect = None
        else:
            raise ValueError("dim must be 2 or 3")

    @staticmethod
    def identity(dim):
        return Ortho(dim)

    def apply(self, p):
        if self.dim == 2:
            x, y = p
            if self.reflect:
                y = -y
            c, s = _COS[self.rot], _SIN[self.rot]
            return (c * x - s * y, s * x + c * y)
        return tuple(coord(self.signs[i]) * p[self.perm[i]] for i in range(3))

    def compose(self, other):
        """self o other (apply other first)."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.dim == 2:
            rot = (self.rot - other.rot) % 12 if self.reflect else (self.rot + other.rot) % 12
            return Ortho(2, rot, self.reflect ^ other.reflect)
        perm = tuple(other.perm[self.perm[i]] for i in range(3))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(3))
        return Ortho(3, perm=perm, signs=signs)

    def inverse(self):
        if self.dim == 2:
            if self.reflect:
                return Ortho(2, self.rot, True)
            return Ortho(2, -self.rot % 12, False)
        perm = [0, 0, 0]
        signs = [1, 1, 1]
        for i in range(3):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return Ortho(3, perm=tuple(perm), signs=tuple(signs))

    def is_axis_aligned(self):
        """True when the map sends axis directions to axis directions."""
        if self.dim == 3:
            return True
        return self.rot % 3 == 0

    def key(self):
        if self.dim == 2:
            return (2, self.rot, self.reflect)
        return (3, self.perm, self.signs)

    def __eq__(self, other):
        return isinstance(other, Ortho) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.dim == 2:
            return "Ortho2(rot=%d%s)" % (self.rot * 30, ",reflect" if self.reflect else "")
        return "Ortho3(perm=%r, signs=%r)" % (self.perm, self.signs)


class Similarity:
    """p -> scale * O(p) + t with positive exact scale."""

    __slots__ = ("scale", "ortho", "trans")

    def __init__(self, scale, ortho, trans):
        self.scale = coord(scale)
        if self.scale.sign() <= 0:
            raise ValueError("scale must be positive")
        self.ortho = ortho
        self.trans = tuple(coord(t) for t in trans)
        if len(self.trans) != ortho.dim:
            raise ValueError("translation arity does not match dimension")

    @staticmethod
    def identity(dim):
        return Similarity(ONE, Ortho.identity(dim), (ZERO,) * dim)

    @property
    def dim(self):
        return self.ortho.dim

    def apply(self, p):
        q = self.ortho.apply(p)
        return tuple(self.scale * q[i] + self.trans[i] for i in range(self.dim))

    def compose(self, other):
        """self o other: apply other first, then self."""
        return Similarity(self.scale * other.scale,
                          self.ortho.compose(other.ortho),
                          self.apply(other.trans))

    def inverse(self):
        inv_o = self.ortho.inverse()
        inv_s = self.scale.inverse()
        shifted = inv_o.apply(tuple(-t for t in self.trans))
        return Similarity(inv_s, inv_o, tuple(inv_s * v for v in shifted))

    def key(self):
        return (self.scale, self.ortho.key(), self.trans)

    def __eq__(self, other):
        return isinstance(other, Similarity) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Similarity(scale=%r, %r, trans=%r)" % (self.scale, self.ortho, self.trans)

    def matrix(self):
        """Linear part as a dim x dim list of Coord entries (scale included)."""
        d = self.dim
        cols = []
        basis = []
        for j in range(d):
            e = tuple(ONE if i == j else ZERO for i in range(d))
            basis.append(e)
        for e in basis:
            img = self.ortho.apply(e)
            cols.append(tuple(self.scale * v for v in img))
        return [tuple(cols[j][i] for j in range(d)) for i in range(d)]


def fixed_point(sim):
    """Exact fixed point of a contracting similarity (solve (I - A) p = t)."""
    d = sim.dim
    a = sim.matrix()
    m = [[(ONE if i == j else ZERO) - a[i][j] for j in range(d)] for i in range(d)]
    rhs = list(sim.trans)
    # Gaussian elimination over the exact field
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col].sign() != 0), None)
        if piv is None:
            raise ValueError("similarity is not contracting (singular I - A)")
        m[col], m[piv] = m[piv], m[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = m[col][col].inverse()
        m[col] = [v * inv for v in m[col]]
        rhs[col] = rhs[col] * inv
        for r in range(d):
            if r != col and m[r][col].sign() != 0:
                f = m[r][col]
                m[r] = [m[r][j] - f * m[col][j] for j in range(d)]
                rhs[r] = rhs[r] - f * rhs[col]
    return tuple(rhs)


# rotation parsing/formatting for rule files ---------------------------------

_AXES = "xyz"


def parse_rot(text, dim):
    """2D: degrees (multiple of 30).  3D: signed axis triple like `-y,x,z`."""
    if dim == 2:
        deg = int(text)
        if deg % 30 != 0:
            raise ValueError("2D rotation must be a multiple of 30 degrees")
        return (deg // 30) % 12
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("3D rotation must be three signed axes, e.g. -y,x,z")
    perm, signs = [], []
    for part in parts:
        part = part.strip()
        sign = 1
        if part[0] in "+-":
            sign = -1 if part[0] == "-" else 1
            part = part[1:]
        if part not in _AXES:
            raise ValueError("bad axis %r" % part)
        perm.append(_AXES.index(part))
        signs.append(sign)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError("3D rotation must use each axis exactly once")
    return tuple(perm), tuple(signs)


def format_rot(ortho):
    if ortho.dim == 2:
        return str(ortho.rot * 30)
    out = []
    for i in range(3):
        out.append(("-" if ortho.signs[i] < 0 else "") + _AXES[ortho.perm[i]])
    return ",".join(out)
