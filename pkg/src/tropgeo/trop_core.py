"""Exact max-plus plane curves.

Everything here is exact: coefficients are `fractions.Fraction`, convex
hulls are computed with integer predicates after clearing denominators,
and all outputs are deterministically ordered so results are
reproducible bit for bit.

The central objects:

* ``Support``   -- a finite set of lattice points modulo translation.
* ``TropPoly``  -- a max-plus polynomial with fixed support.
* ``NewtonSubdivision`` -- the regular subdivision of the Newton polygon
  induced by the coefficients (upper hull of the lifted points).
* ``DualComplex`` -- the plane curve, cell-dual to the subdivision.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Q = Fraction

Point = tuple[Fraction, Fraction]
LPoint = tuple[int, int]


def frac(x) -> Fraction:
    """Coerce ints, strings like '11/2' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def point(x, y) -> Point:
    return (frac(x), frac(y))


# ---------------------------------------------------------------------------
# small exact lattice/plane geometry helpers


def cross(o, a, b):
    """Orientation of the triangle o-a-b (positive = counterclockwise)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(pts):
    """Counterclockwise hull vertices (Andrew monotone chain), exact."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all collinear: keep the two extreme points
        return [pts[0], pts[-1]]
    return hull


def area2(pts) -> Fraction:
    """Doubled area of the convex hull of ``pts`` (0 for dim < 2)."""
    hull = convex_hull(pts)
    if len(hull) < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        s += a[0] * b[1] - a[1] * b[0]
    return abs(s)


def primitive(v) -> LPoint:
    g = gcd(int(v[0]), int(v[1]))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (int(v[0]) // g, int(v[1]) // g)


def lattice_length(a, b) -> int:
    """Number of lattice steps from a to b (gcd of coordinate gaps)."""
    return gcd(abs(int(b[0]) - int(a[0])), abs(int(b[1]) - int(a[1])))


def on_segment(p, a, b) -> bool:
    if cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def in_convex_polygon(p, hull) -> bool:
    """Point in the (closed) convex polygon given by ccw hull vertices."""
    if len(hull) == 1:
        return tuple(p) == tuple(hull[0])
    if len(hull) == 2:
        return on_segment(p, hull[0], hull[1])
    for i in range(len(hull)):
        if cross(hull[i], hull[(i + 1) % len(hull)], p) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# supports


_NAMED_SUPPORTS = {
    "line": ((0, 0), (1, 0), (0, 1)),
    "vertical": ((0, 0), (1, 0)),
    "horizontal": ((0, 0), (0, 1)),
    "pencil": ((1, 0), (0, 1)),
}


class Support:
    """Finite subset of Z^2 modulo translation.

    Stored normalized: the componentwise minimum is translated to the
    origin, points sorted lexicographically.  Two supports are equal iff
    their normalized forms coincide.
    """

    __slots__ = ("points",)

    def __init__(self, pts):
        pts = {(int(p[0]), int(p[1])) for p in pts}
        if not pts:
            raise ValueError("support must be nonempty")
        mx = min(p[0] for p in pts)
        my = min(p[1] for p in pts)
        self.points: tuple[LPoint, ...] = tuple(sorted((p[0] - mx, p[1] - my) for p in pts))

    @staticmethod
    def named(name: str) -> "Support":
        name = name.strip()
        if name in _NAMED_SUPPORTS:
            return Support(_NAMED_SUPPORTS[name])
        if name == "conic":
            return Support.degree(2)
        if name == "cubic":
            return Support.degree(3)
        m = re.fullmatch(r"degree\((\d+)\)", name)
        if m:
            return Support.degree(int(m.group(1)))
        raise ValueError(f"unknown support name {name!r}")

    @staticmethod
    def degree(d: int) -> "Support":
        return Support((i, j) for i in range(d + 1) for j in range(d + 1 - i))

    def delta(self) -> int:
        return len(self.points)

    def newton_polygon(self):
        return convex_hull(self.points)

    def __eq__(self, other):
        return isinstance(other, Support) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"Support({list(self.points)})"

    def to_json(self):
        return [list(p) for p in self.points]


SUPPORT_LINE = Support.named("line")
SUPPORT_CONIC = Support.named("conic")
SUPPORT_CUBIC = Support.named("cubic")


# ---------------------------------------------------------------------------
# tropical polynomials


_TERM_RE = re.compile(
    r"^\s*(?:\((?P<pc>-?\d+(?:/\d+)?)\)|(?P<c>-?\d+(?:/\d+)?))?\s*(?P<mon>(?:[xy](?:\^\d+)?\s*)*)\s*$"
)


def _parse_monomial(s: str) -> LPoint:
    i = j = 0
    for var, exp in re.findall(r"([xy])(?:\^(\d+))?", s):
        e = int(exp) if exp else 1
        if var == "x":
            i += e
        else:
            j += e
    return (i, j)


class TropPoly:
    """Max-plus polynomial: evaluation at p is max_i(coeff_i + i.p)."""

    __slots__ = ("support", "coeffs")

    def __init__(self, support: Support, coeffs):
        self.support = support
        if isinstance(coeffs, dict):
            norm = _normalize_coeff_keys(support, coeffs)
            self.coeffs = tuple(frac(norm[p]) for p in support.points)
        else:
            coeffs = tuple(frac(c) for c in coeffs)
            if len(coeffs) != support.delta():
                raise ValueError("one coefficient per support point required")
            self.coeffs = coeffs

    @staticmethod
    def parse(text: str) -> "TropPoly":
        """Parse text like ``"(-11) + 2x + 2y + 2xy + 0x^2 + 0y^2"``."""
        text = text.replace("−", "-").replace("**", "^").strip()
        if not text:
            raise ValueError("empty tropical polynomial")
        terms = {}
        for raw in text.split("+"):
            m = _TERM_RE.match(raw)
            if not m or (m.group("pc") is None and m.group("c") is None and not m.group("mon").strip()):
                raise ValueError(f"cannot parse tropical term {raw!r}")
            cs = m.group("pc") or m.group("c")
            coeff = frac(cs) if cs is not None else Fraction(0)
            mono = _parse_monomial(m.group("mon"))
            if mono in terms:
                raise ValueError(f"repeated monomial x^{mono[0]}y^{mono[1]}")
            terms[mono] = coeff
        return TropPoly(Support(terms.keys()), terms)

    def coeff(self, pt) -> Fraction:
        return self.coeffs[self.support.points.index((int(pt[0]), int(pt[1])))]

    def coeff_map(self) -> dict:
        return dict(zip(self.support.points, self.coeffs))

    def eval(self, p: Point):
        """Value and argmax set at p; p is on the curve iff len(argmax) >= 2."""
        px, py = frac(p[0]), frac(p[1])
        best = None
        arg = []
        for pt, c in zip(self.support.points, self.coeffs):
            v = c + pt[0] * px + pt[1] * py
            if best is None or v > best:
                best, arg = v, [pt]
            elif v == best:
                arg.append(pt)
        return best, tuple(arg)

    def on_curve(self, p: Point) -> bool:
        return len(self.eval(p)[1]) >= 2

    def scale(self, c) -> "TropPoly":
        c = frac(c)
        return TropPoly(self.support, tuple(a + c for a in self.coeffs))

    def normalized(self) -> "TropPoly":
        """Tropical-scaling normal form: first coefficient shifted to 0."""
        return self.scale(-self.coeffs[0])

    def same_curve(self, other: "TropPoly") -> bool:
        """Same support and same curve: concave canonical forms agree up
        to adding a constant."""
        if self.support != other.support:
            return False
        a = concave_canonical(self).normalized()
        b = concave_canonical(other).normalized()
        return a.coeffs == b.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, TropPoly)
            and self.support == other.support
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.support, self.coeffs))

    def __str__(self):
        parts = []
        for pt, c in zip(self.support.points, self.coeffs):
            cs = str(c)
            if c < 0 or c.denominator != 1:
                cs = f"({cs})"
            mono = ""
            if pt[0]:
                mono += " x" if pt[0] == 1 else f" x^{pt[0]}"
            if pt[1]:
                mono += " y" if pt[1] == 1 else f" y^{pt[1]}"
            parts.append(cs + mono)
        return " + ".join(parts)

    def __repr__(self):
        return f"TropPoly({self})"

    def to_json(self):
        return {
            "support": self.support.to_json(),
            "coeffs": [str(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj) -> "TropPoly":
        sup = Support(tuple(map(tuple, obj["support"])))
        # json order must match the normalized support order after translation
        mx = min(p[0] for p in map(tuple, obj["support"]))
        my = min(p[1] for p in map(tuple, obj["support"]))
        cmap = {
            (int(p[0]) - mx, int(p[1]) - my): frac(c)
            for p, c in zip(obj["support"], obj["coeffs"])
        }
        return TropPoly(sup, cmap)


def _normalize_coeff_keys(support: Support, coeffs: dict):
    keys = {(int(k[0]), int(k[1])) for k in coeffs}
    mx = min(k[0] for k in keys)
    my = min(k[1] for k in keys)
    norm = {(int(k[0]) - mx, int(k[1]) - my): v for k, v in coeffs.items()}
    if set(norm) != set(support.points):
        raise ValueError("coefficient keys do not match the support")
    return norm


# ---------------------------------------------------------------------------
# regular subdivisions (upper hull of the lifted support)


@dataclass(frozen=True)
class Cell:
    """A cell of the Newton subdivision.

    ``on_points`` are the support points lying on the lifted face (these
    are the argmax set at the dual cell); ``hull`` is the ccw boundary of
    the cell in the plane.  For 2-cells ``dual_vertex`` is the vertex of
    the curve dual to the cell.
    """

    dim: int
    on_points: tuple[LPoint, ...]
    hull: tuple[LPoint, ...]
    dual_vertex: Point | None = None


@dataclass(frozen=True)
class SubdivEdge:
    """A 1-cell: endpoints, support points lying on it, incident 2-cells."""

    ends: tuple[LPoint, LPoint]
    on_points: tuple[LPoint, ...]
    facets: tuple[int, ...]  # indices into NewtonSubdivision.facets


@dataclass
class NewtonSubdivision:
    support: Support
    heights: tuple[Fraction, ...]
    facets: list[Cell]          # maximal cells, lex-sorted by on_points
    edges: list[SubdivEdge]     # 1-cells, lex-sorted by ends
    vertices: list[LPoint]      # 0-cells

    def cells(self):
        """All cells as (dimension, vertex set), deterministic order."""
        out = [(2, c.on_points) for c in self.facets]
        out += [(1, e.on_points) for e in self.edges]
        out += [(0, (v,)) for v in self.vertices]
        return out


def _upper_facets_2d(pts, hts):
    """Upper-hull facets of lifted points, by exhaustive plane search.

    Returns list of (on_point_indices, normal) with normal (nx, ny, nz),
    nz > 0, such that the facet plane in the original height scale is
    dot((nx,ny,nz), (x,y,h)) == const and every lifted point lies on or
    below it.  Denominators are cleared first so all predicates are
    integer; the returned nz is rescaled back to the original heights.
    """
    den = 1
    for h in hts:
        den = den * h.denominator // gcd(den, h.denominator)
    P = [(p[0], p[1], int(h * den)) for p, h in zip(pts, hts)]
    n = len(P)
    facets = {}
    for i in range(n):
        for j in range(i + 1, n):
            dx1 = (P[j][0] - P[i][0], P[j][1] - P[i][1], P[j][2] - P[i][2])
            for k in range(j + 1, n):
                dx2 = (P[k][0] - P[i][0], P[k][1] - P[i][1], P[k][2] - P[i][2])
                nz = dx1[0] * dx2[1] - dx1[1] * dx2[0]
                if nz == 0:
                    continue
                nx = dx1[1] * dx2[2] - dx1[2] * dx2[1]
                ny = dx1[2] * dx2[0] - dx1[0] * dx2[2]
                if nz < 0:
                    nx, ny, nz = -nx, -ny, -nz
                base = nx * P[i][0] + ny * P[i][1] + nz * P[i][2]
                ok = True
                on = []
                for m in range(n):
                    s = nx * P[m][0] + ny * P[m][1] + nz * P[m][2] - base
                    if s > 0:
                        ok = False
                        break
                    if s == 0:
                        on.append(m)
                if ok:
                    # scaled heights were den*h, so the true normal is
                    # (nx, ny, nz*den)
                    facets[frozenset(on)] = (tuple(sorted(on)), (nx, ny, nz * den))
    return sorted(facets.values())


def _upper_chain_1d(pts, hts):
    """Upper hull for supports whose points are collinear.

    Returns the list of 1-cells as (on_point_indices,) tuples, in order
    along the segment.
    """
    d = primitive((pts[-1][0] - pts[0][0], pts[-1][1] - pts[0][1]))
    base = pts[0]
    params = [(p[0] - base[0]) * d[0] + (p[1] - base[1]) * d[1] for p in pts]
    order = sorted(range(len(pts)), key=lambda i: params[i])
    # 2d upper hull of (t, h)
    chain = []
    for idx in order:
        p2 = (Fraction(params[idx]), hts[idx])
        while len(chain) >= 2 and cross(chain[-2][0], chain[-1][0], p2) >= 0:
            chain.pop()
        chain.append((p2, idx))
    cells = []
    for a in range(len(chain) - 1):
        t0, t1 = chain[a][0][0], chain[a + 1][0][0]
        # all points on the chord between consecutive hull vertices
        on = [
            i
            for i in order
            if t0 <= params[i] <= t1 and cross(chain[a][0], chain[a + 1][0], (Fraction(params[i]), hts[i])) == 0
        ]
        cells.append(tuple(sorted(on)))
    return cells


def dual_subdivision(f: TropPoly) -> NewtonSubdivision:
    """Regular subdivision of the Newton polygon induced by the coefficients."""
    pts = list(f.support.points)
    hts = list(f.coeffs)
    if len(pts) == 1:
        return NewtonSubdivision(f.support, tuple(hts), [], [], [pts[0]])
    hull = convex_hull(pts)
    if len(hull) == 2:  # collinear support: subdivision of a segment
        chain = _upper_chain_1d(pts, hts)
        edges = []
        verts = set()
        for on in chain:
            ends = (pts[on[0]], pts[on[-1]])
            edges.append(SubdivEdge(ends=ends, on_points=tuple(pts[i] for i in on), facets=()))
            verts.update(ends)
        edges.sort(key=lambda e: e.ends)
        return NewtonSubdivision(f.support, tuple(hts), [], edges, sorted(verts))

    raw = _upper_facets_2d(pts, hts)
    facets = []
    for on_idx, (nx, ny, nz) in raw:
        on = tuple(pts[i] for i in on_idx)
        fh = convex_hull(on)
        dv = (Fraction(nx, nz), Fraction(ny, nz))
        facets.append(Cell(dim=2, on_points=on, hull=tuple(fh), dual_vertex=dv))
    facets.sort(key=lambda c: c.on_points)

    # 1-cells: maximal boundary segments of facets, shared facets recorded
    edge_map: dict[tuple[LPoint, LPoint], dict] = {}
    for fi, c in enumerate(facets):
        h = c.hull
        for a in range(len(h)):
            p0, p1 = h[a], h[(a + 1) % len(h)]
            key = tuple(sorted((p0, p1)))
            rec = edge_map.setdefault(key, {"facets": set(), "on": None})
            rec["facets"].add(fi)
            if rec["on"] is None:
                rec["on"] = tuple(sorted(p for p in c.on_points if on_segment(p, p0, p1)))
    edges = [
        SubdivEdge(ends=key, on_points=rec["on"], facets=tuple(sorted(rec["facets"])))
        for key, rec in sorted(edge_map.items())
    ]
    verts = sorted({e.ends[0] for e in edges} | {e.ends[1] for e in edges})
    return NewtonSubdivision(f.support, tuple(hts), facets, edges, verts)


# ---------------------------------------------------------------------------
# the dual curve


@dataclass(frozen=True)
class CurveEdge:
    """PL edge of a tropical curve.

    Parametrized as base + t*dir with t in [0, length]; ``length`` is
    None for rays and ``kind`` is "segment", "ray" or "line" (lines are
    unbounded both ways; they occur for collinear supports).
    """

    base: Point
    dir: LPoint
    length: Fraction | None
    weight: int
    dual: tuple[LPoint, LPoint]
    kind: str = "segment"

    def second_point(self) -> Point:
        t = self.length if self.kind == "segment" else Fraction(1)
        return (self.base[0] + t * self.dir[0], self.base[1] + t * self.dir[1])


@dataclass
class DualComplex:
    vertices: list[Point]       # dual vertices of the maximal cells, same order
    edges: list[CurveEdge]
    subdivision: NewtonSubdivision


def _outward_normal(hull, p0, p1) -> LPoint:
    d = primitive((p1[0] - p0[0], p1[1] - p0[1]))
    n = (d[1], -d[0])
    for q in hull:
        s = (q[0] - p0[0]) * n[0] + (q[1] - p0[1]) * n[1]
        if s > 0:
            n = (-n[0], -n[1])
            break
        if s < 0:
            break
    return n


def curve(f: TropPoly) -> DualComplex:
    """The tropical curve of f as a PL complex, dual to the subdivision."""
    sub = dual_subdivision(f)
    pts = f.support.points
    if len(pts) == 1:
        return DualComplex([], [], sub)
    hull = convex_hull(pts)
    edges: list[CurveEdge] = []

    if not sub.facets:  # collinear support: curve is a family of lines
        cmap = f.coeff_map()
        for e in sub.edges:
            i, j = e.ends
            w = lattice_length(i, j)
            d = primitive((j[0] - i[0], j[1] - i[1]))
            # points p with a_i + i.p == a_j + j.p: (i-j).p = a_j - a_i
            rhs = cmap[j] - cmap[i]
            u = (i[0] - j[0], i[1] - j[1])
            if u[0] != 0:
                base = (Fraction(rhs, u[0]), Fraction(0))
            else:
                base = (Fraction(0), Fraction(rhs, u[1]))
            ldir = primitive((-u[1], u[0]))
            edges.append(
                CurveEdge(base=base, dir=ldir, length=None, weight=w, dual=e.ends, kind="line")
            )
        edges.sort(key=lambda e: (e.dual, e.base))
        return DualComplex([], edges, sub)

    verts = [c.dual_vertex for c in sub.facets]
    for e in sub.edges:
        w = lattice_length(*e.ends)
        if len(e.facets) == 2:
            a, b = verts[e.facets[0]], verts[e.facets[1]]
            if a == b:
                raise AssertionError("adjacent cells share a dual vertex")
            # the edge direction is the 90-degree rotation of its dual
            # subdivision edge (an integer vector); b - a is parallel to it
            d = primitive((e.ends[0][1] - e.ends[1][1], e.ends[1][0] - e.ends[0][0]))
            if d[0] * (b[0] - a[0]) + d[1] * (b[1] - a[1]) < 0:
                d = (-d[0], -d[1])
            if d[1] * (b[0] - a[0]) - d[0] * (b[1] - a[1]) != 0:
                raise AssertionError("dual edge direction mismatch")
            t = (b[0] - a[0]) / d[0] if d[0] else (b[1] - a[1]) / d[1]
            edges.append(CurveEdge(base=a, dir=d, length=t, weight=w, dual=e.ends))
        else:
            v = verts[e.facets[0]]
            n = _outward_normal(hull, *e.ends)
            edges.append(CurveEdge(base=v, dir=n, length=None, weight=w, dual=e.ends, kind="ray"))
    edges.sort(key=lambda e: (e.dual, e.base))
    return DualComplex(verts, edges, sub)


# ---------------------------------------------------------------------------
# canonical concave representative and mixed volume


def concave_canonical(f: TropPoly) -> TropPoly:
    """Raise every coefficient to the upper hull of the lifted support.

    The result is the unique concave polynomial with the same support and
    the same curve; the operation is idempotent.
    """
    pts = f.support.points
    hts = f.coeffs
    if len(pts) == 1:
        return f
    hull = convex_hull(pts)
    new = []
    if len(hull) == 2:
        d = primitive((hull[1][0] - hull[0][0], hull[1][1] - hull[0][1]))
        params = [(p[0] - hull[0][0]) * d[0] + (p[1] - hull[0][1]) * d[1] for p in pts]
        lifted = sorted(zip(params, hts))
        chain = []
        for t, h in lifted:
            p2 = (Fraction(t), h)
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p2) >= 0:
                chain.pop()
            chain.append(p2)
        for t in params:
            val = None
            for a in range(len(chain) - 1):
                (t0, h0), (t1, h1) = chain[a], chain[a + 1]
                if t0 <= t <= t1:
                    val = h0 + (h1 - h0) * (Fraction(t) - t0) / (t1 - t0)
                    break
            new.append(val)
        return TropPoly(f.support, tuple(new))

    raw = _upper_facets_2d(list(pts), list(hts))
    planes = []
    for on_idx, (nx, ny, nz) in raw:
        i0 = on_idx[0]
        c = nx * pts[i0][0] + ny * pts[i0][1] + nz * hts[i0]
        planes.append((Fraction(nx), Fraction(ny), Fraction(nz), c))
    for p in pts:
        # the concave envelope is the min over the upper facet planes
        val = min((c - nx * p[0] - ny * p[1]) / nz for nx, ny, nz, c in planes)
        new.append(val)
    return TropPoly(f.support, tuple(new))


def minkowski_sum_points(a, b):
    return sorted({(p[0] + q[0], p[1] + q[1]) for p in a for q in b})


def mixed_volume(d1: Support, d2: Support) -> int:
    """area(D1+D2) - area(D1) - area(D2); the Bernstein intersection count."""
    s = minkowski_sum_points(d1.points, d2.points)
    m2 = area2(s) - area2(d1.points) - area2(d2.points)
    if m2 % 2 != 0:
        raise AssertionError("mixed volume must be an integer")
    return int(m2 // 2)


def to_projective(p: Point):
    return (p[0], p[1], Fraction(0))


def tropical_poly_json(f: TropPoly) -> str:
    return json.dumps(f.to_json(), sort_keys=True)
