"""Closed-form model metric spaces.

Each space in the catalog carries exact or closed-form distance, geodesics
(segments, rays, straight lines), midpoints, and ideal boundary points:

* ``Euclidean(dim)``          - R^dim with the Euclidean norm
* ``MinkowskiLp(p)``          - the plane with the l_p norm, 1 < p < oo
* ``MinkowskiLinf()``         - the plane with the sup norm (negative tests only)
* ``HyperbolicPlane()``       - upper half-plane model of H^2
* ``MetricTree(desc)``        - finite metric tree, exact rational arithmetic,
                                optional infinite rays glued at designated vertices
* ``SphereIntrinsic(r, dim)`` - round sphere of radius r in R^dim, angular metric
* ``RealLine()``              - the real line
* ``MaxProduct(left, right)`` - product with the maximum metric (distance only)

Tree points and distances are exact ``Fraction`` values; every other model
works in 64-bit floats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .numeric import golden_min

INF = math.inf

Number = Union[int, float, Fraction]


class SpaceError(ValueError):
    """Point/space mismatch or otherwise invalid geometric input."""


class DegenerateError(SpaceError):
    """A geodesic was requested between coincident points or equal ideal points."""


class AmbiguousError(SpaceError):
    """The requested geodesic is not unique (antipodal sphere points)."""


class PreconditionError(SpaceError):
    """A stated precondition of a construction does not hold."""


class ConvergenceError(RuntimeError):
    """An iterative limit did not stabilize within its truncation cap."""


# ---------------------------------------------------------------------------
# vector helpers (plain tuples, no external deps)

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(a, s):
    return tuple(x * s for x in a)


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def enorm(a):
    return math.sqrt(sum(float(x) * float(x) for x in a))


def pnorm(a, p):
    return sum(abs(float(x)) ** p for x in a) ** (1.0 / p)


def supnorm(a):
    return max(abs(float(x)) for x in a)


def _as_fraction(t: Number) -> Fraction:
    # Fraction(float) is the exact binary value of the float, so tree
    # arithmetic stays exact whatever the caller passes.
    if isinstance(t, Fraction):
        return t
    return Fraction(t)


# ---------------------------------------------------------------------------
# tree description

@dataclass(frozen=True)
class TreeDesc:
    """Finite metric tree: vertex ids, weighted edges, a common denominator
    bound for edge lengths, and optional vertices carrying an infinite ray
    (the tree's ends, used for ideal points)."""

    vertices: tuple
    edges: tuple            # (u, v, Fraction length)
    denominator_bound: int
    ends: tuple = ()

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise SpaceError("duplicate vertex ids")
        if len(self.edges) != len(self.vertices) - 1:
            raise SpaceError("edge count must be vertex count - 1 for a tree")
        n = self.denominator_bound
        if n < 1:
            raise SpaceError("denominator bound must be positive")
        adj = {v: [] for v in self.vertices}
        for (u, v, ln) in self.edges:
            if u not in vs or v not in vs:
                raise SpaceError(f"edge endpoint not a vertex: {(u, v)}")
            if not isinstance(ln, Fraction) or ln <= 0:
                raise SpaceError(f"edge length must be a positive Fraction: {ln}")
            if n % ln.denominator != 0:
                raise SpaceError(f"edge length {ln} has denominator not dividing {n}")
            adj[u].append(v)
            adj[v].append(u)
        # connectivity (acyclicity follows from the edge count)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != vs:
            raise SpaceError("edge set is not connected")
        for e in self.ends:
            if e not in vs:
                raise SpaceError(f"end anchor {e} is not a vertex")

    @staticmethod
    def from_json(source) -> "TreeDesc":
        """Load from a JSON file path, file object, or already-parsed dict.

        Schema: {"vertices": [...], "edges": [[u, v, "num/den"], ...],
        "denominator_bound": n} plus an optional "ends": [vertex, ...].
        """
        if isinstance(source, dict):
            data = source
        elif hasattr(source, "read"):
            data = json.load(source)
        else:
            with open(source, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        edges = tuple(
            (u, v, Fraction(str(ln))) for (u, v, ln) in data["edges"]
        )
        return TreeDesc(
            vertices=tuple(data["vertices"]),
            edges=edges,
            denominator_bound=int(data["denominator_bound"]),
            ends=tuple(data.get("ends", ())),
        )

    def to_json(self) -> dict:
        out = {
            "vertices": list(self.vertices),
            "edges": [[u, v, str(ln)] for (u, v, ln) in self.edges],
            "denominator_bound": self.denominator_bound,
        }
        if self.ends:
            out["ends"] = list(self.ends)
        return out


# ---------------------------------------------------------------------------
# space models

@dataclass(frozen=True)
class Euclidean:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise SpaceError("dimension must be positive")

    def norm(self, v):
        return enorm(v)


@dataclass(frozen=True)
class MinkowskiLp:
    """The plane with the l_p norm; 1 < p < oo keeps the norm strictly convex."""

    p: float
    dim: int = 2

    def __post_init__(self):
        if not (1.0 < self.p < INF):
            raise SpaceError("MinkowskiLp requires 1 < p < oo")

    def norm(self, v):
        return pnorm(v, self.p)


@dataclass(frozen=True)
class MinkowskiLinf:
    """Sup-norm plane. Not strictly convex; admitted only to produce
    convexity-violation witnesses and excluded from Busemann suites."""

    dim: int = 2

    def norm(self, v):
        return supnorm(v)


@dataclass(frozen=True)
class HyperbolicPlane:
    pass


@dataclass(frozen=True)
class SphereIntrinsic:
    radius: float
    dim: int  # ambient dimension; points are unit vectors in R^dim

    def __post_init__(self):
        if self.radius <= 0:
            raise SpaceError("radius must be positive")
        if self.dim < 2:
            raise SpaceError("ambient dimension must be >= 2")


@dataclass(frozen=True)
class RealLine:
    pass


@dataclass(frozen=True)
class MetricTree:
    desc: TreeDesc

    # caches keyed by the (immutable) desc; not part of equality
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def _tables(self):
        if "dist" not in self._cache:
            adj = {v: [] for v in self.desc.vertices}
            edge_of = {}
            for i, (u, v, ln) in enumerate(self.desc.edges):
                adj[u].append((v, ln))
                adj[v].append((u, ln))
                edge_of[(u, v)] = i
                edge_of[(v, u)] = i
            dist = {}
            nxt = {}
            for src in self.desc.vertices:
                dist[src] = {src: Fraction(0)}
                nxt[src] = {src: src}
                stack = [src]
                while stack:
                    cur = stack.pop()
                    for (w, ln) in adj[cur]:
                        if w not in dist[src]:
                            dist[src][w] = dist[src][cur] + ln
                            nxt[src][w] = w if cur == src else nxt[src][cur]
                            stack.append(w)
            self._cache["dist"] = dist
            self._cache["nxt"] = nxt
            self._cache["edge_of"] = edge_of
            self._cache["total"] = sum(ln for (_, _, ln) in self.desc.edges)
        return self._cache

    @property
    def vdist(self):
        return self._tables()["dist"]

    @property
    def vnext(self):
        return self._tables()["nxt"]

    @property
    def edge_index(self):
        return self._tables()["edge_of"]

    @property
    def total_length(self) -> Fraction:
        return self._tables()["total"]


@dataclass(frozen=True)
class MaxProduct:
    left: object
    right: object

    def __post_init__(self):
        def depth(s):
            if isinstance(s, MaxProduct):
                return 1 + max(depth(s.left), depth(s.right))
            return 0
        if depth(self) > 2:
            raise SpaceError("MaxProduct nesting depth exceeds 2")


FLAT_KINDS = (Euclidean, MinkowskiLp, MinkowskiLinf)


# ---------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class Point:
    """Space-tagged coordinates. Tree coordinates are canonical tagged tuples:
    ('v', vertex), ('e', edge_index, offset) with 0 < offset < length, or
    ('r', end, offset) with offset > 0 on the infinite ray at an end."""

    space: object
    coords: object

    def __post_init__(self):
        _validate_coords(self.space, self.coords)


def _validate_coords(space, c):
    if isinstance(space, FLAT_KINDS):
        if not (isinstance(c, tuple) and len(c) == space.dim):
            raise SpaceError(f"expected {space.dim}-tuple of reals, got {c!r}")
    elif isinstance(space, HyperbolicPlane):
        if not (isinstance(c, tuple) and len(c) == 2 and c[1] > 0):
            raise SpaceError(f"upper half-plane point needs y > 0, got {c!r}")
    elif isinstance(space, RealLine):
        if isinstance(c, tuple):
            raise SpaceError("real-line point is a single number")
    elif isinstance(space, SphereIntrinsic):
        if not (isinstance(c, tuple) and len(c) == space.dim):
            raise SpaceError(f"expected direction in R^{space.dim}")
        if abs(enorm(c) - 1.0) > 1e-12:
            raise SpaceError(f"sphere direction must be unit within 1e-12: {c!r}")
    elif isinstance(space, MetricTree):
        _validate_tree_coords(space, c)
    elif isinstance(space, MaxProduct):
        if not (isinstance(c, tuple) and len(c) == 2):
            raise SpaceError("max-product point is a pair of component coords")
        _validate_coords(space.left, c[0])
        _validate_coords(space.right, c[1])
    else:
        raise SpaceError(f"unknown space {space!r}")


def _validate_tree_coords(space, c):
    desc = space.desc
    if not (isinstance(c, tuple) and c and c[0] in ("v", "e", "r")):
        raise SpaceError(f"bad tree coords {c!r}")
    if c[0] == "v":
        if c[1] not in desc.vertices:
            raise SpaceError(f"unknown vertex {c[1]!r}")
    elif c[0] == "e":
        _, idx, off = c
        if not (0 <= idx < len(desc.edges)):
            raise SpaceError(f"edge index {idx} out of range")
        ln = desc.edges[idx][2]
        if not isinstance(off, Fraction) or not (0 < off < ln):
            raise SpaceError(f"edge offset must be a Fraction in (0, {ln}): {off!r}")
    else:
        _, end, off = c
        if end not in desc.ends:
            raise SpaceError(f"{end!r} is not a declared end")
        if not isinstance(off, Fraction) or off <= 0:
            raise SpaceError(f"ray offset must be a positive Fraction: {off!r}")


def point(space, coords) -> Point:
    """Convenience constructor; flat/sphere coords given as any iterable."""
    if isinstance(space, FLAT_KINDS + (SphereIntrinsic, HyperbolicPlane)):
        coords = tuple(float(x) for x in coords)
    elif isinstance(space, RealLine):
        coords = float(coords)
    return Point(space, coords)


def tree_vertex(space: MetricTree, vid) -> Point:
    return Point(space, ("v", vid))


def tree_edge_point(space: MetricTree, edge_index: int, offset: Number) -> Point:
    """Point on an edge at `offset` from the edge's first vertex; snaps the
    endpoints to vertices so coordinates stay canonical."""
    off = _as_fraction(offset)
    u, v, ln = space.desc.edges[edge_index]
    if off == 0:
        return tree_vertex(space, u)
    if off == ln:
        return tree_vertex(space, v)
    return Point(space, ("e", edge_index, off))


def tree_ray_point(space: MetricTree, end, offset: Number) -> Point:
    off = _as_fraction(offset)
    if off == 0:
        return tree_vertex(space, end)
    return Point(space, ("r", end, off))


def sphere_point(space: SphereIntrinsic, direction) -> Point:
    n = enorm(direction)
    if n == 0:
        raise SpaceError("zero direction")
    return Point(space, tuple(float(x) / n for x in direction))


# ---------------------------------------------------------------------------
# ideal points

@dataclass(frozen=True)
class IdealPoint:
    """Canonical representation of a point of the geodesic ideal boundary.

    flat models: unit direction tuple (unit in the space's own norm);
    hyperbolic plane: boundary real or math.inf; real line: +-1.0;
    metric tree: the end's anchor-vertex id.
    """

    space: object
    rep: object

    def matches(self, other: "IdealPoint", tol: float = 1e-9) -> bool:
        if self.space != other.space:
            return False
        a, b = self.rep, other.rep
        if isinstance(self.space, MetricTree):
            return a == b
        if isinstance(a, tuple):
            return all(abs(x - y) <= tol for x, y in zip(a, b))
        if a == INF or b == INF:
            return a == b
        return abs(a - b) <= tol


def direction_ideal(space, v) -> IdealPoint:
    """Ideal point of a flat model (or the real line) from a direction vector."""
    if isinstance(space, RealLine):
        s = float(v)
        if s == 0:
            raise SpaceError("zero direction")
        return IdealPoint(space, 1.0 if s > 0 else -1.0)
    if not isinstance(space, FLAT_KINDS):
        raise SpaceError(f"direction ideal points undefined for {space!r}")
    n = space.norm(v)
    if n == 0:
        raise SpaceError("zero direction")
    return IdealPoint(space, tuple(float(x) / n for x in v))


def boundary_ideal(space: HyperbolicPlane, x) -> IdealPoint:
    """Ideal point of H^2: a boundary real or math.inf."""
    if not isinstance(space, HyperbolicPlane):
        raise SpaceError("boundary ideal points are for the hyperbolic plane")
    return IdealPoint(space, float(x))


def tree_end(space: MetricTree, end) -> IdealPoint:
    if end not in space.desc.ends:
        raise SpaceError(f"{end!r} is not a declared end")
    return IdealPoint(space, end)


# ---------------------------------------------------------------------------
# geodesics

@dataclass(frozen=True)
class GeodesicRef:
    """Unit-speed geodesic with a model-specific closed-form evaluator.

    ``kind`` is "segment", "ray", or "line"; the domain is [0, length],
    [0, oo), or all of R. ``minus``/``plus`` are the ideal endpoints of the
    unbounded ends, when defined.
    """

    space: object
    kind: str
    point_at: Callable[[Number], Point]
    length: Optional[Number] = None   # segments only
    minus: Optional[IdealPoint] = None
    plus: Optional[IdealPoint] = None

    def domain(self):
        if self.kind == "segment":
            return (0, self.length)
        if self.kind == "ray":
            return (0, INF)
        return (-INF, INF)


def _check_member(space, *pts):
    for p in pts:
        if not isinstance(p, Point) or p.space != space:
            raise SpaceError(f"point {p!r} does not belong to {space!r}")


# ---------------------------------------------------------------------------
# distance

def distance(space, x: Point, y: Point):
    """Distance in the model space; exact Fraction on trees, float elsewhere."""
    _check_member(space, x, y)
    a, b = x.coords, y.coords
    if isinstance(space, Euclidean):
        return enorm(vsub(a, b))
    if isinstance(space, MinkowskiLp):
        return pnorm(vsub(a, b), space.p)
    if isinstance(space, MinkowskiLinf):
        return supnorm(vsub(a, b))
    if isinstance(space, HyperbolicPlane):
        # stable form of arccosh(1 + |z-w|^2 / (2 Im z Im w))
        rho = math.hypot(a[0] - b[0], a[1] - b[1])
        return 2.0 * math.asinh(rho / (2.0 * math.sqrt(a[1] * b[1])))
    if isinstance(space, RealLine):
        return abs(a - b)
    if isinstance(space, SphereIntrinsic):
        c = vdot(a, b)
        s = enorm(vsub(a, vscale(b, c)))
        return space.radius * math.atan2(s, c)
    if isinstance(space, MetricTree):
        return _tree_dist(space, a, b)
    if isinstance(space, MaxProduct):
        dl = distance(space.left, Point(space.left, a[0]), Point(space.left, b[0]))
        dr = distance(space.right, Point(space.right, a[1]), Point(space.right, b[1]))
        if isinstance(dl, Fraction) and isinstance(dr, Fraction):
            return max(dl, dr)
        return max(float(dl), float(dr))
    raise SpaceError(f"unknown space {space!r}")


# ----- tree internals ------------------------------------------------------

def _tree_attachments(space: MetricTree, c):
    """(vertex, cost) pairs attaching a core point to the vertex skeleton."""
    if c[0] == "v":
        return [(c[1], Fraction(0))]
    if c[0] == "e":
        u, v, ln = space.desc.edges[c[1]]
        return [(u, c[2]), (v, ln - c[2])]
    # ray points attach through their anchor
    return [(c[1], c[2])]


def _tree_dist(space: MetricTree, a, b) -> Fraction:
    if a == b:
        return Fraction(0)
    if a[0] == "r" and b[0] == "r" and a[1] == b[1]:
        return abs(a[2] - b[2])
    if a[0] == "e" and b[0] == "e" and a[1] == b[1]:
        return abs(a[2] - b[2])
    dv = space.vdist
    best = None
    for (va, ca) in _tree_attachments(space, a):
        for (vb, cb) in _tree_attachments(space, b):
            d = ca + dv[va][vb] + cb
            if best is None or d < best:
                best = d
    return best


def _tree_route(space: MetricTree, a, b):
    """Waypoints [(cumulative Fraction, coords)] along the geodesic a -> b.

    Consecutive waypoints always lie on one edge or one end ray, so linear
    interpolation between them is well defined.
    """
    total = _tree_dist(space, a, b)
    if (a[0] == b[0] and a[0] in ("r", "e") and a[1] == b[1]) or a == b:
        return [(Fraction(0), a), (total, b)]
    dv, nxt = space.vdist, space.vnext
    best = None
    for (va, ca) in _tree_attachments(space, a):
        for (vb, cb) in _tree_attachments(space, b):
            d = ca + dv[va][vb] + cb
            if best is None or d < best[0]:
                best = (d, va, vb, ca, cb)
    _, va, vb, ca, cb = best
    pts = [(Fraction(0), a)]
    t = ca
    if a != ("v", va):
        pts.append((t, ("v", va)))
    cur = va
    while cur != vb:
        step = nxt[cur][vb]
        t += dv[cur][step]
        pts.append((t, ("v", step)))
        cur = step
    if b != ("v", vb):
        pts.append((total, b))
    return pts


def _tree_between(space: MetricTree, p, q, s: Fraction, gap: Fraction):
    """Point at distance s from p on the edge/ray piece joining p to q."""
    if s == 0:
        return p
    if s == gap:
        return q
    if p[0] == "r" or q[0] == "r":
        # same end ray (anchor counts as offset 0)
        end = p[1] if p[0] == "r" else q[1]
        op = p[2] if p[0] == "r" else Fraction(0)
        oq = q[2] if q[0] == "r" else Fraction(0)
        return ("r", end, op + (oq - op) * s / gap)
    # both on one edge; recover the edge index
    if p[0] == "e":
        idx = p[1]
    elif q[0] == "e":
        idx = q[1]
    else:
        idx = space.edge_index[(p[1], q[1])]
    u, v, ln = space.desc.edges[idx]

    def off_of(c):
        if c[0] == "e":
            return c[2]
        return Fraction(0) if c[1] == u else ln
    op, oq = off_of(p), off_of(q)
    off = op + (oq - op) * s / gap
    if off == 0:
        return ("v", u)
    if off == ln:
        return ("v", v)
    return ("e", idx, off)


def _tree_evaluator(space: MetricTree, route, *, plus_end=None, minus_end=None):
    """Evaluator over a waypoint route, extended along end rays if asked."""
    t_hi = route[-1][0]

    def at(t):
        tf = _as_fraction(t)
        if tf < 0:
            if minus_end is None:
                raise SpaceError(f"parameter {t} below domain")
            return Point(space, ("r", minus_end, -tf))
        if tf > t_hi:
            if plus_end is None:
                raise SpaceError(f"parameter {t} beyond domain")
            return Point(space, ("r", plus_end, tf - t_hi))
        for i in range(len(route) - 1):
            t0, p0 = route[i]
            t1, p1 = route[i + 1]
            if t0 <= tf <= t1:
                return Point(space, _tree_between(space, p0, p1, tf - t0, t1 - t0))
        return Point(space, route[-1][1])
    return at


# ---------------------------------------------------------------------------
# geodesic constructors

def geodesic_between(space, x: Point, y: Point) -> GeodesicRef:
    """Unit-speed minimizer with c(0) = x and c(d) = y."""
    _check_member(space, x, y)
    d = distance(space, x, y)
    if d == 0:
        raise DegenerateError("geodesic between identical points")
    if isinstance(space, FLAT_KINDS):
        u = vscale(vsub(y.coords, x.coords), 1.0 / float(d))
        x0 = x.coords

        def at(t):
            return Point(space, vadd(x0, vscale(u, float(t))))
        return GeodesicRef(space, "segment", at, length=d)
    if isinstance(space, RealLine):
        x0, sgn = x.coords, 1.0 if y.coords > x.coords else -1.0

        def at(t):
            return Point(space, x0 + sgn * float(t))
        return GeodesicRef(space, "segment", at, length=d)
    if isinstance(space, HyperbolicPlane):
        at = _hyp_segment_evaluator(x.coords, y.coords)
        return GeodesicRef(space, "segment", at, length=d)
    if isinstance(space, SphereIntrinsic):
        r = space.radius
        theta = float(d) / r
        if abs(theta - math.pi) <= 1e-12:
            raise AmbiguousError("antipodal sphere points: minimizer not unique")
        u = x.coords
        w = vsub(y.coords, vscale(u, vdot(u, y.coords)))
        wn = enorm(w)
        w = vscale(w, 1.0 / wn)

        def at(t):
            ang = float(t) / r
            return Point(space, vadd(vscale(u, math.cos(ang)), vscale(w, math.sin(ang))))
        return GeodesicRef(space, "segment", at, length=d)
    if isinstance(space, MetricTree):
        route = _tree_route(space, x.coords, y.coords)
        return GeodesicRef(space, "segment", _tree_evaluator(space, route), length=d)
    if isinstance(space, MaxProduct):
        raise SpaceError("max-product geodesics are not supported")
    raise SpaceError(f"unknown space {space!r}")


def _hyp_circle_point(m, r, tau):
    # unit-speed parameterization of the semicircle |z - m| = r; the clamp
    # keeps cosh inside double range (points merely pin to the boundary)
    tau = max(-700.0, min(700.0, tau))
    return (m + r * math.tanh(tau), r / math.cosh(tau))


def _clamp_exp(t):
    return max(-700.0, min(700.0, t))


def _hyp_segment_evaluator(a, b):
    if abs(a[0] - b[0]) < 1e-14:
        x0 = a[0]
        y0 = a[1]
        sgn = 1.0 if b[1] > a[1] else -1.0

        def at(t):
            return Point(HyperbolicPlane(), (x0, y0 * math.exp(_clamp_exp(sgn * float(t)))))
        return at
    m = (a[0] ** 2 + a[1] ** 2 - b[0] ** 2 - b[1] ** 2) / (2.0 * (a[0] - b[0]))
    r = math.hypot(a[0] - m, a[1])
    t1 = math.atanh((a[0] - m) / r)
    t2 = math.atanh((b[0] - m) / r)
    sgn = 1.0 if t2 > t1 else -1.0

    def at(t):
        return Point(HyperbolicPlane(), _hyp_circle_point(m, r, t1 + sgn * float(t)))
    return at


def ray_from(space, base: Point, xi: IdealPoint) -> GeodesicRef:
    """Unit-speed ray with c(0) = base and ideal endpoint xi."""
    _check_member(space, base)
    if xi.space != space:
        raise SpaceError("ideal point belongs to a different space")
    if isinstance(space, FLAT_KINDS):
        u, x0 = xi.rep, base.coords

        def at(t):
            return Point(space, vadd(x0, vscale(u, float(t))))
        return GeodesicRef(space, "ray", at, plus=xi)
    if isinstance(space, RealLine):
        x0, sgn = base.coords, xi.rep

        def at(t):
            return Point(space, x0 + sgn * float(t))
        return GeodesicRef(space, "ray", at, plus=xi)
    if isinstance(space, HyperbolicPlane):
        bx, by = base.coords
        if xi.rep == INF:
            def at(t):
                return Point(space, (bx, by * math.exp(_clamp_exp(float(t)))))
            return GeodesicRef(space, "ray", at, plus=xi)
        u = xi.rep
        if abs(bx - u) < 1e-14:
            def at(t):
                return Point(space, (u, by * math.exp(_clamp_exp(-float(t)))))
            return GeodesicRef(space, "ray", at, plus=xi)
        m = (bx * bx + by * by - u * u) / (2.0 * (bx - u))
        r = abs(u - m)
        t0 = math.atanh((bx - m) / r)
        sgn = 1.0 if u > m else -1.0

        def at(t):
            return Point(space, _hyp_circle_point(m, r, t0 + sgn * float(t)))
        return GeodesicRef(space, "ray", at, plus=xi)
    if isinstance(space, MetricTree):
        end = xi.rep
        anchor = ("v", end)
        c = base.coords
        if c[0] == "r" and c[1] == end:
            off = c[2]

            def at(t):
                return Point(space, ("r", end, off + _as_fraction(t)))
            return GeodesicRef(space, "ray", at, plus=xi)
        route = _tree_route(space, c, anchor)
        return GeodesicRef(
            space, "ray", _tree_evaluator(space, route, plus_end=end), plus=xi)
    raise SpaceError(f"rays are not supported for {space!r}")


def line_through(space, eta: IdealPoint, xi: IdealPoint, through: Point = None) -> GeodesicRef:
    """Unit-speed straight line with c(-oo) = eta, c(+oo) = xi.

    Flat models and the real line need an anchor point `through` = c(0)
    because the ideal pair only determines a parallel family there.
    """
    if eta.space != space or xi.space != space:
        raise SpaceError("ideal point belongs to a different space")
    if eta.matches(xi):
        raise DegenerateError("line requires distinct ideal endpoints")
    if isinstance(space, FLAT_KINDS) or isinstance(space, RealLine):
        if isinstance(space, RealLine):
            opposite = eta.rep == -xi.rep
        else:
            opposite = all(abs(a + b) <= 1e-9 for a, b in zip(eta.rep, xi.rep))
        if not opposite:
            raise SpaceError("flat lines require opposite ideal directions")
        if through is None:
            raise SpaceError("flat lines need an anchor point")
        _check_member(space, through)
        x0 = through.coords
        if isinstance(space, RealLine):
            sgn = xi.rep

            def at(t):
                return Point(space, x0 + sgn * float(t))
        else:
            u = xi.rep

            def at(t):
                return Point(space, vadd(x0, vscale(u, float(t))))
        return GeodesicRef(space, "line", at, minus=eta, plus=xi)
    if isinstance(space, HyperbolicPlane):
        if eta.rep == INF:
            u = xi.rep

            def at(t):
                return Point(space, (u, math.exp(_clamp_exp(-float(t)))))
        elif xi.rep == INF:
            u = eta.rep

            def at(t):
                return Point(space, (u, math.exp(_clamp_exp(float(t)))))
        else:
            m = (eta.rep + xi.rep) / 2.0
            r = abs(xi.rep - eta.rep) / 2.0
            sgn = 1.0 if xi.rep > eta.rep else -1.0

            def at(t):
                return Point(space, _hyp_circle_point(m, r, sgn * float(t)))
        return GeodesicRef(space, "line", at, minus=eta, plus=xi)
    if isinstance(space, MetricTree):
        end_m, end_p = eta.rep, xi.rep
        route = _tree_route(space, ("v", end_m), ("v", end_p))
        at = _tree_evaluator(space, route, plus_end=end_p, minus_end=end_m)
        return GeodesicRef(space, "line", at, minus=eta, plus=xi)
    raise SpaceError(f"lines are not supported for {space!r}")


# ---------------------------------------------------------------------------
# midpoints

def midpoint(space, x: Point, y: Point, selector: str = None) -> Point:
    """Point m with d(x,m) = d(m,y) = d(x,y)/2.

    Unique in every strictly convex catalog model; for MinkowskiLinf a
    selector picks among the midpoint box: None (affine), "upper extreme",
    or "lower extreme" take the per-coordinate free interval's choice.
    """
    _check_member(space, x, y)
    if isinstance(space, MaxProduct):
        raise SpaceError("max-product midpoints are not supported")
    if isinstance(space, MinkowskiLinf) and selector is not None:
        return _linf_extreme_midpoint(space, x, y, selector)
    d = distance(space, x, y)
    if d == 0:
        raise DegenerateError("midpoint of identical points")
    g = geodesic_between(space, x, y)
    half = d / 2 if isinstance(d, Fraction) else 0.5 * d
    return g.point_at(half)


def _linf_extreme_midpoint(space, x, y, selector):
    if selector not in ("upper extreme", "lower extreme"):
        raise SpaceError(f"unknown midpoint selector {selector!r}")
    a, b = x.coords, y.coords
    dd = supnorm(vsub(a, b))
    if dd == 0:
        raise DegenerateError("midpoint of identical points")
    half = dd / 2.0
    out = []
    for aj, bj in zip(a, b):
        lo = max(aj, bj) - half
        hi = min(aj, bj) + half
        if selector == "upper extreme":
            out.append(hi)
        else:
            out.append(lo)
    return Point(space, tuple(out))


# ---------------------------------------------------------------------------
# parameters of points along geodesics

def closest_param(space, geo: GeodesicRef, x: Point, *, window: float = None):
    """Parameter minimizing t -> d(geo(t), x) plus the attained distance.

    Exact on trees (Gromov-product projection); golden-section on the other
    models, where the distance along a geodesic is convex.
    """
    _check_member(space, x)
    if isinstance(space, MetricTree):
        return _tree_closest_param(space, geo, x)
    d0 = float(distance(space, geo.point_at(0), x))
    w = window if window is not None else 2.0 * d0 + 2.0
    lo, hi = geo.domain()
    lo = max(float(lo), -w) if lo != -INF else -w
    hi = min(float(hi), w) if hi != INF else w

    def f(t):
        return float(distance(space, geo.point_at(t), x))
    t, val = golden_min(f, lo, hi, tol=1e-13 * max(1.0, w))
    return t, val


def _tree_closest_param(space, geo, x):
    lo, hi = geo.domain()
    big = space.total_length + _tree_dist(space, geo.point_at(0).coords, x.coords) + 1
    lo = _as_fraction(lo) if lo != -INF else -big
    hi = _as_fraction(hi) if hi != INF else big
    p, q = geo.point_at(lo), geo.point_at(hi)
    dxp = _tree_dist(space, x.coords, p.coords)
    dxq = _tree_dist(space, x.coords, q.coords)
    dpq = _tree_dist(space, p.coords, q.coords)
    resid = (dxp + dxq - dpq) / 2
    t = lo + (dxp - resid)
    return t, resid


def on_geodesic(space, geo: GeodesicRef, x: Point, tol: float = 1e-9):
    """(bool, parameter, residual) for membership of x on geo."""
    t, resid = closest_param(space, geo, x)
    return (float(resid) <= tol, t, resid)
