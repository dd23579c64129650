"""Grasshopper metric (minimal chains of exact unit-distance jumps) and the
catalog of unit-distance-preserving non-isometries: the sine shift of the
line, sphere flips, tree point swaps, smooth tree reparameterizations, and
maximum-product lifts."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .numeric import bisect_root
from .spaces import (
    Euclidean,
    MaxProduct,
    MetricTree,
    Point,
    RealLine,
    SpaceError,
    SphereIntrinsic,
    distance,
    point,
    tree_edge_point,
    tree_ray_point,
    tree_vertex,
    vscale,
)
from .verify import BijectionSpec, SampleSet

INF = math.inf


# ---------------------------------------------------------------------------
# unit-jump graphs

@dataclass
class UnitJumpGraph:
    """Finite graph whose edges are the exact unit-distance pairs of nodes."""

    space: object
    nodes: tuple
    adjacency: dict = field(default_factory=dict)

    @staticmethod
    def build(space, points, tol: float = 1e-9) -> "UnitJumpGraph":
        nodes = tuple(points)
        exact = isinstance(space, MetricTree)
        adj = {i: [] for i in range(len(nodes))}
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                d = distance(space, nodes[i], nodes[j])
                unit = (d == 1) if exact else abs(float(d) - 1.0) <= tol
                if unit:
                    adj[i].append(j)
                    adj[j].append(i)
        return UnitJumpGraph(space, nodes, adj)

    def index_of(self, p: Point) -> int:
        for i, q in enumerate(self.nodes):
            if q.coords == p.coords:
                return i
        raise SpaceError("point is not a graph node")


def graph_bfs_distance(graph: UnitJumpGraph, x: Point, y: Point):
    src, dst = graph.index_of(x), graph.index_of(y)
    if src == dst:
        return 0
    seen = {src: 0}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nb in graph.adjacency[cur]:
            if nb not in seen:
                seen[nb] = seen[cur] + 1
                if nb == dst:
                    return seen[nb]
                queue.append(nb)
    return INF


def grasshopper_components(graph: UnitJumpGraph):
    """Partition of the nodes into unit-jump connected components."""
    remaining = set(range(len(graph.nodes)))
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        queue = deque([seed])
        while queue:
            cur = queue.popleft()
            for nb in graph.adjacency[cur]:
                if nb not in comp:
                    comp.add(nb)
                    queue.append(nb)
        remaining -= comp
        comps.append(tuple(graph.nodes[i] for i in sorted(comp)))
    return comps


# ---------------------------------------------------------------------------
# grasshopper distance

def grasshopper_distance(space, x: Point, y: Point, mode: str = "analytic",
                         graph: UnitJumpGraph = None, tol: float = 1e-9):
    """Minimal number of exact unit jumps from x to y; math.inf if none.

    Graph mode is plain BFS over the supplied unit-jump graph. Analytic mode
    covers the real line (reachable set x + Z), Euclidean dim >= 2 (ceil of
    the distance, with two jumps for short hops), and metric trees (exact
    BFS over the finite closed set of reachable offset classes).
    """
    if mode == "graph":
        if graph is None:
            raise SpaceError("graph mode needs a UnitJumpGraph")
        return graph_bfs_distance(graph, x, y)
    if mode != "analytic":
        raise SpaceError(f"unknown mode {mode!r}")
    if isinstance(space, RealLine):
        diff = abs(x.coords - y.coords)
        if diff <= tol:
            return 0
        k = round(diff)
        if abs(diff - k) <= tol:
            return int(k)
        return INF
    if isinstance(space, Euclidean):
        if space.dim < 2:
            raise SpaceError("analytic Euclidean formula needs dim >= 2; use the real line")
        d = float(distance(space, x, y))
        if d <= tol:
            return 0
        if abs(d - 1.0) <= tol:
            return 1
        if d < 1.0:
            return 2
        k = round(d)
        if abs(d - k) <= tol:
            return int(k)
        return int(math.ceil(d))
    if isinstance(space, MetricTree):
        return _tree_grasshopper(space, x, y)
    raise SpaceError(f"no analytic grasshopper formula for {space!r}; use graph mode")


def euclid_jump_chain(space: Euclidean, x: Point, y: Point):
    """Witness chain of unit jumps realizing the analytic Euclidean count."""
    d = float(distance(space, x, y))
    g = grasshopper_distance(space, x, y)
    if g == 0:
        return [x]
    if g == 1:
        return [x, y]
    perp = _unit_perp(space, x, y)
    if g == 2 and d < 1.0:
        apex_mid = vscale(tuple(a + b for a, b in zip(x.coords, y.coords)), 0.5)
        h = math.sqrt(max(0.0, 1.0 - (d / 2.0) ** 2))
        apex = tuple(m + h * p for m, p in zip(apex_mid, perp))
        return [x, point(space, apex), y]
    chain = [x]
    u = vscale(tuple(b - a for a, b in zip(x.coords, y.coords)), 1.0 / d)
    straight = g - 2
    for k in range(1, straight + 1):
        chain.append(point(space, tuple(a + k * ui for a, ui in zip(x.coords, u))))
    # close the remaining gap r in (0, 2] with an isoceles pair
    w = chain[-1]
    r = float(distance(space, w, y))
    mid = vscale(tuple(a + b for a, b in zip(w.coords, y.coords)), 0.5)
    h = math.sqrt(max(0.0, 1.0 - (r / 2.0) ** 2))
    apex = tuple(m + h * p for m, p in zip(mid, perp))
    chain.append(point(space, apex))
    chain.append(y)
    return chain


def _unit_perp(space, x, y):
    dx = tuple(b - a for a, b in zip(x.coords, y.coords))
    nonzero = max(range(len(dx)), key=lambda i: abs(dx[i]))
    other = (nonzero + 1) % len(dx)
    perp = [0.0] * len(dx)
    perp[nonzero], perp[other] = -dx[other], dx[nonzero]
    n = math.sqrt(sum(v * v for v in perp))
    if n == 0:
        perp[other] = 1.0
        n = 1.0
    return tuple(v / n for v in perp)


def _tree_grasshopper(space: MetricTree, x: Point, y: Point):
    if x.coords == y.coords:
        return 0
    nodes = tree_offset_class_nodes(space, x, y)
    coords = {p.coords for p in nodes}
    if y.coords not in coords:
        return INF
    graph = UnitJumpGraph.build(space, nodes)
    return graph_bfs_distance(graph, x, y)


def tree_offset_residues(space: MetricTree, x: Point):
    """Residues mod 1/n of the distances from x to the vertices."""
    step = Fraction(1, space.desc.denominator_bound)
    c = x.coords
    if c[0] == "v":
        offs = [Fraction(0)]
    else:
        offs = [c[2]]
    res = set()
    for o in offs:
        res.add(o % step)
        res.add((-o) % step)
    return res, step


def tree_offset_class_nodes(space: MetricTree, x: Point, y: Point):
    """The finite closed node set: every point whose vertex distances share
    x's residues, with end rays truncated past any useful chain."""
    res_x, step = tree_offset_residues(space, x)
    res_y, _ = tree_offset_residues(space, y)
    res = res_x | res_y
    cap = distance(space, x, y) + space.total_length + 3
    nodes = []
    if Fraction(0) in res:
        for v in space.desc.vertices:
            nodes.append(tree_vertex(space, v))
    for i, (_, _, ln) in enumerate(space.desc.edges):
        offsets = set()
        for r in res:
            o = r if r > 0 else step
            while o < ln:
                offsets.add(o)
                o += step
        for o in sorted(offsets):
            nodes.append(tree_edge_point(space, i, o))
    for end in space.desc.ends:
        for r in res:
            o = r if r > 0 else step
            while o <= cap:
                nodes.append(tree_ray_point(space, end, o))
                o += step
    return nodes


# ---------------------------------------------------------------------------
# tree swap counterexample

@dataclass
class TreePointSet:
    """The two vertex-offset classes A_alpha, A_beta of a tree whose edges
    all have length 1/n, for rational 0 < alpha < beta < 1/(2n)."""

    space: MetricTree
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        n = self.space.desc.denominator_bound
        step = Fraction(1, n)
        if not (0 < self.alpha < self.beta < Fraction(1, 2 * n)):
            raise SpaceError("offsets must satisfy 0 < alpha < beta < 1/(2n)")
        for (_, _, ln) in self.space.desc.edges:
            if ln != step:
                raise SpaceError("tree swap needs all edge lengths equal to 1/n")
        if self.space.desc.ends:
            raise SpaceError("tree swap is defined on trees without ends")

    def class_points(self, offset: Fraction):
        step = Fraction(1, self.space.desc.denominator_bound)
        pts = []
        for i in range(len(self.space.desc.edges)):
            pts.append(tree_edge_point(self.space, i, offset))
            pts.append(tree_edge_point(self.space, i, step - offset))
        return tuple(pts)

    @property
    def a_alpha(self):
        return self.class_points(self.alpha)

    @property
    def a_beta(self):
        return self.class_points(self.beta)

    def union_sample(self) -> SampleSet:
        return SampleSet(self.space, self.a_alpha + self.a_beta,
                         spec=f"A_alpha u A_beta (alpha={self.alpha}, beta={self.beta})")


def tree_swap_bijection(tps: TreePointSet) -> BijectionSpec:
    """Swap the alpha- and beta-points measured from the same edge endpoint;
    identity elsewhere. An involution, exact in rational arithmetic."""
    space = tps.space
    step = Fraction(1, space.desc.denominator_bound)
    swap = {
        tps.alpha: tps.beta, tps.beta: tps.alpha,
        step - tps.alpha: step - tps.beta, step - tps.beta: step - tps.alpha,
    }

    def fwd(p: Point) -> Point:
        c = p.coords
        if c[0] == "e" and c[2] in swap:
            return tree_edge_point(space, c[1], swap[c[2]])
        return p
    return BijectionSpec(
        name="tree-swap", domain=space, codomain=space, forward=fwd, inverse=fwd,
        params={"alpha": str(tps.alpha), "beta": str(tps.beta)})


def smooth_tree_bijection(space: MetricTree, n: int) -> BijectionSpec:
    """Edgewise t -> t + sin(2 pi n t) / (2 pi n) on a tree whose edges all
    have length 1/n; fixes vertices, continuous, unit-distance preserving,
    and not an isometry."""
    step = Fraction(1, n)
    for (_, _, ln) in space.desc.edges:
        if ln != step:
            raise SpaceError("smooth tree bijection needs all edge lengths 1/n")
    if space.desc.ends:
        raise SpaceError("smooth tree bijection is defined on trees without ends")
    two_pi_n = 2.0 * math.pi * n

    def warp(t: float) -> float:
        return t + math.sin(two_pi_n * t) / two_pi_n

    def fwd(p: Point) -> Point:
        c = p.coords
        if c[0] != "e":
            return p
        return tree_edge_point(space, c[1], Fraction(warp(float(c[2]))))

    def inv(p: Point) -> Point:
        c = p.coords
        if c[0] != "e":
            return p
        s = float(c[2])
        t = bisect_root(lambda t_: warp(t_) - s, 0.0, float(step), tol=1e-15)
        return tree_edge_point(space, c[1], Fraction(t))
    return BijectionSpec(name="tree-smooth", domain=space, codomain=space,
                         forward=fwd, inverse=inv, params={"n": n})


# ---------------------------------------------------------------------------
# line, sphere, and product counterexamples

def line_counterexample() -> BijectionSpec:
    """f(x) = x + sin(2 pi x) / (2 pi) on the real line, with its exact
    monotone inverse; preserves the classes d = 1, d <= 1, d < 1."""
    space = RealLine()
    two_pi = 2.0 * math.pi

    def f(x: float) -> float:
        return x + math.sin(two_pi * x) / two_pi

    def fwd(p: Point) -> Point:
        return point(space, f(p.coords))

    def inv(p: Point) -> Point:
        ycoord = p.coords
        t = bisect_root(lambda t_: f(t_) - ycoord, ycoord - 0.5, ycoord + 0.5, tol=1e-15)
        return point(space, t)
    return BijectionSpec(name="line-sine", domain=space, codomain=space,
                         forward=fwd, inverse=inv)


def sphere_flip_bijection(radius: float, dim: int, membership) -> BijectionSpec:
    """phi(x) = -x on a centrally symmetric proper subset A, identity off A.

    ``membership`` is a predicate on coordinate tuples; it must satisfy
    membership(x) == membership(-x) (checked on every evaluated point).
    """
    space = SphereIntrinsic(radius, dim)

    def fwd(p: Point) -> Point:
        c = p.coords
        neg = tuple(-v for v in c)
        inside = bool(membership(c))
        if inside != bool(membership(neg)):
            raise SpaceError("membership set is not centrally symmetric")
        return Point(space, neg) if inside else p
    return BijectionSpec(name="sphere-flip", domain=space, codomain=space,
                         forward=fwd, inverse=fwd,
                         params={"radius": radius, "dim": dim})


def band_membership(threshold: float, axis: int = -1):
    """Centrally symmetric band |x_axis| >= threshold (a proper subset for
    thresholds in (0, 1))."""
    def member(coords):
        return abs(coords[axis]) >= threshold
    return member


def max_product_lift(phi: BijectionSpec, left_space) -> BijectionSpec:
    """Lift a bijection of Y to (x, y) -> (x, phi(y)) on MaxProduct(X, Y)."""
    Y = phi.domain
    space = MaxProduct(left_space, Y)

    def fwd(p: Point) -> Point:
        cl, cr = p.coords
        img = phi.forward(Point(Y, cr))
        return Point(space, (cl, img.coords))

    def inv(p: Point) -> Point:
        cl, cr = p.coords
        pre = phi.inverse(Point(Y, cr))
        return Point(space, (cl, pre.coords))
    return BijectionSpec(name=f"max-lift[{phi.name}]", domain=space, codomain=space,
                         forward=fwd, inverse=inv, params={"inner": phi.name})
