"""Metric-level predicates and structured pass/fail reports.

Checks here operate on sampled point sets: metric axioms, midpoint convexity
of the distance, Hausdorff distance, normed-strip detection between parallel
lines, and the unit-distance / isometry predicates for bijections.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .spaces import (
    Euclidean,
    GeodesicRef,
    HyperbolicPlane,
    MaxProduct,
    MetricTree,
    MinkowskiLinf,
    MinkowskiLp,
    Point,
    RealLine,
    SpaceError,
    SphereIntrinsic,
    closest_param,
    distance,
    midpoint,
    point,
    sphere_point,
    tree_edge_point,
    tree_ray_point,
    tree_vertex,
)

MAX_WITNESSES = 32


@dataclass
class VerificationReport:
    """Pass/fail record with witnesses; serializes with a stable field order."""

    check: str
    status: str = "pass"            # "pass" | "fail"
    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    tolerance: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, witness: dict):
        self.status = "fail"
        self.witnesses.append(_jsonable(witness))

    def finalize(self):
        """Canonical witness order and cap; a failed report keeps >= 1 witness."""
        self.witnesses = sorted(self.witnesses, key=lambda w: json.dumps(w, sort_keys=True))
        self.witnesses = self.witnesses[:MAX_WITNESSES]
        if self.status == "fail" and not self.witnesses:
            raise AssertionError("failed report without witnesses")
        return self

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "status": self.status,
            "counts": _jsonable(self.counts),
            "witnesses": self.witnesses,
            "tolerance": self.tolerance,
        }
        if self.data:
            out["data"] = _jsonable(self.data)
        return out


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Point):
        return _jsonable(v.coords)
    if isinstance(v, float):
        return v
    return v


# ---------------------------------------------------------------------------
# samples

@dataclass
class SampleSet:
    space: object
    points: tuple
    seed: int = None
    spec: str = "user"

    def __post_init__(self):
        for p in self.points:
            if p.space != self.space:
                raise SpaceError("sample point from a different space")
        if not self.points:
            raise SpaceError("empty sample")


def random_sample(space, n: int, seed: int, scale: float = 4.0) -> SampleSet:
    """Reproducible random points; tree offsets stay exact rationals."""
    rng = random.Random(seed)
    pts = tuple(_random_point(space, rng, scale) for _ in range(n))
    return SampleSet(space, pts, seed=seed, spec=f"random(n={n}, scale={scale})")


def _random_point(space, rng, scale):
    if isinstance(space, (Euclidean, MinkowskiLp, MinkowskiLinf)):
        return point(space, tuple(rng.uniform(-scale, scale) for _ in range(space.dim)))
    if isinstance(space, HyperbolicPlane):
        return point(space, (rng.uniform(-scale, scale), math.exp(rng.uniform(-1.5, 1.5))))
    if isinstance(space, RealLine):
        return point(space, rng.uniform(-scale, scale))
    if isinstance(space, SphereIntrinsic):
        v = [rng.gauss(0.0, 1.0) for _ in range(space.dim)]
        while all(abs(x) < 1e-9 for x in v):
            v = [rng.gauss(0.0, 1.0) for _ in range(space.dim)]
        return sphere_point(space, v)
    if isinstance(space, MetricTree):
        desc = space.desc
        denom = 16
        choices = len(desc.edges) + len(desc.ends)
        k = rng.randrange(choices + 1)
        if k == choices:
            return tree_vertex(space, rng.choice(desc.vertices))
        if k < len(desc.edges):
            ln = desc.edges[k][2]
            num = rng.randrange(0, denom + 1)
            return tree_edge_point(space, k, ln * Fraction(num, denom))
        end = desc.ends[k - len(desc.edges)]
        return tree_ray_point(space, end, Fraction(rng.randrange(0, 3 * denom), denom))
    if isinstance(space, MaxProduct):
        l = _random_point(space.left, rng, scale)
        r = _random_point(space.right, rng, scale)
        return Point(space, (l.coords, r.coords))
    raise SpaceError(f"cannot sample {space!r}")


# ---------------------------------------------------------------------------
# bijections

@dataclass
class BijectionSpec:
    """A named bijection with its inverse, both Point -> Point evaluators."""

    name: str
    domain: object
    codomain: object
    forward: callable
    inverse: callable
    params: dict = field(default_factory=dict)

    def check_inverse(self, sample: SampleSet, tol: float = 1e-12) -> bool:
        for p in sample.points:
            q = self.inverse(self.forward(p))
            d = distance(self.domain, p, q)
            if isinstance(d, Fraction):
                if d != 0:
                    return False
            elif float(d) > tol:
                return False
        return True


# ---------------------------------------------------------------------------
# metric axioms

def check_metric_axioms(space, sample: SampleSet, *, triples: int = 200,
                        seed: int = 0, tol: float = 1e-9) -> VerificationReport:
    """Symmetry, identity of indiscernibles, and the triangle inequality on
    random triples from the sample. Tree distances are compared exactly."""
    rep = VerificationReport(f"metric-axioms[{_space_tag(space)}]", tolerance=tol)
    rng = random.Random(seed)
    pts = sample.points
    exact = isinstance(space, MetricTree)
    checked = 0
    for _ in range(triples):
        x, y, z = (pts[rng.randrange(len(pts))] for _ in range(3))
        dxy, dyx = distance(space, x, y), distance(space, y, x)
        if (dxy != dyx) if exact else abs(float(dxy) - float(dyx)) > tol:
            rep.fail({"axiom": "symmetry", "x": x, "y": y, "dxy": dxy, "dyx": dyx})
        zero = (dxy == 0) if exact else float(dxy) <= tol
        if zero != (x.coords == y.coords):
            rep.fail({"axiom": "identity", "x": x, "y": y, "d": dxy})
        dxz = distance(space, x, z)
        dyz = distance(space, y, z)
        slack = float(dxy) + float(dyz) - float(dxz)
        if exact:
            if dxz > dxy + dyz:
                rep.fail({"axiom": "triangle", "x": x, "y": y, "z": z, "slack": slack})
        elif slack < -tol:
            rep.fail({"axiom": "triangle", "x": x, "y": y, "z": z, "slack": slack})
        checked += 1
    rep.counts = {"triples": checked, "violations": len(rep.witnesses)}
    return rep.finalize()


def _space_tag(space) -> str:
    if isinstance(space, Euclidean):
        return f"euclidean-{space.dim}"
    if isinstance(space, MinkowskiLp):
        return f"minkowski-l{space.p:g}"
    if isinstance(space, MinkowskiLinf):
        return "minkowski-linf"
    if isinstance(space, HyperbolicPlane):
        return "hyperbolic-plane"
    if isinstance(space, RealLine):
        return "real-line"
    if isinstance(space, SphereIntrinsic):
        return f"sphere-r{space.radius:g}-d{space.dim}"
    if isinstance(space, MetricTree):
        return f"tree-n{space.desc.denominator_bound}"
    if isinstance(space, MaxProduct):
        return f"maxprod({_space_tag(space.left)},{_space_tag(space.right)})"
    return type(space).__name__


# ---------------------------------------------------------------------------
# curvature non-positivity

def check_busemann_midpoints(space, x: Point, y: Point, z: Point, *,
                             selector_xy: str = None, selector_xz: str = None,
                             tol: float = 1e-9) -> VerificationReport:
    """Midpoint inequality d(m, n) <= d(y, z)/2 for m, n the midpoints of
    [x, y] and [x, z]. Selectors matter only for the sup-norm plane."""
    if x.coords == y.coords or x.coords == z.coords or y.coords == z.coords:
        raise SpaceError("midpoint check needs pairwise distinct points")
    rep = VerificationReport(f"busemann-midpoints[{_space_tag(space)}]", tolerance=tol)
    m = midpoint(space, x, y, selector=selector_xy)
    n = midpoint(space, x, z, selector=selector_xz)
    dmn = distance(space, m, n)
    dyz = distance(space, y, z)
    half = dyz / 2 if isinstance(dyz, Fraction) else 0.5 * float(dyz)
    lhs, rhs = float(dmn), float(half)
    rep.counts = {"lhs": lhs, "rhs": rhs}
    if lhs > rhs + tol:
        rep.fail({"x": x, "y": y, "z": z, "m": m, "n": n, "d_mn": dmn, "half_d_yz": half})
    return rep.finalize()


def check_distance_convexity(space, g1: GeodesicRef, g2: GeodesicRef,
                             grid: int = 8, tol: float = 1e-9) -> VerificationReport:
    """Midpoint convexity of D(t, t') = d(g1(t), g2(t')) over a lattice on the
    two segment domains."""
    if g1.kind != "segment" or g2.kind != "segment":
        raise SpaceError("distance convexity check needs segments")
    rep = VerificationReport("distance-convexity", tolerance=tol)
    t1 = [float(g1.length) * i / grid for i in range(grid + 1)]
    t2 = [float(g2.length) * j / grid for j in range(grid + 1)]
    D = [[float(distance(space, g1.point_at(a), g2.point_at(b))) for b in t2] for a in t1]
    checked = 0
    for i1 in range(grid + 1):
        for j1 in range(grid + 1):
            for i2 in range(i1, grid + 1):
                for j2 in range(grid + 1):
                    if (i1 + i2) % 2 or (j1 + j2) % 2:
                        continue
                    mid = D[(i1 + i2) // 2][(j1 + j2) // 2]
                    avg = 0.5 * (D[i1][j1] + D[i2][j2])
                    checked += 1
                    if mid > avg + tol:
                        rep.fail({"a": (t1[i1], t2[j1]), "b": (t1[i2], t2[j2]),
                                  "mid": mid, "avg": avg})
    rep.counts = {"pairs": checked, "violations": len(rep.witnesses)}
    return rep.finalize()


# ---------------------------------------------------------------------------
# Hausdorff distance

def hausdorff_distance(space, A: SampleSet, B: SampleSet) -> float:
    """Two-sided Hausdorff distance between finite samples."""
    if A.space != space or B.space != space:
        raise SpaceError("samples from a different space")

    def directed(src, dst):
        worst = 0.0
        for p in src.points:
            best = min(float(distance(space, p, q)) for q in dst.points)
            worst = max(worst, best)
        return worst
    return max(directed(A, B), directed(B, A))


# ---------------------------------------------------------------------------
# normed strip detection

def detect_normed_strip(space, a: GeodesicRef, b: GeodesicRef, grid: int = 8,
                        tol: float = 1e-6, span: float = 4.0) -> VerificationReport:
    """Decide whether two lines bound a normed strip and fit the strip's norm.

    For parallel lines the cross-distance d(a(s), b(t)) depends only on t - s
    after aligning b's parameterization; that profile is the fitted norm on
    the level beta = 1, and N(alpha, beta) = |beta| * profile(alpha / beta).
    The check verifies translation invariance, convexity of the profile, and
    midpoint homogeneity N(alpha/2, 1/2) = N(alpha, 1) / 2. Diverging lines
    yield a not-a-strip report, not an error.
    """
    if a.kind != "line" or b.kind != "line":
        raise SpaceError("strip detection needs straight lines")
    rep = VerificationReport("normed-strip", tolerance=tol)

    def inf_dist_to_a(q):
        _, val = closest_param(space, a, q)
        return float(val)

    sup1 = max(inf_dist_to_a(b.point_at(t)) for t in _linspace(-span, span, 9))
    sup2 = max(inf_dist_to_a(b.point_at(t)) for t in _linspace(-2 * span, 2 * span, 17))
    rep.data["sup_inf_near"] = sup1
    rep.data["sup_inf_far"] = sup2
    if sup2 > sup1 + 1e-3:
        rep.status = "fail"
        rep.witnesses.append(_jsonable({"reason": "not-a-strip",
                                        "sup_near": sup1, "sup_far": sup2}))
        rep.counts = {"is_strip": 0}
        return rep
    b, reversed_b = _orient_like(space, a, b, span)
    rep.data["orientation"] = "reversed" if reversed_b else "aligned"
    t0 = _align_parallel(space, a, b, span)

    step = 2.0 * span / grid
    taus = [i * step for i in range(-grid, grid + 1)]
    prof = {i: float(distance(space, a.point_at(0), b.point_at(t0 + i * step)))
            for i in range(-grid, grid + 1)}
    bad = 0
    # translation invariance of cross-distances
    for s_i in range(-grid // 2, grid // 2 + 1):
        for i in range(-grid // 2, grid // 2 + 1):
            s = s_i * step
            got = float(distance(space, a.point_at(s), b.point_at(t0 + s + i * step)))
            if abs(got - prof[i]) > tol:
                bad += 1
                rep.fail({"kind": "translation", "s": s, "tau": i * step,
                          "got": got, "expect": prof[i]})
    # norm axioms on the table: positivity and convexity (the triangle
    # inequality of the fitted norm); central symmetry N(v) = N(-v) is the
    # symmetry of the metric itself
    for i in range(-grid, grid + 1):
        if prof[i] <= 0.0:
            rep.fail({"kind": "positivity", "tau": i * step})
    for i in range(-grid + 1, grid):
        if 2.0 * prof[i] > prof[i - 1] + prof[i + 1] + tol:
            rep.fail({"kind": "convexity", "tau": i * step})
    # homogeneity via midpoints: d(a(0), mid(a(s), b(t0+t))) = profile(s+t)/2
    for s_i in (-2, 0, 2):
        for i in (-2, 0, 2):
            if not (-grid <= s_i + i <= grid):
                continue
            m = midpoint(space, a.point_at(s_i * step), b.point_at(t0 + i * step))
            got = float(distance(space, a.point_at(0), m))
            want = 0.5 * prof[s_i + i]
            if abs(got - want) > tol:
                rep.fail({"kind": "homogeneity", "s": s_i * step, "t": i * step,
                          "got": got, "expect": want})
    rep.counts = {"is_strip": 1, "violations": len(rep.witnesses)}
    rep.data["norm_table"] = {"tau": taus, "value": [prof[i] for i in range(-grid, grid + 1)],
                              "width": prof[0], "alignment": t0}
    return rep.finalize()


def _orient_like(space, a, b, span: float):
    """Reparameterize b to run in a's direction if it was handed reversed.

    For parallel lines d(a(s), b(t)) depends only on t - s once orientations
    agree; a co-moving probe staying at the baseline gap detects this.
    """
    t0, gap = closest_param(space, b, a.point_at(0))
    t0, gap = float(t0), float(gap)
    same = abs(float(distance(space, a.point_at(span), b.point_at(t0 + span)))
               - gap)
    opposite = abs(float(distance(space, a.point_at(span), b.point_at(t0 - span)))
                   - gap)
    if same <= opposite:
        return b, False
    base = b.point_at

    def at(t):
        return base(-t)
    flipped = GeodesicRef(space, "line", at, minus=b.plus, plus=b.minus)
    return flipped, True


def _align_parallel(space, a, b, span: float) -> float:
    """Alignment shift t0 making the cross-distance profile even in tau.

    Norms are even, so d(a(0), b(t0 + s)) = d(a(0), b(t0 - s)) exactly at the
    true alignment; the symmetry residual is monotone in t0 and its root is
    far better conditioned than the flat minimum of the profile itself.
    """
    from .numeric import bisect_root
    t_rough, _ = closest_param(space, b, a.point_at(0))
    t_rough = float(t_rough)
    o = a.point_at(0)

    def residual(t0):
        plus = float(distance(space, o, b.point_at(t0 + span)))
        minus = float(distance(space, o, b.point_at(t0 - span)))
        return plus - minus
    return bisect_root(residual, t_rough - 2.0, t_rough + 2.0, tol=1e-13)


def strip_norm_value(report: VerificationReport, alpha: float, beta: float) -> float:
    """Evaluate the fitted strip norm N(alpha, beta) from a strip report's
    table by linear interpolation of the beta = 1 profile."""
    table = report.data["norm_table"]
    taus, vals = table["tau"], table["value"]
    if beta == 0.0:
        return abs(alpha)
    ratio = alpha / abs(beta)
    if ratio <= taus[0] or ratio >= taus[-1]:
        raise SpaceError("norm table does not cover the requested slope")
    for i in range(len(taus) - 1):
        if taus[i] <= ratio <= taus[i + 1]:
            w = (ratio - taus[i]) / (taus[i + 1] - taus[i])
            return abs(beta) * ((1 - w) * vals[i] + w * vals[i + 1])
    raise SpaceError("unreachable")


def _linspace(lo, hi, n):
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


# ---------------------------------------------------------------------------
# isometry and unit-distance preservation

def is_isometry(spaces, f: BijectionSpec, sample: SampleSet,
                tol: float = 1e-9) -> VerificationReport:
    """d_Y(f x, f y) = d_X(x, y) on all sample pairs; exact when tol == 0."""
    X, Y = spaces
    rep = VerificationReport(f"is-isometry[{f.name}]", tolerance=tol)
    pts = sample.points
    images = [f.forward(p) for p in pts]
    pairs = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dx = distance(X, pts[i], pts[j])
            dy = distance(Y, images[i], images[j])
            pairs += 1
            if tol == 0 and isinstance(dx, Fraction) and isinstance(dy, Fraction):
                ok = dx == dy
            else:
                ok = abs(float(dx) - float(dy)) <= tol
            if not ok:
                rep.fail({"x": pts[i], "y": pts[j], "d_before": dx, "d_after": dy})
    rep.counts = {"pairs": pairs, "violations": len(rep.witnesses)}
    return rep.finalize()


def _unit_class(d, mode: str, tol: float):
    """Snap |d - 1| <= tol to exactly 1, then compare per mode."""
    if isinstance(d, Fraction) and tol == 0:
        val = d
    else:
        val = float(d)
        if abs(val - 1.0) <= tol:
            val = 1.0
    if mode == "eq":
        return val == 1
    if mode == "le":
        return val <= 1
    if mode == "lt":
        return val < 1
    raise SpaceError(f"unknown mode {mode!r}")


def preserves_unit_distance(spaces, f: BijectionSpec, sample: SampleSet,
                            mode: str = "eq", tol: float = 1e-9) -> VerificationReport:
    """Bidirectional check of the unit-distance relation in the given mode.

    Forward pairs test d = 1 iff d(f., f.) = 1 (or <=, <); the declared
    inverse is tested the same way on the image sample.
    """
    X, Y = spaces
    rep = VerificationReport(f"unit-distance[{f.name}, mode={mode}]", tolerance=tol)
    pts = list(sample.points)
    images = [f.forward(p) for p in pts]
    preimages = [f.inverse(q) for q in images]
    pairs = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            before = _unit_class(distance(X, pts[i], pts[j]), mode, tol)
            after = _unit_class(distance(Y, images[i], images[j]), mode, tol)
            pairs += 1
            if before != after:
                rep.fail({"direction": "forward", "x": pts[i], "y": pts[j],
                          "before": before, "after": after})
            back = _unit_class(distance(X, preimages[i], preimages[j]), mode, tol)
            if after != back:
                rep.fail({"direction": "inverse", "x": images[i], "y": images[j],
                          "image_class": after, "preimage_class": back})
    rep.counts = {"pairs": pairs, "violations": len(rep.witnesses)}
    return rep.finalize()
