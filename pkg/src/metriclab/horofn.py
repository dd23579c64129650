"""Busemann functions, horoballs, the asymptotic-ray pseudometric, Tits
relation numerics, and shadows.

Busemann values beta_c(y) = lim_{t->oo} (d(y, c(t)) - t) are computed from
closed forms where the model provides one (flat models, H^2, trees) and by a
truncated doubling limit with Richardson acceptance otherwise. Trees are
exact: the limit stabilizes at a finite rational truncation.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .spaces import (
    ConvergenceError,
    Euclidean,
    GeodesicRef,
    HyperbolicPlane,
    IdealPoint,
    MetricTree,
    MinkowskiLp,
    Point,
    RealLine,
    SpaceError,
    distance,
    point,
    ray_from,
    vdot,
    vsub,
)
from .verify import SampleSet, VerificationReport

INF = math.inf


def ray_toward(space, geo: GeodesicRef, xi: IdealPoint) -> GeodesicRef:
    """Restrict/reverse a line so it becomes the unit ray toward xi."""
    if geo.plus is not None and geo.plus.matches(xi):
        if geo.kind == "ray":
            return geo
        base = geo.point_at

        def at(t):
            return base(t)
        return GeodesicRef(space, "ray", at, plus=geo.plus)
    if geo.minus is not None and geo.minus.matches(xi):
        base = geo.point_at

        def at(t):
            return base(-t)
        return GeodesicRef(space, "ray", at, plus=geo.minus)
    raise SpaceError("geodesic has no end at the requested ideal point")


# ---------------------------------------------------------------------------
# Busemann values

def busemann_value(space, ray: GeodesicRef, y: Point, *, method: str = "auto",
                   tol: float = 1e-6, t_cap: float = 1e8):
    """beta_ray(y); exact Fraction on trees, float elsewhere.

    method: "auto" prefers the model's closed form, "closed" requires one,
    "limit" forces the truncated doubling limit.
    """
    if ray.plus is None:
        raise SpaceError("Busemann function needs a ray with an ideal endpoint")
    if method not in ("auto", "closed", "limit"):
        raise SpaceError(f"unknown method {method!r}")
    if method != "limit":
        val = _busemann_closed(space, ray, y)
        if val is not None:
            return val
        if method == "closed":
            raise SpaceError(f"no closed-form Busemann value for {space!r}")
    return _busemann_limit(space, ray, y, tol=tol, t_cap=t_cap)


def _busemann_closed(space, ray, y):
    o = ray.point_at(0)
    if isinstance(space, Euclidean):
        u = vsub(ray.point_at(1).coords, o.coords)
        return -vdot(vsub(y.coords, o.coords), u)
    if isinstance(space, MinkowskiLp):
        u = vsub(ray.point_at(1).coords, o.coords)
        grad = tuple(math.copysign(abs(c) ** (space.p - 1.0), c) for c in u)
        return -vdot(vsub(y.coords, o.coords), grad)
    if isinstance(space, RealLine):
        sgn = 1.0 if ray.point_at(1).coords > o.coords else -1.0
        return -sgn * (y.coords - o.coords)
    if isinstance(space, HyperbolicPlane):
        xi = ray.plus.rep
        if xi == INF:
            return math.log(o.coords[1]) - math.log(y.coords[1])
        def level(z):
            return math.log(((z[0] - xi) ** 2 + z[1] ** 2) / z[1])
        return level(y.coords) - level(o.coords)
    if isinstance(space, MetricTree):
        T = distance(space, o, y) + 1
        far = ray.point_at(T)
        return distance(space, y, far) - T
    return None


def _busemann_limit(space, ray, y, *, tol, t_cap):
    o = ray.point_at(0)
    d0 = distance(space, o, y)
    if isinstance(space, MetricTree):
        T = d0 + 1
        v1 = distance(space, y, ray.point_at(T)) - T
        v2 = distance(space, y, ray.point_at(2 * T)) - 2 * T
        if v1 != v2:
            raise ConvergenceError("tree Busemann value did not stabilize")
        return v2

    def f(t):
        return float(distance(space, y, ray.point_at(t))) - t

    def aitken(f1, f2, f3):
        den = (f3 - f2) - (f2 - f1)
        if abs(den) <= 1e-15 * max(1.0, abs(f3)):
            return f3
        return f3 - (f3 - f2) ** 2 / den
    # Aitken extrapolation along the doubling sequence is exact for any pure
    # power tail c * T^(-q), which covers the flat models (q = 1, and q = p-1
    # along singular directions of l_p planes) as well as exponential decay.
    # Acceptance needs two consecutive small steps: a single one can be a
    # coincidental plateau of the extrapolant while the tail is still large.
    T = max(1.0, 2.0 * float(d0))
    window = [f(T), f(2.0 * T), f(4.0 * T)]
    prev = None
    prev_diff = None
    while T <= t_cap:
        accel = aitken(*window)
        if prev is not None:
            diff = abs(accel - prev)
            if prev_diff is not None and diff <= 0.5 * tol and prev_diff <= 0.5 * tol:
                return accel
            prev_diff = diff
        prev = accel
        T *= 2.0
        window = [window[1], window[2], f(4.0 * T)]
    raise ConvergenceError(f"Busemann limit not stable below T = {t_cap}")


def horoball_contains(space, ray: GeodesicRef, x0: Point, x: Point,
                      tol: float = 1e-9) -> bool:
    """Membership of x in the horoball through x0: beta(x) <= beta(x0) + tol."""
    b0 = busemann_value(space, ray, x0)
    bx = busemann_value(space, ray, x)
    if isinstance(b0, Fraction) and isinstance(bx, Fraction):
        return bx <= b0
    return float(bx) <= float(b0) + tol


# ---------------------------------------------------------------------------
# asymptotic-ray pseudometric rho_xi

def ray_pseudodistance(space, c: GeodesicRef, d: GeodesicRef, *,
                       levels: int = 20, grid: int = 16):
    """inf over s, t >= 0 of d(c(s), d(t)).

    Exact on trees (merging rays give 0, otherwise the bridge length between
    the ray images). Continuous models use coarse-to-fine grid refinement on
    an expanding window; the distance is jointly convex there, so refinement
    converges. Raises SpaceError for visibly non-asymptotic continuous rays.
    """
    if isinstance(space, MetricTree):
        return _tree_ray_set_distance(space, c, d)
    dd0 = float(distance(space, c.point_at(0), d.point_at(0)))
    ddT = float(distance(space, c.point_at(64.0), d.point_at(64.0)))
    if ddT > dd0 + 1e-6:
        raise SpaceError("rays are not asymptotic: same-parameter distance grows")

    s_hi = t_hi = 8.0
    s_lo = t_lo = 0.0
    best = dd0
    for _ in range(levels):
        ss = [s_lo + (s_hi - s_lo) * i / grid for i in range(grid + 1)]
        ts = [t_lo + (t_hi - t_lo) * j / grid for j in range(grid + 1)]
        vals = {}
        for i, s in enumerate(ss):
            for j, t in enumerate(ts):
                vals[(i, j)] = float(distance(space, c.point_at(s), d.point_at(t)))
        (bi, bj) = min(vals, key=vals.get)
        best = min(best, vals[(bi, bj)])
        if best <= 1e-12:
            break
        if (bi == grid or bj == grid) and max(s_hi, t_hi) < 300.0:
            # infimum may sit farther out: grow the window (capped so
            # hyperbolic coordinates stay inside double range)
            if bi == grid:
                s_hi *= 2.0
            if bj == grid:
                t_hi *= 2.0
            continue
        cs = (s_hi - s_lo) / grid
        ct = (t_hi - t_lo) / grid
        s_lo = max(0.0, ss[bi] - 2.0 * cs)
        s_hi = ss[bi] + 2.0 * cs
        t_lo = max(0.0, ts[bj] - 2.0 * ct)
        t_hi = ts[bj] + 2.0 * ct
    return best


def _tree_ray_set_distance(space, c, d):
    if c.plus is None or d.plus is None:
        raise SpaceError("tree rays need ideal endpoints")
    if c.plus.rep == d.plus.rep:
        return Fraction(0)
    c0, d0 = c.point_at(0), d.point_at(0)
    L = space.total_length + distance(space, c0, d0) + 1
    P1, Q1 = c0, c.point_at(L)
    P2, Q2 = d0, d.point_at(L)
    d_p2p1 = distance(space, P2, P1)
    d_p2q1 = distance(space, P2, Q1)
    d_p1q1 = distance(space, P1, Q1)
    # distance from P2 to the segment [P1, Q1] and the projection parameter
    g = (d_p2p1 + d_p2q1 - d_p1q1) / 2
    m = c.point_at(d_p2p1 - g)
    return (distance(space, m, P2) + distance(space, m, Q2) - distance(space, P2, Q2)) / 2


def check_busemann_sum_bound(space, c: GeodesicRef, d: GeodesicRef,
                             tol: float = 1e-6) -> VerificationReport:
    """0 <= beta_c(d(0)) + beta_d(c(0)) <= 2 rho_xi(c, d), within tol."""
    rep = VerificationReport("busemann-sum-bound", tolerance=tol)
    bc = busemann_value(space, c, d.point_at(0))
    bd = busemann_value(space, d, c.point_at(0))
    rho = ray_pseudodistance(space, c, d)
    total = float(bc) + float(bd)
    rep.counts = {"sum": total, "rho": float(rho)}
    if total < -tol:
        rep.fail({"reason": "negative sum", "sum": total})
    if total > 2.0 * float(rho) + tol:
        rep.fail({"reason": "exceeds 2 rho", "sum": total, "rho": float(rho)})
    return rep.finalize()


# ---------------------------------------------------------------------------
# Tits relation numerics

def tits_delta(space, o: Point, xi: IdealPoint, eta: IdealPoint, *,
               tol: float = 1e-4, t_cap: float = 1e8) -> float:
    """lim d(c(t), d(t)) / (2t) for the rays from o toward xi and eta.

    The raw limit lies in [0, 1]; the comparison against pi of the Tits
    relation is read as a comparison against 1 (see tits_less_than_pi).
    """
    if xi.matches(eta):
        raise SpaceError("tits_delta needs distinct ideal points")
    c = ray_from(space, o, xi)
    d = ray_from(space, o, eta)
    exact = isinstance(space, MetricTree)

    def f(t):
        dist_t = distance(space, c.point_at(t), d.point_at(t))
        if exact:
            return Fraction(dist_t, 2 * t)
        return float(dist_t) / (2.0 * float(t))
    T = Fraction(1) if exact else 1.0
    while float(T) <= t_cap:
        v1, v2 = f(T), f(2 * T)
        if abs(float(v2) - float(v1)) <= tol:
            # the tail is O(1/t); Richardson removes it (exactly on trees)
            return float(2 * v2 - v1)
        T *= 2
    raise ConvergenceError(f"Tits limit not stable below t = {t_cap}")


def tits_less_than_pi(delta: float, tol: float = 1e-4) -> bool:
    """The relation "Td < pi" under the raw-limit reading: delta < 1 - tol."""
    return delta < 1.0 - tol


# ---------------------------------------------------------------------------
# shadows

def shadow_contains(space, y, x0: Point, z: Point, tol: float = 1e-9) -> bool:
    """Is z in the complete shadow of x0 relative to y?

    Finite y: x0 lies on [y, z], i.e. d(y, x0) + d(x0, z) = d(y, z) within
    tol. Ideal y: the Busemann sublevel reading, beta_y(z) - beta_y(x0)
    equals d(x0, z) within tol (beta normalized along the ray from x0).
    """
    if isinstance(y, IdealPoint):
        r = ray_from(space, x0, y)
        beta_z = busemann_value(space, r, z)
        dz = distance(space, x0, z)
        if isinstance(beta_z, Fraction) and isinstance(dz, Fraction) and tol == 0:
            return beta_z == dz
        return abs(float(beta_z) - float(dz)) <= tol
    if y.coords == x0.coords:
        raise SpaceError("shadow base y must differ from x0")
    dyx = distance(space, y, x0)
    dxz = distance(space, x0, z)
    dyz = distance(space, y, z)
    if isinstance(dyx, Fraction) and tol == 0:
        return dyx + dxz == dyz
    return float(dyx) + float(dxz) <= float(dyz) + tol


def spherical_shadow_sample(space, y, x0: Point, rho: float,
                            resolution: int = 360, tol: float = 1e-6) -> SampleSet:
    """Points of the sphere S(x0, rho) lying in the shadow of x0 relative
    to y, sampled at `resolution` directions. Euclidean plane only."""
    if not (isinstance(space, Euclidean) and space.dim == 2):
        raise SpaceError("spherical shadow sampling is implemented for Euclidean(2)")
    cx, cy = x0.coords
    hits = []
    for k in range(resolution):
        ang = 2.0 * math.pi * k / resolution
        z = point(space, (cx + rho * math.cos(ang), cy + rho * math.sin(ang)))
        if shadow_contains(space, y, x0, z, tol=tol):
            hits.append(z)
    if not hits:
        raise SpaceError("no shadow points at this resolution; widen tol")
    return SampleSet(space, tuple(hits), spec=f"shadow(rho={rho}, res={resolution})")
