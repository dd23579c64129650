"""Horospherical transfers between asymptotic lines, the double transfer and
its shift, and scissors configurations with the shift computed two
independent ways (transfer composition vs. the four-term Busemann sum)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .numeric import SearchError, bisect_root
from .spaces import (
    Euclidean,
    GeodesicRef,
    HyperbolicPlane,
    IdealPoint,
    MetricTree,
    MinkowskiLp,
    Point,
    RealLine,
    SpaceError,
    boundary_ideal,
    direction_ideal,
    distance,
    line_through,
    on_geodesic,
    point,
    tree_end,
)
from .horofn import busemann_value, ray_toward
from .verify import VerificationReport


@dataclass
class TransferResult:
    image: Point
    shift: object                 # measured t' - t (Fraction on trees)
    residuals: dict = field(default_factory=dict)


def _line_orientation(geo: GeodesicRef, xi: IdealPoint) -> float:
    """+1 if xi sits at the +oo end of geo, -1 at the -oo end."""
    if geo.plus is not None and geo.plus.matches(xi):
        return 1.0
    if geo.minus is not None and geo.minus.matches(xi):
        return -1.0
    raise SpaceError("line is not asymptotic to the given ideal point")


def transfer_param(space, frm: GeodesicRef, to: GeodesicRef, xi: IdealPoint,
                   m: Point, *, target_offset=0) -> object:
    """Parameter t* on `to` with beta_xi(to(t*)) = beta_xi(m) + target_offset.

    beta_xi moves at unit rate along `to`, strictly decreasing toward xi, so
    the root is found by bisection (exactly on trees).
    """
    _line_orientation(frm, xi)  # validates m's line is asymptotic to xi
    sigma = _line_orientation(to, xi)
    beta = _busemann_for(space, frm, xi)
    target = beta(m)
    if isinstance(space, MetricTree):
        # beta(to(t)) = beta(to(0)) - sigma * t exactly
        b0 = beta(to.point_at(0))
        return (b0 - target - Fraction(target_offset)) * Fraction(int(sigma))

    def g(t):
        return float(beta(to.point_at(t))) - float(target) - float(target_offset)
    width = 4.0 * (1.0 + float(distance(space, m, to.point_at(0))))
    lo = hi = None
    w = width
    for _ in range(21):
        if (g(-w) > 0) != (g(w) > 0):
            lo, hi = -w, w
            break
        w *= 2.0
    if lo is None:
        raise SearchError("no Busemann level crossing within the search window")
    return bisect_root(g, lo, hi, tol=1e-12)


def _busemann_for(space, line: GeodesicRef, xi: IdealPoint):
    ray = ray_toward(space, line, xi)

    def beta(p: Point):
        return busemann_value(space, ray, p)
    return beta


def horospherical_transfer(space, frm: GeodesicRef, to: GeodesicRef,
                           xi: IdealPoint, m: Point) -> Point:
    """Image of m in `to` on the same horosphere toward xi; residual <= 1e-8."""
    ok, _, resid = on_geodesic(space, frm, m)
    if not ok:
        raise SpaceError(f"transfer source point is off its line (residual {resid})")
    t = transfer_param(space, frm, to, xi, m)
    out = to.point_at(t)
    beta = _busemann_for(space, frm, xi)
    resid = abs(float(beta(out)) - float(beta(m)))
    if resid > 1e-8:
        raise SearchError(f"transfer residual {resid} exceeds 1e-8")
    return out


def double_transfer(space, a: GeodesicRef, b: GeodesicRef, x: Point,
                    level_shift=0) -> TransferResult:
    """T_{a<->b}: across to b along the a-horospheres, back to a along the
    b-horospheres. The measured shift equals beta_a(b(0)) + beta_b(a(0)).

    ``level_shift`` displaces the return horosphere level; it synthesizes a
    nonzero translation on spaces whose boundary points are all regular.
    """
    xi = a.plus
    if xi is None or b.plus is None or not b.plus.matches(xi):
        raise SpaceError("lines must share their +oo ideal endpoint")
    ok, _, _ = on_geodesic(space, a, x)
    if not ok:
        raise SpaceError("probe point is not on the base line")
    y_param = transfer_param(space, a, b, xi, x)
    y = b.point_at(y_param)
    x2_param = transfer_param(space, b, a, xi, y, target_offset=-level_shift)
    x2 = a.point_at(x2_param)
    beta_a = _busemann_for(space, a, xi)
    beta_b = _busemann_for(space, b, xi)
    # beta_a runs at unit rate along a, so the translation length reads off
    # the Busemann scale with closed-form precision
    shift = beta_a(x) - beta_a(x2)
    if not isinstance(space, MetricTree):
        shift = float(shift)
    formula = beta_a(b.point_at(0)) + beta_b(a.point_at(0)) + level_shift
    residuals = {
        "horosphere_out": abs(float(beta_a(y)) - float(beta_a(x))),
        "horosphere_back": abs(float(beta_b(x2)) - float(beta_b(y)) + float(level_shift)),
        "vs_formula": abs(float(shift) - float(formula)),
    }
    return TransferResult(image=x2, shift=shift, residuals=residuals)


# ---------------------------------------------------------------------------
# scissors

@dataclass
class ScissorsConfig:
    """Four lines a, b, c, d with paired ideal endpoints and center x on both
    b and c: a(-oo)=b(-oo), a(+oo)=c(+oo), c(-oo)=d(-oo), b(+oo)=d(+oo)."""

    space: object
    a: GeodesicRef
    b: GeodesicRef
    c: GeodesicRef
    d: GeodesicRef
    x: Point

    def to_json(self) -> dict:
        def end_rep(ip):
            if ip is None:
                return None
            if isinstance(ip.rep, tuple):
                return list(ip.rep)
            if isinstance(ip.rep, float) and math.isinf(ip.rep):
                return "inf"
            return ip.rep if isinstance(ip.rep, str) else float(ip.rep)

        def line_rec(g):
            rec = {"minus": end_rep(g.minus), "plus": end_rep(g.plus)}
            anchor = g.point_at(0).coords
            rec["anchor"] = _coords_json(anchor)
            return rec
        return {
            "space": _space_json(self.space),
            "a": line_rec(self.a), "b": line_rec(self.b),
            "c": line_rec(self.c), "d": line_rec(self.d),
            "x": _coords_json(self.x.coords),
        }

    @staticmethod
    def from_json(space, data: dict) -> "ScissorsConfig":
        def ideal(rep):
            if isinstance(space, HyperbolicPlane):
                return boundary_ideal(space, math.inf if rep == "inf" else float(rep))
            if isinstance(space, MetricTree):
                return tree_end(space, rep)
            return direction_ideal(space, tuple(rep))

        def line_of(rec):
            through = None
            if not isinstance(space, (HyperbolicPlane, MetricTree)):
                through = point(space, rec["anchor"])
            return line_through(space, ideal(rec["minus"]), ideal(rec["plus"]), through)
        x = Point(space, _coords_from_json(space, data["x"]))
        return ScissorsConfig(space, line_of(data["a"]), line_of(data["b"]),
                              line_of(data["c"]), line_of(data["d"]), x)


def _coords_json(c):
    if isinstance(c, tuple) and c and c[0] in ("v", "e", "r"):
        return [c[0]] + [str(v) if isinstance(v, Fraction) else v for v in c[1:]]
    if isinstance(c, tuple):
        return list(c)
    return c


def _coords_from_json(space, v):
    if isinstance(space, MetricTree):
        tag = v[0]
        if tag == "v":
            return ("v", v[1])
        if tag == "e":
            return ("e", int(v[1]), Fraction(str(v[2])))
        return ("r", v[1], Fraction(str(v[2])))
    if isinstance(v, list):
        return tuple(v)
    return v


def _space_json(space):
    if isinstance(space, HyperbolicPlane):
        return {"kind": "hyperbolic"}
    if isinstance(space, Euclidean):
        return {"kind": "euclidean", "dim": space.dim}
    if isinstance(space, MinkowskiLp):
        return {"kind": "minkowski", "p": space.p}
    if isinstance(space, MetricTree):
        return {"kind": "tree", "desc": space.desc.to_json()}
    if isinstance(space, RealLine):
        return {"kind": "real-line"}
    return {"kind": type(space).__name__}


def validate_scissors(space, cfg: ScissorsConfig, tol: float = 1e-9) -> VerificationReport:
    """Check the five incidence conditions and set the degeneracy flag
    (x on a and on d). Failures are report entries, not errors."""
    rep = VerificationReport("scissors-incidence", tolerance=tol)
    pairs = [
        ("a(-oo)=b(-oo)", cfg.a.minus, cfg.b.minus),
        ("a(+oo)=c(+oo)", cfg.a.plus, cfg.c.plus),
        ("c(-oo)=d(-oo)", cfg.c.minus, cfg.d.minus),
        ("b(+oo)=d(+oo)", cfg.b.plus, cfg.d.plus),
    ]
    for (name, u, v) in pairs:
        if u is None or v is None or not u.matches(v):
            rep.fail({"condition": name,
                      "left": None if u is None else u.rep,
                      "right": None if v is None else v.rep})
    residuals = {}
    for name, line in (("b", cfg.b), ("c", cfg.c)):
        ok, t, resid = on_geodesic(space, line, cfg.x, tol=tol)
        residuals[f"x_on_{name}"] = float(resid)
        if not ok:
            rep.fail({"condition": f"x on {name}", "residual": float(resid)})
    on_a, _, res_a = on_geodesic(space, cfg.a, cfg.x, tol=tol)
    on_d, _, res_d = on_geodesic(space, cfg.d, cfg.x, tol=tol)
    residuals["x_on_a"] = float(res_a)
    residuals["x_on_d"] = float(res_d)
    rep.data["degenerate"] = bool(on_a and on_d)
    rep.data["residuals"] = residuals
    rep.counts = {"incidences": 5, "violations": len(rep.witnesses)}
    return rep.finalize()


def scissors_shift(space, cfg: ScissorsConfig, probe_param=0):
    """(shift by transfer composition, shift by the Busemann-sum formula).

    Composition: push a probe m in a through R_ac, R_cd, R_db, R_ba and
    measure the displacement on the beta_{a-} scale. Formula: the four-term
    sum beta_{a-}(x) + beta_{a+}(x) + beta_{d-}(x) + beta_{d+}(x), each pair
    normalized to vanish at a point of its own line.
    """
    m = cfg.a.point_at(probe_param)
    m1 = cfg.c.point_at(transfer_param(space, cfg.a, cfg.c, cfg.a.plus, m))
    m2 = cfg.d.point_at(transfer_param(space, cfg.c, cfg.d, cfg.c.minus, m1))
    m3 = cfg.b.point_at(transfer_param(space, cfg.d, cfg.b, cfg.d.plus, m2))
    t4 = transfer_param(space, cfg.b, cfg.a, cfg.b.minus, m3)
    m4 = cfg.a.point_at(t4)
    beta_minus = _busemann_for(space, cfg.a, cfg.a.minus)
    by_composition = beta_minus(m4) - beta_minus(m)

    by_formula = scissors_shift_formula(space, cfg)
    if not isinstance(space, MetricTree):
        by_composition = float(by_composition)
    return by_composition, by_formula


def scissors_shift_formula(space, cfg: ScissorsConfig, p_param=0, q_param=0):
    """Four-term Busemann sum at the center, normalized at a(p_param) and
    d(q_param); invariance under moving the normalization points is a test."""
    x = cfg.x

    def pair_sum(line, base_param):
        base = line.point_at(base_param)
        val = 0
        for xi in (line.minus, line.plus):
            ray = ray_toward(space, line, xi)
            # renormalize so beta vanishes at `base`
            b_x = busemann_value(space, ray, x)
            b_0 = busemann_value(space, ray, base)
            val += b_x - b_0
        return val
    total = pair_sum(cfg.a, p_param) + pair_sum(cfg.d, q_param)
    return total if isinstance(space, MetricTree) else float(total)


# ---------------------------------------------------------------------------
# ready-made configurations

def hyperbolic_scissors(a_ends=(-1.0, 1.0), d_ends=(-2.0, 2.0)) -> ScissorsConfig:
    """Scissors in H^2 from boundary endpoints: a = (a-, a+), d = (d-, d+),
    b = (a-, d+), c = (d-, a+), x = the intersection of b and c."""
    H = HyperbolicPlane()
    am, ap = a_ends
    dm, dp = d_ends
    a = line_through(H, boundary_ideal(H, am), boundary_ideal(H, ap))
    d = line_through(H, boundary_ideal(H, dm), boundary_ideal(H, dp))
    b = line_through(H, boundary_ideal(H, am), boundary_ideal(H, dp))
    c = line_through(H, boundary_ideal(H, dm), boundary_ideal(H, ap))
    x = _circle_intersection((am + dp) / 2.0, abs(dp - am) / 2.0,
                             (dm + ap) / 2.0, abs(ap - dm) / 2.0)
    return ScissorsConfig(H, a, b, c, d, point(H, x))


def _circle_intersection(m1, r1, m2, r2):
    if abs(m1 - m2) < 1e-14:
        raise SpaceError("concentric semicircles do not intersect")
    x = (r1 * r1 - r2 * r2 + m2 * m2 - m1 * m1) / (2.0 * (m2 - m1))
    y2 = r1 * r1 - (x - m1) ** 2
    if y2 <= 0:
        raise SpaceError("semicircles do not intersect in the upper half-plane")
    return (x, math.sqrt(y2))


def degenerate_flat_scissors(space, direction=(1.0, 0.0), anchor=(0.0, 0.0)) -> ScissorsConfig:
    """Fully degenerate flat scissors: all four lines coincide, x on them.
    In a flat plane the two opposite Busemann functions sum to zero
    everywhere, so any flat scissors has shift 0; this one is also
    degenerate in the strict sense (x on a and on d)."""
    xi = direction_ideal(space, direction)
    eta = direction_ideal(space, tuple(-v for v in direction))
    base = point(space, anchor)
    line = line_through(space, eta, xi, base)
    return ScissorsConfig(space, line, line, line, line, base)


def flat_translate_scissors(space, offset=(0.0, 1.0)) -> ScissorsConfig:
    """Flat scissors with b = c = d = a translate; valid, shift 0, and
    nondegenerate under the strict flag (x is off the base line)."""
    xi = direction_ideal(space, (1.0, 0.0))
    eta = direction_ideal(space, (-1.0, 0.0))
    a = line_through(space, eta, xi, point(space, (0.0, 0.0)))
    moved = line_through(space, eta, xi, point(space, offset))
    return ScissorsConfig(space, a, moved, moved, moved, point(space, offset))


def tree_scissors(space: MetricTree, ends4) -> ScissorsConfig:
    """Tree scissors through the junction of four distinct ends; degenerate
    because every geodesic between opposite ends passes the center."""
    e_am, e_ap, e_dm, e_dp = ends4
    a = line_through(space, tree_end(space, e_am), tree_end(space, e_ap))
    d = line_through(space, tree_end(space, e_dm), tree_end(space, e_dp))
    b = line_through(space, tree_end(space, e_am), tree_end(space, e_dp))
    c = line_through(space, tree_end(space, e_dm), tree_end(space, e_ap))
    # center: the meeting point of b and c (junction of the four branches)
    _, t_on_b, _ = _tree_meet(space, b, c)
    x = b.point_at(t_on_b)
    return ScissorsConfig(space, a, b, c, d, x)


def _tree_meet(space, g1, g2):
    probe = g2.point_at(0)
    t, resid = None, None
    from .spaces import closest_param
    t, resid = closest_param(space, g1, probe)
    return resid == 0, t, resid
