"""Integer-step sequences, tape validation and construction in normed strips,
and the third-division collapse check.

A tape is 4p rows of unit-step sequences on four parallel lines, tied
together by a prescribed system of unit quadruples (consecutive distances 1,
endpoints at distance 3). The rigidity consequence is the row-1 position law
pos(j, z) = (j-1)(2p-1)/p + z along the base line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import bisect_root, golden_min
from .spaces import (
    Euclidean,
    GeodesicRef,
    MetricTree,
    MinkowskiLp,
    Point,
    PreconditionError,
    SpaceError,
    distance,
    vadd,
    vscale,
    vsub,
)
from .verify import VerificationReport, _jsonable


@dataclass
class RSequence:
    """Unit-step isometric copy of a window of integers."""

    space: object
    points: dict            # z (int) -> Point

    def window(self):
        zs = sorted(self.points)
        return zs[0], zs[-1]


@dataclass
class PTape:
    space: object
    p: int
    points: dict            # (i, j, z) -> Point

    def row(self, i: int, j: int) -> RSequence:
        pts = {z: pt for (ii, jj, z), pt in self.points.items() if ii == i and jj == j}
        return RSequence(self.space, pts)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "points": {f"{i},{j},{z}": _jsonable(pt.coords)
                       for (i, j, z), pt in sorted(self.points.items())},
        }

    @staticmethod
    def from_json(space, data: dict) -> "PTape":
        pts = {}
        for key, coords in data["points"].items():
            i, j, z = (int(v) for v in key.split(","))
            pts[(i, j, z)] = Point(space, tuple(coords))
        return PTape(space, int(data["p"]), pts)


def shift_window(tape: PTape, s: int) -> PTape:
    """Relabel every z index by a common integer shift."""
    return PTape(tape.space, tape.p,
                 {(i, j, z + s): pt for (i, j, z), pt in tape.points.items()})


# ---------------------------------------------------------------------------
# validation

def validate_r_sequence(seq: RSequence, tol: float = 1e-9) -> VerificationReport:
    """All window pairs must satisfy d(x_z1, x_z2) = |z1 - z2| (exact on trees)."""
    zs = sorted(seq.points)
    if len(zs) < 2:
        raise SpaceError("r-sequence window needs at least two indices")
    rep = VerificationReport("r-sequence", tolerance=tol)
    exact = isinstance(seq.space, MetricTree)
    pairs = 0
    for a in range(len(zs)):
        for b in range(a + 1, len(zs)):
            z1, z2 = zs[a], zs[b]
            d = distance(seq.space, seq.points[z1], seq.points[z2])
            pairs += 1
            bad = (d != z2 - z1) if exact else abs(float(d) - (z2 - z1)) > tol
            if bad:
                rep.fail({"z1": z1, "z2": z2, "d": d, "expected": z2 - z1})
    rep.counts = {"pairs": pairs, "violations": len(rep.witnesses)}
    return rep.finalize()


def tape_quadruples(p: int):
    """Index quadruples of the tape's segment system: p straight ones at
    z = 0 plus p diagonals, wrapping out-of-range j by +-p with the
    compensating z shift +-(2p - 1)."""
    quads = []
    for j in range(1, p + 1):
        quads.append([(i, j, 0) for i in range(4)])
    for k in range(1, p + 1):
        quad = []
        for i in range(4):
            j = k + 1 - i
            z = 0
            if j > p:
                j -= p
                z = 2 * p - 1
            elif j < 1:
                j += p
                z = -(2 * p - 1)
            quad.append((i, j, z))
        quads.append(quad)
    return quads


def validate_p_tape(tape: PTape, tol: float = 1e-9) -> VerificationReport:
    """Row r-sequence property plus the unit-quadruple system."""
    p = tape.p
    if p < 2:
        raise SpaceError("tape needs p >= 2")
    rep = VerificationReport(f"p-tape[p={p}]", tolerance=tol)
    exact = isinstance(tape.space, MetricTree)
    rows_checked = 0
    for i in range(4):
        for j in range(1, p + 1):
            row = tape.row(i, j)
            if not row.points:
                raise SpaceError(f"missing row ({i}, {j})")
            sub = validate_r_sequence(row, tol=tol)
            rows_checked += 1
            if not sub.passed:
                rep.fail({"row": (i, j), "violations": sub.counts["violations"]})
    quads = tape_quadruples(p)
    for quad in quads:
        try:
            pts = [tape.points[idx] for idx in quad]
        except KeyError as missing:
            raise SpaceError(f"tape is missing point {missing}") from None
        for a in range(3):
            d = distance(tape.space, pts[a], pts[a + 1])
            bad = (d != 1) if exact else abs(float(d) - 1.0) > tol
            if bad:
                rep.fail({"quad": quad, "step": a, "d": d, "expected": 1})
        d03 = distance(tape.space, pts[0], pts[3])
        bad = (d03 != 3) if exact else abs(float(d03) - 3.0) > tol
        if bad:
            rep.fail({"quad": quad, "step": "ends", "d": d03, "expected": 3})
    rep.counts = {"rows": rows_checked, "quadruples": len(quads),
                  "violations": len(rep.witnesses)}
    return rep.finalize()


# ---------------------------------------------------------------------------
# third-division configuration check

def check_third_division(space, pts: dict, tol: float = 1e-9) -> VerificationReport:
    """Verify the 2p third-division relations on 4p labeled points and, when
    they all hold, the forced coincidence of the middle rows.

    ``pts`` maps (i, j) for i in 0..3, j in 1..p to Points. Passing means
    every relation p-m-n-q holds (three equal thirds, metric collinearity)
    and the {y_1j} and {y_2j} rows each collapse to a single point.
    """
    rows = {i for (i, _) in pts}
    js = {j for (_, j) in pts}
    p = max(js) if js else 0
    if rows != {0, 1, 2, 3} or js != set(range(1, p + 1)) or len(pts) != 4 * p or p < 2:
        raise SpaceError("third-division check needs points (i, j), i in 0..3, j in 1..p")
    rep = VerificationReport(f"third-division[p={p}]", tolerance=tol)

    def rel_indices():
        for j in range(1, p + 1):
            yield [(0, j), (1, j), (2, j), (3, j)]
        for k in range(1, p + 1):
            yield [(i, ((k - i) % p) + 1) for i in range(4)]

    relations = 0
    for rel in rel_indices():
        quad = [pts[idx] for idx in rel]
        dtot = float(distance(space, quad[0], quad[3]))
        third = dtot / 3.0
        segs = [float(distance(space, quad[a], quad[a + 1])) for a in range(3)]
        relations += 1
        for a, seg in enumerate(segs):
            if abs(seg - third) > tol:
                rep.fail({"relation": rel, "segment": a, "d": seg, "expected": third})
        if abs(sum(segs) - dtot) > tol:
            rep.fail({"relation": rel, "segment": "collinearity",
                      "sum": sum(segs), "total": dtot})
    relations_hold = not rep.witnesses
    rep.data["relations_hold"] = relations_hold
    if relations_hold:
        for i in (1, 2):
            spread = max(
                float(distance(space, pts[(i, j1)], pts[(i, j2)]))
                for j1 in range(1, p + 1) for j2 in range(j1 + 1, p + 1))
            rep.data[f"row{i}_spread"] = spread
            if spread > tol:
                rep.fail({"row": i, "spread": spread})
    rep.counts = {"relations": relations, "violations": len(rep.witnesses)}
    return rep.finalize()


# ---------------------------------------------------------------------------
# position law and construction

def tape_position(p: int, j: int, z: int) -> Fraction:
    """Row-1 position along the base line: (j-1)(2p-1)/p + z."""
    if not 1 <= j <= p:
        raise SpaceError(f"j = {j} outside 1..{p}")
    return Fraction((j - 1) * (2 * p - 1), p) + z


def _norm_of(space):
    if isinstance(space, Euclidean) and space.dim == 2:
        return space.norm
    if isinstance(space, MinkowskiLp) and space.dim == 2:
        return space.norm
    raise SpaceError("tape construction runs in strictly convex planes only")


def _chord_roots(norm, u, w, height: float):
    """The two roots alpha of ||alpha u + height w|| = 1 (requires a root)."""
    def phi(al):
        return norm(vadd(vscale(u, al), vscale(w, height))) - 1.0
    if phi(0.0) >= 0.0:
        raise PreconditionError("transverse height leaves no unit point")
    hi = bisect_root(phi, 0.0, 2.0, tol=1e-14)
    lo = bisect_root(phi, -2.0, 0.0, tol=1e-14)
    return lo, hi


def build_p_tape(space, a: GeodesicRef, p: int, drift: float,
                 strip_width: float = None, window=None) -> PTape:
    """Construct a p-tape inside the strip about the base line ``a``.

    ``drift`` is the distance from the base line of the probe unit point q:
    the second unit root t at that height gates the construction (requires
    2/p < 2 - |t|). The tape's own transverse step is then solved so that
    the diagonal chord is exactly 2 - 1/p, making all quadruple constraints
    hold and row 1 follow the position law along ``a``.
    """
    norm = _norm_of(space)
    if p < 2:
        raise PreconditionError("need p >= 2")
    cap = min(1.0, strip_width) if strip_width is not None else 1.0
    if not 0.0 < drift < cap:
        raise PreconditionError(f"drift must lie in (0, {cap})")
    if a.kind != "line":
        raise SpaceError("tape construction needs a base line")
    u = vsub(a.point_at(1.0).coords, a.point_at(0.0).coords)   # unit direction
    w = (-u[1], u[0])                                          # Euclidean perp

    # normed distance from w to the base direction, so `drift` is a true
    # point-line distance
    _, d_w = golden_min(lambda t: norm(vsub(w, vscale(u, t))), -4.0, 4.0, tol=1e-14)
    beta_gate = drift / d_w
    lo, hi = _chord_roots(norm, u, w, beta_gate)
    t_chord = hi - lo
    if not 2.0 / p < 2.0 - abs(t_chord):
        raise PreconditionError(
            f"p = {p} too small for drift {drift}: need 2/p < {2.0 - abs(t_chord):.6f}")

    D = 2.0 - 1.0 / p

    def chord_gap(beta):
        lo_b, hi_b = _chord_roots(norm, u, w, beta)
        return (hi_b - lo_b) - D
    # chord shrinks from 2 at height 0; the gate guarantees a crossing below
    beta_tape = bisect_root(chord_gap, 1e-9, beta_gate, tol=1e-14)
    alpha_lo, alpha_hi = _chord_roots(norm, u, w, beta_tape)
    step_up = vadd(vscale(u, alpha_hi), vscale(w, beta_tape))

    if window is None:
        window = (-2 * p, 2 * p)
    zmin, zmax = window
    pts = {}
    for i in range(4):
        off = vscale(step_up, i - 1)
        for j in range(1, p + 1):
            base = float(tape_position(p, j, 0))
            for z in range(zmin, zmax + 1):
                anchor = a.point_at(base + z).coords
                pts[(i, j, z)] = Point(space, vadd(anchor, off))
    return PTape(space, p, pts)
