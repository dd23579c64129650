import json
import math

import pytest

from metriclab.spaces import (
    Euclidean,
    HyperbolicPlane,
    MinkowskiLinf,
    MinkowskiLp,
    RealLine,
    SpaceError,
    direction_ideal,
    geodesic_between,
    line_through,
    point,
    tree_vertex,
)
from metriclab.verify import (
    BijectionSpec,
    SampleSet,
    VerificationReport,
    check_busemann_midpoints,
    check_distance_convexity,
    check_metric_axioms,
    detect_normed_strip,
    hausdorff_distance,
    is_isometry,
    preserves_unit_distance,
    random_sample,
    strip_norm_value,
)


def _identity(space):
    return BijectionSpec("identity", space, space, lambda p: p, lambda p: p)


def test_metric_axioms_catalog_samples(star_tree):
    for space in (Euclidean(2), MinkowskiLp(3.0), HyperbolicPlane(), star_tree):
        sample = random_sample(space, 30, seed=11)
        rep = check_metric_axioms(space, sample, triples=200, seed=3)
        assert rep.passed, rep.witnesses


def test_busemann_midpoints_euclid_equality():
    e2 = Euclidean(2)
    rep = check_busemann_midpoints(e2, point(e2, (0, 0)), point(e2, (4, 0)),
                                   point(e2, (1, 3)))
    assert rep.passed
    assert abs(rep.counts["lhs"] - rep.counts["rhs"]) < 1e-9


def test_busemann_midpoints_linf_witness():
    linf = MinkowskiLinf()
    rep = check_busemann_midpoints(
        linf, point(linf, (0, 0)), point(linf, (2, 0)), point(linf, (2, 2)),
        selector_xy="lower extreme", selector_xz="upper extreme")
    assert not rep.passed
    w = rep.witnesses[0]
    assert w["d_mn"] == 2.0 and w["half_d_yz"] == 1.0


def test_busemann_midpoints_tree_exhaustive(star_tree):
    # all triples of a 7-point sample: the four vertices plus one interior
    # point per edge
    from fractions import Fraction
    from metriclab.spaces import tree_edge_point
    pts = [tree_vertex(star_tree, v) for v in star_tree.desc.vertices]
    pts += [tree_edge_point(star_tree, i, Fraction(1, 4)) for i in range(3)]
    assert len(pts) == 7
    import itertools
    for x, y, z in itertools.permutations(pts, 3):
        rep = check_busemann_midpoints(star_tree, x, y, z)
        assert rep.passed


def test_distance_convexity_euclid_and_hyperbolic():
    e2 = Euclidean(2)
    g1 = geodesic_between(e2, point(e2, (0, 0)), point(e2, (4, 1)))
    g2 = geodesic_between(e2, point(e2, (0, 2)), point(e2, (3, 5)))
    assert check_distance_convexity(e2, g1, g2).passed
    h = HyperbolicPlane()
    gh1 = geodesic_between(h, point(h, (-2, 1)), point(h, (-1, 3)))
    gh2 = geodesic_between(h, point(h, (1, 0.5)), point(h, (2, 2)))
    assert check_distance_convexity(h, gh1, gh2).passed


def test_distance_convexity_linf_violation():
    # the sup norm admits bent unit-speed geodesics from (0,0) to (2,0)
    # through the extreme midpoints; between those, midpoint convexity of
    # the cross-distance fails at the center of the lattice
    linf = MinkowskiLinf()

    def bent(sign):
        def at(t):
            t = float(t)
            if t <= 1.0:
                return point(linf, (t, sign * t))
            return point(linf, (t, sign * (2.0 - t)))
        return at
    from metriclab.spaces import GeodesicRef
    g1 = GeodesicRef(linf, "segment", bent(-1.0), length=2.0)
    g2 = GeodesicRef(linf, "segment", bent(+1.0), length=2.0)
    rep = check_distance_convexity(linf, g1, g2, grid=4)
    assert not rep.passed
    assert rep.witnesses


def test_hausdorff_examples():
    e2 = Euclidean(2)
    A = SampleSet(e2, (point(e2, (0, 0)),))
    B = SampleSet(e2, (point(e2, (3, 4)),))
    assert hausdorff_distance(e2, A, B) == 5.0
    xs = [i / 10 for i in range(100)]
    low = SampleSet(e2, tuple(point(e2, (x, 0.0)) for x in xs))
    high = SampleSet(e2, tuple(point(e2, (x, 1.0)) for x in xs))
    assert abs(hausdorff_distance(e2, low, high) - 1.0) < 1e-12
    assert hausdorff_distance(e2, A, A) == 0.0
    with pytest.raises(SpaceError):
        SampleSet(e2, ())


def test_normed_strip_euclid():
    e2 = Euclidean(2)
    xi, eta = direction_ideal(e2, (1, 0)), direction_ideal(e2, (-1, 0))
    a = line_through(e2, eta, xi, point(e2, (0, 0)))
    b = line_through(e2, eta, xi, point(e2, (0, 1)))
    rep = detect_normed_strip(e2, a, b)
    assert rep.passed and rep.counts["is_strip"] == 1
    table = rep.data["norm_table"]
    for tau, val in zip(table["tau"], table["value"]):
        assert abs(val - math.hypot(tau, 1.0)) <= 1e-6
    # interpolated norm value at beta = 1/2
    got = strip_norm_value(rep, 0.5, 0.5)
    assert abs(got - 0.5 * math.hypot(1.0, 1.0)) <= 1e-6


def test_normed_strip_reversed_orientation():
    # handing the second line parameterized the other way still detects the
    # strip and fits the same norm
    e2 = Euclidean(2)
    xi, eta = direction_ideal(e2, (1, 0)), direction_ideal(e2, (-1, 0))
    a = line_through(e2, eta, xi, point(e2, (0, 0)))
    b_rev = line_through(e2, xi, eta, point(e2, (0, 1)))
    rep = detect_normed_strip(e2, a, b_rev)
    assert rep.passed
    assert rep.data["orientation"] == "reversed"
    table = rep.data["norm_table"]
    for tau, val in zip(table["tau"], table["value"]):
        assert abs(val - math.hypot(tau, 1.0)) <= 1e-6


def test_normed_strip_minkowski_p3():
    l3 = MinkowskiLp(3.0)
    xi, eta = direction_ideal(l3, (1, 0)), direction_ideal(l3, (-1, 0))
    a = line_through(l3, eta, xi, point(l3, (0, 0)))
    b = line_through(l3, eta, xi, point(l3, (0, 1)))
    rep = detect_normed_strip(l3, a, b)
    assert rep.passed
    table = rep.data["norm_table"]
    for tau, val in zip(table["tau"], table["value"]):
        assert abs(val - (abs(tau) ** 3 + 1.0) ** (1 / 3)) <= 1e-6


def test_normed_strip_hyperbolic_diverges():
    h = HyperbolicPlane()
    from metriclab.spaces import boundary_ideal
    a = line_through(h, boundary_ideal(h, -1.0), boundary_ideal(h, 1.0))
    b = line_through(h, boundary_ideal(h, -3.0), boundary_ideal(h, 3.0))
    rep = detect_normed_strip(h, a, b)
    assert not rep.passed
    assert rep.witnesses[0]["reason"] == "not-a-strip"


def test_is_isometry_identity_and_rotation():
    e2 = Euclidean(2)
    sample = random_sample(e2, 20, seed=2)
    assert is_isometry((e2, e2), _identity(e2), sample).passed
    ang = math.pi / 6
    rot = BijectionSpec(
        "rot30", e2, e2,
        lambda p: point(e2, (p.coords[0] * math.cos(ang) - p.coords[1] * math.sin(ang),
                             p.coords[0] * math.sin(ang) + p.coords[1] * math.cos(ang))),
        lambda p: point(e2, (p.coords[0] * math.cos(ang) + p.coords[1] * math.sin(ang),
                             -p.coords[0] * math.sin(ang) + p.coords[1] * math.cos(ang))))
    assert is_isometry((e2, e2), rot, sample).passed


def test_is_isometry_sine_shift_fails():
    rl = RealLine()
    two_pi = 2 * math.pi

    def f(p):
        return point(rl, p.coords + math.sin(two_pi * p.coords) / two_pi)
    spec = BijectionSpec("sine", rl, rl, f, lambda p: p)
    sample = SampleSet(rl, (point(rl, 0.0), point(rl, 0.25)))
    rep = is_isometry((rl, rl), spec, sample)
    assert not rep.passed
    w = rep.witnesses[0]
    assert abs(w["d_after"] - (0.25 + 1 / two_pi)) < 1e-12


def test_preserves_unit_distance_modes():
    rl = RealLine()
    two_pi = 2 * math.pi

    def fwd(p):
        return point(rl, p.coords + math.sin(two_pi * p.coords) / two_pi)

    def inv(p):
        y = p.coords
        lo, hi = y - 0.5, y + 0.5
        for _ in range(100):
            mid = (lo + hi) / 2
            if mid + math.sin(two_pi * mid) / two_pi < y:
                lo = mid
            else:
                hi = mid
        return point(rl, (lo + hi) / 2)
    spec = BijectionSpec("sine", rl, rl, fwd, inv)
    vals = [0.0, 0.25, 1.0, 1.25, -1.0, 2.37, 3.37, 0.8]
    sample = SampleSet(rl, tuple(point(rl, v) for v in vals))
    for mode in ("eq", "le", "lt"):
        rep = preserves_unit_distance((rl, rl), spec, sample, mode=mode)
        assert rep.passed, (mode, rep.witnesses)


def test_isometry_implies_unit_preservation():
    # one direction of the characterization, testable exactly on samples
    e2 = Euclidean(2)
    sample = random_sample(e2, 15, seed=4)
    shift = BijectionSpec(
        "shift", e2, e2,
        lambda p: point(e2, (p.coords[0] + 1.5, p.coords[1] - 0.5)),
        lambda p: point(e2, (p.coords[0] - 1.5, p.coords[1] + 0.5)))
    assert is_isometry((e2, e2), shift, sample).passed
    for mode in ("eq", "le", "lt"):
        assert preserves_unit_distance((e2, e2), shift, sample, mode=mode).passed


def test_report_json_stable_order_and_witness_cap():
    rep = VerificationReport("demo", tolerance=1e-9)
    for k in range(50):
        rep.fail({"k": k})
    rep.finalize()
    assert len(rep.witnesses) == 32
    out = rep.to_json()
    assert list(out.keys()) == ["check", "status", "counts", "witnesses", "tolerance"]
    json.dumps(out)  # serializable


def test_failed_report_requires_witness():
    rep = VerificationReport("demo")
    rep.status = "fail"
    with pytest.raises(AssertionError):
        rep.finalize()
