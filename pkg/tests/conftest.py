from fractions import Fraction

import pytest

from metriclab.spaces import MetricTree, TreeDesc


@pytest.fixture
def star_tree():
    """Three edges of length 1/2 around a center; n = 2."""
    return MetricTree(TreeDesc(
        vertices=("c", "l1", "l2", "l3"),
        edges=(("c", "l1", Fraction(1, 2)), ("c", "l2", Fraction(1, 2)),
               ("c", "l3", Fraction(1, 2))),
        denominator_bound=2))


@pytest.fixture
def path_tree():
    """Path of three edges of length 1/2; n = 2 (the grasshopper tree)."""
    return MetricTree(TreeDesc(
        vertices=("v0", "v1", "v2", "v3"),
        edges=(("v0", "v1", Fraction(1, 2)), ("v1", "v2", Fraction(1, 2)),
               ("v2", "v3", Fraction(1, 2))),
        denominator_bound=2))


@pytest.fixture
def ended_tree():
    """Star with four infinite ends plus a finite spur; n = 2."""
    return MetricTree(TreeDesc(
        vertices=("x0", "e1", "e2", "e3", "e4", "spur"),
        edges=(("x0", "e1", Fraction(1, 2)), ("x0", "e2", Fraction(1, 2)),
               ("x0", "e3", Fraction(1, 2)), ("x0", "e4", Fraction(1, 2)),
               ("x0", "spur", Fraction(1, 2))),
        denominator_bound=2,
        ends=("e1", "e2", "e3", "e4")))
