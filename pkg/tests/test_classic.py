import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_pair
from shortcut_frechet.classic import (
    bisect_decider,
    bisect_frechet,
    decide_frechet,
    decide_segment_curve,
    segment_frechet,
    vertex_distance_bound,
)
from shortcut_frechet.geom import PolygonalCurve, Segment
from shortcut_frechet.oracle import brute_frechet


def test_segment_frechet_examples():
    s = Segment((0, 0), (2, 0))
    assert segment_frechet(s, s) == 0
    assert segment_frechet(s, Segment((0, 1), (2, 3))) == 3
    assert segment_frechet(Segment((0, 0), (0, 0)), Segment((1, 0), (1, 0))) == 1


def test_decide_identical_and_parallel(parallel_pair):
    T = PolygonalCurve([(0, 0), (1, 2), (3, 1)])
    assert decide_frechet(T, T, 0.0)
    T, B = PolygonalCurve([(0, 0), (1, 0)]), PolygonalCurve([(0, 1), (1, 1)])
    assert decide_frechet(T, B, 1.0)
    assert not decide_frechet(T, B, 0.9)


def test_decide_needs_monotone_matching():
    # B doubles back: a monotone matching needs delta around 1
    T = PolygonalCurve([(0, 0), (4, 0)])
    B = PolygonalCurve([(0, 0), (3, 0), (1, 0), (4, 0)])
    assert not decide_frechet(T, B, 0.9)
    assert decide_frechet(T, B, 1.0)


def test_bisect_examples(parallel_pair):
    T = PolygonalCurve([(0, 0), (1, 2), (3, 1)])
    assert bisect_frechet(T, T, 1e-6) <= 1e-6
    assert bisect_frechet(*parallel_pair, 1e-6) == pytest.approx(1.0, abs=1e-6)


def test_bisect_decider_rejects_bad_tol():
    with pytest.raises(ValueError):
        bisect_decider(lambda d: True, 1.0, 0.0)


def test_bisect_against_sampling_oracle():
    rng = random.Random(11)
    for _ in range(25):
        T, B = random_pair(rng, rng.randint(2, 6), rng.randint(2, 6))
        d = bisect_frechet(T, B, 1e-7)
        lo, hi = brute_frechet(T, B, 128)
        assert lo - 1e-6 <= d <= hi + 1e-6


def test_decide_against_sampling_oracle():
    rng = random.Random(12)
    for _ in range(20):
        T, B = random_pair(rng, rng.randint(2, 8), rng.randint(2, 8))
        lo, hi = brute_frechet(T, B, 128)
        assert decide_frechet(T, B, hi + 1e-6)
        if lo > 1e-6:
            assert not decide_frechet(T, B, lo - 1e-6)


def test_segment_curve_examples():
    assert decide_segment_curve(Segment((0, 0), (2, 0)), PolygonalCurve([(0, 0), (1, 1), (2, 0)]), 1.0)
    assert not decide_segment_curve(Segment((0, 0), (2, 0)), PolygonalCurve([(0, 0), (1, 1), (2, 0)]), 0.99)
    s, c = Segment((0, 0), (2, 0)), Segment((0, 1), (2, 3))
    assert decide_segment_curve(s, PolygonalCurve(c), 3.0)
    assert not decide_segment_curve(s, PolygonalCurve(c), 2.9)


def test_segment_curve_matches_decide_frechet():
    rng = random.Random(13)
    agree = 0
    for _ in range(300):
        T, B = random_pair(rng, rng.randint(2, 7), 2, noise=0.8)
        s = B.edge(0)
        d = rng.uniform(0.2, 4.0)
        if decide_segment_curve(s, T, d - 1e-6) != decide_segment_curve(s, T, d + 1e-6):
            continue
        assert decide_segment_curve(s, T, d) == decide_frechet(PolygonalCurve(s), T, d).feasible
        agree += 1
    assert agree > 250


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.1, 5), st.floats(0, 3))
def test_monotone_and_symmetric(seed, d1, extra):
    T, B = random_pair(random.Random(seed))
    a = decide_frechet(T, B, d1).feasible
    if a:
        assert decide_frechet(T, B, d1 + extra)
    assert a == decide_frechet(B, T, d1).feasible


def test_vertex_distance_bound_is_upper():
    rng = random.Random(14)
    for _ in range(10):
        T, B = random_pair(rng)
        assert decide_frechet(T, B, vertex_distance_bound(T, B))


def test_negative_delta():
    T = PolygonalCurve([(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        decide_frechet(T, T, -1)


def test_boundary_equality_is_feasible():
    T = PolygonalCurve([(0, 0), (3, 0)])
    B = PolygonalCurve([(0, math.sqrt(2)), (3, math.sqrt(2))])
    assert decide_frechet(T, B, math.sqrt(2))
