import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_pair
from shortcut_frechet.classic import decide_frechet
from shortcut_frechet.decide_general import decide_shortcut_3approx
from shortcut_frechet.decide_vertex import VertexStats, bisect_vertex, decide_vertex
from shortcut_frechet.geom import PolygonalCurve
from shortcut_frechet.oracle import exhaustive_vertex_shortcut

SPIKE_T = PolygonalCurve([(0, 0), (10, 0)])
SPIKE_B = PolygonalCurve([(0, 0), (5, 100), (10, 0)])


def test_spike_at_zero():
    assert decide_vertex(SPIKE_T, SPIKE_B, 0.0)


def test_identical_at_zero():
    T = PolygonalCurve([(0, 0), (1, 2), (3, 1), (4, 4)])
    assert decide_vertex(T, T, 0.0)


def test_mid_edge_shortcut_only():
    # B overshoots the corner of T; only a shortcut leaving B mid-edge at
    # (10, 0) recovers T
    T = PolygonalCurve([(0, 0), (10, 0), (10, 10)])
    B = PolygonalCurve([(0, 0), (20, 0), (10, 10)])
    d = 0.5
    assert not decide_vertex(T, B, d)
    assert not exhaustive_vertex_shortcut(T, B, d)
    assert decide_shortcut_3approx(T, B, d).within


def test_bisect_examples():
    T = PolygonalCurve([(0, 0), (1, 2), (3, 1)])
    assert bisect_vertex(T, T, 1e-6) <= 1e-6
    assert bisect_vertex(SPIKE_T, SPIKE_B, 1e-6) <= 1e-6


def _oracle_threshold(T, B, tol):
    lo, hi = 0.0, 50.0
    if exhaustive_vertex_shortcut(T, B, 0.0):
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if exhaustive_vertex_shortcut(T, B, mid):
            hi = mid
        else:
            lo = mid
    return hi


def test_bisect_vs_oracle():
    rng = random.Random(51)
    for _ in range(8):
        T, B = random_pair(rng, rng.randint(2, 5), rng.randint(2, 6))
        tol = 1e-5
        assert abs(bisect_vertex(T, B, tol) - _oracle_threshold(T, B, tol)) <= 2 * tol


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.05, 6))
def test_matches_exhaustive(seed, d):
    T, B = random_pair(random.Random(seed), spikes=0.4)
    lo = exhaustive_vertex_shortcut(T, B, max(0.0, d - 1e-6))
    hi = exhaustive_vertex_shortcut(T, B, d + 1e-6)
    if lo == hi:
        assert decide_vertex(T, B, d) == hi


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.05, 5), st.floats(0, 2))
def test_monotone_and_between(seed, d, extra):
    T, B = random_pair(random.Random(seed), spikes=0.4)
    v = decide_vertex(T, B, d)
    if v:
        assert decide_vertex(T, B, d + extra)
        assert decide_shortcut_3approx(T, B, d).within
    if decide_frechet(T, B, d):
        assert v


def test_reverse_wedge_operation_counts():
    rng = random.Random(52)
    for n in (10, 20, 40):
        T, B = random_pair(rng, n, n, spikes=0.5)
        st_ = VertexStats()
        decide_vertex(T, B, 1.0, stats=st_)
        # per cell at most i disks added: O(n) disks per cell, O(n^3) overall worst case
        assert st_.wedge_disks <= n * n * n
        assert st_.queries <= n * n * n
