import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortcut_frechet.geom import (
    EMPTY,
    CurveFormatError,
    DegenerateCurve,
    Disk,
    ParamInterval,
    PolygonalCurve,
    Segment,
    disk_segment_intersection,
    format_curve,
    normalize_curve,
    parse_curve,
    point_segment_distance,
    read_curve,
    segment_hippodrome_interval,
    tolerance,
    write_curve,
)

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def test_normalize_collapses_duplicates():
    assert normalize_curve([(0, 0), (0, 0), (1, 0)]).vertices == ((0, 0), (1, 0))


def test_normalize_identity():
    assert normalize_curve([(0, 0), (1, 0), (2, 0)]).vertices == ((0, 0), (1, 0), (2, 0))


def test_single_point_is_degenerate():
    with pytest.raises(DegenerateCurve):
        normalize_curve([(5, 5)])
    with pytest.raises(DegenerateCurve):
        normalize_curve([(5, 5), (5, 5)])


def test_curve_rejects_zero_edges_and_nan():
    with pytest.raises(DegenerateCurve):
        PolygonalCurve([(0, 0), (0, 0), (1, 0)])
    with pytest.raises((DegenerateCurve, ValueError)):
        PolygonalCurve([(0, 0), (math.nan, 0)])


@given(st.lists(point, min_size=2, max_size=8))
def test_normalize_idempotent(pts):
    try:
        c = normalize_curve(pts)
    except DegenerateCurve:
        return
    assert normalize_curve(c.vertices) == c


@pytest.mark.parametrize(
    "p,s,want",
    [((0, 1), ((-1, 0), (1, 0)), 1.0), ((2, 0), ((0, 0), (1, 0)), 1.0), ((0.5, 0), ((0, 0), (1, 0)), 0.0)],
)
def test_point_segment_distance(p, s, want):
    assert point_segment_distance(p, Segment(*s)) == pytest.approx(want)


def test_disk_segment_examples():
    s = Segment((0, 0), (2, 0))
    iv = disk_segment_intersection(Disk((1, 1), 1.0), s)
    assert iv.lo == pytest.approx(0.5) and iv.hi == pytest.approx(0.5)
    iv = disk_segment_intersection(Disk((1, 1), math.sqrt(2)), s)
    assert iv.lo == pytest.approx(0.0, abs=1e-12) and iv.hi == pytest.approx(1.0)
    assert disk_segment_intersection(Disk((10, 10), 1.0), s).empty


@settings(max_examples=200)
@given(point, point, point, st.floats(0, 20), st.floats(0, 20))
def test_disk_interval_monotone_in_radius(c, a, b, r1, r2):
    if a == b:
        return
    r1, r2 = min(r1, r2), max(r1, r2)
    s = Segment(a, b)
    i1, i2 = disk_segment_intersection(Disk(c, r1), s), disk_segment_intersection(Disk(c, r2), s)
    if not i1.empty:
        assert not i2.empty
        assert i2.lo <= i1.lo + 1e-9 and i1.hi <= i2.hi + 1e-9


@settings(max_examples=200)
@given(point, point, point, st.floats(0.01, 20))
def test_distance_vs_disk_interval(p, a, b, r):
    if a == b:
        return
    s = Segment(a, b)
    d = point_segment_distance(p, s)
    iv = disk_segment_intersection(Disk(p, r), s)
    if abs(d - r) > 1e-7 * max(1, r):
        assert (d <= r) == (not iv.empty)


def test_disk_solver_accuracy_on_long_tangent_segment():
    # a segment of length 1e6 tangent to a unit circle must still touch it
    s = Segment((-5e5, 1.0), (5e5, 1.0))
    assert not disk_segment_intersection(Disk((0.3, 0.0), 1.0 + tolerance(1.0)), s).empty


def test_hippodrome_interval():
    s = Segment((0, 2), (10, 2))
    other = Segment((3, 0), (5, 0))
    iv = segment_hippodrome_interval(s, other, 2.0)
    assert iv.lo == pytest.approx(0.3) and iv.hi == pytest.approx(0.5)
    assert segment_hippodrome_interval(s, other, 1.0).empty


def test_param_interval_ops():
    a, b = ParamInterval(0.1, 0.5), ParamInterval(0.4, 0.9)
    assert a.intersect(b) == ParamInterval(0.4, 0.5)
    assert a.hull(b) == ParamInterval(0.1, 0.9)
    assert EMPTY.empty and EMPTY.hull(a) == a
    assert a.intersect(ParamInterval(0.6, 0.7)).empty


def test_tolerance():
    assert tolerance(0.5) == 1e-9
    assert tolerance(-1e4) == pytest.approx(1e-5)


def test_curve_grid_parameterization():
    c = PolygonalCurve([(0, 0), (2, 0), (2, 4)])
    assert c.at_grid(0.5) == (1, 0)
    assert c.at_grid(1.5) == (2, 2)
    assert c.at(1.0) == (2, 4)
    assert c.subcurve(0.5, 1.5) == [(1, 0), (2, 0), (2, 2)]


@settings(max_examples=100)
@given(st.lists(point, min_size=2, max_size=10, unique=True))
def test_curve_text_round_trip(pts):
    text = format_curve("c", pts)
    name, back = parse_curve(text)
    assert name == "c" and back == [(float(x), float(y)) for x, y in pts]


def test_rational_round_trip(tmp_path):
    pts = [(Fraction(1, 3), Fraction(-7, 2)), (Fraction(5), Fraction(0))]
    path = tmp_path / "c.rcurve"
    write_curve(path, "q", pts, digits=0)
    assert read_curve(path, exact=True) == ("q", pts)
    assert "1/3" in path.read_text()


def test_fraction_decimal_rounding():
    text = format_curve("q", [(Fraction(1, 3), Fraction(2, 3))], digits=30)
    assert "0.333333333333333333333333333333" in text


@pytest.mark.parametrize(
    "text",
    ["", "curve a\n0 0\n", "curve a 2\n0 0\n", "curve a 1\n0 x\n", "shape a 1\n0 0\n", "curve a 1\n1/0 0\n"],
)
def test_parse_errors(text):
    with pytest.raises(CurveFormatError):
        parse_curve(text)


def test_parse_comments_and_fractions():
    name, pts = parse_curve("# hi\ncurve z 2\n1/2 0\n# mid\n3 4\n")
    assert name == "z" and pts == [(0.5, 0.0), (3.0, 4.0)]
