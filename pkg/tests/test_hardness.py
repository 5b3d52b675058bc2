import json
import math
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortcut_frechet.decide_general import decide_shortcut_3approx
from shortcut_frechet.hardness import (
    GadgetParams,
    ParamViolation,
    SubsetSumInstance,
    audit_construction,
    enumerate_subsets,
    generate,
    mutate,
    mutation_targets,
    one_touch_encoding,
    verify_encoding,
)


@pytest.fixture(scope="module")
def tiny():
    return generate(SubsetSumInstance((1,), 1))


def _len(c, m):
    a, b = c.ends(m)
    return a - b


def _estar_offsets(c, I):
    """Distance of each e* visit from the left end of its mirror."""
    enc = one_touch_encoding(c, I)
    return {m.gadget: v[0] - c.ends(m)[1] for v, (m, _) in zip(enc.vertices, enc.targets) if m is not None and m.name == "e*"}


def test_estar_lengths(tiny):
    assert _len(tiny, tiny.mirror(0, "e*")) == 50
    assert _len(tiny, tiny.mirror(1, "e*")) == 75


def test_first_center(tiny):
    assert tiny.center(0, "p1").x == Q(55, 2)


def test_empty_subset_distances():
    c = generate(SubsetSumInstance((3, 1, 4), 4))
    gamma = c.params.gamma
    assert set(_estar_offsets(c, set()).values()) == {gamma}


def test_full_subset_distance():
    s = (3, 1, 4)
    c = generate(SubsetSumInstance(s, 4))
    off = _estar_offsets(c, {1, 2, 3})
    assert off[3] == c.params.gamma * (sum(s) + 1)
    # partial sums along the way
    for i in range(4):
        assert off[i] == c.params.gamma * (sum(s[:i]) + 1)


def test_projection_identity_exact():
    c = generate(SubsetSumInstance((2, 3, 5), 5))
    alpha = c.params.alpha
    for I in (set(), {1}, {2, 3}, {1, 2, 3}):
        enc = one_touch_encoding(c, I)
        for k in range(1, len(enc.vertices)):
            m, p = enc.targets[k]
            if m is None or p is None:
                continue
            (x1, y1), (x2, y2) = enc.vertices[k - 1], enc.vertices[k]
            # both points are on a line through (p, 0); heights scale offsets
            assert (x1 - p.x) * y2 == (x2 - p.x) * y1
            # the centre lies between the heights, and offsets scale by the height ratio
            assert y1 * y2 < 0
            assert abs(x2 - p.x) * abs(y1) == abs(x1 - p.x) * abs(y2)
            if alpha in (abs(y1), abs(y2)) and 1 in (abs(y1), abs(y2)):
                lo, hi = sorted((abs(x1 - p.x), abs(x2 - p.x)))
                assert alpha * hi == lo


@pytest.mark.parametrize(
    "s,sigma,feasible",
    [((1,), 1, {frozenset({1})}), ((2, 3), 5, {frozenset({1, 2})}), ((1, 2, 4), 7, {frozenset({1, 2, 3})})],
)
def test_verify_examples(s, sigma, feasible):
    c = generate(SubsetSumInstance(s, sigma))
    count, good = enumerate_subsets(c)
    assert count == 2 ** len(s)
    assert set(good) == feasible


def test_verify_n1(tiny):
    assert verify_encoding(tiny, {1})
    assert not verify_encoding(tiny, set())


def test_param_violations():
    with pytest.raises(ParamViolation):
        GadgetParams(Q(1), Q(5), Q(5), Q(25)).validate(1)
    with pytest.raises(ParamViolation):
        GadgetParams(Q(1, 2), Q(5), Q(5), Q(1)).validate(1)
    with pytest.raises((ParamViolation, ValueError)):
        SubsetSumInstance((0, 1), 1)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_bit_length_bound(n):
    rng = random.Random(n)
    s = tuple(rng.randint(1, 100) for _ in range(n))
    c = generate(SubsetSumInstance(s, sum(s) // 2))
    bits = max(max(abs(q.numerator).bit_length(), q.denominator.bit_length()) for P in (c.T, c.B) for v in P for q in v)
    assert bits <= 3 * (math.log2(n) + math.log2(sum(s)))


def test_linear_size():
    sizes = {}
    for n in (4, 8, 16):
        c = generate(SubsetSumInstance(tuple(range(1, n + 1)), n))
        sizes[n] = len(c.T) + len(c.B)
    # constant vertices per gadget
    assert sizes[16] - sizes[8] == 2 * (sizes[8] - sizes[4])


def test_estar_audit_values():
    c = generate(SubsetSumInstance((4, 9), 9))
    for i, s in enumerate(c.inst.s, start=1):
        b4 = c.steps[i]["b4"]
        d4 = c.ends(c.mirror(i, "e*"))[1]
        assert b4 - d4 == c.params.gamma * s


def test_audits_random():
    rng = random.Random(71)
    for _ in range(15):
        n = rng.randint(1, 16)
        s = tuple(rng.randint(1, 60) for _ in range(n))
        c = generate(SubsetSumInstance(s, rng.randint(1, sum(s))))
        rep = audit_construction(c)
        assert rep.passed, rep.failures()[:3]


def test_mutations_detected():
    c = generate(SubsetSumInstance((2, 3), 5))
    targets = mutation_targets(c)
    assert targets
    for t in targets:
        assert not audit_construction(mutate(c, t)).passed, t
    assert audit_construction(c).passed


def test_metadata_roundtrip():
    c = generate(SubsetSumInstance((2, 3), 5))
    meta = json.loads(json.dumps(c.metadata()))
    assert meta["sigma"] in (5, "5")
    assert len(meta["mirrors"]) == len(c.mirrors)
    assert all(Q(m["y"]) in (1, -1, Q(1, 2)) for m in meta["mirrors"])


@settings(max_examples=12, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=1, max_size=5), st.data())
def test_feasibility_equivalence(s, data):
    sigma = data.draw(st.integers(1, sum(s)))
    c = generate(SubsetSumInstance(tuple(s), sigma))
    _, good = enumerate_subsets(c)
    expect = {frozenset(I) for I in _subsets(len(s)) if sum(s[i - 1] for i in I) == sigma}
    assert set(good) == expect


def _subsets(n):
    for mask in range(1 << n):
        yield {i + 1 for i in range(n) if mask >> i & 1}


def test_yes_instance_within_three_delta():
    c = generate(SubsetSumInstance((1, 2), 3))
    T, B = c.curves()
    assert decide_shortcut_3approx(T, B, 1.0).within
