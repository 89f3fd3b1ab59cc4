import random
from fractions import Fraction
from itertools import combinations

import pytest

from vclab.cantor import FatCantorSet
from vclab.counterexample import (
    counterexample_points,
    matched_budget_points,
    no_shatter3_check,
    pair_translate_count,
    pair_uniqueness_holds,
    realized_patterns,
    sequence_positions,
    verify_difference_injective,
)

F = Fraction


@pytest.fixture(scope="module")
def fc():
    return FatCantorSet()


def brute_injective(points):
    # oracle: collect every ordered difference and look for collisions
    seen = set()
    for x in points:
        for y in points:
            if x == y:
                continue
            d = y - x
            if d in seen:
                return False
            seen.add(d)
    return True


def test_sequence_positions_shape():
    pos = sequence_positions(F(0), F(1), 3)
    vals = [v for _, v in pos]
    assert vals == sorted(vals)
    assert all(F(0) < v < F(1) for v in vals)
    assert pos[3] == (0, F(1, 2))
    # geometric approach at both ends
    for j, v in pos:
        if j >= 0:
            assert 1 - v <= F(1, 2**j)
        if j <= 0:
            assert v <= F(1, 2**-j)


def test_tiny_budgets(fc):
    cx = counterexample_points(fc, 1, 1)
    assert len(cx.points) == 3
    assert verify_difference_injective(cx.points)
    assert brute_injective(cx.points)
    stage, a, b, seq = cx.by_interval[0]
    assert stage == 1 and (a, b) == (F(2, 5), F(3, 5))
    assert list(seq) == sorted(seq)
    assert all(a < c < b for c in seq)


def test_moderate_budgets_injective_and_bounded(fc):
    cx = counterexample_points(fc, 3, 5)
    assert len(cx.points) == 3 * 11
    assert verify_difference_injective(cx.points)
    assert brute_injective(cx.points)
    for stage, a, b, seq in cx.by_interval:
        length = b - a
        k = (len(seq) - 1) // 2
        for idx, j in enumerate(range(-k, k + 1)):
            c = seq[idx]
            assert a < c < b
            if j >= 0:
                assert b - c <= length / 2**j
            if j <= 0:
                assert c - a <= length / 2**-j


def test_construction_is_deterministic(fc):
    assert counterexample_points(fc, 4, 3).points == counterexample_points(fc, 4, 3).points


def test_pair_uniqueness_exhaustive(fc):
    cx = counterexample_points(fc, 3, 3)
    pts = cx.point_set()
    assert pair_uniqueness_holds(cx.points)
    for p, q in combinations(cx.points, 2):
        # the pair itself sits in one translate (t = 0), never more
        assert pair_translate_count(pts, p, q) == 1


def test_realized_patterns_never_full(fc):
    cx = counterexample_points(fc, 3, 3)
    rng = random.Random("triples")
    pts = cx.point_set()
    for _ in range(300):
        triple = tuple(rng.sample(sorted(pts), 3))
        pats = realized_patterns(pts, triple)
        assert 0 in pats
        assert len(pats) <= 7


def test_no_shatter3_report(fc):
    cx = counterexample_points(fc, 3, 4)
    report = no_shatter3_check(cx, 400, seed=9)
    assert report.triples_checked == 400
    assert not report.full_shatter_found
    assert report.max_patterns <= 7
    assert report.pair_uniqueness_ok


def test_matched_budget_layout(fc):
    cx = matched_budget_points(fc, 3)
    stages = [stage for stage, _, _, _ in cx.by_interval]
    assert len(stages) == 2**3 - 1
    by_stage = {s: 0 for s in set(stages)}
    for stage, _, _, seq in cx.by_interval:
        by_stage[stage] += 1
        assert len(seq) == 2 * max(1, 3 + 2 - 2 * stage) + 1
    assert by_stage == {1: 1, 2: 2, 3: 4}


def test_interval_budget_errors(fc):
    with pytest.raises(ValueError):
        counterexample_points(fc, 0, 1)
    with pytest.raises(ValueError):
        counterexample_points(fc, 3, 0)
    with pytest.raises(ValueError):
        counterexample_points(fc, 100, 1, max_stage=3)
