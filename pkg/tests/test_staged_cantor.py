import random
from fractions import Fraction

import pytest

from vclab.cantor import FatCantorSet, branch_of_stage
from vclab.constructible import ConstructibleSet
from vclab.staged import IN, OUT, UNDECIDED, StagedSet

F = Fraction


@pytest.fixture(scope="module")
def fc():
    return FatCantorSet()


def stage_measure_oracle(m):
    # independent geometric-series account: stage s removes 2^(s-1) middles
    # of length (4/5) * 4^-s each
    removed = sum(F(2 ** (s - 1)) * F(4, 5) / 4**s for s in range(1, m + 1))
    return 1 - removed


def test_stage_measures_against_series_oracle(fc):
    for m in range(10):
        assert fc.stage_set(m).measure() == stage_measure_oracle(m)
        assert fc.stage_measure(m) == stage_measure_oracle(m)
        assert fc.stage_measure(m) == F(3, 5) + F(2, 5) / 2**m


def test_stage_zero_and_monotonicity(fc):
    assert fc.stage_set(0) == ConstructibleSet.interval(0, 1)
    fc.staged().check_monotone(8)
    for branch in (0, 1):
        fc.branch_staged(branch).check_monotone(8)


def test_lazy_membership_examples(fc):
    staged = fc.staged()
    assert staged.membership(F(1, 2), 1) == OUT
    assert staged.membership(F(0), 1) == IN
    assert staged.membership(F(1), 1) == IN
    # gap endpoints persist
    assert staged.membership(F(2, 5), 3) == IN
    assert staged.membership(F(-1, 7), 1) == OUT


def test_lazy_membership_soundness(fc):
    staged = fc.staged()
    rng = random.Random("sound")
    deep = fc.stage_set(9)
    for _ in range(300):
        x = F(rng.randrange(0, 1009), 1008)
        verdict = staged.membership(x, 3)
        if verdict == IN:
            assert deep.contains(x)
        elif verdict == OUT:
            assert not deep.contains(x)


def test_component_of_matches_materialized(fc):
    rng = random.Random("comp")
    for m in range(6):
        stage = fc.stage_set(m)
        for _ in range(40):
            x = F(rng.randrange(0, 241), 240)
            got = fc.component_of(x, m)
            want = [iv for iv in stage.intervals if iv.contains(x)]
            if want:
                assert got == want[0]
            else:
                assert got is None


def test_parity_split(fc):
    # m = 2: branch 0 holds the one stage-1 middle, branch 1 the two stage-2 middles
    v0 = fc.branch_stage_set(0, 2)
    v1 = fc.branch_stage_set(1, 2)
    assert v0 == ConstructibleSet.interval(F(2, 5), F(3, 5), False, False)
    assert len(v1.intervals) == 2
    for m in range(1, 9):
        a = fc.branch_stage_set(0, m)
        b = fc.branch_stage_set(1, m)
        assert a.intersection(b).is_empty
        assert a.measure() + b.measure() == F(2, 5) - F(2, 5) / 2**m
        window = ConstructibleSet.interval(0, 1)
        assert a.union(b) == window.difference(fc.stage_set(m))


def test_branch_membership(fc):
    v0 = fc.branch_staged(0)
    assert v0.membership(F(1, 2), 1) == IN  # inside the stage-1 middle
    assert v0.membership(F(1, 5), 2) == OUT  # stage-2 middle belongs to branch 1
    assert fc.branch_staged(1).membership(F(1, 5), 2) == IN
    assert v0.membership(F(0), 5) == OUT


def test_nearest_branch_gap_is_valid(fc):
    rng = random.Random("near")
    removed = list(fc.removed_intervals(9))
    for _ in range(120):
        x = F(rng.randrange(0, 961), 960)
        branch = rng.randrange(2)
        d = F(1, 2 ** rng.randrange(2, 7))
        hit = fc.nearest_branch_gap(x, branch, d, 9)
        oracle = [
            (s, a, b)
            for s, a, b in removed
            if branch_of_stage(s) == branch and a < x + d and b > x - d
        ]
        if hit is None:
            assert not oracle
        else:
            iv, stage = hit
            assert branch_of_stage(stage) == branch
            assert (stage, iv.lo, iv.hi) in oracle
            # shallowest-stage hits are preferred
            assert stage == min(s for s, _, _ in oracle)


def test_child_gaps_edges_persist(fc):
    gaps = fc.child_gaps(F(0), F(1), 0, 3)
    assert len(gaps) == 1 + 2 + 4
    staged = fc.staged()
    for branch, stage, iv in gaps:
        assert branch == branch_of_stage(stage)
        assert staged.membership(iv.lo, stage + 4) == IN
        assert staged.membership(iv.hi, stage + 4) == IN


def test_staged_declared_measure_mismatch_raises():
    fc = FatCantorSet()
    bad = StagedSet(fc.stage_set, "decreasing", stage_measure=lambda m: F(1, 2))
    with pytest.raises(ValueError):
        bad.stage(1)


def test_generic_staged_defaults():
    window = ConstructibleSet.interval(-1, 1, False, False)
    const = StagedSet(lambda m: window, "increasing")
    assert const.membership(F(0), 0) == IN
    assert const.membership(F(2), 5) == UNDECIDED
    assert const.component_containing(F(0), 0) == window.intervals[0]
    hit = const.nearest_interval(F(2), F(3), 2)
    assert hit == (window.intervals[0], 0)
