"""Fat Cantor set on [0,1]: at stage m an open middle of length
scale*4^(-m) is removed from each of the 2^(m-1) components, so the limit
keeps positive measure (3/5 with the default scale 4/5).

Besides materialized stages, this module provides O(stage) local queries
(descend along one component chain) so deep stages never have to be built:
the witness engine works hundreds of stages down, where a stage has 2^m
components.

Stage-m removed middles alternate between two branches by parity: odd
stages feed branch 0, even stages branch 1.  Both branches accumulate at
every point of the limit set, and their closures intersect exactly in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .constructible import ConstructibleSet, Interval
from .staged import IN, OUT, UNDECIDED, StagedSet
from .witness import BoundaryPair

HALF = Fraction(1, 2)


def branch_of_stage(stage: int) -> int:
    """Which of the two open branches a stage's removed middles feed."""
    return 0 if stage % 2 == 1 else 1


@dataclass(frozen=True)
class FatCantorSet:
    """Removal schedule with closed-form stage measures.

    removed_scale is the total middle length removed per component at stage
    m, as a multiple of 4^(-m); it must stay below 1 so removals always fit
    strictly inside their component.
    """

    removed_scale: Fraction = Fraction(4, 5)

    def __post_init__(self):
        object.__setattr__(self, "removed_scale", Fraction(self.removed_scale))
        if not 0 < self.removed_scale < 1:
            raise ValueError("removed_scale must lie in (0, 1)")

    # ------------------------------------------------------------- formulas

    @property
    def window(self) -> tuple[Fraction, Fraction]:
        return (Fraction(0), Fraction(1))

    def gap_length(self, stage: int) -> Fraction:
        return self.removed_scale / 4**stage

    def stage_measure(self, m: int) -> Fraction:
        """Exact measure of stage m: 1 - (scale/2)(1 - 2^-m)."""
        return 1 - self.removed_scale / 2 * (1 - Fraction(1, 2**m))

    def limit_measure(self) -> Fraction:
        return 1 - self.removed_scale / 2

    def component_length(self, m: int) -> Fraction:
        return self.stage_measure(m) / 2**m

    def component_limit_measure(self, m: int) -> Fraction:
        """Exact limit measure inside each stage-m component (removals are
        spread uniformly over components, so this is limit/2^m)."""
        return self.limit_measure() / 2**m

    # -------------------------------------------------------- construction

    def middle_gap(self, lo: Fraction, hi: Fraction, stage: int) -> tuple[Fraction, Fraction]:
        """The open middle removed from component [lo, hi] at a stage."""
        half = self.gap_length(stage) * HALF
        mid = (lo + hi) * HALF
        a, b = mid - half, mid + half
        if not (lo < a < b < hi):
            raise ValueError(f"stage-{stage} gap does not fit inside [{lo}, {hi}]")
        return a, b

    def stage_components(self, m: int) -> list[tuple[Fraction, Fraction]]:
        comps = [self.window]
        for s in range(1, m + 1):
            nxt = []
            for lo, hi in comps:
                a, b = self.middle_gap(lo, hi, s)
                nxt.append((lo, a))
                nxt.append((b, hi))
            comps = nxt
        return comps

    def stage_set(self, m: int) -> ConstructibleSet:
        """Stage m as 2^m closed intervals."""
        return ConstructibleSet(
            tuple(Interval(lo, hi, True, True) for lo, hi in self.stage_components(m))
        )

    def removed_intervals(self, upto: int) -> Iterator[tuple[int, Fraction, Fraction]]:
        """All removed middles of stages <= upto, in (stage, position) order."""
        comps = [self.window]
        for s in range(1, upto + 1):
            nxt = []
            for lo, hi in comps:
                a, b = self.middle_gap(lo, hi, s)
                yield (s, a, b)
                nxt.append((lo, a))
                nxt.append((b, hi))
            comps = nxt

    def branch_stage_set(self, branch: int, m: int) -> ConstructibleSet:
        """Union of removed middles of one branch among stages <= m."""
        pieces = [
            (a, b, False, False)
            for s, a, b in self.removed_intervals(m)
            if branch_of_stage(s) == branch
        ]
        return ConstructibleSet.from_pieces(pieces)

    # ------------------------------------------------------- local queries

    def descend(self, x: Fraction, budget: int):
        """Walk x's component chain for `budget` stages.

        Returns one of
          ("outside",)
          ("gap", stage, a, b)          x strictly inside a removed middle
          ("endpoint", stage, lo, hi)   x is a component endpoint (in the limit)
          ("component", budget, lo, hi) still inside a component at the budget
        """
        x = Fraction(x)
        lo, hi = self.window
        if x < lo or x > hi:
            return ("outside",)
        for s in range(1, budget + 1):
            if x == lo or x == hi:
                return ("endpoint", s - 1, lo, hi)
            a, b = self.middle_gap(lo, hi, s)
            if a < x < b:
                return ("gap", s, a, b)
            if x <= a:
                hi = a
            else:
                lo = b
        if x == lo or x == hi:
            return ("endpoint", budget, lo, hi)
        return ("component", budget, lo, hi)

    def component_of(self, x: Fraction, m: int) -> Optional[Interval]:
        """The stage-m component containing x, without materializing stage m.

        Component endpoints never fall inside a removed middle, so the plain
        walk handles them with no special case."""
        x = Fraction(x)
        lo, hi = self.window
        if x < lo or x > hi:
            return None
        for s in range(1, m + 1):
            a, b = self.middle_gap(lo, hi, s)
            if a < x < b:
                return None
            if x <= a:
                hi = a
            else:
                lo = b
        return Interval(lo, hi, True, True)

    def branch_gap_containing(self, x: Fraction, branch: int, budget: int) -> Optional[Interval]:
        """The removed middle of the given branch containing x, searched down
        to the stage budget; None if x is not inside one."""
        res = self.descend(x, budget)
        if res[0] == "gap" and branch_of_stage(res[1]) == branch:
            _, _, a, b = res
            return Interval(a, b, False, False)
        return None

    def nearest_branch_gap(
        self, x: Fraction, branch: int, max_dist: Fraction, stage_budget: int
    ) -> Optional[tuple[Interval, int]]:
        """A removed middle of the given branch meeting (x-d, x+d), found at
        the shallowest possible stage (largest gaps first); the one with the
        widest overlap wins.  Cost is O(stage) until gaps reach the search
        scale, with a small frontier after that."""
        x = Fraction(x)
        wlo, whi = x - max_dist, x + max_dist
        frontier = [self.window] if self.window[0] < whi and self.window[1] > wlo else []
        for s in range(1, stage_budget + 1):
            if not frontier:
                return None
            hits = []
            nxt = []
            for lo, hi in frontier:
                a, b = self.middle_gap(lo, hi, s)
                if branch_of_stage(s) == branch and a < whi and b > wlo:
                    overlap = min(b, whi) - max(a, wlo)
                    hits.append((overlap, a, b))
                for clo, chi in ((lo, a), (b, hi)):
                    if clo < whi and chi > wlo:
                        nxt.append((clo, chi))
            if hits:
                _, a, b = max(hits)
                return Interval(a, b, False, False), s
            frontier = nxt
        return None

    def child_gaps(
        self, lo: Fraction, hi: Fraction, from_stage: int, depth: int
    ) -> list[tuple[int, int, Interval]]:
        """Removed middles strictly inside the stage-`from_stage` component
        [lo, hi], down to relative depth `depth`, as (branch, stage, interval)
        triples.  Their edges are persistent points of the limit set."""
        out = []
        frontier = [(lo, hi)]
        for s in range(from_stage + 1, from_stage + depth + 1):
            nxt = []
            for clo, chi in frontier:
                a, b = self.middle_gap(clo, chi, s)
                out.append((branch_of_stage(s), s, Interval(a, b, False, False)))
                nxt += [(clo, a), (b, chi)]
            frontier = nxt
        return out

    # -------------------------------------------------------- staged views

    def staged(self) -> StagedSet:
        """The decreasing stage filtration, with sound limit membership."""

        def decide(x: Fraction, budget: int) -> str:
            res = self.descend(x, budget)
            if res[0] in ("outside", "gap"):
                return OUT
            if res[0] == "endpoint":
                return IN
            return UNDECIDED

        return StagedSet(
            self.stage_set,
            monotone="decreasing",
            stage_measure=self.stage_measure,
            decide=decide,
            component_near=lambda x, m: self.component_of(x, m),
            name="fat-cantor",
        )

    def branch_staged(self, branch: int) -> StagedSet:
        """The increasing union of one branch's removed middles."""

        def decide(x: Fraction, budget: int) -> str:
            res = self.descend(x, budget)
            if res[0] == "gap":
                return IN if branch_of_stage(res[1]) == branch else OUT
            if res[0] in ("outside", "endpoint"):
                return OUT
            return UNDECIDED

        return StagedSet(
            lambda m: self.branch_stage_set(branch, m),
            monotone="increasing",
            decide=decide,
            component_near=lambda x, m: self.branch_gap_containing(x, branch, m),
            nearest_component=lambda x, d, budget: self.nearest_branch_gap(x, branch, d, budget),
            name=f"fat-cantor-branch-{branch}",
        )

    def boundary_pair(self) -> BoundaryPair:
        """The two removal branches as a pair ready for the witness engine:
        their closures intersect exactly in the limit set, whose measure and
        per-component density floors are known in closed form."""
        return BoundaryPair(
            v0=self.branch_staged(0),
            v1=self.branch_staged(1),
            window=self.window,
            core=self.staged(),
            measure_floor=self.limit_measure(),
            component_floor=self.component_limit_measure,
            component_length=self.component_length,
            child_gaps=self.child_gaps,
        )
