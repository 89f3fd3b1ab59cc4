"""The discrete counterexample family: inside each removed interval of the
fat Cantor construction, a finite increasing sequence of rational points
accumulating geometrically at both ends, chosen greedily so that all
pairwise differences across the whole point set are distinct.

Distinct pairwise differences force any two points to lie in at most one
common translate of the set, which is the combinatorial mechanism that caps
the number of membership patterns any translate family can realize on a
triple at seven of the eight.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from .cantor import FatCantorSet
from .constructible import ConstructibleSet


def sequence_positions(a: Fraction, b: Fraction, k: int) -> list[tuple[int, Fraction]]:
    """Base positions c_j = a + len * 2^j / (2^j + 1) for j in [-k, k]:
    strictly increasing, approaching a and b geometrically (the distance to
    the nearer end at index +-j is len / (2^j + 1) <= len * 2^-j)."""
    length = b - a
    out = []
    for j in range(-k, k + 1):
        w = Fraction(2**j) if j >= 0 else Fraction(1, 2**-j)
        out.append((j, a + length * w / (w + 1)))
    return out


@dataclass
class CounterexamplePoints:
    """The constructed truncation with its per-interval layout."""

    points: tuple[Fraction, ...]
    by_interval: tuple[tuple[int, Fraction, Fraction, tuple[Fraction, ...]], ...]

    def as_set(self) -> ConstructibleSet:
        return ConstructibleSet.from_points(self.points)

    def point_set(self) -> frozenset:
        return frozenset(self.points)


def counterexample_points(
    fc: FatCantorSet,
    interval_budget: int,
    per_interval: int | Callable[[int], int],
    max_stage: int = 64,
) -> CounterexamplePoints:
    """Greedy difference-injective truncation.

    Intervals are taken in construction order (stage, then position); inside
    each, base positions are perturbed inward within a quarter of the gap to
    the neighboring position, taking the first rational (by a fixed
    denominator-growth enumeration) whose differences to all previously
    placed points are fresh.  per_interval may be a constant or a
    stage-indexed budget.  Injectivity is re-verified exactly before return.
    """
    if interval_budget < 1:
        raise ValueError("need at least one interval")
    chosen: list[tuple[int, Fraction, Fraction]] = []
    for stage, a, b in fc.removed_intervals(max_stage):
        chosen.append((stage, a, b))
        if len(chosen) == interval_budget:
            break
    if len(chosen) < interval_budget:
        raise ValueError(f"only {len(chosen)} intervals exist through stage {max_stage}")

    # Differences are kept as (numerator, denominator) tuples: tuple hashing
    # is much cheaper than Fraction hashing and the values stay exact.
    diffs: set[tuple[int, int]] = set()
    placed: list[Fraction] = []
    layout = []
    for stage, a, b in chosen:
        k = per_interval if isinstance(per_interval, int) else per_interval(stage)
        if k < 1:
            raise ValueError("per-interval budget must be >= 1")
        base = dict(sequence_positions(a, b, k))
        order = [0]
        for j in range(1, k + 1):
            order += [j, -j]
        here: dict[int, Fraction] = {}
        for j in order:
            t = base[j]
            if j >= 0:
                gap = (base[j + 1] if j + 1 in base else b) - t
                direction = 1
            else:
                gap = t - (base[j - 1] if j - 1 in base else a)
                direction = -1
            corridor = gap / 4
            point = None
            # First candidate is the base position itself, then inward nudges
            # corridor/2, corridor/3, ... with ever-larger denominators.
            for h in range(2 * len(placed) * (len(diffs) + len(placed)) + 4):
                cand = t if h == 0 else t + direction * corridor / (h + 1)
                new = set()
                fresh = True
                for p in placed:
                    d = abs(cand - p)
                    key = (d.numerator, d.denominator)
                    if d == 0 or key in diffs or key in new:
                        fresh = False
                        break
                    new.add(key)
                if fresh:
                    point = cand
                    diffs |= new
                    break
            if point is None:
                raise AssertionError("greedy perturbation ran out of candidates")
            placed.append(point)
            here[j] = point
        ordered = tuple(here[j] for j in sorted(here))
        if list(ordered) != sorted(ordered):
            raise AssertionError("per-interval sequence lost monotonicity")
        layout.append((stage, a, b, ordered))

    points = tuple(sorted(placed))
    if not verify_difference_injective(points):
        raise AssertionError("greedy construction failed the final injectivity check")
    return CounterexamplePoints(points, tuple(layout))


def matched_budget_points(fc: FatCantorSet, m: int) -> CounterexamplePoints:
    """Stage-m matched truncation: all removed intervals of stages <= m, each
    carrying enough points that every limit-set point at stage m is within
    2^-m of the truncation (interval of stage s gets max(1, m + 2 - 2s))."""
    return counterexample_points(
        fc,
        interval_budget=2**m - 1,
        per_interval=lambda s: max(1, m + 2 - 2 * s),
        max_stage=max(m, 1),
    )


def verify_difference_injective(points: Sequence[Fraction]) -> bool:
    """Independent exact check: all C(n,2) positive pairwise differences are
    distinct (equivalent to injectivity of (x, y) -> y - x off the diagonal)."""
    pts = list(points)
    n = len(pts)
    seen = set()
    for x, y in combinations(pts, 2):
        d = abs(y - x)
        if d == 0 or d in seen:
            return False
        seen.add(d)
    return len(seen) == n * (n - 1) // 2


def pair_translate_count(points_set: frozenset, p: Fraction, q: Fraction) -> int:
    """Number of translators t with both p and q in t + X; difference
    injectivity forces this to be at most one."""
    delta = q - p
    return sum(1 for x in points_set if x + delta in points_set)


def pair_uniqueness_holds(points: Sequence[Fraction], sample_pairs: Optional[int] = None,
                          rng: Optional[random.Random] = None) -> bool:
    """Exhaustive (or sampled) check that every pair lies in at most one
    common translate."""
    pts = list(points)
    pset = frozenset(pts)
    pairs = list(combinations(pts, 2))
    if sample_pairs is not None and sample_pairs < len(pairs):
        rng = rng or random.Random(0)
        pairs = rng.sample(pairs, sample_pairs)
    return all(pair_translate_count(pset, p, q) <= 1 for p, q in pairs)


@dataclass
class ShatterCheckReport:
    triples_checked: int
    max_patterns: int
    full_shatter_found: bool
    pair_uniqueness_ok: bool


def realized_patterns(points_set: frozenset, triple: Sequence[Fraction]) -> set[int]:
    """All membership patterns of the triple over every translate that meets
    it, plus the empty pattern (any far-away translate realizes it)."""
    patterns = {0}
    translators = {p - x for p in triple for x in points_set}
    for t in translators:
        pat = 0
        for j, p in enumerate(triple):
            if p - t in points_set:
                pat |= 1 << j
        patterns.add(pat)
    return patterns


def no_shatter3_check(
    cx: CounterexamplePoints,
    n_triples: int,
    seed: int = 0,
    extra_triples: Sequence[Sequence[Fraction]] = (),
) -> ShatterCheckReport:
    """Enumerate, for seeded random triples from the truncation (plus any
    caller-supplied ones), every translator that realizes a nonempty pattern,
    and count the patterns realized; with difference injectivity no triple
    can reach all eight."""
    rng = random.Random(f"shatter3/{seed}")
    pset = cx.point_set()
    pts = list(cx.points)
    max_patterns = 0
    full = False
    checked = 0
    triples = [tuple(rng.sample(pts, 3)) for _ in range(n_triples)]
    triples += [tuple(Fraction(v) for v in t) for t in extra_triples]
    for triple in triples:
        pats = realized_patterns(pset, triple)
        checked += 1
        max_patterns = max(max_patterns, len(pats))
        if len(pats) == 8:
            full = True
    uniq = pair_uniqueness_holds(pts, sample_pairs=2000 if len(pts) > 64 else None)
    return ShatterCheckReport(checked, max_patterns, full, uniq)
