"""Exact 1-D constructible sets: finite unions of rational intervals plus
isolated rational points, with boolean algebra, topology and measure.

Every endpoint is a Fraction; there is no floating point anywhere in this
module, so set equality, measure and border computations are exact.  Values
are immutable and canonical: two sets are equal iff their canonical forms
are structurally equal.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .rational import format_rational, parse_rational


@dataclass(frozen=True, order=True)
class Interval:
    """A nondegenerate rational interval with open/closed end flags."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo:
            return self.lo_closed
        if x == self.hi:
            return self.hi_closed
        return True

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)},{format_rational(self.hi)}{right}"


# A "piece" is (lo, hi, lo_closed, hi_closed); lo == hi with both ends closed
# denotes a single point, any other degenerate combination is empty.
Piece = tuple[Fraction, Fraction, bool, bool]


class ConstructibleSet:
    """Canonical finite union of intervals and isolated points."""

    __slots__ = ("intervals", "points", "_hash")

    def __init__(self, intervals: tuple[Interval, ...] = (), points: tuple[Fraction, ...] = ()):
        # Trust the caller only through from_pieces; direct construction is for
        # already-canonical data (internal use and simple literals).
        object.__setattr__(self, "intervals", tuple(intervals))
        object.__setattr__(self, "points", tuple(points))
        object.__setattr__(self, "_hash", None)

    # ---------------------------------------------------------------- build

    @classmethod
    def empty(cls) -> "ConstructibleSet":
        return cls()

    @classmethod
    def point(cls, x) -> "ConstructibleSet":
        return cls(points=(Fraction(x),))

    @classmethod
    def from_points(cls, xs: Iterable) -> "ConstructibleSet":
        return cls.from_pieces([(Fraction(x), Fraction(x), True, True) for x in xs])

    @classmethod
    def interval(cls, lo, hi, lo_closed=True, hi_closed=True) -> "ConstructibleSet":
        lo, hi = Fraction(lo), Fraction(hi)
        return cls.from_pieces([(lo, hi, lo_closed, hi_closed)])

    @classmethod
    def from_intervals(cls, ivs: Iterable[Interval]) -> "ConstructibleSet":
        return cls.from_pieces([(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed) for iv in ivs])

    @classmethod
    def from_pieces(cls, pieces: Iterable[Piece]) -> "ConstructibleSet":
        """Canonicalize an arbitrary collection of interval/point pieces."""
        kept: list[Piece] = []
        for lo, hi, lc, hc in pieces:
            lo, hi = Fraction(lo), Fraction(hi)
            if lo > hi:
                raise ValueError(f"piece with lo > hi: {lo} > {hi}")
            if lo == hi:
                if lc and hc:
                    kept.append((lo, hi, True, True))
                continue  # degenerate open/half-open piece is empty
            kept.append((lo, hi, lc, hc))
        if not kept:
            return cls()
        kept.sort(key=lambda p: (p[0], not p[2], p[1]))
        merged: list[list] = [list(kept[0])]
        for lo, hi, lc, hc in kept[1:]:
            cur = merged[-1]
            touching = lo < cur[1] or (lo == cur[1] and (lc or cur[3]))
            if touching:
                if lo == cur[0]:
                    cur[2] = cur[2] or lc
                if hi > cur[1]:
                    cur[1], cur[3] = hi, hc
                elif hi == cur[1]:
                    cur[3] = cur[3] or hc
            else:
                merged.append([lo, hi, lc, hc])
        intervals = []
        points = []
        for lo, hi, lc, hc in merged:
            if lo == hi:
                points.append(lo)
            else:
                intervals.append(Interval(lo, hi, lc, hc))
        return cls(tuple(intervals), tuple(points))

    # ------------------------------------------------------------- queries

    @property
    def is_empty(self) -> bool:
        return not self.intervals and not self.points

    def __bool__(self) -> bool:
        return not self.is_empty

    def contains(self, x) -> bool:
        x = Fraction(x)
        i = bisect_right(self.points, x)
        if i > 0 and self.points[i - 1] == x:
            return True
        los = [iv.lo for iv in self.intervals]
        j = bisect_right(los, x)
        if j > 0 and self.intervals[j - 1].contains(x):
            return True
        return False

    __contains__ = contains

    def measure(self) -> Fraction:
        return sum((iv.length for iv in self.intervals), Fraction(0))

    def components(self) -> Iterator[Piece]:
        """Intervals and points in increasing order, points as degenerates."""
        pieces = [(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed) for iv in self.intervals]
        pieces += [(p, p, True, True) for p in self.points]
        return iter(sorted(pieces))

    def hull(self) -> tuple[Fraction, Fraction] | None:
        """(min, max) of the closure, or None when empty."""
        vals = [iv.lo for iv in self.intervals] + [iv.hi for iv in self.intervals]
        vals += list(self.points)
        if not vals:
            return None
        return min(vals), max(vals)

    def any_point(self) -> Fraction:
        """Some element of the set (midpoint of the first interval if any)."""
        if self.intervals:
            return self.intervals[0].midpoint
        if self.points:
            return self.points[0]
        raise ValueError("empty set has no point")

    # --------------------------------------------------- boolean operations

    def _critical_points(self) -> list[Fraction]:
        cps = set(self.points)
        for iv in self.intervals:
            cps.add(iv.lo)
            cps.add(iv.hi)
        return sorted(cps)

    @staticmethod
    def _rebuild(cps: list[Fraction], at_point: list[bool], on_gap: list[bool]) -> "ConstructibleSet":
        """Reassemble a canonical set from memberships on a refined partition.

        cps are the sorted critical points; at_point[i] is membership at
        cps[i]; on_gap[i] is the constant membership on (cps[i], cps[i+1]).
        Membership outside [cps[0], cps[-1]] must be False.
        """
        pieces: list[Piece] = []
        n = len(cps)
        run_start: tuple[int, str] | None = None  # (index, "point"|"gap")

        def close_run(end_idx: int, end_kind: str):
            si, skind = run_start
            if skind == "point":
                lo, lc = cps[si], True
            else:
                lo, lc = cps[si], False
            if end_kind == "point":
                hi, hc = cps[end_idx], True
            else:
                hi, hc = cps[end_idx + 1], False
            pieces.append((lo, hi, lc, hc))

        units: list[tuple[str, int, bool]] = []
        for i in range(n):
            units.append(("point", i, at_point[i]))
            if i < n - 1:
                units.append(("gap", i, on_gap[i]))
        prev_kind = prev_idx = None
        for kind, idx, val in units:
            if val and run_start is None:
                run_start = (idx, kind)
            elif not val and run_start is not None:
                close_run(prev_idx, prev_kind)
                run_start = None
            if val:
                prev_kind, prev_idx = kind, idx
        if run_start is not None:
            close_run(prev_idx, prev_kind)
        return ConstructibleSet.from_pieces(pieces)

    def _combine(self, other: "ConstructibleSet", fn) -> "ConstructibleSet":
        if fn(False, False):
            raise ValueError("combination must map (out, out) to out")
        cps = sorted(set(self._critical_points()) | set(other._critical_points()))
        if not cps:
            return ConstructibleSet()
        at_point = [fn(self.contains(c), other.contains(c)) for c in cps]
        on_gap = []
        for a, b in zip(cps, cps[1:]):
            mid = (a + b) / 2
            on_gap.append(fn(self.contains(mid), other.contains(mid)))
        return self._rebuild(cps, at_point, on_gap)

    def union(self, other: "ConstructibleSet") -> "ConstructibleSet":
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other: "ConstructibleSet") -> "ConstructibleSet":
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: "ConstructibleSet") -> "ConstructibleSet":
        return self._combine(other, lambda a, b: a and not b)

    def symmetric_difference(self, other: "ConstructibleSet") -> "ConstructibleSet":
        return self._combine(other, lambda a, b: a != b)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __xor__ = symmetric_difference

    def complement_within(self, window: "ConstructibleSet") -> "ConstructibleSet":
        """window \\ self; the ambient window stands in for the whole line."""
        return window.difference(self)

    def is_subset(self, other: "ConstructibleSet") -> bool:
        return self.difference(other).is_empty

    # ------------------------------------------------------------ topology

    def closure(self) -> "ConstructibleSet":
        pieces = [(iv.lo, iv.hi, True, True) for iv in self.intervals]
        pieces += [(p, p, True, True) for p in self.points]
        return ConstructibleSet.from_pieces(pieces)

    def interior(self) -> "ConstructibleSet":
        # Canonical form guarantees intervals are pairwise non-adjacent and
        # isolated points are genuinely isolated, so opening every end is exact.
        pieces = [(iv.lo, iv.hi, False, False) for iv in self.intervals]
        return ConstructibleSet.from_pieces(pieces)

    def border(self) -> "ConstructibleSet":
        return self.closure().difference(self.interior())

    def closure_of_interior(self) -> "ConstructibleSet":
        return self.interior().closure()

    # ------------------------------------------------------------- algebra

    def translate(self, g) -> "ConstructibleSet":
        g = Fraction(getattr(g, "value", g))
        intervals = tuple(
            Interval(iv.lo + g, iv.hi + g, iv.lo_closed, iv.hi_closed) for iv in self.intervals
        )
        points = tuple(p + g for p in self.points)
        return ConstructibleSet(intervals, points)

    def reflect(self) -> "ConstructibleSet":
        """{-x : x in self}."""
        pieces = [(-iv.hi, -iv.lo, iv.hi_closed, iv.lo_closed) for iv in self.intervals]
        pieces += [(-p, -p, True, True) for p in self.points]
        return ConstructibleSet.from_pieces(pieces)

    def minkowski_diff(self, other: "ConstructibleSet") -> "ConstructibleSet":
        """{a - b : a in self, b in other}, exact."""
        pieces: list[Piece] = []
        for alo, ahi, alc, ahc in self.components():
            for blo, bhi, blc, bhc in other.components():
                pieces.append((alo - bhi, ahi - blo, alc and bhc, ahc and blc))
        return ConstructibleSet.from_pieces(pieces)

    def distance_to(self, x) -> Fraction | float:
        """Exact infimum distance from x to the set; math.inf when empty."""
        if self.is_empty:
            return math.inf
        x = Fraction(x)
        best = None
        for lo, hi, _, _ in self.components():
            d = max(Fraction(0), lo - x, x - hi)
            if best is None or d < best:
                best = d
            if best == 0:
                break
        return best

    def r_neighborhood(self, r) -> "ConstructibleSet":
        """Union of closed balls of radius r around every component."""
        r = Fraction(r)
        if r <= 0:
            raise ValueError("radius must be positive")
        pieces = [(lo - r, hi + r, True, True) for lo, hi, _, _ in self.components()]
        return ConstructibleSet.from_pieces(pieces)

    # --------------------------------------------------------------- dunder

    def __eq__(self, other):
        if not isinstance(other, ConstructibleSet):
            return NotImplemented
        return self.intervals == other.intervals and self.points == other.points

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.intervals, self.points)))
        return self._hash

    def __setattr__(self, *_):
        raise AttributeError("ConstructibleSet is immutable")

    def __repr__(self):
        return f"ConstructibleSet({self.to_text()!r})"

    # -------------------------------------------------------- serialization

    def to_text(self) -> str:
        parts = [str(iv) for iv in self.intervals]
        parts += ["{%s}" % format_rational(p) for p in self.points]
        if not parts:
            return "{}"
        ordered = sorted(parts, key=lambda s: _part_sort_key(s))
        return " u ".join(ordered)

    def to_json(self) -> dict:
        return {
            "intervals": [
                {
                    "lo": format_rational(iv.lo),
                    "hi": format_rational(iv.hi),
                    "lo_closed": iv.lo_closed,
                    "hi_closed": iv.hi_closed,
                }
                for iv in self.intervals
            ],
            "points": [format_rational(p) for p in self.points],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstructibleSet":
        pieces: list[Piece] = [
            (
                parse_rational(iv["lo"]),
                parse_rational(iv["hi"]),
                bool(iv["lo_closed"]),
                bool(iv["hi_closed"]),
            )
            for iv in data.get("intervals", [])
        ]
        pieces += [(parse_rational(p),) * 2 + (True, True) for p in data.get("points", [])]
        return cls.from_pieces(pieces)


_PART_RE = re.compile(r"^([\[\(])\s*([^,]+)\s*,\s*([^\]\)]+)\s*([\]\)])$")
_POINT_RE = re.compile(r"^\{\s*([^}]*)\s*\}$")


def _part_sort_key(part: str):
    m = _PART_RE.match(part)
    if m:
        return (parse_rational(m.group(2)), 0)
    m = _POINT_RE.match(part)
    return (parse_rational(m.group(1)), 1)


def parse_set(text: str) -> ConstructibleSet:
    """Inverse of ConstructibleSet.to_text, e.g. "[0,1/2) u (3/4,1] u {2}"."""
    text = text.strip()
    if text in ("{}", ""):
        return ConstructibleSet()
    pieces: list[Piece] = []
    for raw in text.split(" u "):
        raw = raw.strip()
        m = _PART_RE.match(raw)
        if m:
            pieces.append(
                (
                    parse_rational(m.group(2)),
                    parse_rational(m.group(3)),
                    m.group(1) == "[",
                    m.group(4) == "]",
                )
            )
            continue
        m = _POINT_RE.match(raw)
        if m:
            x = parse_rational(m.group(1))
            pieces.append((x, x, True, True))
            continue
        raise ValueError(f"cannot parse set component {raw!r}")
    return ConstructibleSet.from_pieces(pieces)


def locally_positive_measure(a: ConstructibleSet) -> bool:
    """True iff every point of the set has positive measure in each of its
    neighborhoods; for constructible sets this is exactly a ⊆ cl(int a)."""
    return a.is_subset(a.closure_of_interior())
