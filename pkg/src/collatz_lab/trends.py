"""Three-point finite-evidence trend rules shared by series and classification.

The rules are deliberately transparent and falsifiable, and work on exact
values only (ints and Fractions):

* stabilizes      -- the last three values are equal;
* tends-to-zero   -- distance to 0 contracts by at least the factor 4/5
                     across the last three values;
* grows-unbounded -- the last value is a strict record, at least three
                     values are strict records, and total growth is at
                     least 2^10;
* tends-to x      -- successive differences contract by at least 4/5 and
                     the integer geometric-extrapolation candidate has
                     contracting distances as well;
* inconclusive    -- none of the above.

The contraction factor 4/5 admits the map's slowest natural per-member
decay (an odd step followed by an even step scales by 3/4, and mixed
sums approach that rate from above) while still rejecting growth.  The
difference-contraction gate on tends-to keeps growing sequences from
matching a target near their own last value.  Verdicts describe the
supplied values only; nothing is extrapolated beyond them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Value = Union[int, Fraction]

GROWTH_FLOOR = 1 << 10
CONTRACTION = Fraction(4, 5)


@dataclass(frozen=True)
class Trend:
    kind: str  # "stabilizes" | "tends-to-zero" | "tends-to" | "grows-unbounded" | "inconclusive"
    value: Optional[Value]  # the stable value or the convergence target
    points: tuple[Value, ...]

    @property
    def bounded(self) -> bool:
        return self.kind in ("stabilizes", "tends-to-zero", "tends-to")

    def describe(self) -> str:
        if self.kind == "stabilizes":
            return f"stabilizes at {self.value}"
        if self.kind == "tends-to-zero":
            return "tends to 0"
        if self.kind == "tends-to":
            return f"tends to {self.value}"
        return self.kind


def _contracts_toward(target: Value, tail: Sequence[Value]) -> bool:
    d = [abs(v - target) for v in tail]
    if d[0] == 0 or d[2] == 0:
        return False  # landing exactly on the target is stabilization territory
    return 5 * d[1] <= 4 * d[0] and 5 * d[2] <= 4 * d[1]


def _record_growth(points: Sequence[Value]) -> bool:
    records = 0
    best = None
    last_is_record = False
    for i, v in enumerate(points):
        if best is None or v > best:
            best = v
            records += 1
            last_is_record = i == len(points) - 1
    return (
        records >= 3
        and last_is_record
        and points[-1] - min(points) >= GROWTH_FLOOR
    )


def assess_trend(values: Sequence[Value]) -> Trend:
    """Classify a short sequence of exact values by the rules above."""
    points = tuple(values)
    if len(points) < 3:
        return Trend("inconclusive", None, points)
    tail = points[-3:]

    if tail[0] == tail[1] == tail[2]:
        return Trend("stabilizes", tail[2], points)

    if _contracts_toward(0, tail):
        return Trend("tends-to-zero", Fraction(0), points)

    # Visible unbounded growth outranks any integer-target match: three
    # decelerating growth steps are formally consistent with geometric
    # convergence, so the record evidence must win when both fit.
    if _record_growth(points):
        return Trend("grows-unbounded", None, points)

    # Integer targets are admissible only when the differences themselves
    # contract, and only the geometric-extrapolation candidate is tried;
    # a growing sequence always has some integer "near" its last value.
    delta1 = tail[1] - tail[0]
    delta2 = tail[2] - tail[1]
    if delta1 != 0 and delta2 != 0 and 5 * abs(delta2) <= 4 * abs(delta1):
        estimate = Fraction(tail[2]) + Fraction(delta2) ** 2 / (delta1 - delta2)
        lo = estimate.__floor__()
        for cand in {lo, lo + 1}:
            if _contracts_toward(Fraction(cand), tail):
                return Trend("tends-to", Fraction(cand), points)

    return Trend("inconclusive", None, points)
