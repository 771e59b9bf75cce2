"""Repeating-structure analysis: value cycles and repeating parity units.

A value-periodic (alpha) run literally repeats a cycle of integers.  A
structure-periodic (beta) run only repeats its parity pattern.  For a
repeating unit with popcount m and length n, composing one period scales
by 3^m/2^n and shifts by the unit's offset, so k periods telescope into a
geometric sum: the offset limit is offset/(1 - 3^m/2^n) when 3^m < 2^n,
and everything diverges when 3^m > 2^n (3^m = 2^n cannot happen).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import CycleInfo, NoCycleWithinBudget, detect_cycle, step
from .coeffs import CoeffPair, Dyadic, PowerRatio, coeffs_of_seed, coeffs_of_vector
from .parity import ParityVector, parity_vector


@dataclass(frozen=True)
class PeriodicUnit:
    """A repeating parity unit together with its one-period coefficients."""

    bits: ParityVector
    scale: PowerRatio
    offset: Dyadic

    @classmethod
    def of(cls, bits) -> "PeriodicUnit":
        v = bits if isinstance(bits, ParityVector) else ParityVector(bits)
        if len(v) < 1:
            raise ValueError("a repeating unit needs at least one bit")
        pair = coeffs_of_vector(v)
        return cls(bits=v, scale=pair.scale, offset=pair.offset)

    def coeffs_for_copies(self, k: int) -> CoeffPair:
        """Exact coefficients of k concatenated copies of the unit."""
        return coeffs_of_vector(tuple(self.bits) * k)


@dataclass(frozen=True)
class UnitLimit:
    """Limit behaviour of infinitely many copies of one unit.

    converges: the per-period scale is below 1; the scale limit is 0 and
    the offset limit is the exact rational b_inf.  Otherwise both the
    scale and the offset grow without bound (an infinite scale limit with
    a finite offset limit is structurally impossible here).
    """

    converges: bool
    b_inf: Fraction | None

    @property
    def a_inf(self) -> Fraction | None:
        return Fraction(0) if self.converges else None


def unit_limit(u: PeriodicUnit) -> UnitLimit:
    """Exact geometric-series limit for one repeating unit."""
    cmp = u.scale.compare_to_one()
    if cmp == 0:
        raise AssertionError("unit scale cannot equal 1 for a non-empty unit")
    if cmp > 0:
        return UnitLimit(converges=False, b_inf=None)
    b_inf = u.offset.as_fraction() / (1 - u.scale.as_fraction())
    return UnitLimit(converges=True, b_inf=b_inf)


@dataclass(frozen=True)
class AlphaReport:
    """Exact limit data for a seed whose trajectory reaches a value cycle."""

    cycle: CycleInfo
    period: int
    odd_count: int
    period_offset: Dyadic  # offset over one period, restarted at the entry member
    b_formula: Fraction  # period_offset / (1 - 3^m/2^n); equals the entry member
    phase_limits: tuple[int, ...]  # one offset limit per phase: the members themselves
    b_inf_min: int


def alpha_cycle_limit(p: int, max_steps: int, bound: int) -> Union[AlphaReport, NoCycleWithinBudget]:
    """Cycle-based offset limits for a concrete seed.

    Restarts the run at the cycle entry member c: over one period of
    length n with m odd members, the offset limit is
    offset_n(c)/(1 - 3^m/2^n), which necessarily equals c itself.  The
    per-phase limit set is the cycle members; the reported minimum is the
    least member.
    """
    outcome = detect_cycle(p, max_steps, bound)
    if isinstance(outcome, NoCycleWithinBudget):
        return outcome
    entry = outcome.members[0]
    period = len(outcome.members)
    pair = coeffs_of_seed(entry, period)
    b_formula = pair.offset.as_fraction() / (1 - pair.scale.as_fraction())
    if b_formula != entry:
        raise AssertionError(
            f"one-period offset limit {b_formula} does not reproduce the fixed point {entry}"
        )
    return AlphaReport(
        cycle=outcome,
        period=period,
        odd_count=pair.scale.pow3,
        period_offset=pair.offset,
        b_formula=b_formula,
        phase_limits=outcome.members,
        b_inf_min=outcome.min_member,
    )


@dataclass(frozen=True)
class AlphaRealizable:
    """The unit is realized by an integer fixed point of one period."""

    fixed_point: int


@dataclass(frozen=True)
class BetaOnly:
    """No positive integer realizes the unit; structure repeats, values cannot."""

    reason: str  # "diverges" | "non-integer-fixed-point" | "parity-mismatch"


def is_alpha_vs_beta(u: PeriodicUnit) -> Union[AlphaRealizable, BetaOnly]:
    """Decide whether a repeating unit is realizable by an actual value cycle.

    One period fixes T^n(P) = P exactly when P equals the geometric
    limit, so the unit is realizable iff that limit is a positive integer
    whose trajectory reproduces the unit's parity pattern.
    """
    lim = unit_limit(u)
    if not lim.converges:
        return BetaOnly("diverges")
    b_inf = lim.b_inf
    if b_inf.denominator != 1 or b_inf <= 0:
        return BetaOnly("non-integer-fixed-point")
    fixed = int(b_inf)
    if parity_vector(fixed, len(u.bits)) != u.bits:
        return BetaOnly("parity-mismatch")
    return AlphaRealizable(fixed_point=fixed)
