"""Finite-order class proportions over the complete vector population.

Proportions at order n are computed over all 2^n parity vectors
(equivalently, over a full residue system mod 2^n), exactly: counts are
big integers and ratios are Fractions.  Nothing here asserts any limit;
the sweeps only tabulate exact values so tail behaviour can be compared
order by order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .core import step, trajectory
from .errors import DegenerateOrder, OrderTooLarge

ENUMERATION_CAP = 20
BINOMIAL_CAP = 4096


class Mode(enum.Enum):
    EXACT_BINOMIAL = "exact-binomial"
    ENUMERATION = "enumeration"


def growth_threshold(n: int) -> int:
    """Least odd-count m with 3^m > 2^n (exact integer comparison)."""
    if n < 0:
        raise ValueError("order must be non-negative")
    target = 1 << n
    m, p3 = 0, 1
    while p3 <= target:
        p3 *= 3
        m += 1
    return m


def threshold_fraction(n: int) -> Fraction:
    """The odd-iterate fraction m*(n)/n at which the scale starts exceeding 1."""
    if n < 1:
        raise DegenerateOrder("threshold fraction needs order >= 1")
    return Fraction(growth_threshold(n), n)


def _binomial_row_tail(n: int, m_lo: int) -> int:
    """Sum of C(n, m) for m in [m_lo, n], with exact big integers."""
    if m_lo > n:
        return 0
    total = 0
    c = 1  # C(n, 0)
    for m in range(0, n + 1):
        if m >= m_lo:
            total += c
        c = c * (n - m) // (m + 1)
    return total


@dataclass(frozen=True)
class ProportionReport:
    order: int
    mode: Mode
    counts: dict
    ratios: dict
    odd_fraction_mean: Fraction
    s_gap: Optional[Fraction] = None

    def to_json(self) -> dict:
        def rat(x):
            return f"{x.numerator}/{x.denominator}"

        out = {
            "order": self.order,
            "mode": self.mode.value,
            "counts": dict(self.counts),
            "ratios": {k: rat(v) for k, v in self.ratios.items()},
            "odd_fraction_mean": rat(self.odd_fraction_mean),
        }
        if self.s_gap is not None:
            out["s_gap"] = rat(self.s_gap)
        return out

    def to_csv_row(self) -> str:
        plus_key = "a_plus" if "a_plus" in self.counts else "s_plus"
        ratio = self.ratios[plus_key]
        total = 1 << self.order
        return f"{self.order},{self.counts[plus_key]},{total},{ratio.numerator},{ratio.denominator}"


def proportion_a(
    n: int,
    mode: Mode = Mode.EXACT_BINOMIAL,
    *,
    first_bit_one: bool = False,
) -> ProportionReport:
    """Share of length-n vectors whose scale 3^popcount/2^n exceeds 1.

    The binomial mode sums C(n, m) over m >= m*(n); enumeration walks all
    2^n vectors and must agree.  ``first_bit_one`` restricts the
    population to vectors opening with an odd step (the odd-seed table's
    own vectors), halving the population.
    """
    if n < 1:
        raise DegenerateOrder("proportions need order >= 1")
    cap = ENUMERATION_CAP if mode is Mode.ENUMERATION else BINOMIAL_CAP
    if n > cap:
        raise OrderTooLarge(n, cap, what=f"{mode.value} order")

    m_star = growth_threshold(n)
    if first_bit_one:
        total = 1 << (n - 1)
        if mode is Mode.EXACT_BINOMIAL:
            plus = _binomial_row_tail(n - 1, m_star - 1)
        else:
            plus = sum(
                1 for v in range(total) if (v.bit_count() + 1) >= m_star
            )
        odd_total = Fraction(
            sum(m * _count_popcount(n - 1, m - 1) for m in range(1, n + 1)), total
        )
    else:
        total = 1 << n
        if mode is Mode.EXACT_BINOMIAL:
            plus = _binomial_row_tail(n, m_star)
        else:
            plus = sum(1 for v in range(total) if v.bit_count() >= m_star)
        odd_total = Fraction(n * (1 << (n - 1)), total)

    counts = {"a_plus": plus, "a_minus": total - plus}
    ratios = {
        "a_plus": Fraction(plus, total),
        "a_minus": Fraction(total - plus, total),
    }
    return ProportionReport(
        order=n,
        mode=mode,
        counts=counts,
        ratios=ratios,
        odd_fraction_mean=odd_total / n,
    )


def _count_popcount(n: int, m: int) -> int:
    if m < 0 or m > n:
        return 0
    c = 1
    for i in range(m):
        c = c * (n - i) // (i + 1)
    return c


def proportion_s(n: int) -> ProportionReport:
    """Share of minimal seeds whose n-th iterate exceeds their first iterate.

    The minimal positive members of the 2^n residue classes mod 2^n are
    exactly the seeds 1..2^n, so the population is walked directly.  At
    n = 1 the comparison degenerates (both sides are the first iterate),
    so the first iterate is compared against the seed itself there.
    """
    if n < 1:
        raise DegenerateOrder("the terminal comparison needs order >= 1")
    if n > ENUMERATION_CAP:
        raise OrderTooLarge(n, ENUMERATION_CAP, what="enumeration order")

    plus = 0
    odd_sum = 0
    total = 1 << n
    for p in range(1, total + 1):
        t = p
        odd = 0
        for _ in range(n):
            if t & 1:
                odd += 1
                t = (3 * t + 1) >> 1
            else:
                t >>= 1
        t1 = step(p)
        if n == 1:
            if t1 > p:
                plus += 1
        elif t > t1:
            plus += 1
        odd_sum += odd

    a_ratio = proportion_a(n).ratios["a_plus"]
    s_ratio = Fraction(plus, total)
    counts = {"s_plus": plus, "s_minus": total - plus}
    ratios = {"s_plus": s_ratio, "s_minus": Fraction(total - plus, total)}
    return ProportionReport(
        order=n,
        mode=Mode.ENUMERATION,
        counts=counts,
        ratios=ratios,
        odd_fraction_mean=Fraction(odd_sum, n * total),
        s_gap=abs(s_ratio - a_ratio),
    )


class SweepTarget(enum.Enum):
    A_PROPORTION = "a-proportion"
    S_GAP = "s-gap"
    ODD_FRACTION = "odd-fraction"


@dataclass(frozen=True)
class SweepReport:
    target: SweepTarget
    orders: tuple[int, ...]
    values: tuple[Fraction, ...]
    verdict: str  # "decreasing" | "increasing" | "flat" | "mixed"
    extras: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def rat(x):
            return f"{x.numerator}/{x.denominator}"

        out = {
            "target": self.target.value,
            "orders": list(self.orders),
            "values": [rat(v) for v in self.values],
            "verdict": self.verdict,
        }
        out.update(self.extras)
        return out

    def to_csv(self) -> str:
        lines = ["order,a_plus_count,total,ratio_num,ratio_den"]
        for n, v in zip(self.orders, self.values):
            total = 1 << n
            lines.append(f"{n},{v.numerator * (total // v.denominator)},{total},{v.numerator},{v.denominator}")
        return "\n".join(lines)


def _monotonicity(values: Iterable[Fraction]) -> str:
    vals = list(values)
    if all(a > b for a, b in zip(vals, vals[1:])):
        return "decreasing"
    if all(a < b for a, b in zip(vals, vals[1:])):
        return "increasing"
    if all(a == b for a, b in zip(vals, vals[1:])):
        return "flat"
    return "mixed"


def convergence_sweep(
    orders: Iterable[int],
    target: SweepTarget,
    *,
    survey_seeds: int = 1000,
) -> SweepReport:
    """Tabulate one exact statistic across orders and report its monotonicity."""
    orders = tuple(orders)
    if not orders:
        raise ValueError("orders must be non-empty")

    extras: dict = {}
    if target is SweepTarget.A_PROPORTION:
        values = tuple(proportion_a(n).ratios["a_plus"] for n in orders)
    elif target is SweepTarget.S_GAP:
        values = tuple(proportion_s(n).s_gap for n in orders)
    else:
        # population mean over all vectors is exactly 1/2 at every order
        # (popcount symmetry); the survey mean over concrete seeds is the
        # observable the structural-moderation discussion is about.
        values = tuple(
            proportion_a(n).odd_fraction_mean for n in orders
        )
        survey_means = []
        for n in orders:
            acc = Fraction(0)
            for p in range(1, survey_seeds + 1):
                odd = sum(b for b in _parity_bits(p, n))
                acc += Fraction(odd, n)
            survey_means.append(acc / survey_seeds)
        extras["survey_means"] = [f"{v.numerator}/{v.denominator}" for v in survey_means]
        extras["survey_seeds"] = survey_seeds

    return SweepReport(
        target=target,
        orders=orders,
        values=values,
        verdict=_monotonicity(values),
        extras=extras,
    )


def _parity_bits(p: int, n: int):
    t = p
    for _ in range(n):
        i = t & 1
        yield i
        t = (3 * t + 1) >> 1 if i else t >> 1
