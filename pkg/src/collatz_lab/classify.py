"""The asymptotic taxonomy and its category lattice.

A label places an infinite run on five axes: realizability (R/NR: does a
finite first term exist), the scale-limit class (A0-: limit 0, A1-: limit
strictly between 0 and 1, A+: limit above 1), the offset-limit class
(B-: finite, B+: infinite), the terminal comparison against the first
iterate (S-/S+), and terminal finiteness (M-/M+).

Seven realizable (s, a, b) combinations are impossible, plus the extra
exclusion R[M+ A0- B-] (finite scale and offset limits force a finite
terminal).  Constructing any of them raises EmptyCategoryViolation.  Four
more realizable combinations are believed empty but unproven; Definite
verdicts landing there are flagged by the watchlist, never rejected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .core import CycleInfo, NoCycleWithinBudget, detect_cycle, step
from .errors import EmptyCategoryViolation
from .periodic import (
    AlphaRealizable,
    PeriodicUnit,
    alpha_cycle_limit,
    is_alpha_vs_beta,
    unit_limit,
)
from .trends import Trend, assess_trend


class Realizability(enum.Enum):
    R = "R"
    NR = "NR"


class AClass(enum.Enum):
    A0_MINUS = "A0-"
    A1_MINUS = "A1-"
    A_PLUS = "A+"


class BClass(enum.Enum):
    B_MINUS = "B-"
    B_PLUS = "B+"


class SClass(enum.Enum):
    S_MINUS = "S-"
    S_PLUS = "S+"


class MClass(enum.Enum):
    M_MINUS = "M-"
    M_PLUS = "M+"


class Grade(enum.Enum):
    DEFINITE = "definite"
    HEURISTIC = "heuristic"
    UNRESOLVED = "unresolved"


# (s, a, b) triples proven impossible for realizable runs.
PROVEN_EMPTY = frozenset(
    {
        (SClass.S_MINUS, AClass.A0_MINUS, BClass.B_PLUS),
        (SClass.S_MINUS, AClass.A1_MINUS, BClass.B_MINUS),
        (SClass.S_PLUS, AClass.A1_MINUS, BClass.B_MINUS),
        (SClass.S_MINUS, AClass.A1_MINUS, BClass.B_PLUS),
        (SClass.S_MINUS, AClass.A_PLUS, BClass.B_MINUS),
        (SClass.S_MINUS, AClass.A_PLUS, BClass.B_PLUS),
        (SClass.S_PLUS, AClass.A_PLUS, BClass.B_MINUS),
    }
)

# (s, a, b) triples believed empty for realizable runs but unproven;
# a Definite verdict here would be a major finding, so it is flagged.
CONJECTURED_EMPTY = frozenset(
    {
        (SClass.S_PLUS, AClass.A0_MINUS, BClass.B_MINUS),
        (SClass.S_PLUS, AClass.A0_MINUS, BClass.B_PLUS),
        (SClass.S_PLUS, AClass.A1_MINUS, BClass.B_PLUS),
        (SClass.S_PLUS, AClass.A_PLUS, BClass.B_PLUS),
    }
)


@dataclass(frozen=True)
class ClassLabel:
    realizability: Realizability
    a_class: AClass
    b_class: BClass
    s_class: SClass
    m_class: MClass

    def __post_init__(self):
        if self.realizability is Realizability.R:
            triple = (self.s_class, self.a_class, self.b_class)
            if triple in PROVEN_EMPTY:
                raise EmptyCategoryViolation(
                    f"R[{self.s_class.value} {self.a_class.value} {self.b_class.value}] "
                    "is a proven-empty category"
                )
            if (
                self.m_class is MClass.M_PLUS
                and self.a_class is AClass.A0_MINUS
                and self.b_class is BClass.B_MINUS
            ):
                raise EmptyCategoryViolation(
                    "R[M+ A0- B-] is a proven-empty category "
                    "(finite scale and offset limits force a finite terminal)"
                )

    def format(self) -> str:
        return (
            f"{self.realizability.value}[{self.a_class.value}]"
            f"[{self.b_class.value}][{self.s_class.value}][{self.m_class.value}]"
        )

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class Verdict:
    subject: Union[int, str]  # a seed, or a unit's bit string
    label: ClassLabel
    grade: Grade
    b_inf: Optional[Fraction]  # None means infinite
    t_inf: Optional[Fraction]
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def rat(x):
            if x is None:
                return None
            if isinstance(x, Fraction) and x.denominator == 1:
                return int(x)
            if isinstance(x, int):
                return x
            return f"{x.numerator}/{x.denominator}"

        key = "seed" if isinstance(self.subject, int) else "unit"
        return {
            key: self.subject,
            "label": self.label.format(),
            "grade": self.grade.value,
            "b_inf": rat(self.b_inf),
            "t_inf": rat(self.t_inf),
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class WatchFlag:
    flagged: bool
    reason: Optional[str] = None


def conjecture_watchlist(v: Verdict) -> WatchFlag:
    """Flag Definite realizable labels landing in a believed-empty category."""
    if v.grade is not Grade.DEFINITE:
        return WatchFlag(False)
    if v.label.realizability is not Realizability.R:
        return WatchFlag(False)
    triple = (v.label.s_class, v.label.a_class, v.label.b_class)
    if triple in CONJECTURED_EMPTY:
        return WatchFlag(
            True,
            f"conjectured-empty category observed: {v.label.format()} for {v.subject}",
        )
    return WatchFlag(False)


def _a_class_from_trend(trend: Trend, exceeds_one: bool) -> AClass:
    if exceeds_one:
        return AClass.A_PLUS
    if trend.kind == "tends-to-zero":
        return AClass.A0_MINUS
    if trend.kind in ("stabilizes", "tends-to") and trend.value is not None:
        if trend.value == 0:
            return AClass.A0_MINUS
        if trend.value > 1:
            return AClass.A_PLUS
        return AClass.A1_MINUS
    # Indeterminate middle ground: below 1 at the deepest step but not
    # visibly heading to 0.
    if trend.points and trend.points[-1] < trend.points[0]:
        return AClass.A0_MINUS
    return AClass.A1_MINUS


def _checkpoint_depths(depth: int) -> list[int]:
    marks = sorted({max(1, depth // 4), max(1, depth // 2), max(1, (3 * depth) // 4), depth})
    return marks


def _finite_depth_evidence(p: int, depth: int):
    """Scale/offset/terminal snapshots at a few depths up to ``depth``."""
    marks = _checkpoint_depths(depth)
    want = set(marks)
    a_vals, b_vals, terms = [], [], []
    m = 0
    b = 0
    pow2 = 1
    t = p
    for k in range(1, depth + 1):
        if t & 1:
            b = 3 * b + pow2
            m += 1
            t = (3 * t + 1) >> 1
        else:
            t >>= 1
        pow2 <<= 1
        if k in want:
            a_vals.append(Fraction(3**m, 1 << k))
            b_vals.append(Fraction(b, 1 << k))
            terms.append(t)
    return marks, a_vals, b_vals, terms, m


def classify_seed(
    p: int,
    max_steps: int = 10_000,
    bound: int = 1 << 128,
    *,
    compare_to_seed: bool = False,
) -> Verdict:
    """Classify the infinite run started at a concrete seed.

    When a value cycle is reached the limits are exact: the scale limit is
    0, the offset limit is the least cycle member, the terminal equals it,
    and the verdict is Definite.  Otherwise the grade records what the
    finite evidence supports: Heuristic when the run exceeded the value
    bound (divergence-shaped evidence), Unresolved when the step budget
    ran out.

    ``compare_to_seed`` switches the S-axis comparison from the first
    iterate to the seed itself (sensitivity analysis only).
    """
    outcome = detect_cycle(p, max_steps, bound)
    t1 = step(p)
    anchor = p if compare_to_seed else t1

    if isinstance(outcome, CycleInfo):
        report = alpha_cycle_limit(p, max_steps, bound)
        b_inf = Fraction(report.b_inf_min)
        t_inf = b_inf  # scale limit is 0 on a cycle
        s = SClass.S_PLUS if t_inf > anchor else SClass.S_MINUS
        label = ClassLabel(
            Realizability.R, AClass.A0_MINUS, BClass.B_MINUS, s, MClass.M_MINUS
        )
        evidence = {
            "depth": outcome.entry_index + report.period,
            "m": report.odd_count,
            "n": report.period,
            "cycle_members": list(report.phase_limits),
            "entry_index": outcome.entry_index,
        }
        return Verdict(p, label, Grade.DEFINITE, b_inf, t_inf, evidence)

    depth = outcome.steps_taken
    marks, a_vals, b_vals, terms, m_total = _finite_depth_evidence(p, depth)
    grade = Grade.HEURISTIC if outcome.reason == "bound-exceeded" else Grade.UNRESOLVED

    exceeds_one = (3**m_total) > (1 << depth)
    a_trend = assess_trend(a_vals)
    b_trend = assess_trend(b_vals)
    t_trend = assess_trend(terms)

    a_class = _a_class_from_trend(a_trend, exceeds_one)
    b_class = BClass.B_PLUS if b_trend.kind == "grows-unbounded" else BClass.B_MINUS
    m_class = MClass.M_PLUS if t_trend.kind == "grows-unbounded" else MClass.M_MINUS
    if t_trend.kind == "grows-unbounded":
        s_class = SClass.S_PLUS
    elif t_trend.bounded and t_trend.value is not None:
        s_class = SClass.S_PLUS if t_trend.value > anchor else SClass.S_MINUS
    else:
        s_class = SClass.S_PLUS if terms[-1] > anchor else SClass.S_MINUS

    evidence = {
        "depth": depth,
        "m": m_total,
        "n": depth,
        "reason": outcome.reason,
        "checkpoints": marks,
        "terminals": terms,
    }

    try:
        label = ClassLabel(Realizability.R, a_class, b_class, s_class, m_class)
    except EmptyCategoryViolation as err:
        # Finite-depth snapshots can transiently pattern-match a category
        # whose emptiness is a statement about limits.  The raw evidence
        # stays in the verdict; the label is coerced to the shape its
        # strongest axis entails, and the grade drops to Unresolved.  A
        # Definite verdict can never take this path.
        evidence["lattice_adjustment"] = str(err)
        grade = Grade.UNRESOLVED
        if a_class is AClass.A_PLUS:
            # scale above 1 compounds: the offset and terminal grow with it
            b_class, s_class, m_class = BClass.B_PLUS, SClass.S_PLUS, MClass.M_PLUS
        elif b_class is BClass.B_PLUS:
            # an unbounded offset forces an unbounded terminal
            s_class, m_class = SClass.S_PLUS, MClass.M_PLUS
        else:
            # bounded scale and offset force a bounded run; its scale
            # limit can only be 0
            a_class = AClass.A0_MINUS
        label = ClassLabel(Realizability.R, a_class, b_class, s_class, m_class)

    b_inf = b_vals[-1] if b_class is BClass.B_MINUS else None
    t_inf = Fraction(terms[-1]) if m_class is MClass.M_MINUS else None
    return Verdict(p, label, grade, b_inf, t_inf, evidence)


def classify_unit(u: PeriodicUnit) -> Verdict:
    """Classify the infinite run made of one repeating parity unit.

    Limits are closed-form here, so the grade is always Definite.  The
    unit is realizable only when an integer fixed point realizes it; a
    converging unit whose offset limit is at most 1 sits below every
    positive integer start, hence terminal-not-above-start.
    """
    lim = unit_limit(u)
    alpha = is_alpha_vs_beta(u)
    realizable = isinstance(alpha, AlphaRealizable)

    if not lim.converges:
        label = ClassLabel(
            Realizability.NR, AClass.A_PLUS, BClass.B_PLUS, SClass.S_PLUS, MClass.M_PLUS
        )
        evidence = {"unit": u.bits.to_string(), "m": u.scale.pow3, "n": u.scale.pow2}
        return Verdict(u.bits.to_string(), label, Grade.DEFINITE, None, None, evidence)

    b_inf = lim.b_inf
    if realizable:
        report = alpha_cycle_limit(alpha.fixed_point, 4 * len(u.bits) + 4, 1 << 128)
        t_inf = Fraction(report.b_inf_min)
        s = SClass.S_PLUS if t_inf > step(alpha.fixed_point) else SClass.S_MINUS
        label = ClassLabel(Realizability.R, AClass.A0_MINUS, BClass.B_MINUS, s, MClass.M_MINUS)
        evidence = {
            "unit": u.bits.to_string(),
            "fixed_point": alpha.fixed_point,
            "cycle_members": list(report.phase_limits),
        }
        return Verdict(u.bits.to_string(), label, Grade.DEFINITE, b_inf, t_inf, evidence)

    # beta-only converging unit: k-copy values head to b_inf from any
    # positive-integer start, so the terminal stays below the start for
    # every start exactly when b_inf <= 1
    s = SClass.S_MINUS if b_inf <= 1 else SClass.S_PLUS
    label = ClassLabel(Realizability.NR, AClass.A0_MINUS, BClass.B_MINUS, s, MClass.M_MINUS)
    evidence = {
        "unit": u.bits.to_string(),
        "m": u.scale.pow3,
        "n": u.scale.pow2,
        "beta_only": alpha.reason,
    }
    return Verdict(u.bits.to_string(), label, Grade.DEFINITE, b_inf, b_inf, evidence)


@dataclass
class SurveySummary:
    start: int
    stop: int
    total: int = 0
    counts: dict = field(default_factory=dict)  # "label grade" -> count
    b_inf_values: set = field(default_factory=set)
    watch_flags: list = field(default_factory=list)
    violations: int = 0

    @property
    def uniform_key(self) -> Optional[str]:
        return next(iter(self.counts)) if len(self.counts) == 1 else None


def survey(
    start: int,
    stop: int,
    max_steps: int = 10_000,
    bound: int = 1 << 128,
    emit: Optional[Callable[[Verdict], None]] = None,
) -> SurveySummary:
    """Classify every seed in [start, stop], aggregating label counts.

    Seeds are processed in ascending order; once a trajectory dips below
    the current seed it lands on an already-resolved value whose limit
    data it shares (the offset limit is a property of the trajectory
    tail).  That makes the bulk walk cheap without changing any verdict:
    each seed still gets a Definite grade only because its trajectory
    provably reaches the same cycle.  Values that escape below ``start``
    are resolved directly and memoized.
    """
    if stop < start or start < 1:
        raise ValueError("need 1 <= start <= stop")
    summary = SurveySummary(start=start, stop=stop)
    resolved: list[Optional[int]] = [None] * (stop - start + 1)  # seed -> b_inf (min cycle member)
    below: dict[int, int] = {}

    for p in range(start, stop + 1):
        b_min: Optional[int] = None
        t = p
        steps = 0
        while True:
            if t < p:
                if t >= start:
                    b_min = resolved[t - start]
                else:
                    b_min = below.get(t)
                    if b_min is None:
                        sub = detect_cycle(t, max_steps, bound)
                        if isinstance(sub, CycleInfo):
                            b_min = sub.min_member
                            below[t] = b_min
                if b_min is not None:
                    break
            if steps >= max_steps or t > bound:
                break
            t = (3 * t + 1) >> 1 if t & 1 else t >> 1
            steps += 1
            if t == p:  # p sits on a cycle itself
                b_min = min(_cycle_members_from(p))
                break

        if b_min is None:
            verdict = classify_seed(p, max_steps, bound)
        else:
            resolved[p - start] = b_min
            t1 = (3 * p + 1) >> 1 if p & 1 else p >> 1
            s = SClass.S_PLUS if b_min > t1 else SClass.S_MINUS
            label = ClassLabel(
                Realizability.R, AClass.A0_MINUS, BClass.B_MINUS, s, MClass.M_MINUS
            )
            verdict = Verdict(
                p, label, Grade.DEFINITE, Fraction(b_min), Fraction(b_min),
                {"descent_steps": steps},
            )

        summary.total += 1
        key = f"{verdict.label.format()} {verdict.grade.value}"
        summary.counts[key] = summary.counts.get(key, 0) + 1
        if verdict.b_inf is not None:
            summary.b_inf_values.add(verdict.b_inf)
        flag = conjecture_watchlist(verdict)
        if flag.flagged:
            summary.watch_flags.append(flag.reason)
        if emit is not None:
            emit(verdict)
    return summary


def _cycle_members_from(p: int) -> list[int]:
    members = [p]
    t = step(p)
    while t != p:
        members.append(t)
        t = step(t)
    return members
