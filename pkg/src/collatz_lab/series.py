"""Sequential series: nested families of finite runs standing in for limits.

A family is an indexed list of members whose parity vectors extend one
another; the limits of its seed, scale, offset and terminal sequences give
meaning to runs that no finite seed realizes.  Two named families are
built in, plus caller-supplied prefix chains.  All limit verdicts come
from the transparent three-point trend rules in :mod:`collatz_lab.trends`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .classify import (
    AClass,
    BClass,
    ClassLabel,
    MClass,
    Realizability,
    SClass,
)
from .coeffs import CoeffPair, coeffs_of_seed, evaluate
from .core import step
from .errors import (
    EmptyCategoryViolation,
    IndexTooLarge,
    InsufficientEvidence,
    NotNested,
)
from .parity import ParityVector, minimal_seed, parity_vector
from .trends import Trend, assess_trend

DEFAULT_INDEX_CAP = 64


class Family(enum.Enum):
    ONES_THEN_ZEROS = "ones-zeros"
    ZEROS_THEN_ONES = "zeros-ones"
    FROM_PREFIXES = "from-prefixes"


@dataclass(frozen=True)
class SeriesMember:
    index: int
    seed: int
    depth: int
    vector: ParityVector
    coeffs: CoeffPair
    terminal: int


@dataclass(frozen=True)
class SeriesReport:
    family: Family
    members: tuple[SeriesMember, ...]
    seed_trend: Trend
    a_trend: Trend
    b_trend: Trend
    terminal_trend: Trend


def _member(index: int, seed: int, depth: int, vector: ParityVector) -> SeriesMember:
    coeffs = coeffs_of_seed(seed, depth)
    terminal = evaluate(coeffs, seed)
    assert terminal is not None
    return SeriesMember(index, seed, depth, vector, coeffs, terminal)


def zeros_then_ones_seed(n: int) -> int:
    """Closed-form seed whose run opens with n halvings then n odd steps.

    (2^{2n+1} - 2^{n+1} - 1)/3 for odd n and (3*2^{2n+1} - 2^{n+1} - 1)/3
    for even n; the numerators are always divisible by 3.
    """
    if n % 2 == 1:
        num = (1 << (2 * n + 1)) - (1 << (n + 1)) - 1
    else:
        num = 3 * (1 << (2 * n + 1)) - (1 << (n + 1)) - 1
    if num % 3:
        raise AssertionError(f"seed numerator not divisible by 3 at index {n}")
    return num // 3


def _nested_ok(prev: ParityVector, nxt: ParityVector) -> bool:
    # Inclusion chain: the earlier vector occurs as a contiguous block of
    # the later one, in the canonical or the seed-excluded view.
    if len(prev) >= len(nxt):
        return False
    return nxt.contains_block(prev) or nxt.interior_view().contains_block(
        prev.interior_view()
    )


def build_series(
    family: Family,
    max_index: int = 8,
    prefixes: Optional[Sequence[ParityVector]] = None,
    index_cap: int = DEFAULT_INDEX_CAP,
) -> SeriesReport:
    """Materialize a named family (or a prefix chain) with exact members."""
    if family is Family.FROM_PREFIXES:
        if not prefixes:
            raise NotNested("from-prefixes needs at least one vector")
        vectors = [v if isinstance(v, ParityVector) else ParityVector(v) for v in prefixes]
        for a, b in zip(vectors, vectors[1:]):
            if len(a) >= len(b) or not a.is_prefix_of(b):
                raise NotNested(
                    f"vector of length {len(a)} is not a strict prefix of the next"
                )
        members = tuple(
            _member(i + 1, minimal_seed(v), len(v), v) for i, v in enumerate(vectors)
        )
    else:
        if max_index < 1:
            raise ValueError("max_index must be >= 1")
        if max_index > index_cap:
            raise IndexTooLarge(max_index, index_cap)
        members = []
        for k in range(1, max_index + 1):
            if family is Family.ONES_THEN_ZEROS:
                vector = ParityVector((1,) * k + (0,) * k)
                seed = minimal_seed(vector)
                depth = 2 * k
            else:
                seed = zeros_then_ones_seed(k)
                depth = 2 * k + 1
                vector = parity_vector(seed, depth)
            members.append(_member(k, seed, depth, vector))
        members = tuple(members)

    for a, b in zip(members, members[1:]):
        if not _nested_ok(a.vector, b.vector):
            raise NotNested(
                f"members {a.index} and {b.index} do not satisfy the inclusion chain"
            )

    return SeriesReport(
        family=family,
        members=members,
        seed_trend=assess_trend([m.seed for m in members]),
        a_trend=assess_trend([m.coeffs.scale.as_fraction() for m in members]),
        b_trend=assess_trend([m.coeffs.offset.as_fraction() for m in members]),
        terminal_trend=assess_trend([m.terminal for m in members]),
    )


@dataclass(frozen=True)
class LimitSummary:
    realizable: bool
    p_inf: Optional[int]  # the limiting seed when realizable
    p_inf_kind: str  # "finite" | "unbounded" | "indeterminate"
    a_inf: Optional[Fraction]  # None means no finite limit in evidence
    b_inf: Optional[Fraction]
    t_inf: Optional[Fraction]
    label: ClassLabel
    note: Optional[str] = None

    def to_json(self) -> dict:
        def rat(x):
            if x is None:
                return "unbounded"
            if isinstance(x, Fraction) and x.denominator == 1:
                return int(x)
            return f"{x.numerator}/{x.denominator}"

        out = {
            "realizable": self.realizable,
            "p_inf": self.p_inf if self.p_inf is not None else self.p_inf_kind,
            "a_inf": rat(self.a_inf),
            "b_inf": rat(self.b_inf),
            "t_inf": rat(self.t_inf),
            "label": self.label.format(),
        }
        if self.note:
            out["note"] = self.note
        return out


def _limit_value(trend: Trend) -> Optional[Fraction]:
    if trend.kind in ("stabilizes", "tends-to", "tends-to-zero"):
        return Fraction(trend.value)
    return None


def series_limits(report: SeriesReport) -> LimitSummary:
    """Classify the limit object of a series from its member trends."""
    if len(report.members) < 3:
        raise InsufficientEvidence(
            f"need at least 3 members, got {len(report.members)}"
        )

    p_limit = _limit_value(report.seed_trend)
    realizable = report.seed_trend.kind == "stabilizes"
    a_inf = _limit_value(report.a_trend)
    b_inf = _limit_value(report.b_trend)
    t_inf = _limit_value(report.terminal_trend)

    if a_inf is not None:
        if a_inf == 0:
            a_class = AClass.A0_MINUS
        elif a_inf > 1:
            a_class = AClass.A_PLUS
        else:
            a_class = AClass.A1_MINUS
    else:
        last = report.a_trend.points[-1]
        a_class = AClass.A_PLUS if last > 1 else (
            AClass.A0_MINUS if last < report.a_trend.points[0] else AClass.A1_MINUS
        )
    b_class = BClass.B_MINUS if b_inf is not None else BClass.B_PLUS
    m_class = MClass.M_MINUS if t_inf is not None else MClass.M_PLUS

    if realizable and t_inf is not None and p_limit is not None:
        s_class = (
            SClass.S_PLUS if t_inf > step(int(p_limit)) else SClass.S_MINUS
        )
    else:
        comparisons = [
            m.terminal > step(m.seed) for m in report.members[-3:]
        ]
        if all(comparisons):
            s_class = SClass.S_PLUS
        elif not any(comparisons):
            s_class = SClass.S_MINUS
        else:
            s_class = SClass.S_PLUS if comparisons[-1] else SClass.S_MINUS

    realizability = Realizability.R if realizable else Realizability.NR
    note = None
    try:
        label = ClassLabel(realizability, a_class, b_class, s_class, m_class)
    except EmptyCategoryViolation as err:
        # Finite evidence matched a category whose emptiness is a limit
        # statement; coerce to the side the unbounded evidence entails and
        # record the adjustment.  (Only reachable with realizable=True.)
        note = f"lattice adjustment: {err}"
        if a_class is AClass.A_PLUS or b_class is BClass.B_PLUS:
            s_class = SClass.S_PLUS
        else:
            a_class = AClass.A0_MINUS
        label = ClassLabel(realizability, a_class, b_class, s_class, m_class)

    if report.seed_trend.kind == "grows-unbounded":
        p_kind = "unbounded"
    elif realizable:
        p_kind = "finite"
    else:
        p_kind = "indeterminate"
    return LimitSummary(
        realizable=realizable,
        p_inf=int(p_limit) if realizable and p_limit is not None else None,
        p_inf_kind=p_kind,
        a_inf=a_inf,
        b_inf=b_inf,
        t_inf=t_inf,
        label=label,
        note=note,
    )


def report_table(report: SeriesReport) -> str:
    """Aligned-column text table of a series (member, seed, scale, offset, terminal)."""
    headers = ("member", "seed", "scale", "offset", "terminal")
    rows = [
        (
            str(m.index),
            str(m.seed),
            str(m.coeffs.scale),
            str(m.coeffs.offset),
            str(m.terminal),
        )
        for m in report.members
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    for r in rows:
        lines.append("  ".join(r[i].rjust(widths[i]) for i in range(len(headers))))
    return "\n".join(lines)


def report_to_json(report: SeriesReport) -> dict:
    return {
        "family": report.family.value,
        "members": [
            {
                "index": m.index,
                "seed": m.seed,
                "depth": m.depth,
                "vector": m.vector.to_string(),
                "scale": m.coeffs.scale.to_json(),
                "offset": m.coeffs.offset.to_json(),
                "terminal": m.terminal,
            }
            for m in report.members
        ],
        "trends": {
            "seed": report.seed_trend.describe(),
            "scale": report.a_trend.describe(),
            "offset": report.b_trend.describe(),
            "terminal": report.terminal_trend.describe(),
        },
    }
