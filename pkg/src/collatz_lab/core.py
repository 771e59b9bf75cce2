"""The shortcut Collatz map: one combined odd-step per iteration.

T(p) = p/2 for even p and (3p+1)/2 for odd p.  Every operation here is a
pure function over arbitrary-precision integers; there is no overflow mode
and no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


def step(p: int) -> int:
    """Apply the map once: p/2 if p is even, (3p+1)/2 if p is odd."""
    if p < 1:
        raise ValueError(f"seed must be a positive integer, got {p}")
    return (3 * p + 1) >> 1 if p & 1 else p >> 1


def parity_indicator(p: int, k: int) -> int:
    """Return 1 if the k-th iterate of p is odd, 0 otherwise (k=0 is p itself)."""
    if k < 0:
        raise ValueError("index must be non-negative")
    t = p
    for _ in range(k):
        t = step(t)
    return t & 1


@dataclass(frozen=True)
class Trajectory:
    """The n+1 terms p, T(p), ..., T^n(p)."""

    seed: int
    terms: tuple[int, ...]

    @property
    def steps(self) -> int:
        return len(self.terms) - 1


def trajectory(p: int, n: int) -> Trajectory:
    """Iterate the map n times from p, keeping every term."""
    if n < 0:
        raise ValueError("step count must be non-negative")
    terms = [p]
    t = p
    if t < 1:
        raise ValueError(f"seed must be a positive integer, got {p}")
    for _ in range(n):
        t = (3 * t + 1) >> 1 if t & 1 else t >> 1
        terms.append(t)
    return Trajectory(seed=p, terms=tuple(terms))


@dataclass(frozen=True)
class CycleInfo:
    """A detected value cycle, with members in trajectory order from entry."""

    entry_index: int
    members: tuple[int, ...]
    min_member: int


@dataclass(frozen=True)
class NoCycleWithinBudget:
    """Outcome value (not a failure) when no repeat was seen within budget."""

    reason: str  # "budget-exhausted" | "bound-exceeded"
    steps_taken: int
    last_term: int


CycleOutcome = Union[CycleInfo, NoCycleWithinBudget]


def detect_cycle(p: int, max_steps: int, bound: int) -> CycleOutcome:
    """Walk the trajectory of p looking for a repeated value.

    Uses an exact hash map of visited values (trajectories here are short,
    and exactness matters more than memory).  Stops with a
    NoCycleWithinBudget value if a term exceeds ``bound`` or if
    ``max_steps`` applications produced no repeat.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if bound < p:
        raise ValueError("bound must be >= seed")
    seen = {p: 0}
    path = [p]
    t = p
    for k in range(1, max_steps + 1):
        t = (3 * t + 1) >> 1 if t & 1 else t >> 1
        if t > bound:
            return NoCycleWithinBudget("bound-exceeded", k, t)
        if t in seen:
            members = tuple(path[seen[t]:])
            return CycleInfo(entry_index=seen[t], members=members,
                             min_member=min(members))
        seen[t] = k
        path.append(t)
    return NoCycleWithinBudget("budget-exhausted", max_steps, t)
