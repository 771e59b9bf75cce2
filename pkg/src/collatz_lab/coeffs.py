"""Exact dyadic arithmetic and the coefficient form of iterated steps.

n applications of the map act on the seed as an affine function with
exactly representable coefficients:

    T^n(p) = scale * p + offset,   scale = 3^m / 2^n

where m counts the odd iterates among indices 0..n-1.  The scale is kept
as the exponent pair (m, n); the offset is a dyadic rational.  No floating
point is used anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import step

_LOG2_3 = math.log2(3.0)


class Dyadic:
    """Exact rational with a power-of-two denominator: numerator / 2^exp2.

    Kept fully reduced: either the numerator is odd, or exp2 is 0.
    Zero is always (0, 0).  Instances are immutable values; equality and
    hashing follow the represented value.
    """

    __slots__ = ("numerator", "exp2")

    def __init__(self, numerator: int, exp2: int = 0):
        if exp2 < 0:
            raise ValueError("exp2 must be non-negative")
        if numerator == 0:
            exp2 = 0
        else:
            while exp2 > 0 and numerator % 2 == 0:
                numerator >>= 1
                exp2 -= 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exp2", exp2)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp2, other.exp2)
        num = (self.numerator << (e - self.exp2)) + (other.numerator << (e - other.exp2))
        return Dyadic(num, e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp2, other.exp2)
        num = (self.numerator << (e - self.exp2)) - (other.numerator << (e - other.exp2))
        return Dyadic(num, e)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.numerator * other.numerator, self.exp2 + other.exp2)

    def scale_by(self, ratio: "PowerRatio") -> "Dyadic":
        """Multiply by 3^pow3 / 2^pow2 exactly."""
        return Dyadic(self.numerator * 3 ** ratio.pow3, self.exp2 + ratio.pow2)

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.numerator == other.numerator and self.exp2 == other.exp2
        if isinstance(other, int):
            return self.exp2 == 0 and self.numerator == other
        if isinstance(other, Fraction):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __lt__(self, other: "Dyadic") -> bool:
        return (self - other).numerator < 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exp2)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exp2}"

    def __repr__(self) -> str:
        return f"Dyadic({self.numerator}, {self.exp2})"

    def to_json(self) -> dict:
        return {"num": self.numerator, "exp2": self.exp2}

    @classmethod
    def from_json(cls, obj: dict) -> "Dyadic":
        return cls(int(obj["num"]), int(obj["exp2"]))

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse "num/2^e" (or a bare integer) back into a value."""
        text = text.strip()
        if "/" not in text:
            return cls(int(text), 0)
        num_part, den_part = text.split("/", 1)
        if not den_part.startswith("2^"):
            raise ValueError(f"not a dyadic literal: {text!r}")
        return cls(int(num_part), int(den_part[2:]))


@dataclass(frozen=True)
class PowerRatio:
    """The value 3^pow3 / 2^pow2, stored as the exponent pair.

    Never materialized as a float: comparisons against 1 go through exact
    integer comparison of 3^pow3 and 2^pow2 (with a cheap logarithmic
    screen first).  The value is 1 only when both exponents are 0, since
    3^m = 2^n has no other solution.
    """

    pow3: int
    pow2: int

    def compare_to_one(self) -> int:
        """-1, 0 or +1 as the value compares to 1; exact."""
        m, n = self.pow3, self.pow2
        if m == 0 and n == 0:
            return 0
        approx = m * _LOG2_3 - n
        if abs(approx) > 1e-6 * max(1.0, m + n):
            return 1 if approx > 0 else -1
        cmp = (3 ** m) - (1 << n)
        if cmp == 0:
            raise AssertionError("3^m = 2^n is impossible for n >= 1")
        return 1 if cmp > 0 else -1

    def power(self, k: int) -> "PowerRatio":
        return PowerRatio(self.pow3 * k, self.pow2 * k)

    def as_fraction(self) -> Fraction:
        return Fraction(3 ** self.pow3, 1 << self.pow2)

    def __str__(self) -> str:
        return f"3^{self.pow3}/2^{self.pow2}"

    def to_json(self) -> dict:
        return {"pow3": self.pow3, "pow2": self.pow2}


@dataclass(frozen=True)
class CoeffPair:
    """Characteristic coefficients after ``depth`` applications of the map."""

    scale: PowerRatio
    offset: Dyadic
    depth: int


def _coeffs_from_bits(bits: Iterable[int], depth: int) -> CoeffPair:
    # offset numerator recurrence over a fixed denominator 2^depth:
    #   b <- 3^i * b + i * 2^k
    m = 0
    b = 0
    pow2 = 1
    for i in bits:
        if i:
            b = 3 * b + pow2
            m += 1
        pow2 <<= 1
    return CoeffPair(PowerRatio(m, depth), Dyadic(b, depth), depth)


def coeffs_of_seed(p: int, n: int) -> CoeffPair:
    """Exact (scale, offset) with T^n(p) = scale*p + offset.

    Runs the recursion scale_{k+1} = scale_k * 3^{i_k}/2 and
    offset_{k+1} = (3^{i_k} * offset_k + i_k)/2, where i_k is the parity
    of the k-th iterate.
    """
    if n < 0:
        raise ValueError("depth must be non-negative")
    if p < 1:
        raise ValueError(f"seed must be a positive integer, got {p}")

    def bits():
        t = p
        for _ in range(n):
            i = t & 1
            t = (3 * t + 1) >> 1 if i else t >> 1
            yield i

    return _coeffs_from_bits(bits(), n)


def coeffs_of_vector(v) -> CoeffPair:
    """Same recursion driven by the bits of a parity vector.

    The scale is 3^popcount / 2^length.  Accepts anything iterable over
    0/1 bits (a ParityVector, tuple, list, ...).
    """
    bits = tuple(v)
    return _coeffs_from_bits(bits, len(bits))


def evaluate(c: CoeffPair, p: int) -> Optional[int]:
    """scale*p + offset when that is an integer, else None.

    None signals that p does not realize the parity history behind the
    coefficients, so this doubles as a membership test for the residue
    class of the underlying vector.
    """
    n = c.scale.pow2
    e = c.offset.exp2
    d = max(n, e)
    num = (3 ** c.scale.pow3 * p << (d - n)) + (c.offset.numerator << (d - e))
    if num & ((1 << d) - 1):
        return None
    return num >> d


def verify_decomposition(p: int, n: int) -> bool:
    """Exact check that evaluate(coeffs_of_seed(p, n), p) equals the n-th iterate."""
    t = p
    for _ in range(n):
        t = step(t)
    return evaluate(coeffs_of_seed(p, n), p) == t
