"""Parity vectors, complete tables, and the inverse (vector -> seed) problem.

The canonical parity convention everywhere in this package is
seed-inclusive: bit k of a vector is the parity of the k-th iterate, with
bit 0 the parity of the seed itself.  ``interior_view`` is the documented
shift-by-one adapter for the seed-excluded presentation used by the
order-n tables (whose rows start at the first iterate).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence

from .core import step, trajectory
from .errors import NotNested, OrderTooLarge
from .trends import assess_trend

DEFAULT_ORDER_CAP = 20


class ParityVector:
    """An ordered, immutable sequence of parity bits."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int]):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("parity bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("ParityVector is immutable")

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, ParityVector):
            return self.bits == other.bits
        if isinstance(other, tuple):
            return self.bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"ParityVector({self.to_string()!r})"

    @property
    def popcount(self) -> int:
        return sum(self.bits)

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_string(cls, text: str) -> "ParityVector":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"parity string must contain only 0/1: {text!r}")
        return cls(int(ch) for ch in text)

    def is_prefix_of(self, other: "ParityVector") -> bool:
        return len(self) <= len(other) and other.bits[: len(self)] == self.bits

    def contains_block(self, other: "ParityVector") -> bool:
        """True when ``other`` occurs as a contiguous block of self."""
        n, m = len(self), len(other)
        if m > n:
            return False
        return any(self.bits[i : i + m] == other.bits for i in range(n - m + 1))

    def interior_view(self) -> "ParityVector":
        """Drop the seed bit: the seed-excluded presentation of the same run."""
        return ParityVector(self.bits[1:])


def parity_vector(p: int, n: int) -> ParityVector:
    """Bits of the first n iterates of p, seed included (bit 0 = p mod 2)."""
    if n < 0:
        raise ValueError("length must be non-negative")
    if p < 1:
        raise ValueError(f"seed must be a positive integer, got {p}")
    bits = []
    t = p
    for _ in range(n):
        i = t & 1
        bits.append(i)
        t = (3 * t + 1) >> 1 if i else t >> 1
    return ParityVector(bits)


@dataclass(frozen=True)
class ResidueClass:
    """All seeds realizing a given parity vector: residue mod 2^modulus_exp."""

    residue: int
    modulus_exp: int

    @property
    def modulus(self) -> int:
        return 1 << self.modulus_exp

    @property
    def is_zero(self) -> bool:
        return self.residue == 0

    def minimal_member(self) -> int:
        """Smallest positive member (2^n when the residue is 0)."""
        return self.residue if self.residue else self.modulus

    def contains(self, p: int) -> bool:
        return p % self.modulus == self.residue


def solve_parity(v: ParityVector | Sequence[int]) -> ResidueClass:
    """Lift a parity vector to the unique residue class realizing it.

    Bit-by-bit lifting: after k bits the residue r is pinned mod 2^k and
    the k-th iterate of the whole class is (3^m * x + c) / 2^k.  Of the
    two lifts of r mod 2^{k+1}, exactly one gives the k-th iterate the
    required parity, because flipping the lift shifts that iterate by the
    odd number 3^m.
    """
    r = 0
    p3 = 1  # 3^m for the bits fixed so far
    c = 0  # iterate-k of the class is (p3*x + c) >> k
    k = 0
    for b in v:
        y = (p3 * r + c) >> k
        if (y & 1) != b:
            r += 1 << k
        if b:
            c = 3 * c + (1 << k)
            p3 *= 3
        k += 1
    return ResidueClass(residue=r, modulus_exp=k)


def minimal_seed(v: ParityVector | Sequence[int]) -> int:
    """Smallest positive seed whose parity vector equals v."""
    return solve_parity(v).minimal_member()


@dataclass(frozen=True)
class CompleteMatrix:
    """The 2^n-row table of all length-n runs over one residue system.

    generator 1 covers the odd seeds 1, 3, ..., 2^{n+1}-1; generator 2 the
    even seeds 2, 4, ..., 2^{n+1}.  Rows hold the n iterates of each seed
    and are produced on demand, one at a time, so large orders never fully
    materialize.
    """

    generator: int
    order: int

    @property
    def row_count(self) -> int:
        return 1 << self.order

    def seeds(self) -> range:
        first = 1 if self.generator == 1 else 2
        return range(first, (1 << (self.order + 1)) + 1, 2)

    def row(self, seed: int) -> tuple[int, ...]:
        """The n iterates of one seed (the seed itself is not included)."""
        return trajectory(seed, self.order).terms[1:]

    def rows(self) -> Iterator[tuple[int, tuple[int, ...]]]:
        for seed in self.seeds():
            yield seed, self.row(seed)

    def structural_rows(self) -> Iterator[tuple[int, ParityVector]]:
        """Rows replaced by their parity bits, in the seed-excluded view.

        Equivalently the canonical vector of the first iterate; over a
        whole table these cover {0,1}^order exactly once.
        """
        for seed in self.seeds():
            yield seed, parity_vector(step(seed), self.order)


def build_matrix(generator: int, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> CompleteMatrix:
    """Construct the complete table of order n for generator 1 or 2."""
    if generator not in (1, 2):
        raise ValueError("generator must be 1 or 2")
    if n < 1:
        raise ValueError("order must be >= 1")
    if n > order_cap:
        raise OrderTooLarge(n, order_cap)
    return CompleteMatrix(generator=generator, order=n)


def write_matrix_csv(matrix: CompleteMatrix, fh: IO[str]) -> int:
    """Stream the table to CSV: seed,T1..Tn.  Returns the row count."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["seed"] + [f"T{k}" for k in range(1, matrix.order + 1)])
    count = 0
    for seed, row in matrix.rows():
        writer.writerow([seed, *row])
        count += 1
    return count


def write_matrix_json(matrix: CompleteMatrix, fh: IO[str]) -> int:
    """Stream the table as one JSON object, writing a row at a time."""
    fh.write('{"generator": %d, "order": %d, "rows": [' % (matrix.generator, matrix.order))
    count = 0
    for seed, row in matrix.rows():
        if count:
            fh.write(",")
        fh.write("\n")
        obj = {
            "seed": seed,
            "iterates": list(row),
            "parity": parity_vector(seed, matrix.order).to_string(),
        }
        fh.write(json.dumps(obj))
        count += 1
    fh.write("\n]}\n")
    return count


@dataclass(frozen=True)
class GrowthReport:
    """Evidence from probing nested prefixes of a would-be infinite vector.

    The verdict is evidence only, never a theorem: "stabilizes" means the
    minimal seeds of the supplied prefixes settled on one value,
    "grows" means they increased without visible bound.
    """

    lengths: tuple[int, ...]
    minimal_seeds: tuple[int, ...]
    verdict: str  # "stabilizes" | "grows" | "inconclusive"
    stable_seed: int | None


def convertibility_probe(prefixes: Sequence[ParityVector]) -> GrowthReport:
    """Solve each prefix of a strictly nested chain and report seed growth."""
    if not prefixes:
        raise NotNested("at least one prefix is required")
    for a, b in zip(prefixes, prefixes[1:]):
        if len(a) >= len(b) or not a.is_prefix_of(b):
            raise NotNested(
                f"prefix of length {len(a)} is not a strict prefix of the next (length {len(b)})"
            )
    seeds = tuple(minimal_seed(v) for v in prefixes)
    trend = assess_trend(seeds)
    if trend.kind == "stabilizes":
        verdict, stable = "stabilizes", seeds[-1]
    elif trend.kind == "grows-unbounded":
        verdict, stable = "grows", None
    else:
        verdict, stable = "inconclusive", None
    return GrowthReport(
        lengths=tuple(len(v) for v in prefixes),
        minimal_seeds=seeds,
        verdict=verdict,
        stable_seed=stable,
    )
