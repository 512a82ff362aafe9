"""Partitions, signatures and Gelfand-Tsetlin patterns.

These are the index sets for everything else: partitions label symmetric-group
irreps and polynomial U(d) irreps, signatures label all rational U(d) irreps,
and GT patterns enumerate a weight basis of a given irrep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from typing import Iterator

from weylchar.errors import BudgetExceeded

GT_ENUM_MAX_D = 8


def _as_int_tuple(xs) -> tuple[int, ...]:
    out = tuple(int(x) for x in xs)
    if any(x != y for x, y in zip(out, tuple(xs))):
        raise ValueError(f"non-integer entries: {tuple(xs)!r}")
    return out


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of nonnegative integers; trailing zeros dropped."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = _as_int_tuple(self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part in partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def part(self, i: int) -> int:
        """i-th part (0-based), zero beyond the length."""
        return self.parts[i] if i < len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(
            tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))
        )

    def contains(self, other: "Partition") -> bool:
        return all(self.part(i) >= other.part(i) for i in range(other.length))

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


EMPTY = Partition()


@dataclass(frozen=True)
class Signature:
    """Weakly decreasing integer d-tuple; the length d is semantic."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = _as_int_tuple(self.entries)
        if not entries:
            raise ValueError("signature must have length d >= 1")
        if any(entries[i] < entries[i + 1] for i in range(len(entries) - 1)):
            raise ValueError(f"entries not weakly decreasing: {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def d(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def shifted(self, a: int) -> "Signature":
        return Signature(tuple(e + a for e in self.entries))

    def negated(self) -> "Signature":
        """Contragredient signature: negate and reverse."""
        return Signature(tuple(-e for e in reversed(self.entries)))

    def to_json(self) -> dict:
        return {"d": self.d, "entries": list(self.entries)}

    def __repr__(self):
        return f"Signature{self.entries}"


def signature_from_pair(lam: Partition, mu: Partition, d: int) -> Signature:
    """Signature (lam_1,...,0,...,0,-mu_q,...,-mu_1) of length d."""
    lam, mu = Partition(tuple(lam)), Partition(tuple(mu))
    if lam.length + mu.length > d:
        raise ValueError(
            f"pair does not fit: l(lam)+l(mu) = {lam.length + mu.length} > d = {d}"
        )
    zeros = (0,) * (d - lam.length - mu.length)
    return Signature(lam.parts + zeros + tuple(-m for m in reversed(mu.parts)))


def signature_to_pair(sig: Signature) -> tuple[Partition, Partition]:
    """Inverse of signature_from_pair: (positive parts, negated reversed negatives)."""
    pos = tuple(e for e in sig.entries if e > 0)
    neg = tuple(-e for e in reversed(sig.entries) if e < 0)
    return Partition(pos), Partition(neg)


@dataclass(frozen=True)
class ShiftDecomposition:
    a: int
    lam: Partition
    mu: Partition


def shift_decompose(sig: Signature, max_l: int | None = None) -> ShiftDecomposition | None:
    """Split sig = a*1_d + (lam above, mu below) around a constant middle run.

    Searches l = 0..max_l (default floor(d/4)) for the smallest l such that the
    entries at positions l+1..d-l are all equal; returns None when no such l
    exists within the bound.
    """
    d = sig.d
    if max_l is None:
        max_l = d // 4
    max_l = min(max_l, d // 2)
    for l in range(max_l + 1):
        middle = sig.entries[l : d - l]
        if not middle:
            continue
        a = middle[0]
        if all(e == a for e in middle):
            lam = Partition(tuple(e - a for e in sig.entries[:l]))
            mu = Partition(tuple(a - e for e in reversed(sig.entries[d - l :])))
            return ShiftDecomposition(a, lam, mu)
    return None


@dataclass(frozen=True)
class GTPattern:
    """Triangular array; rows[k] has length k+1 and the last row is the signature.

    Interlacing: rows[k+1][i] >= rows[k][i] >= rows[k+1][i+1].
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(_as_int_tuple(r) for r in self.rows)
        for k, r in enumerate(rows):
            if len(r) != k + 1:
                raise ValueError(f"row {k} has length {len(r)}, expected {k + 1}")
        for k in range(len(rows) - 1):
            lower, upper = rows[k], rows[k + 1]
            for i in range(k + 1):
                if not (upper[i] >= lower[i] >= upper[i + 1]):
                    raise ValueError(f"interlacing fails between rows {k} and {k + 1}")
        object.__setattr__(self, "rows", rows)

    @property
    def d(self) -> int:
        return len(self.rows)

    def top(self) -> Signature:
        return Signature(self.rows[-1])


def interlacings(entries: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All length-(k-1) tuples interlacing below a length-k signature row."""
    k = len(entries)
    if k == 1:
        return iter(())
    ranges = [range(entries[i + 1], entries[i] + 1) for i in range(k - 1)]
    return itertools.product(*ranges)


GT_ENUM_MAX_PATTERNS = 10**6


def enumerate_gt_patterns(
    sig: Signature,
    max_d: int = GT_ENUM_MAX_D,
    max_patterns: int = GT_ENUM_MAX_PATTERNS,
) -> Iterator[GTPattern]:
    """Depth-first stream of all GT patterns with top row sig.

    Pattern counts equal the irrep dimension, which explodes with d and with
    the entry magnitudes, so both are budgeted before the stream starts.
    """
    if sig.d > max_d:
        raise BudgetExceeded(f"GT enumeration bound exceeded: d = {sig.d} > {max_d}")
    from weylchar.symfunc import weyl_dim

    dim = weyl_dim(sig)
    if dim > max_patterns:
        raise BudgetExceeded(f"{dim} patterns exceed the enumeration budget {max_patterns}")

    def rec(row: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if len(row) == 1:
            yield (row,)
            return
        for lower in interlacings(row):
            for rest in rec(lower):
                yield rest + (row,)

    def stream() -> Iterator[GTPattern]:
        for rows in rec(sig.entries):
            yield GTPattern(rows)

    return stream()


def gt_weight(pattern: GTPattern) -> tuple[int, ...]:
    """Weight vector: k-th entry is rowsum(k) - rowsum(k-1)."""
    sums = [sum(r) for r in pattern.rows]
    return tuple(s - prev for s, prev in zip(sums, [0] + sums[:-1]))


@cache
def partitions_of(n: int, max_length: int | None = None, max_part: int | None = None):
    """All partitions of n, optionally bounded in length and largest part."""
    if n < 0:
        return ()
    max_part = n if max_part is None else min(max_part, n)
    max_length = n if max_length is None else max_length

    def rec(remaining, largest, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(largest, remaining), 0, -1):
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    return tuple(Partition(p) for p in rec(n, max_part, max_length))


def signatures_with_entries(d: int, lo: int, hi: int) -> Iterator[Signature]:
    """All weakly decreasing d-tuples with entries in [lo, hi]."""
    for combo in itertools.combinations_with_replacement(range(hi, lo - 1, -1), d):
        yield Signature(combo)
