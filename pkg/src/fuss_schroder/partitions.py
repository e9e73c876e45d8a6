"""Integer partitions used as path types and as monomial exponents."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from math import factorial, prod
from typing import Iterable, Iterator


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers.

    The constructor canonicalizes its input, so ``Partition([1, 3, 2, 1])``
    and ``Partition((3, 2, 1, 1))`` compare equal.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int):
                raise InvalidInputError(f"partition part {p!r} is not an integer")
            if p <= 0:
                raise InvalidInputError(f"partition part {p} is not positive")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        """Map from part size ``i`` to the number of parts equal to ``i``."""
        return dict(Counter(self.parts))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __str__(self) -> str:
        return to_key(self)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.weight, self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)


EMPTY = Partition()


def make_partition(parts: Iterable[int]) -> Partition:
    return Partition(tuple(parts))


def multiplicity_factor(lam: Partition) -> int:
    """Product of ``m_i!`` over the multiplicities of ``lam``; 1 for the empty partition."""
    return prod(factorial(m) for m in lam.multiplicities.values())


def merge(lam: Partition, mu: Partition) -> Partition:
    """Multiset union of parts."""
    if not mu.parts:
        return lam
    if not lam.parts:
        return mu
    return Partition(lam.parts + mu.parts)


def add_part(lam: Partition, part: int) -> Partition:
    return Partition(lam.parts + (part,))


def to_key(lam: Partition) -> str:
    """Compact JSON rendering, e.g. ``"[2,1]"``; used as a stable dictionary key."""
    return "[" + ",".join(str(p) for p in lam.parts) + "]"


def from_json(value) -> Partition:
    """Parse a partition from a list or from its JSON text such as ``"[2,1]"``."""
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"cannot parse partition {value!r}") from exc
    if not isinstance(value, (list, tuple)):
        raise InvalidInputError(f"partition must be an array, got {value!r}")
    return Partition(tuple(value))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in decreasing lexicographic order."""
    if n < 0:
        return
    if max_part is None:
        max_part = n

    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, max_part):
        yield Partition(parts)


def partitions_up_to(n: int) -> list[Partition]:
    """Every partition of weight at most ``n``, sorted by weight then parts."""
    out = [lam for w in range(n + 1) for lam in partitions_of(w)]
    out.sort(key=Partition.sort_key)
    return out
