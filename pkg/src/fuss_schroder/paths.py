"""Lattice paths from (0, 0) to (n, kn) with N, E and restricted D steps.

A path belongs to the (k, S) family when it never dips below ``y = kx`` and
every diagonal step climbs from ``y = kj + r - 1`` to ``y = kj + r`` with
``r`` in ``S``.  The classical (k, r) family is ``S = {r}``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .partitions import InvalidInputError, Partition

DEFAULT_MAX_N = 8
DEFAULT_MAX_K = 4


class ResourceLimitError(RuntimeError):
    """Raised when a brute-force request exceeds the configured bounds."""


class SizeClass(enum.Enum):
    LARGE = "large"
    SMALL = "small"
    DIAG = "diag"  # large paths whose last step is diagonal


@dataclass(frozen=True)
class FamilySpec:
    n: int
    k: int
    S: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", frozenset(self.S))
        if self.n < 0:
            raise InvalidInputError(f"n must be nonnegative, got {self.n}")
        if self.k < 1:
            raise InvalidInputError(f"k must be positive, got {self.k}")
        if not self.S:
            raise InvalidInputError("allowed residue set S must be nonempty")
        bad = sorted(r for r in self.S if not 1 <= r <= self.k)
        if bad:
            raise InvalidInputError(f"residues {bad} are outside [1, {self.k}]")

    @classmethod
    def kr(cls, n: int, k: int, r: int) -> FamilySpec:
        return cls(n, k, frozenset({r}))

    @property
    def d(self) -> int:
        return len(self.S)

    @property
    def has_k(self) -> bool:
        return self.k in self.S

    def with_n(self, n: int) -> FamilySpec:
        return FamilySpec(n, self.k, self.S)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "S": sorted(self.S)}


@dataclass(frozen=True)
class LatticePath:
    steps: str
    spec: FamilySpec

    def __str__(self) -> str:
        return self.steps

    def to_json(self) -> dict:
        return {"steps": self.steps, **self.spec.to_json()}


@dataclass(frozen=True)
class Failure:
    check: str
    index: int | None
    message: str


@dataclass
class ValidationReport:
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def first(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def add(self, check: str, index: int | None, message: str) -> None:
        self.failures.append(Failure(check, index, message))

    def checks_failed(self) -> set[str]:
        return {f.check for f in self.failures}


def diagonal_residue(top: int, k: int) -> int:
    """The ``r`` in ``[1, k]`` for a diagonal step ending at height ``top``."""
    return (top - 1) % k + 1


def validate_path(p: LatticePath) -> ValidationReport:
    """Check alphabet, the line ``y >= kx``, the D-residue rule and the endpoint.

    Each failing check is reported once, at its first offending step index.
    """
    spec = p.spec
    k = spec.k
    report = ValidationReport()
    x = y = 0
    below = residue = False
    for i, step in enumerate(p.steps):
        if step == "N":
            y += 1
        elif step == "E":
            x += 1
        elif step == "D":
            x += 1
            y += 1
            r = diagonal_residue(y, k)
            if r not in spec.S and not residue:
                residue = True
                report.add("residue", i, f"D step from y={y - 1} to y={y} has r={r}, not in S")
        else:
            report.add("alphabet", i, f"unknown step {step!r}")
            return report
        if y < k * x and not below:
            below = True
            report.add("above-line", i, f"point ({x},{y}) lies below y={k}x")
    if (x, y) != (spec.n, k * spec.n):
        report.add("endpoint", None, f"path ends at ({x},{y}), expected ({spec.n},{k * spec.n})")
    return report


def path_type(p: LatticePath) -> Partition:
    """Partition of the lengths of maximal runs of E steps."""
    runs = [len(run) for run in p.steps.replace("N", " ").replace("D", " ").split()]
    return Partition(tuple(runs))


def touches_line(p: LatticePath) -> bool:
    """True if some D step ends on ``y = kx``."""
    k = p.spec.k
    x = y = 0
    for step in p.steps:
        if step == "N":
            y += 1
        elif step == "E":
            x += 1
        else:
            x += 1
            y += 1
            if y == k * x:
                return True
    return False


def classify(p: LatticePath) -> set[SizeClass]:
    classes = {SizeClass.LARGE}
    if not touches_line(p):
        classes.add(SizeClass.SMALL)
    if p.steps.endswith("D"):
        classes.add(SizeClass.DIAG)
    return classes


def check_bounds(spec: FamilySpec, max_n: int = DEFAULT_MAX_N, max_k: int = DEFAULT_MAX_K) -> None:
    if spec.n > max_n:
        raise ResourceLimitError(f"brute force limited to n <= {max_n}, got n={spec.n}")
    if spec.k > max_k:
        raise ResourceLimitError(f"brute force limited to k <= {max_k}, got k={spec.k}")


def _walk(spec: FamilySpec) -> Iterator[tuple[str, bool]]:
    """Yield ``(steps, touches)`` for every large path, in D < E < N order."""
    n, k, S = spec.n, spec.k, spec.S
    top = k * n
    buf: list[str] = []

    def rec(x: int, y: int, touched: bool) -> Iterator[tuple[str, bool]]:
        if x == n and y == top:
            yield "".join(buf), touched
            return
        # D
        if x < n and y < top and k * (x + 1) <= y + 1 and diagonal_residue(y + 1, k) in S:
            buf.append("D")
            yield from rec(x + 1, y + 1, touched or y + 1 == k * (x + 1))
            buf.pop()
        # E
        if x < n and k * (x + 1) <= y:
            buf.append("E")
            yield from rec(x + 1, y, touched)
            buf.pop()
        # N
        if y < top:
            buf.append("N")
            yield from rec(x, y + 1, touched)
            buf.pop()

    yield from rec(0, 0, False)


def _in_class(steps: str, touched: bool, cls: SizeClass) -> bool:
    if cls is SizeClass.LARGE:
        return True
    if cls is SizeClass.SMALL:
        return not touched
    return steps.endswith("D")


def enumerate_paths(
    spec: FamilySpec,
    cls: SizeClass = SizeClass.LARGE,
    *,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> Iterator[LatticePath]:
    """Every valid path of ``spec`` in class ``cls``, lexicographically with D < E < N.

    Every prefix of a partial walk can be completed (go north to ``kn``, then
    east), so the depth-first search never dead-ends.
    """
    check_bounds(spec, max_n, max_k)
    for steps, touched in _walk(spec):
        if _in_class(steps, touched, cls):
            yield LatticePath(steps, spec)


class TypeCensus(dict):
    """Mapping ``Partition -> count`` kept in canonical key order."""

    @classmethod
    def from_counts(cls, counts: dict[Partition, int]) -> TypeCensus:
        return cls((lam, counts[lam]) for lam in sorted(counts, key=Partition.sort_key) if counts[lam])

    @property
    def total(self) -> int:
        return sum(self.values())

    def get_count(self, lam: Partition) -> int:
        return self.get(lam, 0)

    def to_json(self) -> dict[str, int]:
        return {str(lam): c for lam, c in self.items()}


def count_by_type_bruteforce(
    spec: FamilySpec,
    cls: SizeClass = SizeClass.LARGE,
    *,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> TypeCensus:
    counts: Counter[Partition] = Counter()
    for p in enumerate_paths(spec, cls, max_n=max_n, max_k=max_k):
        counts[path_type(p)] += 1
    return TypeCensus.from_counts(counts)


def all_residue_sets(k: int) -> Iterable[frozenset[int]]:
    """Nonempty subsets of ``[1, k]``, by size then lexicographically."""
    for size in range(1, k + 1):
        for combo in combinations(range(1, k + 1), size):
            yield frozenset(combo)

