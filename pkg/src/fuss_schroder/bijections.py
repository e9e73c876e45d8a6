"""Path <-> height sequence <-> valid plane forest.

Slot labeling
-------------
Cut the rectangle ``[0, n] x [0, kn]`` into ``n`` horizontal bands of ``k``
unit rows, counted from the top.  Inside a band whose top line is
``y = top`` the admissible E/D positions, read top to bottom, are::

    E on top, [D into top], E on top-1, [D into top-1], ..., E on top-k+1, [D into top-k+1]

where "D into y" is present only when its residue ``r`` (``y = kj + r``) is
in ``S``.  That is ``k + d`` slots per band and the bracketed ones sit at the
marker positions ``S'``.  Slot ``p`` of band ``i`` gets label
``i * (k + d) + p``.  For ``S = {k}`` this gives ``E`` on ``y = (n-i)k`` the
label ``i(k+1)``, the diagonal into it ``i(k+1) + 1``, and ``E`` on
``y = (n-i)k - j`` the label ``i(k+1) + 1 + j``; for example the sequence
``(0, 4, 5, 5)`` for ``n = 4, k = 2`` decodes to ``NNNNNEEDNNE``.

A path's labels, sorted ascending, list its E and D steps from right to left.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .partitions import InvalidInputError, Partition
from .paths import FamilySpec, LatticePath, ValidationReport, validate_path


class InvalidSequenceError(InvalidInputError):
    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message)
        self.index = index


class InvalidForestError(InvalidInputError):
    pass


def marker_set(k: int, S) -> frozenset[int]:
    """Marker positions in ``0, 1, ..., k-1`` after inserting a marker behind ``k - r`` for each ``r`` in ``S``."""
    S = frozenset(S)
    if not S:
        raise InvalidInputError("S must be nonempty")
    if any(not 1 <= r <= k for r in S):
        raise InvalidInputError(f"S={sorted(S)} is not a subset of [1, {k}]")
    return frozenset(p for p, (kind, _) in enumerate(_band_layout(k, S)) if kind == "D")


def _band_layout(k: int, S: frozenset[int]) -> list[tuple[str, int]]:
    # (kind, depth below band top)
    layout = []
    for j in range(k):
        layout.append(("E", j))
        if k - j in S:
            layout.append(("D", j))
    return layout


class _Labeler:
    def __init__(self, spec: FamilySpec) -> None:
        self.spec = spec
        self.width = spec.k + spec.d
        self.layout = _band_layout(spec.k, spec.S)
        self.pos = {slot: p for p, slot in enumerate(self.layout)}
        self.markers = frozenset(p for p, (kind, _) in enumerate(self.layout) if kind == "D")

    def label(self, kind: str, y: int) -> int:
        # for D, y is the upper endpoint
        band, depth = divmod(self.spec.k * self.spec.n - y, self.spec.k)
        return band * self.width + self.pos[(kind, depth)]

    def decode(self, label: int) -> tuple[str, int]:
        band, p = divmod(label, self.width)
        kind, depth = self.layout[p]
        return kind, self.spec.k * (self.spec.n - band) - depth

    def is_marker(self, label: int) -> bool:
        return label % self.width in self.markers

    def bound(self, i: int) -> int:
        """Largest admissible value of the 1-indexed ``i``-th sequence entry."""
        return (i - 1) * self.width + (1 if self.spec.has_k else 0)


@dataclass(frozen=True)
class HeightSequence:
    values: tuple[int, ...]
    spec: FamilySpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))

    def to_json(self) -> list[int]:
        return list(self.values)


def validate_sequence(values: Sequence[int], spec: FamilySpec) -> None:
    """Raise :class:`InvalidSequenceError` at the first entry breaking an invariant."""
    lab = _Labeler(spec)
    if len(values) != spec.n:
        raise InvalidSequenceError(f"sequence has length {len(values)}, expected n={spec.n}")
    seen_markers = set()
    prev = 0
    for idx, s in enumerate(values):
        if isinstance(s, bool) or not isinstance(s, int):
            raise InvalidSequenceError(f"entry {idx} ({s!r}) is not an integer", idx)
        if s < prev:
            msg = "negative" if idx == 0 else f"smaller than entry {idx - 1}"
            raise InvalidSequenceError(f"entry {idx} ({s}) is {msg}", idx)
        if s > lab.bound(idx + 1):
            raise InvalidSequenceError(f"entry {idx} ({s}) exceeds bound {lab.bound(idx + 1)}", idx)
        if lab.is_marker(s):
            if s in seen_markers:
                raise InvalidSequenceError(f"entry {idx} repeats diagonal label {s}", idx)
            seen_markers.add(s)
        prev = s


def path_to_sequence(p: LatticePath) -> HeightSequence:
    report = validate_path(p)
    if not report.ok:
        raise InvalidInputError(f"invalid path {p.steps!r}: {report.first().message}")
    lab = _Labeler(p.spec)
    labels = []
    y = 0
    for step in p.steps:
        if step == "N":
            y += 1
        elif step == "E":
            labels.append(lab.label("E", y))
        else:
            y += 1
            labels.append(lab.label("D", y))
    return HeightSequence(tuple(sorted(labels)), p.spec)


def sequence_to_path(s: HeightSequence) -> LatticePath:
    spec = s.spec
    validate_sequence(s.values, spec)
    lab = _Labeler(spec)
    out = []
    y = 0
    for label in reversed(s.values):
        kind, h = lab.decode(label)
        if kind == "E":
            out.append("N" * (h - y) + "E")
        else:
            out.append("N" * (h - 1 - y) + "D")
        y = h
    out.append("N" * (spec.k * spec.n - y))
    return LatticePath("".join(out), spec)


def _freeze(node: list) -> tuple:
    return tuple(_freeze(c) for c in node)


@dataclass(frozen=True)
class PlaneForest:
    """Ordered forest; each vertex is the tuple of its children.

    Labels are implicit: vertex ``v`` is the ``v``-th vertex in pre-order
    across the whole forest.
    """

    trees: tuple

    @classmethod
    def from_json(cls, data) -> PlaneForest:
        def conv(node):
            if not isinstance(node, (list, tuple)):
                raise InvalidForestError(f"forest node must be an array, got {node!r}")
            return tuple(conv(c) for c in node)

        if not isinstance(data, (list, tuple)):
            raise InvalidForestError("forest must be an array of trees")
        return cls(tuple(conv(t) for t in data))

    @classmethod
    def from_degrees(cls, degrees: Sequence[int]) -> PlaneForest:
        """Rebuild a forest from its pre-order child counts."""
        roots: list[list] = []
        stack: list[list] = []  # [children, remaining]
        for c in degrees:
            node: list = []
            if stack:
                frame = stack[-1]
                frame[0].append(node)
                frame[1] -= 1
                if frame[1] == 0:
                    stack.pop()
            else:
                roots.append(node)
            if c:
                stack.append([node, c])
        if stack:
            raise InvalidForestError("pre-order degree sequence ends inside a tree")
        return cls(tuple(_freeze(r) for r in roots))

    def to_json(self) -> list:
        def conv(node):
            return [conv(c) for c in node]

        return [conv(t) for t in self.trees]

    def degrees(self) -> list[int]:
        """Child counts in pre-order; index = vertex label."""
        out = []
        stack = list(reversed(self.trees))
        while stack:
            node = stack.pop()
            out.append(len(node))
            stack.extend(reversed(node))
        return out

    @property
    def num_vertices(self) -> int:
        return len(self.degrees())

    @property
    def num_edges(self) -> int:
        return self.num_vertices - len(self.trees)


def sequence_to_forest(s: HeightSequence) -> PlaneForest:
    """Attach ``m(k+d)`` children to vertex ``j`` for each block of ``m`` equal values ``j``.

    Vertices ``0..j`` are final once ``j`` receives children, so the output's
    branching vertices carry exactly the sequence values as pre-order labels;
    the forest is therefore rebuilt directly from that degree sequence.
    """
    spec = s.spec
    validate_sequence(s.values, spec)
    width = spec.k + spec.d
    roots = 2 if spec.has_k else 1
    degrees = [0] * (spec.n * width + roots)
    for j, m in Counter(s.values).items():
        degrees[j] = m * width
    forest = PlaneForest.from_degrees(degrees)
    if len(forest.trees) != roots:
        raise AssertionError(f"construction produced {len(forest.trees)} trees from {s.values}")
    return forest


def validate_forest(f: PlaneForest, spec: FamilySpec) -> ValidationReport:
    report = ValidationReport()
    try:
        f = PlaneForest.from_json(f.trees)
    except InvalidForestError as exc:
        report.add("structure", None, str(exc))
        return report
    lab = _Labeler(spec)
    width = lab.width
    roots = 2 if spec.has_k else 1
    if len(f.trees) != roots:
        report.add("tree-count", None, f"forest has {len(f.trees)} trees, expected {roots}")
    degrees = f.degrees()
    expected_v = spec.n * width + roots
    if len(degrees) != expected_v:
        report.add("vertex-count", None, f"forest has {len(degrees)} vertices, expected {expected_v}")
    if f.num_edges != spec.n * width:
        report.add("edge-count", None, f"forest has {f.num_edges} edges, expected {spec.n * width}")
    for v, c in enumerate(degrees):
        if lab.is_marker(v):
            if c not in (0, width):
                report.add("children", v, f"marker vertex {v} has {c} children, expected 0 or {width}")
                break
        elif c % width:
            report.add("children", v, f"vertex {v} has {c} children, not a multiple of {width}")
            break
    return report


def _require_valid_forest(f: PlaneForest, spec: FamilySpec) -> None:
    report = validate_forest(f, spec)
    if not report.ok:
        raise InvalidForestError(report.first().message)


def forest_to_sequence(f: PlaneForest, spec: FamilySpec) -> HeightSequence:
    _require_valid_forest(f, spec)
    width = spec.k + spec.d
    values: list[int] = []
    for v, c in enumerate(f.degrees()):
        values.extend([v] * (c // width))
    validate_sequence(values, spec)
    return HeightSequence(tuple(values), spec)


def forest_type(f: PlaneForest, spec: FamilySpec) -> Partition:
    lab = _Labeler(spec)
    return Partition(
        tuple(c // lab.width for v, c in enumerate(f.degrees()) if c and not lab.is_marker(v))
    )


def path_to_forest(p: LatticePath) -> PlaneForest:
    return sequence_to_forest(path_to_sequence(p))


def forest_to_path(f: PlaneForest, spec: FamilySpec) -> LatticePath:
    return sequence_to_path(forest_to_sequence(f, spec))
