from collections import Counter

import pytest

from fuss_schroder.bijections import (
    HeightSequence,
    InvalidForestError,
    InvalidSequenceError,
    PlaneForest,
    forest_to_sequence,
    forest_type,
    marker_set,
    path_to_sequence,
    sequence_to_forest,
    sequence_to_path,
    validate_forest,
    validate_sequence,
)
from fuss_schroder.formulas import formula_census
from fuss_schroder.partitions import InvalidInputError, Partition
from fuss_schroder.paths import (
    FamilySpec,
    LatticePath,
    SizeClass,
    all_residue_sets,
    classify,
    enumerate_paths,
    path_type,
)

WORKED_SPEC = FamilySpec(4, 2, {2})
WORKED_PATH = "NNNNNEEDNNE"
# vertex 0 with 3 leaves; vertex 4 (marker) with children 5 (6 leaves), 12, 13
WORKED_FOREST = [[[], [], []], [[[], [], [], [], [], []], [], []]]


def literal_construction(values, spec):
    """Grow the forest one block at a time, reading labels off a fresh pre-order walk."""
    width = spec.k + spec.d
    forest = [[] for _ in range(2 if spec.has_k else 1)]

    def preorder():
        out, stack = [], list(reversed(forest))
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(node))
        return out

    for j, m in sorted(Counter(values).items()):
        preorder()[j].extend([] for _ in range(m * width))
    return forest


def forests_by_rule(spec):
    """All pre-order degree sequences allowed by the child-count rules that parse into the right number of trees."""
    width = spec.k + spec.d
    markers = marker_set(spec.k, spec.S)
    roots = 2 if spec.has_k else 1
    total = spec.n * width + roots
    out = []

    def rec(degrees, budget):
        v = len(degrees)
        if v == total:
            if budget == 0:
                try:
                    f = PlaneForest.from_degrees(degrees)
                except InvalidForestError:
                    return
                if len(f.trees) == roots:
                    out.append(f)
            return
        choices = [0, width] if v % width in markers else range(0, budget + 1, width)
        for c in choices:
            if c <= budget:
                rec(degrees + [c], budget - c)

    rec([], spec.n * width)
    return out


def all_paths(max_n=4, max_k=3):
    for k in range(1, max_k + 1):
        for S in all_residue_sets(k):
            for n in range(max_n + 1):
                yield from enumerate_paths(FamilySpec(n, k, S))


class TestMarkers:
    @pytest.mark.parametrize(
        "k, S, expected", [(2, {2}, {1}), (2, {1}, {2}), (2, {1, 2}, {1, 3}), (3, {1, 2, 3}, {1, 3, 5})]
    )
    def test_examples(self, k, S, expected):
        assert marker_set(k, S) == expected

    @pytest.mark.parametrize("k", range(1, 9))
    def test_top_residue_is_one(self, k):
        assert marker_set(k, {k}) == {1}

    def test_size_and_range(self):
        for k in range(1, 6):
            for S in all_residue_sets(k):
                M = marker_set(k, S)
                assert len(M) == len(S)
                assert all(0 < p < k + len(S) for p in M)

    def test_empty(self):
        with pytest.raises(InvalidInputError):
            marker_set(2, set())


class TestSequences:
    def test_worked_example(self):
        s = path_to_sequence(LatticePath(WORKED_PATH, WORKED_SPEC))
        assert s.values == (0, 4, 5, 5)
        assert sequence_to_path(HeightSequence((0, 4, 5, 5), WORKED_SPEC)).steps == WORKED_PATH

    def test_single_east(self):
        spec = FamilySpec(1, 2, {2})
        assert path_to_sequence(LatticePath("NNE", spec)).values == (0,)
        assert sequence_to_path(HeightSequence((0,), spec)).steps == "NNE"

    def test_single_diagonal(self):
        spec = FamilySpec(1, 2, {2})
        s = path_to_sequence(LatticePath("ND", spec))
        assert s.values == (1,)
        assert s.values[0] % 3 in marker_set(2, {2})

    def test_interior_diagonal(self):
        # s_1 = 0 is an east step on top; the diagonal sits to its left
        p = sequence_to_path(HeightSequence((0, 1), FamilySpec(2, 1, {1})))
        assert p.steps == "NDE"
        assert classify(p) == {SizeClass.LARGE, SizeClass.SMALL}

    @pytest.mark.parametrize(
        "values, index",
        [((0, 5, 5, 5), 1), ((0, 4, 4, 5), 2), ((1, 0, 5, 5), 1), ((-1, 4, 5, 5), 0), ((0, 4, 5, 11), 3)],
    )
    def test_rejects(self, values, index):
        with pytest.raises(InvalidSequenceError) as err:
            sequence_to_path(HeightSequence(values, WORKED_SPEC))
        assert err.value.index == index

    def test_length_mismatch(self):
        with pytest.raises(InvalidSequenceError):
            validate_sequence((0, 4), WORKED_SPEC)

    def test_bound_without_k(self):
        spec = FamilySpec(2, 2, {1})
        validate_sequence((0, 3), spec)
        with pytest.raises(InvalidSequenceError):
            validate_sequence((0, 4), spec)

    def test_rejects_invalid_path(self):
        with pytest.raises(InvalidInputError):
            path_to_sequence(LatticePath("NND", FamilySpec(1, 2, {2})))


class TestForests:
    def test_worked_example(self):
        f = sequence_to_forest(HeightSequence((0, 4, 5, 5), WORKED_SPEC))
        assert f.to_json() == WORKED_FOREST
        assert forest_type(f, WORKED_SPEC) == Partition((2, 1))
        assert forest_to_sequence(f, WORKED_SPEC).values == (0, 4, 5, 5)
        assert f.num_vertices == 14 and f.num_edges == 12

    def test_worked_forest_is_valid(self):
        f = PlaneForest.from_json(WORKED_FOREST)
        assert validate_forest(f, WORKED_SPEC).ok
        assert forest_type(f, WORKED_SPEC) == Partition((2, 1))

    def test_empty_sequence(self):
        spec = FamilySpec(0, 2, {2})
        f = sequence_to_forest(HeightSequence((), spec))
        assert f.to_json() == [[], []]
        assert forest_to_sequence(f, spec).values == ()
        assert forest_type(f, spec) == Partition()

    def test_single_block(self):
        spec = FamilySpec(1, 2, {2})
        f = sequence_to_forest(HeightSequence((0,), spec))
        assert f.to_json() == [[[], [], []], []]
        assert forest_to_sequence(f, spec).values == (0,)

    def test_single_tree_without_k(self):
        spec = FamilySpec(1, 2, {1})
        f = sequence_to_forest(HeightSequence((0,), spec))
        assert f.to_json() == [[[], [], []]]

    def test_child_count_not_multiple(self):
        spec = FamilySpec(1, 2, {2})
        report = validate_forest(PlaneForest.from_json([[[], []], []]), spec)
        assert not report.ok
        assert "children" in report.checks_failed()

    def test_marker_with_too_many_children(self):
        spec = FamilySpec(2, 2, {2})
        # second root has label 1, a marker, with 6 children
        report = validate_forest(PlaneForest.from_json([[], [[] for _ in range(6)]]), spec)
        assert report.checks_failed() == {"children"}
        assert report.first().index == 1

    def test_three_trees(self):
        spec = FamilySpec(1, 2, {2})
        report = validate_forest(PlaneForest.from_json([[[], [], []], [], []]), spec)
        assert "tree-count" in report.checks_failed()

    def test_invalid_forest_not_converted(self):
        with pytest.raises(InvalidForestError):
            forest_to_sequence(PlaneForest.from_json([[], [], []]), FamilySpec(0, 2, {2}))

    def test_from_json_rejects_non_arrays(self):
        with pytest.raises(InvalidForestError):
            PlaneForest.from_json([[1], []])

    def test_degrees_round_trip(self):
        f = PlaneForest.from_json(WORKED_FOREST)
        assert PlaneForest.from_degrees(f.degrees()) == f


class TestBijection:
    def test_construction_matches_literal_algorithm(self):
        for p in all_paths():
            s = path_to_sequence(p)
            assert sequence_to_forest(s).to_json() == literal_construction(s.values, p.spec)

    def test_round_trips_and_type(self):
        for p in all_paths():
            s = path_to_sequence(p)
            f = sequence_to_forest(s)
            assert validate_forest(f, p.spec).ok
            assert forest_to_sequence(f, p.spec) == s
            assert sequence_to_path(s) == p
            assert forest_type(f, p.spec) == path_type(p)

    def test_class_correspondence(self):
        for p in all_paths():
            f = sequence_to_forest(path_to_sequence(p))
            classes = classify(p)
            second_single = len(f.trees) == 1 or f.trees[1] == ()
            assert (SizeClass.SMALL in classes) == second_single
            if p.spec.n >= 1:
                assert (SizeClass.DIAG in classes) == (f.trees[0] == ())

    @pytest.mark.parametrize(
        "n, k, S", [(3, 1, {1}), (3, 2, {2}), (3, 2, {1}), (3, 2, {1, 2}), (2, 3, {1, 3}), (2, 3, {2}), (2, 3, {1, 2, 3})]
    )
    def test_rule_defined_forests_counted_by_type(self, n, k, S):
        spec = FamilySpec(n, k, S)
        forests = forests_by_rule(spec)
        census = Counter(forest_type(f, spec) for f in forests)
        assert dict(census) == dict(formula_census(spec, SizeClass.LARGE))
        # and each one maps back into a valid path
        images = {forest_to_sequence(f, spec).values for f in forests}
        assert len(images) == len(forests)
