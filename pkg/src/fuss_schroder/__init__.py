"""Exact enumeration of (k, S)-Fuss-Schroder lattice paths by type."""

from .partitions import Partition, make_partition, merge, multiplicity_factor
from .paths import (
    FamilySpec,
    LatticePath,
    SizeClass,
    classify,
    count_by_type_bruteforce,
    enumerate_paths,
    path_type,
    validate_path,
)
from .bijections import (
    HeightSequence,
    PlaneForest,
    forest_to_sequence,
    forest_type,
    marker_set,
    path_to_sequence,
    sequence_to_forest,
    sequence_to_path,
    validate_forest,
)
from .formulas import count_family, formula_census
from .series import lagrange_coefficient, solve_system

__version__ = "0.1.0"
