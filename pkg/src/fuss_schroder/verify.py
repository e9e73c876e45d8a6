"""Cross-check brute force, closed forms, the series solver and Lagrange inversion."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import formulas, paths, series
from .partitions import Partition, partitions_up_to, to_key
from .paths import FamilySpec, SizeClass

FAMILIES = ("kr", "kS")


@dataclass(frozen=True)
class Mismatch:
    check: str
    k: int
    S: tuple[int, ...]
    n: int
    label: str
    lam: Partition
    expected: int
    got: int

    def __str__(self) -> str:
        S = "{" + ",".join(map(str, self.S)) + "}"
        return (
            f"MISMATCH {self.check}: k={self.k} S={S} n={self.n} {self.label} "
            f"type={to_key(self.lam)} expected={self.expected} got={self.got}"
        )


@dataclass
class VerifyReport:
    rows: list[str] = field(default_factory=list)
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _families(k: int, families) -> list[frozenset[int]]:
    if "kS" in families:
        return list(paths.all_residue_sets(k))
    return [frozenset({r}) for r in range(1, k + 1)]


def _fmt_set(S) -> str:
    return "{" + ",".join(map(str, sorted(S))) + "}"


def _compare(report, check, k, S, n, label, expected: dict, got: dict) -> bool:
    ok = True
    for lam in sorted(set(expected) | set(got), key=Partition.sort_key):
        e, g = expected.get(lam, 0), got.get(lam, 0)
        if e != g:
            ok = False
            report.mismatches.append(Mismatch(check, k, tuple(sorted(S)), n, label, lam, e, g))
    return ok


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def series_class(A, B, AB, spec: FamilySpec, cls: SizeClass):
    """The solved series whose coefficients count ``spec`` paths in ``cls``."""
    if not spec.has_k:
        return None if cls is SizeClass.DIAG else A
    return {SizeClass.SMALL: A, SizeClass.DIAG: B, SizeClass.LARGE: AB}[cls]


def run(
    max_k: int,
    max_n: int,
    families=("kS",),
    *,
    bound_n: int = paths.DEFAULT_MAX_N,
    bound_k: int = paths.DEFAULT_MAX_K,
) -> VerifyReport:
    """Brute-force census vs formula for every (k, S, n, class), then series
    vs formula and Lagrange inversion vs series for every (k, d)."""
    paths.check_bounds(FamilySpec(max_n, max_k, {1}), bound_n, bound_k)
    report = VerifyReport()
    for k in range(1, max_k + 1):
        for S in _families(k, families):
            cells = []
            for cls in SizeClass:
                ok = True
                for n in range(max_n + 1):
                    spec = FamilySpec(n, k, S)
                    oracle = paths.count_by_type_bruteforce(spec, cls, max_n=bound_n, max_k=bound_k)
                    formula = formulas.formula_census(spec, cls)
                    ok &= _compare(report, "oracle-vs-formula", k, S, n, cls.value, oracle, formula)
                cells.append(f"{cls.value}={_status(ok)}")
            report.rows.append(f"k={k} S={_fmt_set(S):<9} n<={max_n}  " + "  ".join(cells))
        for d in sorted({len(S) for S in _families(k, families)}):
            A, B, _ = series.solve_system(k, d, max_n)
            AB = A * B
            S = frozenset(range(k - d + 1, k + 1))  # contains k
            series_ok = lif_ok = True
            for n in range(1, max_n + 1):
                spec = FamilySpec(n, k, S)
                for cls in SizeClass:
                    s = series_class(A, B, AB, spec, cls)
                    got = {lam: s[n][lam] for lam in partitions_up_to(n) if s[n][lam]}
                    expected = dict(formulas.formula_census(spec, cls))
                    series_ok &= _compare(report, "series-vs-formula", k, S, n, cls.value, expected, got)
                for form, s in ((series.HForm.A, A), (series.HForm.B, B), (series.HForm.AB, AB)):
                    lif = series.lagrange_coefficient(form, k, d, n)
                    lif_ok &= _compare(
                        report, "lagrange-vs-series", k, S, n, f"H={form.value}",
                        dict(s[n].items()), dict(lif.items()),
                    )
            report.rows.append(
                f"k={k} d={d}  n<={max_n}  series={_status(series_ok)}  lagrange={_status(lif_ok)}"
            )
    return report
