"""Closed-form counts of lattice paths by type.

All arithmetic is over :class:`fractions.Fraction` and ``int``; every result
is checked to be an integer before it is returned.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable

from .partitions import InvalidInputError, Partition, multiplicity_factor, partitions_up_to
from .paths import FamilySpec, SizeClass, TypeCensus


class InexactDivisionError(ArithmeticError):
    """A formula produced a non-integer; this is always a bug."""


class CountResult(int):
    """An ``int`` tagged with the identifier of the formula that produced it."""

    formula: str

    def __new__(cls, value: int, formula: str) -> CountResult:
        obj = super().__new__(cls, value)
        obj.formula = formula
        return obj

    def __repr__(self) -> str:
        return f"CountResult({int(self)}, {self.formula!r})"


def binom(a: int, b: int) -> int:
    """Binomial coefficient that is 0 outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def falling(n: int, terms: int) -> int:
    """``n (n-1) ... (n-terms+1)``; 1 for ``terms <= 0``."""
    return prod(n - i for i in range(terms))


def _exact(q: Fraction | int, formula: str) -> CountResult:
    q = Fraction(q)
    if q.denominator != 1:
        raise InexactDivisionError(f"{formula} evaluated to non-integer {q}")
    return CountResult(q.numerator, formula)


def _arrangements(top: int, lam: Partition) -> Fraction:
    # C(top, l) * l! / m_lambda
    ell = lam.length
    return Fraction(binom(top, ell) * factorial(ell), multiplicity_factor(lam))


def count_dyck(lam: Partition) -> CountResult:
    n = lam.weight
    return _exact(Fraction(falling(n, lam.length - 1), multiplicity_factor(lam)), "dyck")


def count_large_schroder(n: int, lam: Partition) -> CountResult:
    w = lam.weight
    if not 0 <= w <= n:
        return CountResult(0, "large-schroder")
    q = Fraction(binom(n, w), w + 1) * _arrangements(n + 1, lam)
    return _exact(q, "large-schroder")


def count_small_schroder(n: int, lam: Partition) -> CountResult:
    if n == 0:
        return CountResult(0 if lam else 1, "small-schroder")
    q = Fraction(binom(n - 1, lam.weight - 1), n + 1) * _arrangements(n + 1, lam)
    return _exact(q, "small-schroder")


def count_fuss_catalan(k: int, lam: Partition) -> CountResult:
    kn = k * lam.weight
    ell = lam.length
    if ell > kn + 1:
        return CountResult(0, "fuss-catalan")
    q = Fraction(factorial(kn), multiplicity_factor(lam) * factorial(kn + 1 - ell))
    return _exact(q, "fuss-catalan")


def count_small_fuss_schroder(k: int, n: int, lam: Partition) -> CountResult:
    if n == 0:
        return CountResult(0 if lam else 1, "small-kr")
    q = Fraction(binom(n - 1, lam.weight - 1), k * n + 1) * _arrangements(k * n + 1, lam)
    return _exact(q, "small-kr")


def count_large_fuss_schroder(k: int, n: int, lam: Partition) -> CountResult:
    if n == 0:
        return CountResult(0 if lam else 1, "large-kk")
    w = lam.weight
    lead = binom(n, w + 1) + Fraction(w, k * n + 1) * binom(n + 1, w + 1)
    return _exact(Fraction(1, n) * lead * _arrangements(k * n + 1, lam), "large-kk")


def count_large_diag_fuss_schroder(k: int, n: int, lam: Partition) -> CountResult:
    if n == 0:
        return CountResult(0, "diag-kk")
    q = Fraction(binom(n, lam.weight + 1), n) * _arrangements(k * n, lam)
    return _exact(q, "diag-kk")


def _check_kd(k: int, d: int) -> None:
    if not 1 <= d <= k:
        raise InvalidInputError(f"need 1 <= d <= k, got k={k}, d={d}")


def count_small_kS(k: int, d: int, n: int, lam: Partition) -> CountResult:
    _check_kd(k, d)
    if n == 0:
        return CountResult(0 if lam else 1, "small-kS")
    w = lam.weight
    q = Fraction(w, n * (k * n + 1)) * binom(d * n, n - w) * _arrangements(k * n + 1, lam)
    return _exact(q, "small-kS")


def count_large_kS(k: int, d: int, n: int, lam: Partition) -> CountResult:
    """Large (k, S) paths of type ``lam`` when ``k`` is in ``S``."""
    _check_kd(k, d)
    if n == 0:
        return CountResult(0 if lam else 1, "large-kS")
    w = lam.weight
    lead = binom(d * n, n - 1 - w) + Fraction(w, k * n + 1) * binom(d * n + 1, n - w)
    return _exact(Fraction(1, n) * lead * _arrangements(k * n + 1, lam), "large-kS")


def count_diag_kS(k: int, d: int, n: int, lam: Partition) -> CountResult:
    """Large (k, S) paths of type ``lam`` ending in D, when ``k`` is in ``S``."""
    _check_kd(k, d)
    if n == 0:
        return CountResult(0, "diag-kS")
    q = Fraction(binom(d * n, n - 1 - lam.weight), n) * _arrangements(k * n, lam)
    return _exact(q, "diag-kS")


def count_family(spec: FamilySpec, cls: SizeClass, lam: Partition) -> CountResult:
    """Count paths of ``spec`` in ``cls`` with type ``lam``.

    Without ``k`` in ``S`` no diagonal can reach ``y = kx``: every path is
    small and none ends in D.
    """
    k, d, n = spec.k, spec.d, spec.n
    if lam.weight > n:
        return CountResult(0, "kS")
    if not spec.has_k:
        if cls is SizeClass.DIAG:
            return CountResult(0, "diag-kS")
        return count_small_kS(k, d, n, lam)
    if cls is SizeClass.SMALL:
        return count_small_kS(k, d, n, lam)
    if cls is SizeClass.DIAG:
        return count_diag_kS(k, d, n, lam)
    return count_large_kS(k, d, n, lam)


def formula_census(spec: FamilySpec, cls: SizeClass) -> TypeCensus:
    counts = {lam: int(count_family(spec, cls, lam)) for lam in partitions_up_to(spec.n)}
    return TypeCensus.from_counts(counts)


# Stable identifiers used by the command line.  Each takes (k, d, n, lam).
FORMULAS: dict[str, Callable[[int, int, int, Partition], CountResult]] = {
    "dyck": lambda k, d, n, lam: count_dyck(lam),
    "fuss-catalan": lambda k, d, n, lam: count_fuss_catalan(k, lam),
    "large-schroder": lambda k, d, n, lam: count_large_schroder(n, lam),
    "small-schroder": lambda k, d, n, lam: count_small_schroder(n, lam),
    "small-kr": lambda k, d, n, lam: count_small_fuss_schroder(k, n, lam),
    "large-kk": lambda k, d, n, lam: count_large_fuss_schroder(k, n, lam),
    "diag-kk": lambda k, d, n, lam: count_large_diag_fuss_schroder(k, n, lam),
    "small-kS": count_small_kS,
    "large-kS": count_large_kS,
    "diag-kS": count_diag_kS,
}
