"""Truncated power series in ``x`` whose coefficients are integer polynomials
in ``t_1, t_2, ...``.

A monomial ``t_1^{m_1} t_2^{m_2} ...`` is stored as the partition with ``m_i``
parts equal to ``i``, so multiplying monomials is merging partitions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .partitions import EMPTY, InvalidInputError, Partition, add_part, merge, to_key
from .formulas import InexactDivisionError


class PartitionPolynomial:
    """Finite integer combination of partition monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Partition, int] | Iterable[tuple[Partition, int]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Partition, int] = {}
        for lam, c in items:
            acc[lam] = acc.get(lam, 0) + c
        self._terms = {lam: c for lam, c in acc.items() if c}

    @classmethod
    def constant(cls, c: int) -> PartitionPolynomial:
        return cls({EMPTY: c})

    @classmethod
    def monomial(cls, lam: Partition, c: int = 1) -> PartitionPolynomial:
        return cls({lam: c})

    def __getitem__(self, lam: Partition) -> int:
        return self._terms.get(lam, 0)

    def __iter__(self):
        return iter(sorted(self._terms, key=Partition.sort_key))

    def items(self) -> list[tuple[Partition, int]]:
        return [(lam, self._terms[lam]) for lam in self]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = PartitionPolynomial.constant(other)
        if not isinstance(other, PartitionPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: PartitionPolynomial) -> PartitionPolynomial:
        out = dict(self._terms)
        for lam, c in other._terms.items():
            out[lam] = out.get(lam, 0) + c
        return PartitionPolynomial(out)

    def __neg__(self) -> PartitionPolynomial:
        return PartitionPolynomial({lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other: PartitionPolynomial) -> PartitionPolynomial:
        return self + (-other)

    def __mul__(self, other) -> PartitionPolynomial:
        if isinstance(other, int):
            return PartitionPolynomial({lam: c * other for lam, c in self._terms.items()})
        out: dict[Partition, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = merge(a, b)
                out[key] = out.get(key, 0) + ca * cb
        return PartitionPolynomial(out)

    __rmul__ = __mul__

    def times_t(self, i: int) -> PartitionPolynomial:
        """Multiply by the variable ``t_i``."""
        return PartitionPolynomial({add_part(lam, i): c for lam, c in self._terms.items()})

    def exact_div(self, n: int) -> PartitionPolynomial:
        out = {}
        for lam, c in self._terms.items():
            q, r = divmod(c, n)
            if r:
                raise InexactDivisionError(f"coefficient {c} of {to_key(lam)} not divisible by {n}")
            out[lam] = q
        return PartitionPolynomial(out)

    def to_json(self) -> dict[str, str]:
        return {to_key(lam): str(c) for lam, c in self.items()}

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*T{to_key(lam)}" for lam, c in self.items())


_ZERO = PartitionPolynomial()
_ONE = PartitionPolynomial.constant(1)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known through ``x^N``; ``coeffs[i]`` is the ``x^i`` coefficient."""

    N: int
    coeffs: tuple[PartitionPolynomial, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)[: self.N + 1]
        coeffs += (_ZERO,) * (self.N + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, N: int) -> TruncatedSeries:
        return cls(N, ())

    @classmethod
    def one(cls, N: int) -> TruncatedSeries:
        return cls(N, (_ONE,))

    @classmethod
    def x(cls, N: int) -> TruncatedSeries:
        return cls(N, (_ZERO, _ONE))

    @classmethod
    def from_ints(cls, N: int, values: Iterable[int]) -> TruncatedSeries:
        return cls(N, tuple(PartitionPolynomial.constant(v) for v in values))

    def __getitem__(self, i: int) -> PartitionPolynomial:
        return self.coeffs[i]

    def _check(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise InvalidInputError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if other.N != self.N:
            raise InvalidInputError(f"degree bounds differ: {self.N} vs {other.N}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries(self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, (int, PartitionPolynomial)):
            return TruncatedSeries(self.N, tuple(c * other for c in self.coeffs))
        self._check(other)
        out = []
        for n in range(self.N + 1):
            acc = _ZERO
            for i in range(n + 1):
                a, b = self.coeffs[i], other.coeffs[n - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return TruncatedSeries(self.N, tuple(out))

    def __pow__(self, e: int) -> TruncatedSeries:
        if e < 0:
            raise InvalidInputError("negative powers are not supported")
        result = TruncatedSeries.one(self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.N, self.coeffs))

    def derivative(self) -> TruncatedSeries:
        """d/dx; the result is known only through ``x^(N-1)``."""
        if self.N == 0:
            raise InvalidInputError("derivative of a degree-0 truncation is unknown")
        return TruncatedSeries(self.N - 1, tuple(self.coeffs[i] * i for i in range(1, self.N + 1)))

    def truncate(self, N: int) -> TruncatedSeries:
        if N > self.N:
            raise InvalidInputError(f"cannot extend a series known through x^{self.N} to x^{N}")
        return TruncatedSeries(N, self.coeffs[: N + 1])

    def to_json(self) -> list[dict[str, str]]:
        return [c.to_json() for c in self.coeffs]


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    return a ** e


def theta(N: int) -> TruncatedSeries:
    """``t_1 x + t_2 x^2 + ... + t_N x^N``."""
    return TruncatedSeries(N, (_ZERO,) + tuple(PartitionPolynomial.monomial(Partition((i,))) for i in range(1, N + 1)))


def compose_theta(c: TruncatedSeries) -> TruncatedSeries:
    """``1 + sum_i t_i c^i``, i.e. ``1 + Theta(c)``."""
    if c[0]:
        raise InvalidInputError("composition needs a series with zero constant term")
    N = c.N
    out = TruncatedSeries.one(N)
    power = TruncatedSeries.one(N)
    # c^i vanishes below x^i, so parts above N never reach degree <= N
    for i in range(1, N + 1):
        power = power * c
        out = out + TruncatedSeries(N, tuple(p.times_t(i) for p in power.coeffs))
    return out


def solve_system(k: int, d: int, N: int) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """Fixed point of ``A = 1 + Theta(C)``, ``B = 1 + C``, ``C = x A^k B^d``.

    Each round fixes at least one more coefficient of ``C``, so ``N + 1``
    rounds from ``A = B = 1, C = 0`` reach the solution through ``x^N``.
    """
    if k < 1 or not 1 <= d <= k:
        raise InvalidInputError(f"need 1 <= d <= k, got k={k}, d={d}")
    if N < 0:
        raise InvalidInputError("N must be nonnegative")
    A = B = TruncatedSeries.one(N)
    C = TruncatedSeries.zero(N)
    x = TruncatedSeries.x(N)
    for _ in range(N + 1):
        C = x * (A ** k) * (B ** d)
        A = compose_theta(C)
        B = TruncatedSeries.one(N) + C
    return A, B, C


class HForm(enum.Enum):
    A = "A"  # H = 1 + Theta
    B = "B"  # H = 1 + x
    AB = "AB"  # H = (1 + Theta)(1 + x)


def h_series(form: HForm, N: int) -> TruncatedSeries:
    one_theta = TruncatedSeries.one(N) + theta(N)
    one_x = TruncatedSeries.one(N) + TruncatedSeries.x(N)
    if form is HForm.A:
        return one_theta
    if form is HForm.B:
        return one_x
    return one_theta * one_x


def lagrange_coefficient(form: HForm | str, k: int, d: int, n: int) -> PartitionPolynomial:
    """``[x^n] H(C)`` computed as ``(1/n) [x^(n-1)] H'(x) G(x)^n`` with ``G = (1+Theta)^k (1+x)^d``."""
    form = HForm(form)
    if n < 1:
        raise InvalidInputError("Lagrange inversion needs n >= 1")
    if not 1 <= d <= k:
        raise InvalidInputError(f"need 1 <= d <= k, got k={k}, d={d}")
    M = n - 1
    g = (TruncatedSeries.one(M) + theta(M)) ** k * (TruncatedSeries.one(M) + TruncatedSeries.x(M)) ** d
    h_prime = h_series(form, n).derivative()
    return (h_prime * g ** n)[M].exact_div(n)


def series_coefficient(s: TruncatedSeries, n: int, lam: Partition) -> int:
    if n < 0 or n > s.N:
        raise IndexError(f"degree {n} outside the known range 0..{s.N}")
    return s[n][lam]


def which_series(k: int, d: int, N: int, which: str) -> TruncatedSeries:
    A, B, _ = solve_system(k, d, N)
    if which == "A":
        return A
    if which == "B":
        return B
    if which == "AB":
        return A * B
    raise InvalidInputError(f"unknown series {which!r}; expected A, B or AB")
