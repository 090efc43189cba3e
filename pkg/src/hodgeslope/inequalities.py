"""The two Chebyshev sum inequalities and the tower power-sum inequality.

These are the arithmetic backbone of the semistability criterion: the
Chebyshev inequalities bound the degree of a graded subobject by reordered
sums, and the power-sum inequality says the partial tower slopes increase
with the truncation grade.  Everything is evaluated exactly over rationals
and reported with both side values as a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction]


@dataclass(frozen=True)
class SequencePair:
    """Two rational sequences of equal positive length."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        if len(self.a) != len(self.b):
            raise ValueError(f"sequence lengths differ: {len(self.a)} vs {len(self.b)}")
        if not self.a:
            raise ValueError("sequences must be nonempty")


@dataclass(frozen=True)
class InequalityCheck:
    """Outcome of one exact inequality evaluation, lhs <= rhs."""

    holds: bool
    lhs: Fraction
    rhs: Fraction

    def __bool__(self) -> bool:
        return self.holds


def _require_nonincreasing(seq: tuple[Fraction, ...], name: str) -> None:
    for i in range(len(seq) - 1):
        if seq[i] < seq[i + 1]:
            raise ValueError(f"sequence {name} is not nonincreasing at index {i}")


def _require_nondecreasing(seq: tuple[Fraction, ...], name: str) -> None:
    for i in range(len(seq) - 1):
        if seq[i] > seq[i + 1]:
            raise ValueError(f"sequence {name} is not nondecreasing at index {i}")


def chebyshev_upper(p: SequencePair) -> InequalityCheck:
    """For a nonincreasing and b nondecreasing:
    n * sum(a_i b_i) <= sum(a_i) * sum(b_j)."""
    _require_nonincreasing(p.a, "a")
    _require_nondecreasing(p.b, "b")
    n = len(p.a)
    lhs = n * sum(x * y for x, y in zip(p.a, p.b))
    rhs = sum(p.a) * sum(p.b)
    return InequalityCheck(lhs <= rhs, Fraction(lhs), Fraction(rhs))


def chebyshev_lower(p: SequencePair) -> InequalityCheck:
    """For a and b both nondecreasing:
    sum(b_j) * sum(a_i) <= n * sum(a_i b_i)."""
    _require_nondecreasing(p.a, "a")
    _require_nondecreasing(p.b, "b")
    n = len(p.a)
    lhs = sum(p.b) * sum(p.a)
    rhs = n * sum(x * y for x, y in zip(p.a, p.b))
    return InequalityCheck(lhs <= rhs, Fraction(lhs), Fraction(rhs))


def weighted_power_sum(d: int, k: int) -> int:
    """sum over i = 0..k of i * d^(i-1); the i = 0 term is 0 by
    convention, also when d = 1."""
    return sum(i * d ** (i - 1) for i in range(1, k + 1))


def geometric_sum(d: int, k: int) -> int:
    """sum over j = 0..k of d^j."""
    return sum(d**j for j in range(k + 1))


def hodge_sum_inequality(d: int, r: int, n: int) -> InequalityCheck:
    """For d >= 1 and 0 <= r <= n:

    (sum_{i<=r} i d^(i-1)) (sum_{j<=n} d^j)
        <= (sum_{i<=n} i d^(i-1)) (sum_{j<=r} d^j).

    This is exactly the statement that partial tower slopes are monotone
    in the truncation grade.
    """
    if d < 1:
        raise ValueError(f"d must be at least 1, got {d}")
    if r < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    lhs = weighted_power_sum(d, r) * geometric_sum(d, n)
    rhs = weighted_power_sum(d, n) * geometric_sum(d, r)
    return InequalityCheck(lhs <= rhs, Fraction(lhs), Fraction(rhs))


def hodge_sum_sweep(
    d_max: int, n_max: int
) -> list[tuple[int, int, list[tuple[int, int]]]]:
    """Exhaustively evaluate the power-sum inequality for 1 <= d <= d_max
    and 0 <= r <= n <= n_max.  Returns one (d, checked, failures) row per
    d, where failures lists the offending (r, n) pairs (expected empty).
    """
    if d_max < 1 or n_max < 0:
        raise ValueError("need d_max >= 1 and n_max >= 0")
    rows = []
    for d in range(1, d_max + 1):
        checked = 0
        failures: list[tuple[int, int]] = []
        for n in range(n_max + 1):
            for r in range(n + 1):
                checked += 1
                if not hodge_sum_inequality(d, r, n):
                    failures.append((r, n))
        rows.append((d, checked, failures))
    return rows


def make_pair(a: Iterable[Number], b: Iterable[Number]) -> SequencePair:
    """Convenience constructor coercing plain numbers to rationals."""
    return SequencePair(tuple(Fraction(x) for x in a), tuple(Fraction(x) for x in b))
