"""Zero-sum predicates and the exact index of sequences over Z_n.

A sequence is an unordered multiset of residues in [1, n].  Its index is the
minimum, over all units m of Z_n, of (sum of |m*t|_n over the terms) / n; the
minimum is an integer exactly when the sequence is zero-sum.  A unit m whose
transformed sum equals n certifies index 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .residues import GroupOrder, NotAUnit, factorize, reduce_value, units


@dataclass(frozen=True)
class Sequence:
    """A multiset of k >= 1 residues in [1, n], stored sorted ascending."""

    modulus: GroupOrder
    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.terms))
        object.__setattr__(self, "terms", ordered)
        if len(ordered) < 1:
            raise ValueError("a sequence needs at least one term")
        n = self.modulus.n
        for t in ordered:
            if not 1 <= t <= n:
                raise ValueError(f"term {t} outside [1, {n}]")

    @classmethod
    def over(cls, n: int, terms: Iterable[int]) -> "Sequence":
        """Convenience constructor that factors the modulus itself."""
        return cls(factorize(n), tuple(terms))

    @property
    def n(self) -> int:
        return self.modulus.n

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class IndexValue:
    """The minimized transformed-term sum, as an exact fraction over n.

    ``numerator`` is the (unreduced) sum achieved by ``argmin_unit``; the
    index itself is numerator/denominator, an integer iff the sequence is
    zero-sum.  Ties between units are broken toward the smallest unit.
    """

    numerator: int
    denominator: int
    argmin_unit: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def is_integral(self) -> bool:
        return self.numerator % self.denominator == 0

    def as_integer(self) -> int:
        if not self.is_integral():
            raise ValueError(f"index {self.value} is not an integer")
        return self.numerator // self.denominator


def is_zero_sum(s: Sequence) -> bool:
    """True iff the terms sum to 0 modulo n."""
    return sum(s.terms) % s.n == 0


def is_minimal_zero_sum(s: Sequence) -> bool:
    """Zero-sum with no proper nonempty sub-multiset summing to zero.

    Checks all 2^k - 2 proper nonempty subsets directly; k stays small in
    this problem domain, so no length-specific shortcut is taken here.
    """
    if not is_zero_sum(s):
        return False
    n = s.n
    terms = s.terms
    k = len(terms)
    for mask in range(1, (1 << k) - 1):
        subtotal = 0
        for i in range(k):
            if mask >> i & 1:
                subtotal += terms[i]
        if subtotal % n == 0:
            return False
    return True


def apply_unit(s: Sequence, m: int) -> Sequence:
    """Multiply every term by the unit m and re-sort.

    Preserves zero-sum and minimality; raises NotAUnit when gcd(m, n) > 1.
    """
    n = s.n
    if math.gcd(m, n) != 1:
        raise NotAUnit(f"{m} is not a unit modulo {n}")
    return Sequence(s.modulus, tuple(reduce_value(m * t, n) for t in s.terms))


def norm_under(s: Sequence, m: int) -> Fraction:
    """Exact value of (sum of |m*t|_n over terms) / n, never rounded."""
    n = s.n
    if math.gcd(m, n) != 1:
        raise NotAUnit(f"{m} is not a unit modulo {n}")
    total = sum((m * t - 1) % n + 1 for t in s.terms)
    return Fraction(total, n)


def sequence_index(s: Sequence) -> IndexValue:
    """ind(S): minimize the transformed-term sum over all units of Z_n.

    Scans units ascending, so the recorded argmin is the smallest unit
    achieving the minimum.
    """
    n = s.n
    terms = s.terms
    best_sum: int | None = None
    best_m = 1
    for m in units(s.modulus):
        total = sum((m * t - 1) % n + 1 for t in terms)
        if best_sum is None or total < best_sum:
            best_sum = total
            best_m = m
    assert best_sum is not None
    return IndexValue(numerator=best_sum, denominator=n, argmin_unit=best_m)
