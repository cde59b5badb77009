"""Exact modular arithmetic on Z_n with residues represented in [1, n].

Every value here is an exact integer; the representative of x modulo n is
the unique member of [1, n] congruent to x, so n itself stands for the zero
element of the group.  All functions are pure and all value types immutable,
so everything is safe to share across threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator


class InvalidModulus(ValueError):
    """A modulus smaller than 2 (or a malformed factorization) was supplied."""


class NotAUnit(ValueError):
    """A multiplier shares a factor with the modulus."""


@dataclass(frozen=True)
class GroupOrder:
    """The order n of a cyclic group together with its prime factorization.

    ``factors`` is a tuple of (prime, exponent) pairs with strictly ascending
    primes, exponents >= 1, and product exactly ``n``.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {self.n}")
        product = 1
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous or prime < 2 or exponent < 1:
                raise InvalidModulus(f"malformed factorization {self.factors!r}")
            product *= prime**exponent
            previous = prime
        if product != self.n:
            raise InvalidModulus(
                f"factorization {self.factors!r} does not multiply to {self.n}"
            )

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def totient(self) -> int:
        """Number of units of Z_n, read off the factorization."""
        phi = 1
        for p, alpha in self.factors:
            phi *= (p - 1) * p ** (alpha - 1)
        return phi


@dataclass(frozen=True)
class Residue:
    """An element of Z_n stored as its representative in [1, n]."""

    value: int
    modulus: GroupOrder

    def __post_init__(self) -> None:
        if not 1 <= self.value <= self.modulus.n:
            raise ValueError(
                f"residue {self.value} outside [1, {self.modulus.n}]"
            )

    def __int__(self) -> int:
        return self.value

    def is_zero(self) -> bool:
        return self.value == self.modulus.n


def factorize(n: int) -> GroupOrder:
    """Factor n by trial division.  Intended for desk-scale moduli."""
    if n < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {n}")
    factors: list[tuple[int, int]] = []
    remaining = n
    d = 2
    while d * d <= remaining:
        if remaining % d == 0:
            exponent = 0
            while remaining % d == 0:
                remaining //= d
                exponent += 1
            factors.append((d, exponent))
        d += 1 if d == 2 else 2
    if remaining > 1:
        factors.append((remaining, 1))
    return GroupOrder(n, tuple(factors))


def reduce_value(x: int, n: int) -> int:
    """The representative of x modulo n in the window [1, n]."""
    return (x - 1) % n + 1


def reduce_mod(x: int, n: GroupOrder) -> Residue:
    """Reduce any integer (negatives included) into the [1, n] window."""
    return Residue(reduce_value(x, n.n), n)


def units(n: GroupOrder) -> Iterator[int]:
    """Yield the units of Z_n in ascending order (gcd filter over [1, n])."""
    modulus = n.n
    for m in range(1, modulus + 1):
        if math.gcd(m, modulus) == 1:
            yield m


def mod_inverse(m: int, n: GroupOrder) -> int:
    """The v in [1, n] with m*v = 1 (mod n).

    Raises NotAUnit when gcd(m, n) > 1.
    """
    modulus = n.n
    if math.gcd(m, modulus) != 1:
        raise NotAUnit(f"{m} is not a unit modulo {modulus}")
    return reduce_value(pow(m, -1, modulus), modulus)
