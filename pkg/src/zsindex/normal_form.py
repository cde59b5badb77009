"""Reduction of length-4 minimal zero-sum sequences to a two-sided shape.

The normal form stores parameters (e, a, b, c) over modulus n with

    e < a <= b < c < n/2   and   e + c = a + b,

and represents the sequence (e, c, n-b, n-a), which sums to 2n and is always
minimal zero-sum.  Normalization either reaches that shape (recording the
multipliers it applied as a trail) or certifies index 1 outright along the
way.  Any certificate emitted here is validated by direct recomputation
before it leaves the module; no derivation is trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .certificates import (
    RULE_ONE_SIDED,
    RULE_SUM_3N,
    RULE_SUM_N,
    Witness,
    certify,
)
from .residues import GroupOrder, factorize, units
from .sequences import Sequence, apply_unit, is_minimal_zero_sum


class TrivialContent(ValueError):
    """reduce_by_content was called on a sequence with content 1."""


class ContentNotOne(ValueError):
    """Normalization requires the content to be divided out first."""


class NotLength4(ValueError):
    """The reduction chain is defined for length-4 sequences only."""


class NotMinimalZeroSum(ValueError):
    """The input is not a minimal zero-sum sequence."""


class StructureViolation(ValueError):
    """The two-terms-per-prime divisibility pattern does not hold."""


class UnbalancedSplit(RuntimeError):
    """No unit transform of the input splits two-and-two around n/2.

    Only possible when a term equals n/2 (even n): that term is fixed by
    every unit, so no transform can clear the fence.  Such inputs have
    neither a normal form nor (when this is raised) an index-1 witness.
    """


@dataclass(frozen=True)
class NormalForm:
    """Parameters (e, a, b, c) of the two-sided shape over a modulus."""

    modulus: GroupOrder
    e: int
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        n = self.modulus.n
        if not (0 < self.e < self.a <= self.b < self.c and 2 * self.c < n):
            raise ValueError(
                f"parameters ({self.e}, {self.a}, {self.b}, {self.c}) violate "
                f"e < a <= b < c < {n}/2"
            )
        if self.e + self.c != self.a + self.b:
            raise ValueError(
                f"e + c = {self.e + self.c} differs from a + b = {self.a + self.b}"
            )

    def represented_terms(self) -> tuple[int, int, int, int]:
        """The sequence this form stands for, already in ascending order."""
        n = self.modulus.n
        return (self.e, self.c, n - self.b, n - self.a)

    def represented(self) -> Sequence:
        return Sequence(self.modulus, self.represented_terms())


@dataclass(frozen=True)
class Trail:
    """Unit multipliers applied during normalization, in application order."""

    multipliers: tuple[int, ...] = ()
    complemented: bool = False

    def replay(self, s: Sequence) -> Sequence:
        out = s
        for m in self.multipliers:
            out = apply_unit(out, m)
        return out

    def composed(self, n: int) -> int:
        """Single unit equivalent to the whole trail, in [1, n-1]."""
        product = 1
        for m in self.multipliers:
            product = product * m % n
        return product

    def as_strings(self) -> tuple[str, ...]:
        out = []
        for m in self.multipliers:
            out.append(f"mul:{m}")
        if self.complemented:
            out = out[:-1] + ["complement"]
        return tuple(out)


@dataclass(frozen=True)
class NormalizationOutcome:
    """Either an index-1 witness or a normal form, plus the transform trail.

    Exactly one of ``witness`` / ``normal_form`` is set.  Replaying the trail
    on the input reproduces the normal form's represented sequence.
    """

    witness: Witness | None
    normal_form: NormalForm | None
    trail: Trail

    def __post_init__(self) -> None:
        if (self.witness is None) == (self.normal_form is None):
            raise ValueError("outcome must hold exactly one of witness/normal form")


def content(s: Sequence) -> int:
    """gcd of n and all terms; 1 whenever some term is coprime to n."""
    u = s.n
    for t in s.terms:
        u = math.gcd(u, t)
    return u


def reduce_by_content(s: Sequence) -> Sequence:
    """Divide the terms and the modulus through by the content u > 1.

    Zero-sum, minimality and the index all survive the division.
    """
    u = content(s)
    if u == 1:
        raise TrivialContent("content is 1; nothing to divide out")
    return Sequence(factorize(s.n // u), tuple(t // u for t in s.terms))


def sum3n_witness(s: Sequence) -> Witness | None:
    """Search all units for a transform summing to 3n; certify the complement.

    When sum of |m*t|_n is 3n, the complement unit n - m reaches sum n
    directly; the returned witness is that complement, validated before
    return.  Returns None when no unit qualifies.
    """
    n = s.n
    terms = s.terms
    target = 3 * n
    for m in units(s.modulus):
        total = sum((m * t - 1) % n + 1 for t in terms)
        if total == target:
            w = certify(s, n - m, RULE_SUM_3N)
            if w is not None:
                return w
    return None


def _one_sided_at(terms: tuple[int, ...], n: int, m: int) -> bool:
    """At most one transformed term in [1, n/2], or at most one in [n/2, n]."""
    low = 0
    high = 0
    for t in terms:
        v = (m * t - 1) % n + 1
        if 2 * v <= n:
            low += 1
        if 2 * v >= n:
            high += 1
    return low <= 1 or high <= 1


def _direct_scan_witness(s: Sequence, rule: str, skip: tuple[int, ...] = ()) -> Witness | None:
    """First unit (ascending) whose transformed sum is exactly n."""
    n = s.n
    terms = s.terms
    for m in units(s.modulus):
        if m in skip:
            continue
        if sum((m * t - 1) % n + 1 for t in terms) == n:
            return certify(s, m, rule)
    return None


def one_sided_witness(s: Sequence) -> Witness | None:
    """Search units for a transform with at most one term on one half.

    A hit only proves index 1 indirectly, so it is converted to a concrete
    certificate: first the hitting unit and its complement are tried, then
    an ascending scan.  Returns None when no unit is one-sided, or when a
    hit exists but no direct certificate does (possible outside the
    conjecture's gcd(n, 6) = 1 scope).
    """
    n = s.n
    terms = s.terms
    hit: int | None = None
    for m in units(s.modulus):
        if _one_sided_at(terms, n, m):
            hit = m
            break
    if hit is None:
        return None
    for candidate in (hit, n - hit):
        w = certify(s, candidate, RULE_ONE_SIDED)
        if w is not None:
            return w
    return _direct_scan_witness(s, RULE_ONE_SIDED, skip=(hit, n - hit))


def _strict_split(terms: tuple[int, ...], n: int) -> tuple[int, int]:
    below = sum(1 for t in terms if 2 * t < n)
    above = sum(1 for t in terms if 2 * t > n)
    return below, above


def _oriented_form(s: Sequence, trail: Trail) -> NormalizationOutcome | None:
    """Build the normal form from a sum-2n sequence with a strict 2-2 split."""
    n = s.n
    below, above = _strict_split(s.terms, n)
    if below != 2 or above != 2:
        return None
    n1, _, _, n4 = s.terms
    # n1 + n4 = n would be a zero-sum pair, ruled out by minimality upstream.
    assert n1 + n4 != n, "zero-sum pair survived the minimality check"
    oriented = s
    if n1 + n4 > n:
        oriented = apply_unit(s, n - 1)
        trail = Trail(trail.multipliers + (n - 1,), complemented=True)
    t1, t2, t3, t4 = oriented.terms
    form = NormalForm(s.modulus, e=t1, a=n - t4, b=n - t3, c=t2)
    return NormalizationOutcome(witness=None, normal_form=form, trail=trail)


def to_normal_form(s: Sequence) -> NormalizationOutcome:
    """Reduce a content-1 minimal zero-sum quadruple to the two-sided shape.

    Cheap certificates are taken when available: sum n is a witness at
    multiplier 1, sum 3n at the complement.  With sum 2n the sequence is
    oriented so two terms sit strictly on each side of n/2 (complementing if
    the outer pair sums beyond n) and the normal form is read off.  When the
    identity orientation is lopsided, one-sided handling tries to convert
    the situation into a direct certificate, then any unit transform with a
    proper split is normalized instead.  Raises UnbalancedSplit when no unit
    transform splits, which can only happen when a term equals n/2.
    """
    if len(s.terms) != 4:
        raise NotLength4(f"expected 4 terms, got {len(s.terms)}")
    if not is_minimal_zero_sum(s):
        raise NotMinimalZeroSum(f"{s.terms} over {s.n} is not minimal zero-sum")
    if content(s) != 1:
        raise ContentNotOne(f"content {content(s)} must be divided out first")
    return _normalize_validated(s)


def _normalize_validated(s: Sequence) -> NormalizationOutcome:
    """to_normal_form body for callers that already hold the preconditions."""
    n = s.n
    total = sum(s.terms)
    if total == n:
        w = certify(s, 1, RULE_SUM_N)
        assert w is not None
        return NormalizationOutcome(witness=w, normal_form=None, trail=Trail())
    if total == 3 * n:
        w = certify(s, n - 1, RULE_SUM_3N)
        assert w is not None  # complement of a 3n sum is exactly n
        return NormalizationOutcome(witness=w, normal_form=None, trail=Trail())
    assert total == 2 * n, "minimal zero-sum quadruple sums to n, 2n or 3n"

    outcome = _oriented_form(s, Trail())
    if outcome is not None:
        return outcome

    # Lopsided identity orientation: at most one term on one strict side, or
    # a term sits exactly on n/2.  Index 1, if true, yields a direct witness.
    w = one_sided_witness(s)
    if w is not None:
        return NormalizationOutcome(witness=w, normal_form=None, trail=Trail())
    for m in units(s.modulus):
        if m == 1:
            continue
        transformed = apply_unit(s, m)
        outcome = _oriented_form(transformed, Trail(multipliers=(m,)))
        if outcome is not None:
            return outcome
    raise UnbalancedSplit(
        f"no unit transform of {s.terms} over {n} splits two-and-two"
    )


@dataclass(frozen=True)
class PrimePowerParams:
    """Minimum prime-power gcds over the two divisibility classes.

    For n with exactly two prime factors and every term sharing a factor
    with n, two terms carry p and the other two carry q.  ``p`` is chosen
    so that p**i0 < q**j0; positions index into the sorted terms.
    """

    p: int
    q: int
    i0: int
    j0: int
    p_positions: tuple[int, int]
    q_positions: tuple[int, int]

    @property
    def p_power(self) -> int:
        return self.p**self.i0

    @property
    def q_power(self) -> int:
        return self.q**self.j0


def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def min_prime_powers(s: Sequence, p: int, q: int) -> PrimePowerParams:
    """Extract i0, j0 and the class assignment from the term gcds.

    Requires n = p^alpha * q^beta, every term sharing a factor with n, and
    exactly two terms divisible by each prime; raises StructureViolation
    otherwise.  The roles of p and q are swapped if needed so that the
    p-side minimum is the smaller prime power.
    """
    n = s.n
    if set(s.modulus.primes) != {p, q} or p == q:
        raise StructureViolation(f"{n} is not of the form {p}^a * {q}^b")
    p_positions: list[int] = []
    q_positions: list[int] = []
    p_gcds: list[int] = []
    q_gcds: list[int] = []
    for i, t in enumerate(s.terms):
        g = math.gcd(t, n)
        if g == 1:
            raise StructureViolation(f"term {t} is coprime to {n}")
        by_p = t % p == 0
        by_q = t % q == 0
        if by_p and by_q:
            raise StructureViolation(f"term {t} is divisible by both {p} and {q}")
        if by_p:
            p_positions.append(i)
            p_gcds.append(g)
        else:
            q_positions.append(i)
            q_gcds.append(g)
    if len(p_positions) != 2 or len(q_positions) != 2:
        raise StructureViolation(
            f"need two terms per prime class, got {len(p_positions)} with {p} "
            f"and {len(q_positions)} with {q}"
        )
    p_min = min(p_gcds)
    q_min = min(q_gcds)
    if p_min > q_min:
        p, q = q, p
        p_min, q_min = q_min, p_min
        p_positions, q_positions = q_positions, p_positions
    return PrimePowerParams(
        p=p,
        q=q,
        i0=_valuation(p_min, p),
        j0=_valuation(q_min, q),
        p_positions=(p_positions[0], p_positions[1]),
        q_positions=(q_positions[0], q_positions[1]),
    )


@dataclass(frozen=True)
class ConstraintReport:
    """Which of the reduced-parameter constraints a normal form satisfies.

    ``floor_b_over_a`` / ``ceil_b_over_a`` are diagnostics only; callers
    compare them against k1 in whichever sense they need.
    """

    modulus_large: bool  # n >= 75 * p^i0
    leading_term_admissible: bool  # e in {p^i0, q^j0, 2*q^j0} and a > 3e
    q_spacing: bool  # a >= 6e whenever e in {q^j0, 2*q^j0}
    floor_b_over_a: int
    ceil_b_over_a: int


def constraint_report(nf: NormalForm, params: PrimePowerParams) -> ConstraintReport:
    """Report the renumbering constraints as booleans plus diagnostics."""
    pk = params.p_power
    qk = params.q_power
    e, a, b = nf.e, nf.a, nf.b
    e_in_set = e in (pk, qk, 2 * qk)
    return ConstraintReport(
        modulus_large=nf.modulus.n >= 75 * pk,
        leading_term_admissible=e_in_set and a > 3 * e,
        q_spacing=(e not in (qk, 2 * qk)) or a >= 6 * e,
        floor_b_over_a=b // a,
        ceil_b_over_a=-(-b // a),
    )
