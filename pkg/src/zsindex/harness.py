"""Whole-space verification: enumeration, orbits, sweeps, checkpoints.

The sequence space of one modulus is partitioned into blocks by leading
term, so blocks can run on parallel workers and completed blocks can be
checkpointed.  Block results merge by plain counter addition and sorted
list union, so the final report is independent of worker scheduling.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence as SequenceABC

from .certificates import HighIndexEvidence, Witness, verify_witness
from .residues import GroupOrder, reduce_value
from .sequences import Sequence, sequence_index
from .witness import find_witness

HIGH_INDEX_KEY = "HIGH_INDEX"


def _units_list(n: int) -> tuple[int, ...]:
    return tuple(m for m in range(1, n) if math.gcd(m, n) == 1)


def _minimal_quadruples(n: int, leading: SequenceABC[int]) -> Iterator[tuple[int, int, int, int]]:
    """Sorted minimal zero-sum quadruples over [1, n-1], leading term fixed.

    For zero-sum quadruples with no zero term, minimality is exactly the
    absence of a pair summing to n (singletons are nonzero by range and
    triples are complements of singletons); the six pair checks are inlined.
    """
    for t1 in leading:
        for t2 in range(t1, n):
            if t1 + t2 == n:
                continue
            base = t1 + t2
            for t3 in range(t2, n):
                if t1 + t3 == n or t2 + t3 == n:
                    continue
                t4 = -(base + t3) % n
                if t4 < t3:  # covers t4 == 0 as well
                    continue
                if t1 + t4 == n or t2 + t4 == n or t3 + t4 == n:
                    continue
                yield (t1, t2, t3, t4)


def _minimal_tuples_generic(n: int, k: int, leading: SequenceABC[int]) -> Iterator[tuple[int, ...]]:
    """Sorted minimal zero-sum k-tuples, by DFS with multiple-of-n pruning."""

    def _is_minimal(terms: tuple[int, ...]) -> bool:
        for mask in range(1, (1 << k) - 1):
            subtotal = 0
            for i in range(k):
                if mask >> i & 1:
                    subtotal += terms[i]
            if subtotal % n == 0:
                return False
        return True

    def _extend(prefix: list[int], partial: int) -> Iterator[tuple[int, ...]]:
        remaining = k - len(prefix)
        low = prefix[-1]
        if remaining == 1:
            t = -partial % n
            if t == 0 or t < low:
                return
            candidate = tuple(prefix) + (t,)
            if _is_minimal(candidate):
                yield candidate
            return
        lo = partial + remaining * low
        hi = partial + remaining * (n - 1)
        if hi // n < -(-lo // n):  # no multiple of n is reachable
            return
        for t in range(low, n):
            prefix.append(t)
            yield from _extend(prefix, partial + t)
            prefix.pop()

    if k == 1:
        return  # the only zero-sum singleton is the zero element, excluded
    for t1 in leading:
        yield from _extend([t1], t1)


def _minimal_tuples(n: int, k: int, leading: SequenceABC[int] | None = None) -> Iterator[tuple[int, ...]]:
    if leading is None:
        leading = range(1, n)
    if k == 4:
        return _minimal_quadruples(n, leading)
    return _minimal_tuples_generic(n, k, leading)


def enumerate_minimal(n: GroupOrder, k: int = 4) -> Iterator[Sequence]:
    """Yield every minimal zero-sum length-k sequence over Z_n.

    Terms range over [1, n-1]: a sequence of length >= 2 containing the zero
    element is never minimal, and the length-1 zero sequence is trivial.
    Output is deterministic lexicographic order of the sorted term tuples.
    """
    for terms in _minimal_tuples(n.n, k):
        yield Sequence(n, terms)


def _canonical_terms(terms: tuple[int, ...], n: int, units: tuple[int, ...]) -> tuple[int, ...]:
    best = terms
    for m in units:
        if m == 1:
            continue
        candidate = tuple(sorted(reduce_value(m * t, n) for t in terms))
        if candidate < best:
            best = candidate
    return best


def orbit_canonical(s: Sequence) -> Sequence:
    """Lexicographically smallest sorted sequence in the unit orbit of s."""
    best = _canonical_terms(s.terms, s.n, _units_list(s.n))
    return Sequence(s.modulus, best)


def _min_transform_sum(terms: tuple[int, ...], n: int, units: tuple[int, ...]) -> tuple[int, int]:
    """Exhaustive (min transformed sum, smallest argmin unit)."""
    best = 0
    best_m = 1
    for m in units:
        total = sum((m * t - 1) % n + 1 for t in terms)
        if best == 0 or total < best:
            best = total
            best_m = m
    return best, best_m


@dataclass
class BlockResult:
    """Tallies for one leading-term block; merging is plain addition."""

    n1: int
    sequences: int
    orbit_reps: int
    histogram: dict[str, int]
    high_index: list[tuple[tuple[int, ...], int]]


def _scan_block_impl(n: int, k: int, n1: int, orbits: bool) -> BlockResult:
    """Run the witness engine over one leading-term block.

    Every witness is rechecked with the independent verifier; every piece of
    high-index evidence is cross-checked against the exhaustive index.  A
    failure of either check is a soundness bug and raises immediately.
    """
    group = _group_cache(n)
    units = _units_cache(n)
    histogram: dict[str, int] = {}
    high: list[tuple[tuple[int, ...], int]] = []
    sequences = 0
    reps = 0
    for terms in _minimal_tuples(n, k, leading=(n1,)):
        sequences += 1
        if orbits and _canonical_terms(terms, n, units) != terms:
            continue
        reps += 1
        seq = Sequence(group, terms)
        if k == 4:
            result: Witness | HighIndexEvidence = find_witness(seq)
        else:
            min_sum, argmin = _min_transform_sum(terms, n, units)
            if min_sum == n:
                result = Witness(m=argmin, achieved_sum=min_sum, rule="EXHAUSTIVE")
            else:
                result = HighIndexEvidence(
                    index=min_sum // n, argmin_unit=argmin, min_sum=min_sum
                )
        if isinstance(result, Witness):
            if not verify_witness(seq, result):
                raise RuntimeError(f"unsound witness {result} for {terms} over {n}")
            key = result.label
        else:
            check = sequence_index(seq)
            if check.numerator != result.min_sum or check.argmin_unit != result.argmin_unit:
                raise RuntimeError(
                    f"evidence mismatch for {terms} over {n}: "
                    f"{result} vs exhaustive {check}"
                )
            key = HIGH_INDEX_KEY
            high.append((terms, result.index))
        histogram[key] = histogram.get(key, 0) + 1
    return BlockResult(
        n1=n1, sequences=sequences, orbit_reps=reps, histogram=histogram, high_index=high
    )


_GROUP_CACHE: dict[int, GroupOrder] = {}
_UNITS_CACHE: dict[int, tuple[int, ...]] = {}


def _group_cache(n: int) -> GroupOrder:
    group = _GROUP_CACHE.get(n)
    if group is None:
        from .residues import factorize

        group = factorize(n)
        _GROUP_CACHE[n] = group
    return group


def _units_cache(n: int) -> tuple[int, ...]:
    units = _UNITS_CACHE.get(n)
    if units is None:
        units = _units_list(n)
        _UNITS_CACHE[n] = units
    return units


def _scan_block_task(args: tuple[int, int, int, bool]) -> BlockResult:
    return _scan_block_impl(*args)


@dataclass
class VerifyOptions:
    """Knobs for a verification sweep over one modulus."""

    k: int = 4
    orbits: bool = False
    jobs: int = 1
    checkpoint_path: str | os.PathLike[str] | None = None
    max_blocks: int | None = None  # stop after this many new blocks (complete=False)


@dataclass
class VerificationReport:
    """Aggregated sweep results for one modulus."""

    n: int
    k: int
    gcd6_class: int
    orbits: bool
    sequences_total: int
    orbits_total: int
    rule_histogram: dict[str, int]
    high_index: tuple[tuple[tuple[int, ...], int], ...]
    elapsed: float
    complete: bool

    def conjecture_applicable(self) -> bool:
        return self.gcd6_class == 1

    def conjecture_violated(self) -> bool:
        """High-index findings where the conjecture promised none."""
        return self.conjecture_applicable() and len(self.high_index) > 0


class Checkpoint:
    """Append-only block-completion log with a sidecar tally store.

    The marker file holds one ``n k n1`` line per completed block, fsynced
    on completion.  The sidecar JSONL file (same path + ``.blocks``) carries
    each block's tallies so a resumed run reproduces the uninterrupted
    report exactly; its records also carry the orbits flag, so switching
    modes never reuses stale blocks.
    """

    def __init__(self, path: str | os.PathLike[str]):
        self.path = Path(path)
        self.data_path = self.path.with_name(self.path.name + ".blocks")

    def load(self, n: int, k: int, orbits: bool) -> dict[int, BlockResult]:
        done: dict[int, BlockResult] = {}
        if not self.data_path.exists():
            return done
        with open(self.data_path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if rec["n"] != n or rec["k"] != k or rec["orbits"] != orbits:
                    continue
                done[rec["n1"]] = BlockResult(
                    n1=rec["n1"],
                    sequences=rec["sequences"],
                    orbit_reps=rec["orbit_reps"],
                    histogram=dict(rec["histogram"]),
                    high_index=[
                        (tuple(terms), index) for terms, index in rec["high_index"]
                    ],
                )
        return done

    def record(self, n: int, k: int, orbits: bool, block: BlockResult) -> None:
        payload = {
            "n": n,
            "k": k,
            "orbits": orbits,
            "n1": block.n1,
            "sequences": block.sequences,
            "orbit_reps": block.orbit_reps,
            "histogram": block.histogram,
            "high_index": [[list(terms), index] for terms, index in block.high_index],
        }
        with open(self.data_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(f"{n} {k} {block.n1}\n")
            fh.flush()
            os.fsync(fh.fileno())


def verify_conjecture(n: GroupOrder, options: VerifyOptions | None = None) -> VerificationReport:
    """Sweep every minimal zero-sum length-k sequence over Z_n.

    Witnesses are rechecked independently and high-index evidence is
    cross-checked against the exhaustive index, so a returned report is
    sound by construction.  ``complete`` is False when the run was
    interrupted or block-limited; a checkpoint makes such runs resumable.
    """
    opts = options or VerifyOptions()
    start = time.perf_counter()
    modulus = n.n
    all_blocks = list(range(1, modulus))
    checkpoint = Checkpoint(opts.checkpoint_path) if opts.checkpoint_path else None
    results: dict[int, BlockResult] = (
        checkpoint.load(modulus, opts.k, opts.orbits) if checkpoint else {}
    )
    pending = [b for b in all_blocks if b not in results]
    if opts.max_blocks is not None:
        pending = pending[: opts.max_blocks]
    interrupted = False
    try:
        if opts.jobs > 1 and len(pending) > 1:
            tasks = [(modulus, opts.k, b, opts.orbits) for b in pending]
            chunk = max(1, len(tasks) // (opts.jobs * 8))
            with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
                for block in pool.map(_scan_block_task, tasks, chunksize=chunk):
                    results[block.n1] = block
                    if checkpoint:
                        checkpoint.record(modulus, opts.k, opts.orbits, block)
        else:
            for b in pending:
                block = _scan_block_impl(modulus, opts.k, b, opts.orbits)
                results[block.n1] = block
                if checkpoint:
                    checkpoint.record(modulus, opts.k, opts.orbits, block)
    except KeyboardInterrupt:
        interrupted = True
    complete = not interrupted and len(results) == len(all_blocks)
    histogram: dict[str, int] = {}
    high: list[tuple[tuple[int, ...], int]] = []
    sequences_total = 0
    orbit_total = 0
    for n1 in sorted(results):
        block = results[n1]
        sequences_total += block.sequences
        orbit_total += block.orbit_reps
        for key, count in block.histogram.items():
            histogram[key] = histogram.get(key, 0) + count
        high.extend(block.high_index)
    high.sort()
    return VerificationReport(
        n=modulus,
        k=opts.k,
        gcd6_class=math.gcd(modulus, 6),
        orbits=opts.orbits,
        sequences_total=sequences_total,
        orbits_total=orbit_total if opts.orbits else 0,
        rule_histogram=histogram,
        high_index=tuple(high),
        elapsed=time.perf_counter() - start,
        complete=complete,
    )


def search_high_index(
    n: GroupOrder, k: int = 4, orbits: bool = False
) -> list[tuple[Sequence, int]]:
    """All minimal zero-sum length-k sequences with index >= 2, with indices.

    With ``orbits=True`` only the lexicographically smallest representative
    of each unit orbit is reported (the index is constant on orbits).
    """
    modulus = n.n
    units = _units_cache(modulus)
    findings: list[tuple[tuple[int, ...], int]] = []
    for terms in _minimal_tuples(modulus, k):
        min_sum, _ = _min_transform_sum(terms, modulus, units)
        if min_sum > modulus:
            findings.append((terms, min_sum // modulus))
    if orbits:
        by_rep: dict[tuple[int, ...], int] = {}
        for terms, index in findings:
            rep = _canonical_terms(terms, modulus, units)
            by_rep[rep] = index
        findings = sorted(by_rep.items())
    return [(Sequence(n, terms), index) for terms, index in sorted(findings)]
