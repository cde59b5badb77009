"""Command-line front end with JSONL and CSV reporting.

Exit codes: 0 success (for verify over gcd(n,6)=1 moduli: no high-index
findings), 1 a high-index sequence was found where the conjecture predicted
none, 2 invalid input, 3 interrupted (checkpoint written).  All outputs are
deterministic: lists are sorted and timestamps appear only in elapsed
fields.  Configuration is flags only; no environment variables are read.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable, Iterable, TextIO

from .certificates import HighIndexEvidence, Witness
from .harness import (
    VerificationReport,
    VerifyOptions,
    enumerate_minimal,
    orbit_canonical,
    search_high_index,
    verify_conjecture,
)
from .normal_form import (
    ContentNotOne,
    NotLength4,
    NotMinimalZeroSum,
    UnbalancedSplit,
    content,
    reduce_by_content,
    to_normal_form,
)
from .residues import InvalidModulus, factorize
from .sequences import Sequence, is_minimal_zero_sum, is_zero_sum, sequence_index
from .witness import compute_k1, compute_l, find_witness

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 3

VERIFY_FIELDS = (
    "n",
    "k",
    "orbits",
    "sequences_total",
    "orbits_total",
    "rule_histogram",
    "high_index",
    "elapsed_ms",
    "complete",
)
CSV_HEADER = "n,k,orbits,sequences_total,orbits_total,high_index_count,complete"


class UsageError(ValueError):
    """Bad command-line input; reported on stderr with exit code 2."""


@dataclass
class RunConfig:
    """Parsed and validated invocation.

    ``moduli`` is the resolved modulus list (one entry for --n, the filtered
    range for --n-range).  ``terms`` follows the [1, n] convention with n
    itself denoting the zero element.
    """

    command: str
    moduli: list[int]
    terms: list[int] | None
    k: int = 4
    orbits: bool = False
    jobs: int = 1
    report_path: str | None = None
    checkpoint_path: str | None = None
    format: str = "jsonl"

    def __post_init__(self) -> None:
        if not self.moduli and self.command in ("index", "minimal", "enumerate",
                                                "witness", "reduce", "search"):
            raise UsageError("--n is required")
        for n in self.moduli:
            if n < 2:
                raise UsageError(f"modulus must be >= 2, got {n}")
        if self.jobs < 1:
            raise UsageError("jobs must be >= 1")
        if self.k < 1:
            raise UsageError("k must be >= 1")
        if self.terms is not None:
            n = self.moduli[0]
            for t in self.terms:
                if not 1 <= t <= n:
                    raise UsageError(
                        f"term {t} outside [1, {n}] (use {n} for the zero element)"
                    )

    def sequence(self) -> Sequence:
        if self.terms is None:
            raise UsageError("--terms is required for this command")
        return Sequence(factorize(self.moduli[0]), tuple(self.terms))


def verify_record(report: VerificationReport) -> dict:
    """The JSONL record for one verified modulus (fixed field set)."""
    return {
        "n": report.n,
        "k": report.k,
        "orbits": report.orbits,
        "sequences_total": report.sequences_total,
        "orbits_total": report.orbits_total,
        "rule_histogram": dict(sorted(report.rule_histogram.items())),
        "high_index": [
            {"terms": list(terms), "index": index}
            for terms, index in report.high_index
        ],
        "elapsed_ms": int(report.elapsed * 1000),
        "complete": report.complete,
    }


def verify_csv_row(report: VerificationReport) -> list:
    """CSV summary row; shared fields agree with the JSONL record."""
    return [
        report.n,
        report.k,
        report.orbits,
        report.sequences_total,
        report.orbits_total,
        len(report.high_index),
        report.complete,
    ]


def witness_record(s: Sequence, result: Witness | HighIndexEvidence) -> dict:
    """The JSONL record for one witness query (fixed field set)."""
    if isinstance(result, Witness):
        return {
            "n": s.n,
            "terms": list(s.terms),
            "index": 1,
            "witness_m": result.m,
            "rule": result.label,
            "trail": list(result.trail),
        }
    return {
        "n": s.n,
        "terms": list(s.terms),
        "index": result.index,
        "witness_m": None,
        "rule": None,
        "trail": [],
    }


def _write_jsonl(path: str, records: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")


def _write_csv(path: str, reports: Iterable[VerificationReport]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER.split(","))
        for report in reports:
            writer.writerow(verify_csv_row(report))


def _parse_terms(raw: str) -> list[int]:
    try:
        values = [int(part) for part in raw.split(",") if part != ""]
    except ValueError as exc:
        raise UsageError(f"terms must be comma-separated integers: {raw!r}") from exc
    if not values:
        raise UsageError("at least one term is required")
    return values


def _resolve_moduli(args: argparse.Namespace) -> list[int]:
    n = getattr(args, "n", None)
    n_range = getattr(args, "n_range", None)
    if n is not None and n_range:
        raise UsageError("give either --n or --n-range, not both")
    if n is not None:
        return [n]
    if n_range:
        try:
            lo_s, hi_s = n_range.split(":")
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise UsageError(f"range must look like LO:HI, got {n_range!r}") from exc
        if lo < 2 or hi < lo:
            raise UsageError(f"bad range {n_range!r}")
        moduli = list(range(lo, hi + 1))
        if not getattr(args, "all_moduli", False):
            coprime_to = getattr(args, "coprime_to", 6)
            moduli = [m for m in moduli if math.gcd(m, coprime_to) == 1]
        return moduli
    return []


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    raw_terms = getattr(args, "terms", None)
    return RunConfig(
        command=args.command,
        moduli=_resolve_moduli(args),
        terms=_parse_terms(raw_terms) if raw_terms else None,
        k=getattr(args, "k", 4),
        orbits=getattr(args, "orbits", False),
        jobs=getattr(args, "jobs", 1),
        report_path=getattr(args, "report_path", None),
        checkpoint_path=getattr(args, "checkpoint_path", None),
        format=getattr(args, "format", "jsonl"),
    )


def _cmd_index(config: RunConfig, out: TextIO) -> int:
    result = sequence_index(config.sequence())
    value = result.value
    shown = str(value.numerator) if value.denominator == 1 else str(value)
    out.write(f"index {shown} argmin {result.argmin_unit}\n")
    return EXIT_OK


def _cmd_minimal(config: RunConfig, out: TextIO) -> int:
    s = config.sequence()
    out.write(
        f"zero_sum {str(is_zero_sum(s)).lower()} "
        f"minimal {str(is_minimal_zero_sum(s)).lower()}\n"
    )
    return EXIT_OK


def _cmd_enumerate(config: RunConfig, out: TextIO) -> int:
    group = factorize(config.moduli[0])
    count = 0
    for seq in enumerate_minimal(group, config.k):
        if config.orbits and orbit_canonical(seq).terms != seq.terms:
            continue
        out.write(",".join(str(t) for t in seq.terms) + "\n")
        count += 1
    out.write(f"total {count}\n")
    return EXIT_OK


def _cmd_witness(config: RunConfig, out: TextIO) -> int:
    s = config.sequence()
    try:
        result = find_witness(s)
    except (NotLength4, NotMinimalZeroSum) as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(result, Witness):
        out.write(
            f"index 1 witness {result.m} rule {result.label} "
            f"sum {result.achieved_sum}\n"
        )
    else:
        out.write(
            f"index {result.index} high-index argmin {result.argmin_unit} "
            f"min_sum {result.min_sum}\n"
        )
    if config.report_path:
        _write_jsonl(config.report_path, [witness_record(s, result)])
    return EXIT_OK


def _cmd_reduce(config: RunConfig, out: TextIO) -> int:
    s = config.sequence()
    u = content(s)
    if u > 1:
        reduced = reduce_by_content(s)
        out.write(
            f"content {u} reduced {','.join(map(str, reduced.terms))} "
            f"over {reduced.n}\n"
        )
        s = reduced
    else:
        out.write("content 1\n")
    try:
        outcome = to_normal_form(s)
    except (NotLength4, NotMinimalZeroSum, ContentNotOne) as exc:
        raise UsageError(str(exc)) from exc
    except UnbalancedSplit as exc:
        out.write(f"no normal form: {exc}\n")
        return EXIT_OK
    if outcome.witness is not None:
        w = outcome.witness
        out.write(f"witness {w.m} rule {w.label} sum {w.achieved_sum}\n")
        return EXIT_OK
    nf = outcome.normal_form
    assert nf is not None
    trail = ",".join(outcome.trail.as_strings()) or "identity"
    out.write(
        f"normal form e={nf.e} a={nf.a} b={nf.b} c={nf.c} over {nf.modulus.n} "
        f"trail {trail}\n"
    )
    out.write(f"k1 {compute_k1(nf)} l {compute_l(nf)}\n")
    return EXIT_OK


def _cmd_verify(config: RunConfig, out: TextIO) -> int:
    if not config.moduli:
        raise UsageError("one of --n or --n-range is required")
    reports: list[VerificationReport] = []
    interrupted = False
    for n in config.moduli:
        report = verify_conjecture(
            factorize(n),
            VerifyOptions(
                k=config.k,
                orbits=config.orbits,
                jobs=config.jobs,
                checkpoint_path=config.checkpoint_path,
            ),
        )
        reports.append(report)
        flag = "violation" if report.conjecture_violated() else "ok"
        out.write(
            f"n={report.n} sequences={report.sequences_total} "
            f"high_index={len(report.high_index)} "
            f"complete={str(report.complete).lower()} {flag}\n"
        )
        if not report.complete:
            interrupted = True
            break
    if config.report_path:
        if config.format == "csv":
            _write_csv(config.report_path, reports)
        else:
            _write_jsonl(config.report_path, (verify_record(r) for r in reports))
    if interrupted:
        return EXIT_INTERRUPTED
    if any(r.conjecture_violated() for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_search(config: RunConfig, out: TextIO) -> int:
    findings = search_high_index(
        factorize(config.moduli[0]), config.k, orbits=config.orbits
    )
    for seq, index in findings:
        out.write(f"{','.join(map(str, seq.terms))} index {index}\n")
    out.write(f"total {len(findings)}\n")
    if config.report_path:
        records = [
            {
                "n": config.moduli[0],
                "terms": list(seq.terms),
                "index": index,
                "witness_m": None,
                "rule": None,
                "trail": [],
            }
            for seq, index in findings
        ]
        _write_jsonl(config.report_path, records)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsindex",
        description=(
            "Index computation, minimal zero-sum enumeration, and index-1 "
            "certificates over finite cyclic groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_terms: bool = False) -> None:
        p.add_argument("--n", type=int, default=None, help="modulus (>= 2)")
        if with_terms:
            p.add_argument(
                "--terms",
                type=str,
                default=None,
                help="comma-separated terms in [1, n]; n denotes the zero element",
            )

    p_index = sub.add_parser("index", help="exact index of a sequence")
    add_common(p_index, with_terms=True)

    p_minimal = sub.add_parser("minimal", help="zero-sum and minimality predicates")
    add_common(p_minimal, with_terms=True)

    p_enum = sub.add_parser("enumerate", help="list minimal zero-sum sequences")
    add_common(p_enum)
    p_enum.add_argument("--k", type=int, default=4, help="sequence length")
    p_enum.add_argument(
        "--orbits", action="store_true", help="orbit representatives only"
    )

    p_witness = sub.add_parser("witness", help="find a validated index-1 certificate")
    add_common(p_witness, with_terms=True)
    p_witness.add_argument("--report-path", type=str, default=None)

    p_reduce = sub.add_parser("reduce", help="content reduction and normal form")
    add_common(p_reduce, with_terms=True)

    p_verify = sub.add_parser("verify", help="sweep all minimal sequences per modulus")
    add_common(p_verify)
    p_verify.add_argument("--n-range", type=str, default=None, help="LO:HI inclusive")
    p_verify.add_argument(
        "--coprime-to",
        type=int,
        default=6,
        help="with --n-range, keep moduli coprime to this (default 6)",
    )
    p_verify.add_argument(
        "--all-moduli",
        action="store_true",
        help="with --n-range, keep every modulus in the range",
    )
    p_verify.add_argument("--k", type=int, default=4)
    p_verify.add_argument("--orbits", action="store_true")
    p_verify.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_verify.add_argument("--report-path", type=str, default=None)
    p_verify.add_argument("--checkpoint-path", type=str, default=None)
    p_verify.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")

    p_search = sub.add_parser("search", help="list high-index sequences")
    add_common(p_search)
    p_search.add_argument("--k", type=int, default=4)
    p_search.add_argument("--orbits", action="store_true")
    p_search.add_argument("--report-path", type=str, default=None)

    return parser


_COMMANDS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "index": _cmd_index,
    "minimal": _cmd_minimal,
    "enumerate": _cmd_enumerate,
    "witness": _cmd_witness,
    "reduce": _cmd_reduce,
    "verify": _cmd_verify,
    "search": _cmd_search,
}


def run(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    """Parse and execute; returns the process exit code."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _COMMANDS[config.command](config, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidModulus, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return EXIT_INTERRUPTED


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
