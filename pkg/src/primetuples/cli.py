"""Command-line front end.

Distances on the command line and in every output record are full distances
(``2d``); only flags named ``--half-*`` or ``--d-max`` take half-values.

Exit status: 0 on success, 2 on usage errors, 3 when an input violates a
constraint of the requested operation, 1 when ``verify`` finds violations.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field

from . import patterns, search, twins
from .engine import DEFAULT_SEGMENT_SLOTS
from .errors import DomainOverflowError, InvalidSignatureError, PrimeTuplesError
from .signature import GapSignature, Multiplet

CONFIG_ENV = "PRIMETUPLES_CONFIG"

EXIT_OK, EXIT_USAGE, EXIT_CONSTRAINT = 0, 2, 3

FIELDS = {
    "twin": ["p_lo", "p_hi", "distance", "class", "a", "special", "mod6"],
    "special": ["p_lo", "p_hi", "distance"],
    "triplet": ["base", "distances", "elements", "classes"],
    "multiplet": ["base", "distances", "elements", "classes"],
    "pattern": ["distances", "status", "bases", "witness", "exceptional", "paper_rule"],
    "count": ["distances", "upto", "count"],
    "verify": ["distances", "upto", "status", "violations", "message"],
}


@dataclass
class Config:
    format: str = "table"
    segment_slots: int = DEFAULT_SEGMENT_SLOTS
    jobs: int = 1
    search_cap: int = search.SEARCH_CAP
    source: str | None = None

    _KEYS = {"format": str, "segment_slots": int, "jobs": int, "search_cap": int}

    @classmethod
    def load(cls, path: str | None) -> "Config":
        cfg = cls()
        if not path:
            return cfg
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                key = key.strip().replace("-", "_")
                if not sep or key not in cls._KEYS:
                    raise ValueError(f"{path}:{lineno}: unrecognised setting {line!r}")
                setattr(cfg, key, cls._KEYS[key](value.strip()))
        if cfg.format not in ("table", "jsonl", "csv"):
            raise ValueError(f"{path}: unknown format {cfg.format!r}")
        if cfg.search_cap > search.SEARCH_CAP:
            raise ValueError(f"{path}: search_cap cannot exceed 2**62")
        cfg.source = path
        return cfg


@dataclass
class OutputRecord:
    kind: str
    payload: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"kind": self.kind, **self.payload}


def _multiplet_record(m: Multiplet, **extra) -> OutputRecord:
    kind = "triplet" if len(m) == 3 else "multiplet"
    return OutputRecord(
        kind,
        {
            "base": m.base,
            "distances": list(m.signature.full_gaps),
            "elements": list(m.elements),
            "classes": [twins.class_label(d) for d in m.signature.half_gaps],
            **extra,
        },
    )


def _twin_record(pair: twins.TwinPair, kind: str = "twin") -> OutputRecord:
    if kind == "special":
        return OutputRecord(kind, {"p_lo": pair.p_lo, "p_hi": pair.p_hi, "distance": pair.distance})
    c = twins.classify_twin(pair)
    form = twins.mod6_descriptor(pair)
    if form.singlet_exception:
        mod6 = "singlet"
    else:
        sign = lambda r: "+1" if r > 0 else "-1"  # noqa: E731
        mod6 = f"6m{sign(form.residue_lo)},6(m+{form.step}){sign(form.residue_hi)} m={form.m}"
    return OutputRecord(
        kind,
        {
            "p_lo": pair.p_lo,
            "p_hi": pair.p_hi,
            "distance": pair.distance,
            "class": c.label,
            "a": c.a,
            "special": bool(c.special),
            "mod6": mod6,
        },
    )


def _status_payload(sig: GapSignature, status) -> dict:
    return {
        "distances": list(sig.full_gaps),
        "status": status.kind,
        "bases": list(getattr(status, "bases", [])),
        "witness": getattr(status, "witness", None),
    }


# -- rendering ----------------------------------------------------------------


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        sep = "; " if value and isinstance(value[0], (list, tuple)) else " "
        return sep.join(_cell(v) for v in value)
    return str(value)


class Writer:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream
        self._csv_kind = None
        self._table: list[OutputRecord] = []

    def write(self, record: OutputRecord) -> None:
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(record.as_dict(), separators=(",", ":")) + "\n")
        elif self.fmt == "csv":
            fields = FIELDS[record.kind]
            w = csv.writer(self.stream, lineterminator="\n")
            if record.kind != self._csv_kind:
                w.writerow(["kind", *fields])
                self._csv_kind = record.kind
            w.writerow([record.kind, *(_cell(record.payload.get(f)) for f in fields)])
        else:
            self._table.append(record)

    def close(self) -> None:
        if self.fmt != "table" or not self._table:
            return
        groups: dict[str, list[OutputRecord]] = {}
        for rec in self._table:
            groups.setdefault(rec.kind, []).append(rec)
        for kind, recs in groups.items():
            fields = FIELDS[kind]
            rows = [[_cell(r.payload.get(f)) for f in fields] for r in recs]
            widths = [max(len(f), *(len(row[i]) for row in rows)) for i, f in enumerate(fields)]
            self.stream.write(f"# {kind}\n")
            self.stream.write("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip() + "\n")
            for row in rows:
                self.stream.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


# -- subcommands ----------------------------------------------------------------


def _gaps(text: str) -> GapSignature:
    try:
        return GapSignature.parse(text)
    except InvalidSignatureError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _check_cap(hi: int, cfg: Config) -> None:
    if hi > cfg.search_cap:
        raise DomainOverflowError(f"upper bound {hi} exceeds configured cap {cfg.search_cap}")


def cmd_classify(args, cfg, out):
    out.write(_twin_record(twins._as_pair((args.p, args.q))))


def cmd_twins(args, cfg, out):
    for a, pair in twins.enumerate_twin_params(args.half_distance, args.a_max):
        out.write(_twin_record(pair))


def cmd_special(args, cfg, out):
    for pair in twins.list_special_twins(args.d_max):
        out.write(_twin_record(pair, "special"))


def cmd_pattern(args, cfg, out):
    sig = args.gaps
    status = patterns.classify_pattern(sig)
    payload = _status_payload(sig, status)
    payload["exceptional"] = [list(m.elements) for m in patterns.exceptional_candidates(sig)]
    if sig.k == 4:
        payload["paper_rule"] = patterns.quartet_rule(*sig.half_gaps)
    out.write(OutputRecord("pattern", payload))


def cmd_search(args, cfg, out):
    _check_cap(args.to, cfg)
    job = search.SearchJob(args.gaps, args.lo, args.to, args.jobs or cfg.jobs, cfg.segment_slots)
    for m in search.find_occurrences(job):
        out.write(_multiplet_record(m))


def cmd_ap(args, cfg, out):
    _check_cap(args.to, cfg)
    found = search.find_equal_ap(
        args.length, args.half_step, args.lo, args.to, args.jobs or cfg.jobs, cfg.segment_slots
    )
    for m in found:
        out.write(_multiplet_record(m))


def cmd_count(args, cfg, out):
    _check_cap(args.upto, cfg)
    records = search.count_occurrences(
        args.gaps, args.upto, args.buckets, args.jobs or cfg.jobs, cfg.segment_slots
    )
    for rec in records:
        out.write(
            OutputRecord(
                "count",
                {"distances": list(rec.signature.full_gaps), "upto": rec.upto, "count": rec.count},
            )
        )


def cmd_verify(args, cfg, out):
    _check_cap(args.upto, cfg)
    report = search.verify_exceptionality(
        args.gaps, args.upto, args.jobs or cfg.jobs, cfg.segment_slots
    )
    out.write(
        OutputRecord(
            "verify",
            {
                "distances": list(args.gaps.full_gaps),
                "upto": args.upto,
                "status": report.status.kind,
                "violations": [list(m.elements) for m in report.violations],
                "message": report.summary(),
            },
        )
    )
    return EXIT_OK if report.ok else 1


def cmd_min_distance(args, cfg, out):
    d = search.min_anchored_distance(args.prime, args.d_max)
    if d is None:
        print(f"no anchored {args.prime}-tuple with half-distance <= {args.d_max}", file=sys.stderr)
        return
    sig = GapSignature((d,) * (args.prime - 1))
    out.write(_multiplet_record(Multiplet(args.prime, sig)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primetuples",
        description="Classify generalized prime twins and search for exceptional prime multiplets.",
    )
    parser.add_argument("--format", choices=["table", "jsonl", "csv"], default=None)
    parser.add_argument("--config", default=None, help=f"key=value settings file (default ${CONFIG_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="class of the prime pair (p, q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("twins", help="running parameters a of the twins at one distance")
    p.add_argument("--half-distance", type=int, required=True)
    p.add_argument("--a-max", type=int, required=True)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("special", help="special twins (3, 3 + 2D)")
    p.add_argument("--d-max", type=int, required=True, help="largest half-distance D")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("pattern", help="residue analysis of a gap pattern")
    p.add_argument("--gaps", type=_gaps, required=True, help="full distances, e.g. 2,2")
    p.set_defaults(func=cmd_pattern)

    def add_jobs(p):
        p.add_argument("--jobs", type=int, default=None, help="worker processes; output is unchanged")

    def add_range(p):
        p.add_argument("--from", dest="lo", type=int, default=3)
        p.add_argument("--to", type=int, required=True)
        add_jobs(p)

    p = sub.add_parser("search", help="all instances of a gap pattern in a base range")
    p.add_argument("--gaps", type=_gaps, required=True)
    add_range(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("ap", help="prime arithmetic progressions")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--half-step", type=int, required=True)
    add_range(p)
    p.set_defaults(func=cmd_ap)

    p = sub.add_parser("count", help="cumulative instance counts")
    p.add_argument("--gaps", type=_gaps, required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--buckets", type=int, default=1)
    add_jobs(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="check that an anchored/blocked pattern has no stray instances")
    p.add_argument("--gaps", type=_gaps, required=True)
    p.add_argument("--upto", type=int, required=True)
    add_jobs(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("min-distance", help="smallest half-distance of an exceptional p-tuple")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True, help="largest half-distance d")
    p.set_defaults(func=cmd_min_distance)
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = Config.load(args.config or os.environ.get(CONFIG_ENV))
    except (OSError, ValueError) as exc:
        print(f"error: bad configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    out = Writer(args.format or cfg.format, stdout)
    try:
        code = args.func(args, cfg, out)
    except PrimeTuplesError as exc:
        out.close()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, InvalidSignatureError) else EXIT_CONSTRAINT
    except ValueError as exc:
        out.close()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.close()
    return code or EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
