"""Command-line entry point: ``gvpairs {local-curve, series, partitions, verify-all}``.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from . import localcurve as lc
from .gvseries import (
    CutoffError,
    IntegralityError,
    QSeries,
    genus1_forward,
    gw0_from_n0,
    ideal_generating_check,
    macmahon,
    macmahon_product,
    meeting_invariants,
    multiple_cover_expand,
    n0_from_gw0,
    n1_from_genus1,
    n1_from_p0,
)
from .jsonio import (
    SchemaError,
    class_key,
    geom_from_json,
    lattice_from_json,
    rational_text,
    series_to_json,
    table_from_json,
    table_to_json,
)
from .partitions import BoundError, count_plane_partitions, list_plane_partitions, p0_local_elliptic_series
from .verify import run_all

SCHEMA_VERSION = 1
CACHE_ENV = "GVPAIRS_CACHE_DIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    output_format: str = "json"
    parallelism: int = 1
    cache_dir: Optional[Path] = None
    cutoffs: Dict[str, int] = field(default_factory=lambda: {"series": 8})
    output: Optional[Path] = None

    def __post_init__(self):
        if self.output_format not in ("json", "csv", "markdown"):
            raise UsageError(f"unknown output format {self.output_format!r}")
        if self.parallelism < 1:
            raise UsageError("--parallel must be at least 1")
        if any(v <= 0 for v in self.cutoffs.values()):
            raise UsageError("cutoffs must be positive")

    @classmethod
    def from_args(cls, args) -> "CliConfig":
        cache = None
        if not getattr(args, "no_cache", False):
            cache = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV) or None
        return cls(args.format, getattr(args, "parallel", 1), Path(cache) if cache else None,
                   output=Path(args.output) if args.output else None)


# -- reports -------------------------------------------------------------

@dataclass
class Report:
    command: str
    summary: Dict[str, Any]
    columns: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    json_rows: bool = True

    def to_json(self) -> str:
        doc = {"schema_version": SCHEMA_VERSION, "command": self.command}
        doc.update(self.summary)
        if self.columns and self.json_rows:
            doc["rows"] = self.rows
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.columns:
            w.writerow(self.columns)
            for r in self.rows:
                w.writerow([_cell(r.get(c)) for c in self.columns])
        else:
            w.writerow(["key", "value"])
            for k, v in self.summary.items():
                w.writerow([k, _cell(v)])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [f"## {self.command}", ""]
        for k, v in self.summary.items():
            if not isinstance(v, (dict, list)):
                lines.append(f"- {k}: {_cell(v)}")
        if self.columns:
            lines += ["", "| " + " | ".join(self.columns) + " |", "|" + "---|" * len(self.columns)]
            for r in self.rows:
                lines.append("| " + " | ".join(_cell(r.get(c)).replace("|", "\\|") for c in self.columns) + " |")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "markdown": self.to_markdown}[fmt]()


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return "" if v is None else str(v)


# -- local curves with a content-addressed cache ---------------------------

def _cache_path(cache_dir: Path, sorted_l) -> Path:
    key = f"gvpairs-local-curve-v{SCHEMA_VERSION}:{','.join(map(str, sorted_l))}"
    return cache_dir / (hashlib.sha256(key.encode()).hexdigest() + ".json")


def _sorted_report(sorted_l) -> dict:
    return lc.check_deg2_conjecture(sorted_l).to_dict()


def _pool_map(fn, items, workers: int) -> list:
    if workers > 1 and len(items) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items, chunksize=4))
    return [fn(x) for x in items]


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _restore(sorted_doc: dict, l) -> lc.InvariantReport:
    """Relabel a report computed on the descending-sorted triple back to ``l``."""
    base = lc.InvariantReport.from_dict(sorted_doc)
    perm = sorted(range(3), key=lambda t: (-l[t], t))
    images = [p + 1 for p in perm]
    g = lc.LocalCurveGeom(tuple(l))
    if images == [1, 2, 3]:
        return base
    rl = lambda x: lc.relabel(x, images)
    return lc.InvariantReport(g, rl(base.gw01), rl(base.gw02), rl(base.p11), rl(base.p12),
                              base.conjecture_holds, lc.deg2_fixed_components(g))


def compute_reports(triples: Sequence[tuple], cfg: CliConfig, use_cache: bool = True) -> List[lc.InvariantReport]:
    """Reports in input order.

    With ``use_cache`` each permutation class is computed once on its sorted
    representative (and read from or written to the cache directory when one
    is configured); without it every triple is computed directly.
    """
    if not use_cache:
        return _pool_map(lc.check_deg2_conjecture, list(triples), cfg.parallelism)
    keys = [tuple(sorted(l, reverse=True)) for l in triples]
    docs: Dict[tuple, dict] = {}
    cache = cfg.cache_dir
    if cache is not None:
        for k in set(keys):
            p = _cache_path(cache, k)
            if p.exists():
                try:
                    docs[k] = json.loads(p.read_text())
                except (OSError, json.JSONDecodeError):
                    pass
    missing = sorted(set(keys) - set(docs))
    computed = _pool_map(_sorted_report, missing, cfg.parallelism)
    for k, doc in zip(missing, computed):
        docs[k] = doc
        if cache is not None:
            _write_atomic(_cache_path(cache, k), json.dumps(doc, sort_keys=True))
    return [_restore(docs[k], l) for k, l in zip(keys, triples)]


def _report_row(r: lc.InvariantReport) -> dict:
    d = r.to_dict()
    l = d.pop("l")
    return {"l1": l[0], "l2": l[1], "l3": l[2], **d}


def cmd_local_curve(args, cfg: CliConfig) -> int:
    if args.grid is not None:
        if args.l1 is not None or args.l2 is not None or args.l3 is not None:
            raise UsageError("--grid cannot be combined with --l1/--l2/--l3")
        a, b = args.grid
        if a > b:
            raise UsageError("--grid needs A <= B")
        triples = [(x, y, -2 - x - y) for x in range(a, b + 1) for y in range(a, b + 1)]
    else:
        if args.l1 is None or args.l2 is None:
            raise UsageError("give --l1 and --l2, or --grid A B")
        l3 = -2 - args.l1 - args.l2 if args.l3 is None else args.l3
        try:
            lc.LocalCurveGeom((args.l1, args.l2, l3))
        except lc.CYConditionError as exc:
            raise UsageError(str(exc)) from None
        triples = [(args.l1, args.l2, l3)]

    reports = compute_reports(triples, cfg)
    mismatches = []
    if args.verify_cache:
        fresh = compute_reports(triples, cfg, use_cache=False)
        mismatches = [r.geom.l for r, f in zip(reports, fresh) if json.dumps(r.to_dict()) != json.dumps(f.to_dict())]
    failures = [list(r.geom.l) for r in reports if not r.conjecture_holds]
    summary: Dict[str, Any] = {"instances": len(reports), "passed": len(reports) - len(failures),
                               "failures": failures}
    if args.verify_cache:
        summary["cache_mismatches"] = [list(m) for m in mismatches]
    if len(reports) == 1 and args.grid is None:
        summary["report"] = reports[0].to_dict()
    rows = [_report_row(r) for r in reports]
    columns = ["l1", "l2", "l3", "gw01", "gw02", "p11", "p12", "conjecture_holds"]
    for r in rows:
        r.pop("fixed_components")
    emit(Report("local-curve", summary, columns, rows), cfg)
    return EXIT_FAIL if failures or mismatches else EXIT_OK


# -- series --------------------------------------------------------------

def _load_input(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("input document must be a JSON object")
    return doc


def _int_field(doc, key, default=None) -> int:
    v = doc.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"field {key!r} must be an integer")
    return v


def _p0_series(doc, lat) -> QSeries:
    if "macmahon_power" in doc:
        if lat.rank != 1:
            raise SchemaError("'macmahon_power' needs a rank-1 lattice")
        return macmahon(lat.cutoff) ** _int_field(doc, "macmahon_power")
    p0 = table_from_json(doc.get("p0"), lat.rank)
    p0.setdefault(lat.zero, 1)
    if p0[lat.zero] != 1:
        raise SchemaError("p0 at the zero class must be 1")
    return QSeries(lat, p0)


def _table_rows(table: Dict[str, str]) -> List[dict]:
    return [{"class": k, "value": v} for k, v in table.items()]


def cmd_series(args, cfg: CliConfig) -> int:
    doc = _load_input(args.input)
    lat = lattice_from_json(doc)
    op = args.operation
    out: Dict[str, Any] = {}
    ok = True
    if op == "gv0":
        n = _int_field(doc, "insertions", 0)
        out["gw0"] = series_to_json(gw0_from_n0(table_from_json(doc.get("n0"), lat.rank), lat, n),
                                    include_zero=False)
    elif op == "gv0-invert":
        n = _int_field(doc, "insertions", 0)
        gw = QSeries(lat, table_from_json(doc.get("gw0"), lat.rank))
        out["n0"] = table_to_json(n0_from_gw0(gw, n))
    elif op in ("genus1", "genus1-invert", "meeting"):
        g = geom_from_json(doc)
        m = meeting_invariants(g)
        if op == "meeting":
            out["meeting"] = {f"{class_key(b1)} {class_key(b2)}": rational_text(v) for (b1, b2), v in m.items()}
        elif op == "genus1":
            out["gw1"] = series_to_json(genus1_forward(table_from_json(doc.get("n1"), lat.rank), g, m),
                                        include_zero=False)
        else:
            gw1 = QSeries(lat, table_from_json(doc.get("gw1"), lat.rank))
            out["n1"] = table_to_json(n1_from_genus1(gw1, g, m))
    elif op == "macmahon-product":
        out["p0"] = series_to_json(macmahon_product(table_from_json(doc.get("n1"), lat.rank), lat))
    elif op == "p0-invert":
        out["n1"] = table_to_json(n1_from_p0(_p0_series(doc, lat)))
    elif op == "multiple-cover":
        n_max = _int_field(doc, "n_max", 3)
        table = multiple_cover_expand(table_from_json(doc.get("n1_sheaf"), lat.rank), n_max,
                                      cutoff=lat.cutoff, degree_vector=lat.degree_vector)
        out["N"] = {f"{n} {class_key(b)}": rational_text(v)
                    for (n, b), v in sorted(table.items(), key=lambda kv: (sum(kv[0][1]), kv[0][1], kv[0][0]))}
    elif op == "ideal-check":
        p0 = _p0_series(doc, lat)
        n1 = table_from_json(doc.get("n1"), lat.rank)
        n0 = table_from_json(doc.get("n0_gamma"), lat.rank)
        ok = ideal_generating_check(p0, n0, n1, _int_field(doc, "y_cutoff", 3))
        out["passed"] = ok
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown series operation {op}")
    rows: List[dict] = []
    for key, val in out.items():
        if isinstance(val, dict):
            rows += [{"table": key, **r} for r in _table_rows(val)]
    emit(Report(f"series {op}", out, ["table", "class", "value"] if rows else [], rows,
                json_rows=False), cfg)
    return EXIT_OK if ok else EXIT_FAIL


# -- partitions ----------------------------------------------------------

def cmd_partitions(args, cfg: CliConfig) -> int:
    if args.count is not None:
        n = count_plane_partitions(args.count)
        emit(Report("partitions", {"m": args.count, "count": n}), cfg)
        return EXIT_OK
    if args.series is not None:
        if args.series < 0:
            raise BoundError("series cutoff must be non-negative")
        s = p0_local_elliptic_series(args.series)
        coeffs = [int(s[(m,)]) for m in range(args.series + 1)]
        summary: Dict[str, Any] = {"cutoff": args.series, "coefficients": coeffs}
        ok = True
        if args.compare:
            mac = macmahon(args.series)
            ok = s == mac
            summary["matches_macmahon"] = ok
        rows = [{"m": m, "count": c} for m, c in enumerate(coeffs)]
        emit(Report("partitions", summary, ["m", "count"], rows), cfg)
        return EXIT_OK if ok else EXIT_FAIL
    diagrams = list_plane_partitions(args.list)
    listing = [p.to_list() for p in diagrams]
    rows = [{"index": i, "boxes": d} for i, d in enumerate(listing)]
    emit(Report("partitions", {"m": args.list, "count": len(listing), "diagrams": listing},
                ["index", "boxes"], rows), cfg)
    return EXIT_OK


# -- verify-all ------------------------------------------------------------

def cmd_verify_all(args, cfg: CliConfig) -> int:
    if args.tables_dir is not None and not Path(args.tables_dir).is_dir():
        raise UsageError(f"{args.tables_dir} is not a directory")
    results = run_all(workers=cfg.parallelism, tables_dir=args.tables_dir, only=args.only)
    failing = [c.id for c in results if not c.passed]
    rows = [c.to_dict(timings=args.timings) for c in results]
    cols = ["id", "name", "passed", "detail"] + (["seconds"] if args.timings else [])
    emit(Report("verify-all", {"all_pass": not failing, "failing": failing}, cols, rows), cfg)
    if failing:
        names = ", ".join(f"{c.id} ({c.name})" for c in results if not c.passed)
        print(f"failing criteria: {names}", file=sys.stderr)
    return EXIT_FAIL if failing else EXIT_OK


# -- plumbing --------------------------------------------------------------

def emit(report: Report, cfg: CliConfig):
    text = report.render(cfg.output_format)
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    common.add_argument("--output", "-o", help="write the report to a file instead of stdout")

    p = _Parser(prog="gvpairs", description="Gopakumar-Vafa type invariants and stable pair checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    lcp = sub.add_parser("local-curve", parents=[common], help="invariants of Tot(O(l1)+O(l2)+O(l3)) over P^1")
    lcp.add_argument("--l1", type=int)
    lcp.add_argument("--l2", type=int)
    lcp.add_argument("--l3", type=int, help="defaults to -2 - l1 - l2")
    lcp.add_argument("--grid", nargs=2, type=int, metavar=("A", "B"), help="check every (l1, l2) in [A, B]^2")
    lcp.add_argument("--parallel", type=int, default=1, metavar="N")
    lcp.add_argument("--cache-dir", help=f"result cache directory (default: ${CACHE_ENV})")
    lcp.add_argument("--no-cache", action="store_true")
    lcp.add_argument("--verify-cache", action="store_true", help="recompute everything and compare with the cache")

    sp = sub.add_parser("series", parents=[common], help="q-series transforms on a JSON input document")
    sp.add_argument("operation", choices=("gv0", "gv0-invert", "genus1", "genus1-invert", "meeting",
                                          "macmahon-product", "p0-invert", "multiple-cover", "ideal-check"))
    sp.add_argument("--input", "-i", required=True, help="JSON document, or - for stdin")

    pp = sub.add_parser("partitions", parents=[common], help="plane partition counts and listings")
    g = pp.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", type=int, metavar="M")
    g.add_argument("--series", type=int, metavar="N")
    g.add_argument("--list", type=int, metavar="M")
    pp.add_argument("--compare", action="store_true", help="with --series, compare against the MacMahon function")

    vp = sub.add_parser("verify-all", parents=[common], help="run the whole verification suite")
    vp.add_argument("--parallel", type=int, default=1, metavar="N")
    vp.add_argument("--tables-dir", help="directory of CSV tables to check instead of the shipped ones")
    vp.add_argument("--only", type=int, nargs="+", metavar="ID", help="run a subset of criteria")
    vp.add_argument("--timings", action="store_true", help="include wall-clock times (not deterministic)")
    return p


COMMANDS = {
    "local-curve": cmd_local_curve,
    "series": cmd_series,
    "partitions": cmd_partitions,
    "verify-all": cmd_verify_all,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CliConfig.from_args(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, SchemaError, BoundError, CutoffError, lc.CYConditionError) as exc:
        print(f"gvpairs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegralityError as exc:
        print(f"gvpairs: integrality check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"gvpairs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
