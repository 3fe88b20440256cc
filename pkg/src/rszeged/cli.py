"""Command-line entry point: ``rszeged <verb> ...``.

Machine output carries the revised Szeged index as the quarter-unit integer
``sz4``; ``sz_star`` is its decimal rendering for people.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import graph6
from .families import FamilyError, enumerate_assignments, parse_family_spec, subdivide
from .graph import GraphError, cyclomatic_class
from .indices import (
    edge_partitions,
    fn_closed_form_q,
    format_quarter,
    index_report,
    revised_szeged_q,
    szeged,
    wiener,
)
from .records import RecordError, write_csv
from .search import (
    SearchError,
    check_lemma31,
    check_pendant_lemma,
    crossover_scan,
    enumerate_small,
    sweep_pendant_free,
    verify_bound,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"29..31"`` -> ``(29, 31)``; a single ``"30"`` -> ``(30, 30)``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
        else:
            a = b = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected N or A..B") from None
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return a, b


class Output:
    """Single sink for every report line."""

    def __init__(self, stream, fmt: Optional[str], header: bool, verb: str):
        self.stream = stream
        if fmt is None:
            fmt = "table" if getattr(stream, "isatty", lambda: False)() else "jsonl"
        self.fmt = fmt
        self.header = header and fmt == "table"
        self.verb = verb

    def begin(self) -> None:
        if self.header:
            stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
            self.stream.write(f"# rszeged {self.verb} {stamp}\n")

    def rows(self, rows: list[dict], title: Optional[str] = None) -> None:
        if not rows:
            if self.fmt == "table" and title:
                self.stream.write(f"{title}: none\n")
            return
        if self.fmt == "jsonl":
            for r in rows:
                self.stream.write(json.dumps(r, separators=(",", ":")) + "\n")
        elif self.fmt == "json":
            self.stream.write(json.dumps(rows if title is None else {title: rows}, indent=None) + "\n")
        elif self.fmt == "csv":
            w = csv.writer(self.stream, lineterminator="\n")
            w.writerow(list(rows[0]))
            for r in rows:
                w.writerow([_cell(v) for v in r.values()])
        else:
            if title:
                self.stream.write(f"{title}:\n")
            cols = list(rows[0])
            cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
            self.stream.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
            for row in cells:
                self.stream.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")

    def line(self, text: str, record: dict) -> None:
        """A status line: plain text on tables, a record elsewhere."""
        if self.fmt == "table":
            self.stream.write(text + "\n")
        else:
            self.rows([record])


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    if v is None:
        return "-"
    return str(v)


def _q(key: str, q: int) -> dict:
    """Quarter-unit value plus its decimal rendering."""
    return {key: q, key.replace("sz4", "sz_star"): format_quarter(q)}


# --- verbs -----------------------------------------------------------------------------


def _load_graphs(args) -> list:
    if args.g6 is not None:
        return [graph6.decode(args.g6)]
    with open(args.file, "rb") as fh:
        return list(graph6.read_stream(fh))


def cmd_compute(args, out: Output) -> int:
    graphs = _load_graphs(args)
    if args.per_edge:
        rows = []
        for g in graphs:
            code = graph6.encode(g).decode()
            for p in edge_partitions(g):
                rows.append({"g6": code, "u": p.edge[0], "v": p.edge[1],
                             "n_u": p.n_u, "n_v": p.n_v, "n_0": p.n_0, "delta": p.delta})
        out.rows(rows)
        return EXIT_OK
    rows = []
    for g in graphs:
        row = {"g6": graph6.encode(g).decode(), "n": g.n, "m": g.m}
        if args.index is None:
            rep = index_report(g)
            row.update({"class": cyclomatic_class(g), "W": rep.wiener, "Sz": rep.szeged,
                        **_q("sz4", rep.sz_star_q), "dsq": rep.delta_sq_sum})
        elif args.index == "wiener":
            row["W"] = wiener(g)
        elif args.index == "szeged":
            row["Sz"] = szeged(g)
        else:
            row.update(_q("sz4", revised_szeged_q(g)))
        rows.append(row)
    out.rows(rows)
    return EXIT_OK


def cmd_family(args, out: Output) -> int:
    a = parse_family_spec(args.family, args.lengths)
    g = subdivide(a)
    code = graph6.encode(g).decode()
    if args.emit_g6:
        out.stream.write(code + "\n")
        return EXIT_OK
    row = {"family": a.base, "lengths": list(a.lengths), "n": g.n, "m": g.m, "g6": code}
    if args.report:
        rep = index_report(g)
        row.update({"W": rep.wiener, "Sz": rep.szeged, **_q("sz4", rep.sz_star_q),
                    "dsq": rep.delta_sq_sum})
    out.rows([row])
    return EXIT_OK


def cmd_enumerate(args, out: Output) -> int:
    if args.pendant_free:
        graphs = (subdivide(a) for a in enumerate_assignments(args.n))
    else:
        graphs = iter(enumerate_small(args.n))
    if args.out:
        with open(args.out, "w") as fh:
            k = graph6.write_stream(fh, graphs)
        out.line(f"wrote {k} graphs to {args.out}", {"n": args.n, "count": k, "out": args.out})
    else:
        graph6.write_stream(out.stream, graphs)
    return EXIT_OK


def _next_run_id(path: str, prefix: str) -> str:
    runs = set()
    if os.path.exists(path):
        with open(path) as fh:
            if path.endswith(".csv"):
                runs = {row["run"] for row in csv.DictReader(fh)}
            else:
                runs = {json.loads(line)["run"] for line in fh if line.strip()}
    k = 1
    while f"{prefix}-r{k}" in runs:
        k += 1
    return f"{prefix}-r{k}"


def cmd_sweep(args, out: Output) -> int:
    lo, hi = parse_range(args.n)
    fh = None
    sink = None
    run_id = ""
    if args.out:
        run_id = _next_run_id(args.out, f"sweep-{lo}-{hi}")
        new_csv = args.out.endswith(".csv") and not os.path.exists(args.out)
        fh = open(args.out, "a")
        if args.out.endswith(".csv"):
            if new_csv:
                write_csv(fh, [], header=True)
            sink = lambda r: write_csv(fh, [r], header=False)  # noqa: E731
        else:
            sink = lambda r: fh.write(json.dumps(r.to_dict(), separators=(",", ":")) + "\n")  # noqa: E731
    try:
        rows = []
        for n in range(lo, hi + 1):
            rep = sweep_pendant_free(n, workers=args.workers, sink=sink, run_id=run_id)
            rows.append({"n": n, "scanned": rep.count_scanned, **_q("sz4", rep.max_sz_star_q),
                         **_q("closed_form_sz4", rep.closed_form_q),
                         "argmax": len(rep.argmax), "argmax_g6": [c.g6 for c in rep.argmax]})
    finally:
        if fh is not None:
            fh.close()
    out.rows(rows)
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    lo, hi = parse_range(args.n)
    try:
        results = verify_bound(lo, hi, informational=args.informational, workers=args.workers)
    except SearchError as exc:
        raise UsageError(str(exc)) from None
    for r in results:
        text = (f"{r.status} n={r.n} max={format_quarter(r.max_sz_star_q)} "
                f"closed_form={format_quarter(r.closed_form_q)} sz4={r.max_sz_star_q} "
                f"argmax={r.argmax_count} g6={','.join(r.argmax_g6)}")
        out.line(text, {"status": r.status, "n": r.n, **_q("sz4", r.max_sz_star_q),
                        **_q("closed_form_sz4", r.closed_form_q), "argmax": r.argmax_count,
                        "argmax_g6": list(r.argmax_g6), "scanned": r.count_scanned})
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_crossover(args, out: Output) -> int:
    lo, hi = parse_range(args.n)
    try:
        rep = crossover_scan(lo, hi, workers=args.workers)
    except SearchError as exc:
        raise UsageError(str(exc)) from None
    rows, exc_rows = [], []
    for r in rep.rows:
        rows.append({"n": r.n, **_q("sz4", r.max_sz_star_q), **_q("closed_form_sz4", r.closed_form_q),
                     **_q("theta4_tail_sz4", r.theta4_tail_q), "exceeders": len(r.exceeders),
                     "argmax": len(r.argmax)})
        for c in r.exceeders:
            exc_rows.append({"n": r.n, "base": c.base, "lengths": list(c.lengths), "g6": c.g6,
                             **_q("sz4", (r.n + 2) * r.n ** 2 - c.dsq), "dsq": c.dsq})
    summary = {"threshold": rep.threshold, "unique_threshold": rep.unique_threshold,
               "notes": list(rep.notes)}
    if out.fmt == "jsonl":
        out.rows([{"kind": "row", **r} for r in rows])
        out.rows([{"kind": "exceeder", **r} for r in exc_rows])
        out.rows([{"kind": "summary", **summary}])
    elif out.fmt == "table":
        out.rows(rows)
        out.rows(exc_rows, title="exceeders")
        out.stream.write(f"threshold: {rep.threshold}\nunique_threshold: {rep.unique_threshold}\n")
        for note in rep.notes:
            out.stream.write(f"note: {note}\n")
    else:
        out.rows(rows, title="rows")
        out.rows(exc_rows, title="exceeders")
        out.rows([summary], title="summary")
    return EXIT_OK


def cmd_lemma31(args, out: Output) -> int:
    bad = check_lemma31(args.max_total)
    for v in bad:
        out.line(f"VIOLATION {v}", {"lengths": list(v.lengths), "edge": list(v.edge), "path": v.path,
                                    "rule": v.rule, "case": v.case, "n_u": v.n_u, "n_v": v.n_v,
                                    "n_0": v.n_0, "detail": v.detail})
    status = "PASS" if not bad else "FAIL"
    out.line(f"{status} lemma31 max_total={args.max_total} violations={len(bad)}",
             {"status": status, "max_total": args.max_total, "violations": len(bad)})
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_pendant_check(args, out: Output) -> int:
    try:
        res = check_pendant_lemma(args.samples, args.n, args.seed)
    except SearchError as exc:
        raise UsageError(str(exc)) from None
    status = "PASS" if res.passed else "FAIL"
    for f in res.failures:
        out.line(f"  {f}", {"failure": f})
    out.line(f"{status} pendant-check n={res.n} samples={res.samples} min_dsq={res.min_dsq} "
             f"bound={(res.n - 2) ** 2} closed_form={format_quarter(fn_closed_form_q(res.n))}",
             {"status": status, "n": res.n, "samples": res.samples, "min_dsq": res.min_dsq,
              "bound": (res.n - 2) ** 2, **_q("closed_form_sz4", fn_closed_form_q(res.n))})
    return EXIT_OK if res.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rszeged", description="Revised Szeged index toolkit for tricyclic graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "jsonl", "csv"],
                        help="output format (default: table on a terminal, jsonl otherwise)")
    common.add_argument("--no-header", action="store_true", help="suppress the timestamped header line")
    common.add_argument("-v", "--verbose", action="store_true")
    workers = argparse.ArgumentParser(add_help=False)
    workers.add_argument("--workers", type=int, default=None,
                         help="worker processes (default: $RSZEGED_WORKERS or 1)")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("compute", parents=[common], help="indices of graph6 input")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6")
    src.add_argument("--file")
    which = c.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true")
    which.add_argument("--index", choices=["wiener", "szeged", "revised-szeged"])
    c.add_argument("--per-edge", action="store_true")
    c.set_defaults(func=cmd_compute)

    f = sub.add_parser("family", parents=[common], help="build one family graph")
    f.add_argument("family", help="theta1..theta4, base:ID, or a full spec like theta1:1,2,2,2")
    f.add_argument("--lengths")
    f.add_argument("--emit-g6", action="store_true")
    f.add_argument("--report", action="store_true")
    f.set_defaults(func=cmd_family)

    e = sub.add_parser("enumerate", parents=[common], help="list tricyclic graphs of order n as graph6")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--pendant-free", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sweep", parents=[common, workers], help="pendant-free maximum per order")
    s.add_argument("--n", required=True)
    s.add_argument("--out", help="append every scanned record (JSONL, or CSV if *.csv)")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", parents=[common, workers], help="check the extremal bound")
    v.add_argument("--n", required=True)
    v.add_argument("--informational", action="store_true")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("crossover", parents=[common, workers], help="scan for graphs beating the closed form")
    x.add_argument("--n", required=True)
    x.set_defaults(func=cmd_crossover)

    l3 = sub.add_parser("lemma31", parents=[common], help="exhaustive theta1 edge-imbalance check")
    l3.add_argument("--max-total", type=int, required=True)
    l3.set_defaults(func=cmd_lemma31)

    pc = sub.add_parser("pendant-check", parents=[common], help="random pendant-graph property check")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--samples", type=int, required=True)
    pc.add_argument("--seed", type=int, required=True)
    pc.set_defaults(func=cmd_pendant_check)
    return p


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=stderr, format="%(levelname)s %(name)s: %(message)s")
    out = Output(stdout, args.format, not args.no_header, args.verb)
    try:
        out.begin()
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"rszeged: error: {exc}\n")
        return EXIT_USAGE
    except (GraphError, graph6.Graph6Error, FamilyError, SearchError, RecordError, OSError) as exc:
        stderr.write(f"rszeged: {exc}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
