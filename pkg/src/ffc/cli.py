"""Command-line front end.

Subcommands:

* ``parse``     -- check a source file, list its methods or dump the AST
* ``graph``     -- build a flow graph and emit it (interchange JSON or DOT)
* ``classify``  -- classify every faulty/fixed pair in a manifest
* ``stats``     -- per-project class counts, fault-type split, distributions
* ``cooccur``   -- class co-occurrence matrix
* ``compare``   -- relate classifier output to a reference label file

Exit codes: 0 on success, 1 on a domain error (bad input file, failed
entry), 2 on a usage error.  Set ``FFC_COLOR=1`` to enable ANSI color in
text reports; output is otherwise plain and byte-deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ffc import dataset, minij, stats
from ffc.align import Alignment, align
from ffc.classifier import CLASS_ORDER, UnclassifiedDiff, classify
from ffc.dataset import LabelError, ManifestError
from ffc.flowgraph import FlowGraph
from ffc.graphio import FormatError, export_graph

_CLASS_NAMES = [c.value for c in CLASS_ORDER]
_COLORS = {"green": "\x1b[32m", "red": "\x1b[31m", "yellow": "\x1b[33m"}


def _paint(text: str, color: str) -> str:
    if os.environ.get("FFC_COLOR") != "1":
        return text
    return _COLORS[color] + text + "\x1b[0m"


def _write_out(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fail(message: str) -> int:
    sys.stderr.write("ffc: error: %s\n" % message)
    return 1


def _class_names(classes) -> list[str]:
    return [c.value for c in CLASS_ORDER if c in classes]


def _join_classes(classes) -> str:
    names = _class_names(classes)
    return "+".join(names) if names else "-"


# --------------------------------------------------------------------------
# parse / graph
# --------------------------------------------------------------------------


def _cmd_parse(args) -> int:
    try:
        text = Path(args.file).read_text()
        program = minij.parse(text)
    except OSError as exc:
        return _fail(str(exc))
    except (minij.LexError, minij.ParseError) as exc:
        return _fail("%s: %s" % (args.file, exc))
    methods = program.methods
    if args.method is not None:
        methods = [m for m in methods if m.name == args.method]
        if not methods:
            return _fail("%s: no method named %r" % (args.file, args.method))
    if args.emit_ast:
        dump = [minij.ast_dump(m) for m in methods]
        payload = dump[0] if args.method is not None and len(dump) == 1 else dump
        _write_out(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        lines = ["%s(%s)" % (m.name, ", ".join(p.name for p in m.params))
                 for m in methods]
        _write_out("".join(line + "\n" for line in lines), args.output)
    return 0


def _cmd_graph(args) -> int:
    fmt = "dot" if args.dot else "interchange"
    try:
        graph = dataset.load_graph(args.file, args.method)
        text = export_graph(graph, fmt)
    except OSError as exc:
        return _fail(str(exc))
    except (minij.LexError, minij.ParseError, FormatError, ValueError) as exc:
        return _fail("%s: %s" % (args.file, exc))
    for warning in graph.warnings:
        sys.stderr.write("ffc: warning: %s\n" % warning)
    _write_out(text, args.output)
    return 0


# --------------------------------------------------------------------------
# classify
# --------------------------------------------------------------------------


def _alignment_dump(faulty: FlowGraph, fixed: FlowGraph,
                    alignment: Alignment) -> dict:
    def node(g: FlowGraph, nid: int) -> str:
        n = g.node(nid)
        return "%s: %s" % (n.kind, n.label)

    return {
        "pairs": [{"faulty": f, "fixed": r, "status": s,
                   "faulty_label": node(faulty, f),
                   "fixed_label": node(fixed, r)}
                  for f, r, s in alignment.pairs],
        "deleted": [{"faulty": f, "faulty_label": node(faulty, f)}
                    for f in alignment.deleted],
        "inserted": [{"fixed": r, "fixed_label": node(fixed, r)}
                     for r in alignment.inserted],
    }


def _run_entry(entry: dataset.FaultEntry,
               want_alignment: bool) -> tuple[dataset.EntryResult, dict | None]:
    if not want_alignment:
        return dataset.classify_entry(entry), None
    try:
        faulty = dataset.load_graph(entry.faulty, entry.method)
        fixed = dataset.load_graph(entry.fixed, entry.method)
    except (OSError, ValueError, FormatError,
            minij.LexError, minij.ParseError) as exc:
        error = "%s: %s" % (type(exc).__name__, exc)
        return dataset.EntryResult(entry, error=error), None
    alignment = align(faulty, fixed)
    dump = _alignment_dump(faulty, fixed, alignment)
    try:
        classes = classify(faulty, fixed, alignment)
    except UnclassifiedDiff as exc:
        return dataset.EntryResult(entry, error="UnclassifiedDiff: %s" % exc), dump
    return dataset.EntryResult(entry, classes=classes), dump


def _run_manifest(entries, jobs: int, want_alignment: bool):
    if jobs <= 1:
        return [_run_entry(e, want_alignment) for e in entries]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda e: _run_entry(e, want_alignment), entries))


def _cmd_classify(args) -> int:
    if args.emit_alignment and args.format != "json":
        sys.stderr.write("ffc: error: --emit-alignment requires --format json\n")
        return 2
    try:
        entries = dataset.load_manifest(args.manifest)
    except ManifestError as exc:
        return _fail(str(exc))
    outcomes = _run_manifest(entries, args.jobs, args.emit_alignment)
    failed = False
    if args.format == "csv":
        rows = []
        for res, _ in outcomes:
            if res.error is not None:
                failed = True
                sys.stderr.write("ffc: error: %s: %s\n" % (res.entry.id, res.error))
                continue
            if not res.classes.classes:
                sys.stderr.write("ffc: note: %s: graphs identical, no classes\n"
                                 % res.entry.id)
                continue
            rows.append(dataset.LabelRow(project=res.entry.project,
                                         id=res.entry.short_id,
                                         classes=frozenset(res.classes.classes)))
        _write_out(dataset.format_labels(rows), args.output)
    elif args.format == "json":
        items = []
        for res, dump in outcomes:
            item: dict = {"id": res.entry.id, "project": res.entry.project}
            if res.error is not None:
                failed = True
                item["error"] = res.error
            else:
                item["classes"] = _class_names(res.classes.classes)
                item["fault_type"] = res.fault_type
                item["evidence"] = {c.value: sorted(ev) for c, ev
                                    in sorted(res.classes.evidence.items(),
                                              key=lambda kv: _CLASS_NAMES.index(kv[0].value))}
            if dump is not None:
                item["alignment"] = dump
            items.append(item)
        _write_out(json.dumps({"entries": items}, indent=2) + "\n", args.output)
    else:  # text
        lines = []
        for res, _ in outcomes:
            if res.error is not None:
                failed = True
                lines.append("%s: %s" % (res.entry.id, _paint(res.error, "red")))
            elif not res.classes.classes:
                lines.append("%s: %s" % (res.entry.id, _paint("no differences", "yellow")))
            else:
                label = "%s [%s]" % (_join_classes(res.classes.classes), res.fault_type)
                lines.append("%s: %s" % (res.entry.id, _paint(label, "green")))
        _write_out("".join(line + "\n" for line in lines), args.output)
    return 1 if failed else 0


# --------------------------------------------------------------------------
# stats / cooccur
# --------------------------------------------------------------------------


def _csv_text(rows: list[list[str]]) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _frequency_csv(table: stats.FrequencyTable) -> str:
    rows = [list(stats.AGGREGATE_COLUMNS)]
    for r in table.rows:
        rows.append([r.project, "" if r.kloc is None else str(r.kloc)]
                    + [str(r.counts[name]) for name in _CLASS_NAMES]
                    + ["%.2f" % r.mean, "%.2f" % r.std,
                       str(r.cf), str(r.df), str(r.mixed), str(r.total)])
    return _csv_text(rows)


def _partition_csv(partition: dict[str, float]) -> str:
    rows = [["fault_type", "pct"]]
    for key in ("pure-CF", "pure-DF", "mixed"):
        rows.append([key, "%.1f" % partition[key]])
    return _csv_text(rows)


def _distribution_csv(dist: stats.Distribution) -> str:
    header = (["project", "total", "min", "q1", "median", "q3", "max"]
              + ["n%d" % k for k in range(1, len(_CLASS_NAMES) + 1)])
    rows = [header]
    for r in dist.rows:
        rows.append([r.project, str(r.total), str(r.minimum), "%.1f" % r.q1,
                     "%.1f" % r.median, "%.1f" % r.q3, str(r.maximum)]
                    + [str(r.histogram[k])
                       for k in range(1, len(_CLASS_NAMES) + 1)])
    return _csv_text(rows)


def _cmd_stats(args) -> int:
    try:
        if args.aggregates is not None:
            aggs = stats.read_aggregates(args.aggregates)
            if args.distribution:
                return _fail("--distribution needs --labels "
                             "(aggregates carry no per-fault data)")
            if args.partition:
                text = _partition_csv(stats.aggregate_partition(stats.combine(aggs)))
            else:
                table = stats.frequency_table_from_aggregates(aggs)
                text = _frequency_csv(table)
        else:
            rows = dataset.read_labels(args.labels)
            if args.distribution:
                dist = stats.distribution(rows, by_project=args.by_project)
                text = _distribution_csv(dist)
            elif args.partition:
                text = _partition_csv(stats.percent_partition(rows))
            else:
                table = stats.frequencies(rows)
                text = _frequency_csv(table)
    except (LabelError, ValueError, OSError) as exc:
        return _fail(str(exc))
    if args.figures is not None:
        from ffc import figures

        outdir = Path(args.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        if args.distribution:
            path = figures.save_distribution_figure(dist, outdir / "distribution.png")
        else:
            if args.aggregates is not None:
                table = stats.frequency_table_from_aggregates(aggs)
            elif args.partition:
                table = stats.frequencies(rows)
            path = figures.save_frequency_figure(table, outdir / "frequencies.png")
        sys.stderr.write("ffc: wrote %s\n" % path)
    _write_out(text, args.output)
    return 0


def _cooccurrence_csv(matrix: stats.CooccurrenceMatrix, counts: bool) -> str:
    rows = [["class"] + list(matrix.classes)]
    for i, name in enumerate(matrix.classes):
        cells = []
        for j in range(len(matrix.classes)):
            if counts:
                cells.append(str(matrix.count(i, j)))
            else:
                pct = matrix.pct(i, j)
                cells.append("" if pct is None else "%.1f" % pct)
        rows.append([name] + cells)
    return _csv_text(rows)


def _cmd_cooccur(args) -> int:
    try:
        rows = dataset.read_labels(args.labels)
        matrix = stats.cooccurrence(rows)
    except (LabelError, ValueError, OSError) as exc:
        return _fail(str(exc))
    if args.figures is not None:
        from ffc import figures

        outdir = Path(args.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        path = figures.save_cooccurrence_figure(matrix, outdir / "cooccurrence.png")
        sys.stderr.write("ffc: wrote %s\n" % path)
    _write_out(_cooccurrence_csv(matrix, args.counts), args.output)
    return 0


# --------------------------------------------------------------------------
# compare
# --------------------------------------------------------------------------

_RELATION_COLOR = {"exact": "green", "superset": "yellow", "subset": "yellow",
                   "overlap": "yellow", "disjoint": "red",
                   "unclassified": "red"}


def _cmd_compare(args) -> int:
    try:
        entries = dataset.load_manifest(args.manifest)
        reference = dataset.read_labels(args.labels)
    except (ManifestError, LabelError) as exc:
        return _fail(str(exc))
    outcomes = _run_manifest(entries, args.jobs, False)
    results = [res for res, _ in outcomes]
    report = dataset.compare(entries, reference, results)
    failed = any(item.error is not None for item in report.items)
    if args.format == "csv":
        rows = [["id", "project", "relation", "reference", "actual", "error"]]
        for item in report.items:
            rows.append([
                item.entry.id,
                item.entry.project,
                item.relation or "missing-reference",
                "" if item.reference is None else _join_classes(item.reference),
                "" if item.actual is None else _join_classes(item.actual),
                item.error or "",
            ])
        _write_out(_csv_text(rows), args.output)
    else:  # text
        lines = []
        for item in report.items:
            rel = item.relation or "missing-reference"
            rel_text = _paint(rel, _RELATION_COLOR.get(rel, "yellow"))
            actual = "-" if item.actual is None else _join_classes(item.actual)
            ref = "-" if item.reference is None else _join_classes(item.reference)
            line = "%s: %s (reference=%s actual=%s)" % (item.entry.id, rel_text,
                                                        ref, actual)
            if item.error is not None:
                line += " " + _paint("[%s]" % item.error, "red")
            lines.append(line)
        parts = ["%s=%d" % (key, report.counts[key])
                 for key in (*dataset.RELATIONS, "missing-reference")]
        lines.append("summary: %s total=%d" % (" ".join(parts), len(report.items)))
        for row in report.unmatched_reference:
            lines.append("unmatched reference label: %s-%s" % row.key)
        _write_out("".join(line + "\n" for line in lines), args.output)
    return 1 if failed else 0


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffc",
        description="Flow-graph construction and fault classification "
                    "for faulty/fixed method pairs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", metavar="FILE",
                        help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common],
                       help="parse a source file and list its methods")
    p.add_argument("file")
    p.add_argument("--method", help="restrict to one method")
    p.add_argument("--emit-ast", action="store_true",
                   help="dump the AST as JSON")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("graph", parents=[common],
                       help="build a flow graph from a source or JSON file")
    p.add_argument("file")
    p.add_argument("--method", help="method to build (defaults to the only one)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    fmt.add_argument("--interchange", action="store_true",
                     help="emit interchange JSON (default)")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("classify", parents=[common],
                       help="classify all faulty/fixed pairs in a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--emit-alignment", action="store_true",
                   help="include the node alignment (JSON format only)")
    p.add_argument("--jobs", type=int, default=1, metavar="N",
                   help="classify entries with N worker threads")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("stats", parents=[common],
                       help="per-project class counts and distributions")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--labels", help="per-fault label CSV")
    src.add_argument("--aggregates", help="pre-tallied per-project CSV")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--table1", action="store_true",
                      help="class-count table (default)")
    mode.add_argument("--distribution", action="store_true",
                      help="classes-per-fault five-number summary")
    mode.add_argument("--partition", action="store_true",
                      help="pure-CF / pure-DF / mixed percentages")
    p.add_argument("--by-project", action="store_true",
                   help="per-project distribution rows")
    p.add_argument("--figures", metavar="DIR",
                   help="also render a figure into DIR")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("cooccur", parents=[common],
                       help="class co-occurrence matrix")
    p.add_argument("--labels", required=True)
    p.add_argument("--counts", action="store_true",
                   help="emit raw counts instead of row percentages")
    p.add_argument("--figures", metavar="DIR",
                   help="also render a heatmap into DIR")
    p.set_defaults(func=_cmd_cooccur)

    p = sub.add_parser("compare", parents=[common],
                       help="relate classifier output to reference labels")
    p.add_argument("--manifest", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.set_defaults(func=_cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
