"""Dataset plumbing: manifests of faulty/fixed pairs, label files,
and agreement between computed and reference labels.

A manifest is a JSON file:

    {"entries": [
        {"id": "Lang-62", "faulty": "listings/lang_62_faulty.mj",
         "fixed": "listings/lang_62_fixed.mj"},
        ...
    ]}

Paths are resolved relative to the manifest; optional keys: "project"
(defaults to the id prefix before the first '-'), "method" (for files
holding several methods), "expected" (a list of class names).

A label file is a CSV with header

    project,id,order,jump,call,pred,guard,block,def,use

and 0/1 flags; at least one flag per row must be set.  The CSV written
by `ffc classify` uses the same shape, so computed labels feed straight
back into the statistics commands.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from ffc import minij
from ffc.classifier import CLASS_ORDER, FaultClass, FaultClassSet, UnclassifiedDiff, classify, fault_type
from ffc.flowgraph import FlowGraph, build_cfg, build_dfg
from ffc.graphio import FormatError, import_graph


class ManifestError(Exception):
    """Raised for malformed manifests or missing referenced files."""


class LabelError(Exception):
    """Raised for malformed label files."""


@dataclass(frozen=True)
class FaultEntry:
    id: str
    project: str
    faulty: Path
    fixed: Path
    method: str | None = None
    expected: frozenset[FaultClass] | None = None

    @property
    def short_id(self) -> str:
        prefix = self.project + "-"
        return self.id[len(prefix):] if self.id.startswith(prefix) else self.id

    @property
    def key(self) -> tuple[str, str]:
        return (self.project, self.short_id)


def _parse_classes(names, context: str) -> frozenset[FaultClass]:
    out = set()
    for name in names:
        try:
            out.add(FaultClass(name))
        except ValueError:
            raise ManifestError("%s: unknown fault class %r" % (context, name)) from None
    return frozenset(out)


def load_manifest(path: str | Path) -> list[FaultEntry]:
    """Load and validate a manifest: unique ids, existing files."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ManifestError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise ManifestError("%s is not valid JSON: %s" % (path, exc)) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise ManifestError("%s: expected an object with an 'entries' list" % path)
    base = path.parent
    entries: list[FaultEntry] = []
    seen: set[str] = set()
    for raw in doc["entries"]:
        if not isinstance(raw, dict):
            raise ManifestError("%s: entries must be objects" % path)
        for key in ("id", "faulty", "fixed"):
            if not isinstance(raw.get(key), str) or not raw[key]:
                raise ManifestError("%s: entry missing %r: %r" % (path, key, raw))
        eid = raw["id"]
        if eid in seen:
            raise ManifestError("%s: duplicate entry id %r" % (path, eid))
        seen.add(eid)
        project = raw.get("project") or eid.split("-")[0]
        faulty = (base / raw["faulty"]).resolve()
        fixed = (base / raw["fixed"]).resolve()
        for fpath in (faulty, fixed):
            if not fpath.is_file():
                raise ManifestError("%s: entry %s references missing file %s"
                                    % (path, eid, fpath))
        expected = None
        if "expected" in raw:
            if not isinstance(raw["expected"], list):
                raise ManifestError("%s: entry %s: 'expected' must be a list"
                                    % (path, eid))
            expected = _parse_classes(raw["expected"], "entry %s" % eid)
        entries.append(FaultEntry(id=eid, project=project, faulty=faulty,
                                  fixed=fixed, method=raw.get("method"),
                                  expected=expected))
    return entries


def load_graph(path: str | Path, method: str | None = None) -> FlowGraph:
    """Build a flow graph from a source file (.mj) or import one (.json)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return import_graph(text)
    program = minij.parse(text)
    return build_dfg(build_cfg(program, method))


@dataclass
class EntryResult:
    entry: FaultEntry
    classes: FaultClassSet | None = None
    error: str | None = None

    @property
    def fault_type(self) -> str | None:
        if self.classes is None or not self.classes.classes:
            return None
        return fault_type(self.classes.classes)


def classify_entry(entry: FaultEntry) -> EntryResult:
    """Classify one manifest entry; failures are captured, not raised."""
    try:
        faulty = load_graph(entry.faulty, entry.method)
        fixed = load_graph(entry.fixed, entry.method)
        return EntryResult(entry, classes=classify(faulty, fixed))
    except (OSError, ValueError, FormatError,
            minij.LexError, minij.ParseError) as exc:
        return EntryResult(entry, error="%s: %s" % (type(exc).__name__, exc))
    except UnclassifiedDiff as exc:
        return EntryResult(entry, error="UnclassifiedDiff: %s" % exc)


# --------------------------------------------------------------------------
# Label files
# --------------------------------------------------------------------------

LABEL_COLUMNS = ["project", "id"] + [c.value for c in CLASS_ORDER]


@dataclass(frozen=True)
class LabelRow:
    project: str
    id: str
    classes: frozenset[FaultClass]

    @property
    def key(self) -> tuple[str, str]:
        prefix = self.project + "-"
        short = self.id[len(prefix):] if self.id.startswith(prefix) else self.id
        return (self.project, short)


def read_labels(path: str | Path, column_map: dict[str, str] | None = None
                ) -> list[LabelRow]:
    """Read a label CSV.  `column_map` renames foreign headers to the
    canonical ones ({"bug": "id"}); unknown extra columns are ignored."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise LabelError("cannot read %s: %s" % (path, exc)) from None
    return parse_labels(text, column_map, source=str(path))


def parse_labels(text: str, column_map: dict[str, str] | None = None,
                 source: str = "<labels>") -> list[LabelRow]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise LabelError("%s: empty label file" % source) from None
    rename = column_map or {}
    names = [rename.get(h.strip(), h.strip()) for h in header]
    missing = [c for c in LABEL_COLUMNS if c not in names]
    if missing:
        raise LabelError("%s: missing columns: %s" % (source, ", ".join(missing)))
    index = {c: names.index(c) for c in LABEL_COLUMNS}
    rows: list[LabelRow] = []
    seen: set[tuple[str, str]] = set()
    for lineno, record in enumerate(reader, start=2):
        if not record or all(not cell.strip() for cell in record):
            continue
        if len(record) < len(names):
            raise LabelError("%s:%d: expected %d fields, got %d"
                             % (source, lineno, len(names), len(record)))
        project = record[index["project"]].strip()
        rid = record[index["id"]].strip()
        if not project or not rid:
            raise LabelError("%s:%d: empty project or id" % (source, lineno))
        classes = set()
        for cls in CLASS_ORDER:
            cell = record[index[cls.value]].strip()
            if cell not in ("0", "1"):
                raise LabelError("%s:%d: column %s must be 0 or 1, got %r"
                                 % (source, lineno, cls.value, cell))
            if cell == "1":
                classes.add(cls)
        if not classes:
            raise LabelError("%s:%d: no fault class set for %s-%s"
                             % (source, lineno, project, rid))
        row = LabelRow(project=project, id=rid, classes=frozenset(classes))
        if row.key in seen:
            raise LabelError("%s:%d: duplicate entry %s-%s"
                             % (source, lineno, project, rid))
        seen.add(row.key)
        rows.append(row)
    return rows


def format_labels(rows: list[LabelRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(LABEL_COLUMNS)
    for row in rows:
        writer.writerow([row.project, row.id]
                        + ["1" if c in row.classes else "0" for c in CLASS_ORDER])
    return out.getvalue()


def write_labels(rows: list[LabelRow], path: str | Path) -> None:
    Path(path).write_text(format_labels(rows))


# --------------------------------------------------------------------------
# Agreement between computed classes and reference labels
# --------------------------------------------------------------------------

RELATIONS = ("exact", "superset", "subset", "overlap", "disjoint", "unclassified")


def relation(actual: frozenset[FaultClass] | None,
             reference: frozenset[FaultClass]) -> str:
    if actual is None or not actual:
        return "unclassified"
    if actual == reference:
        return "exact"
    if actual > reference:
        return "superset"
    if actual < reference:
        return "subset"
    if actual & reference:
        return "overlap"
    return "disjoint"


@dataclass
class EntryAgreement:
    entry: FaultEntry
    reference: frozenset[FaultClass] | None
    actual: frozenset[FaultClass] | None
    relation: str | None  # None when the reference has no row for the entry
    error: str | None = None


@dataclass
class AgreementReport:
    items: list[EntryAgreement]
    unmatched_reference: list[LabelRow]  # label rows with no manifest entry
    counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.counts:
            counts: dict[str, int] = {r: 0 for r in RELATIONS}
            counts["missing-reference"] = 0
            for item in self.items:
                if item.relation is None:
                    counts["missing-reference"] += 1
                else:
                    counts[item.relation] += 1
            self.counts = counts


def compare(entries: list[FaultEntry], reference: list[LabelRow],
            results: list[EntryResult] | None = None) -> AgreementReport:
    """Classify the manifest entries and relate them to reference labels.

    Pass precomputed `results` (same order as `entries`) to skip the
    classification step, e.g. when the caller parallelized it.
    """
    by_key = {row.key: row for row in reference}
    if results is None:
        results = [classify_entry(entry) for entry in entries]
    items: list[EntryAgreement] = []
    used: set[tuple[str, str]] = set()
    for res in results:
        ref_row = by_key.get(res.entry.key)
        if ref_row is not None:
            used.add(ref_row.key)
        actual = None
        if res.classes is not None:
            actual = frozenset(res.classes.classes)
        rel = None
        if ref_row is not None:
            rel = relation(actual, ref_row.classes)
        items.append(EntryAgreement(entry=res.entry,
                                    reference=ref_row.classes if ref_row else None,
                                    actual=actual, relation=rel, error=res.error))
    unmatched = [row for row in reference if row.key not in used]
    return AgreementReport(items=items, unmatched_reference=unmatched)
