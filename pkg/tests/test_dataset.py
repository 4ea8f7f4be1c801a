"""Manifest loading, label files, and agreement reports."""

import json

import pytest

from ffc.classifier import FaultClass
from ffc.dataset import (
    LABEL_COLUMNS, RELATIONS, AgreementReport, FaultEntry, LabelError,
    LabelRow, ManifestError, classify_entry, compare, format_labels,
    load_graph, load_manifest, parse_labels, read_labels, relation,
    write_labels,
)
from ffc.golden import expected_path, manifest_path
from ffc.graphio import export_graph


# --------------------------------------------------------------------------
# Manifests
# --------------------------------------------------------------------------


def test_bundled_manifest_loads(golden_entries):
    assert len(golden_entries) == 14
    assert len({e.id for e in golden_entries}) == 14
    for entry in golden_entries:
        assert entry.project == entry.id.split("-")[0]
        assert entry.faulty.is_file() and entry.fixed.is_file()


def test_short_id_and_key():
    e = FaultEntry(id="Lang-62", project="Lang", faulty=manifest_path(),
                   fixed=manifest_path())
    assert e.short_id == "62"
    assert e.key == ("Lang", "62")
    odd = FaultEntry(id="weird", project="Lang", faulty=manifest_path(),
                     fixed=manifest_path())
    assert odd.short_id == "weird"


def _write_manifest(tmp_path, doc):
    p = tmp_path / "manifest.json"
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return p


def test_manifest_rejects_invalid_json(tmp_path):
    p = _write_manifest(tmp_path, "{nope")
    with pytest.raises(ManifestError, match="not valid JSON"):
        load_manifest(p)


def test_manifest_rejects_missing_entries_list(tmp_path):
    p = _write_manifest(tmp_path, {"items": []})
    with pytest.raises(ManifestError, match="'entries' list"):
        load_manifest(p)


def test_manifest_rejects_entry_without_id(tmp_path):
    (tmp_path / "a.mj").write_text("void f() { }")
    p = _write_manifest(tmp_path, {"entries": [{"faulty": "a.mj", "fixed": "a.mj"}]})
    with pytest.raises(ManifestError, match="missing 'id'"):
        load_manifest(p)


def test_manifest_rejects_duplicate_ids(tmp_path):
    (tmp_path / "a.mj").write_text("void f() { }")
    entry = {"id": "X-1", "faulty": "a.mj", "fixed": "a.mj"}
    p = _write_manifest(tmp_path, {"entries": [entry, dict(entry)]})
    with pytest.raises(ManifestError, match="duplicate entry id"):
        load_manifest(p)


def test_manifest_rejects_missing_file(tmp_path):
    p = _write_manifest(tmp_path, {"entries": [
        {"id": "X-1", "faulty": "gone.mj", "fixed": "gone.mj"}]})
    with pytest.raises(ManifestError, match="missing file"):
        load_manifest(p)


def test_manifest_rejects_unknown_expected_class(tmp_path):
    (tmp_path / "a.mj").write_text("void f() { }")
    p = _write_manifest(tmp_path, {"entries": [
        {"id": "X-1", "faulty": "a.mj", "fixed": "a.mj", "expected": ["oops"]}]})
    with pytest.raises(ManifestError, match="unknown fault class"):
        load_manifest(p)


def test_manifest_reads_method_and_expected(tmp_path):
    (tmp_path / "a.mj").write_text("void f() { }\nvoid g() { }")
    p = _write_manifest(tmp_path, {"entries": [
        {"id": "X-1", "project": "Custom", "faulty": "a.mj", "fixed": "a.mj",
         "method": "g", "expected": ["jump", "def"]}]})
    [entry] = load_manifest(p)
    assert entry.project == "Custom"
    assert entry.method == "g"
    assert entry.expected == {FaultClass.JUMP, FaultClass.DEF}


# --------------------------------------------------------------------------
# Graph loading
# --------------------------------------------------------------------------


def test_load_graph_parses_source(tmp_path):
    p = tmp_path / "m.mj"
    p.write_text("int f(int a) { return a + 1; }")
    g = load_graph(p)
    assert g.name == "f"


def test_load_graph_selects_method(tmp_path):
    p = tmp_path / "m.mj"
    p.write_text("void f() { a(); }\nvoid g() { b(); }")
    assert load_graph(p, "g").name == "g"


def test_load_graph_imports_json(tmp_path):
    src = tmp_path / "m.mj"
    src.write_text("int f(int a) { return a + 1; }")
    built = load_graph(src)
    js = tmp_path / "m.json"
    js.write_text(export_graph(built, "interchange"))
    imported = load_graph(js)
    assert {n.kind for n in imported.nodes.values()} \
        == {n.kind for n in built.nodes.values()}


def test_classify_entry_captures_parse_failure(tmp_path):
    bad = tmp_path / "bad.mj"
    bad.write_text("void f( {")
    ok = tmp_path / "ok.mj"
    ok.write_text("void f() { }")
    entry = FaultEntry(id="X-1", project="X", faulty=bad, fixed=ok)
    result = classify_entry(entry)
    assert result.classes is None
    assert result.error and "ParseError" in result.error
    assert result.fault_type is None


def test_classify_entry_captures_unclassified_diff(tmp_path):
    def doc(label):
        return json.dumps({
            "entry": 0, "exit": 2,
            "nodes": [
                {"id": 0, "kind": "entry", "label": "entry", "line": 1,
                 "defs": [], "uses": []},
                {"id": 1, "kind": "statement", "label": label, "line": 2,
                 "defs": [], "uses": []},
                {"id": 2, "kind": "exit", "label": "exit", "line": 3,
                 "defs": [], "uses": []},
            ],
            "cfg": [{"src": 0, "dst": 1, "kind": "seq"},
                    {"src": 1, "dst": 2, "kind": "seq"}],
            "dfg": [],
        })

    fa = tmp_path / "f.json"
    fa.write_text(doc("noop"))
    fb = tmp_path / "r.json"
    fb.write_text(doc("noop2"))
    entry = FaultEntry(id="X-1", project="X", faulty=fa, fixed=fb)
    result = classify_entry(entry)
    assert result.classes is None
    assert result.error and "UnclassifiedDiff" in result.error


def test_classify_entry_succeeds_on_bundled_pair(golden_entries):
    entry = next(e for e in golden_entries if e.id == "Lang-62")
    result = classify_entry(entry)
    assert result.error is None
    assert result.classes.classes == {FaultClass.JUMP}
    assert result.fault_type == "pure-CF"


# --------------------------------------------------------------------------
# Label files
# --------------------------------------------------------------------------


def test_label_columns_shape():
    assert LABEL_COLUMNS[:2] == ["project", "id"]
    assert len(LABEL_COLUMNS) == 10


def test_bundled_expected_labels_parse(golden_entries):
    rows = read_labels(expected_path())
    assert len(rows) == 14
    assert {r.key for r in rows} == {e.key for e in golden_entries}
    for row in rows:
        assert row.classes


def test_label_roundtrip(tmp_path):
    rows = [
        LabelRow("Lang", "62", frozenset({FaultClass.JUMP})),
        LabelRow("Math", "46", frozenset({FaultClass.DEF, FaultClass.USE})),
    ]
    p = tmp_path / "labels.csv"
    write_labels(rows, p)
    assert read_labels(p) == rows


def test_format_labels_is_binary_matrix():
    rows = [LabelRow("Lang", "62", frozenset({FaultClass.JUMP}))]
    text = format_labels(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(LABEL_COLUMNS)
    assert lines[1] == "Lang,62,0,1,0,0,0,0,0,0"


def test_parse_labels_applies_column_map():
    text = "proj,bug,order,jump,call,pred,guard,block,def,use\nLang,62,0,1,0,0,0,0,0,0\n"
    rows = parse_labels(text, column_map={"proj": "project", "bug": "id"})
    assert rows == [LabelRow("Lang", "62", frozenset({FaultClass.JUMP}))]


def test_parse_labels_ignores_extra_columns():
    text = ("project,id,notes,order,jump,call,pred,guard,block,def,use\n"
            "Lang,62,hi there,0,1,0,0,0,0,0,0\n")
    [row] = parse_labels(text)
    assert row.classes == {FaultClass.JUMP}


def test_parse_labels_skips_blank_lines():
    text = ",".join(LABEL_COLUMNS) + "\n\nLang,62,0,1,0,0,0,0,0,0\n  ,\n"
    assert len(parse_labels(text)) == 1


@pytest.mark.parametrize("text,message", [
    ("", "empty label file"),
    ("project,order\n", "missing columns"),
    (",".join(LABEL_COLUMNS) + "\nLang,62,0,2,0,0,0,0,0,0\n", "must be 0 or 1"),
    (",".join(LABEL_COLUMNS) + "\nLang,62,0,0,0,0,0,0,0,0\n", "no fault class"),
    (",".join(LABEL_COLUMNS) + "\nLang,62,0,1,0,0,0,0,0,0\n"
     "Lang,62,1,0,0,0,0,0,0,0\n", "duplicate entry"),
    (",".join(LABEL_COLUMNS) + "\nLang,62,0,1\n", "expected 10 fields"),
    (",".join(LABEL_COLUMNS) + "\n,62,0,1,0,0,0,0,0,0\n", "empty project or id"),
])
def test_parse_labels_rejects_malformed(text, message):
    with pytest.raises(LabelError, match=message):
        parse_labels(text)


def test_label_key_strips_project_prefix():
    assert LabelRow("Lang", "Lang-62", frozenset({FaultClass.JUMP})).key \
        == ("Lang", "62")
    assert LabelRow("Lang", "62", frozenset({FaultClass.JUMP})).key \
        == ("Lang", "62")


# --------------------------------------------------------------------------
# Agreement
# --------------------------------------------------------------------------


J = frozenset({FaultClass.JUMP})
JD = frozenset({FaultClass.JUMP, FaultClass.DEF})
U = frozenset({FaultClass.USE})


@pytest.mark.parametrize("actual,reference,expected", [
    (J, J, "exact"),
    (JD, J, "superset"),
    (J, JD, "subset"),
    (JD, frozenset({FaultClass.DEF, FaultClass.USE}), "overlap"),
    (J, U, "disjoint"),
    (None, J, "unclassified"),
    (frozenset(), J, "unclassified"),
])
def test_relation_values(actual, reference, expected):
    assert expected in RELATIONS
    assert relation(actual, reference) == expected


def test_compare_bundled_corpus_is_all_exact(golden_entries):
    report = compare(golden_entries, read_labels(expected_path()))
    assert report.counts["exact"] == 14
    assert sum(report.counts.values()) == 14
    assert not report.unmatched_reference


def test_compare_counts_missing_reference(golden_entries):
    reference = [r for r in read_labels(expected_path())
                 if r.key != ("Lang", "62")]
    report = compare(golden_entries, reference)
    assert report.counts["missing-reference"] == 1
    assert report.counts["exact"] == 13


def test_compare_reports_unmatched_reference_rows(golden_entries):
    reference = read_labels(expected_path()) + [LabelRow("Fake", "1", J)]
    report = compare(golden_entries, reference)
    assert [r.key for r in report.unmatched_reference] == [("Fake", "1")]


def test_compare_accepts_precomputed_results(golden_entries):
    reference = read_labels(expected_path())
    results = [classify_entry(e) for e in golden_entries]
    direct = compare(golden_entries, reference)
    precomputed = compare(golden_entries, reference, results=results)
    assert precomputed.counts == direct.counts


def test_agreement_report_counts_are_stable():
    report = AgreementReport(items=[], unmatched_reference=[])
    assert report.counts["exact"] == 0
    assert "missing-reference" in report.counts
