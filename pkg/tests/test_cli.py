"""Command-line behaviour.

Most checks drive ``ffc.cli.main`` in-process for speed; a few run the
installed ``ffc`` script in a subprocess to pin down exit codes, stream
separation, environment handling, and byte determinism.
"""

import json
import os
import subprocess
import sys

import pytest

from ffc.cli import main
from ffc.dataset import LABEL_COLUMNS
from ffc.golden import aggregates_path, expected_path, manifest_path

MANIFEST = str(manifest_path())
EXPECTED = str(expected_path())
AGGREGATES = str(aggregates_path())


@pytest.fixture(autouse=True)
def plain_output(monkeypatch):
    monkeypatch.delenv("FFC_COLOR", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_script(*argv, env_extra=None, cwd=None):
    env = dict(os.environ)
    env.pop("FFC_COLOR", None)
    env.update(env_extra or {})
    return subprocess.run(["ffc", *argv], capture_output=True, text=True,
                          env=env, cwd=cwd, timeout=120)


@pytest.fixture
def source(tmp_path):
    p = tmp_path / "sample.mj"
    p.write_text("""
        int clamp(int v, int lo, int hi) {
            if (v < lo) { return lo; }
            if (v > hi) { return hi; }
            return v;
        }
    """)
    return str(p)


# --------------------------------------------------------------------------
# parse
# --------------------------------------------------------------------------


def test_parse_lists_methods(capsys, source):
    code, out, err = run(capsys, "parse", source)
    assert code == 0
    assert out == "clamp(v, lo, hi)\n"
    assert err == ""


def test_parse_emit_ast(capsys, source):
    code, out, _ = run(capsys, "parse", source, "--emit-ast", "--method", "clamp")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "clamp"


def test_parse_reports_syntax_error(capsys, tmp_path):
    p = tmp_path / "bad.mj"
    p.write_text("void f( {")
    code, out, err = run(capsys, "parse", str(p))
    assert code == 1
    assert out == ""
    assert err.startswith("ffc: error:")


def test_parse_missing_file(capsys):
    code, _, err = run(capsys, "parse", "/nonexistent.mj")
    assert code == 1
    assert "ffc: error:" in err


def test_parse_unknown_method(capsys, source):
    code, _, err = run(capsys, "parse", source, "--method", "nope")
    assert code == 1
    assert "no method named" in err


# --------------------------------------------------------------------------
# graph
# --------------------------------------------------------------------------


def test_graph_emits_interchange_json(capsys, source):
    code, out, _ = run(capsys, "graph", source)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"entry", "exit", "nodes", "cfg", "dfg"}


def test_graph_emits_dot(capsys, source):
    code, out, _ = run(capsys, "graph", source, "--dot")
    assert code == 0
    assert out.startswith("digraph")


def test_graph_writes_output_file(capsys, source, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "graph", source, "-o", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["nodes"]


def test_graph_warnings_go_to_stderr(capsys, tmp_path):
    p = tmp_path / "w.mj"
    p.write_text("void f(int x) { int y; use(y); }")
    code, out, err = run(capsys, "graph", str(p))
    assert code == 0
    assert json.loads(out)
    assert "ffc: warning:" in err


# --------------------------------------------------------------------------
# classify
# --------------------------------------------------------------------------


def test_classify_csv_matches_bundled_labels(capsys):
    code, out, err = run(capsys, "classify", "--manifest", MANIFEST)
    assert code == 0
    assert err == ""
    with open(EXPECTED) as fh:
        assert out == fh.read()


def test_classify_json_shape(capsys):
    code, out, _ = run(capsys, "classify", "--manifest", MANIFEST,
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["entries"]) == 14
    by_id = {e["id"]: e for e in doc["entries"]}
    lang62 = by_id["Lang-62"]
    assert lang62["classes"] == ["jump"]
    assert lang62["fault_type"] == "pure-CF"
    assert lang62["evidence"]["jump"]
    assert "alignment" not in lang62


def test_classify_emit_alignment(capsys):
    code, out, _ = run(capsys, "classify", "--manifest", MANIFEST,
                       "--format", "json", "--emit-alignment")
    assert code == 0
    doc = json.loads(doc_text := out)
    entry = doc["entries"][0]
    assert {"pairs", "deleted", "inserted"} <= set(entry["alignment"])
    assert entry["alignment"]["pairs"][0]["status"]
    assert doc_text == out


def test_classify_emit_alignment_requires_json(capsys):
    code, _, err = run(capsys, "classify", "--manifest", MANIFEST,
                       "--emit-alignment")
    assert code == 2
    assert "requires --format json" in err


def test_classify_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--manifest", MANIFEST,
                       "--format", "text")
    assert code == 0
    assert "Lang-62: jump [pure-CF]" in out
    assert "Math-46: def+use [pure-DF]" in out
    assert "Jsoup-57: call+use [mixed]" in out


def test_classify_reports_entry_errors(capsys, tmp_path):
    (tmp_path / "bad.mj").write_text("void f( {")
    (tmp_path / "ok.mj").write_text("void f() { a(); }")
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps({"entries": [
        {"id": "X-1", "faulty": "bad.mj", "fixed": "ok.mj"},
        {"id": "X-2", "faulty": "ok.mj", "fixed": "ok.mj"},
    ]}))
    code, out, err = run(capsys, "classify", "--manifest", str(manifest))
    assert code == 1
    assert "ffc: error: X-1" in err
    assert "ffc: note: X-2" in err and "identical" in err
    assert out == ",".join(LABEL_COLUMNS) + "\n"  # header only


def test_classify_identical_pair_is_not_an_error(capsys, tmp_path):
    (tmp_path / "ok.mj").write_text("void f() { a(); }")
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps({"entries": [
        {"id": "X-1", "faulty": "ok.mj", "fixed": "ok.mj"}]}))
    code, out, err = run(capsys, "classify", "--manifest", str(manifest),
                         "--format", "text")
    assert code == 0
    assert "no differences" in out


def test_classify_bad_manifest(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text("{")
    code, _, err = run(capsys, "classify", "--manifest", str(p))
    assert code == 1
    assert "ffc: error:" in err


def test_classify_rejects_zero_jobs():
    with pytest.raises(SystemExit) as excinfo:
        main(["classify", "--manifest", MANIFEST, "--jobs", "0"])
    assert excinfo.value.code == 2


# --------------------------------------------------------------------------
# stats
# --------------------------------------------------------------------------


def test_stats_aggregates_table(capsys):
    code, out, _ = run(capsys, "stats", "--aggregates", AGGREGATES)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("project,kloc,order,jump,")
    assert lines[-1] == "All,342,16,63,139,104,194,94,330,56,2.04,1.03,154,81,253,488"


def test_stats_aggregates_partition(capsys):
    code, out, _ = run(capsys, "stats", "--aggregates", AGGREGATES,
                       "--partition")
    assert code == 0
    assert out == ("fault_type,pct\n"
                   "pure-CF,31.6\n"
                   "pure-DF,16.6\n"
                   "mixed,51.8\n")


def test_stats_labels_table(capsys):
    code, out, _ = run(capsys, "stats", "--labels", EXPECTED)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1].startswith("All,,")  # no kloc for label-derived rows
    assert lines[-1].endswith(",14")


def test_stats_labels_distribution(capsys):
    code, out, _ = run(capsys, "stats", "--labels", EXPECTED,
                       "--distribution", "--by-project")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "project,total,min,q1,median,q3,max,n1,n2,n3,n4,n5,n6,n7,n8"
    assert lines[-1].startswith("All,14,1,")


def test_stats_aggregates_distribution_is_an_error(capsys):
    code, _, err = run(capsys, "stats", "--aggregates", AGGREGATES,
                       "--distribution")
    assert code == 1
    assert "needs --labels" in err


def test_stats_requires_a_source():
    with pytest.raises(SystemExit) as excinfo:
        main(["stats"])
    assert excinfo.value.code == 2


def test_stats_rejects_both_sources():
    with pytest.raises(SystemExit) as excinfo:
        main(["stats", "--labels", EXPECTED, "--aggregates", AGGREGATES])
    assert excinfo.value.code == 2


def test_stats_renders_figure(capsys, tmp_path):
    figdir = tmp_path / "figs"
    code, out, err = run(capsys, "stats", "--aggregates", AGGREGATES,
                         "--figures", str(figdir))
    assert code == 0
    assert (figdir / "frequencies.png").read_bytes()[:4] == b"\x89PNG"
    assert "ffc: wrote" in err
    assert out.splitlines()[-1].startswith("All,")


def test_stats_renders_distribution_figure(capsys, tmp_path):
    figdir = tmp_path / "figs"
    code, _, _ = run(capsys, "stats", "--labels", EXPECTED, "--distribution",
                     "--figures", str(figdir))
    assert code == 0
    assert (figdir / "distribution.png").is_file()


# --------------------------------------------------------------------------
# cooccur
# --------------------------------------------------------------------------


def test_cooccur_percentages(capsys):
    code, out, _ = run(capsys, "cooccur", "--labels", EXPECTED)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "class,order,jump,call,pred,guard,block,def,use"
    cells = {line.split(",")[0]: line.split(",")[1:] for line in lines[1:]}
    names = lines[0].split(",")[1:]
    for i, name in enumerate(names):
        assert cells[name][i] == "100.0"  # every class occurs in the corpus


def test_cooccur_counts(capsys, tmp_path):
    code, out, _ = run(capsys, "cooccur", "--labels", EXPECTED, "--counts")
    assert code == 0
    body = [line.split(",")[1:] for line in out.splitlines()[1:]]
    assert all(cell.isdigit() for cols in body for cell in cols)


def test_cooccur_empty_class_cells_are_blank(capsys, tmp_path):
    labels = tmp_path / "l.csv"
    labels.write_text("project,id,order,jump,call,pred,guard,block,def,use\n"
                      "A,1,0,1,0,0,0,0,0,0\n")
    code, out, _ = run(capsys, "cooccur", "--labels", str(labels))
    assert code == 0
    rows = {line.split(",")[0]: line for line in out.splitlines()[1:]}
    assert rows["order"] == "order,,,,,,,,"
    assert rows["jump"].split(",")[2] == "100.0"


def test_cooccur_renders_figure(capsys, tmp_path):
    figdir = tmp_path / "figs"
    code, _, err = run(capsys, "cooccur", "--labels", EXPECTED,
                       "--figures", str(figdir))
    assert code == 0
    assert (figdir / "cooccurrence.png").is_file()
    assert "ffc: wrote" in err


# --------------------------------------------------------------------------
# compare
# --------------------------------------------------------------------------


def test_compare_bundled_corpus(capsys):
    code, out, _ = run(capsys, "compare", "--manifest", MANIFEST,
                       "--labels", EXPECTED)
    assert code == 0
    lines = out.splitlines()
    assert "Lang-62: exact (reference=jump actual=jump)" in lines
    assert lines[-1].startswith("summary: exact=14 ")
    assert "total=14" in lines[-1]


def test_compare_csv(capsys):
    code, out, _ = run(capsys, "compare", "--manifest", MANIFEST,
                       "--labels", EXPECTED, "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "id,project,relation,reference,actual,error"
    assert len(lines) == 15
    assert all(line.split(",")[2] == "exact" for line in lines[1:])


def test_compare_reports_unmatched_reference(capsys, tmp_path):
    labels = tmp_path / "ref.csv"
    with open(EXPECTED) as fh:
        labels.write_text(fh.read() + "Fake,1,0,1,0,0,0,0,0,0\n")
    code, out, _ = run(capsys, "compare", "--manifest", MANIFEST,
                       "--labels", str(labels))
    assert code == 0
    assert "unmatched reference label: Fake-1" in out


def test_compare_missing_reference_row(capsys, tmp_path):
    labels = tmp_path / "ref.csv"
    with open(EXPECTED) as fh:
        kept = [line for line in fh.read().splitlines()
                if not line.startswith("Lang,62")]
    labels.write_text("\n".join(kept) + "\n")
    code, out, _ = run(capsys, "compare", "--manifest", MANIFEST,
                       "--labels", str(labels))
    assert code == 0
    assert "Lang-62: missing-reference" in out
    assert "missing-reference=1" in out


# --------------------------------------------------------------------------
# installed script: exit codes, environment, determinism
# --------------------------------------------------------------------------


def test_script_help():
    proc = run_script("--help")
    assert proc.returncode == 0
    assert "classify" in proc.stdout


def test_script_usage_error_is_exit_2():
    proc = run_script("no-such-command")
    assert proc.returncode == 2
    assert proc.stdout == ""


def test_script_domain_error_is_exit_1(tmp_path):
    proc = run_script("parse", str(tmp_path / "missing.mj"))
    assert proc.returncode == 1


def test_color_opt_in():
    plain = run_script("classify", "--manifest", MANIFEST, "--format", "text")
    colored = run_script("classify", "--manifest", MANIFEST, "--format", "text",
                         env_extra={"FFC_COLOR": "1"})
    off = run_script("classify", "--manifest", MANIFEST, "--format", "text",
                     env_extra={"FFC_COLOR": "0"})
    assert "\x1b[" not in plain.stdout
    assert "\x1b[32m" in colored.stdout
    assert off.stdout == plain.stdout


def test_classify_output_is_deterministic():
    first = run_script("classify", "--manifest", MANIFEST, "--format", "json")
    second = run_script("classify", "--manifest", MANIFEST, "--format", "json")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_classify_output_is_independent_of_jobs():
    serial = run_script("classify", "--manifest", MANIFEST, "--jobs", "1")
    parallel = run_script("classify", "--manifest", MANIFEST, "--jobs", "4")
    assert serial.returncode == parallel.returncode == 0
    assert serial.stdout == parallel.stdout


def test_compare_output_is_independent_of_jobs():
    serial = run_script("compare", "--manifest", MANIFEST,
                        "--labels", EXPECTED, "--jobs", "1")
    parallel = run_script("compare", "--manifest", MANIFEST,
                          "--labels", EXPECTED, "--jobs", "4")
    assert serial.stdout == parallel.stdout


def test_module_invocation():
    proc = subprocess.run([sys.executable, "-m", "ffc", "--help"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "usage: ffc" in proc.stdout
