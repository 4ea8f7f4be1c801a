"""Serialization of flow graphs: JSON interchange format and DOT.

The interchange schema is fixed so graphs produced by other frontends can
be classified identically:

    {
      "nodes": [{"id", "kind", "label", "line", "defs", "uses"}, ...],
      "cfg":   [{"src", "dst", "kind"}, ...],
      "dfg":   [{"def", "use", "var"}, ...],
      "entry": <id>,
      "exit":  <id>
    }

`import_graph` re-validates every structural invariant the builder
guarantees and raises FormatError otherwise.
"""

from __future__ import annotations

import json

from ffc.flowgraph import (
    CFG_KINDS,
    CfgEdge,
    DfgEdge,
    FlowGraph,
    FlowNode,
    NODE_KINDS,
    reaching_definitions,
)


class FormatError(Exception):
    """Raised when an interchange document violates the graph invariants."""


def export_graph(g: FlowGraph, fmt: str = "interchange") -> str:
    if fmt == "interchange":
        return _to_json(g)
    if fmt == "dot":
        return _to_dot(g)
    raise ValueError("unknown format %r (expected 'interchange' or 'dot')" % fmt)


def _to_json(g: FlowGraph) -> str:
    doc = {
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                "label": n.label,
                "line": n.line,
                "defs": sorted(n.defs),
                "uses": sorted(n.uses),
            }
            for n in g.sorted_nodes()
        ],
        "cfg": [
            {"src": e.src, "dst": e.dst, "kind": e.kind}
            for e in sorted(g.cfg, key=lambda e: (e.src, e.dst, e.kind))
        ],
        "dfg": [
            {"def": e.def_node, "use": e.use_node, "var": e.var}
            for e in sorted(g.dfg, key=lambda e: (e.def_node, e.use_node, e.var))
        ],
        "entry": g.entry,
        "exit": g.exit,
    }
    return json.dumps(doc, indent=2) + "\n"


_DOT_SHAPES = {
    "entry": "oval",
    "exit": "oval",
    "statement": "box",
    "predicate": "diamond",
    "call-param": "component",
}


def _dot_quote(text: str) -> str:
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"')


def _to_dot(g: FlowGraph) -> str:
    lines = ["digraph flowgraph {"]
    if g.name:
        lines.append("    label=%s;" % _dot_quote(g.name))
    lines.append("    node [fontname=monospace];")
    for n in g.sorted_nodes():
        lines.append("    n%d [shape=%s, label=%s];"
                     % (n.id, _DOT_SHAPES[n.kind], _dot_quote(n.label)))
    for e in sorted(g.cfg, key=lambda e: (e.src, e.dst, e.kind)):
        attr = "" if e.kind == "seq" else " [label=%s]" % _dot_quote(e.kind)
        lines.append("    n%d -> n%d%s;" % (e.src, e.dst, attr))
    for e in sorted(g.dfg, key=lambda e: (e.def_node, e.use_node, e.var)):
        lines.append("    n%d -> n%d [style=dashed, color=gray40, label=%s];"
                     % (e.def_node, e.use_node, _dot_quote(e.var)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FormatError(message)


def import_graph(text: str | dict) -> FlowGraph:
    """Parse and validate an interchange document.

    Checks: schema shape, id uniqueness, kind enums, entry/exit discipline
    (no defs/uses on entry, no entry in-edges, no exit out-edges), CFG
    degree discipline (predicates branch, other interior nodes have exactly
    one out-edge), reachability both ways, and that every data-flow edge is
    a def-use pair backed by a def-clear CFG path.
    """
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError("not valid JSON: %s" % exc) from None
    _require(isinstance(doc, dict), "top level must be an object")
    for key in ("nodes", "cfg", "dfg", "entry", "exit"):
        _require(key in doc, "missing top-level key %r" % key)

    nodes: dict[int, FlowNode] = {}
    _require(isinstance(doc["nodes"], list), "'nodes' must be a list")
    for raw in doc["nodes"]:
        _require(isinstance(raw, dict), "node entries must be objects")
        for key in ("id", "kind", "label", "line", "defs", "uses"):
            _require(key in raw, "node missing key %r: %r" % (key, raw))
        nid = raw["id"]
        _require(isinstance(nid, int) and nid >= 0,
                 "node id must be a non-negative integer: %r" % nid)
        _require(nid not in nodes, "duplicate node id %d" % nid)
        _require(raw["kind"] in NODE_KINDS,
                 "node %d: unknown kind %r" % (nid, raw["kind"]))
        _require(isinstance(raw["label"], str), "node %d: label must be a string" % nid)
        _require(isinstance(raw["line"], int) and raw["line"] >= 0,
                 "node %d: line must be a non-negative integer" % nid)
        for key in ("defs", "uses"):
            _require(isinstance(raw[key], list)
                     and all(isinstance(v, str) and v for v in raw[key]),
                     "node %d: %s must be a list of non-empty strings" % (nid, key))
        nodes[nid] = FlowNode(nid, raw["kind"], raw["label"], raw["line"],
                              frozenset(raw["defs"]), frozenset(raw["uses"]))

    entry, exit_ = doc["entry"], doc["exit"]
    _require(entry in nodes, "entry id %r is not a node" % entry)
    _require(exit_ in nodes, "exit id %r is not a node" % exit_)
    _require(nodes[entry].kind == "entry", "entry node %d must have kind 'entry'" % entry)
    _require(nodes[exit_].kind == "exit", "exit node %d must have kind 'exit'" % exit_)
    for n in nodes.values():
        if n.kind == "entry":
            _require(n.id == entry, "extra entry node %d" % n.id)
            _require(not n.defs and not n.uses,
                     "entry node %d must have empty defs/uses" % n.id)
        if n.kind == "exit":
            _require(n.id == exit_, "extra exit node %d" % n.id)
        if n.kind == "predicate":
            _require(not n.defs, "predicate node %d must not define variables" % n.id)

    cfg: set[CfgEdge] = set()
    _require(isinstance(doc["cfg"], list), "'cfg' must be a list")
    for raw in doc["cfg"]:
        _require(isinstance(raw, dict), "cfg entries must be objects")
        for key in ("src", "dst", "kind"):
            _require(key in raw, "cfg edge missing key %r: %r" % (key, raw))
        _require(raw["src"] in nodes, "cfg edge source %r is not a node" % raw["src"])
        _require(raw["dst"] in nodes, "cfg edge target %r is not a node" % raw["dst"])
        _require(raw["kind"] in CFG_KINDS,
                 "cfg edge %r->%r: unknown kind %r" % (raw["src"], raw["dst"], raw["kind"]))
        edge = CfgEdge(raw["src"], raw["dst"], raw["kind"])
        _require(edge not in cfg, "duplicate cfg edge %r" % (raw,))
        cfg.add(edge)

    out_deg: dict[int, int] = {nid: 0 for nid in nodes}
    in_deg: dict[int, int] = {nid: 0 for nid in nodes}
    for e in cfg:
        out_deg[e.src] += 1
        in_deg[e.dst] += 1
    _require(in_deg[entry] == 0, "entry node must have no incoming CFG edges")
    _require(out_deg[exit_] == 0, "exit node must have no outgoing CFG edges")
    for n in nodes.values():
        if n.kind == "exit":
            continue
        if n.kind == "predicate":
            _require(out_deg[n.id] >= 2,
                     "predicate node %d must have at least 2 out-edges" % n.id)
            kinds = [e.kind for e in cfg if e.src == n.id]
            for k in ("true", "false"):
                _require(kinds.count(k) <= 1,
                         "predicate node %d has %d %r edges" % (n.id, kinds.count(k), k))
        else:
            _require(out_deg[n.id] == 1,
                     "node %d (%s) must have exactly 1 out-edge, has %d"
                     % (n.id, n.kind, out_deg[n.id]))

    succ: dict[int, list[int]] = {nid: [] for nid in nodes}
    pred: dict[int, list[int]] = {nid: [] for nid in nodes}
    for e in cfg:
        succ[e.src].append(e.dst)
        pred[e.dst].append(e.src)
    _require(_covers(entry, succ), "some nodes are unreachable from entry")
    _require(_covers(exit_, pred), "some nodes cannot reach exit")

    dfg: set[DfgEdge] = set()
    _require(isinstance(doc["dfg"], list), "'dfg' must be a list")
    for raw in doc["dfg"]:
        _require(isinstance(raw, dict), "dfg entries must be objects")
        for key in ("def", "use", "var"):
            _require(key in raw, "dfg edge missing key %r: %r" % (key, raw))
        d, u, var = raw["def"], raw["use"], raw["var"]
        _require(d in nodes, "dfg edge def %r is not a node" % d)
        _require(u in nodes, "dfg edge use %r is not a node" % u)
        _require(isinstance(var, str) and var, "dfg edge variable must be non-empty")
        _require(var in nodes[d].defs,
                 "dfg edge %d->%d: %r not defined at node %d" % (d, u, var, d))
        _require(var in nodes[u].uses,
                 "dfg edge %d->%d: %r not used at node %d" % (d, u, var, u))
        dfg.add(DfgEdge(d, u, var))

    g = FlowGraph(nodes=nodes, cfg=frozenset(cfg), dfg=frozenset(dfg),
                  entry=entry, exit=exit_)
    ins = reaching_definitions(g)
    for e in dfg:
        _require((e.var, e.def_node) in ins[e.use_node],
                 "dfg edge %d->%d for %r has no def-clear CFG path"
                 % (e.def_node, e.use_node, e.var))
    return g


def _covers(start: int, adjacency: dict[int, list[int]]) -> bool:
    seen = {start}
    queue = [start]
    while queue:
        for nxt in adjacency[queue.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == len(adjacency)
