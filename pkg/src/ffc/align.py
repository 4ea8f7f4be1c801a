"""Node correspondence between the faulty and the fixed flow graph.

The two graphs of a bug are mostly identical; alignment recovers that
correspondence without assuming equal node numbering.  Interior nodes are
linearized in a deterministic DFS preorder, anchored by a longest common
subsequence over (kind, normalized label), and the gaps between anchors
are paired up heuristically: first same-kind nodes with equal def sets in
order, then remaining same-kind nodes in order.  Unpaired gap nodes are
deletions (faulty side) or insertions (fixed side).  Entry and exit always
pair with each other.

The exact anchoring scheme is a design choice of this toolkit; detectors
downstream only rely on the pair/deleted/inserted partition it yields.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ffc.flowgraph import CfgEdge, DfgEdge, FlowGraph, FlowNode

# Edge-kind priorities for the preorder walk: fall-through flavors first,
# then branch arms in source order, jumps last.
_WALK_PRIORITY = {
    "seq": 0, "call": 0, "fallthrough": 0,
    "true": 1, "case": 2, "false": 3,
    "jump-break": 4, "jump-continue": 4, "jump-return": 4, "jump-throw": 4,
}


def normalized_label(label: str) -> str:
    """Collapse whitespace and drop a trailing ';' so that cosmetically
    different frontends produce comparable labels."""
    text = " ".join(label.split())
    return text[:-1].rstrip() if text.endswith(";") else text


def node_order(g: FlowGraph) -> list[int]:
    """Deterministic source-order linearization of interior nodes.

    Reverse post-order of a DFS that visits low-priority successors first:
    then-branches precede else-branches, case arms follow label order,
    loop bodies precede the code after the loop.  Entry/exit excluded.
    """

    def children(nid: int) -> list[int]:
        succ = sorted(
            g.out_edges(nid),
            key=lambda e: (_WALK_PRIORITY.get(e.kind, 5),
                           g.nodes[e.dst].line, e.dst),
            reverse=True,
        )
        return [e.dst for e in succ]

    post: list[int] = []
    visited = {g.entry}
    frames: list[list] = [[g.entry, children(g.entry), 0]]
    while frames:
        frame = frames[-1]
        nid, kids, idx = frame
        if idx < len(kids):
            frame[2] += 1
            child = kids[idx]
            if child not in visited:
                visited.add(child)
                frames.append([child, children(child), 0])
        else:
            post.append(nid)
            frames.pop()
    order = [nid for nid in reversed(post) if nid not in (g.entry, g.exit)]
    for nid in sorted(g.nodes):  # unreachable nodes would land here
        if nid not in visited and nid not in (g.entry, g.exit):
            order.append(nid)
    return order


@dataclass
class Alignment:
    """Pairing of faulty nodes (left) with fixed nodes (right)."""

    pairs: list[tuple[int, int, str]]  # (faulty id, fixed id, "identical"|"modified")
    deleted: list[int]                 # faulty-only nodes
    inserted: list[int]                # fixed-only nodes
    f_to_r: dict[int, int] = field(default_factory=dict)
    r_to_f: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.f_to_r:
            self.f_to_r = {f: r for f, r, _ in self.pairs}
        if not self.r_to_f:
            self.r_to_f = {r: f for f, r, _ in self.pairs}

    def status(self, faulty_id: int) -> str | None:
        for f, _, s in self.pairs:
            if f == faulty_id:
                return s
        return None


def _key(node: FlowNode) -> tuple[str, str]:
    return (node.kind, normalized_label(node.label))


def _lcs_pairs(a: list[tuple[str, str]], b: list[tuple[str, str]]) -> list[tuple[int, int]]:
    """Index pairs of one longest common subsequence.

    Ties in the DP table advance the faulty side first, so the match at
    each step is the earliest available on both sides; this makes
    align(f, r) and align(r, f) mirror images on corpora without
    ambiguous repeats.
    """
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, nxt = dp[i], dp[i + 1]
        for j in range(m - 1, -1, -1):
            row[j] = nxt[j + 1] + 1 if a[i] == b[j] else max(nxt[j], row[j + 1])
    out = []
    i = j = 0
    while i < n and j < m:
        if a[i] == b[j] and dp[i][j] == dp[i + 1][j + 1] + 1:
            out.append((i, j))
            i += 1
            j += 1
        elif dp[i + 1][j] >= dp[i][j + 1]:
            i += 1
        else:
            j += 1
    return out


def _pair_gap(f_nodes: list[FlowNode], r_nodes: list[FlowNode]
              ) -> list[tuple[int, int]]:
    """Match leftover same-kind nodes between two anchors as modified pairs."""
    taken_r: set[int] = set()
    matches: list[tuple[int, int, int]] = []  # (f pos, r pos, pass rank)
    matched_f: set[int] = set()
    # Pass 1: same kind and identical def sets, in order.
    for fi, fn in enumerate(f_nodes):
        for ri, rn in enumerate(r_nodes):
            if ri in taken_r:
                continue
            if fn.kind == rn.kind and fn.defs == rn.defs:
                matches.append((fi, ri, 1))
                taken_r.add(ri)
                matched_f.add(fi)
                break
    # Pass 2: same kind, in order.
    for fi, fn in enumerate(f_nodes):
        if fi in matched_f:
            continue
        for ri, rn in enumerate(r_nodes):
            if ri in taken_r:
                continue
            if fn.kind == rn.kind:
                matches.append((fi, ri, 2))
                taken_r.add(ri)
                break
    # Crossing pairs would invert statement order inside a gap; drop the
    # later-starting one to keep the pairing order-preserving per pass.
    matches.sort()
    kept: list[tuple[int, int]] = []
    last_r_by_rank: dict[int, int] = {}
    for fi, ri, rank in matches:
        if ri < last_r_by_rank.get(rank, -1):
            continue
        last_r_by_rank[rank] = ri
        kept.append((fi, ri))
    return [(f_nodes[fi].id, r_nodes[ri].id) for fi, ri in sorted(kept)]


def align(faulty: FlowGraph, fixed: FlowGraph) -> Alignment:
    """Align the two graphs of one bug.

    Unchanged nodes pair as "identical"; gap-matched nodes pair as
    "modified" (always same kind); everything else is deleted/inserted.
    Identical graphs align with zero deletions, insertions, or
    modifications.
    """
    forder = node_order(faulty)
    rorder = node_order(fixed)
    fkeys = [_key(faulty.nodes[i]) for i in forder]
    rkeys = [_key(fixed.nodes[i]) for i in rorder]
    anchors = _lcs_pairs(fkeys, rkeys)

    pairs: list[tuple[int, int, str]] = [
        (faulty.entry, fixed.entry, "identical"),
        (faulty.exit, fixed.exit, "identical"),
    ]
    deleted: list[int] = []
    inserted: list[int] = []

    bounds = [(-1, -1)] + anchors + [(len(forder), len(rorder))]
    for (fi, ri) in anchors:
        pairs.append((forder[fi], rorder[ri], "identical"))
    for (f_lo, r_lo), (f_hi, r_hi) in zip(bounds, bounds[1:]):
        gap_f = [faulty.nodes[forder[i]] for i in range(f_lo + 1, f_hi)]
        gap_r = [fixed.nodes[rorder[j]] for j in range(r_lo + 1, r_hi)]
        gap_pairs = _pair_gap(gap_f, gap_r)
        paired_f = {f for f, _ in gap_pairs}
        paired_r = {r for _, r in gap_pairs}
        for f, r in gap_pairs:
            pairs.append((f, r, "modified"))
        deleted.extend(n.id for n in gap_f if n.id not in paired_f)
        inserted.extend(n.id for n in gap_r if n.id not in paired_r)

    pairs.sort(key=lambda p: (p[0], p[1]))
    return Alignment(pairs=pairs, deleted=sorted(deleted), inserted=sorted(inserted))


@dataclass
class EdgeDiff:
    """CFG and DFG edges that fail to carry over through the alignment."""

    # (faulty edge or None, fixed edge or None); both present = changed in place
    cfg_changed: list[tuple[CfgEdge | None, CfgEdge | None]]
    dfg_changed: list[tuple[DfgEdge | None, DfgEdge | None]]

    def is_empty(self) -> bool:
        return not self.cfg_changed and not self.dfg_changed


def edge_diff(faulty: FlowGraph, fixed: FlowGraph, alignment: Alignment) -> EdgeDiff:
    """Edges with no image on the other side under the node alignment.

    A faulty edge whose endpoints are both aligned and whose image (same
    kind) exists in the fixed graph carries over; anything else is
    reported.  Faulty/fixed leftovers sharing an aligned source pair up as
    in-place changes.
    """
    m, inv = alignment.f_to_r, alignment.r_to_f

    cfg_f = []
    for e in sorted(faulty.cfg, key=lambda e: (e.src, e.dst, e.kind)):
        s, t = m.get(e.src), m.get(e.dst)
        if s is None or t is None or CfgEdge(s, t, e.kind) not in fixed.cfg:
            cfg_f.append(e)
    cfg_r = []
    for e in sorted(fixed.cfg, key=lambda e: (e.src, e.dst, e.kind)):
        s, t = inv.get(e.src), inv.get(e.dst)
        if s is None or t is None or CfgEdge(s, t, e.kind) not in faulty.cfg:
            cfg_r.append(e)

    cfg_changed: list[tuple[CfgEdge | None, CfgEdge | None]] = []
    used_r: set[CfgEdge] = set()
    for e in cfg_f:
        mate = None
        if e.src in m:
            for cand in cfg_r:
                if cand not in used_r and cand.src == m[e.src]:
                    mate = cand
                    break
        if mate is not None:
            used_r.add(mate)
        cfg_changed.append((e, mate))
    cfg_changed.extend((None, e) for e in cfg_r if e not in used_r)

    dfg_f = []
    for e in sorted(faulty.dfg, key=lambda e: (e.def_node, e.use_node, e.var)):
        d, u = m.get(e.def_node), m.get(e.use_node)
        if d is None or u is None or DfgEdge(d, u, e.var) not in fixed.dfg:
            dfg_f.append(e)
    dfg_r = []
    for e in sorted(fixed.dfg, key=lambda e: (e.def_node, e.use_node, e.var)):
        d, u = inv.get(e.def_node), inv.get(e.use_node)
        if d is None or u is None or DfgEdge(d, u, e.var) not in faulty.dfg:
            dfg_r.append(e)

    dfg_changed: list[tuple[DfgEdge | None, DfgEdge | None]] = []
    used_rd: set[DfgEdge] = set()
    for e in dfg_f:
        mate = None
        if e.use_node in m:
            for cand in dfg_r:
                if cand not in used_rd and cand.use_node == m[e.use_node] \
                        and cand.var == e.var:
                    mate = cand
                    break
        if mate is not None:
            used_rd.add(mate)
        dfg_changed.append((e, mate))
    dfg_changed.extend((None, e) for e in dfg_r if e not in used_rd)

    return EdgeDiff(cfg_changed=cfg_changed, dfg_changed=dfg_changed)
