"""Fault-class assignment for an aligned faulty/fixed graph pair.

Eight classes partition into control-flow and data-flow families:

    control flow: order, jump, call, pred, guard, block
    data flow:    def, use

Detectors run in a fixed order (block, guard, pred, order, jump, call,
def, use).  Structural detectors that claim a whole construct (block,
guard) or reclaim a moved statement (order) mask the claimed nodes so
later detectors do not re-classify their parts.  A pair may belong to
several classes; each fired class carries evidence (node/edge ids,
prefixed f:/r: for the faulty/fixed side).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ffc.align import Alignment, EdgeDiff, align, edge_diff, normalized_label
from ffc.flowgraph import EXC, JUMP_KINDS, RET, CfgEdge, FlowGraph, FlowNode


class FaultClass(str, Enum):
    ORDER = "order"
    JUMP = "jump"
    CALL = "call"
    PRED = "pred"
    GUARD = "guard"
    BLOCK = "block"
    DEF = "def"
    USE = "use"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


#: Column order used by every report.
CLASS_ORDER: tuple[FaultClass, ...] = (
    FaultClass.ORDER, FaultClass.JUMP, FaultClass.CALL, FaultClass.PRED,
    FaultClass.GUARD, FaultClass.BLOCK, FaultClass.DEF, FaultClass.USE,
)

CONTROL_CLASSES = frozenset({
    FaultClass.ORDER, FaultClass.JUMP, FaultClass.CALL,
    FaultClass.PRED, FaultClass.GUARD, FaultClass.BLOCK,
})
DATA_CLASSES = frozenset({FaultClass.DEF, FaultClass.USE})


def fault_type(classes: frozenset[FaultClass] | set[FaultClass]) -> str:
    """Partition a non-empty class set: "pure-CF", "pure-DF", or "mixed"."""
    if not classes:
        raise ValueError("fault_type of an empty class set is undefined")
    has_cf = any(c in CONTROL_CLASSES for c in classes)
    has_df = any(c in DATA_CLASSES for c in classes)
    if has_cf and has_df:
        return "mixed"
    return "pure-CF" if has_cf else "pure-DF"


@dataclass
class FaultClassSet:
    classes: frozenset[FaultClass]
    evidence: dict[FaultClass, list[str]] = field(default_factory=dict)

    def sorted_classes(self) -> list[FaultClass]:
        return [c for c in CLASS_ORDER if c in self.classes]


class UnclassifiedDiff(Exception):
    """The graphs differ but no detector fired; surfaced for triage."""

    def __init__(self, summary: str):
        super().__init__(summary)


# --------------------------------------------------------------------------
# Graph helpers
# --------------------------------------------------------------------------


def _dominators(g: FlowGraph, *, reverse: bool = False) -> dict[int, set[int]]:
    """Dominator sets (reverse=True gives post-dominators)."""
    ids = set(g.nodes)
    preds: dict[int, set[int]] = {n: set() for n in ids}
    for e in g.cfg:
        if reverse:
            preds[e.src].add(e.dst)
        else:
            preds[e.dst].add(e.src)
    root = g.exit if reverse else g.entry
    dom = {n: set(ids) for n in ids}
    dom[root] = {root}
    changed = True
    while changed:
        changed = False
        for n in sorted(ids):
            if n == root:
                continue
            incoming = [dom[p] for p in preds[n]]
            new = set.intersection(*incoming) | {n} if incoming else {n}
            if new != dom[n]:
                dom[n] = new
                changed = True
    return dom


def _immediate(pdom: dict[int, set[int]], n: int) -> int | None:
    """Immediate (post-)dominator: the closest strict one."""
    candidates = pdom[n] - {n}
    if not candidates:
        return None
    # Strict post-dominators of n form a chain; the immediate one has the
    # largest own set (it is farthest from the exit).
    return max(sorted(candidates), key=lambda c: len(pdom[c]))


def region_of(g: FlowGraph, dom: dict[int, set[int]],
              pdom: dict[int, set[int]], pred_id: int) -> set[int]:
    """Nodes governed by predicate P: dominated by P, before its join.

    The join is P's immediate post-dominator; the join and everything it
    dominates fall outside the region.
    """
    join = _immediate(pdom, pred_id)
    out = set()
    for n in g.nodes:
        if n == pred_id or pred_id not in dom[n]:
            continue
        if join is not None and join in dom[n]:
            continue
        out.add(n)
    return out


def condition_chain(g: FlowGraph, pred_id: int) -> list[int]:
    """Call-param nodes feeding P's condition: the straight chain of
    call-kind predecessors directly above the predicate."""
    chain = []
    cur = pred_id
    while True:
        incoming = [e for e in g.cfg if e.dst == cur]
        if len(incoming) != 1:
            break
        e = incoming[0]
        if g.nodes[e.src].kind != "call-param" or e.kind != "call":
            break
        chain.append(e.src)
        cur = e.src
    return chain


def _is_carrier(g: FlowGraph, nid: int) -> bool:
    """A value-carrying return/throw node: defines <ret>/<exc> and exits
    through a jump edge."""
    node = g.nodes[nid]
    if node.kind != "statement" or not (node.defs & {RET, EXC}):
        return False
    out = g.out_edges(nid)
    return len(out) == 1 and out[0].kind in ("jump-return", "jump-throw")


# --------------------------------------------------------------------------
# Call label parsing (labels are the only channel, so imported graphs
# classify identically to built ones)
# --------------------------------------------------------------------------


def _scan_top_level(text: str):
    """Yield (index, char) for characters outside string/char literals."""
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in "\"'":
            quote = c
            i += 1
            while i < n:
                if text[i] == "\\":
                    i += 2
                    continue
                if text[i] == quote:
                    break
                i += 1
            i += 1
            continue
        yield i, c
        i += 1


def parse_call_label(label: str) -> tuple[str | None, str, str, int] | None:
    """Split a call label into (receiver, callee, argument text, arity).

    Returns None when the label does not look like a call expression.
    """
    text = normalized_label(label)
    if not text.endswith(")"):
        return None
    depth = 0
    open_at = -1
    positions = list(_scan_top_level(text))
    for i, c in reversed(positions):
        if c == ")":
            depth += 1
        elif c == "(":
            depth -= 1
            if depth == 0:
                open_at = i
                break
    if open_at <= 0:
        return None
    head = text[:open_at]
    args = text[open_at + 1:-1]
    depth = 0
    split = -1
    for i, c in _scan_top_level(head):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "." and depth == 0:
            split = i
    if split >= 0:
        receiver: str | None = head[:split].strip()
        callee = head[split + 1:].strip()
    else:
        receiver = None
        callee = head.strip()
    if not callee or any(ch in callee for ch in "()+-*/%<>=!&|^~?:, "):
        return None
    arity = 0
    if args.strip():
        arity = 1
        depth = 0
        for _, c in _scan_top_level(args):
            if c in "([":
                depth += 1
            elif c in ")]":
                depth -= 1
            elif c == "," and depth == 0:
                arity += 1
    return receiver, callee, args.strip(), arity


# --------------------------------------------------------------------------
# The detection pipeline
# --------------------------------------------------------------------------

_NORMAL = "normal"


@dataclass
class _Essential:
    kind: str   # a jump kind, or "normal"
    target: int


class _Session:
    """One classification run; detectors share alignment and masks."""

    def __init__(self, faulty: FlowGraph, fixed: FlowGraph,
                 alignment: Alignment | None = None):
        self.f = faulty
        self.r = fixed
        self.a = alignment if alignment is not None else align(faulty, fixed)
        self.ed = edge_diff(faulty, fixed, self.a)
        self.deleted = set(self.a.deleted)
        self.inserted = set(self.a.inserted)
        self.modified = [(fi, ri) for fi, ri, s in self.a.pairs if s == "modified"]
        self.mask_f: set[int] = set()
        self.mask_r: set[int] = set()
        self.reclaimed: dict[int, int] = {}  # order-detector: deleted -> inserted
        self.guard_deleted: list[int] = []   # guard-fired predicates, faulty side
        self.guard_inserted: list[int] = []
        self.evidence: dict[FaultClass, list[str]] = {c: [] for c in FaultClass}
        self.dom_f = _dominators(faulty)
        self.pdom_f = _dominators(faulty, reverse=True)
        self.dom_r = _dominators(fixed)
        self.pdom_r = _dominators(fixed, reverse=True)
        self._out_deg_f = _out_degrees(faulty)
        self._out_deg_r = _out_degrees(fixed)

    # -- shared predicates ---------------------------------------------------

    def matched_f(self, nid: int) -> bool:
        return nid in self.a.f_to_r or nid in self.reclaimed

    def matched_r(self, nid: int) -> bool:
        return nid in self.a.r_to_f or nid in self._reclaimed_r()

    def _reclaimed_r(self) -> set[int]:
        return set(self.reclaimed.values())

    def image_f(self, nid: int) -> int | None:
        if nid in self.a.f_to_r:
            return self.a.f_to_r[nid]
        return self.reclaimed.get(nid)

    def fire(self, cls: FaultClass, *items: str) -> None:
        for item in items:
            if item not in self.evidence[cls]:
                self.evidence[cls].append(item)

    # -- block ---------------------------------------------------------------

    def detect_block(self) -> None:
        """A predicate whose whole region is inserted (or deleted) guards a
        new (or removed) alternative block of statements."""
        for pid in sorted(self.inserted):
            if self.r.nodes[pid].kind != "predicate":
                continue
            region = region_of(self.r, self.dom_r, self.pdom_r, pid)
            if region and region <= self.inserted:
                self.fire(FaultClass.BLOCK, "r:%d" % pid,
                          *("r:%d" % n for n in sorted(region)))
                self.mask_r |= {pid} | region | set(condition_chain(self.r, pid))
        for pid in sorted(self.deleted):
            if self.f.nodes[pid].kind != "predicate":
                continue
            region = region_of(self.f, self.dom_f, self.pdom_f, pid)
            if region and region <= self.deleted:
                self.fire(FaultClass.BLOCK, "f:%d" % pid,
                          *("f:%d" % n for n in sorted(region)))
                self.mask_f |= {pid} | region | set(condition_chain(self.f, pid))

    # -- guard ---------------------------------------------------------------

    def detect_guard(self) -> None:
        """An inserted (or deleted) predicate governing surviving code: the
        fix added or removed a condition around existing statements."""
        for pid in sorted(self.inserted):
            if pid in self.mask_r or self.r.nodes[pid].kind != "predicate":
                continue
            region = region_of(self.r, self.dom_r, self.pdom_r, pid)
            if not region or any(self.matched_r(n) for n in region):
                self.fire(FaultClass.GUARD, "r:%d" % pid)
                self.mask_r |= {pid} | set(condition_chain(self.r, pid))
                self.guard_inserted.append(pid)
        for pid in sorted(self.deleted):
            if pid in self.mask_f or self.f.nodes[pid].kind != "predicate":
                continue
            region = region_of(self.f, self.dom_f, self.pdom_f, pid)
            if not region or any(self.matched_f(n) for n in region):
                self.fire(FaultClass.GUARD, "f:%d" % pid)
                self.mask_f |= {pid} | set(condition_chain(self.f, pid))
                self.guard_deleted.append(pid)

    # -- pred ----------------------------------------------------------------

    def detect_pred(self) -> None:
        """A matched predicate pair whose condition text changed while the
        local branch structure stayed put."""
        for fi, ri in self.modified:
            fn, rn = self.f.nodes[fi], self.r.nodes[ri]
            if fn.kind != "predicate":
                continue
            if normalized_label(fn.label) == normalized_label(rn.label):
                continue
            f_shape = sorted((e.kind, self.a.f_to_r.get(e.dst, -1))
                             for e in self.f.out_edges(fi))
            r_shape = sorted((e.kind, e.dst) for e in self.r.out_edges(ri))
            if f_shape == r_shape and all(d != -1 for _, d in f_shape):
                self.fire(FaultClass.PRED, "f:%d~r:%d" % (fi, ri))

    # -- order ---------------------------------------------------------------

    def detect_order(self) -> None:
        """A statement deleted in one place and re-inserted with the same
        label elsewhere, with only matched straight-line code in between:
        the fix moved it.  Reclaimed nodes count as matched afterwards."""
        forder = _interior_order(self.f)
        rorder = _interior_order(self.r)
        pos_f = {n: i for i, n in enumerate(forder)}
        pos_r = {n: i for i, n in enumerate(rorder)}
        used_inserts: set[int] = set()
        for d in sorted(self.deleted, key=lambda n: pos_f.get(n, 1 << 30)):
            dn = self.f.nodes[d]
            key = (dn.kind, normalized_label(dn.label))
            for i in sorted(self.inserted, key=lambda n: pos_r.get(n, 1 << 30)):
                if i in used_inserts:
                    continue
                rn = self.r.nodes[i]
                if (rn.kind, normalized_label(rn.label)) != key:
                    continue
                span = self._move_span(d, i, forder, rorder, pos_f, pos_r)
                if span is None:
                    continue
                used_inserts.add(i)
                self.reclaimed[d] = i
                self.mask_f.add(d)
                self.mask_r.add(i)
                self.fire(FaultClass.ORDER, "f:%d" % d, "r:%d" % i,
                          *("f:%d" % n for n in span))
                break

    def _move_span(self, d: int, i: int, forder: list[int], rorder: list[int],
                   pos_f: dict[int, int], pos_r: dict[int, int]
                   ) -> list[int] | None:
        """Matched nodes jumped over by moving d to i's slot, or None when
        the move is not a clean straight-line reordering."""
        p = pos_f.get(d)
        q = pos_r.get(i)
        if p is None or q is None:
            return None
        prev_f = next_f = None
        for j in range(q - 1, -1, -1):
            nid = rorder[j]
            if nid in self.a.r_to_f:
                prev_f = self.a.r_to_f[nid]
                break
        for j in range(q + 1, len(rorder)):
            nid = rorder[j]
            if nid in self.a.r_to_f:
                next_f = self.a.r_to_f[nid]
                break
        identical = {f for f, _, s in self.a.pairs if s == "identical"}
        if prev_f is not None and pos_f.get(prev_f, -1) > p:
            span = forder[p + 1: pos_f[prev_f] + 1]  # moved later
            chain_f = [d] + span
            chain_r = [self.a.f_to_r[n] for n in span] + [i]
        elif next_f is not None and pos_f.get(next_f, 1 << 30) < p:
            span = forder[pos_f[next_f]: p]          # moved earlier
            chain_f = span + [d]
            chain_r = [i] + [self.a.f_to_r[n] for n in span]
        else:
            return None
        if not span or any(n not in identical for n in span):
            return None
        if not _straight_line(self.f, chain_f) or not _straight_line(self.r, chain_r):
            return None
        return span

    # -- jump ----------------------------------------------------------------

    def _essential(self, g: FlowGraph, edge: CfgEdge, matched) -> _Essential | None:
        """Contract straight-line unmatched nodes away from an edge.

        Follows single out-edges through unmatched non-predicate nodes; a
        jump kind anywhere on the path dominates.  Abandons (returns None)
        at an unmatched predicate: the change flows into a construct that
        block/guard own.
        """
        kind = edge.kind if edge.kind in JUMP_KINDS else _NORMAL
        cur = edge.dst
        seen = set()
        while not matched(cur) and cur not in seen:
            seen.add(cur)
            node = g.nodes[cur]
            if node.kind == "predicate" or node.kind == "exit":
                return None if node.kind == "predicate" else _Essential(kind, cur)
            nxt = g.out_edges(cur)
            if len(nxt) != 1:
                return None
            hop = nxt[0]
            if hop.kind in JUMP_KINDS:
                kind = hop.kind
            cur = hop.dst
        if cur in seen:
            return None
        return _Essential(kind, cur)

    def detect_jump(self) -> None:
        """Jump-edge faults: a transfer rewired, a jump added/removed or
        retargeted, or a return swapped for a throw."""
        matched_f = self.matched_f
        matched_r = self.matched_r
        for e_f, e_r in self.ed.cfg_changed:
            if e_f is None or e_r is None:
                continue
            if e_f.src in self.mask_f or e_r.src in self.mask_r:
                continue
            if e_f.src in self.reclaimed or e_r.src in self._reclaimed_r():
                continue
            ess_f = self._essential(self.f, e_f, matched_f)
            ess_r = self._essential(self.r, e_r, matched_r)
            if ess_f is None or ess_r is None:
                continue
            if ess_f.target in self.reclaimed or ess_r.target in self._reclaimed_r():
                continue
            t_f = self.image_f(ess_f.target)
            same_target = t_f is not None and t_f == ess_r.target
            ev = ("f:%d->%d:%s" % (e_f.src, e_f.dst, e_f.kind),
                  "r:%d->%d:%s" % (e_r.src, e_r.dst, e_r.kind))
            if ess_f.kind != _NORMAL or ess_r.kind != _NORMAL:
                if ess_f.kind != ess_r.kind or not same_target:
                    self.fire(FaultClass.JUMP, *ev)
            elif not same_target:
                src = self.f.nodes[e_f.src]
                if src.kind != "predicate" and self._out_deg_f.get(e_f.src, 0) == 1:
                    self.fire(FaultClass.JUMP, *ev)
        # A guard-consumed predicate whose guarded branch carried a jump:
        # removing (or adding) the guard removed (or added) that jump too.
        for pid in self.guard_deleted:
            for e in self.f.out_edges(pid):
                ess = self._essential(self.f, e, matched_f)
                if ess is not None and ess.kind != _NORMAL:
                    self.fire(FaultClass.JUMP, "f:%d->%d:%s" % (e.src, e.dst, e.kind))
        for pid in self.guard_inserted:
            for e in self.r.out_edges(pid):
                ess = self._essential(self.r, e, matched_r)
                if ess is not None and ess.kind != _NORMAL:
                    self.fire(FaultClass.JUMP, "r:%d->%d:%s" % (e.src, e.dst, e.kind))

    # -- call ----------------------------------------------------------------

    def detect_call(self) -> None:
        """Added, removed, or redirected call sites (callee or receiver)."""
        for nid in sorted(self.deleted):
            if nid in self.mask_f or self.f.nodes[nid].kind != "call-param":
                continue
            self.fire(FaultClass.CALL, "f:%d" % nid)
        for nid in sorted(self.inserted):
            if nid in self.mask_r or self.r.nodes[nid].kind != "call-param":
                continue
            self.fire(FaultClass.CALL, "r:%d" % nid)
        for fi, ri in self.modified:
            fn, rn = self.f.nodes[fi], self.r.nodes[ri]
            if fn.kind != "call-param":
                continue
            pf = parse_call_label(fn.label)
            pr = parse_call_label(rn.label)
            if pf is None or pr is None:
                if normalized_label(fn.label) != normalized_label(rn.label):
                    self.fire(FaultClass.CALL, "f:%d~r:%d" % (fi, ri))
                continue
            if pf[0] != pr[0] or pf[1] != pr[1]:
                self.fire(FaultClass.CALL, "f:%d~r:%d" % (fi, ri))

    # -- def -----------------------------------------------------------------

    def detect_def(self) -> None:
        """Definition faults: a changed right-hand side, a changed target,
        an added or removed definition, a new result/exception value, or
        new argument values passed to a call."""
        for fi, ri in self.modified:
            fn, rn = self.f.nodes[fi], self.r.nodes[ri]
            labels_differ = normalized_label(fn.label) != normalized_label(rn.label)
            if fn.kind == "call-param":
                pf = parse_call_label(fn.label)
                pr = parse_call_label(rn.label)
                same_site = (pf is not None and pr is not None
                             and pf[0] == pr[0] and pf[1] == pr[1])
                if same_site and pf[2] != pr[2] and (fn.defs or pf[3] or pr[3]):
                    self.fire(FaultClass.DEF, "f:%d~r:%d" % (fi, ri))
                continue
            if fn.defs == rn.defs and fn.defs and labels_differ:
                self.fire(FaultClass.DEF, "f:%d~r:%d" % (fi, ri))
            elif fn.defs != rn.defs and (fn.defs or rn.defs):
                self.fire(FaultClass.DEF, "f:%d~r:%d" % (fi, ri))
        for nid in sorted(self.inserted):
            if nid in self.mask_r:
                continue
            node = self.r.nodes[nid]
            if node.kind == "call-param":
                parsed = parse_call_label(node.label)
                if parsed is not None and parsed[3] >= 1:
                    self.fire(FaultClass.DEF, "r:%d" % nid)
                continue
            if node.kind != "statement" or not node.defs:
                continue
            self.fire(FaultClass.DEF, "r:%d" % nid)
        for nid in sorted(self.deleted):
            if nid in self.mask_f:
                continue
            node = self.f.nodes[nid]
            if node.kind != "statement" or not node.defs:
                continue
            # A removed return/throw value travels with its removed jump
            # edge (a control change); removed plain definitions are data.
            if _is_carrier(self.f, nid):
                continue
            self.fire(FaultClass.DEF, "f:%d" % nid)

    # -- use -----------------------------------------------------------------

    def detect_use(self) -> None:
        """Use faults on matched pairs: the fixed side reads an existing
        definition it did not read before, or a statement stopped reading
        variables while computing the same target."""
        ins_r = _reaching_in(self.r)
        f_vocab = set()
        for node in self.f.nodes.values():
            f_vocab |= node.defs | node.uses
        for fi, ri, status in self.a.pairs:
            fn, rn = self.f.nodes[fi], self.r.nodes[ri]
            if fn.kind in ("entry", "exit"):
                continue
            added = rn.uses - fn.uses
            dropped = fn.uses - rn.uses
            for var in sorted(added):
                reaching = {d for (v, d) in ins_r[ri] if v == var}
                if reaching:
                    if any(self.matched_r(d) for d in reaching):
                        self.fire(FaultClass.USE, "f:%d~r:%d:%s" % (fi, ri, var))
                elif var in f_vocab:
                    self.fire(FaultClass.USE, "f:%d~r:%d:%s" % (fi, ri, var))
            if fn.kind != "call-param" and dropped and fn.defs == rn.defs:
                novel = [v for v in added if v not in f_vocab]
                if not novel:
                    self.fire(FaultClass.USE,
                              *("f:%d~r:%d:-%s" % (fi, ri, v) for v in sorted(dropped)))

    # -- pipeline --------------------------------------------------------------

    _PIPELINE = ("detect_block", "detect_guard", "detect_pred", "detect_order",
                 "detect_jump", "detect_call", "detect_def", "detect_use")

    def run(self, upto: str | None = None) -> None:
        for name in self._PIPELINE:
            getattr(self, name)()
            if name == upto:
                return

    def differs(self) -> bool:
        if self.deleted or self.inserted:
            return True
        for fi, ri in self.modified:
            fn, rn = self.f.nodes[fi], self.r.nodes[ri]
            if (normalized_label(fn.label) != normalized_label(rn.label)
                    or fn.defs != rn.defs or fn.uses != rn.uses):
                return True
        return not self.ed.is_empty()

    def result(self) -> FaultClassSet:
        classes = frozenset(c for c in FaultClass if self.evidence[c])
        evidence = {c: sorted(self.evidence[c]) for c in CLASS_ORDER
                    if self.evidence[c]}
        return FaultClassSet(classes=classes, evidence=evidence)


def _out_degrees(g: FlowGraph) -> dict[int, int]:
    deg: dict[int, int] = {n: 0 for n in g.nodes}
    for e in g.cfg:
        deg[e.src] += 1
    return deg


def _interior_order(g: FlowGraph) -> list[int]:
    from ffc.align import node_order
    return node_order(g)


def _straight_line(g: FlowGraph, chain: list[int]) -> bool:
    """Each consecutive pair is linked by the single out-edge of the former."""
    for a, b in zip(chain, chain[1:]):
        out = g.out_edges(a)
        if len(out) != 1 or out[0].dst != b:
            return False
    return True


def _reaching_in(g: FlowGraph) -> dict[int, set[tuple[str, int]]]:
    from ffc.flowgraph import reaching_definitions
    return reaching_definitions(g)


# --------------------------------------------------------------------------
# Public API
# --------------------------------------------------------------------------


def classify(faulty: FlowGraph, fixed: FlowGraph,
             alignment: Alignment | None = None) -> FaultClassSet:
    """Assign fault classes to the faulty/fixed pair.

    Identical graphs yield an empty class set.  Differing graphs on which
    no detector fires raise UnclassifiedDiff rather than silently passing.
    """
    session = _Session(faulty, fixed, alignment)
    session.run()
    result = session.result()
    if not result.classes and session.differs():
        raise UnclassifiedDiff(
            "graphs differ but no fault class fired "
            "(%d deleted, %d inserted, %d modified, %d cfg / %d dfg edge changes)"
            % (len(session.deleted), len(session.inserted), len(session.modified),
               len(session.ed.cfg_changed), len(session.ed.dfg_changed)))
    return result


def _detector(name: str):
    def run(faulty: FlowGraph, fixed: FlowGraph,
            alignment: Alignment | None = None) -> list[str]:
        session = _Session(faulty, fixed, alignment)
        session.run(upto=name)
        cls = FaultClass[name.removeprefix("detect_").upper()]
        return sorted(session.evidence[cls])
    run.__name__ = name
    run.__doc__ = ("Run the detector pipeline through %s and return that "
                   "detector's evidence (empty list = no fire)." % name)
    return run


detect_block = _detector("detect_block")
detect_guard = _detector("detect_guard")
detect_pred = _detector("detect_pred")
detect_order = _detector("detect_order")
detect_jump = _detector("detect_jump")
detect_call = _detector("detect_call")
detect_def = _detector("detect_def")
detect_use = _detector("detect_use")
