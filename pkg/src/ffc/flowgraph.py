"""Combined control-/data-flow graphs for MiniJ methods.

A flow graph holds one node per executed statement, predicate, or call
parameter-passing site, plus synthetic entry/exit nodes.  Jump statements
(break/continue/return/throw) contribute a jump-kind CFG edge and no node;
a value-carrying return/throw keeps one node for the computed value (it
defines `<ret>` / `<exc>`) and jumps via its outgoing edge.

Method calls lower to call-param nodes placed before the consuming
statement or predicate in evaluation order.  A consumed call defines
`<ret>`; calls to methods of the same compilation unit also define the
callee's formal parameters.  Nested calls share the single `<ret>`
cell, a deliberate precision loss for multi-call expressions.

Variables are plain identifiers, dotted field paths ("this.state",
"Token.BLOCK"), or collapsed array bases ("arr[]").  Field and array
variables never kill older definitions (weak update).  Entry carries no
defs/uses: parameters and fields read before any write are reported as
warnings, not data-flow edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ffc import minij
from ffc.minij import (
    Assign, Binary, Block, Break, Call, Continue, Expr, ExprStmt, FieldAccess,
    For, If, IncDec, Index, Literal, Method, Name, New, Program, Return, Stmt,
    Switch, Ternary, Throw, Unary, VarDecl, While, expr_text, stmt_text,
)

RET = "<ret>"
EXC = "<exc>"

NODE_KINDS = ("entry", "exit", "statement", "predicate", "call-param")
CFG_KINDS = (
    "seq", "true", "false", "case", "fallthrough", "call",
    "jump-break", "jump-continue", "jump-return", "jump-throw",
)
JUMP_KINDS = ("jump-break", "jump-continue", "jump-return", "jump-throw")


@dataclass(frozen=True)
class FlowNode:
    id: int
    kind: str  # entry | exit | statement | predicate | call-param
    label: str
    line: int
    defs: frozenset[str]
    uses: frozenset[str]


@dataclass(frozen=True)
class CfgEdge:
    src: int
    dst: int
    kind: str


@dataclass(frozen=True)
class DfgEdge:
    def_node: int
    use_node: int
    var: str


@dataclass
class FlowGraph:
    nodes: dict[int, FlowNode]
    cfg: frozenset[CfgEdge]
    dfg: frozenset[DfgEdge]
    entry: int
    exit: int
    name: str = ""
    declared: frozenset[str] = frozenset()  # locals declared in the body
    warnings: list[str] = field(default_factory=list)
    undefined_uses: list[tuple[int, str]] = field(default_factory=list)

    def node(self, nid: int) -> FlowNode:
        return self.nodes[nid]

    def out_edges(self, nid: int) -> list[CfgEdge]:
        return sorted((e for e in self.cfg if e.src == nid),
                      key=lambda e: (e.dst, e.kind))

    def in_edges(self, nid: int) -> list[CfgEdge]:
        return sorted((e for e in self.cfg if e.dst == nid),
                      key=lambda e: (e.src, e.kind))

    def successors(self, nid: int) -> list[int]:
        return [e.dst for e in self.out_edges(nid)]

    def predecessors(self, nid: int) -> list[int]:
        return [e.src for e in self.in_edges(nid)]

    def sorted_nodes(self) -> list[FlowNode]:
        return [self.nodes[k] for k in sorted(self.nodes)]


# --------------------------------------------------------------------------
# Variable extraction
# --------------------------------------------------------------------------


def dotted_path(expr: Expr) -> str | None:
    """Render Name / chained FieldAccess as a dotted path, else None."""
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, FieldAccess):
        base = dotted_path(expr.recv)
        if base is None:
            return None
        return "%s.%s" % (base, expr.name)
    return None


def _is_static_receiver(path: str) -> bool:
    """Capitalized single-segment call receivers are class names, not variables.

    ALL-CAPS names stay variables (constants are data); so do dotted paths.
    """
    if "." in path:
        return False
    return path[:1].isupper() and not path.isupper()


def lvalue_var(expr: Expr) -> str:
    """Variable written by an assignment target (array writes collapse)."""
    if isinstance(expr, Index):
        base = dotted_path(expr.base)
        return (base if base is not None else expr_text(expr.base)) + "[]"
    path = dotted_path(expr)
    if path is not None:
        return path
    return expr_text(expr)


def vars_read(expr: Expr) -> frozenset[str]:
    """Variables read when evaluating `expr`.

    Call subexpressions contribute `<ret>` (they are hoisted to their own
    nodes); `this`/`super` alone and literals contribute nothing.
    """
    out: set[str] = set()

    def walk(e: Expr) -> None:
        if isinstance(e, Literal):
            return
        if isinstance(e, Name):
            if e.ident not in ("this", "super"):
                out.add(e.ident)
            return
        if isinstance(e, FieldAccess):
            path = dotted_path(e)
            if path is not None:
                out.add(path)
            else:
                walk(e.recv)
            return
        if isinstance(e, Index):
            base = dotted_path(e.base)
            if base is not None:
                out.add(base + "[]")
            else:
                walk(e.base)
            walk(e.index)
            return
        if isinstance(e, Call):
            out.add(RET)
            return
        if isinstance(e, New):
            for a in e.args:
                walk(a)
            return
        if isinstance(e, Unary):
            walk(e.operand)
            return
        if isinstance(e, Binary):
            walk(e.left)
            walk(e.right)
            return
        if isinstance(e, Ternary):
            walk(e.cond)
            walk(e.then)
            walk(e.orelse)
            return
        raise TypeError("unknown expression %r" % e)

    walk(expr)
    return frozenset(out)


def extract_calls(expr: Expr) -> list[Call]:
    """Call subexpressions in evaluation order (receiver, args, call)."""
    calls: list[Call] = []

    def walk(e: Expr) -> None:
        if isinstance(e, Call):
            if isinstance(e.callee, FieldAccess):
                walk(e.callee.recv)
            for a in e.args:
                walk(a)
            calls.append(e)
            return
        if isinstance(e, FieldAccess):
            walk(e.recv)
        elif isinstance(e, Index):
            walk(e.base)
            walk(e.index)
        elif isinstance(e, New):
            for a in e.args:
                walk(a)
        elif isinstance(e, Unary):
            walk(e.operand)
        elif isinstance(e, Binary):
            walk(e.left)
            walk(e.right)
        elif isinstance(e, Ternary):
            walk(e.cond)
            walk(e.then)
            walk(e.orelse)

    walk(expr)
    return calls


def call_uses(call: Call) -> frozenset[str]:
    """Receiver variable (unless a static class name) plus argument reads."""
    out: set[str] = set()
    if isinstance(call.callee, FieldAccess):
        recv = call.callee.recv
        if isinstance(recv, Call):
            out.add(RET)
        else:
            path = dotted_path(recv)
            if path is None:
                out |= vars_read(recv)
            elif path in ("this", "super"):
                pass
            elif not _is_static_receiver(path):
                out.add(path)
    for arg in call.args:
        out |= vars_read(arg)
    return frozenset(out)


def callee_name(call: Call) -> str:
    """Printed callee: bare name, `this`/`super`, or receiver-qualified name."""
    if isinstance(call.callee, Name):
        return call.callee.ident
    assert isinstance(call.callee, FieldAccess)
    return call.callee.name


# --------------------------------------------------------------------------
# CFG construction
# --------------------------------------------------------------------------

_EXIT_PLACEHOLDER = -1


class _Builder:
    def __init__(self, method: Method, unit_methods: dict[str, Method]):
        self.method = method
        self.unit_methods = unit_methods
        self.nodes: list[FlowNode] = []
        self.edges: list[CfgEdge] = []
        self.warnings: list[str] = []
        # Local-variable names declared in the body.  Parameters, fields and
        # constants are defined outside the method, so a read without a
        # reaching definition is only suspicious for names in this set.
        self.declared: set[str] = set()
        # Pending outgoing edges: (source id, edge kind) awaiting a target.
        self.fringe: list[tuple[int, str]] = []
        self.pending_breaks: list[tuple[int, str]] = []
        # None inside a for-loop whose update has not been emitted yet.
        self.continue_target: int | None = None
        self.deferred_continues: list[tuple[int, str]] = []

    def build(self) -> FlowGraph:
        entry = self._add_node("entry", "entry", self.method.line, frozenset(), frozenset())
        self.fringe = [(entry, "seq")]
        self._block(self.method.body)
        self._connect(_EXIT_PLACEHOLDER)
        exit_id = len(self.nodes)
        self.nodes.append(FlowNode(exit_id, "exit", "exit", self.method.line,
                                   frozenset(), frozenset()))
        edges = frozenset(
            CfgEdge(e.src, exit_id if e.dst == _EXIT_PLACEHOLDER else e.dst, e.kind)
            for e in self.edges
        )
        return FlowGraph(
            nodes={n.id: n for n in self.nodes},
            cfg=edges,
            dfg=frozenset(),
            entry=entry,
            exit=exit_id,
            name=self.method.name,
            declared=frozenset(self.declared),
            warnings=self.warnings,
        )

    # -- plumbing -----------------------------------------------------------

    def _add_node(self, kind: str, label: str, line: int,
                  defs: frozenset[str], uses: frozenset[str]) -> int:
        nid = len(self.nodes)
        self.nodes.append(FlowNode(nid, kind, " ".join(label.split()), line, defs, uses))
        return nid

    def _connect(self, target: int, kind_override: str | None = None) -> None:
        for src, kind in self.fringe:
            self.edges.append(CfgEdge(src, target, kind_override or kind))
        self.fringe = []

    def _emit(self, kind: str, label: str, line: int,
              defs: frozenset[str], uses: frozenset[str], out_kind: str) -> int:
        nid = self._add_node(kind, label, line, defs, uses)
        self._connect(nid)
        self.fringe = [(nid, out_kind)]
        return nid

    def _jump(self, target: int, jump_kind: str) -> None:
        """A bare jump relabels every pending edge and leaves no fall-through."""
        self._connect(target, kind_override=jump_kind)

    # -- calls ----------------------------------------------------------------

    def _callee_defs(self, call: Call, consumed: bool) -> frozenset[str]:
        defs: set[str] = {RET} if consumed else set()
        if isinstance(call.callee, Name) and call.callee.ident in self.unit_methods:
            target = self.unit_methods[call.callee.ident]
            defs |= {p.name for p in target.params}
        return frozenset(defs)

    def _hoist_calls(self, expr: Expr, *, statement_call: bool = False) -> None:
        """Emit one call-param node per call in `expr`, in evaluation order.

        With `statement_call` the outermost call is the statement itself:
        its value is unconsumed and it still gets the single node.
        """
        calls = extract_calls(expr)
        for i, call in enumerate(calls):
            consumed = not (statement_call and i == len(calls) - 1)
            self._emit(
                "call-param", expr_text(call), call.line,
                self._callee_defs(call, consumed), call_uses(call), "call",
            )

    # -- statements -----------------------------------------------------------

    def _block(self, block: Block) -> None:
        for stmt in block.stmts:
            if not self.fringe:
                self.warnings.append(
                    "line %d: unreachable statement dropped" % stmt.line)
                continue
            self._statement(stmt)

    def _statement(self, stmt: Stmt) -> None:
        if isinstance(stmt, Block):
            self._block(stmt)
        elif isinstance(stmt, (VarDecl, Assign, IncDec, ExprStmt)):
            self._simple(stmt)
        elif isinstance(stmt, Return):
            if stmt.value is None:
                self._jump(_EXIT_PLACEHOLDER, "jump-return")
            else:
                self._hoist_calls(stmt.value)
                nid = self._emit("statement", stmt_text(stmt), stmt.line,
                                 frozenset({RET}), vars_read(stmt.value), "seq")
                self.fringe = []
                self.edges.append(CfgEdge(nid, _EXIT_PLACEHOLDER, "jump-return"))
        elif isinstance(stmt, Throw):
            self._hoist_calls(stmt.value)
            nid = self._emit("statement", stmt_text(stmt), stmt.line,
                             frozenset({EXC}), vars_read(stmt.value), "seq")
            self.fringe = []
            self.edges.append(CfgEdge(nid, _EXIT_PLACEHOLDER, "jump-throw"))
        elif isinstance(stmt, Break):
            self.pending_breaks.extend((src, "jump-break") for src, _ in self.fringe)
            self.fringe = []
        elif isinstance(stmt, Continue):
            if self.continue_target is None:
                self.deferred_continues.extend(
                    (src, "jump-continue") for src, _ in self.fringe)
                self.fringe = []
            else:
                self._jump(self.continue_target, "jump-continue")
        elif isinstance(stmt, If):
            self._if(stmt)
        elif isinstance(stmt, While):
            self._while(stmt)
        elif isinstance(stmt, For):
            self._for(stmt)
        elif isinstance(stmt, Switch):
            self._switch(stmt)
        else:
            raise TypeError("unknown statement %r" % stmt)

    def _simple(self, stmt: Stmt) -> None:
        if isinstance(stmt, VarDecl):
            self.declared.add(stmt.name)
            if stmt.init is None:
                return  # declarations without initializer have no runtime effect
            self._hoist_calls(stmt.init)
            self._emit("statement", stmt_text(stmt), stmt.line,
                       frozenset({stmt.name}), vars_read(stmt.init), "seq")
        elif isinstance(stmt, Assign):
            self._hoist_calls(stmt.target)
            self._hoist_calls(stmt.value)
            target_var = lvalue_var(stmt.target)
            uses = set(vars_read(stmt.value))
            if stmt.op != "=":
                uses.add(target_var)
            if isinstance(stmt.target, Index):
                uses |= vars_read(stmt.target.index)
            self._emit("statement", stmt_text(stmt), stmt.line,
                       frozenset({target_var}), frozenset(uses), "seq")
        elif isinstance(stmt, IncDec):
            var = lvalue_var(stmt.target)
            self._emit("statement", stmt_text(stmt), stmt.line,
                       frozenset({var}), frozenset({var}), "seq")
        elif isinstance(stmt, ExprStmt):
            self._hoist_calls(stmt.expr, statement_call=True)
        else:
            raise TypeError("not a simple statement: %r" % stmt)

    def _predicate(self, cond: Expr, line: int) -> int:
        self._hoist_calls(cond)
        nid = self._add_node("predicate", expr_text(cond), line,
                             frozenset(), vars_read(cond))
        self._connect(nid)
        return nid

    def _if(self, stmt: If) -> None:
        pred = self._predicate(stmt.cond, stmt.line)
        self.fringe = [(pred, "true")]
        self._block(stmt.then)
        after = self.fringe
        if stmt.orelse is None:
            after = after + [(pred, "false")]
        else:
            self.fringe = [(pred, "false")]
            self._block(stmt.orelse)
            after = after + self.fringe
        self.fringe = after

    def _loop(self, cond: Expr | None, line: int, body: Block,
              update: Stmt | None) -> None:
        header = len(self.nodes)  # first condition node, or the predicate
        if cond is None:
            cond = Literal("true", line=line)
        pred = self._predicate(cond, line)

        outer_breaks = self.pending_breaks
        outer_continue = self.continue_target
        outer_deferred = self.deferred_continues
        self.pending_breaks = []
        self.deferred_continues = []
        # `continue` re-enters at the update when there is one, else at the
        # condition; the update runs after the body, so defer in that case.
        self.continue_target = None if update is not None else header

        self.fringe = [(pred, "true")]
        self._block(body)
        if update is not None:
            self.fringe = self.fringe + self.deferred_continues
            if self.fringe:
                self._simple(update)
        self._connect(header)

        breaks = self.pending_breaks
        self.pending_breaks = outer_breaks
        self.continue_target = outer_continue
        self.deferred_continues = outer_deferred
        self.fringe = [(pred, "false")] + breaks

    def _while(self, stmt: While) -> None:
        self._loop(stmt.cond, stmt.line, stmt.body, None)

    def _for(self, stmt: For) -> None:
        if stmt.init is not None:
            self._simple(stmt.init)
        self._loop(stmt.cond, stmt.line, stmt.body, stmt.update)

    def _switch(self, stmt: Switch) -> None:
        pred = self._predicate(stmt.scrutinee, stmt.line)
        outer_breaks = self.pending_breaks
        self.pending_breaks = []
        has_default = False
        carried: list[tuple[int, str]] = []  # fall-through from previous arm
        for case in stmt.cases:
            arm_kind = "case" if case.labels is not None else "false"
            has_default = has_default or case.labels is None
            # Sequential flow crossing an arm boundary becomes fall-through.
            carried = [(src, "fallthrough" if kind in ("seq", "call") else kind)
                       for src, kind in carried]
            self.fringe = [(pred, arm_kind)] + carried
            for inner in case.body:
                if not self.fringe:
                    self.warnings.append(
                        "line %d: unreachable statement dropped" % inner.line)
                    continue
                self._statement(inner)
            carried = self.fringe
        breaks = self.pending_breaks
        self.pending_breaks = outer_breaks
        self.fringe = carried + breaks
        if not has_default:
            self.fringe = [(pred, "false")] + self.fringe


def _resolve_method(program: Program, method: str | None) -> Method:
    if not program.methods:
        raise ValueError("program declares no methods")
    if method is None:
        if len(program.methods) > 1:
            raise ValueError(
                "program declares %d methods; pick one of: %s"
                % (len(program.methods),
                   ", ".join(m.name for m in program.methods)))
        return program.methods[0]
    for m in program.methods:
        if m.name == method:
            return m
    raise ValueError("no method named %r; have: %s"
                     % (method, ", ".join(m.name for m in program.methods)))


def build_cfg(program: Program, method: str | None = None) -> FlowGraph:
    """Build the control-flow graph of one method of `program`.

    Nodes are numbered in creation order with entry first and exit last.
    Every reachable statement yields at most one node; jump statements
    yield edges only.  Unreachable statements are dropped with a warning.
    """
    target = _resolve_method(program, method)
    unit = {m.name: m for m in program.methods}
    return _Builder(target, unit).build()


# --------------------------------------------------------------------------
# Reaching definitions and the data-flow graph
# --------------------------------------------------------------------------


def _kills(var: str) -> bool:
    """Only plain local-style variables kill; fields/arrays are weak updates."""
    return "." not in var and not var.endswith("[]")


def reaching_definitions(g: FlowGraph) -> dict[int, set[tuple[str, int]]]:
    """IN sets of the forward may-analysis: {node: {(var, defining node)}}.

    IN(n) is the union of OUT over CFG predecessors;
    OUT(n) = gen(n) + (IN(n) - kill(n)).  A definition of a plain variable
    kills all other definitions of it; field and array variables never kill.

    Only nodes reachable from the entry contribute: a definition that can
    never execute reaches nothing.
    """
    reachable: set[int] = set()
    stack = [g.entry]
    while stack:
        nid = stack.pop()
        if nid in reachable:
            continue
        reachable.add(nid)
        stack.extend(e.dst for e in g.out_edges(nid))
    preds: dict[int, list[int]] = {nid: [] for nid in g.nodes}
    for e in g.cfg:
        if e.src in reachable:
            preds[e.dst].append(e.src)
    gen = {nid: {(v, nid) for v in node.defs} for nid, node in g.nodes.items()}
    ins: dict[int, set[tuple[str, int]]] = {nid: set() for nid in g.nodes}
    outs: dict[int, set[tuple[str, int]]] = {nid: set() for nid in g.nodes}

    changed = True
    while changed:
        changed = False
        for nid in sorted(reachable):
            new_in: set[tuple[str, int]] = set()
            for p in preds[nid]:
                new_in |= outs[p]
            strong = {v for v in g.nodes[nid].defs if _kills(v)}
            new_out = gen[nid] | {(v, d) for (v, d) in new_in if v not in strong}
            if new_in != ins[nid] or new_out != outs[nid]:
                ins[nid] = new_in
                outs[nid] = new_out
                changed = True
    return ins


def build_dfg(g: FlowGraph) -> FlowGraph:
    """Return `g` with def-use edges: (d, u, v) when v's definition at d
    reaches u and u reads v.

    Reads with no reaching definition are recorded in `undefined_uses`;
    they only raise a warning when the name is a declared local (a read
    of a local before any write) -- parameters, fields and constants are
    implicitly defined outside the method and stay silent."""
    ins = reaching_definitions(g)
    edges: set[DfgEdge] = set()
    undefined: list[tuple[int, str]] = []
    warnings = list(g.warnings)
    for nid in sorted(g.nodes):
        node = g.nodes[nid]
        for var in sorted(node.uses):
            reaching = sorted(d for (v, d) in ins[nid] if v == var)
            for d in reaching:
                edges.add(DfgEdge(d, nid, var))
            if not reaching:
                undefined.append((nid, var))
                if var in g.declared:
                    warnings.append(
                        "node %d: local %r read before any write" % (nid, var))
    return replace(g, dfg=frozenset(edges), warnings=warnings,
                   undefined_uses=undefined)


# --------------------------------------------------------------------------
# Structural comparison (tests, determinism checks)
# --------------------------------------------------------------------------


def canonical_form(g: FlowGraph) -> tuple:
    """Renumbering-invariant form for graphs with distinct node labels.

    Breadth-first from entry with successors ordered by (edge kind, node
    kind, label); unreachable nodes (none, by invariant) appended sorted.
    """
    order: dict[int, int] = {}
    queue = [g.entry]
    while queue:
        nid = queue.pop(0)
        if nid in order:
            continue
        order[nid] = len(order)
        succ = sorted(g.out_edges(nid),
                      key=lambda e: (e.kind, g.nodes[e.dst].kind,
                                     g.nodes[e.dst].label))
        queue.extend(e.dst for e in succ)
    for nid in sorted(g.nodes):
        order.setdefault(nid, len(order))
    nodes = tuple(
        (order[n.id], n.kind, n.label, tuple(sorted(n.defs)), tuple(sorted(n.uses)))
        for n in sorted(g.nodes.values(), key=lambda n: order[n.id]))
    cfg = tuple(sorted((order[e.src], order[e.dst], e.kind) for e in g.cfg))
    dfg = tuple(sorted((order[e.def_node], order[e.use_node], e.var) for e in g.dfg))
    return (nodes, cfg, dfg, order[g.entry], order[g.exit])


def same_graph(a: FlowGraph, b: FlowGraph) -> bool:
    """Structural equality up to node renumbering."""
    return canonical_form(a) == canonical_form(b)
