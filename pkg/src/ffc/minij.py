"""Frontend for MiniJ, a small Java-flavored imperative language.

MiniJ covers what real-world bug-fix excerpts need and nothing more:
method declarations, typed/untyped local declarations, assignments
(including compound operators and ++/--), if/else, while, for,
switch/case with fall-through, break/continue/return/throw, ternary
expressions, object creation, chained method calls, field paths and
array indexing.  The full grammar lives in docs/grammar.md.

Three layers live here: a lexer (`tokenize`), a recursive-descent
parser (`parse`) producing a dataclass Ast, and a canonical printer
(`to_source`, `expr_text`) used both for round-tripping and for graph
node labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class LexError(Exception):
    """Raised for characters or literals the lexer cannot tokenize."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col


class ParseError(Exception):
    """Raised when the token stream does not form a MiniJ program."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col


KEYWORDS = {
    "if", "else", "while", "for", "switch", "case", "default",
    "break", "continue", "return", "throw", "new", "var",
    "true", "false", "null", "this", "super",
}

# Longest operators first so maximal munch works by scan order.
OPERATORS = [
    ">>>", "<<=", ">>=",
    "&&", "||", "==", "!=", "<=", ">=", "<<", ">>", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "+", "-", "*", "/", "%", "!", "<", ">", "=", "&", "|", "^", "~", "?", ":",
]

PUNCTUATION = set("(){}[];,.")

ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="}


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | identifier | literal | operator | punctuation
    text: str
    line: int  # 1-based
    col: int   # 1-based


def tokenize(source: str) -> list[Token]:
    """Split `source` into tokens; skipped text is whitespace/comments only.

    Token positions strictly increase in lexical order.  Raises LexError
    on illegal characters, unterminated strings/chars, and unterminated
    block comments.
    """
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(text: str) -> None:
        nonlocal line, col
        for ch in text:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(ch)
            i += 1
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            j = n if j < 0 else j
            advance(source[i:j])
            i = j
            continue
        if source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j < 0:
                raise LexError("unterminated block comment", line, col)
            advance(source[i:j + 2])
            i = j + 2
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            if text in ("true", "false", "null"):
                kind = "literal"
            elif text in KEYWORDS:
                kind = "keyword"
            else:
                kind = "identifier"
            tokens.append(Token(kind, text, start_line, start_col))
            advance(text)
            i = j
            continue
        if ch.isdigit():
            j = i
            if source.startswith("0x", i) or source.startswith("0X", i):
                j = i + 2
                while j < n and source[j] in "0123456789abcdefABCDEF":
                    j += 1
                if j == i + 2:
                    raise LexError("malformed hex literal", line, col)
            else:
                while j < n and source[j].isdigit():
                    j += 1
                if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                    j += 1
                    while j < n and source[j].isdigit():
                        j += 1
                if j < n and source[j] in "eE":
                    k = j + 1
                    if k < n and source[k] in "+-":
                        k += 1
                    if k < n and source[k].isdigit():
                        j = k
                        while j < n and source[j].isdigit():
                            j += 1
            if j < n and source[j] in "lLfFdD":
                j += 1
            text = source[i:j]
            tokens.append(Token("literal", text, start_line, start_col))
            advance(text)
            i = j
            continue
        if ch == '"' or ch == "'":
            quote = ch
            j = i + 1
            while j < n:
                if source[j] == "\\":
                    j += 2
                    continue
                if source[j] == quote:
                    break
                if source[j] == "\n":
                    j = n
                    break
                j += 1
            if j >= n:
                what = "string" if quote == '"' else "char"
                raise LexError("unterminated %s literal" % what, line, col)
            text = source[i:j + 1]
            tokens.append(Token("literal", text, start_line, start_col))
            advance(text)
            i = j + 1
            continue
        matched = None
        for op in OPERATORS:
            if source.startswith(op, i):
                matched = op
                break
        if matched is not None:
            tokens.append(Token("operator", matched, start_line, start_col))
            advance(matched)
            i += len(matched)
            continue
        if ch in PUNCTUATION:
            tokens.append(Token("punctuation", ch, start_line, start_col))
            advance(ch)
            i += 1
            continue
        raise LexError("illegal character %r" % ch, line, col)
    return tokens


# --------------------------------------------------------------------------
# Ast
# --------------------------------------------------------------------------


@dataclass
class Expr:
    line: int = field(default=0, kw_only=True)


@dataclass
class Literal(Expr):
    text: str


@dataclass
class Name(Expr):
    ident: str


@dataclass
class FieldAccess(Expr):
    recv: Expr
    name: str


@dataclass
class Index(Expr):
    base: Expr
    index: Expr


@dataclass
class Call(Expr):
    callee: Expr  # Name or FieldAccess; Name("this"/"super") for ctor-style calls
    args: list[Expr]


@dataclass
class New(Expr):
    type_name: str
    args: list[Expr]


@dataclass
class Unary(Expr):
    op: str
    operand: Expr


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass
class Ternary(Expr):
    cond: Expr
    then: Expr
    orelse: Expr


@dataclass
class Stmt:
    line: int = field(default=0, kw_only=True)


@dataclass
class Block(Stmt):
    stmts: list[Stmt]


@dataclass
class VarDecl(Stmt):
    decl_type: str  # "var" or the printed type reference
    name: str
    init: Expr | None


@dataclass
class Assign(Stmt):
    target: Expr  # Name, FieldAccess, or Index
    op: str       # "=", "+=", ...
    value: Expr


@dataclass
class IncDec(Stmt):
    target: Expr
    op: str  # "++" or "--"


@dataclass
class ExprStmt(Stmt):
    expr: Expr  # always a Call


@dataclass
class If(Stmt):
    cond: Expr
    then: Block
    orelse: Block | None


@dataclass
class While(Stmt):
    cond: Expr
    body: Block


@dataclass
class For(Stmt):
    init: Stmt | None
    cond: Expr | None
    update: Stmt | None
    body: Block


@dataclass
class SwitchCase:
    labels: list[Expr] | None  # None marks the default arm
    body: list[Stmt]
    line: int = 0


@dataclass
class Switch(Stmt):
    scrutinee: Expr
    cases: list[SwitchCase]


@dataclass
class Break(Stmt):
    pass


@dataclass
class Continue(Stmt):
    pass


@dataclass
class Return(Stmt):
    value: Expr | None


@dataclass
class Throw(Stmt):
    value: Expr


@dataclass
class Param:
    type_name: str | None
    name: str


@dataclass
class Method:
    return_type: str | None
    name: str
    params: list[Param]
    body: Block
    line: int = 0


@dataclass
class Program:
    methods: list[Method]


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.loop_depth = 0
        self.switch_depth = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.text == text

    def here(self) -> tuple[int, int]:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            return (last.line, last.col + len(last.text)) if last else (1, 1)
        return tok.line, tok.col

    def error(self, message: str) -> ParseError:
        line, col = self.here()
        return ParseError(message, line, col)

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            got = tok.text if tok else "end of input"
            raise self.error("expected %r, got %r" % (text, got))
        return self.take()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != "identifier":
            got = tok.text if tok else "end of input"
            raise self.error("expected identifier, got %r" % got)
        return self.take()

    # -- declarations -------------------------------------------------------

    def program(self) -> Program:
        methods = []
        while self.peek() is not None:
            methods.append(self.method())
        return Program(methods)

    def type_ref(self) -> str:
        """Parse a type reference: dotted identifier with [] suffixes, or `var`."""
        if self.at("var"):
            self.take()
            return "var"
        parts = [self.expect_ident().text]
        while self.at(".") and (t := self.peek(1)) is not None and t.kind == "identifier":
            self.take()
            parts.append(self.take().text)
        text = ".".join(parts)
        while self.at("[") and self.at("]", 1):
            self.take()
            self.take()
            text += "[]"
        return text

    def _looks_like_type_then_ident(self) -> bool:
        """True when the stream starts with `TypeRef Identifier` (decl shape)."""
        tok = self.peek()
        if tok is None or tok.kind != "identifier":
            return False
        i = self.pos + 1
        toks = self.tokens
        while i + 1 < len(toks) and toks[i].text == "." and toks[i + 1].kind == "identifier":
            i += 2
        while i + 1 < len(toks) and toks[i].text == "[" and toks[i + 1].text == "]":
            i += 2
        return i < len(toks) and toks[i].kind == "identifier"

    def method(self) -> Method:
        start = self.peek()
        assert start is not None
        if self._looks_like_type_then_ident():
            return_type = self.type_ref()
        else:
            return_type = None
        name = self.expect_ident().text
        self.expect("(")
        params: list[Param] = []
        if not self.at(")"):
            while True:
                if self._looks_like_type_then_ident():
                    ptype = self.type_ref()
                    pname = self.expect_ident().text
                else:
                    ptype = None
                    pname = self.expect_ident().text
                params.append(Param(ptype, pname))
                if self.at(","):
                    self.take()
                    continue
                break
        self.expect(")")
        body = self.block()
        return Method(return_type, name, params, body, line=start.line)

    # -- statements ----------------------------------------------------------

    def block(self) -> Block:
        open_tok = self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("expected '}' before end of input")
            stmts.append(self.statement())
        self.expect("}")
        return Block(stmts, line=open_tok.line)

    def as_block(self, stmt: Stmt) -> Block:
        return stmt if isinstance(stmt, Block) else Block([stmt], line=stmt.line)

    def statement(self) -> Stmt:
        tok = self.peek()
        assert tok is not None
        if tok.text == "{":
            return self.block()
        if tok.text == "if":
            return self.if_stmt()
        if tok.text == "while":
            return self.while_stmt()
        if tok.text == "for":
            return self.for_stmt()
        if tok.text == "switch":
            return self.switch_stmt()
        if tok.text == "break":
            if self.loop_depth + self.switch_depth == 0:
                raise self.error("break outside loop or switch")
            self.take()
            self.expect(";")
            return Break(line=tok.line)
        if tok.text == "continue":
            if self.loop_depth == 0:
                raise self.error("continue outside loop")
            self.take()
            self.expect(";")
            return Continue(line=tok.line)
        if tok.text == "return":
            self.take()
            value = None if self.at(";") else self.expression()
            self.expect(";")
            return Return(value, line=tok.line)
        if tok.text == "throw":
            self.take()
            value = self.expression()
            self.expect(";")
            return Throw(value, line=tok.line)
        stmt = self.simple_statement()
        self.expect(";")
        return stmt

    def simple_statement(self) -> Stmt:
        """A declaration, assignment, ++/--, or call, without the ';'."""
        tok = self.peek()
        assert tok is not None
        if tok.text == "var" or self._looks_like_type_then_ident():
            decl_type = self.type_ref()
            name = self.expect_ident().text
            init = None
            if self.at("="):
                self.take()
                init = self.expression()
            return VarDecl(decl_type, name, init, line=tok.line)
        if tok.text in ("++", "--"):
            self.take()
            target = self.postfix_expression()
            self._require_lvalue(target)
            return IncDec(target, tok.text, line=tok.line)
        target = self.postfix_expression()
        nxt = self.peek()
        if nxt is not None and nxt.text in ASSIGN_OPS:
            self.take()
            self._require_lvalue(target)
            value = self.expression()
            return Assign(target, nxt.text, value, line=tok.line)
        if nxt is not None and nxt.text in ("++", "--"):
            self.take()
            self._require_lvalue(target)
            return IncDec(target, nxt.text, line=tok.line)
        if isinstance(target, Call):
            return ExprStmt(target, line=tok.line)
        raise self.error("expression is not a statement")

    def _require_lvalue(self, expr: Expr) -> None:
        if not isinstance(expr, (Name, FieldAccess, Index)):
            raise ParseError("target is not assignable", expr.line, 1)

    def if_stmt(self) -> If:
        tok = self.expect("if")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        then = self.as_block(self.statement())
        orelse = None
        if self.at("else"):
            self.take()
            orelse = self.as_block(self.statement())
        return If(cond, then, orelse, line=tok.line)

    def while_stmt(self) -> While:
        tok = self.expect("while")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        self.loop_depth += 1
        try:
            body = self.as_block(self.statement())
        finally:
            self.loop_depth -= 1
        return While(cond, body, line=tok.line)

    def for_stmt(self) -> For:
        tok = self.expect("for")
        self.expect("(")
        init = None if self.at(";") else self.simple_statement()
        self.expect(";")
        cond = None if self.at(";") else self.expression()
        self.expect(";")
        update = None if self.at(")") else self.simple_statement()
        self.expect(")")
        self.loop_depth += 1
        try:
            body = self.as_block(self.statement())
        finally:
            self.loop_depth -= 1
        return For(init, cond, update, body, line=tok.line)

    def switch_stmt(self) -> Switch:
        tok = self.expect("switch")
        self.expect("(")
        scrutinee = self.expression()
        self.expect(")")
        self.expect("{")
        cases: list[SwitchCase] = []
        self.switch_depth += 1
        try:
            seen_default = False
            while not self.at("}"):
                labels: list[Expr] | None = []
                first = self.peek()
                if first is None:
                    raise self.error("expected '}' before end of input")
                if not (first.text in ("case", "default")):
                    raise self.error("expected 'case' or 'default'")
                while self.at("case") or self.at("default"):
                    lab = self.take()
                    if lab.text == "case":
                        if labels is None:
                            raise self.error("case label after default in same arm")
                        labels.append(self.expression())
                    else:
                        if seen_default:
                            raise self.error("duplicate default label")
                        seen_default = True
                        labels = None
                    self.expect(":")
                body: list[Stmt] = []
                while not (self.at("case") or self.at("default") or self.at("}")):
                    body.append(self.statement())
                cases.append(SwitchCase(labels, body, line=first.line))
        finally:
            self.switch_depth -= 1
        self.expect("}")
        return Switch(scrutinee, cases, line=tok.line)

    # -- expressions --------------------------------------------------------

    def expression(self) -> Expr:
        return self.ternary()

    def ternary(self) -> Expr:
        cond = self.binary(0)
        if self.at("?"):
            tok = self.take()
            then = self.expression()
            self.expect(":")
            orelse = self.ternary()
            return Ternary(cond, then, orelse, line=tok.line)
        return cond

    # Binary precedence tiers, loosest first.
    _TIERS = [
        ("||",),
        ("&&",),
        ("|",),
        ("^",),
        ("&",),
        ("==", "!="),
        ("<", ">", "<=", ">="),
        ("<<", ">>", ">>>"),
        ("+", "-"),
        ("*", "/", "%"),
    ]

    def binary(self, tier: int) -> Expr:
        if tier >= len(self._TIERS):
            return self.unary()
        ops = self._TIERS[tier]
        left = self.binary(tier + 1)
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "operator" or tok.text not in ops:
                return left
            self.take()
            right = self.binary(tier + 1)
            left = Binary(tok.text, left, right, line=tok.line)

    def unary(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.text in ("!", "-", "+", "~"):
            self.take()
            return Unary(tok.text, self.unary(), line=tok.line)
        return self.postfix_expression()

    def postfix_expression(self) -> Expr:
        expr = self.primary()
        while True:
            if self.at("."):
                nxt = self.peek(1)
                if nxt is None or nxt.kind != "identifier":
                    raise self.error("expected member name after '.'")
                self.take()
                name = self.take().text
                if self.at("("):
                    args = self.call_args()
                    expr = Call(FieldAccess(expr, name, line=nxt.line), args, line=nxt.line)
                else:
                    expr = FieldAccess(expr, name, line=nxt.line)
                continue
            if self.at("["):
                tok = self.take()
                index = self.expression()
                self.expect("]")
                expr = Index(expr, index, line=tok.line)
                continue
            break
        return expr

    def call_args(self) -> list[Expr]:
        self.expect("(")
        args = []
        if not self.at(")"):
            while True:
                args.append(self.expression())
                if self.at(","):
                    self.take()
                    continue
                break
        self.expect(")")
        return args

    def primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        if tok.kind == "literal":
            self.take()
            return Literal(tok.text, line=tok.line)
        if tok.text == "new":
            self.take()
            type_name = self.type_ref()
            args = self.call_args()
            return New(type_name, args, line=tok.line)
        if tok.text in ("this", "super"):
            self.take()
            if self.at("("):
                args = self.call_args()
                return Call(Name(tok.text, line=tok.line), args, line=tok.line)
            return Name(tok.text, line=tok.line)
        if tok.kind == "identifier":
            self.take()
            if self.at("("):
                args = self.call_args()
                return Call(Name(tok.text, line=tok.line), args, line=tok.line)
            return Name(tok.text, line=tok.line)
        if tok.text == "(":
            self.take()
            inner = self.expression()
            self.expect(")")
            return inner
        raise self.error("unexpected token %r" % tok.text)


def parse(source: str) -> Program:
    """Parse MiniJ source into a Program.  Raises LexError/ParseError."""
    parser = _Parser(tokenize(source))
    program = parser.program()
    return program


# --------------------------------------------------------------------------
# Printer
# --------------------------------------------------------------------------

_PRECEDENCE: dict[str, int] = {}
for _tier, _ops in enumerate(_Parser._TIERS):
    for _op in _ops:
        _PRECEDENCE[_op] = _tier + 1
_TERNARY_PREC = 0
_UNARY_PREC = len(_Parser._TIERS) + 1


def _prec(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PRECEDENCE[expr.op]
    if isinstance(expr, Ternary):
        return _TERNARY_PREC
    if isinstance(expr, Unary):
        return _UNARY_PREC
    return _UNARY_PREC + 1


def expr_text(expr: Expr) -> str:
    """Canonical single-line rendering of an expression."""
    if isinstance(expr, Literal):
        return expr.text
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, FieldAccess):
        recv = expr_text(expr.recv)
        if _prec(expr.recv) <= _TERNARY_PREC or isinstance(expr.recv, (Binary, Unary)):
            recv = "(%s)" % recv
        return "%s.%s" % (recv, expr.name)
    if isinstance(expr, Index):
        base = expr_text(expr.base)
        if isinstance(expr.base, (Binary, Unary, Ternary)):
            base = "(%s)" % base
        return "%s[%s]" % (base, expr_text(expr.index))
    if isinstance(expr, Call):
        return "%s(%s)" % (expr_text(expr.callee), ", ".join(expr_text(a) for a in expr.args))
    if isinstance(expr, New):
        return "new %s(%s)" % (expr.type_name, ", ".join(expr_text(a) for a in expr.args))
    if isinstance(expr, Unary):
        inner = expr_text(expr.operand)
        if _prec(expr.operand) < _UNARY_PREC:
            inner = "(%s)" % inner
        return "%s%s" % (expr.op, inner)
    if isinstance(expr, Binary):
        mine = _PRECEDENCE[expr.op]
        left = expr_text(expr.left)
        right = expr_text(expr.right)
        if _prec(expr.left) < mine:
            left = "(%s)" % left
        # Same-tier right operands re-parenthesize to preserve left associativity.
        if _prec(expr.right) <= mine:
            right = "(%s)" % right
        return "%s %s %s" % (left, expr.op, right)
    if isinstance(expr, Ternary):
        cond = expr_text(expr.cond)
        if _prec(expr.cond) <= _TERNARY_PREC:
            cond = "(%s)" % cond
        return "%s ? %s : %s" % (cond, expr_text(expr.then), expr_text(expr.orelse))
    raise TypeError("unknown expression %r" % expr)


def stmt_text(stmt: Stmt) -> str:
    """Single-line rendering of a simple statement, no trailing ';'."""
    if isinstance(stmt, VarDecl):
        if stmt.init is None:
            return "%s %s" % (stmt.decl_type, stmt.name)
        return "%s %s = %s" % (stmt.decl_type, stmt.name, expr_text(stmt.init))
    if isinstance(stmt, Assign):
        return "%s %s %s" % (expr_text(stmt.target), stmt.op, expr_text(stmt.value))
    if isinstance(stmt, IncDec):
        return "%s%s" % (expr_text(stmt.target), stmt.op)
    if isinstance(stmt, ExprStmt):
        return expr_text(stmt.expr)
    if isinstance(stmt, Return):
        return "return" if stmt.value is None else "return %s" % expr_text(stmt.value)
    if isinstance(stmt, Throw):
        return "throw %s" % expr_text(stmt.value)
    if isinstance(stmt, Break):
        return "break"
    if isinstance(stmt, Continue):
        return "continue"
    raise TypeError("not a simple statement: %r" % stmt)


class _Printer:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.depth = 0

    def emit(self, text: str) -> None:
        self.lines.append("    " * self.depth + text)

    def block_body(self, block: Block) -> None:
        self.depth += 1
        for stmt in block.stmts:
            self.statement(stmt)
        self.depth -= 1

    def statement(self, stmt: Stmt) -> None:
        if isinstance(stmt, Block):
            self.emit("{")
            self.block_body(stmt)
            self.emit("}")
        elif isinstance(stmt, If):
            self.emit("if (%s) {" % expr_text(stmt.cond))
            self.block_body(stmt.then)
            if stmt.orelse is None:
                self.emit("}")
            else:
                self.emit("} else {")
                self.block_body(stmt.orelse)
                self.emit("}")
        elif isinstance(stmt, While):
            self.emit("while (%s) {" % expr_text(stmt.cond))
            self.block_body(stmt.body)
            self.emit("}")
        elif isinstance(stmt, For):
            init = stmt_text(stmt.init) if stmt.init is not None else ""
            cond = expr_text(stmt.cond) if stmt.cond is not None else ""
            update = stmt_text(stmt.update) if stmt.update is not None else ""
            self.emit("for (%s; %s; %s) {" % (init, cond, update))
            self.block_body(stmt.body)
            self.emit("}")
        elif isinstance(stmt, Switch):
            self.emit("switch (%s) {" % expr_text(stmt.scrutinee))
            self.depth += 1
            for case in stmt.cases:
                if case.labels is None:
                    self.emit("default:")
                else:
                    for label in case.labels:
                        self.emit("case %s:" % expr_text(label))
                self.depth += 1
                for inner in case.body:
                    self.statement(inner)
                self.depth -= 1
            self.depth -= 1
            self.emit("}")
        else:
            self.emit(stmt_text(stmt) + ";")

    def method(self, method: Method) -> None:
        params = ", ".join(
            p.name if p.type_name is None else "%s %s" % (p.type_name, p.name)
            for p in method.params
        )
        head = method.name if method.return_type is None else "%s %s" % (method.return_type, method.name)
        self.emit("%s(%s) {" % (head, params))
        self.block_body(method.body)
        self.emit("}")


def to_source(program: Program) -> str:
    """Render a Program back to canonical MiniJ text (4-space indent)."""
    printer = _Printer()
    for i, method in enumerate(program.methods):
        if i:
            printer.emit("")
        printer.method(method)
    return "\n".join(printer.lines) + "\n"


def ast_shape(node: object) -> object:
    """Position-free structural key, for round-trip comparisons."""
    if isinstance(node, (Program, Method, Param, SwitchCase)) or isinstance(node, (Expr, Stmt)):
        fields = []
        for key, value in vars(node).items():
            if key == "line":
                continue
            fields.append((key, ast_shape(value)))
        return (type(node).__name__, tuple(fields))
    if isinstance(node, list):
        return tuple(ast_shape(x) for x in node)
    return node


def ast_dump(node: object) -> object:
    """JSON-serializable dump of an Ast (node type, fields, line)."""
    if isinstance(node, (Program, Method, Param, SwitchCase)) or isinstance(node, (Expr, Stmt)):
        out: dict[str, object] = {"node": type(node).__name__}
        for key, value in vars(node).items():
            out[key] = ast_dump(value)
        return out
    if isinstance(node, list):
        return [ast_dump(x) for x in node]
    return node
