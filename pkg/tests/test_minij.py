"""Lexer, parser, and printer tests."""

import pytest

from ffc import minij
from ffc.minij import (
    Assign, Binary, Block, Call, For, If, LexError, Literal, Name, ParseError,
    Return, Switch, Ternary, VarDecl, While, ast_shape, expr_text, parse,
    stmt_text, to_source, tokenize,
)


# --------------------------------------------------------------------------
# Lexer
# --------------------------------------------------------------------------


def test_tokenize_basic():
    kinds = [(t.kind, t.text) for t in tokenize("int x = 42;")]
    assert kinds == [("identifier", "int"), ("identifier", "x"),
                     ("operator", "="), ("literal", "42"),
                     ("punctuation", ";")]


def test_tokenize_keywords_and_literals():
    kinds = {t.text: t.kind for t in tokenize("if return true null foo")}
    assert kinds == {"if": "keyword", "return": "keyword",
                     "true": "literal", "null": "literal",
                     "foo": "identifier"}


def test_tokenize_positions():
    tokens = tokenize("a\n  b")
    assert (tokens[0].line, tokens[0].col) == (1, 1)
    assert (tokens[1].line, tokens[1].col) == (2, 3)


def test_tokenize_comments_skipped():
    tokens = tokenize("a // one\n/* two\nlines */ b")
    assert [t.text for t in tokens] == ["a", "b"]
    assert tokens[1].line == 3


def test_tokenize_string_and_char():
    tokens = tokenize(r'"a\"b" + ' + r"'\n'")
    assert tokens[0].kind == "literal"
    assert tokens[0].text == r'"a\"b"'
    assert tokens[2].kind == "literal"
    assert tokens[2].text == r"'\n'"


def test_tokenize_number_forms():
    texts = [t.text for t in tokenize("0xffffffffL 1.5f 2e3 10L")]
    assert texts == ["0xffffffffL", "1.5f", "2e3", "10L"]


def test_tokenize_longest_operator_first():
    texts = [t.text for t in tokenize("a >>> b >>= c >> d")]
    assert ">>>" in texts and ">>=" in texts and ">>" in texts


@pytest.mark.parametrize("source", ['"unterminated', "'x", "/* open", "`"])
def test_tokenize_errors(source):
    with pytest.raises(LexError):
        tokenize(source)


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def _method(source):
    program = parse(source)
    assert len(program.methods) == 1
    return program.methods[0]


def test_parse_method_signature():
    m = _method("int add(int a, int b) { return a + b; }")
    assert m.name == "add"
    assert [p.name for p in m.params] == ["a", "b"]
    assert [p.type_name for p in m.params] == ["int", "int"]


def test_parse_multiple_methods():
    program = parse("void a() {} void b() {}")
    assert [m.name for m in program.methods] == ["a", "b"]


def test_parse_var_decl_vs_expression():
    m = _method("void f() { Foo x = g(); x.h(); }")
    decl, call = m.body.stmts
    assert isinstance(decl, VarDecl) and decl.name == "x"
    assert decl.decl_type == "Foo"
    assert not isinstance(call, VarDecl)


def test_parse_array_type_declaration():
    m = _method("void f(char[] cs) { int[] xs = mk(); }")
    assert m.params[0].type_name == "char[]"
    assert m.body.stmts[0].decl_type == "int[]"


def test_parse_precedence():
    m = _method("void f() { x = a + b * c; }")
    value = m.body.stmts[0].value
    assert isinstance(value, Binary) and value.op == "+"
    assert isinstance(value.right, Binary) and value.right.op == "*"


def test_parse_ternary():
    m = _method("int f(boolean c) { return c ? 1 : 2; }")
    assert isinstance(m.body.stmts[0].value, Ternary)


def test_parse_compound_assignment():
    m = _method("void f() { pos += 1; }")
    stmt = m.body.stmts[0]
    assert isinstance(stmt, Assign) and stmt.op == "+="


def test_parse_if_else_chain():
    m = _method("void f(int x) { if (x > 0) { a(); } else if (x < 0) { b(); } else { c(); } }")
    stmt = m.body.stmts[0]
    assert isinstance(stmt, If)
    # `else if` is normalized to an else-block holding the inner if
    assert isinstance(stmt.orelse, Block)
    inner = stmt.orelse.stmts[0]
    assert isinstance(inner, If) and inner.orelse is not None


def test_parse_for_loop_pieces():
    m = _method("void f(int n) { for (int i = 0; i < n; i++) { g(i); } }")
    loop = m.body.stmts[0]
    assert isinstance(loop, For)
    assert isinstance(loop.init, VarDecl)
    assert expr_text(loop.cond) == "i < n"


def test_parse_switch_grouped_and_default():
    m = _method("""
        void f(int k) {
            switch (k) {
                case 1:
                case 2: a(); break;
                default: b();
            }
        }""")
    sw = m.body.stmts[0]
    assert isinstance(sw, Switch)
    assert len(sw.cases) == 2
    assert len(sw.cases[0].labels) == 2
    assert sw.cases[1].labels is None


@pytest.mark.parametrize("source, message_part", [
    ("void f() { break; }", "break"),
    ("void f() { continue; }", "continue"),
    ("void f(int k) { switch (k) { case 1: continue; } }", "continue"),
    ("void f(int k) { switch (k) { default: a(); default: b(); } }", "default"),
    ("void f() { if (x) }", ""),
    ("void f() { x = ; }", ""),
    ("void f()", ""),
])
def test_parse_errors(source, message_part):
    with pytest.raises(ParseError) as excinfo:
        parse(source)
    assert message_part in str(excinfo.value)


def test_parse_error_positions():
    with pytest.raises(ParseError) as excinfo:
        parse("void f() {\n  x = ;\n}")
    assert str(excinfo.value).startswith("2:")


def test_break_allowed_in_switch_and_loop():
    parse("void f(int k) { while (k > 0) { break; } }")
    parse("void f(int k) { switch (k) { case 1: break; } }")


def test_continue_allowed_in_loop_inside_switch():
    parse("void f(int k) { while (k > 0) { switch (k) { case 1: continue; } } }")


# --------------------------------------------------------------------------
# Printing
# --------------------------------------------------------------------------


def test_expr_text_parenthesizes_only_when_needed():
    m = _method("void f() { x = (a + b) * c - d / (e - f); }")
    assert expr_text(m.body.stmts[0].value) == "(a + b) * c - d / (e - f)"


def test_expr_text_same_tier_right_operand():
    m = _method("void f() { x = a - (b - c); }")
    assert expr_text(m.body.stmts[0].value) == "a - (b - c)"


def test_stmt_text_forms():
    m = _method("""
        void f() {
            int x = g(1, "s");
            x += 2;
            x++;
            return x;
        }""")
    texts = [stmt_text(s) for s in m.body.stmts]
    assert texts == ['int x = g(1, "s")', "x += 2", "x++", "return x"]


def test_to_source_round_trip_is_stable():
    source = """
        int f(int a, char[] cs) {
            int total = 0;
            for (int i = 0; i < a; i++) {
                if (i % 2 == 0 && ok(i)) {
                    total += cs[i];
                } else {
                    total = total - 1;
                }
            }
            while (total > 10) {
                total--;
            }
            switch (total) {
                case 0: return 0;
                default: break;
            }
            return total;
        }
    """
    once = to_source(parse(source))
    twice = to_source(parse(once))
    assert once == twice


def test_ast_shape_ignores_positions():
    a = parse("void f() { x = 1; }")
    b = parse("void f() {\n\n    x = 1; }")
    assert ast_shape(a) == ast_shape(b)
    c = parse("void f() { x = 2; }")
    assert ast_shape(a) != ast_shape(c)


def test_ast_dump_is_json_ready():
    import json

    dump = minij.ast_dump(parse("void f(int x) { return x; }"))
    json.dumps(dump)
