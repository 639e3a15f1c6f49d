"""Recursive-descent parser for MiniC.

Grammar summary (see docs/grammar/minic.ebnf for the full EBNF): a program is
one or more functions; array types are spelled ``int[8] b``; assignment is a
statement, not an expression; every ``for`` header carries all three parts.
The parser returns the root of a fully numbered AST: a single func node when
the file holds one function, otherwise a block node wrapping the functions.
"""

from __future__ import annotations

from typing import Optional

from .lexer import Token, tokenize
from .syntax import (
    ASSIGN, ASSIGN_NAME, BASE_TYPES, BLOCK, CALL, CMP_OP, CMP_OP_NAMES,
    CONTROL, FUNC, IDENT, INDEX, INDEX_NAME, LITERAL, LOGIC_OP,
    LOGIC_OP_NAMES, MATH_OP, MATH_OP_NAMES, PARAM, VAR_DECL, AstNode,
    TypeExpr, assign_ids,
)

_LITERAL_TYPES = {
    "int-lit": "int",
    "float-lit": "float",
    "str-lit": "str",
    "char-lit": "char",
}


class ParseError(Exception):
    """Syntax error; carries the expected-token set and the location."""

    def __init__(self, expected: set[str], found: Optional[Token]):
        self.expected = frozenset(expected)
        self.found = found
        wanted = ", ".join(sorted(expected))
        if found is None:
            where = "end of input"
            loc = ""
        else:
            where = repr(found.text)
            loc = f"{found.line}:{found.col}: "
        super().__init__(f"{loc}expected {wanted}, found {where}")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token helpers -------------------------------------------------

    def peek(self, ahead: int = 0) -> Optional[Token]:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def at_kind(self, kind: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError({repr(text)}, self.peek())
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.at_kind("ident"):
            raise ParseError({"identifier"}, self.peek())
        return self.advance()

    # -- node helpers --------------------------------------------------

    @staticmethod
    def _span(first: Token, last_end: tuple[int, int, int]) -> tuple:
        end_line, end_col, end_off = last_end
        return (first.line, first.col, end_line, end_col), first.offset, end_off

    @staticmethod
    def _tok_end(tok: Token) -> tuple[int, int, int]:
        return tok.line, tok.end_col, tok.end_offset

    @staticmethod
    def _node_end(node: AstNode) -> tuple[int, int, int]:
        return node.span[2], node.span[3], node.end_offset

    def _make(self, construct_class: str, first: Token, end: tuple[int, int, int],
              **kw) -> AstNode:
        span, start_off, end_off = self._span(first, end)
        return AstNode(construct_class, span=span, start_offset=start_off,
                       end_offset=end_off, **kw)

    # -- grammar -------------------------------------------------------

    def program(self) -> AstNode:
        funcs = [self.function()]
        while self.peek() is not None:
            funcs.append(self.function())
        if len(funcs) == 1:
            return funcs[0]
        first_tok = self.tokens[0]
        last = funcs[-1]
        wrapper = AstNode(BLOCK, children=funcs,
                          span=(first_tok.line, first_tok.col, last.span[2], last.span[3]),
                          start_offset=first_tok.offset, end_offset=last.end_offset)
        return wrapper

    def type_expr(self, reject_void_array: bool = True) -> tuple[TypeExpr, Token]:
        tok = self.peek()
        if tok is None or tok.text not in BASE_TYPES:
            raise ParseError(set(BASE_TYPES), tok)
        base = self.advance()
        if self.at("["):
            self.advance()
            size = self.peek()
            if size is None or size.kind != "int-lit":
                raise ParseError({"array length (integer literal)"}, size)
            self.advance()
            self.expect("]")
            if base.text == "void" and reject_void_array:
                raise ParseError({"non-void array base"}, base)
            return TypeExpr(base.text, int(size.text)), base
        return TypeExpr(base.text), base

    def function(self) -> AstNode:
        ret_type, first = self.type_expr()
        name = self.expect_ident()
        self.expect("(")
        params: list[AstNode] = []
        if not self.at(")"):
            params.append(self.param())
            while self.at(","):
                self.advance()
                params.append(self.param())
        self.expect(")")
        body = self.block()
        node = self._make(FUNC, first, self._node_end(body), name=name.text,
                          data_type=ret_type, children=params + [body])
        node.name_span = (name.offset, name.end_offset)
        return node

    def param(self) -> AstNode:
        ptype, first = self.type_expr()
        name = self.expect_ident()
        node = self._make(PARAM, first, self._tok_end(name), name=name.text,
                          data_type=ptype)
        node.name_span = (name.offset, name.end_offset)
        return node

    def block(self) -> AstNode:
        first = self.expect("{")
        stmts: list[AstNode] = []
        while not self.at("}"):
            if self.peek() is None:
                raise ParseError({"'}'", "statement"}, None)
            stmts.append(self.statement())
        close = self.expect("}")
        return self._make(BLOCK, first, self._tok_end(close), children=stmts)

    def statement(self) -> AstNode:
        tok = self.peek()
        assert tok is not None
        if tok.text in BASE_TYPES:
            decl = self.declaration()
            semi = self.expect(";")
            decl.span = (decl.span[0], decl.span[1], semi.line, semi.end_col)
            decl.end_offset = semi.end_offset
            return decl
        if tok.text == "if":
            return self.if_stmt()
        if tok.text == "while":
            return self.while_stmt()
        if tok.text == "for":
            return self.for_stmt()
        if tok.text == "return":
            return self.return_stmt()
        if tok.text == "{":
            return self.block()
        expr = self.expression()
        if self.at("="):
            node = self.assignment_tail(expr)
        else:
            node = expr
        semi = self.expect(";")
        node.span = (node.span[0], node.span[1], semi.line, semi.end_col)
        node.end_offset = semi.end_offset
        return node

    def declaration(self) -> AstNode:
        """``type name ('=' expr)?`` without the trailing semicolon."""
        dtype, first = self.type_expr()
        name = self.expect_ident()
        children: list[AstNode] = []
        end = self._tok_end(name)
        if self.at("="):
            self.advance()
            init = self.expression()
            children = [init]
            end = self._node_end(init)
        node = self._make(VAR_DECL, first, end, name=name.text, data_type=dtype,
                          children=children)
        node.name_span = (name.offset, name.end_offset)
        return node

    def assignment_tail(self, lhs: AstNode) -> AstNode:
        if lhs.construct_class not in (IDENT, INDEX):
            raise ParseError({"assignable target (identifier or index)"}, self.peek())
        self.expect("=")
        rhs = self.expression()
        node = AstNode(ASSIGN, name=ASSIGN_NAME, children=[lhs, rhs],
                       span=(lhs.span[0], lhs.span[1], rhs.span[2], rhs.span[3]),
                       start_offset=lhs.start_offset, end_offset=rhs.end_offset)
        return node

    def _simple_stmt_no_semi(self) -> AstNode:
        """A declaration or assignment without ';' (for headers)."""
        tok = self.peek()
        if tok is not None and tok.text in BASE_TYPES:
            return self.declaration()
        expr = self.expression()
        if not self.at("="):
            raise ParseError({"'='"}, self.peek())
        return self.assignment_tail(expr)

    def if_stmt(self) -> AstNode:
        first = self.expect("if")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        then = self.statement()
        children = [cond, then]
        end = self._node_end(then)
        if self.at("else"):
            self.advance()
            other = self.statement()
            children.append(other)
            end = self._node_end(other)
        return self._make(CONTROL, first, end, name="IF", children=children)

    def while_stmt(self) -> AstNode:
        first = self.expect("while")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        body = self.statement()
        return self._make(CONTROL, first, self._node_end(body), name="WHILE",
                          children=[cond, body])

    def for_stmt(self) -> AstNode:
        first = self.expect("for")
        self.expect("(")
        init = self._simple_stmt_no_semi()
        self.expect(";")
        cond = self.expression()
        self.expect(";")
        step = self._simple_stmt_no_semi()
        self.expect(")")
        body = self.statement()
        return self._make(CONTROL, first, self._node_end(body), name="FOR",
                          children=[init, cond, step, body])

    def return_stmt(self) -> AstNode:
        first = self.expect("return")
        children: list[AstNode] = []
        if not self.at(";"):
            children.append(self.expression())
        semi = self.expect(";")
        return self._make(CONTROL, first, self._tok_end(semi), name="RETURN",
                          children=children)

    # expressions, loosest binding first

    def expression(self) -> AstNode:
        return self.or_expr()

    def _binary_chain(self, sub, ops: dict[str, str], construct_class: str) -> AstNode:
        node = sub()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in ops:
                return node
            self.advance()
            rhs = sub()
            node = AstNode(construct_class, name=ops[tok.text], children=[node, rhs],
                           span=(node.span[0], node.span[1], rhs.span[2], rhs.span[3]),
                           start_offset=node.start_offset, end_offset=rhs.end_offset)

    def or_expr(self) -> AstNode:
        return self._binary_chain(self.and_expr, {"||": LOGIC_OP_NAMES["||"]}, LOGIC_OP)

    def and_expr(self) -> AstNode:
        return self._binary_chain(self.cmp_expr, {"&&": LOGIC_OP_NAMES["&&"]}, LOGIC_OP)

    def cmp_expr(self) -> AstNode:
        return self._binary_chain(self.add_expr, CMP_OP_NAMES, CMP_OP)

    def add_expr(self) -> AstNode:
        ops = {"+": MATH_OP_NAMES["+"], "-": MATH_OP_NAMES["-"]}
        return self._binary_chain(self.mul_expr, ops, MATH_OP)

    def mul_expr(self) -> AstNode:
        ops = {k: MATH_OP_NAMES[k] for k in ("*", "/", "%")}
        return self._binary_chain(self.unary_expr, ops, MATH_OP)

    def unary_expr(self) -> AstNode:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in ("-", "!"):
            self.advance()
            operand = self.unary_expr()
            if tok.text == "-":
                cls, name = MATH_OP, MATH_OP_NAMES["-"]
            else:
                cls, name = LOGIC_OP, LOGIC_OP_NAMES["!"]
            return self._make(cls, tok, self._node_end(operand), name=name,
                              children=[operand])
        return self.postfix_expr()

    def postfix_expr(self) -> AstNode:
        tok = self.peek()
        if tok is None:
            raise ParseError({"expression"}, None)
        if tok.text == "(":
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if tok.kind in _LITERAL_TYPES:
            self.advance()
            return self._make(LITERAL, tok, self._tok_end(tok), name=tok.text,
                              data_type=TypeExpr(_LITERAL_TYPES[tok.kind]))
        if tok.kind == "ident":
            name = self.advance()
            if self.at("("):
                self.advance()
                args: list[AstNode] = []
                if not self.at(")"):
                    args.append(self.expression())
                    while self.at(","):
                        self.advance()
                        args.append(self.expression())
                close = self.expect(")")
                return self._make(CALL, name, self._tok_end(close), name=name.text,
                                  children=args)
            if self.at("["):
                base = self._make(IDENT, name, self._tok_end(name), name=name.text)
                base.name_span = (name.offset, name.end_offset)
                self.advance()
                sub = self.expression()
                close = self.expect("]")
                return self._make(INDEX, name, self._tok_end(close), name=INDEX_NAME,
                                  children=[base, sub])
            node = self._make(IDENT, name, self._tok_end(name), name=name.text)
            node.name_span = (name.offset, name.end_offset)
            return node
        raise ParseError({"expression"}, tok)


def parse(tokens: list[Token]) -> AstNode:
    """Parse a token list into a numbered AST; raises ParseError on bad input."""
    if not tokens:
        raise ParseError({"function definition"}, None)
    parser = _Parser(tokens)
    root = parser.program()
    assign_ids(root)
    return root


def parse_source(source: str) -> AstNode:
    """Convenience wrapper: tokenize then parse."""
    return parse(tokenize(source))
