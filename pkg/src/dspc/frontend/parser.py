"""Recursive-descent parser for DSP modules.

Grammar (EBNF):

    file    := module+
    module  := IDENT "(" "{" params "}" "," "{" params "}" ")" method+
               "end" ["module"] ";"
    params  := [IDENT ":" TYPE ("," IDENT ":" TYPE)*]
    method  := "method" stmt* "end" "method" ";"
    stmt    := IDENT ":" TYPE "=" rhs ";"
             | ("when" | "test" | "verify") "(" expr ")" ";"
             | ("call" | "dcall") "(" IDENT "," exprs "," names ")" ";"
             | "find" "(" IDENT "," exprs "," IDENT ")" ";"
    rhs     := "for" "(" expr "," expr "," expr ")" | "select" "(" expr ")" | expr
    exprs   := "{" [expr ("," expr)*] "}"
    names   := "{" [IDENT ("," IDENT)*] "}"
    expr    := sum [("=<" | ">=" | "<" | ">" | "=" | "\\=") sum]
    sum     := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ["^" unary]
    primary := NUM | "true" | "false" | IDENT | IDENT "(" [expr ("," expr)*] ")"
             | "(" expr ")" | "[" [expr ("," expr)*] "]"
"""

import logging
from typing import List, Optional, Tuple

from ..errors import ParseError
from .ast import (
    DTYPES,
    Binary,
    Bind,
    Bool,
    Call,
    Expr,
    Find,
    ForGen,
    Func,
    ListLit,
    MethodDecl,
    ModuleDecl,
    Num,
    ParamDecl,
    Rhs,
    SelectGen,
    Span,
    Stmt,
    Tester,
    Unary,
    Var,
)
from .lexer import RESERVED, Token, tokenize

logger = logging.getLogger(__name__)

_COMPARE = {"LE": "=<", "GE": ">=", "LT": "<", "GT": ">", "EQ": "=", "NE": "\\="}
_DESCRIBE = {
    "LPAREN": "'('", "RPAREN": "')'", "LBRACE": "'{'", "RBRACE": "'}'",
    "LBRACKET": "'['", "RBRACKET": "']'", "COMMA": "','", "SEMI": "';'",
    "COLON": "':'", "EQ": "'='",
}


class Parser:
    """Parser over a token list produced by `tokenize`."""

    def __init__(self, tokens: List[Token], file: str = "<input>"):
        self.tokens = tokens
        self.pos = 0
        self.file = file

    # Token helpers

    def peek(self, offset: int = 0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, kind: str, text: Optional[str] = None, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def at_word(self, word: str, offset: int = 0) -> bool:
        return self.at("IDENT", word, offset)

    def error(self, expected: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            line, col = (last.line, last.col + len(last.text)) if last else (1, 1)
            found = "end of input"
        else:
            line, col, found = tok.line, tok.col, f"{tok.text!r}"
        return ParseError(f"expected {expected}, found {found}", line, col, self.file)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            raise self.error(repr(text) if text else _DESCRIBE.get(kind, kind.lower()))
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_name(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok is None or tok.kind != "IDENT":
            raise self.error(what)
        if tok.text in RESERVED:
            raise ParseError(
                f"reserved word {tok.text!r} cannot be used as {what}",
                tok.line, tok.col, self.file,
            )
        self.pos += 1
        return tok

    @staticmethod
    def span(tok: Token) -> Span:
        return Span(tok.line, tok.col)

    # Declarations

    def parse_file(self) -> List[ModuleDecl]:
        modules = [self.parse_module()]
        while self.peek() is not None:
            modules.append(self.parse_module())
        return modules

    def parse_module(self) -> ModuleDecl:
        name = self.expect_name("module name")
        self.expect("LPAREN")
        inputs = self.parse_params()
        self.expect("COMMA")
        outputs = self.parse_params()
        self.expect("RPAREN")
        methods = []
        while self.at_word("method"):
            methods.append(self.parse_method())
        if not methods:
            raise self.error(f"'method' (module {name.text} has no methods)")
        self.expect("IDENT", "end")
        if self.at_word("module"):
            self.pos += 1
        self.expect("SEMI")
        seen = set()
        for p in inputs + outputs:
            if p.name in seen:
                raise ParseError(
                    f"parameter {p.name!r} declared twice in module {name.text}",
                    p.span.line, p.span.col, self.file,
                )
            seen.add(p.name)
        logger.debug("parsed module %s with %d method(s)", name.text, len(methods))
        return ModuleDecl(
            name.text, inputs, outputs, tuple(methods), self.span(name), self.file
        )

    def parse_params(self) -> Tuple[ParamDecl, ...]:
        self.expect("LBRACE")
        params = []
        if not self.at("RBRACE"):
            params.append(self.parse_param())
            while self.at("COMMA"):
                self.pos += 1
                params.append(self.parse_param())
        self.expect("RBRACE")
        return tuple(params)

    def parse_param(self) -> ParamDecl:
        name = self.expect_name("parameter name")
        self.expect("COLON")
        return ParamDecl(name.text, self.parse_dtype(), self.span(name))

    def parse_dtype(self) -> str:
        tok = self.peek()
        if tok is None or tok.kind != "IDENT" or tok.text not in DTYPES:
            raise self.error("type (real, int, bool or list)")
        self.pos += 1
        return tok.text

    def parse_method(self) -> MethodDecl:
        start = self.expect("IDENT", "method")
        statements = []
        while not self.at_word("end"):
            if self.peek() is None:
                raise self.error("'end'")
            statements.append(self.parse_stmt())
        end = self.expect("IDENT", "end")
        self.expect("IDENT", "method")
        self.expect("SEMI")
        return MethodDecl(tuple(statements), self.span(start), self.span(end))

    # Statements

    def parse_stmt(self) -> Stmt:
        tok = self.peek()
        if tok is None or tok.kind != "IDENT":
            raise self.error("statement")
        word = tok.text
        if word in ("when", "test", "verify"):
            self.pos += 1
            self.expect("LPAREN")
            cond = self.parse_expr()
            self.expect("RPAREN")
            self.expect("SEMI")
            return Tester(word, cond, self.span(tok))
        if word in ("call", "dcall"):
            self.pos += 1
            self.expect("LPAREN")
            callee = self.expect_name("module name")
            self.expect("COMMA")
            inputs = self.parse_expr_vector()
            self.expect("COMMA")
            outputs = self.parse_name_vector()
            self.expect("RPAREN")
            self.expect("SEMI")
            return Call(word, callee.text, inputs, outputs, self.span(tok))
        if word == "find":
            self.pos += 1
            self.expect("LPAREN")
            callee = self.expect_name("module name")
            self.expect("COMMA")
            inputs = self.parse_expr_vector()
            self.expect("COMMA")
            target = self.expect_name("output list variable")
            self.expect("RPAREN")
            self.expect("SEMI")
            return Find(callee.text, inputs, target.text, self.span(tok))
        target = self.expect_name("statement")
        self.expect("COLON")
        dtype = self.parse_dtype()
        self.expect("EQ")
        rhs = self.parse_rhs()
        self.expect("SEMI")
        return Bind(target.text, dtype, rhs, self.span(target))

    def parse_rhs(self) -> Rhs:
        tok = self.peek()
        if self.at_word("for") and self.at("LPAREN", offset=1):
            self.pos += 2
            begin = self.parse_expr()
            self.expect("COMMA")
            end = self.parse_expr()
            self.expect("COMMA")
            step = self.parse_expr()
            self.expect("RPAREN")
            return ForGen(begin, end, step, self.span(tok))
        if self.at_word("select") and self.at("LPAREN", offset=1):
            self.pos += 2
            source = self.parse_expr()
            self.expect("RPAREN")
            return SelectGen(source, self.span(tok))
        return self.parse_expr()

    def parse_expr_vector(self) -> Tuple[Expr, ...]:
        self.expect("LBRACE")
        items = []
        if not self.at("RBRACE"):
            items.append(self.parse_expr())
            while self.at("COMMA"):
                self.pos += 1
                items.append(self.parse_expr())
        self.expect("RBRACE")
        return tuple(items)

    def parse_name_vector(self) -> Tuple[str, ...]:
        self.expect("LBRACE")
        names = []
        if not self.at("RBRACE"):
            names.append(self.expect_name("output variable").text)
            while self.at("COMMA"):
                self.pos += 1
                names.append(self.expect_name("output variable").text)
        self.expect("RBRACE")
        return tuple(names)

    # Expressions

    def parse_expr(self) -> Expr:
        left = self.parse_sum()
        tok = self.peek()
        if tok is not None and tok.kind in _COMPARE:
            self.pos += 1
            right = self.parse_sum()
            return Binary(_COMPARE[tok.kind], left, right, self.span(tok))
        return left

    def parse_sum(self) -> Expr:
        left = self.parse_term()
        while self.at("PLUS") or self.at("MINUS"):
            tok = self.tokens[self.pos]
            self.pos += 1
            left = Binary(tok.text, left, self.parse_term(), self.span(tok))
        return left

    def parse_term(self) -> Expr:
        left = self.parse_unary()
        while self.at("STAR") or self.at("SLASH"):
            tok = self.tokens[self.pos]
            self.pos += 1
            left = Binary(tok.text, left, self.parse_unary(), self.span(tok))
        return left

    def parse_unary(self) -> Expr:
        if self.at("MINUS"):
            tok = self.tokens[self.pos]
            self.pos += 1
            return Unary("-", self.parse_unary(), self.span(tok))
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_primary()
        if self.at("CARET"):
            tok = self.tokens[self.pos]
            self.pos += 1
            return Binary("^", base, self.parse_unary(), self.span(tok))
        return base

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.error("expression")
        if tok.kind == "NUM":
            self.pos += 1
            return Num(tok.value, self.span(tok))
        if tok.kind == "LPAREN":
            self.pos += 1
            inner = self.parse_expr()
            self.expect("RPAREN")
            return inner
        if tok.kind == "LBRACKET":
            self.pos += 1
            items = []
            if not self.at("RBRACKET"):
                items.append(self.parse_expr())
                while self.at("COMMA"):
                    self.pos += 1
                    items.append(self.parse_expr())
            self.expect("RBRACKET")
            return ListLit(tuple(items), self.span(tok))
        if tok.kind == "IDENT":
            if tok.text in ("true", "false"):
                self.pos += 1
                return Bool(tok.text == "true", self.span(tok))
            name = self.expect_name("expression")
            if self.at("LPAREN"):
                self.pos += 1
                args = []
                if not self.at("RPAREN"):
                    args.append(self.parse_expr())
                    while self.at("COMMA"):
                        self.pos += 1
                        args.append(self.parse_expr())
                self.expect("RPAREN")
                return Func(name.text, tuple(args), self.span(name))
            return Var(name.text, self.span(name))
        raise self.error("expression")


def parse_module(tokens: List[Token], file: str = "<input>") -> ModuleDecl:
    """Parse exactly one module from a token stream."""
    parser = Parser(tokens, file)
    module = parser.parse_module()
    if parser.peek() is not None:
        raise parser.error("end of input")
    return module


def parse_modules(tokens: List[Token], file: str = "<input>") -> List[ModuleDecl]:
    """Parse a file holding one or more modules."""
    return Parser(tokens, file).parse_file()


def parse_source(source: str, file: str = "<input>") -> List[ModuleDecl]:
    return parse_modules(tokenize(source, file), file)


def parse_expression(source: str, file: str = "<input>") -> Expr:
    """Parse a standalone expression, e.g. a CLI input literal."""
    parser = Parser(tokenize(source, file), file)
    expr = parser.parse_expr()
    if parser.peek() is not None:
        raise parser.error("end of expression")
    return expr
