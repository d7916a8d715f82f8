"""Lexing, parsing and printing of DSP source."""

from .ast import ModuleDecl, MethodDecl, ParamDecl
from .lexer import Token, tokenize
from .parser import parse_expression, parse_module, parse_modules, parse_source
from .printer import format_expr, format_module, format_stmt

__all__ = [
    "ModuleDecl",
    "MethodDecl",
    "ParamDecl",
    "Token",
    "tokenize",
    "parse_module",
    "parse_modules",
    "parse_source",
    "parse_expression",
    "format_expr",
    "format_module",
    "format_stmt",
]
