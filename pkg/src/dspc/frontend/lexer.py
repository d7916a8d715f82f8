"""Tokenizer for DSP source text."""

import re
from dataclasses import dataclass
from typing import List, Optional, Union

from ..errors import LexError

# Words the parser treats as statement or structure keywords. `for` and
# `select` stay ordinary identifiers so a module may be named after them.
RESERVED = frozenset(
    {"module", "method", "end", "when", "test", "verify", "call", "dcall", "find",
     "true", "false"}
)

PUNCT = {
    "(": "LPAREN",
    ")": "RPAREN",
    "{": "LBRACE",
    "}": "RBRACE",
    "[": "LBRACKET",
    "]": "RBRACKET",
    ",": "COMMA",
    ";": "SEMI",
    ":": "COLON",
    "=": "EQ",
    "\\=": "NE",
    "=<": "LE",
    ">=": "GE",
    "<": "LT",
    ">": "GT",
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "^": "CARET",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<newline>\n)
  | (?P<space>[ \t\r\f\v]+)
  | (?P<comment>--[^\n]*)
  | (?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>=<|>=|\\=|[-+*/^<>=(){}\[\],;:])
    """,
    re.VERBOSE,
)

_NUMBER_TAIL = re.compile(r"[.\w]")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    value: Optional[Union[int, float]] = None

    def __str__(self) -> str:
        return f"{self.kind} {self.text}" if self.kind in ("IDENT", "NUM") else self.kind


def tokenize(source: str, file: str = "<input>") -> List[Token]:
    """Split source into tokens; comments and whitespace are dropped."""
    tokens: List[Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise LexError(f"illegal character {source[pos]!r}", line, col, file)
        kind = m.lastgroup
        text = m.group()
        end = m.end()
        if kind == "newline":
            line += 1
            line_start = end
        elif kind == "num":
            if end < len(source) and _NUMBER_TAIL.match(source, end):
                bad = source[pos:end + 1]
                raise LexError(f"malformed number {bad!r}", line, col, file)
            value: Union[int, float] = (
                float(text) if ("." in text or "e" in text or "E" in text) else int(text)
            )
            tokens.append(Token("NUM", text, line, col, value))
        elif kind == "ident":
            tokens.append(Token("IDENT", text, line, col))
        elif kind == "punct":
            tokens.append(Token(PUNCT[text], text, line, col))
        pos = end
    return tokens
