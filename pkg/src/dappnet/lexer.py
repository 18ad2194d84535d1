"""Solidity tokenizer.

Comments and whitespace are dropped; every token keeps the byte offset,
line and column of its first character so that the original text can be
rebuilt from the token stream plus the gaps between tokens.
"""
from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from enum import Enum


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    NUMBER = "number-literal"
    STRING = "string-literal"
    PUNCT = "punctuation"


KEYWORDS = frozenset(
    """
    contract interface library function modifier event constructor emit
    import pragma is this new if else for while do try catch return returns
    using assembly struct enum mapping public private internal external view
    pure payable virtual override memory storage calldata require address
    """.split()
)

# longest first so that the regex alternation prefers multi-character operators
_PUNCTUATION = sorted(
    """
    >>>= >>> <<= >>= ** => -> == != <= >= && || ++ -- += -= *= /= %= |= &= ^=
    << >> := { } ( ) [ ] ; , . : ? ~ ! = < > + - * / % & | ^ @
    """.split(),
    key=len,
    reverse=True,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n\f\v]+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<open_comment>/\*)
  | (?P<string>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<open_string>["'])
  | (?P<number>0[xX][0-9A-Fa-f_]+
       |\d[\d_]*(?:\.\d[\d_]*)?(?:[eE]-?\d[\d_]*)?
       |\.\d[\d_]*(?:[eE]-?\d[\d_]*)?)
  | (?P<identifier>[A-Za-z_][A-Za-z0-9_$]*)
  | (?P<punct>"""
    + "|".join(re.escape(p) for p in _PUNCTUATION)
    + r""")
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    lexeme: str
    file: str
    line: int
    column: int
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.lexeme)

    def is_(self, lexeme: str) -> bool:
        return self.lexeme == lexeme and self.kind is not TokenKind.STRING

    def __repr__(self) -> str:
        return f"Token({self.kind.value}, {self.lexeme!r}, {self.line}:{self.column})"


class LexError(Exception):
    """Raised when a file cannot be tokenized; carries the source position."""

    def __init__(self, message: str, file: str, line: int, column: int):
        super().__init__(f"{file}:{line}:{column}: {message}")
        self.file = file
        self.line = line
        self.column = column


class _Positions:
    def __init__(self, source: str):
        self._starts = [0] + [m.end() for m in re.finditer("\n", source)]

    def locate(self, offset: int) -> tuple[int, int]:
        row = bisect.bisect_right(self._starts, offset) - 1
        return row + 1, offset - self._starts[row] + 1


def tokenize(source: str, file: str = "<memory>") -> list[Token]:
    positions = _Positions(source)
    tokens: list[Token] = []
    pos, n = 0, len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        group = m.lastgroup if m else None
        if group is None or group.startswith("open_"):
            line, col = positions.locate(pos)
            if group == "open_string":
                raise LexError("unterminated string literal", file, line, col)
            if group == "open_comment":
                raise LexError("unterminated block comment", file, line, col)
            raise LexError(f"unexpected character {source[pos]!r}", file, line, col)
        if group == "string" or group == "number":
            kind = TokenKind.STRING if group == "string" else TokenKind.NUMBER
        elif group == "identifier":
            kind = TokenKind.KEYWORD if m.group() in KEYWORDS else TokenKind.IDENTIFIER
        elif group == "punct":
            kind = TokenKind.PUNCT
        else:
            pos = m.end()
            continue
        line, col = positions.locate(pos)
        tokens.append(Token(kind, m.group(), file, line, col, pos))
        pos = m.end()
    return tokens


def reconstruct(source: str, tokens: list[Token]) -> str:
    """Join lexemes with the original inter-token gaps taken from ``source``."""
    parts = []
    cursor = 0
    for tok in tokens:
        parts.append(source[cursor : tok.offset])
        parts.append(tok.lexeme)
        cursor = tok.end
    parts.append(source[cursor:])
    return "".join(parts)
