"""Tokenizer for the read-only Cypher subset.

Keywords match case-insensitively; identifiers preserve case. String
literals accept single or double quotes with backslash escapes. Offsets are
0-based character positions into the source, used for line/column reporting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LexError

KEYWORD = "keyword"
IDENT = "ident"
STRING = "string"
NUMBER = "number"
PUNCT = "punct"
OP = "op"
EOF = "eof"

KEYWORDS = {
    "MATCH",
    "WHERE",
    "RETURN",
    "DISTINCT",
    "AS",
    "ORDER",
    "BY",
    "ASC",
    "DESC",
    "LIMIT",
    "AND",
    "OR",
    "NOT",
    "IN",
    "CONTAINS",
    "COUNT",
    "COLLECT",
    "TRUE",
    "FALSE",
}

# Write clauses are reserved and rejected outright: the grammar has no write
# productions, so these can never execute.
WRITE_KEYWORDS = {"CREATE", "MERGE", "SET", "DELETE", "REMOVE", "DROP", "DETACH"}

_PUNCT = set("(){}[]:,.*")

_ESCAPES = {"n": "\n", "t": "\t", "'": "'", '"': '"', "\\": "\\"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str  # canonical text: keywords uppercased, others verbatim
    value: str | int | float | None
    offset: int


def tokenize(text: str) -> list[Token]:
    """Produce the complete token stream (ending with an EOF token)."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            upper = word.upper()
            if upper in KEYWORDS or upper in WRITE_KEYWORDS:
                tokens.append(Token(KEYWORD, upper, None, start))
            else:
                tokens.append(Token(IDENT, word, word, start))
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            is_float = False
            if i + 1 < n and text[i] == "." and text[i + 1].isdigit():
                is_float = True
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            raw = text[start:i]
            value: int | float = float(raw) if is_float else int(raw)
            tokens.append(Token(NUMBER, raw, value, start))
            continue
        if ch in ("'", '"'):
            start = i
            quote = ch
            i += 1
            chunks: list[str] = []
            closed = False
            while i < n:
                c = text[i]
                if c == "\\":
                    if i + 1 >= n:
                        break
                    chunks.append(_ESCAPES.get(text[i + 1], text[i + 1]))
                    i += 2
                    continue
                if c == quote:
                    closed = True
                    i += 1
                    break
                chunks.append(c)
                i += 1
            if not closed:
                raise LexError("unterminated string literal", start)
            tokens.append(Token(STRING, text[start:i], "".join(chunks), start))
            continue
        if ch == "<":
            if text[i : i + 2] == "<=":
                tokens.append(Token(OP, "<=", None, i))
                i += 2
            elif text[i : i + 2] == "<>":
                tokens.append(Token(OP, "<>", None, i))
                i += 2
            elif text[i : i + 2] == "<-":
                tokens.append(Token(OP, "<-", None, i))
                i += 2
            else:
                tokens.append(Token(OP, "<", None, i))
                i += 1
            continue
        if ch == ">":
            if text[i : i + 2] == ">=":
                tokens.append(Token(OP, ">=", None, i))
                i += 2
            else:
                tokens.append(Token(OP, ">", None, i))
                i += 1
            continue
        if ch == "-":
            if text[i : i + 2] == "->":
                tokens.append(Token(OP, "->", None, i))
                i += 2
            else:
                tokens.append(Token(OP, "-", None, i))
                i += 1
            continue
        if ch == "=":
            tokens.append(Token(OP, "=", None, i))
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(PUNCT, ch, None, i))
            i += 1
            continue
        raise LexError(f"illegal character {ch!r}", i)
    tokens.append(Token(EOF, "", None, n))
    return tokens


def line_column(text: str, offset: int) -> tuple[int, int]:
    """1-based (line, column) of a character offset."""
    line = text.count("\n", 0, offset) + 1
    last_newline = text.rfind("\n", 0, offset)
    return line, offset - last_newline
