"""Tokenizer for MiniC source text.

Tokens carry their exact source text and position so that downstream passes
can slice the original file by node span. Whitespace and comments are skipped
but never altered: the token spans tile exactly the non-whitespace,
non-comment positions of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

KEYWORDS = frozenset({
    "int", "float", "char", "str", "void",
    "if", "else", "while", "for", "return",
})

# Longest spellings first so maximal munch is a simple prefix scan.
OPERATORS = ("<=", ">=", "==", "!=", "&&", "||",
             "+", "-", "*", "/", "%", "<", ">", "!", "=")
PUNCT = "(){}[];,"

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_DIGITS = set("0123456789")


class LexError(Exception):
    """A character or literal outside the MiniC alphabet."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str    # keyword | ident | int-lit | float-lit | str-lit | char-lit | punct | op
    text: str
    line: int    # 1-based
    col: int     # 1-based
    offset: int  # absolute offset of the first character

    @property
    def end_offset(self) -> int:
        return self.offset + len(self.text)

    @property
    def end_col(self) -> int:
        # Tokens never contain newlines, so the end stays on the same line.
        return self.col + len(self.text)


def _scan_quoted(source: str, start: int, line: int, col: int) -> tuple[str, int]:
    """Scan a quoted literal starting at ``start``; returns (text, content_len)."""
    quote = source[start]
    what = "string" if quote == '"' else "char"
    i = start + 1
    content_len = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == quote:
            return source[start:i + 1], content_len
        if ch == "\n":
            break
        if ch == "\\":
            if i + 1 >= n or source[i + 1] == "\n":
                break
            i += 2
            content_len += 1
            continue
        i += 1
        content_len += 1
    raise LexError(f"unterminated {what} literal", line, col)


def tokenize(source: str) -> list[Token]:
    """Lex MiniC source into a token list, dropping whitespace and comments.

    Raises LexError with the offending line/col for characters outside the
    grammar's alphabet and for unterminated literals or block comments.
    """
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            if j == -1:
                j = n
            col += j - i
            i = j
            continue
        if source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j == -1:
                raise LexError("unterminated block comment", line, col)
            chunk = source[i:j + 2]
            nl = chunk.count("\n")
            if nl:
                line += nl
                col = len(chunk) - chunk.rfind("\n")
            else:
                col += len(chunk)
            i = j + 2
            continue

        if ch in _IDENT_START:
            j = i + 1
            while j < n and (source[j] in _IDENT_START or source[j] in _DIGITS):
                j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, line, col, i))
            col += j - i
            i = j
            continue

        if ch in _DIGITS:
            j = i + 1
            while j < n and source[j] in _DIGITS:
                j += 1
            kind = "int-lit"
            if j + 1 < n and source[j] == "." and source[j + 1] in _DIGITS:
                j += 2
                while j < n and source[j] in _DIGITS:
                    j += 1
                kind = "float-lit"
            text = source[i:j]
            tokens.append(Token(kind, text, line, col, i))
            col += j - i
            i = j
            continue

        if ch == '"' or ch == "'":
            text, content_len = _scan_quoted(source, i, line, col)
            # Single-quoted literals of exactly one character are chars;
            # anything else (including 'Hi') is a string.
            if ch == "'" and content_len == 1:
                kind = "char-lit"
            else:
                kind = "str-lit"
            tokens.append(Token(kind, text, line, col, i))
            col += len(text)
            i += len(text)
            continue

        op = next((o for o in OPERATORS if source.startswith(o, i)), None)
        if op is not None:
            tokens.append(Token("op", op, line, col, i))
            col += len(op)
            i += len(op)
            continue

        if ch in PUNCT:
            tokens.append(Token("punct", ch, line, col, i))
            col += 1
            i += 1
            continue

        raise LexError(f"unexpected character {ch!r}", line, col)

    return tokens
