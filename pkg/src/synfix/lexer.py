"""Tokenizer for the assignment-scale Python subset.

Source text is flattened into a token stream that keeps line structure
explicit: every line ends with a NEWLINE token and indented lines start
with one INDENT_UNIT token per indentation level.  Tokenization is total
over printable ASCII, so syntactically broken programs still tokenize.
"""

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENT_RAW = "ident"
    NUMBER = "number"
    STRING = "string"
    OPERATOR = "operator"
    DELIMITER = "delimiter"
    NEWLINE = "newline"
    INDENT_UNIT = "indent"


NEWLINE_MARK = "\n"
INDENT_MARK = "\t"

KEYWORDS = frozenset(
    ["def", "return", "if", "elif", "else", "while", "for", "in", "pass",
     "and", "or", "not"]
)

# Multi-char operators first so maximal munch works by scan order.
MULTI_OPS = ["**", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/="]
SINGLE_OPS = set("=<>+-*/%")
DELIMS = set("()[],:;.")

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_NUMBER_RE = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class UnsupportedCharacter(ValueError):
    """Raised for characters outside printable ASCII found outside strings."""

    def __init__(self, char, line, col):
        self.char = char
        self.line = line
        self.col = col
        super().__init__(f"unsupported character {char!r} at line {line}, col {col}")


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int = 0  # 1-based for tokenizer output; 0 marks synthetic tokens
    col: int = 0

    def __repr__(self):
        return f"Token({self.kind.name}, {self.lexeme!r}, {self.line}:{self.col})"


@dataclass
class TokenSeq:
    tokens: list
    source_id: str = ""

    def __len__(self):
        return len(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def __iter__(self):
        return iter(self.tokens)

    def lexemes(self):
        return [t.lexeme for t in self.tokens]


def _indent_units(ws: str) -> int:
    """Leading-whitespace string -> indent unit count.

    One tab is one unit; four spaces are one unit; a ragged remainder of
    1-3 spaces rounds up to one unit.  Tabs flush any pending space run.
    """
    units = 0
    pending = 0
    for ch in ws:
        if ch == "\t":
            units += (pending + 3) // 4 + 1
            pending = 0
        else:
            pending += 1
    units += (pending + 3) // 4
    return units


def _is_supported(ch: str) -> bool:
    return " " <= ch <= "~" or ch == "\t"


def _scan_line(text: str, lineno: int, out: list):
    """Scan one physical line (no terminator) and append its tokens."""
    n = len(text)
    pos = 0
    while pos < n and text[pos] in " \t":
        pos += 1
    ws_end = pos

    # Find the first content token before committing indent tokens: lines
    # holding only whitespace or a comment contribute just their NEWLINE.
    if pos >= n or text[pos] == "#":
        return
    units = _indent_units(text[:ws_end])
    for i in range(units):
        out.append(Token(TokenKind.INDENT_UNIT, INDENT_MARK, lineno, i + 1))

    while pos < n:
        ch = text[pos]
        if ch in " \t":
            pos += 1
            continue
        if ch == "#":
            break
        col = pos + 1
        if not _is_supported(ch):
            raise UnsupportedCharacter(ch, lineno, col)
        if ch.isalpha() or ch == "_":
            m = _IDENT_RE.match(text, pos)
            word = m.group()
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT_RAW
            out.append(Token(kind, word, lineno, col))
            pos = m.end()
            continue
        if ch.isdigit() or (ch == "." and pos + 1 < n and text[pos + 1].isdigit()):
            m = _NUMBER_RE.match(text, pos)
            out.append(Token(TokenKind.NUMBER, m.group(), lineno, col))
            pos = m.end()
            continue
        if ch in "'\"":
            quote = ch
            j = pos + 1
            while j < n:
                if text[j] == "\\" and j + 1 < n:
                    j += 2
                    continue
                if text[j] == quote:
                    j += 1
                    break
                j += 1
            # No closing quote on this line: keep the tail as an
            # (unterminated) STRING token so tokenization stays total.
            out.append(Token(TokenKind.STRING, text[pos:j], lineno, col))
            pos = j
            continue
        two = text[pos:pos + 2]
        if two in MULTI_OPS:
            out.append(Token(TokenKind.OPERATOR, two, lineno, col))
            pos += 2
            continue
        if ch in SINGLE_OPS:
            out.append(Token(TokenKind.OPERATOR, ch, lineno, col))
        elif ch in DELIMS:
            out.append(Token(TokenKind.DELIMITER, ch, lineno, col))
        else:
            # Any other printable ASCII still tokenizes; the parser is the
            # place that rejects it.
            out.append(Token(TokenKind.OPERATOR, ch, lineno, col))
        pos += 1


def tokenize(source: str, source_id: str = "") -> TokenSeq:
    """Tokenize arbitrary source text.

    Never fails on printable-ASCII input, valid program or not.  Every
    physical line produces exactly one NEWLINE token (a missing final
    line terminator is treated as present).
    """
    normalized = source.replace("\r\n", "\n").replace("\r", "\n")
    lines = normalized.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    tokens = []
    for i, text in enumerate(lines, start=1):
        _scan_line(text, i, tokens)
        tokens.append(Token(TokenKind.NEWLINE, NEWLINE_MARK, i, len(text) + 1))
    return TokenSeq(tokens, source_id)


@lru_cache(maxsize=4096)
def _needs_space(left: str, right: str) -> bool:
    """True when concatenating the two lexemes would change how they lex."""
    got = tokenize(left + right).tokens
    return len(got) != 3 or got[0].lexeme != left or got[1].lexeme != right


def detokenize(seq: TokenSeq) -> str:
    """Render a token sequence back to source text.

    INDENT_UNIT renders as a tab and NEWLINE as '\\n'; a space is placed
    between adjacent tokens only where gluing them would re-lex as a
    single token, so tokenize(detokenize(seq)) reproduces seq.
    """
    parts = []
    prev = None
    for tok in seq:
        if tok.kind is TokenKind.NEWLINE:
            parts.append("\n")
            prev = None
            continue
        if tok.kind is TokenKind.INDENT_UNIT:
            parts.append("\t")
            prev = None
            continue
        if prev is not None and _needs_space(prev.lexeme, tok.lexeme):
            parts.append(" ")
        parts.append(tok.lexeme)
        prev = tok
    return "".join(parts)


def token_index_at(seq: TokenSeq, line: int, col: int) -> int:
    """Index of the first token at or after source position (line, col).

    Returns len(seq) when the position is past the last token.
    """
    target = (line, col)
    for i, tok in enumerate(seq):
        if (tok.line, tok.col) >= target:
            return i
    return len(seq)


def token_from_lexeme(lexeme: str) -> Token:
    """Build a (position-less) token from a bare lexeme.

    Used to materialize model predictions as splicable tokens.
    """
    if lexeme == NEWLINE_MARK:
        return Token(TokenKind.NEWLINE, lexeme)
    if lexeme == INDENT_MARK:
        return Token(TokenKind.INDENT_UNIT, lexeme)
    if lexeme in KEYWORDS:
        return Token(TokenKind.KEYWORD, lexeme)
    if _IDENT_RE.fullmatch(lexeme):
        return Token(TokenKind.IDENT_RAW, lexeme)
    if _NUMBER_RE.fullmatch(lexeme):
        return Token(TokenKind.NUMBER, lexeme)
    if lexeme[:1] in "'\"":
        return Token(TokenKind.STRING, lexeme)
    if lexeme in MULTI_OPS or lexeme in SINGLE_OPS:
        return Token(TokenKind.OPERATOR, lexeme)
    if lexeme in DELIMS:
        return Token(TokenKind.DELIMITER, lexeme)
    return Token(TokenKind.OPERATOR, lexeme)
