"""Syntactic validity oracle for the assignment-scale Python subset.

parse_check decides whether a program conforms to the target grammar and,
when it does not, reports the first failure position together with its
kind: IndentationError for block-structure violations, SyntaxError for
everything else.  Only the first error is ever reported.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .lexer import Token, TokenKind, TokenSeq, UnsupportedCharacter, tokenize


class ErrorKind(Enum):
    SYNTAX = "SyntaxError"
    INDENTATION = "IndentationError"


@dataclass(frozen=True)
class ParseOutcome:
    ok: bool
    kind: Optional[ErrorKind] = None
    line: Optional[int] = None
    col: Optional[int] = None

    @staticmethod
    def passed() -> "ParseOutcome":
        return ParseOutcome(True)

    @staticmethod
    def failed(kind: ErrorKind, line: int, col: int) -> "ParseOutcome":
        return ParseOutcome(False, kind, line, col)

    def __str__(self):
        if self.ok:
            return "ok"
        return f"{self.kind.value} at {self.line}:{self.col}"


class _Reject(Exception):
    def __init__(self, kind, line, col):
        self.kind = kind
        self.line = line
        self.col = col


def _syntax(line, col):
    raise _Reject(ErrorKind.SYNTAX, line, col)


def _indent_err(line, col):
    raise _Reject(ErrorKind.INDENTATION, line, col)


@dataclass
class _Line:
    indent: int
    toks: list  # content tokens, leading INDENT_UNITs stripped
    number: int
    eol_col: int  # column one past the last character


def _split_lines(seq: TokenSeq):
    """Group a token stream into logical lines, dropping blank ones."""
    lines = []
    cur = []
    indent = 0
    for tok in seq:
        if tok.kind is TokenKind.NEWLINE:
            if cur:
                lines.append(_Line(indent, cur, tok.line, tok.col))
            cur = []
            indent = 0
        elif tok.kind is TokenKind.INDENT_UNIT:
            if cur:
                cur.append(tok)  # mid-line indent unit: let the cursor reject it
            else:
                indent += 1
        else:
            cur.append(tok)
    if cur:  # no trailing NEWLINE in a hand-built sequence
        last = cur[-1]
        lines.append(_Line(indent, cur, last.line, last.col + len(last.lexeme)))
    return lines


class _Cursor:
    """Token cursor over one logical line."""

    def __init__(self, line: _Line):
        self.line = line
        self.toks = line.toks
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def advance(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, lexeme: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.lexeme == lexeme

    def fail_here(self):
        tok = self.peek()
        if tok is None:
            _syntax(self.line.number, self.line.eol_col)
        _syntax(tok.line, tok.col)

    def expect(self, lexeme: str):
        if not self.at(lexeme):
            self.fail_here()
        return self.advance()

    def expect_end(self):
        if self.peek() is not None:
            self.fail_here()


_COMPARE_OPS = {"==", "!=", "<", "<=", ">", ">="}
_AUG_OPS = {"+=", "-=", "*=", "/="}


class _Parser:
    def __init__(self, lines):
        self.lines = lines
        self.pos = 0

    def current(self) -> Optional[_Line]:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    # -- statements ---------------------------------------------------

    def parse_program(self):
        self.parse_block(0)
        left = self.current()
        if left is not None:
            # Only over-indented lines can survive the depth-0 block.
            tok = left.toks[0]
            _indent_err(tok.line, tok.col)

    def parse_block(self, depth: int):
        count = 0
        while True:
            line = self.current()
            if line is None or line.indent != depth:
                return count
            self.parse_statement(line, depth)
            count += 1

    def require_block(self, depth: int, header: _Line):
        """Body of a compound statement: exactly one unit deeper."""
        nxt = self.current()
        if nxt is not None and nxt.indent > depth:
            tok = nxt.toks[0]
            _indent_err(tok.line, tok.col)  # unexpected indent
        if self.parse_block(depth) == 0:
            nxt = self.current()
            if nxt is None:
                _indent_err(header.number, header.eol_col)
            tok = nxt.toks[0]
            _indent_err(tok.line, tok.col)  # expected an indented block

    def parse_statement(self, line: _Line, depth: int):
        head = line.toks[0]
        word = head.lexeme if head.kind is TokenKind.KEYWORD else None
        if word == "def":
            self.parse_def(line, depth)
        elif word == "if":
            self.parse_if(line, depth)
        elif word == "while":
            self.parse_while(line, depth)
        elif word == "for":
            self.parse_for(line, depth)
        elif word in ("elif", "else"):
            _syntax(head.line, head.col)  # orphan clause
        else:
            self.parse_simple_line(line)

    def parse_header_tail(self, cur: _Cursor, line: _Line, depth: int):
        cur.expect(":")
        cur.expect_end()
        self.pos += 1
        self.require_block(depth + 1, line)

    def parse_def(self, line: _Line, depth: int):
        cur = _Cursor(line)
        cur.advance()
        name = cur.peek()
        if name is None or name.kind is not TokenKind.IDENT_RAW:
            cur.fail_here()
        cur.advance()
        cur.expect("(")
        if not cur.at(")"):
            while True:
                param = cur.peek()
                if param is None or param.kind is not TokenKind.IDENT_RAW:
                    cur.fail_here()
                cur.advance()
                if cur.at(","):
                    cur.advance()
                    if cur.at(")"):
                        break
                else:
                    break
        cur.expect(")")
        self.parse_header_tail(cur, line, depth)

    def parse_if(self, line: _Line, depth: int):
        cur = _Cursor(line)
        cur.advance()
        self.expr(cur)
        self.parse_header_tail(cur, line, depth)
        while True:
            nxt = self.current()
            if nxt is None or nxt.indent != depth:
                return
            head = nxt.toks[0]
            if head.kind is not TokenKind.KEYWORD:
                return
            if head.lexeme == "elif":
                cur = _Cursor(nxt)
                cur.advance()
                self.expr(cur)
                self.parse_header_tail(cur, nxt, depth)
            elif head.lexeme == "else":
                cur = _Cursor(nxt)
                cur.advance()
                self.parse_header_tail(cur, nxt, depth)
                return
            else:
                return

    def parse_while(self, line: _Line, depth: int):
        cur = _Cursor(line)
        cur.advance()
        self.expr(cur)
        self.parse_header_tail(cur, line, depth)

    def parse_for(self, line: _Line, depth: int):
        cur = _Cursor(line)
        cur.advance()
        while True:
            target = cur.peek()
            if target is None or target.kind is not TokenKind.IDENT_RAW:
                cur.fail_here()
            cur.advance()
            if cur.at(","):
                cur.advance()
            else:
                break
        if not (cur.at("in") and cur.peek().kind is TokenKind.KEYWORD):
            cur.fail_here()
        cur.advance()
        self.expr(cur)
        self.parse_header_tail(cur, line, depth)

    def parse_simple_line(self, line: _Line):
        cur = _Cursor(line)
        while True:
            self.parse_simple_stmt(cur)
            if cur.at(";"):
                cur.advance()
                if cur.peek() is None:
                    break
            else:
                cur.expect_end()
                break
        self.pos += 1

    def parse_simple_stmt(self, cur: _Cursor):
        head = cur.peek()
        if head is None:
            cur.fail_here()
        if head.kind is TokenKind.KEYWORD:
            if head.lexeme == "pass":
                cur.advance()
                return
            if head.lexeme == "return":
                cur.advance()
                nxt = cur.peek()
                if nxt is not None and nxt.lexeme != ";":
                    self.exprlist(cur)
                return
            if head.lexeme == "not":
                self.exprlist(cur)
                return
            _syntax(head.line, head.col)  # def/if/... cannot start mid-line
        assignable = self.exprlist(cur)
        nxt = cur.peek()
        if nxt is None:
            return
        if nxt.lexeme == "=" and nxt.kind is TokenKind.OPERATOR:
            while cur.at("="):
                if not assignable:
                    cur.fail_here()
                cur.advance()
                assignable = self.exprlist(cur)
            return
        if nxt.lexeme in _AUG_OPS:
            if not assignable:
                cur.fail_here()
            cur.advance()
            self.exprlist(cur)
            return
        # expression statement: anything further is handled by the caller

    # -- expressions ----------------------------------------------------
    # Each rule returns True when what it parsed is a legal assignment
    # target (name, subscript, or a tuple/list of targets).

    def exprlist(self, cur: _Cursor) -> bool:
        assignable = self.expr(cur)
        while cur.at(","):
            cur.advance()
            nxt = cur.peek()
            if nxt is None or nxt.lexeme in (")", "]", ";", ":", "="):
                break  # trailing comma
            assignable = self.expr(cur) and assignable
        return assignable

    def expr(self, cur: _Cursor) -> bool:
        assignable = self.and_expr(cur)
        while cur.at("or"):
            cur.advance()
            self.and_expr(cur)
            assignable = False
        return assignable

    def and_expr(self, cur: _Cursor) -> bool:
        assignable = self.not_expr(cur)
        while cur.at("and"):
            cur.advance()
            self.not_expr(cur)
            assignable = False
        return assignable

    def not_expr(self, cur: _Cursor) -> bool:
        if cur.at("not"):
            cur.advance()
            self.not_expr(cur)
            return False
        return self.comparison(cur)

    def comparison(self, cur: _Cursor) -> bool:
        assignable = self.arith(cur)
        while True:
            tok = cur.peek()
            if tok is None or tok.lexeme not in _COMPARE_OPS:
                return assignable
            cur.advance()
            self.arith(cur)
            assignable = False

    def arith(self, cur: _Cursor) -> bool:
        assignable = self.term(cur)
        while True:
            tok = cur.peek()
            if tok is None or tok.lexeme not in ("+", "-"):
                return assignable
            cur.advance()
            self.term(cur)
            assignable = False

    def term(self, cur: _Cursor) -> bool:
        assignable = self.factor(cur)
        while True:
            tok = cur.peek()
            if tok is None or tok.lexeme not in ("*", "/", "%"):
                return assignable
            cur.advance()
            self.factor(cur)
            assignable = False

    def factor(self, cur: _Cursor) -> bool:
        if cur.at("-"):
            cur.advance()
            self.factor(cur)
            return False
        return self.power(cur)

    def power(self, cur: _Cursor) -> bool:
        assignable = self.atom_trailer(cur)
        if cur.at("**"):
            cur.advance()
            self.factor(cur)
            return False
        return assignable

    def atom_trailer(self, cur: _Cursor) -> bool:
        assignable = self.atom(cur)
        while True:
            tok = cur.peek()
            if tok is None:
                return assignable
            if tok.lexeme == "(" and tok.kind is TokenKind.DELIMITER:
                cur.advance()
                if not cur.at(")"):
                    self.exprlist(cur)
                cur.expect(")")
                assignable = False
            elif tok.lexeme == "[":
                cur.advance()
                self.subscript(cur)
                cur.expect("]")
                assignable = True
            else:
                return assignable

    def subscript(self, cur: _Cursor):
        # index or slice: [a], [a:b], [::2], [a:b:c], [:] ...
        if not (cur.at(":") or cur.at("]")):
            self.expr(cur)
        for _ in range(2):
            if cur.at(":"):
                cur.advance()
                if not (cur.at(":") or cur.at("]")):
                    self.expr(cur)
        if cur.at("]"):
            return
        cur.fail_here()

    def atom(self, cur: _Cursor) -> bool:
        tok = cur.peek()
        if tok is None:
            cur.fail_here()
        if tok.kind is TokenKind.IDENT_RAW:
            cur.advance()
            return True
        if tok.kind is TokenKind.NUMBER:
            cur.advance()
            return False
        if tok.kind is TokenKind.STRING:
            if len(tok.lexeme) < 2 or tok.lexeme[-1] != tok.lexeme[0]:
                _syntax(tok.line, tok.col)  # unterminated string literal
            cur.advance()
            return False
        if tok.lexeme == "(":
            cur.advance()
            if cur.at(")"):
                cur.advance()
                return False  # empty tuple
            inner = self.exprlist(cur)
            cur.expect(")")
            return inner
        if tok.lexeme == "[":
            cur.advance()
            if cur.at("]"):
                cur.advance()
                return False
            inner = self.exprlist(cur)
            cur.expect("]")
            return inner
        cur.fail_here()


def parse_check(source: str) -> ParseOutcome:
    """Validity check: Ok, or the first error's kind and position."""
    try:
        seq = tokenize(source)
    except UnsupportedCharacter as exc:
        return ParseOutcome.failed(ErrorKind.SYNTAX, exc.line, exc.col)
    return parse_check_tokens(seq)


def parse_check_tokens(seq: TokenSeq) -> ParseOutcome:
    """parse_check over an already-tokenized sequence."""
    lines = _split_lines(seq)
    try:
        _Parser(lines).parse_program()
    except _Reject as rej:
        return ParseOutcome.failed(rej.kind, rej.line, rej.col)
    return ParseOutcome.passed()


def first_error_line(source: str) -> Optional[int]:
    """Line of the first parse error, or None for a valid program."""
    outcome = parse_check(source)
    return None if outcome.ok else outcome.line
