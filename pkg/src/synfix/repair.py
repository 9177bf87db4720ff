"""Repair search: splice model predictions into a broken token stream.

Given a program that fails the parser, the engine locates the error
token, asks the sequence model for likely continuations of the prefix
ending at the error (Offset) and one token earlier (Offset-1), and tries
inserting or replacing tokens at the error location with prediction
prefixes of growing length.  If nothing parses, the whole error line is
rewritten from the previous line's context.  Shorter edits are preferred
by construction.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .lexer import Token, TokenKind, TokenSeq, detokenize, token_from_lexeme, \
    token_index_at, tokenize
from .model import EmptyPrefix, predict_next, predict_until_newline
from .parser import ParseOutcome, parse_check
from .vocab import IDENT_MARK, Vocabulary, decode


class Strategy(Enum):
    INSERT = "insert"
    REPLACE = "replace"
    PREVLINE = "prevline"


class Endpoint(Enum):
    OFFSET = "offset"
    OFFSET_MINUS_1 = "offset-1"
    PREVLINE = "prevline"


class Status(Enum):
    COMPLETELY_FIXED = "completely-fixed"
    FIXED_OTHER_LINE = "fixed-other-line"
    NO_FIX = "no-fix"


# Cells tried for every candidate length, in preference order; the
# previous-line rewrite always runs last.
DEFAULT_STRATEGY_ORDER = (
    (Strategy.INSERT, Endpoint.OFFSET),
    (Strategy.REPLACE, Endpoint.OFFSET),
    (Strategy.INSERT, Endpoint.OFFSET_MINUS_1),
    (Strategy.REPLACE, Endpoint.OFFSET_MINUS_1),
)


class IndexOutOfRange(IndexError):
    pass


class LineOutOfRange(IndexError):
    pass


class CalledOnValidProgram(ValueError):
    pass


@dataclass(frozen=True)
class RepairConfig:
    k: int = 10
    max_line_len: int = 40
    strategy_order: tuple = DEFAULT_STRATEGY_ORDER
    use_prevline: bool = True

    def __post_init__(self):
        if self.k < 1 or self.max_line_len < 1:
            raise ValueError("k and max_line_len must be >= 1")


@dataclass
class RepairResult:
    status: Status
    original_error: ParseOutcome
    strategy: Optional[Strategy] = None
    endpoint: Optional[Endpoint] = None
    patch: list = field(default_factory=list)  # lexemes applied
    repaired_source: Optional[str] = None
    residual_error: Optional[ParseOutcome] = None


def insert_at(seq: TokenSeq, loc: int, patch) -> TokenSeq:
    """New sequence with patch tokens spliced in before index loc."""
    if not 0 <= loc <= len(seq):
        raise IndexOutOfRange(f"insert location {loc} outside [0, {len(seq)}]")
    toks = list(seq.tokens)
    return TokenSeq(toks[:loc] + list(patch) + toks[loc:], seq.source_id)


def replace_at(seq: TokenSeq, loc: int, patch) -> TokenSeq:
    """New sequence with tokens [loc, loc+len(patch)) overwritten by patch.

    Replacement running past the end simply appends the remainder.
    """
    if not 0 <= loc <= len(seq):
        raise IndexOutOfRange(f"replace location {loc} outside [0, {len(seq)}]")
    toks = list(seq.tokens)
    return TokenSeq(toks[:loc] + list(patch) + toks[loc + len(patch):], seq.source_id)


def replace_line(seq: TokenSeq, line: int, patch) -> TokenSeq:
    """Rewrite one line's content, keeping its leading indent units.

    Every token on the target line after its leading INDENT_UNIT run
    (including the trailing NEWLINE) is replaced by patch.
    """
    idxs = [i for i, t in enumerate(seq) if t.line == line]
    if not idxs:
        raise LineOutOfRange(f"no tokens on line {line}")
    start, end = idxs[0], idxs[-1] + 1
    keep = start
    while keep < end and seq[keep].kind is TokenKind.INDENT_UNIT:
        keep += 1
    toks = list(seq.tokens)
    return TokenSeq(toks[:keep] + list(patch) + toks[end:], seq.source_id)


def classify_outcome(original: ParseOutcome, after: ParseOutcome) -> Status:
    """Completely fixed, fixed with a residual error on a later line, or not."""
    if after.ok:
        return Status.COMPLETELY_FIXED
    if after.line > original.line:
        return Status.FIXED_OTHER_LINE
    return Status.NO_FIX


def _patch_tokens(ids, vocab: Vocabulary):
    """Predicted ids -> splicable tokens, cut just before any IDENT.

    The IDENT pseudo-token has no concrete rendering, so predictions are
    only usable up to the first one.
    """
    toks = []
    for i in ids:
        lexeme = decode(i, vocab)
        if lexeme == IDENT_MARK:
            break
        toks.append(token_from_lexeme(lexeme))
    return toks


def synfix(source: str, model, vocab: Vocabulary,
           config: RepairConfig = RepairConfig()) -> RepairResult:
    """Run the repair search on a program that fails parse_check.

    Tries insert/replace candidates of growing length at the error
    location (predicting from the Offset and Offset-1 prefixes), then the
    previous-line rewrite.  The first candidate that parses wins; when
    none does, the first candidate whose residual error moved to a later
    line is reported as a partial fix.
    """
    original = parse_check(source)
    if original.ok:
        raise CalledOnValidProgram("program already parses")

    seq = tokenize(source)
    ids = vocab.ids(seq)
    loc = token_index_at(seq, original.line, original.col)

    # Greedy predictions per prefix endpoint, truncated at IDENT.
    pools = {}
    if loc >= 1:
        pools[Endpoint.OFFSET] = _patch_tokens(
            predict_next(model, ids[:loc], config.k), vocab)
    if loc >= 2:
        pools[Endpoint.OFFSET_MINUS_1] = _patch_tokens(
            predict_next(model, ids[:loc - 1], config.k), vocab)

    partial = None  # first candidate whose error moved to a later line

    def check(candidate_seq, strategy, endpoint, patch):
        nonlocal partial
        text = detokenize(candidate_seq)
        after = parse_check(text)
        status = classify_outcome(original, after)
        if status is Status.COMPLETELY_FIXED:
            return RepairResult(status, original, strategy, endpoint,
                                [t.lexeme for t in patch], text, None)
        if status is Status.FIXED_OTHER_LINE and partial is None:
            partial = RepairResult(status, original, strategy, endpoint,
                                   [t.lexeme for t in patch], text, after)
        return None

    for i in range(1, config.k + 1):
        for strategy, endpoint in config.strategy_order:
            pool = pools.get(endpoint)
            if pool is None or len(pool) < i:
                continue
            patch = pool[:i]
            if strategy is Strategy.INSERT:
                cand = insert_at(seq, loc, patch)
            else:
                cand = replace_at(seq, loc, patch)
            hit = check(cand, strategy, endpoint, patch)
            if hit is not None:
                return hit

    if config.use_prevline:
        hit = _try_prevline(seq, ids, original, model, vocab, config, check)
        if hit is not None:
            return hit

    if partial is not None:
        return partial
    return RepairResult(Status.NO_FIX, original)


def _try_prevline(seq, ids, original, model, vocab, config, check):
    """Rewrite the error line from the previous line's context.

    The prediction prefix runs through the previous line's NEWLINE plus
    the error line's own leading indent, so the model supplies only the
    line content; the original indentation is preserved.
    """
    prefix_end = None
    indent_run = 0
    for i, tok in enumerate(seq):
        if tok.line >= original.line:
            break
        if tok.kind is TokenKind.NEWLINE:
            prefix_end = i + 1
    if prefix_end is None:
        return None  # error on line 1: no previous line to anchor on
    j = prefix_end
    while j < len(seq) and seq[j].kind is TokenKind.INDENT_UNIT \
            and seq[j].line == original.line:
        indent_run += 1
        j += 1
    prefix = ids[:prefix_end + indent_run]
    if not prefix:
        return None
    pred, complete = predict_until_newline(
        model, prefix, vocab.newline_id, config.max_line_len)
    if not complete:
        return None
    patch = _patch_tokens(pred, vocab)
    if len(patch) != len(pred):  # IDENT truncation lost the newline
        return None
    try:
        cand = replace_line(seq, original.line, patch)
    except LineOutOfRange:
        return None
    return check(cand, Strategy.PREVLINE, Endpoint.PREVLINE, patch)
