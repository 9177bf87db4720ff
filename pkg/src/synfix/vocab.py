"""Training vocabulary with rare-token relabeling and one-hot encoding.

Identifiers, numbers and strings seen fewer than `threshold` times across
the training corpus are collapsed onto a single IDENT pseudo-token;
keywords, operators and the structural newline/indent tokens are always
kept so the repair engine never loses them.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .lexer import INDENT_MARK, NEWLINE_MARK, Token, TokenKind

IDENT_MARK = "IDENT"

# Kinds whose lexemes may be relabeled when rare.
_RELABELABLE = (TokenKind.IDENT_RAW, TokenKind.NUMBER, TokenKind.STRING)


class EmptyCorpus(ValueError):
    pass


class IdOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class VocabConfig:
    threshold: int = 4

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")


@dataclass
class Vocabulary:
    token_to_id: dict
    id_to_token: list
    ident_id: int
    counts: dict = field(default_factory=dict)
    threshold: int = 1

    @property
    def size(self) -> int:
        return len(self.id_to_token)

    @property
    def newline_id(self) -> int:
        return self.token_to_id[NEWLINE_MARK]

    @property
    def indent_id(self) -> int:
        return self.token_to_id[INDENT_MARK]

    def id_of(self, lexeme: str) -> int:
        return self.token_to_id.get(lexeme, self.ident_id)

    def ids(self, tokens) -> list:
        """Token (or TokenSeq) iterable -> id list."""
        return [self.id_of(t.lexeme) for t in tokens]


def build_vocab(seqs, config: VocabConfig = VocabConfig()) -> Vocabulary:
    """Count lexemes across token sequences and build the id maps.

    Lexemes of relabelable kinds below the count threshold are dropped;
    they encode as the IDENT pseudo-token.  Ids are assigned by
    descending count (lexeme as tie-break) so builds are deterministic.
    """
    seqs = list(seqs)
    if not seqs or all(len(s) == 0 for s in seqs):
        raise EmptyCorpus("no token sequences to build a vocabulary from")
    counts = Counter()
    exempt = set()
    for seq in seqs:
        for tok in seq:
            counts[tok.lexeme] += 1
            if tok.kind not in _RELABELABLE:
                exempt.add(tok.lexeme)

    retained = [
        lex for lex, c in counts.items()
        if c >= config.threshold or lex in exempt
    ]
    retained.sort(key=lambda lex: (-counts[lex], lex))

    id_to_token = [IDENT_MARK, NEWLINE_MARK, INDENT_MARK]
    id_to_token += [lex for lex in retained if lex not in id_to_token[:3]]
    token_to_id = {lex: i for i, lex in enumerate(id_to_token)}
    return Vocabulary(
        token_to_id=token_to_id,
        id_to_token=id_to_token,
        ident_id=0,
        counts=dict(counts),
        threshold=config.threshold,
    )


def encode(token: Token, vocab: Vocabulary) -> np.ndarray:
    """One-hot vector of length vocab.size; unknown lexemes hit ident_id."""
    vec = np.zeros(vocab.size)
    vec[vocab.id_of(token.lexeme)] = 1.0
    return vec


def decode(token_id: int, vocab: Vocabulary) -> str:
    if not 0 <= token_id < vocab.size:
        raise IdOutOfRange(f"id {token_id} outside [0, {vocab.size})")
    return vocab.id_to_token[token_id]
