import numpy as np
import pytest

from synfix.lexer import INDENT_MARK, NEWLINE_MARK, Token, TokenKind, tokenize
from synfix.vocab import (IDENT_MARK, EmptyCorpus, IdOutOfRange, VocabConfig,
                          Vocabulary, build_vocab, decode, encode)


def ident_seq(*lexemes):
    toks = [Token(TokenKind.IDENT_RAW, lex, i + 1, 1)
            for i, lex in enumerate(lexemes)]
    from synfix.lexer import TokenSeq
    return TokenSeq(toks)


def test_threshold_drops_rare_identifiers():
    seq = ident_seq(*(["a"] * 5 + ["b"] * 3 + ["c"] * 4))
    vocab = build_vocab([seq], VocabConfig(threshold=4))
    assert set(vocab.id_to_token) == {"a", "c", IDENT_MARK, NEWLINE_MARK,
                                      INDENT_MARK}
    assert vocab.id_of("b") == vocab.ident_id


def test_threshold_one_keeps_everything():
    seq = ident_seq("a", "b", "c", "a")
    vocab = build_vocab([seq], VocabConfig(threshold=1))
    # every distinct lexeme + IDENT + the two structural tokens
    assert vocab.size == 3 + 3
    for lex in ("a", "b", "c"):
        assert vocab.id_of(lex) != vocab.ident_id


def test_structural_tokens_present_even_when_absent_from_corpus():
    vocab = build_vocab([ident_seq("a", "a", "a", "a")], VocabConfig(4))
    assert NEWLINE_MARK in vocab.token_to_id
    assert INDENT_MARK in vocab.token_to_id
    assert vocab.id_to_token[vocab.ident_id] == IDENT_MARK


def test_keywords_and_operators_exempt_from_relabeling():
    # 'def' and ':' appear once, below threshold, but must be retained
    seq = tokenize("def f(x):\n    return x\n")
    vocab = build_vocab([seq], VocabConfig(threshold=4))
    for lex in ("def", ":", "(", ")", "return"):
        assert vocab.id_of(lex) != vocab.ident_id, lex
    # the one-off identifiers are relabeled
    assert vocab.id_of("f") == vocab.ident_id
    assert vocab.id_of("x") == vocab.ident_id


def test_bijection_invariant():
    seq = tokenize("def f(x):\n    return x + 1\n")
    vocab = build_vocab([seq], VocabConfig(threshold=1))
    assert len(vocab.token_to_id) == len(vocab.id_to_token) == vocab.size
    for lex, i in vocab.token_to_id.items():
        assert vocab.id_to_token[i] == lex


def test_empty_corpus_raises():
    with pytest.raises(EmptyCorpus):
        build_vocab([], VocabConfig(1))


def test_encode_one_hot():
    seq = ident_seq(*(["a"] * 4 + ["b"] * 4))
    vocab = build_vocab([seq], VocabConfig(4))
    vec = encode(Token(TokenKind.IDENT_RAW, "a", 1, 1), vocab)
    assert vec.shape == (vocab.size,)
    assert vec.sum() == 1.0
    assert vec[vocab.id_of("a")] == 1.0


def test_encode_unknown_hits_ident():
    seq = ident_seq(*(["a"] * 4))
    vocab = build_vocab([seq], VocabConfig(4))
    vec = encode(Token(TokenKind.IDENT_RAW, "zzz9", 1, 1), vocab)
    assert vec[vocab.ident_id] == 1.0


def test_encode_decode_roundtrip():
    seq = tokenize("def f(a, b):\n    return a * b\n")
    vocab = build_vocab([seq], VocabConfig(1))
    for tok in seq:
        vec = encode(tok, vocab)
        assert decode(int(np.argmax(vec)), vocab) == tok.lexeme


def test_decode_examples_and_range():
    seq = ident_seq(*(["return"] * 4))
    vocab = build_vocab([seq], VocabConfig(1))
    assert decode(vocab.ident_id, vocab) == IDENT_MARK
    assert decode(vocab.id_of("return"), vocab) == "return"
    with pytest.raises(IdOutOfRange):
        decode(vocab.size, vocab)
    with pytest.raises(IdOutOfRange):
        decode(-1, vocab)


def test_vocab_size_monotone_in_threshold():
    rng = np.random.default_rng(0)
    names = [f"v{i}" for i in range(30)]
    lexs = [names[rng.integers(0, 30)] for _ in range(400)]
    seq = ident_seq(*lexs)
    sizes = [build_vocab([seq], VocabConfig(t)).size for t in (1, 2, 4, 8, 16)]
    assert sizes == sorted(sizes, reverse=True)


def test_build_deterministic():
    seq = tokenize("def f(a, b):\n    return a * b\n")
    v1 = build_vocab([seq], VocabConfig(2))
    v2 = build_vocab([seq], VocabConfig(2))
    assert v1.id_to_token == v2.id_to_token
