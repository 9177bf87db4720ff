import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from synfix.corpus import generate_synthetic
from synfix.lexer import tokenize
from synfix.model import ModelConfig, TrainHyper, train
from synfix.vocab import VocabConfig, build_vocab


@pytest.fixture(scope="session")
def small_trained():
    """A quick model good enough for repair-path tests: (model, vocab)."""
    corpus = generate_synthetic("recurPower-like", 250, seed=11)
    seqs = [tokenize(text, sid) for sid, text in corpus.programs]
    vocab = build_vocab(seqs, VocabConfig(threshold=4))
    stream = []
    for seq in seqs:
        stream.extend(vocab.ids(seq))
    config = ModelConfig(arch="rnn", num_layers=1, hidden_units=64,
                         vocab_size=vocab.size, seed=5)
    model, _ = train(stream, config, TrainHyper(max_epochs=8))
    return model, vocab
