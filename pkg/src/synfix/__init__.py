"""Syntax repair from per-assignment token sequence models.

Train on the syntactically correct submissions to one programming
assignment, then propose insert/replace/line-rewrite fixes for
submissions that fail to parse.  The sklearn-style SyntaxRepairer wraps
the whole pipeline; the submodules expose each stage directly.
"""

from .container import ModelContainer, ShapeMismatch, VersionMismatch, \
    load_model, save_model
from .corpus import Corpus, MutationKind, Unmutatable, UnknownFamily, \
    generate_synthetic, inject_error, load_corpus, mutate_corpus, split_corpus
from .estimator import SyntaxRepairer, check_programs
from .lexer import Token, TokenKind, TokenSeq, UnsupportedCharacter, \
    detokenize, token_index_at, tokenize
from .model import LSTM, RNN, ModelConfig, SequenceModel, TrainHyper, \
    predict_next, predict_until_newline, train
from .parser import ErrorKind, ParseOutcome, first_error_line, parse_check
from .repair import Endpoint, RepairConfig, RepairResult, Status, Strategy, \
    classify_outcome, insert_at, replace_at, replace_line, synfix
from .vocab import EmptyCorpus, VocabConfig, Vocabulary, build_vocab, decode, \
    encode

__version__ = "0.1.0"

__all__ = [
    "Corpus", "EmptyCorpus", "Endpoint", "ErrorKind", "LSTM", "ModelConfig",
    "ModelContainer", "MutationKind", "ParseOutcome", "RNN", "RepairConfig",
    "RepairResult", "SequenceModel", "ShapeMismatch", "Status", "Strategy",
    "SyntaxRepairer", "Token", "TokenKind", "TokenSeq", "TrainHyper",
    "Unmutatable", "UnknownFamily", "UnsupportedCharacter", "VersionMismatch",
    "VocabConfig", "Vocabulary", "build_vocab", "check_programs",
    "classify_outcome", "decode", "detokenize", "encode", "first_error_line",
    "generate_synthetic", "inject_error", "insert_at", "load_corpus",
    "load_model", "mutate_corpus", "parse_check", "predict_next",
    "predict_until_newline", "replace_at", "replace_line", "save_model",
    "split_corpus", "synfix", "token_index_at", "tokenize", "train",
]
