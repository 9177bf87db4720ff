"""Scikit-learn style front end for the repair pipeline.

SyntaxRepairer.fit consumes raw program texts, keeps the parse-clean
ones, builds the vocabulary and trains the sequence model; predict maps
broken programs to repaired source.  Hyperparameters live in __init__
so get_params/set_params/clone work and the estimator drops into
pipelines and grid searches.
"""

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .container import ModelContainer, container_from_training, load_model, \
    save_model
from .lexer import tokenize
from .model import ModelConfig, TrainHyper, train
from .parser import parse_check
from .repair import DEFAULT_STRATEGY_ORDER, RepairConfig, RepairResult, \
    Status, synfix
from .vocab import EmptyCorpus, VocabConfig, build_vocab


def check_programs(X):
    """Validate a collection of program texts; returns it as a list."""
    if isinstance(X, str):
        raise TypeError("expected a collection of program texts, got one string")
    X = list(X)
    if not X:
        raise ValueError("empty program collection")
    for i, text in enumerate(X):
        if not isinstance(text, str):
            raise TypeError(f"program {i} is {type(text).__name__}, not str")
    return X


class SyntaxRepairer(BaseEstimator):
    """Per-assignment syntax repair: fit on correct programs, predict fixes.

    Parameters mirror the training and repair knobs: model architecture
    (`arch`, `num_layers`, `hidden_units`), vocabulary threshold, the
    optimizer settings, prediction length `k` and the strategy order of
    the repair search.
    """

    def __init__(self, arch="rnn", num_layers=1, hidden_units=128,
                 threshold=4, learning_rate=0.002, seq_length=10,
                 batch_size=50, rmsprop_decay=0.97, clip_threshold=5.0,
                 max_epochs=40, k=10, max_line_len=40,
                 strategy_order=DEFAULT_STRATEGY_ORDER, seed=0, verbose=False):
        self.arch = arch
        self.num_layers = num_layers
        self.hidden_units = hidden_units
        self.threshold = threshold
        self.learning_rate = learning_rate
        self.seq_length = seq_length
        self.batch_size = batch_size
        self.rmsprop_decay = rmsprop_decay
        self.clip_threshold = clip_threshold
        self.max_epochs = max_epochs
        self.k = k
        self.max_line_len = max_line_len
        self.strategy_order = strategy_order
        self.seed = seed
        self.verbose = verbose

    # -- configuration views -------------------------------------------

    def _hyper(self) -> TrainHyper:
        return TrainHyper(
            learning_rate=self.learning_rate,
            seq_length=self.seq_length,
            batch_size=self.batch_size,
            rmsprop_decay=self.rmsprop_decay,
            clip_threshold=self.clip_threshold,
            max_epochs=self.max_epochs,
        )

    def _repair_config(self) -> RepairConfig:
        return RepairConfig(
            k=self.k,
            max_line_len=self.max_line_len,
            strategy_order=tuple(self.strategy_order),
        )

    # -- estimator API ---------------------------------------------------

    def fit(self, X, y=None):
        """Train on the syntactically valid programs in X.

        Invalid programs are ignored (they are repair inputs, not
        training data).  Raises EmptyCorpus when nothing valid remains.
        """
        X = check_programs(X)
        valid = [text for text in X if parse_check(text).ok]
        if not valid:
            raise EmptyCorpus("no syntactically valid programs to train on")
        seqs = [tokenize(text) for text in valid]
        self.vocab_ = build_vocab(seqs, VocabConfig(threshold=self.threshold))
        stream = []
        for seq in seqs:
            stream.extend(self.vocab_.ids(seq))
        config = ModelConfig(
            arch=self.arch,
            num_layers=self.num_layers,
            hidden_units=self.hidden_units,
            vocab_size=self.vocab_.size,
            seed=self.seed,
        )
        progress = None
        if self.verbose:
            progress = lambda epoch, loss: print(f"epoch {epoch} loss {loss:.6f}")
        self.model_, self.losses_ = train(stream, config, self._hyper(), progress)
        self.n_training_programs_ = len(valid)
        return self

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError("SyntaxRepairer is not fitted; call fit first")

    def repair(self, source: str) -> RepairResult:
        """Full repair search on one syntactically broken program."""
        self._check_fitted()
        return synfix(source, self.model_, self.vocab_, self._repair_config())

    def predict(self, X):
        """Repaired source per program; unmodified text when already
        valid or when no fix was found."""
        self._check_fitted()
        X = check_programs(X)
        out = []
        for text in X:
            if parse_check(text).ok:
                out.append(text)
                continue
            result = self.repair(text)
            out.append(result.repaired_source if result.repaired_source else text)
        return out

    def score(self, X, y=None) -> float:
        """Fraction of the syntactically broken programs in X that are
        completely fixed."""
        self._check_fitted()
        X = check_programs(X)
        broken = [text for text in X if not parse_check(text).ok]
        if not broken:
            raise ValueError("score needs at least one syntactically broken program")
        fixed = sum(
            self.repair(text).status is Status.COMPLETELY_FIXED for text in broken)
        return fixed / len(broken)

    # -- persistence -----------------------------------------------------

    def to_container(self) -> ModelContainer:
        self._check_fitted()
        return container_from_training(
            self.model_, self._hyper(), self.vocab_,
            epochs_run=len(self.losses_),
            final_loss=float(self.losses_[-1]),
        )

    def save(self, path):
        save_model(self.to_container(), path)

    @classmethod
    def from_container(cls, container: ModelContainer) -> "SyntaxRepairer":
        est = cls(
            arch=container.config.arch,
            num_layers=container.config.num_layers,
            hidden_units=container.config.hidden_units,
            threshold=container.vocab.threshold,
            learning_rate=container.hyper.learning_rate,
            seq_length=container.hyper.seq_length,
            batch_size=container.hyper.batch_size,
            rmsprop_decay=container.hyper.rmsprop_decay,
            clip_threshold=container.hyper.clip_threshold,
            max_epochs=container.hyper.max_epochs,
            seed=container.config.seed,
        )
        est.model_ = container.model()
        est.vocab_ = container.vocab
        est.losses_ = [container.training_meta.get("final_loss", float("nan"))]
        return est

    @classmethod
    def load(cls, path) -> "SyntaxRepairer":
        return cls.from_container(load_model(path))
