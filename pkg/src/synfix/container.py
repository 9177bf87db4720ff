"""Self-describing binary container for trained models.

Layout (all integers little-endian, sizes in bytes):

    magic         8 bytes, b"SYNFIX01"
    meta_len      u32
    meta          UTF-8 JSON: format_version, model/hyper configuration,
                  vocabulary, training metadata
    tensor_count  u32
    per tensor:   name_len u32, name UTF-8, rank u32, dims u32 x rank,
                  data float64 LE (prod(dims) * 8 bytes)

Roundtrips are bit-exact, including vocabulary order and tensor bytes.
"""

import io
import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .model import ModelConfig, SequenceModel, TrainHyper, param_shapes
from .vocab import Vocabulary

MAGIC = b"SYNFIX01"
FORMAT_VERSION = 1


class IoFailure(OSError):
    pass


class VersionMismatch(IoFailure):
    pass


class ShapeMismatch(IoFailure):
    pass


@dataclass
class ModelContainer:
    config: ModelConfig
    hyper: TrainHyper
    vocab: Vocabulary
    tensors: dict  # name -> float64 ndarray, insertion-ordered
    training_meta: dict = field(default_factory=dict)  # seed, epochs_run, final_loss
    format_version: int = FORMAT_VERSION

    def validate(self):
        if self.format_version != FORMAT_VERSION:
            raise VersionMismatch(f"format_version {self.format_version}")
        expected = param_shapes(self.config)
        got = {name: arr.shape for name, arr in self.tensors.items()}
        if got != expected:
            raise ShapeMismatch(f"tensor shapes {got} do not match config")
        if self.vocab.size != self.config.vocab_size:
            raise ShapeMismatch(
                f"vocab size {self.vocab.size} != config {self.config.vocab_size}")

    def model(self) -> SequenceModel:
        return SequenceModel(self.config, dict(self.tensors))


def container_from_training(model: SequenceModel, hyper: TrainHyper,
                            vocab: Vocabulary, epochs_run: int,
                            final_loss: float) -> ModelContainer:
    c = ModelContainer(
        config=model.config,
        hyper=hyper,
        vocab=vocab,
        tensors={name: np.asarray(arr, dtype="<f8")
                 for name, arr in model.params.items()},
        training_meta={"seed": model.config.seed, "epochs_run": epochs_run,
                       "final_loss": final_loss},
    )
    c.validate()
    return c


def _meta_json(c: ModelContainer) -> bytes:
    meta = {
        "format_version": c.format_version,
        "model": {
            "arch": c.config.arch,
            "num_layers": c.config.num_layers,
            "hidden_units": c.config.hidden_units,
            "vocab_size": c.config.vocab_size,
            "seed": c.config.seed,
        },
        "hyper": {
            "learning_rate": c.hyper.learning_rate,
            "seq_length": c.hyper.seq_length,
            "batch_size": c.hyper.batch_size,
            "rmsprop_decay": c.hyper.rmsprop_decay,
            "clip_threshold": c.hyper.clip_threshold,
            "max_epochs": c.hyper.max_epochs,
        },
        "vocab": {
            "id_to_token": c.vocab.id_to_token,
            "ident_id": c.vocab.ident_id,
            "counts": c.vocab.counts,
            "threshold": c.vocab.threshold,
        },
        "training": c.training_meta,
    }
    return json.dumps(meta, sort_keys=True, separators=(",", ":")).encode("utf-8")


def save_model(container: ModelContainer, sink):
    """Write the container to a path or binary file object."""
    container.validate()
    if hasattr(sink, "write"):
        _write(container, sink)
        return
    try:
        with open(sink, "wb") as fh:
            _write(container, fh)
    except OSError as exc:
        raise IoFailure(str(exc))


def _write(c: ModelContainer, fh):
    meta = _meta_json(c)
    fh.write(MAGIC)
    fh.write(struct.pack("<I", len(meta)))
    fh.write(meta)
    fh.write(struct.pack("<I", len(c.tensors)))
    for name, arr in c.tensors.items():
        raw = name.encode("utf-8")
        fh.write(struct.pack("<I", len(raw)))
        fh.write(raw)
        fh.write(struct.pack("<I", arr.ndim))
        for dim in arr.shape:
            fh.write(struct.pack("<I", dim))
        fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load_model(source) -> ModelContainer:
    """Read a container from a path or binary file object."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        try:
            with open(source, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise IoFailure(str(exc))
    return _parse(data)


def _parse(data: bytes) -> ModelContainer:
    buf = io.BytesIO(data)

    def take(n, what):
        chunk = buf.read(n)
        if len(chunk) != n:
            raise ShapeMismatch(f"truncated container while reading {what}")
        return chunk

    def u32(what):
        return struct.unpack("<I", take(4, what))[0]

    magic = take(8, "magic")
    if magic != MAGIC:
        if magic.startswith(b"SYNFIX"):
            raise VersionMismatch(f"unsupported container version {magic!r}")
        raise IoFailure("not a model container")
    meta_len = u32("metadata length")
    try:
        meta = json.loads(take(meta_len, "metadata").decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise IoFailure(f"bad metadata: {exc}")
    version = meta.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"format_version {version}")

    tensors = {}
    count = u32("tensor count")
    for _ in range(count):
        name = take(u32("tensor name length"), "tensor name").decode("utf-8")
        rank = u32("tensor rank")
        dims = tuple(u32("tensor dims") for _ in range(rank))
        size = int(np.prod(dims, dtype=np.int64)) if dims else 1
        raw = take(size * 8, f"tensor {name} data")
        tensors[name] = np.frombuffer(raw, dtype="<f8").reshape(dims).copy()
    if buf.read(1):
        raise IoFailure("trailing bytes after last tensor")

    try:
        config = ModelConfig(**meta["model"])
        hyper = TrainHyper(**meta["hyper"])
        v = meta["vocab"]
        vocab = Vocabulary(
            token_to_id={lex: i for i, lex in enumerate(v["id_to_token"])},
            id_to_token=list(v["id_to_token"]),
            ident_id=v["ident_id"],
            counts=v["counts"],
            threshold=v["threshold"],
        )
        training = meta.get("training", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise IoFailure(f"bad metadata fields: {exc}")
    container = ModelContainer(config, hyper, vocab, tensors, training)
    container.validate()
    return container
