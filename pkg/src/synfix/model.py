"""Token sequence model: numpy RNN/LSTM trained with truncated BPTT.

The model predicts the next token id given a prefix.  Training consumes
the corpus as one id stream chopped into fixed-length windows whose
targets are the inputs shifted left by one; gradients are computed by
backpropagation through time within each window (no state carry across
windows) and applied with rmsprop after elementwise clipping.
"""

import numpy as np
from dataclasses import dataclass

RNN = "rnn"
LSTM = "lstm"

INIT_SCALE = 0.08
RMSPROP_EPS = 1e-8


class DimensionMismatch(ValueError):
    pass


class CorpusTooSmall(ValueError):
    pass


class EmptyPrefix(ValueError):
    pass


@dataclass(frozen=True)
class ModelConfig:
    arch: str = RNN
    num_layers: int = 1
    hidden_units: int = 128
    vocab_size: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.arch not in (RNN, LSTM):
            raise ValueError(f"unknown arch {self.arch!r}")
        if self.num_layers < 1 or self.hidden_units < 1 or self.vocab_size < 2:
            raise ValueError("num_layers/hidden_units/vocab_size out of range")


@dataclass(frozen=True)
class TrainHyper:
    learning_rate: float = 0.002
    seq_length: int = 10
    batch_size: int = 50
    rmsprop_decay: float = 0.97
    clip_threshold: float = 5.0
    max_epochs: int = 40

    def __post_init__(self):
        vals = (self.learning_rate, self.seq_length, self.batch_size,
                self.rmsprop_decay, self.clip_threshold, self.max_epochs)
        if any(v <= 0 for v in vals):
            raise ValueError("all hyperparameters must be positive")


_GATES = "ifog"  # input, forget, output, candidate


def _layer_input_dim(config: ModelConfig, layer: int) -> int:
    return config.vocab_size if layer == 0 else config.hidden_units


def param_shapes(config: ModelConfig) -> dict:
    """Expected parameter names and shapes for a configuration."""
    H, I = config.hidden_units, config.vocab_size
    shapes = {}
    for l in range(config.num_layers):
        din = _layer_input_dim(config, l)
        if config.arch == RNN:
            shapes[f"l{l}.W"] = (H, din)
            shapes[f"l{l}.V"] = (H, H)
            shapes[f"l{l}.b"] = (H,)
        else:
            for g in _GATES:
                shapes[f"l{l}.W{g}"] = (H, din)
                shapes[f"l{l}.R{g}"] = (H, H)
                shapes[f"l{l}.b{g}"] = (H,)
    shapes["out.U"] = (I, H)
    shapes["out.b"] = (I,)
    return shapes


def init_params(config: ModelConfig) -> dict:
    rng = np.random.default_rng(config.seed)
    return {
        name: rng.uniform(-INIT_SCALE, INIT_SCALE, shape)
        for name, shape in param_shapes(config).items()
    }


class SequenceModel:
    """Architecture configuration plus named parameter arrays."""

    def __init__(self, config: ModelConfig, params: dict = None):
        self.config = config
        self.params = init_params(config) if params is None else params
        expected = param_shapes(config)
        got = {name: arr.shape for name, arr in self.params.items()}
        if got != expected:
            raise DimensionMismatch(
                f"parameter shapes {got} do not match config {expected}")

    def zero_state(self, batch: int = None):
        """Initial hidden state: one vector per layer (an (h, c) pair for LSTM).

        With `batch` set, state entries are (batch, H) matrices instead.
        """
        H = self.config.hidden_units
        shape = (H,) if batch is None else (batch, H)
        if self.config.arch == RNN:
            return [np.zeros(shape) for _ in range(self.config.num_layers)]
        return [(np.zeros(shape), np.zeros(shape))
                for _ in range(self.config.num_layers)]


def softmax(z):
    """Row-wise softmax, stabilized by subtracting the row max."""
    z = np.asarray(z, dtype=float)
    m = z.max(axis=-1, keepdims=True)
    e = np.exp(z - m)
    return e / e.sum(axis=-1, keepdims=True)


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def forward_step(model: SequenceModel, x, state):
    """One recurrence step on a single one-hot input vector.

    Returns the next hidden state and the softmax distribution over the
    following token.  Stacked layers feed each layer's state upward.
    """
    x = np.asarray(x, dtype=float)
    I = model.config.vocab_size
    if x.shape != (I,):
        raise DimensionMismatch(f"input has shape {x.shape}, expected ({I},)")
    p = model.params
    new_state = []
    layer_in = x
    for l in range(model.config.num_layers):
        if model.config.arch == RNN:
            s_prev = state[l]
            s = np.tanh(p[f"l{l}.W"] @ layer_in + p[f"l{l}.V"] @ s_prev + p[f"l{l}.b"])
            new_state.append(s)
            layer_in = s
        else:
            h_prev, c_prev = state[l]
            zs = {
                g: p[f"l{l}.W{g}"] @ layer_in + p[f"l{l}.R{g}"] @ h_prev + p[f"l{l}.b{g}"]
                for g in _GATES
            }
            i = _sigmoid(zs["i"])
            f = _sigmoid(zs["f"])
            o = _sigmoid(zs["o"])
            g = np.tanh(zs["g"])
            c = f * c_prev + i * g
            h = o * np.tanh(c)
            new_state.append((h, c))
            layer_in = h
    dist = softmax(p["out.U"] @ layer_in + p["out.b"])
    return new_state, dist


def sequence_loss(model: SequenceModel, input_ids, target_ids) -> float:
    """Mean cross-entropy of the targets, run from a zero initial state.

    Deliberately built on the single-step path so it can serve as an
    independent check of the batched training computation.
    """
    input_ids = list(input_ids)
    target_ids = list(target_ids)
    if len(input_ids) != len(target_ids):
        raise DimensionMismatch("input and target lengths differ")
    if not input_ids:
        raise DimensionMismatch("empty sequence")
    I = model.config.vocab_size
    state = model.zero_state()
    total = 0.0
    for tok, tgt in zip(input_ids, target_ids):
        x = np.zeros(I)
        x[tok] = 1.0
        state, dist = forward_step(model, x, state)
        total -= np.log(dist[tgt])
    return total / len(input_ids)


# -- batched training path -------------------------------------------------

def _stack_windows(windows):
    pairs = list(windows)
    if not pairs:
        raise DimensionMismatch("empty batch")
    inputs = np.asarray([list(i) for i, _ in pairs], dtype=np.intp)
    targets = np.asarray([list(t) for _, t in pairs], dtype=np.intp)
    if inputs.shape != targets.shape or inputs.ndim != 2 or inputs.shape[1] < 1:
        raise DimensionMismatch("windows must share one (input, target) length")
    return inputs, targets


def _batch_forward(model, inputs):
    """Forward over an id batch (B, T); caches per-step activations."""
    p = model.params
    B, T = inputs.shape
    L = model.config.num_layers
    arch = model.config.arch
    state = model.zero_state(batch=B)
    cache = {"states": [], "logits": [], "inputs": inputs}
    for t in range(T):
        ids = inputs[:, t]
        step = []
        layer_in = None
        for l in range(L):
            if arch == RNN:
                s_prev = state[l]
                if l == 0:
                    a = p["l0.W"][:, ids].T + s_prev @ p["l0.V"].T + p["l0.b"]
                else:
                    a = layer_in @ p[f"l{l}.W"].T + s_prev @ p[f"l{l}.V"].T + p[f"l{l}.b"]
                s = np.tanh(a)
                step.append({"s": s, "s_prev": s_prev, "x": layer_in})
                state[l] = s
                layer_in = s
            else:
                h_prev, c_prev = state[l]
                zs = {}
                for g in _GATES:
                    if l == 0:
                        zs[g] = p[f"l0.W{g}"][:, ids].T + h_prev @ p[f"l0.R{g}"].T + p[f"l0.b{g}"]
                    else:
                        zs[g] = (layer_in @ p[f"l{l}.W{g}"].T
                                 + h_prev @ p[f"l{l}.R{g}"].T + p[f"l{l}.b{g}"])
                i = _sigmoid(zs["i"])
                f = _sigmoid(zs["f"])
                o = _sigmoid(zs["o"])
                g = np.tanh(zs["g"])
                c = f * c_prev + i * g
                tc = np.tanh(c)
                h = o * tc
                step.append({"i": i, "f": f, "o": o, "g": g, "c": c, "tc": tc,
                             "c_prev": c_prev, "h_prev": h_prev, "x": layer_in})
                state[l] = (h, c)
                layer_in = h
        logits = layer_in @ p["out.U"].T + p["out.b"]
        cache["states"].append(step)
        cache["logits"].append(logits)
    return cache


def _batch_loss(logits_seq, targets):
    B, T = targets.shape
    total = 0.0
    probs = []
    for t in range(T):
        z = logits_seq[t]
        m = z.max(axis=1, keepdims=True)
        e = np.exp(z - m)
        sums = e.sum(axis=1)
        p = e / sums[:, None]
        probs.append(p)
        total -= np.sum(z[np.arange(B), targets[:, t]] - m[:, 0] - np.log(sums))
    return total / (B * T), probs


def bptt_gradients(model: SequenceModel, windows):
    """Gradients of the mean window loss for every parameter.

    Returns (grads, loss); grads shapes mirror model.params.  The
    recurrence is truncated at window boundaries.
    """
    inputs, targets = _stack_windows(windows)
    return _grads_on_arrays(model, inputs, targets)


def _grads_on_arrays(model, inputs, targets):
    if np.any(inputs >= model.config.vocab_size) or np.any(targets >= model.config.vocab_size):
        raise DimensionMismatch("token id outside vocabulary")
    p = model.params
    B, T = inputs.shape
    L = model.config.num_layers
    arch = model.config.arch
    H = model.config.hidden_units

    cache = _batch_forward(model, inputs)
    loss, probs = _batch_loss(cache["logits"], targets)

    grads = {name: np.zeros_like(arr) for name, arr in p.items()}
    scale = 1.0 / (B * T)
    if arch == RNN:
        d_next = [np.zeros((B, H)) for _ in range(L)]
    else:
        d_next = [(np.zeros((B, H)), np.zeros((B, H))) for _ in range(L)]

    for t in range(T - 1, -1, -1):
        step = cache["states"][t]
        ids = inputs[:, t]
        dz = probs[t].copy()
        dz[np.arange(B), targets[:, t]] -= 1.0
        dz *= scale
        top = step[L - 1]["s"] if arch == RNN else step[L - 1]["o"] * step[L - 1]["tc"]
        grads["out.U"] += dz.T @ top
        grads["out.b"] += dz.sum(axis=0)
        d_above = dz @ p["out.U"]  # gradient flowing into the top layer's output

        for l in range(L - 1, -1, -1):
            st = step[l]
            if arch == RNN:
                ds = d_above + d_next[l]
                da = ds * (1.0 - st["s"] ** 2)
                if l == 0:
                    np.add.at(grads["l0.W"].T, ids, da)
                else:
                    grads[f"l{l}.W"] += da.T @ st["x"]
                grads[f"l{l}.V"] += da.T @ st["s_prev"]
                grads[f"l{l}.b"] += da.sum(axis=0)
                d_next[l] = da @ p[f"l{l}.V"]
                d_above = da @ p[f"l{l}.W"] if l > 0 else None
            else:
                dh_next, dc_next = d_next[l]
                dh = d_above + dh_next
                do = dh * st["tc"]
                dc = dh * st["o"] * (1.0 - st["tc"] ** 2) + dc_next
                di = dc * st["g"]
                df = dc * st["c_prev"]
                dg = dc * st["i"]
                dc_prev = dc * st["f"]
                dzs = {
                    "i": di * st["i"] * (1.0 - st["i"]),
                    "f": df * st["f"] * (1.0 - st["f"]),
                    "o": do * st["o"] * (1.0 - st["o"]),
                    "g": dg * (1.0 - st["g"] ** 2),
                }
                dh_prev = np.zeros((B, H))
                dx = None if l == 0 else np.zeros_like(st["x"])
                for g in _GATES:
                    dzg = dzs[g]
                    if l == 0:
                        np.add.at(grads[f"l0.W{g}"].T, ids, dzg)
                    else:
                        grads[f"l{l}.W{g}"] += dzg.T @ st["x"]
                        dx += dzg @ p[f"l{l}.W{g}"]
                    grads[f"l{l}.R{g}"] += dzg.T @ st["h_prev"]
                    grads[f"l{l}.b{g}"] += dzg.sum(axis=0)
                    dh_prev += dzg @ p[f"l{l}.R{g}"]
                d_next[l] = (dh_prev, dc_prev)
                d_above = dx
    return grads, loss


def rmsprop_update(params: dict, grads: dict, opt_state: dict, hyper: TrainHyper):
    """Clipped rmsprop step, applied in place; returns (params, opt_state).

    Each gradient component is clipped into [-clip, clip] before both the
    cache update and the parameter step.
    """
    if set(params) != set(grads) or set(params) != set(opt_state):
        raise DimensionMismatch("params, grads and optimizer state disagree")
    clip = hyper.clip_threshold
    decay = hyper.rmsprop_decay
    for name, theta in params.items():
        if grads[name].shape != theta.shape:
            raise DimensionMismatch(f"gradient shape mismatch for {name}")
        g = np.clip(grads[name], -clip, clip)
        cache = opt_state[name]
        cache *= decay
        cache += (1.0 - decay) * g * g
        theta -= hyper.learning_rate * g / np.sqrt(cache + RMSPROP_EPS)
    return params, opt_state


def init_optimizer(params: dict) -> dict:
    return {name: np.zeros_like(arr) for name, arr in params.items()}


def train(stream, config: ModelConfig, hyper: TrainHyper = TrainHyper(),
          progress=None):
    """Train a fresh model on a token-id stream.

    The stream is cut into consecutive windows of hyper.seq_length with
    left-shifted targets, grouped into batches in order (no shuffling),
    and run for hyper.max_epochs epochs.  Returns (model, epoch_losses).
    Bit-reproducible for a fixed config.seed on one platform.
    """
    ids = np.asarray(list(stream), dtype=np.intp)
    L = hyper.seq_length
    if ids.ndim != 1 or len(ids) < L + 1:
        raise CorpusTooSmall(
            f"stream of {ids.size} tokens is too short for windows of {L}")
    n_windows = (len(ids) - 1) // L
    starts = np.arange(n_windows) * L
    offs = np.arange(L)
    inputs = ids[starts[:, None] + offs]
    targets = ids[starts[:, None] + offs + 1]

    model = SequenceModel(config)
    opt = init_optimizer(model.params)
    losses = []
    for epoch in range(hyper.max_epochs):
        total = 0.0
        for b in range(0, n_windows, hyper.batch_size):
            bi = inputs[b:b + hyper.batch_size]
            bt = targets[b:b + hyper.batch_size]
            grads, loss = _grads_on_arrays(model, bi, bt)
            rmsprop_update(model.params, grads, opt, hyper)
            total += loss * bi.shape[0]
        epoch_loss = total / n_windows
        losses.append(epoch_loss)
        if progress is not None:
            progress(epoch + 1, epoch_loss)
    return model, losses


def _step_ids(model, ids, state):
    """Single step over a batch of token ids; returns (state, logits)."""
    p = model.params
    ids = np.asarray(ids, dtype=np.intp)
    layer_in = None
    new_state = []
    for l in range(model.config.num_layers):
        if model.config.arch == RNN:
            s_prev = state[l]
            if l == 0:
                a = p["l0.W"][:, ids].T + s_prev @ p["l0.V"].T + p["l0.b"]
            else:
                a = layer_in @ p[f"l{l}.W"].T + s_prev @ p[f"l{l}.V"].T + p[f"l{l}.b"]
            s = np.tanh(a)
            new_state.append(s)
            layer_in = s
        else:
            h_prev, c_prev = state[l]
            zs = {}
            for g in _GATES:
                if l == 0:
                    zs[g] = p[f"l0.W{g}"][:, ids].T + h_prev @ p[f"l0.R{g}"].T + p[f"l0.b{g}"]
                else:
                    zs[g] = (layer_in @ p[f"l{l}.W{g}"].T
                             + h_prev @ p[f"l{l}.R{g}"].T + p[f"l{l}.b{g}"])
            i = _sigmoid(zs["i"])
            f = _sigmoid(zs["f"])
            o = _sigmoid(zs["o"])
            g = np.tanh(zs["g"])
            c = f * c_prev + i * g
            h = o * np.tanh(c)
            new_state.append((h, c))
            layer_in = h
    logits = layer_in @ p["out.U"].T + p["out.b"]
    return new_state, logits


def _consume_prefix(model, prefix):
    state = model.zero_state(batch=1)
    logits = None
    for tok in prefix:
        state, logits = _step_ids(model, [tok], state)
    return state, logits


def predict_next(model: SequenceModel, prefix, k: int):
    """Greedy continuation: k argmax tokens, each fed back as input.

    Ties break toward the lowest token id.
    """
    prefix = list(prefix)
    if not prefix:
        raise EmptyPrefix("prediction needs a non-empty prefix")
    if k < 1:
        raise ValueError("k must be >= 1")
    state, logits = _consume_prefix(model, prefix)
    out = []
    for _ in range(k):
        nxt = int(np.argmax(logits[0]))
        out.append(nxt)
        state, logits = _step_ids(model, [nxt], state)
    return out


def predict_until_newline(model: SequenceModel, prefix, newline_id: int,
                          max_len: int = 40):
    """Greedy decode through the first NEWLINE token (inclusive).

    Returns (ids, complete); complete is False when max_len tokens were
    emitted without reaching a newline, in which case the prediction is
    unusable as a line.
    """
    prefix = list(prefix)
    if not prefix:
        raise EmptyPrefix("prediction needs a non-empty prefix")
    state, logits = _consume_prefix(model, prefix)
    out = []
    for _ in range(max_len):
        nxt = int(np.argmax(logits[0]))
        out.append(nxt)
        if nxt == newline_id:
            return out, True
        state, logits = _step_ids(model, [nxt], state)
    return out, False
