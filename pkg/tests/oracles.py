"""Independent numeric oracles for the gradient tests.

The finite-difference gradient goes through sequence_loss, which runs on
the single-step forward path, so it exercises neither the batched
forward nor the analytic backward code it is checking.
"""

import numpy as np

from synfix.model import sequence_loss


def batch_mean_loss(model, windows):
    return sum(sequence_loss(model, i, t) for i, t in windows) / len(windows)


def finite_difference_grads(model, windows, eps=1e-5):
    """Central differences of the mean window loss, per component."""
    grads = {}
    for name, arr in model.params.items():
        g = np.zeros_like(arr)
        it = np.nditer(arr, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            saved = arr[idx]
            arr[idx] = saved + eps
            up = batch_mean_loss(model, windows)
            arr[idx] = saved - eps
            down = batch_mean_loss(model, windows)
            arr[idx] = saved
            g[idx] = (up - down) / (2 * eps)
        grads[name] = g
    return grads


def max_relative_error(got: dict, want: dict, floor=1e-4) -> float:
    """Worst relative disagreement over all components.

    The denominator is floored so noise-level components (where the
    finite difference itself loses precision) are compared absolutely at
    the floor scale.
    """
    worst = 0.0
    for name in want:
        a, b = got[name], want[name]
        denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), floor)
        worst = max(worst, float(np.max(np.abs(a - b) / denom)))
    return worst
