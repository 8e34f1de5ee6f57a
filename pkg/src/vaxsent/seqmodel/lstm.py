"""LSTM cell with input, forget and output gates over ``[h_prev, x_t]``.

Batched forward/backward passes take a 0/1 mask; at masked steps the
hidden and cell states are carried through unchanged, so padding has no
effect in either reading direction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from vaxsent.nncore import glorot_uniform, sigmoid

GATES = ("i", "f", "c", "o")


@dataclass
class LstmParams:
    W_i: np.ndarray
    W_f: np.ndarray
    W_c: np.ndarray
    W_o: np.ndarray
    b_i: np.ndarray
    b_f: np.ndarray
    b_c: np.ndarray
    b_o: np.ndarray

    def __post_init__(self):
        h = self.b_i.shape[0]
        for g in GATES:
            W, b = getattr(self, f"W_{g}"), getattr(self, f"b_{g}")
            if W.ndim != 2 or W.shape[0] != h or W.shape[1] <= h or b.shape != (h,):
                raise ValueError(f"inconsistent shapes for gate {g}: {W.shape}, {b.shape}")

    @property
    def hidden(self) -> int:
        return self.b_i.shape[0]

    @property
    def input_size(self) -> int:
        return self.W_i.shape[1] - self.hidden

    @classmethod
    def init(cls, gen: np.random.Generator, input_size: int, hidden: int,
             dtype=np.float64, forget_bias: float = 1.0) -> "LstmParams":
        shape = (hidden, hidden + input_size)
        W = {f"W_{g}": glorot_uniform(gen, shape, dtype) for g in GATES}
        b = {f"b_{g}": np.zeros(hidden, dtype=dtype) for g in GATES}
        b["b_f"] += forget_bias
        return cls(**W, **b)

    def named(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}

    def stacked(self) -> tuple[np.ndarray, np.ndarray]:
        W = np.concatenate([self.W_i, self.W_f, self.W_c, self.W_o])
        b = np.concatenate([self.b_i, self.b_f, self.b_c, self.b_o])
        return W, b


def lstm_cell(x_t, h_prev, c_prev, p: LstmParams):
    """One step for a single example. Returns ``(h_t, c_t)``."""
    x_t, h_prev, c_prev = (np.asarray(a, dtype=np.float64) for a in (x_t, h_prev, c_prev))
    if x_t.shape != (p.input_size,) or h_prev.shape != (p.hidden,) or c_prev.shape != (p.hidden,):
        raise ValueError("dimension mismatch in lstm_cell")
    z = np.concatenate([h_prev, x_t])
    i = sigmoid(p.W_i @ z + p.b_i)
    f = sigmoid(p.W_f @ z + p.b_f)
    c_tilde = np.tanh(p.W_c @ z + p.b_c)
    c_t = f * c_prev + i * c_tilde
    o = sigmoid(p.W_o @ z + p.b_o)
    h_t = o * np.tanh(c_t)
    return h_t, c_t


def lstm_forward(x: np.ndarray, mask: np.ndarray, p: LstmParams, reverse: bool = False):
    """Run over a batch ``x`` of shape (B, T, E) with ``mask`` (B, T).

    Returns the hidden state at every position (B, T, H), in input order,
    the final hidden state (B, H), and a cache for :func:`lstm_backward`.
    """
    B, T, _ = x.shape
    H = p.hidden
    W, b = p.stacked()
    h = np.zeros((B, H), dtype=x.dtype)
    c = np.zeros((B, H), dtype=x.dtype)
    hs = np.zeros((B, T, H), dtype=x.dtype)
    order = range(T - 1, -1, -1) if reverse else range(T)
    steps = []
    for t in order:
        m = mask[:, t, None]
        xh = np.concatenate([h, x[:, t]], axis=1)
        z = xh @ W.T + b
        gi = sigmoid(z[:, :H])
        gf = sigmoid(z[:, H:2 * H])
        gc = np.tanh(z[:, 2 * H:3 * H])
        go = sigmoid(z[:, 3 * H:])
        c_new = gf * c + gi * gc
        tc = np.tanh(c_new)
        h_new = go * tc
        steps.append((t, m, xh, gi, gf, gc, go, c, tc))
        c = m * c_new + (1 - m) * c
        h = m * h_new + (1 - m) * h
        hs[:, t] = h
    return hs, h, (steps, W, x.shape)


def lstm_backward(dh_final: np.ndarray, cache, dhs: np.ndarray | None = None):
    """Backpropagate through time.

    ``dh_final`` is the loss gradient w.r.t. the final hidden state and
    ``dhs`` optionally adds gradients for every per-position output.
    Returns parameter gradients (named like :class:`LstmParams`) and the
    gradient w.r.t. the inputs ``x``.
    """
    steps, W, (B, T, E) = cache
    H = dh_final.shape[1]
    dW = np.zeros_like(W)
    db = np.zeros(W.shape[0], dtype=W.dtype)
    dx = np.zeros((B, T, E), dtype=dh_final.dtype)
    dh = dh_final.copy()
    dc = np.zeros_like(dh)
    for t, m, xh, gi, gf, gc, go, c_prev, tc in reversed(steps):
        if dhs is not None:
            dh = dh + dhs[:, t]
        dh_new, dc_new = m * dh, m * dc
        dh_keep, dc_keep = dh - dh_new, dc - dc_new
        do = dh_new * tc
        dc_new = dc_new + dh_new * go * (1 - tc * tc)
        dz = np.concatenate([
            dc_new * gc * gi * (1 - gi),
            dc_new * c_prev * gf * (1 - gf),
            dc_new * gi * (1 - gc * gc),
            do * go * (1 - go),
        ], axis=1)
        dW += dz.T @ xh
        db += dz.sum(axis=0)
        dxh = dz @ W
        dx[:, t] = dxh[:, H:]
        dh = dxh[:, :H] + dh_keep
        dc = dc_new * gf + dc_keep
    grads = {}
    for k, g in enumerate(GATES):
        grads[f"W_{g}"] = dW[k * H:(k + 1) * H]
        grads[f"b_{g}"] = db[k * H:(k + 1) * H]
    return grads, dx
