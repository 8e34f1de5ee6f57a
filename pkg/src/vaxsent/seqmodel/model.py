"""Embedding + (Bi)LSTM + softmax classifier over three polarity classes."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from vaxsent.nncore import categorical_cross_entropy, glorot_uniform, rng, softmax
from vaxsent.seqmodel.lstm import LstmParams, lstm_backward, lstm_forward
from vaxsent.seqmodel.vocab import Vocab

N_CLASSES = 3


class ModelKind(str, enum.Enum):
    LSTM = "lstm"
    BILSTM = "bilstm"


@dataclass
class SequenceBatch:
    sequences: np.ndarray  # (B, T) int, left padded with 0
    labels: np.ndarray  # (B, 3) one-hot

    def __post_init__(self):
        self.sequences = np.asarray(self.sequences, dtype=np.int64)
        self.labels = np.asarray(self.labels, dtype=np.float64)
        if self.sequences.ndim != 2 or self.labels.shape != (len(self.sequences), N_CLASSES):
            raise ValueError("sequences must be (B, T) and labels (B, 3)")
        if not np.allclose(self.labels.sum(axis=1), 1.0):
            raise ValueError("label rows must be one-hot")

    def __len__(self) -> int:
        return len(self.sequences)


@dataclass
class ModelState:
    kind: ModelKind
    embedding: np.ndarray
    forward_cell: LstmParams
    W_out: np.ndarray
    b_out: np.ndarray
    backward_cell: LstmParams | None = None
    vocab: Vocab | None = None
    seed: int = 0
    config: dict = field(default_factory=dict)
    history: list[dict] = field(default_factory=list)
    optimizer_cache: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.kind = ModelKind(self.kind)
        if (self.backward_cell is not None) != (self.kind is ModelKind.BILSTM):
            raise ValueError("backward_cell must be present exactly for bilstm models")
        d = self.forward_cell.hidden * (2 if self.backward_cell is not None else 1)
        if self.W_out.shape != (N_CLASSES, d) or self.b_out.shape != (N_CLASSES,):
            raise ValueError(f"output layer must be (3, {d}) plus bias (3,)")
        if self.embedding.shape[1] != self.forward_cell.input_size:
            raise ValueError("embedding width does not match the cell input size")

    @classmethod
    def init(cls, kind: ModelKind | str, vocab_size: int, embed_dim: int, hidden: int,
             seed: int = 0, dtype=np.float64, vocab: Vocab | None = None) -> "ModelState":
        kind = ModelKind(kind)
        gen = rng(seed, 1)
        emb = glorot_uniform(gen, (vocab_size, embed_dim), dtype)
        fwd = LstmParams.init(gen, embed_dim, hidden, dtype)
        bwd = LstmParams.init(gen, embed_dim, hidden, dtype) if kind is ModelKind.BILSTM else None
        d = hidden * (2 if bwd is not None else 1)
        W_out = glorot_uniform(gen, (N_CLASSES, d), dtype)
        return cls(kind=kind, embedding=emb, forward_cell=fwd, backward_cell=bwd,
                   W_out=W_out, b_out=np.zeros(N_CLASSES, dtype=dtype), vocab=vocab, seed=seed)

    @property
    def hidden(self) -> int:
        return self.forward_cell.hidden

    @property
    def dtype(self):
        return self.embedding.dtype

    def parameters(self) -> dict[str, np.ndarray]:
        """Named views of every trainable array, in a fixed order."""
        params = {"embedding": self.embedding}
        params.update({f"fwd.{k}": v for k, v in self.forward_cell.named().items()})
        if self.backward_cell is not None:
            params.update({f"bwd.{k}": v for k, v in self.backward_cell.named().items()})
        params["W_out"] = self.W_out
        params["b_out"] = self.b_out
        return params


def _trim(seqs: np.ndarray) -> np.ndarray:
    # leading columns that are padding in every row change nothing under masking
    nonpad = np.flatnonzero((seqs != 0).any(axis=0))
    return seqs[:, nonpad[0]:] if nonpad.size else seqs[:, -1:]


def encode_forward(state: ModelState, seqs: np.ndarray, trim: bool = True):
    """Sequence representation for every row of ``seqs`` plus backprop caches."""
    seqs = np.atleast_2d(np.asarray(seqs, dtype=np.int64))
    if seqs.size and seqs.max() >= state.embedding.shape[0]:
        raise ValueError("token index outside the embedding table")
    if trim:
        seqs = _trim(seqs)
    mask = (seqs != 0).astype(state.dtype)
    x = state.embedding[seqs]
    _, h_f, cache_f = lstm_forward(x, mask, state.forward_cell)
    if state.backward_cell is None:
        return h_f, (seqs, cache_f, None)
    _, h_b, cache_b = lstm_forward(x, mask, state.backward_cell, reverse=True)
    return np.concatenate([h_f, h_b], axis=1), (seqs, cache_f, cache_b)


def bilstm_forward(seq, state: ModelState):
    """Representation of one sequence as ``(vector, all_padding_flag)``.

    The vector concatenates the final forward and backward hidden states.
    """
    if state.kind is not ModelKind.BILSTM:
        raise ValueError("bilstm_forward needs a bilstm model")
    seq = np.asarray(seq, dtype=np.int64).reshape(1, -1)
    rep, _ = encode_forward(state, seq)
    return rep[0], not bool((seq != 0).any())


def predict_proba(state: ModelState, seqs: np.ndarray, batch_size: int = 512) -> np.ndarray:
    seqs = np.atleast_2d(np.asarray(seqs, dtype=np.int64))
    out = np.zeros((len(seqs), N_CLASSES))
    for start in range(0, len(seqs), batch_size):
        chunk = seqs[start:start + batch_size]
        rep, _ = encode_forward(state, chunk)
        out[start:start + len(chunk)] = softmax(rep @ state.W_out.T + state.b_out)
    return out


def argmax_label(probs: np.ndarray) -> np.ndarray:
    # np.argmax returns the first maximum, i.e. the lowest class index on ties
    return np.argmax(probs, axis=-1)


def loss_and_grads(state: ModelState, batch: SequenceBatch):
    """Mean cross-entropy over the batch and the gradient of every parameter."""
    rep, (seqs, cache_f, cache_b) = encode_forward(state, batch.sequences)
    logits = rep @ state.W_out.T + state.b_out
    probs = softmax(logits)
    labels = batch.labels.astype(state.dtype)
    loss = categorical_cross_entropy(probs, labels)

    n = len(batch)
    dlogits = (probs - labels) / n
    grads = {"W_out": dlogits.T @ rep, "b_out": dlogits.sum(axis=0)}
    drep = dlogits @ state.W_out
    H = state.hidden
    g_f, dx = lstm_backward(drep[:, :H], cache_f)
    grads.update({f"fwd.{k}": v for k, v in g_f.items()})
    if cache_b is not None:
        g_b, dx_b = lstm_backward(drep[:, H:], cache_b)
        grads.update({f"bwd.{k}": v for k, v in g_b.items()})
        dx = dx + dx_b
    d_emb = np.zeros_like(state.embedding)
    np.add.at(d_emb, seqs, dx)
    grads["embedding"] = d_emb
    return loss, grads, probs
