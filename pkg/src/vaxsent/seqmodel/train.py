from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Sequence, TypeVar

import numpy as np

from vaxsent.nncore import RMSProp, rng
from vaxsent.seqmodel.model import (ModelKind, ModelState, SequenceBatch, argmax_label,
                                    loss_and_grads, predict_proba)
from vaxsent.seqmodel.vocab import Vocab

log = logging.getLogger(__name__)

T = TypeVar("T")


class TrainingDiverged(FloatingPointError):
    pass


@dataclass
class TrainConfig:
    kind: str = "lstm"
    epochs: int = 10
    batch_size: int = 128
    maxlen: int = 60
    embed_dim: int = 64
    hidden: int = 64
    vocab_size: int = 20000
    lr: float = 1e-3
    rho: float = 0.9
    eps: float = 1e-7
    seed: int = 0
    dtype: str = "float32"
    stop_accuracy: float | None = None  # end early once an epoch's training accuracy reaches this

    def __post_init__(self):
        ModelKind(self.kind)
        if self.epochs < 1 or self.batch_size < 1 or self.maxlen < 1:
            raise ValueError("epochs, batch_size and maxlen must be positive")
        if self.dtype not in ("float32", "float64"):
            raise ValueError("dtype must be float32 or float64")


def train_test_split(records: Sequence[T], test_fraction: float = 0.25,
                     seed: int = 0) -> tuple[list[T], list[T]]:
    """Seeded shuffle, then ``ceil(N * f)`` items go to the test side."""
    if not 0 < test_fraction < 1:
        raise ValueError("test_fraction must lie in (0, 1)")
    n = len(records)
    if n == 0:
        raise ValueError("cannot split an empty collection")
    n_test = math.ceil(n * test_fraction)
    order = rng(seed, 0).permutation(n)
    train = [records[k] for k in order[: n - n_test]]
    test = [records[k] for k in order[n - n_test:]]
    return train, test


def accuracy(state: ModelState, data: SequenceBatch) -> float:
    if len(data) == 0:
        return float("nan")
    pred = argmax_label(predict_proba(state, data.sequences))
    return float(np.mean(pred == np.argmax(data.labels, axis=1)))


def evaluate_loss(state: ModelState, data: SequenceBatch, batch_size: int = 512) -> tuple[float, float]:
    """Mean loss and accuracy over ``data`` without updating anything."""
    total, correct = 0.0, 0
    for start in range(0, len(data), batch_size):
        chunk = SequenceBatch(data.sequences[start:start + batch_size],
                              data.labels[start:start + batch_size])
        loss, _, probs = loss_and_grads(state, chunk)
        total += loss * len(chunk)
        correct += int(np.sum(argmax_label(probs) == np.argmax(chunk.labels, axis=1)))
    return total / len(data), correct / len(data)


def train(data: SequenceBatch, config: TrainConfig, vocab: Vocab | None = None,
          validation: SequenceBatch | None = None, state: ModelState | None = None) -> ModelState:
    """Minibatch BPTT with RMSProp; shuffles every epoch from the seed.

    History rows hold the running mean training loss/accuracy of the epoch
    and, when ``validation`` is given, its loss/accuracy after the epoch.
    """
    dtype = np.dtype(config.dtype)
    if state is None:
        vocab_size = len(vocab) if vocab is not None else int(data.sequences.max()) + 1
        state = ModelState.init(config.kind, vocab_size, config.embed_dim, config.hidden,
                                seed=config.seed, dtype=dtype, vocab=vocab)
    state.config = asdict(config)
    opt = RMSProp(lr=config.lr, rho=config.rho, eps=config.eps)
    opt.state.cache = state.optimizer_cache
    params = state.parameters()
    shuffle = rng(config.seed, 2)
    n = len(data)
    if n == 0:
        raise ValueError("no training data")

    for epoch in range(1, config.epochs + 1):
        order = shuffle.permutation(n)
        seen, loss_sum, correct = 0, 0.0, 0
        for start in range(0, n, config.batch_size):
            idx = order[start:start + config.batch_size]
            batch = SequenceBatch(data.sequences[idx], data.labels[idx])
            loss, grads, probs = loss_and_grads(state, batch)
            if not math.isfinite(loss):
                raise TrainingDiverged(
                    f"non-finite loss at epoch {epoch}, batch {start // config.batch_size}; "
                    f"the learning rate ({config.lr}) is probably too high")
            opt.step(params, grads)
            loss_sum += loss * len(idx)
            correct += int(np.sum(argmax_label(probs) == np.argmax(batch.labels, axis=1)))
            seen += len(idx)
        row = {"epoch": epoch, "loss": loss_sum / seen, "accuracy": correct / seen}
        if validation is not None and len(validation):
            row["val_loss"], row["val_accuracy"] = evaluate_loss(state, validation)
        if config.stop_accuracy is not None:
            # the running mean lags the weights, so judge on a full pass
            row["end_accuracy"] = accuracy(state, data)
        state.history.append(row)
        log.info("epoch %d: %s", epoch, {k: round(v, 4) for k, v in row.items() if k != "epoch"})
        if config.stop_accuracy is not None and row["end_accuracy"] >= config.stop_accuracy:
            break
    state.optimizer_cache = opt.cache
    return state
