"""Vocabulary, LSTM/Bi-LSTM classifiers, training and persistence."""
from __future__ import annotations

import numpy as np

from vaxsent.seqmodel.io import ModelFormatError, load_model, save_model
from vaxsent.seqmodel.lstm import LstmParams, lstm_backward, lstm_cell, lstm_forward
from vaxsent.seqmodel.model import (ModelKind, ModelState, SequenceBatch, argmax_label,
                                    bilstm_forward, encode_forward, loss_and_grads,
                                    predict_proba)
from vaxsent.seqmodel.train import TrainConfig, TrainingDiverged, train, train_test_split
from vaxsent.seqmodel.vocab import Vocab, build_vocab, encode, encode_batch, one_hot
from vaxsent.textprep import clean_text
from vaxsent.vader import Polarity

__all__ = [
    "LstmParams", "ModelFormatError", "ModelKind", "ModelState", "SequenceBatch", "TrainConfig",
    "TrainingDiverged", "Vocab", "bilstm_forward", "build_vocab", "encode", "encode_batch",
    "encode_forward", "load_model", "loss_and_grads", "lstm_backward", "lstm_cell",
    "lstm_forward", "one_hot", "predict", "predict_proba", "save_model", "text_tokens",
    "train", "train_test_split",
]


def text_tokens(raw_text: str) -> list[str]:
    """Cleaned, lowercased tokens as fed to the vocabulary."""
    return [t.lower() for t in clean_text(raw_text).tokens]


def predict(model: ModelState, raw_text: str, vocab: Vocab | None = None,
            maxlen: int | None = None) -> tuple[Polarity, np.ndarray]:
    """Label and class probabilities for one raw tweet; all-padding input is Neutral."""
    vocab = vocab or model.vocab
    if vocab is None:
        raise ValueError("model carries no vocabulary; pass one explicitly")
    maxlen = maxlen or model.config.get("maxlen", 60)
    seq = encode(text_tokens(raw_text), vocab, maxlen)
    probs = predict_proba(model, seq[None, :])[0]
    if not seq.any():
        # nothing survived cleaning: the representation is the zero vector
        return Polarity.NEUTRAL, probs
    return Polarity(int(argmax_label(probs))), probs
