from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

PAD = "<pad>"
OOV = "<oov>"


@dataclass
class Vocab:
    """Token to index map. Index 0 is padding, index 1 is out-of-vocabulary."""

    tokens: list[str]
    max_size: int
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        if self.tokens[:2] != [PAD, OOV]:
            raise ValueError("vocab must start with the pad and oov entries")
        self.index = {t: i for i, t in enumerate(self.tokens)}
        if len(self.index) != len(self.tokens):
            raise ValueError("duplicate vocab entries")

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, token: str) -> int:
        return self.index.get(token.lower(), 1)

    def content_hash(self) -> str:
        return hashlib.sha256("\n".join(self.tokens).encode("utf-8")).hexdigest()


def build_vocab(corpus: list[list[str]], max_size: int = 20000) -> Vocab:
    """Rank lowercased tokens by frequency, ties by first occurrence."""
    if max_size < 3:
        raise ValueError("max_size must be at least 3")
    if not corpus or not any(corpus):
        raise ValueError("empty corpus")
    counts: Counter[str] = Counter()
    first_seen: dict[str, int] = {}
    for doc in corpus:
        for tok in doc:
            tok = tok.lower()
            counts[tok] += 1
            first_seen.setdefault(tok, len(first_seen))
    counts.pop(PAD, None)
    counts.pop(OOV, None)
    ranked = sorted(counts, key=lambda t: (-counts[t], first_seen[t]))
    return Vocab(tokens=[PAD, OOV, *ranked[: max_size - 2]], max_size=max_size)


def encode(tokens: list[str], vocab: Vocab, maxlen: int) -> np.ndarray:
    """Left-pad with 0, keep the last ``maxlen`` tokens when too long."""
    if maxlen < 1:
        raise ValueError("maxlen must be positive")
    ids = [vocab[t] for t in tokens][-maxlen:]
    out = np.zeros(maxlen, dtype=np.int64)
    if ids:
        out[maxlen - len(ids):] = ids
    return out


def encode_batch(docs: list[list[str]], vocab: Vocab, maxlen: int) -> np.ndarray:
    if not docs:
        return np.zeros((0, maxlen), dtype=np.int64)
    return np.stack([encode(d, vocab, maxlen) for d in docs])


def one_hot(labels, n_classes: int = 3) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.int64)
    out = np.zeros((labels.size, n_classes))
    out[np.arange(labels.size), labels] = 1.0
    return out
