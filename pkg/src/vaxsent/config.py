from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from vaxsent.seqmodel.train import TrainConfig


@dataclass
class PipelineConfig:
    corpus: str | None = None
    lexicon: str | None = None  # None selects the bundled lexicon
    threshold: float = 0.05
    test_fraction: float = 0.25
    seed: int = 0
    model: str = "lstm"
    epochs: int = 10
    batch_size: int = 128
    maxlen: int = 60
    embed_dim: int = 64
    hidden: int = 64
    vocab_size: int = 20000
    lr: float = 1e-3
    rho: float = 0.9
    eps: float = 1e-7
    dtype: str = "float32"
    subsample: int | None = None
    schema_mode: str = "lenient"
    score_raw: bool = False  # score the raw text instead of the cleaned text
    out: str = "out"

    def __post_init__(self):
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")
        if not 0 < self.test_fraction < 1:
            raise ValueError("test_fraction must lie in (0, 1)")
        if self.model not in ("lstm", "bilstm"):
            raise ValueError("model must be lstm or bilstm")
        if self.schema_mode not in ("strict", "lenient"):
            raise ValueError("schema_mode must be strict or lenient")
        if self.subsample is not None and self.subsample < 1:
            raise ValueError("subsample must be positive")

    def train_config(self) -> TrainConfig:
        return TrainConfig(kind=self.model, epochs=self.epochs, batch_size=self.batch_size,
                           maxlen=self.maxlen, embed_dim=self.embed_dim, hidden=self.hidden,
                           vocab_size=self.vocab_size, lr=self.lr, rho=self.rho, eps=self.eps,
                           seed=self.seed, dtype=self.dtype)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_sources(cls, path: str | Path | None = None, **overrides) -> "PipelineConfig":
        """Defaults, then the JSON config file, then non-None ``overrides``."""
        values = {}
        if path is not None:
            values.update(json.loads(Path(path).read_text(encoding="utf-8")))
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update({k: v for k, v in overrides.items() if v is not None and k in known})
        return cls(**values)
