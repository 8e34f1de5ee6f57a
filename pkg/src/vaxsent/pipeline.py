"""End-to-end steps shared by the CLI, scripts and tests.

Every writer here produces byte-identical files for identical inputs; the
only wall-clock value is ``generated_at`` in the manifests.
"""
from __future__ import annotations

import csv
import datetime as dt
import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from vaxsent import analytics, metrics
from vaxsent.config import PipelineConfig
from vaxsent.ingest import TweetRecord
from vaxsent.nncore import rng
from vaxsent.seqmodel import (ModelState, SequenceBatch, build_vocab, encode_batch, one_hot,
                              predict_proba, text_tokens, train, train_test_split)
from vaxsent.seqmodel.model import argmax_label
from vaxsent.textprep import clean_text
from vaxsent.vader import Lexicon, Polarity, SentimentScores, classify, default_lexicon, load_lexicon, score

log = logging.getLogger(__name__)

TERM_GROUPS = {"all": None, "usa": "USA", "uk": "UK", "canada": "Canada", "india": "India"}


class VocabMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Scored:
    id: str
    scores: SentimentScores
    label: Polarity

    def to_json(self) -> str:
        return json.dumps({"id": self.id, **self.scores.as_dict(), "label": self.label.label,
                           "class": int(self.label)}, sort_keys=True)


def get_lexicon(path: str | None) -> Lexicon:
    return default_lexicon() if path is None else load_lexicon(path)


def score_records(records: Sequence[TweetRecord], lexicon: Lexicon, threshold: float = 0.05,
                  score_raw: bool = False) -> list[Scored]:
    out = []
    for rec in records:
        text = rec.text if score_raw else clean_text(rec.text).cleaned
        s = score(text, lexicon)
        out.append(Scored(rec.id, s, classify(s, threshold)))
    return out


def write_jsonl(path: Path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def read_scored(path: str | Path, records: Sequence[TweetRecord] | None = None) -> list[int]:
    """Class labels from a scored JSON-lines file, checked against ``records`` ids."""
    labels, ids = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                obj = json.loads(line)
                labels.append(int(obj["class"]))
                ids.append(obj["id"])
    if records is not None:
        if len(ids) != len(records) or any(r.id != i for r, i in zip(records, ids)):
            raise ValueError("scored file does not line up with the corpus")
    return labels


def subsample_indices(n: int, k: int | None, seed: int) -> list[int]:
    if k is None or k >= n:
        return list(range(n))
    return sorted(int(i) for i in rng(seed, 3).choice(n, size=k, replace=False))


@dataclass
class Split:
    train_idx: list[int]
    test_idx: list[int]
    docs: list[list[str]]
    labels: list[int]


def make_split(records: Sequence[TweetRecord], labels: Sequence[int], config: PipelineConfig) -> Split:
    """Subsample (optional), then the seeded train/test split over the kept rows."""
    keep = subsample_indices(len(records), config.subsample, config.seed)
    train_idx, test_idx = train_test_split(keep, config.test_fraction, config.seed)
    docs = [text_tokens(r.text) for r in records]
    return Split(train_idx, test_idx, docs, [int(v) for v in labels])


def batch_for(split: Split, idx: Sequence[int], vocab, maxlen: int) -> SequenceBatch:
    return SequenceBatch(encode_batch([split.docs[i] for i in idx], vocab, maxlen),
                         one_hot([split.labels[i] for i in idx]))


def run_train(records: Sequence[TweetRecord], labels: Sequence[int], config: PipelineConfig) -> ModelState:
    split = make_split(records, labels, config)
    tc = config.train_config()
    vocab = build_vocab([split.docs[i] for i in split.train_idx], tc.vocab_size)
    state = train(batch_for(split, split.train_idx, vocab, tc.maxlen), tc, vocab=vocab,
                  validation=batch_for(split, split.test_idx, vocab, tc.maxlen))
    state.config["pipeline"] = {k: getattr(config, k) for k in
                                ("threshold", "test_fraction", "subsample", "score_raw", "seed")}
    state.config["split"] = {"train": len(split.train_idx), "test": len(split.test_idx)}
    return state


def history_json(state: ModelState) -> str:
    return json.dumps({"kind": state.kind.value, "seed": state.seed,
                       "split": state.config.get("split"), "history": state.history},
                      indent=2, sort_keys=True) + "\n"


def run_evaluate(state: ModelState, records: Sequence[TweetRecord], labels: Sequence[int],
                 config: PipelineConfig) -> metrics.EvaluationReport:
    """Rebuild the held-out split the model was trained against and score it."""
    split = make_split(records, labels, config)
    vocab = build_vocab([split.docs[i] for i in split.train_idx], state.config["vocab_size"])
    if state.vocab is None or vocab.content_hash() != state.vocab.content_hash():
        raise VocabMismatch("vocabulary rebuilt from this corpus differs from the model's; "
                            "wrong corpus, seed or split settings")
    batch = batch_for(split, split.test_idx, state.vocab, state.config["maxlen"])
    pred = argmax_label(predict_proba(state, batch.sequences))
    return metrics.evaluate([split.labels[i] for i in split.test_idx], pred)


# --- report files -----------------------------------------------------------

def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                    encoding="utf-8")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_table(out: Path, stem: str, header: list[str], rows: list[list]) -> list[str]:
    _write_csv(out / f"{stem}.csv", header, rows)
    _write_json(out / f"{stem}.json", [dict(zip(header, r)) for r in rows])
    return [f"{stem}.csv", f"{stem}.json"]


def distribution_table(labels: Sequence[int]) -> tuple[list[str], list[list]]:
    dist = analytics.sentiment_distribution(labels)
    return ["class", "label", "count", "percentage"], [
        [r["class"], r["label"], r["count"], r["percentage"]] for r in dist.rows()]


def write_manifest(out: Path, files: list[str], config: PipelineConfig, extra: dict,
                   name: str = "manifest.json") -> Path:
    manifest = {
        "files": {f: _sha256(out / f) for f in sorted(files)},
        "config": config.to_dict(),
        "generated_at": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
        **extra,
    }
    path = out / name
    _write_json(path, manifest)
    return path


def write_report(out: Path, records: Sequence[TweetRecord], labels: Sequence[int],
                 config: PipelineConfig, extra: dict | None = None) -> list[str]:
    """All analytics tables plus ``manifest.json``; returns the file names."""
    out.mkdir(parents=True, exist_ok=True)
    files = []
    header, rows = distribution_table(labels)
    files += write_table(out, "distribution", header, rows)

    timeline = analytics.daily_timeline(records, labels)
    files += write_table(out, "timeline_daily", ["day", "total"],
                         [[p.day.isoformat(), p.total] for p in timeline])
    files += write_table(out, "timeline_sentiment", ["day", "neutral", "negative", "positive"],
                         [[p.day.isoformat(), *(p.per_class[c] for c in Polarity)] for p in timeline])
    files += write_table(out, "timeline_monthly", ["month", "total"],
                         [[m, n] for m, n in analytics.monthly_totals(timeline).items()])

    hist = analytics.hashtag_histogram(records)
    files += write_table(out, "hashtag_histogram", ["hashtags_per_tweet", "tweets", "density"],
                         [[k, v, hist.density[k]] for k, v in hist.counts.items()])

    for name, group in TERM_GROUPS.items():
        ranked = (analytics.top_terms(records, k=100) if group is None else
                  analytics.top_terms(records, "location", group, k=100))
        files += write_table(out, f"terms_{name}", ["term", "count"], [list(t) for t in ranked])

    files += write_table(out, "sources", ["source", "tweets"],
                         [list(t) for t in analytics.source_counts(records)])
    files += write_table(out, "locations", ["location", "tweets"],
                         [list(t) for t in analytics.location_counts(records)])

    dist = analytics.sentiment_distribution(labels)
    write_manifest(out, files, config, {
        "records": len(records),
        "distribution": {p.label: {"count": dist.counts[p], "percentage": dist.percentages[p]}
                         for p in Polarity},
        **(extra or {}),
    })
    return files + ["manifest.json"]


def predict_texts(state: ModelState, texts: Sequence[str]) -> list[dict]:
    maxlen = state.config.get("maxlen", 60)
    docs = [text_tokens(t) for t in texts]
    seqs = encode_batch(docs, state.vocab, maxlen)
    probs = predict_proba(state, seqs) if len(texts) else np.zeros((0, 3))
    out = []
    for text, doc, p in zip(texts, docs, probs):
        label = Polarity(int(argmax_label(p))) if doc else Polarity.NEUTRAL
        row = {"text": text, "label": label.label, "class": int(label), "probs": p.tolist()}
        if not doc:
            row["flags"] = ["empty_input"]
        out.append(row)
    return out
