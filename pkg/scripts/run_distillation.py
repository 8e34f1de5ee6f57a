"""Desk-scale distillation: train LSTM and Bi-LSTM on rule-engine labels.

Scores a corpus with the lexicon engine, draws a seeded subsample, trains
both recurrent classifiers on the 75% side and reports held-out metrics.
Without ``--corpus`` a synthetic corpus is generated.

    python3 scripts/run_distillation.py --subsample 10000 --out runs/distill
"""
import argparse
import json
import time
from pathlib import Path

from vaxsent import analytics, synth
from vaxsent.config import PipelineConfig
from vaxsent.ingest import load_corpus, write_corpus
from vaxsent.pipeline import get_lexicon, history_json, run_evaluate, run_train, score_records
from vaxsent.seqmodel import save_model


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--corpus", help="tweet CSV; default: a generated synthetic corpus")
    ap.add_argument("--synthetic-rows", type=int, default=20000)
    ap.add_argument("--subsample", type=int, default=10000)
    ap.add_argument("--epochs", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs/distill")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    corpus = args.corpus
    if corpus is None:
        corpus = out / "synthetic.csv"
        write_corpus(synth.tweet_rows(args.synthetic_rows, seed=1), corpus)
    records, summary = load_corpus(corpus)
    labels = [int(s.label) for s in score_records(records, get_lexicon(None))]
    dist = analytics.sentiment_distribution(labels)
    print(f"{summary.accepted} records; labels:",
          ", ".join(f"{p.label} {v:.2f}%" for p, v in dist.percentages.items()))

    results = {}
    for kind in ("lstm", "bilstm"):
        config = PipelineConfig(model=kind, subsample=args.subsample, epochs=args.epochs,
                                seed=args.seed, corpus=str(corpus), out=str(out))
        start = time.perf_counter()
        state = run_train(records, labels, config)
        seconds = time.perf_counter() - start
        report = run_evaluate(state, records, labels, config)
        save_model(state, out / f"model_{kind}.bin")
        (out / f"history_{kind}.json").write_text(history_json(state), encoding="utf-8")
        (out / f"evaluation_{kind}.txt").write_text(report.to_text(kind), encoding="utf-8")
        results[kind] = {"test_accuracy": report.accuracy, "train_seconds": round(seconds, 1),
                         "row_normalized_diagonal": report.matrix.row_normalized().diagonal().tolist()}
        print(report.to_text("LSTM" if kind == "lstm" else "Bi-LSTM"))
        print(f"{kind}: trained in {seconds:.0f}s")

    (out / "summary.json").write_text(json.dumps(results, indent=2, sort_keys=True) + "\n")
    gap = results["bilstm"]["test_accuracy"] - results["lstm"]["test_accuracy"]
    print(f"Bi-LSTM minus LSTM test accuracy: {100 * gap:+.2f} points")


if __name__ == "__main__":
    main()
