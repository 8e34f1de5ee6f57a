"""Command line entry point: ``vaxsent {score,train,evaluate,report,predict,clean}``.

Exit codes: 0 success, 1 usage error, 2 missing input or unwritable output,
3 empty or inconsistent data, 4 numeric failure. Failures print one JSON
object ``{"error", "message", "exit_code"}`` on stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from vaxsent import pipeline
from vaxsent.config import PipelineConfig
from vaxsent.ingest import IngestError, load_corpus
from vaxsent.nncore import NonFiniteError
from vaxsent.seqmodel import ModelFormatError, TrainingDiverged, load_model, save_model
from vaxsent.textprep import clean_text
from vaxsent.vader import LexiconError

log = logging.getLogger("vaxsent")

EXIT_OK, EXIT_USAGE, EXIT_MISSING, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", f"{self.prog}: {message}", EXIT_USAGE)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with PipelineConfig fields; flags override it")
    p.add_argument("--corpus")
    p.add_argument("--lexicon", help="VADER lexicon file (default: bundled)")
    p.add_argument("--threshold", type=float)
    p.add_argument("--test-fraction", type=float, dest="test_fraction")
    p.add_argument("--seed", type=int)
    p.add_argument("--model", choices=("lstm", "bilstm"))
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", type=int, dest="batch_size")
    p.add_argument("--maxlen", type=int)
    p.add_argument("--embed-dim", type=int, dest="embed_dim")
    p.add_argument("--hidden", type=int)
    p.add_argument("--vocab-size", type=int, dest="vocab_size")
    p.add_argument("--lr", type=float)
    p.add_argument("--dtype", choices=("float32", "float64"))
    p.add_argument("--subsample", type=int, help="train/evaluate on a seeded subset of this size")
    p.add_argument("--schema-mode", choices=("strict", "lenient"), dest="schema_mode")
    p.add_argument("--score-raw", action="store_const", const=True, dest="score_raw",
                   help="score raw tweet text instead of the cleaned text")
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vaxsent", description="Vaccine tweet sentiment pipeline")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("score", help="label every tweet with VADER")
    _add_config_flags(p)

    for name, text in (("train", "train an LSTM or Bi-LSTM on VADER labels"),
                       ("evaluate", "score a trained model on its held-out split"),
                       ("report", "write the analytics tables")):
        p = sub.add_parser(name, help=text)
        _add_config_flags(p)
        p.add_argument("--scored", help="scored.jsonl from `score` (default: score on the fly)")
        if name == "evaluate":
            p.add_argument("--model-file", dest="model_file")

    p = sub.add_parser("predict", help="classify texts with a trained model")
    _add_config_flags(p)
    p.add_argument("--model-file", dest="model_file")
    p.add_argument("texts", nargs="*", help="texts to classify (default: one per stdin line)")

    sub.add_parser("clean", help="clean stdin line by line")
    return parser


def _config(args) -> PipelineConfig:
    overrides = {k: v for k, v in vars(args).items()
                 if k not in ("config", "command", "verbose", "scored", "model_file", "texts")}
    if args.config and not Path(args.config).is_file():
        raise CliError("config_not_found", f"config file not found: {args.config}", EXIT_MISSING)
    try:
        return PipelineConfig.from_sources(args.config, **overrides)
    except (ValueError, TypeError) as exc:
        raise CliError("bad_config", str(exc), EXIT_USAGE) from exc


def _corpus(config: PipelineConfig):
    if not config.corpus:
        raise CliError("usage", "--corpus is required", EXIT_USAGE)
    try:
        records, summary = load_corpus(config.corpus, config.schema_mode)
    except FileNotFoundError as exc:
        raise CliError("corpus_not_found", str(exc), EXIT_MISSING) from exc
    except (IngestError, UnicodeDecodeError) as exc:
        raise CliError("bad_corpus", str(exc), EXIT_DATA) from exc
    if not records:
        raise CliError("empty_corpus", f"no usable records in {config.corpus}", EXIT_DATA)
    return records, summary


def _lexicon(config: PipelineConfig):
    try:
        return pipeline.get_lexicon(config.lexicon)
    except FileNotFoundError as exc:
        raise CliError("lexicon_not_found", str(exc), EXIT_MISSING) from exc
    except LexiconError as exc:
        raise CliError("bad_lexicon", str(exc), EXIT_DATA) from exc


def _labels(args, config, records) -> list[int]:
    if getattr(args, "scored", None):
        if not Path(args.scored).is_file():
            raise CliError("scored_not_found", f"scored file not found: {args.scored}", EXIT_MISSING)
        try:
            return pipeline.read_scored(args.scored, records)
        except (ValueError, KeyError) as exc:
            raise CliError("bad_scored", str(exc), EXIT_DATA) from exc
    scored = pipeline.score_records(records, _lexicon(config), config.threshold, config.score_raw)
    return [int(s.label) for s in scored]


def _out_dir(config: PipelineConfig) -> Path:
    out = Path(config.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError("output_unwritable", str(exc), EXIT_MISSING) from exc
    return out


def _model_path(args, config) -> Path:
    return Path(args.model_file or Path(config.out) / f"model_{config.model}.bin")


def _load(path: Path):
    if not path.is_file():
        raise CliError("model_not_found", f"model file not found: {path}", EXIT_MISSING)
    try:
        return load_model(path)
    except ModelFormatError as exc:
        raise CliError("model_corrupt", str(exc), EXIT_DATA) from exc


def cmd_score(args) -> int:
    config = _config(args)
    lexicon = _lexicon(config)
    records, summary = _corpus(config)
    out = _out_dir(config)
    scored = pipeline.score_records(records, lexicon, config.threshold, config.score_raw)
    pipeline.write_jsonl(out / "scored.jsonl", (s.to_json() for s in scored))
    header, rows = pipeline.distribution_table([s.label for s in scored])
    files = ["scored.jsonl"] + pipeline.write_table(out, "distribution", header, rows)
    pipeline.write_manifest(out, files, config, {"ingest": json.loads(summary.to_json()),
                                                 "records": len(records)}, name="score_manifest.json")
    for r in rows:
        print(f"{r[1]:<9}{r[2]:>8}{r[3]:>9.2f}%")
    return EXIT_OK


def cmd_train(args) -> int:
    config = _config(args)
    records, _ = _corpus(config)
    labels = _labels(args, config, records)
    out = _out_dir(config)
    state = pipeline.run_train(records, labels, config)
    save_model(state, out / f"model_{config.model}.bin")
    (out / f"history_{config.model}.json").write_text(pipeline.history_json(state), encoding="utf-8")
    last = state.history[-1]
    print(f"{config.model}: {len(state.history)} epochs, loss {last['loss']:.4f}, "
          f"val_accuracy {last['val_accuracy']:.4f}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    config = _config(args)
    state = _load(_model_path(args, config))
    # the split is re-derived from the settings the model was trained with
    saved = state.config.get("pipeline", {})
    for key in ("seed", "test_fraction", "subsample"):
        if key in saved:
            setattr(config, key, saved[key])
    records, _ = _corpus(config)
    labels = _labels(args, config, records)
    out = _out_dir(config)
    try:
        report = pipeline.run_evaluate(state, records, labels, config)
    except pipeline.VocabMismatch as exc:
        raise CliError("vocab_mismatch", str(exc), EXIT_DATA) from exc
    kind = state.kind.value
    (out / f"evaluation_{kind}.json").write_text(report.to_json() + "\n", encoding="utf-8")
    title = "LSTM" if kind == "lstm" else "Bi-LSTM"
    (out / f"evaluation_{kind}.txt").write_text(report.to_text(title), encoding="utf-8")
    pipeline.write_table(out, f"confusion_{kind}", ["true", "neutral", "negative", "positive"],
                         [[k, *row] for k, row in enumerate(report.matrix.counts.tolist())])
    print(report.to_text(title), end="")
    return EXIT_OK


def cmd_report(args) -> int:
    config = _config(args)
    records, summary = _corpus(config)
    labels = _labels(args, config, records)
    out = _out_dir(config)
    files = pipeline.write_report(out, records, labels, config,
                                  {"ingest": json.loads(summary.to_json())})
    print(f"wrote {len(files)} files to {out}")
    return EXIT_OK


def cmd_predict(args) -> int:
    config = _config(args)
    state = _load(_model_path(args, config))
    texts = args.texts if args.texts else [line.rstrip("\n") for line in sys.stdin]
    for row in pipeline.predict_texts(state, texts):
        print(json.dumps(row, ensure_ascii=False))
    return EXIT_OK


def cmd_clean(args) -> int:
    for line in sys.stdin:
        print(clean_text(line).cleaned)
    return EXIT_OK


COMMANDS = {"score": cmd_score, "train": cmd_train, "evaluate": cmd_evaluate,
            "report": cmd_report, "predict": cmd_predict, "clean": cmd_clean}


def _fail(code: str, message: str, exit_code: int) -> int:
    print(json.dumps({"error": code, "message": message, "exit_code": exit_code}), file=sys.stderr)
    return exit_code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except CliError as exc:
        return _fail(exc.code, str(exc), exc.exit_code)
    except (TrainingDiverged, NonFiniteError, FloatingPointError) as exc:
        return _fail("numeric_failure", str(exc), EXIT_NUMERIC)
    except PermissionError as exc:
        return _fail("output_unwritable", str(exc), EXIT_MISSING)
    except ValueError as exc:
        return _fail("bad_data", str(exc), EXIT_DATA)


if __name__ == "__main__":
    sys.exit(main())
