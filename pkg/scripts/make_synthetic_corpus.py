"""Write a synthetic tweet corpus in the 16-column CSV layout.

    python3 scripts/make_synthetic_corpus.py --rows 20000 --seed 1 --out data/synthetic.csv

Use it wherever the real vaccine tweet export is not at hand; every CLI
command accepts the result via ``--corpus``.
"""
import argparse
from pathlib import Path

from vaxsent import synth
from vaxsent.ingest import write_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default="data/synthetic.csv")
    args = ap.parse_args()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_corpus(synth.tweet_rows(args.rows, seed=args.seed), out)
    print(f"wrote {args.rows} rows to {out}")


if __name__ == "__main__":
    main()
