"""CLI mirroring SamplerConfig. Exit codes: 0 ok, 1 I/O or model failure,
2 validation/usage failure."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional

from .config import SamplerConfig
from .documents import load_documents
from .sampling import ModelLoadError, sample


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mc-sample",
        description="Sample N stochastic summaries per document with dropout on at inference.",
    )
    parser.add_argument("--model", required=True, help="checkpoint id or local path")
    parser.add_argument("--input", required=True, help="dataset name (xsum, cnn_dailymail:3.0.0, aeslc) or local JSONL")
    parser.add_argument("--split", default="validation", help="dataset split selector, e.g. validation[:50]")
    parser.add_argument("--max-docs", type=int)
    parser.add_argument("--n", dest="n_samples", type=int, default=10)
    parser.add_argument("--beams", type=int, default=8)
    parser.add_argument("--no-dropout", dest="dropout_enabled", action="store_false",
                        help="baseline mode: candidates decoded with dropout off")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--max-input-tokens", type=int)
    parser.add_argument("--max-summary-tokens", type=int)
    parser.add_argument("--include-document", action="store_true")
    parser.add_argument("--resume", action="store_true")
    parser.add_argument("--out", required=True)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = SamplerConfig(
            model=args.model,
            n_samples=args.n_samples,
            num_beams=args.beams,
            dropout_enabled=args.dropout_enabled,
            split=args.split,
            max_docs=args.max_docs,
            seed=args.seed,
            device=args.device,
            max_input_tokens=args.max_input_tokens,
            max_summary_tokens=args.max_summary_tokens,
            include_document=args.include_document,
        )
    except ValueError as exc:
        print(f"mc-sample: {exc}", file=sys.stderr)
        return 2
    try:
        documents = load_documents(args.input, split=config.split, max_docs=config.max_docs)
        written = sample(config, documents, args.out, resume=args.resume)
    except ValueError as exc:
        print(f"mc-sample: {exc}", file=sys.stderr)
        return 2
    except (ModelLoadError, RuntimeError, OSError) as exc:
        print(f"mc-sample: {exc}", file=sys.stderr)
        return 1
    print(f"mc-sample: wrote {written} records to {args.out}", file=sys.stderr)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
