"""Command-line surface: score, select, retention, report, synth.

Exit codes: 0 success, 1 I/O failure, 2 validation or usage failure.
Diagnostics go to stderr; data goes only to files (or stdout with `-`).
Scoring fans out over documents with a bounded order-restoring window, so
`--threads` changes wall time but never output bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Iterator, Optional

from . import analysis
from .corpusio import (
    CONFIG_PREFIX,
    CorpusValidationError,
    RunConfig,
    read_corpus,
    read_reports,
    write_corpus,
    write_curve,
    write_reports,
)
from .synthgen import OPERATIONS, generate_corpus, load_synonyms, uniform_levels
from .uncertainty import (
    KERNEL_MAX_ORDER,
    InsufficientSamplesError,
    SampleSet,
    UncertaintyReport,
    score_sample_set,
)

THREADS_ENV_VAR = "SUMVAR_THREADS"

IO_FAILURE = 1
VALIDATION_FAILURE = 2


def _ordered_parallel_map(fn, items: Iterable, threads: int) -> Iterator:
    """Apply fn across items with *threads* workers, yielding in input order
    with a bounded in-flight window (memory stays independent of corpus size)."""
    if threads <= 1:
        for item in items:
            yield fn(item)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        window = deque()
        for item in items:
            window.append(pool.submit(fn, item))
            if len(window) >= threads * 4:
                yield window.popleft().result()
        while window:
            yield window.popleft().result()


def _load_config_file(path: Optional[str]) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ValueError("config file must hold a JSON object")
    return obj


def _resolve(flag_value, config: dict, key: str, default):
    if flag_value is not None:
        return flag_value
    if key in config:
        return config[key]
    return default


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parse_grid(raw: str) -> tuple[float, ...]:
    if ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise ValueError("grid range must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        grid = []
        value = start
        while value <= stop + 1e-12:
            grid.append(round(value, 10))
            value += step
        return tuple(grid)
    return tuple(round(float(p), 10) for p in raw.split(","))


def _open_out(path: str):
    if path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="\n")


def _score_stream(args, config_file: dict) -> tuple[RunConfig, Iterator[UncertaintyReport]]:
    max_order = int(_resolve(args.max_order, config_file, "max_order", KERNEL_MAX_ORDER))
    threads = int(_resolve(args.threads, config_file, "threads", _default_threads()))
    run_config = RunConfig(max_order=max_order)
    sample_sets = read_corpus(args.infile, allow_ragged=args.allow_ragged)
    reports = _ordered_parallel_map(
        lambda s: score_sample_set(s, max_order=max_order), sample_sets, threads
    )
    return run_config, reports


def _cmd_score(args) -> int:
    config_file = _load_config_file(args.config)
    run_config, reports = _score_stream(args, config_file)
    out = _open_out(args.out)
    try:
        write_reports(reports, out, config=run_config)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_select(args) -> int:
    config_file = _load_config_file(args.config)
    max_order = int(_resolve(args.max_order, config_file, "max_order", KERNEL_MAX_ORDER))
    threads = int(_resolve(args.threads, config_file, "threads", _default_threads()))

    def _selection(sample_set: SampleSet) -> str:
        report = score_sample_set(sample_set, max_order=max_order)
        obj = {
            "doc_id": sample_set.doc_id,
            "median_index": report.median_index,
            "bleuvarn": round(report.bleuvarn, 6),
            "summary": sample_set.candidates[report.median_index],
        }
        return json.dumps(obj, ensure_ascii=False)

    sample_sets = read_corpus(args.infile, allow_ragged=args.allow_ragged)
    out = _open_out(args.out)
    try:
        for line in _ordered_parallel_map(_selection, sample_sets, threads):
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_retention(args) -> int:
    config_file = _load_config_file(args.config)
    metric = _resolve(args.metric, config_file, "metric", "r1")
    grid_raw = _resolve(args.grid, config_file, "grid", None)
    grid = _parse_grid(grid_raw) if isinstance(grid_raw, str) else (
        tuple(grid_raw) if grid_raw else analysis.DEFAULT_GRID
    )
    embedded, rows = read_reports(args.reports)
    records = [row.to_record() for row in rows]
    base = embedded or RunConfig()
    run_config = dataclasses.replace(base, grid=grid, metric=metric)
    if args.mode == "quality":
        curve = analysis.uncertainty_vs_quality_curve(records, grid=grid, metric=metric)
    else:
        curve = analysis.retention_curve(records, metric=metric, grid=grid)
    out = _open_out(args.out)
    try:
        write_curve(curve, out, config=run_config)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _format_means(label: str, triple) -> str:
    return f"{label:<14}" + "".join(f"{100.0 * v:>9.2f}" for v in triple)


def _cmd_report(args) -> int:
    config_file = _load_config_file(args.config)
    grid_raw = _resolve(args.grid, config_file, "grid", None)
    grid = _parse_grid(grid_raw) if isinstance(grid_raw, str) else (
        tuple(grid_raw) if grid_raw else analysis.DEFAULT_GRID
    )
    embedded, rows = read_reports(args.reports)
    records = [row.to_record() for row in rows]
    if not records:
        raise CorpusValidationError(0, "reports file holds no rows")
    base = embedded or RunConfig()
    run_config = dataclasses.replace(base, grid=grid)

    means = analysis.corpus_means(records)
    increases = analysis.percent_increase(records)

    lines = [CONFIG_PREFIX + run_config.to_json(), f"records: {len(records)}", ""]
    lines.append("== corpus mean ROUGE F1 (x100) ==")
    lines.append(f"{'':<14}" + "".join(f"{name:>9}" for name in ("R-1", "R-2", "R-L")))
    lines.append(_format_means("variational", means.variational))
    if means.deterministic is not None:
        lines.append(_format_means("deterministic", means.deterministic))
    lines.append("")
    lines.append("== percent increase after discarding highest-BLEUVarN fractions ==")
    lines.append(f"{'discard':<14}" + "".join(f"{name:>9}" for name in ("R-1", "R-2", "R-L")))
    for fraction in sorted(increases):
        row = increases[fraction]
        lines.append(f"{fraction:<14.0%}" + "".join(f"{v:>9.2f}" for v in row))
    lines.append("")
    if means.deterministic is not None:
        lines.append("== variational minus deterministic ROUGE-1 by fraction discarded ==")
        lines.append("fraction,difference")
        curve = analysis.difference_curve(records, grid=grid, metric="r1")
        for fraction, value in curve.points:
            lines.append(f"{fraction:.6f},{value:.6f}")
    else:
        lines.append("deterministic columns absent; difference analysis omitted")

    out = _open_out(args.out)
    try:
        out.write("\n".join(lines) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_synth(args) -> int:
    if args.n < 2:
        raise ValueError(f"--n must be >= 2, got {args.n}")
    with open(args.refs, encoding="utf-8") as fh:
        references = [line.strip() for line in fh if line.strip()]
    if not references:
        raise ValueError("reference file holds no non-empty lines")
    if args.levels == "uniform":
        levels = uniform_levels(len(references), args.seed)
    elif "," in args.levels:
        levels = tuple(float(p) for p in args.levels.split(","))
    else:
        levels = (float(args.levels),) * len(references)
    operations = tuple(args.ops.split(",")) if args.ops else OPERATIONS
    synonyms = load_synonyms(args.synonyms) if args.synonyms else None
    sample_sets = generate_corpus(
        references,
        n_samples=args.n,
        levels=levels,
        seed=args.seed,
        operations=operations,
        synonyms=synonyms,
    )
    write_corpus(sample_sets, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumvar",
        description="Uncertainty scoring and retention analyses for sampled summaries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="optional JSON config file; flags win")

    score = sub.add_parser("score", help="score a JSONL corpus into a reports CSV")
    score.add_argument("--in", dest="infile", required=True)
    score.add_argument("--out", required=True)
    score.add_argument("--max-order", dest="max_order", type=int)
    score.add_argument("--threads", type=int)
    score.add_argument("--allow-ragged", action="store_true")
    add_common(score)
    score.set_defaults(func=_cmd_score)

    select = sub.add_parser("select", help="emit each document's median summary")
    select.add_argument("--in", dest="infile", required=True)
    select.add_argument("--out", required=True)
    select.add_argument("--max-order", dest="max_order", type=int)
    select.add_argument("--threads", type=int)
    select.add_argument("--allow-ragged", action="store_true")
    add_common(select)
    select.set_defaults(func=_cmd_select)

    retention = sub.add_parser("retention", help="retention curve from a reports CSV")
    retention.add_argument("--reports", required=True)
    retention.add_argument("--out", required=True)
    retention.add_argument("--metric", choices=("r1", "r2", "rl"))
    retention.add_argument("--grid", help="comma list or start:stop:step")
    retention.add_argument("--mode", choices=("retention", "quality"), default="retention")
    add_common(retention)
    retention.set_defaults(func=_cmd_retention)

    report = sub.add_parser("report", help="corpus means, percent increases, differences")
    report.add_argument("--reports", required=True)
    report.add_argument("--out", required=True)
    report.add_argument("--grid", help="comma list or start:stop:step")
    add_common(report)
    report.set_defaults(func=_cmd_report)

    synth = sub.add_parser("synth", help="generate a synthetic JSONL corpus")
    synth.add_argument("--refs", required=True, help="text file, one reference per line")
    synth.add_argument("--n", type=int, required=True)
    synth.add_argument("--levels", default="uniform", help="'uniform', a float, or a comma list")
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", required=True)
    synth.add_argument("--ops", help=f"comma list among {','.join(OPERATIONS)}")
    synth.add_argument("--synonyms", help="two-column TSV synonym table")
    add_common(synth)
    synth.set_defaults(func=_cmd_synth)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CorpusValidationError, InsufficientSamplesError, analysis.UndefinedBaselineError) as exc:
        print(f"sumvar {args.command}: {exc}", file=sys.stderr)
        return VALIDATION_FAILURE
    except ValueError as exc:
        print(f"sumvar {args.command}: {exc}", file=sys.stderr)
        return VALIDATION_FAILURE
    except OSError as exc:
        print(f"sumvar {args.command}: {exc}", file=sys.stderr)
        return IO_FAILURE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
