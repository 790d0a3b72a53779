"""Corpus-level analyses: retention curves, percent-increase tables,
uncertainty-vs-quality curves, difference curves and corpus means.

All operations are pure over immutable record lists. Discard counts use
floor(fraction * M) with bleuvarn ties broken by ascending doc_id, so two
runs over the same corpus produce identical curves byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

ROUGE_VARIANTS = ("r1", "r2", "rl")

DEFAULT_GRID = tuple(round(0.05 * i, 10) for i in range(20))  # 0.0 .. 0.95

DEFAULT_INCREASE_FRACTIONS = (0.25, 0.5, 0.75)


class UndefinedBaselineError(ValueError):
    """Full-corpus mean is zero, so a percent increase is undefined."""


@dataclass(frozen=True)
class ScoredRecord:
    """Per-document projection of an UncertaintyReport used by analyses."""

    doc_id: str
    bleuvarn: float
    rouge_median: tuple[float, float, float]
    rouge_deterministic: Optional[tuple[float, float, float]] = None


@dataclass(frozen=True)
class RetentionCurve:
    metric_name: str
    points: tuple[tuple[float, float], ...]
    sort_key: str  # "bleuvarn-desc" | "rouge-asc"


def _variant_index(metric: str) -> int:
    if metric not in ROUGE_VARIANTS:
        raise ValueError(f"unknown rouge variant {metric!r}; expected one of {ROUGE_VARIANTS}")
    return ROUGE_VARIANTS.index(metric)


def _check_grid(grid: Sequence[float]) -> tuple[float, ...]:
    grid = tuple(grid)
    if not grid:
        raise ValueError("fraction grid must be non-empty")
    if grid[0] != 0.0:
        raise ValueError("fraction grid must contain 0 as its first point")
    for prev, cur in zip(grid, grid[1:]):
        if cur <= prev:
            raise ValueError("fraction grid must be strictly increasing")
    if grid[-1] >= 1.0:
        raise ValueError("fractions must lie in [0, 1)")
    return grid


def _check_records(records: Sequence[ScoredRecord]) -> list[ScoredRecord]:
    records = list(records)
    if not records:
        raise ValueError("record list must be non-empty")
    return records


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def _discard_count(fraction: float, m: int) -> int:
    # floor(fraction * m), guarded against binary representation error
    # (0.3 * 10 == 2.999...96 must still discard 3 records)
    return int(fraction * m + 1e-9 * (m + 1))


def retention_curve(
    records: Sequence[ScoredRecord],
    metric: str = "r1",
    grid: Sequence[float] = DEFAULT_GRID,
) -> RetentionCurve:
    """Mean ROUGE f1 after discarding the highest-bleuvarn fraction.

    For each grid fraction k, the floor(k * M) records with the highest
    bleuvarn are removed and the selected ROUGE variant is averaged over
    the remainder.
    """
    records = _check_records(records)
    grid = _check_grid(grid)
    idx = _variant_index(metric)
    ordered = sorted(records, key=lambda r: (-r.bleuvarn, r.doc_id))
    m = len(ordered)
    points = []
    for fraction in grid:
        kept = ordered[_discard_count(fraction, m) :]
        points.append((fraction, _mean([r.rouge_median[idx] for r in kept])))
    return RetentionCurve(metric_name=metric, points=tuple(points), sort_key="bleuvarn-desc")


def uncertainty_vs_quality_curve(
    records: Sequence[ScoredRecord],
    grid: Sequence[float] = DEFAULT_GRID,
    metric: str = "r1",
) -> RetentionCurve:
    """Mean bleuvarn after discarding the lowest-ROUGE fraction."""
    records = _check_records(records)
    grid = _check_grid(grid)
    idx = _variant_index(metric)
    ordered = sorted(records, key=lambda r: (r.rouge_median[idx], r.doc_id))
    m = len(ordered)
    points = []
    for fraction in grid:
        kept = ordered[_discard_count(fraction, m) :]
        points.append((fraction, _mean([r.bleuvarn for r in kept])))
    return RetentionCurve(metric_name="bleuvarn", points=tuple(points), sort_key="rouge-asc")


def difference_curve(
    records: Sequence[ScoredRecord],
    grid: Sequence[float] = DEFAULT_GRID,
    metric: str = "r1",
) -> RetentionCurve:
    """Mean (median-summary ROUGE - deterministic ROUGE) per retained set.

    Discard order matches retention_curve (highest bleuvarn first). Every
    record must carry a deterministic triple; values may be negative.
    """
    records = _check_records(records)
    grid = _check_grid(grid)
    idx = _variant_index(metric)
    missing = [r.doc_id for r in records if r.rouge_deterministic is None]
    if missing:
        raise ValueError(f"records missing deterministic ROUGE: {missing[:5]}")
    ordered = sorted(records, key=lambda r: (-r.bleuvarn, r.doc_id))
    m = len(ordered)
    points = []
    for fraction in grid:
        kept = ordered[_discard_count(fraction, m) :]
        delta = _mean([r.rouge_median[idx] for r in kept]) - _mean(
            [r.rouge_deterministic[idx] for r in kept]
        )
        points.append((fraction, delta))
    return RetentionCurve(metric_name=f"{metric}-difference", points=tuple(points), sort_key="bleuvarn-desc")


@dataclass(frozen=True)
class CorpusMeans:
    """Arithmetic mean f1 per ROUGE variant, on the [0, 1] scale."""

    variational: tuple[float, float, float]
    deterministic: Optional[tuple[float, float, float]] = None


def corpus_means(records: Sequence[ScoredRecord]) -> CorpusMeans:
    """Corpus-mean ROUGE triples; deterministic means only when every
    record carries a deterministic triple."""
    records = _check_records(records)
    variational = tuple(
        _mean([r.rouge_median[i] for r in records]) for i in range(3)
    )
    deterministic = None
    if all(r.rouge_deterministic is not None for r in records):
        deterministic = tuple(
            _mean([r.rouge_deterministic[i] for r in records]) for i in range(3)
        )
    return CorpusMeans(variational=variational, deterministic=deterministic)


def percent_increase(
    records: Sequence[ScoredRecord],
    fractions: Sequence[float] = DEFAULT_INCREASE_FRACTIONS,
) -> dict[float, tuple[float, float, float]]:
    """Percent ROUGE gain per variant after discarding each fraction.

    100 * (mean_retained - mean_full) / mean_full, discarding by highest
    bleuvarn exactly as retention_curve does.
    """
    records = _check_records(records)
    ordered = sorted(records, key=lambda r: (-r.bleuvarn, r.doc_id))
    m = len(ordered)
    full = [_mean([r.rouge_median[i] for r in ordered]) for i in range(3)]
    for variant, mean_full in zip(ROUGE_VARIANTS, full):
        if mean_full == 0.0:
            raise UndefinedBaselineError(
                f"full-corpus mean {variant} is zero; percent increase undefined"
            )
    table = {}
    for fraction in fractions:
        if not 0.0 <= fraction < 1.0:
            raise ValueError(f"fractions must lie in [0, 1), got {fraction}")
        kept = ordered[_discard_count(fraction, m) :]
        means = [_mean([r.rouge_median[i] for r in kept]) for i in range(3)]
        table[fraction] = tuple(
            100.0 * (mean_kept - mean_full) / mean_full
            for mean_kept, mean_full in zip(means, full)
        )
    return table
