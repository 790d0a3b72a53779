"""Durable formats: JSONL sample corpora, CSV reports and curves.

The JSONL corpus is the toolkit's wire contract. One object per line with
fields ``doc_id``, ``candidates``, ``reference`` and optional
``deterministic`` / ``document``. Reading is streaming (memory bounded by
one record) and every validation failure names the offending line.

Every CSV output begins with a comment line carrying the serialized run
configuration, so equal config + equal corpus reproduce files byte for
byte. Floats are serialized with 6 decimals (round-half-even).
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO, Union

from .analysis import DEFAULT_GRID, ScoredRecord
from .metrics import SMOOTHING_ID
from .uncertainty import KERNEL_MAX_ORDER, InsufficientSamplesError, SampleSet, UncertaintyReport

REPORT_HEADER = "doc_id,n,bleuvar,bleuvarn,median_index,r1,r2,rl,det_r1,det_r2,det_rl"

CONFIG_PREFIX = "# config: "

PathLike = Union[str, Path]


class CorpusValidationError(ValueError):
    """Invalid corpus content; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class RunConfig:
    """Knobs that affect output values, echoed in every output file."""

    max_order: int = KERNEL_MAX_ORDER
    smoothing: str = SMOOTHING_ID
    tie_break: str = "lowest-index"
    grid: tuple[float, ...] = DEFAULT_GRID
    metric: str = "r1"

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, payload: str) -> "RunConfig":
        raw = json.loads(payload)
        raw["grid"] = tuple(raw["grid"])
        return cls(**raw)


def _require_str(obj: dict, field: str, line: int) -> str:
    if field not in obj:
        raise CorpusValidationError(line, f"missing required field {field!r}")
    value = obj[field]
    if not isinstance(value, str):
        raise CorpusValidationError(line, f"field {field!r} must be a string")
    return value


def _optional_str(obj: dict, field: str, line: int) -> Optional[str]:
    value = obj.get(field)
    if value is not None and not isinstance(value, str):
        raise CorpusValidationError(line, f"field {field!r} must be a string or null")
    return value


def read_corpus(path: PathLike, allow_ragged: bool = False) -> Iterator[SampleSet]:
    """Lazily yield validated SampleSets from a JSONL corpus file."""
    seen_ids: set[str] = set()
    expected_n: Optional[int] = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if line_no == 1 and line.startswith("﻿"):
                raise CorpusValidationError(1, "UTF-8 BOM not allowed")
            stripped = line.strip()
            if not stripped:
                continue
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise CorpusValidationError(line_no, f"malformed JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise CorpusValidationError(line_no, "record must be a JSON object")
            doc_id = _require_str(obj, "doc_id", line_no)
            if doc_id in seen_ids:
                raise CorpusValidationError(line_no, f"duplicate doc_id {doc_id!r}")
            seen_ids.add(doc_id)
            candidates = obj.get("candidates")
            if not isinstance(candidates, list) or not all(
                isinstance(c, str) for c in candidates
            ):
                raise CorpusValidationError(line_no, "field 'candidates' must be a list of strings")
            reference = _require_str(obj, "reference", line_no)
            if len(candidates) < 2:
                raise CorpusValidationError(
                    line_no, f"need at least 2 candidates, got {len(candidates)}"
                )
            if expected_n is None:
                expected_n = len(candidates)
            elif len(candidates) != expected_n and not allow_ragged:
                raise CorpusValidationError(
                    line_no,
                    f"inconsistent candidate count {len(candidates)} (expected {expected_n}; "
                    "pass allow_ragged to accept)",
                )
            try:
                yield SampleSet(
                    doc_id=doc_id,
                    candidates=tuple(candidates),
                    reference=reference,
                    deterministic=_optional_str(obj, "deterministic", line_no),
                    document=_optional_str(obj, "document", line_no),
                )
            except InsufficientSamplesError as exc:
                raise CorpusValidationError(line_no, str(exc)) from exc


def sample_set_to_json(sample_set: SampleSet) -> str:
    obj = {
        "doc_id": sample_set.doc_id,
        "candidates": list(sample_set.candidates),
        "reference": sample_set.reference,
    }
    if sample_set.deterministic is not None:
        obj["deterministic"] = sample_set.deterministic
    if sample_set.document is not None:
        obj["document"] = sample_set.document
    return json.dumps(obj, ensure_ascii=False)


def write_corpus(sample_sets: Iterable[SampleSet], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for sample_set in sample_sets:
            fh.write(sample_set_to_json(sample_set) + "\n")


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _report_row(report: UncertaintyReport) -> str:
    cells = [
        report.doc_id,
        str(report.n),
        _fmt(report.bleuvar),
        _fmt(report.bleuvarn),
        str(report.median_index),
    ]
    cells.extend(_fmt(v) for v in report.rouge_median.f1_values())
    if report.rouge_deterministic is not None:
        cells.extend(_fmt(v) for v in report.rouge_deterministic.f1_values())
    else:
        cells.extend(["", "", ""])
    return ",".join(cells)


def write_reports(
    reports: Iterable[UncertaintyReport],
    path_or_file: Union[PathLike, TextIO],
    config: Optional[RunConfig] = None,
) -> None:
    """Stream UncertaintyReports to CSV, preserving input order."""
    config = config or RunConfig()

    def _write(fh: TextIO) -> None:
        fh.write(CONFIG_PREFIX + config.to_json() + "\n")
        fh.write(REPORT_HEADER + "\n")
        for report in reports:
            fh.write(_report_row(report) + "\n")

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)


@dataclass(frozen=True)
class ReportRow:
    """One parsed line of a reports CSV."""

    doc_id: str
    n: int
    bleuvar: float
    bleuvarn: float
    median_index: int
    r1: float
    r2: float
    rl: float
    det_r1: Optional[float] = None
    det_r2: Optional[float] = None
    det_rl: Optional[float] = None

    def to_record(self) -> ScoredRecord:
        deterministic = None
        if self.det_r1 is not None:
            deterministic = (self.det_r1, self.det_r2, self.det_rl)
        return ScoredRecord(
            doc_id=self.doc_id,
            bleuvarn=self.bleuvarn,
            rouge_median=(self.r1, self.r2, self.rl),
            rouge_deterministic=deterministic,
        )


def read_reports(path: PathLike) -> tuple[Optional[RunConfig], list[ReportRow]]:
    """Parse a reports CSV back into rows (plus its embedded config)."""
    config = None
    rows: list[ReportRow] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith(CONFIG_PREFIX):
                config = RunConfig.from_json(line[len(CONFIG_PREFIX) :])
                continue
            if line.startswith("#") or line == REPORT_HEADER:
                continue
            cells = line.split(",")
            if len(cells) != 11:
                raise CorpusValidationError(line_no, f"expected 11 columns, got {len(cells)}")
            det = [float(c) if c != "" else None for c in cells[8:11]]
            rows.append(
                ReportRow(
                    doc_id=cells[0],
                    n=int(cells[1]),
                    bleuvar=float(cells[2]),
                    bleuvarn=float(cells[3]),
                    median_index=int(cells[4]),
                    r1=float(cells[5]),
                    r2=float(cells[6]),
                    rl=float(cells[7]),
                    det_r1=det[0],
                    det_r2=det[1],
                    det_rl=det[2],
                )
            )
    return config, rows


def write_curve(curve, path_or_file: Union[PathLike, TextIO], config: Optional[RunConfig] = None) -> None:
    """Write a RetentionCurve as `fraction,value` CSV."""
    if not curve.points:
        raise ValueError("curve has no points to write")
    config = config or RunConfig()

    def _write(fh: TextIO) -> None:
        fh.write(CONFIG_PREFIX + config.to_json() + "\n")
        fh.write("fraction,value\n")
        for fraction, value in curve.points:
            fh.write(f"{_fmt(fraction)},{_fmt(value)}\n")

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)
