"""Pairwise-BLEU disagreement over sampled summaries.

For one document with N sampled summaries, the full (asymmetric) N x N BLEU
matrix yields:

- ``bleuvar``: sum over all ordered pairs i != j of (1 - BLEU(y_i, y_j))^2;
- ``bleuvarn``: bleuvar / (N * (N - 1)), normalized into [0, 1] so scores
  with different N are comparable;
- ``median_summary``: the index maximizing summed symmetric BLEU similarity
  with all other samples (lowest index wins ties).

The BLEU kernel runs at ``KERNEL_MAX_ORDER`` by default: orders above 3
flip the selected median on near-duplicate candidate sets of short
summaries, and order 2 best separates low- from high-disagreement sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .metrics import RougeScore, bleu, rouge_l, rouge_n
from .textnorm import TokenSequence, tokenize

KERNEL_MAX_ORDER = 2


class InsufficientSamplesError(ValueError):
    """Raised when fewer than two candidate summaries are supplied."""


@dataclass(frozen=True)
class SampleSet:
    """One document's record: N sampled summaries plus its reference."""

    doc_id: str
    candidates: tuple[str, ...]
    reference: str
    deterministic: Optional[str] = None
    document: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if len(self.candidates) < 2:
            raise InsufficientSamplesError(
                f"doc {self.doc_id!r}: need at least 2 candidate summaries, "
                f"got {len(self.candidates)}"
            )

    @property
    def n(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class PairwiseBleuMatrix:
    """N x N grid with scores[i][j] = BLEU(candidate_i, candidate_j).

    Generally asymmetric. The diagonal is stored as 1.0 but excluded from
    every aggregate (all sums range over j != i).
    """

    scores: np.ndarray

    @property
    def n(self) -> int:
        return self.scores.shape[0]


@dataclass(frozen=True)
class RougeTriple:
    rouge1: RougeScore
    rouge2: RougeScore
    rougeL: RougeScore

    def f1_values(self) -> tuple[float, float, float]:
        return (self.rouge1.f1, self.rouge2.f1, self.rougeL.f1)


@dataclass(frozen=True)
class UncertaintyReport:
    doc_id: str
    n: int
    bleuvar: float
    bleuvarn: float
    median_index: int
    rouge_median: RougeTriple
    rouge_deterministic: Optional[RougeTriple] = None


def pairwise_bleu(
    samples: Sequence[TokenSequence], max_order: int = KERNEL_MAX_ORDER
) -> PairwiseBleuMatrix:
    """Full asymmetric BLEU matrix among tokenized samples."""
    n = len(samples)
    if n < 2:
        raise InsufficientSamplesError(f"need at least 2 samples, got {n}")
    scores = np.ones((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(n):
            if i != j:
                scores[i, j] = bleu(samples[i], samples[j], max_order=max_order).value
    return PairwiseBleuMatrix(scores=scores)


def bleuvar(matrix: PairwiseBleuMatrix) -> float:
    """Sum of squared BLEU complements over all ordered pairs i != j."""
    off_diag = ~np.eye(matrix.n, dtype=bool)
    return float(((1.0 - matrix.scores[off_diag]) ** 2).sum())


def bleuvarn(matrix: PairwiseBleuMatrix) -> float:
    """bleuvar normalized by N(N-1); lies in [0, 1] for any N."""
    n = matrix.n
    return bleuvar(matrix) / (n * (n - 1))


def median_summary(matrix: PairwiseBleuMatrix) -> int:
    """Index maximizing summed symmetric similarity with all other samples.

    Ties break toward the lowest index so reports are reproducible.
    """
    s = matrix.scores
    diag = np.diag(s)
    sums = s.sum(axis=1) + s.sum(axis=0) - 2.0 * diag
    return int(np.argmax(sums))


def rouge_triple(candidate: TokenSequence, reference: TokenSequence) -> RougeTriple:
    return RougeTriple(
        rouge1=rouge_n(candidate, reference, 1),
        rouge2=rouge_n(candidate, reference, 2),
        rougeL=rouge_l(candidate, reference),
    )


def score_sample_set(sample_set: SampleSet, max_order: int = KERNEL_MAX_ORDER) -> UncertaintyReport:
    """Tokenize, build the pairwise matrix, and assemble the full report."""
    tokens = [tokenize(text) for text in sample_set.candidates]
    reference = tokenize(sample_set.reference)
    matrix = pairwise_bleu(tokens, max_order=max_order)
    median_idx = median_summary(matrix)
    deterministic = None
    if sample_set.deterministic is not None:
        deterministic = rouge_triple(tokenize(sample_set.deterministic), reference)
    return UncertaintyReport(
        doc_id=sample_set.doc_id,
        n=sample_set.n,
        bleuvar=bleuvar(matrix),
        bleuvarn=bleuvarn(matrix),
        median_index=median_idx,
        rouge_median=rouge_triple(tokens[median_idx], reference),
        rouge_deterministic=deterministic,
    )
