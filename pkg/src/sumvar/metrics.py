"""Sentence-level BLEU and ROUGE-1/2/L over normalized token sequences.

BLEU here is the similarity kernel used by the uncertainty measures, so its
conventions are pinned:

- modified n-gram precision with reference clipping, orders 1..K where
  K = min(max_order, |candidate|, |reference|);
- p1 is never smoothed (fully disjoint pairs must score exactly 0);
- zero-count precisions at orders >= 2 are epsilon-smoothed (0.1 / total);
- brevity penalty exp(1 - |ref|/|cand|) when the candidate is shorter;
- degenerate inputs: two empty sequences score 1.0, one empty scores 0.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .textnorm import TokenSequence, ngrams

SMOOTHING_ID = "eps0.1-ge2"

_EPSILON = 0.1


@dataclass(frozen=True)
class BleuScore:
    value: float
    precisions: tuple[float, ...]
    brevity_penalty: float


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def bleu(candidate: TokenSequence, reference: TokenSequence, max_order: int = 4) -> BleuScore:
    """Smoothed sentence BLEU of *candidate* against a single *reference*."""
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    if not candidate or not reference:
        value = 1.0 if candidate == reference else 0.0
        return BleuScore(value=value, precisions=(), brevity_penalty=1.0)

    effective_order = min(max_order, len(candidate), len(reference))
    precisions = []
    for order in range(1, effective_order + 1):
        cand_counts = ngrams(candidate, order).counts
        ref_counts = ngrams(reference, order).counts
        clipped = sum((cand_counts & ref_counts).values())
        total = sum(cand_counts.values())
        if order == 1:
            p = clipped / total
        elif clipped == 0:
            p = _EPSILON / total
        else:
            p = clipped / total
        precisions.append(p)

    if len(candidate) >= len(reference):
        bp = 1.0
    else:
        bp = math.exp(1.0 - len(reference) / len(candidate))

    if precisions[0] == 0.0:
        value = 0.0
    else:
        log_mean = sum(math.log(p) for p in precisions) / effective_order
        value = bp * math.exp(log_mean)
    return BleuScore(value=value, precisions=tuple(precisions), brevity_penalty=bp)


def rouge_n(candidate: TokenSequence, reference: TokenSequence, n: int) -> RougeScore:
    """Clipped n-gram overlap precision/recall/F1."""
    if n < 1:
        raise ValueError(f"rouge order must be >= 1, got {n}")
    cand_counts = ngrams(candidate, n).counts
    ref_counts = ngrams(reference, n).counts
    cand_total = sum(cand_counts.values())
    ref_total = sum(ref_counts.values())
    if cand_total == 0 or ref_total == 0:
        return RougeScore(0.0, 0.0, 0.0)
    overlap = sum((cand_counts & ref_counts).values())
    precision = overlap / cand_total
    recall = overlap / ref_total
    return RougeScore(precision, recall, _f1(precision, recall))


def _lcs_length(a: TokenSequence, b: TokenSequence) -> int:
    # Rolling single-row DP; O(len(a) * len(b)) time, O(len(b)) space.
    if not a or not b:
        return 0
    row = [0] * (len(b) + 1)
    for x in a:
        prev = 0
        for j, y in enumerate(b, start=1):
            cur = row[j]
            if x == y:
                row[j] = prev + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            prev = cur
    return row[-1]


def rouge_l(candidate: TokenSequence, reference: TokenSequence) -> RougeScore:
    """Longest-common-subsequence precision/recall/F1."""
    if not candidate or not reference:
        return RougeScore(0.0, 0.0, 0.0)
    lcs = _lcs_length(candidate, reference)
    precision = lcs / len(candidate)
    recall = lcs / len(reference)
    return RougeScore(precision, recall, _f1(precision, recall))
