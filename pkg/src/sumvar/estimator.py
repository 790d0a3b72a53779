"""scikit-learn style wrapper so scoring composes with the wider ecosystem."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, TransformerMixin

from .uncertainty import (
    KERNEL_MAX_ORDER,
    SampleSet,
    UncertaintyReport,
    score_sample_set,
)


def check_sample_sets(X: Iterable) -> list[SampleSet]:
    """Validate an iterable of SampleSets, coercing dicts when needed."""
    checked = []
    for position, item in enumerate(X):
        if isinstance(item, SampleSet):
            checked.append(item)
        elif isinstance(item, dict):
            checked.append(SampleSet(**item))
        else:
            raise TypeError(
                f"item {position}: expected SampleSet or mapping, got {type(item).__name__}"
            )
    return checked


class UncertaintyScorer(BaseEstimator, TransformerMixin):
    """Stateless transformer mapping SampleSets to UncertaintyReports.

    Parameters
    ----------
    max_order : int, default=2
        Highest n-gram order of the pairwise BLEU kernel.
    n_jobs : int or None, default=None
        joblib worker count for document-level parallelism; None means
        sequential. Output is identical for every setting.
    """

    def __init__(self, max_order: int = KERNEL_MAX_ORDER, n_jobs: Optional[int] = None):
        self.max_order = max_order
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {self.max_order}")
        check_sample_sets(X)
        return self

    def transform(self, X: Sequence) -> list[UncertaintyReport]:
        sample_sets = check_sample_sets(X)
        if self.n_jobs in (None, 1):
            return [score_sample_set(s, max_order=self.max_order) for s in sample_sets]
        return Parallel(n_jobs=self.n_jobs)(
            delayed(score_sample_set)(s, max_order=self.max_order) for s in sample_sets
        )
