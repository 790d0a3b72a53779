"""Uncertainty quantification for sets of sampled abstractive summaries."""

from .analysis import (
    CorpusMeans,
    RetentionCurve,
    ScoredRecord,
    UndefinedBaselineError,
    corpus_means,
    difference_curve,
    percent_increase,
    retention_curve,
    uncertainty_vs_quality_curve,
)
from .corpusio import (
    CorpusValidationError,
    ReportRow,
    RunConfig,
    read_corpus,
    read_reports,
    write_corpus,
    write_curve,
    write_reports,
)
from .estimator import UncertaintyScorer, check_sample_sets
from .metrics import BleuScore, RougeScore, bleu, rouge_l, rouge_n
from .synthgen import NoiseSpec, generate_corpus, perturb, uniform_levels
from .textnorm import NGramCounts, TokenSequence, ngrams, tokenize
from .uncertainty import (
    InsufficientSamplesError,
    PairwiseBleuMatrix,
    RougeTriple,
    SampleSet,
    UncertaintyReport,
    bleuvar,
    bleuvarn,
    median_summary,
    pairwise_bleu,
    score_sample_set,
)

__version__ = "0.1.0"

__all__ = [
    "BleuScore",
    "CorpusMeans",
    "CorpusValidationError",
    "InsufficientSamplesError",
    "NGramCounts",
    "NoiseSpec",
    "PairwiseBleuMatrix",
    "ReportRow",
    "RetentionCurve",
    "RougeScore",
    "RougeTriple",
    "RunConfig",
    "SampleSet",
    "ScoredRecord",
    "TokenSequence",
    "UncertaintyReport",
    "UncertaintyScorer",
    "UndefinedBaselineError",
    "bleu",
    "bleuvar",
    "bleuvarn",
    "check_sample_sets",
    "corpus_means",
    "difference_curve",
    "generate_corpus",
    "median_summary",
    "ngrams",
    "pairwise_bleu",
    "percent_increase",
    "perturb",
    "read_corpus",
    "read_reports",
    "retention_curve",
    "rouge_l",
    "rouge_n",
    "score_sample_set",
    "tokenize",
    "uncertainty_vs_quality_curve",
    "uniform_levels",
    "write_corpus",
    "write_curve",
    "write_reports",
]
