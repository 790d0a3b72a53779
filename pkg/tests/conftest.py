from pathlib import Path

import pytest

from sumvar.corpusio import read_corpus

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_corpus_path() -> Path:
    return FIXTURES / "xsum_examples.jsonl"


@pytest.fixture(scope="session")
def paper_sample_sets(fixture_corpus_path):
    return list(read_corpus(fixture_corpus_path))


@pytest.fixture(scope="session")
def table_high(paper_sample_sets):
    """High-uncertainty example (10 wildly different samples, one degenerate)."""
    return paper_sample_sets[0]


@pytest.fixture(scope="session")
def table_low(paper_sample_sets):
    """Low-uncertainty example (10 near-agreeing samples)."""
    return paper_sample_sets[1]
