import random

import pytest

from sumvar.analysis import (
    DEFAULT_GRID,
    CorpusMeans,
    ScoredRecord,
    UndefinedBaselineError,
    corpus_means,
    difference_curve,
    percent_increase,
    retention_curve,
    uncertainty_vs_quality_curve,
)

from .oracles import difference_oracle, quality_oracle, retention_oracle


def rec(doc_id, bleuvarn, r1, r2=None, rl=None, det=None):
    triple = (r1, r2 if r2 is not None else r1, rl if rl is not None else r1)
    return ScoredRecord(
        doc_id=doc_id, bleuvarn=bleuvarn, rouge_median=triple, rouge_deterministic=det
    )


FOUR_RECORDS = [
    rec("a", 0.9, 0.1),
    rec("b", 0.7, 0.2),
    rec("c", 0.3, 0.5),
    rec("d", 0.1, 0.6),
]


def random_corpus(rng, size, with_det=False):
    records = []
    for i in range(size):
        det = None
        if with_det:
            det = (rng.random(), rng.random(), rng.random())
        records.append(
            ScoredRecord(
                doc_id=f"doc-{i:03d}",
                bleuvarn=rng.random(),
                rouge_median=(rng.random(), rng.random(), rng.random()),
                rouge_deterministic=det,
            )
        )
    return records


# ------------------------------------------------------------- retention

def test_retention_hand_example():
    curve = retention_curve(FOUR_RECORDS, metric="r1", grid=(0.0, 0.25, 0.5))
    fractions = [p[0] for p in curve.points]
    values = [p[1] for p in curve.points]
    assert fractions == [0.0, 0.25, 0.5]
    assert values[0] == pytest.approx(0.35, abs=1e-12)
    assert values[1] == pytest.approx(1.3 / 3, abs=1e-12)
    assert values[2] == pytest.approx(0.55, abs=1e-12)
    assert curve.sort_key == "bleuvarn-desc"


def test_retention_constant_corpus_is_flat():
    records = [rec(f"d{i}", 0.1 * i, 0.42) for i in range(6)]
    curve = retention_curve(records, grid=(0.0, 0.2, 0.4, 0.6))
    assert all(v == pytest.approx(0.42, abs=1e-12) for _, v in curve.points)


def test_retention_monotone_when_uncertainty_inverts_quality():
    records = [rec(f"d{i}", 1.0 - 0.1 * i, 0.1 * i) for i in range(10)]
    curve = retention_curve(records, grid=DEFAULT_GRID)
    values = [v for _, v in curve.points]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_retention_fraction_zero_equals_corpus_mean():
    rng = random.Random(3)
    records = random_corpus(rng, 37)
    for metric, idx in (("r1", 0), ("r2", 1), ("rl", 2)):
        curve = retention_curve(records, metric=metric)
        assert curve.points[0][1] == corpus_means(records).variational[idx]


def test_retention_invariant_under_input_permutation():
    rng = random.Random(4)
    records = random_corpus(rng, 25)
    shuffled = records[:]
    rng.shuffle(shuffled)
    assert retention_curve(records) == retention_curve(shuffled)


def test_retention_validation_errors():
    with pytest.raises(ValueError):
        retention_curve([], grid=(0.0,))
    with pytest.raises(ValueError):
        retention_curve(FOUR_RECORDS, grid=(0.0, 1.0))
    with pytest.raises(ValueError):
        retention_curve(FOUR_RECORDS, grid=(0.25, 0.5))
    with pytest.raises(ValueError):
        retention_curve(FOUR_RECORDS, grid=(0.0, 0.5, 0.25))
    with pytest.raises(ValueError):
        retention_curve(FOUR_RECORDS, metric="r9")


def test_retention_discards_floor_at_exact_multiples():
    # 0.3 * 10 is 2.999...96 in binary; the floor must still discard 3
    records = [rec(f"d{i}", 1.0 - 0.05 * i, 0.1 * i) for i in range(10)]
    curve = retention_curve(records, metric="r1", grid=(0.0, 0.3))
    kept = sorted(records, key=lambda r: (-r.bleuvarn, r.doc_id))[3:]
    expected = sum(r.rouge_median[0] for r in kept) / len(kept)
    assert curve.points[1][1] == pytest.approx(expected, abs=1e-12)


def test_retention_matches_naive_oracle():
    rng = random.Random(12)
    records = random_corpus(rng, 100)
    tuples = [(r.doc_id, r.bleuvarn, r.rouge_median) for r in records]
    for metric, idx in (("r1", 0), ("r2", 1), ("rl", 2)):
        curve = retention_curve(records, metric=metric, grid=DEFAULT_GRID)
        expected = retention_oracle(tuples, idx, DEFAULT_GRID)
        for (f1, v1), (f2, v2) in zip(curve.points, expected):
            assert f1 == f2
            assert v1 == pytest.approx(v2, abs=1e-12)


# ------------------------------------------------------------- quality

def test_quality_curve_flat_when_bleuvarn_constant():
    records = [rec(f"d{i}", 0.33, 0.1 * i) for i in range(8)]
    curve = uncertainty_vs_quality_curve(records, grid=(0.0, 0.25, 0.5))
    assert all(v == pytest.approx(0.33, abs=1e-12) for _, v in curve.points)
    assert curve.sort_key == "rouge-asc"
    assert curve.metric_name == "bleuvarn"


def test_quality_curve_decreasing_when_anticorrelated():
    records = [rec(f"d{i}", 1.0 - 0.1 * i, 0.1 * i) for i in range(10)]
    curve = uncertainty_vs_quality_curve(records, grid=(0.0, 0.2, 0.4, 0.6, 0.8))
    values = [v for _, v in curve.points]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_quality_curve_matches_naive_oracle():
    rng = random.Random(13)
    records = random_corpus(rng, 100)
    tuples = [(r.doc_id, r.bleuvarn, r.rouge_median) for r in records]
    curve = uncertainty_vs_quality_curve(records, grid=DEFAULT_GRID)
    expected = quality_oracle(tuples, 0, DEFAULT_GRID)
    for (_, v1), (_, v2) in zip(curve.points, expected):
        assert v1 == pytest.approx(v2, abs=1e-12)


# ------------------------------------------------------------- difference

def test_difference_zero_when_columns_equal():
    records = [
        rec(f"d{i}", 0.1 * i, 0.4, det=(0.4, 0.4, 0.4)) for i in range(5)
    ]
    curve = difference_curve(records, grid=(0.0, 0.2, 0.4))
    assert all(v == pytest.approx(0.0, abs=1e-12) for _, v in curve.points)


def test_difference_constant_offset():
    records = [
        rec(f"d{i}", 0.1 * i, 0.41, det=(0.40, 0.40, 0.40)) for i in range(5)
    ]
    curve = difference_curve(records, grid=(0.0, 0.2, 0.4))
    assert all(v == pytest.approx(0.01, abs=1e-12) for _, v in curve.points)


def test_difference_single_record_paper_values():
    record = rec("high-uncertainty", 0.96, 0.2222, det=(0.2181, 0.2181, 0.2181))
    curve = difference_curve([record], grid=(0.0,))
    assert curve.points[0][1] == pytest.approx(0.2222 - 0.2181, abs=1e-9)


def test_difference_requires_deterministic_everywhere():
    records = [rec("a", 0.5, 0.4, det=(0.4, 0.4, 0.4)), rec("b", 0.4, 0.3)]
    with pytest.raises(ValueError, match="missing deterministic"):
        difference_curve(records, grid=(0.0,))


def test_difference_negates_when_columns_swapped():
    rng = random.Random(14)
    records = random_corpus(rng, 40, with_det=True)
    swapped = [
        ScoredRecord(
            doc_id=r.doc_id,
            bleuvarn=r.bleuvarn,
            rouge_median=r.rouge_deterministic,
            rouge_deterministic=r.rouge_median,
        )
        for r in records
    ]
    forward = difference_curve(records, grid=DEFAULT_GRID)
    backward = difference_curve(swapped, grid=DEFAULT_GRID)
    for (_, v1), (_, v2) in zip(forward.points, backward.points):
        assert v1 == pytest.approx(-v2, abs=1e-12)


def test_difference_matches_naive_oracle():
    rng = random.Random(15)
    records = random_corpus(rng, 100, with_det=True)
    tuples = [
        (r.doc_id, r.bleuvarn, r.rouge_median, r.rouge_deterministic) for r in records
    ]
    curve = difference_curve(records, grid=DEFAULT_GRID)
    expected = difference_oracle(tuples, 0, DEFAULT_GRID)
    for (_, v1), (_, v2) in zip(curve.points, expected):
        assert v1 == pytest.approx(v2, abs=1e-12)


# ------------------------------------------------------------- means / increase

def test_corpus_means_single_record():
    record = rec("low-uncertainty", 0.38, 0.625, det=(0.5263, 0.5263, 0.5263))
    means = corpus_means([record])
    assert means.variational[0] == pytest.approx(0.625)
    assert means.deterministic[0] == pytest.approx(0.5263)


def test_corpus_means_two_records():
    means = corpus_means([rec("a", 0.1, 0.2), rec("b", 0.2, 0.6)])
    assert means.variational[0] == pytest.approx(0.4, abs=1e-12)
    assert means.deterministic is None


def test_corpus_means_empty_rejected():
    with pytest.raises(ValueError):
        corpus_means([])


def test_percent_increase_homogeneous_is_zero():
    records = [rec(f"d{i}", 0.2, 0.5) for i in range(8)]
    table = percent_increase(records)
    for fraction in (0.25, 0.5, 0.75):
        assert table[fraction] == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)


def test_percent_increase_hand_example():
    table = percent_increase(FOUR_RECORDS, fractions=(0.5,))
    assert table[0.5][0] == pytest.approx(100 * (0.55 - 0.35) / 0.35, abs=1e-9)


def test_percent_increase_fraction_zero_is_exactly_zero():
    rng = random.Random(16)
    records = random_corpus(rng, 30)
    table = percent_increase(records, fractions=(0.0,))
    assert table[0.0] == (0.0, 0.0, 0.0)


def test_percent_increase_zero_baseline_error():
    records = [rec(f"d{i}", 0.5, 0.0) for i in range(4)]
    with pytest.raises(UndefinedBaselineError, match="r1"):
        percent_increase(records)


def test_percent_increase_rejects_bad_fraction():
    with pytest.raises(ValueError):
        percent_increase(FOUR_RECORDS, fractions=(1.0,))
