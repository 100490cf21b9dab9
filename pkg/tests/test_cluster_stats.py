import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from morphkit.cluster_stats import (GROUPS, REMOVAL_BINS, SIZE_BINS, BinnedTable,
                                    UndefinedCorrelation, analyze, pearson, percent,
                                    quality_distribution, quality_removal_correlation,
                                    removal_bin, removal_distribution, render_text,
                                    report_to_csv, size_bin, size_distribution)
from morphkit.clustering import Cluster, ClusterSet
from morphkit.lexicon import ClusterEvalRecord
from tabular_fixtures import (QUALITY_PERCENT, REMOVAL_PERCENT, SIZE_PERCENT,
                              evaluation_fixture, size_fixture)


def test_size_examples():
    table = size_distribution(*size_fixture())
    assert table.cell("<10", "NC") == (25, 53)
    assert table.cell(">=40", "CON") == (7, 13)


def test_empty_group():
    clusters, origins = size_fixture({"NC": [1, 0, 0, 0, 0], "CON": [0] * 5})
    table = size_distribution(clusters, origins)
    assert table.percentages("CON") == [0] * 5 and table.total("CON") == 0


def test_untagged_cluster():
    clusters, _ = size_fixture({"NC": [1, 0, 0, 0, 0]})
    with pytest.raises(ValueError):
        size_distribution(clusters, {})


def test_removal_examples():
    clusters, origins, records = evaluation_fixture()
    table = removal_distribution(records, clusters, origins)
    assert table.cell("0%", "NC") == (33, 45)
    assert table.cell("0%", "CON") == (49, 61)


def test_full_removal_is_top_bin():
    c = Cluster("c1", frozenset({"a", "b"}), frozenset())
    rec = ClusterEvalRecord("c1", "e1", "very_bad", frozenset({"a", "b"}))
    table = removal_distribution([rec], ClusterSet([c]), {"c1": "NC"})
    assert table.cell(">80%", "NC") == (1, 100)


def test_quality_examples():
    _, origins, records = evaluation_fixture()
    table = quality_distribution(records, origins)
    assert table.cell("very_good", "NC") == (12, 16)  # 12/73 rounds to 16
    assert table.cell("very_bad", "CON") == (3, 4)


def test_single_record_quality():
    rec = ClusterEvalRecord("c1", "e1", "medium", frozenset())
    assert quality_distribution([rec], {"c1": "CON"}).cell("medium", "CON") == (1, 100)


@pytest.mark.parametrize("attr,expected", [("size", SIZE_PERCENT), ("removal", REMOVAL_PERCENT),
                                           ("quality", QUALITY_PERCENT)])
def test_percentages_within_one_point(attr, expected):
    clusters, origins, records = evaluation_fixture()
    if attr == "size":
        table = size_distribution(*size_fixture())
    elif attr == "removal":
        table = removal_distribution(records, clusters, origins)
    else:
        table = quality_distribution(records, origins)
    for g in GROUPS:
        assert all(abs(a - b) <= 1 for a, b in zip(table.percentages(g), expected[g]))


def test_removal_bin_edges():
    assert REMOVAL_BINS[removal_bin(Fraction(0))] == "0%"
    assert REMOVAL_BINS[removal_bin(Fraction(1, 20))] == "1-5%"
    assert REMOVAL_BINS[removal_bin(Fraction(1, 10))] == "5-10%"
    assert REMOVAL_BINS[removal_bin(Fraction(1, 1000))] == "1-5%"
    assert REMOVAL_BINS[removal_bin(Fraction(4, 5))] == "60-80%"
    assert REMOVAL_BINS[removal_bin(Fraction(81, 100))] == ">80%"


def test_size_bin_edges():
    assert [SIZE_BINS[size_bin(n)] for n in (1, 9, 10, 19, 20, 39, 40, 400)] == \
        ["<10", "<10", "10-19", "10-19", "20-29", "30-39", ">=40", ">=40"]


@given(st.fractions(min_value=0, max_value=1))
def test_removal_binning_total(frac):
    assert 0 <= removal_bin(frac) < len(REMOVAL_BINS)


@given(st.lists(st.integers(0, 50), min_size=5, max_size=5))
def test_binned_table_invariant(counts):
    t = BinnedTable(SIZE_BINS, {"NC": counts})
    assert sum(c for c in t.counts["NC"]) == t.total("NC")
    assert t.percentages("NC") == [percent(c, t.total("NC")) for c in counts]
    for c, p in zip(counts, t.percentages("NC")):
        assert abs(p - 100 * c / max(1, t.total("NC"))) <= 0.5


def test_percent_rounds_half_up():
    assert percent(1, 8) == 13  # 12.5
    assert percent(22, 80) == 28  # 27.5


@pytest.mark.parametrize("xs,ys,r", [
    ([1, 2, 3], [2, 4, 6], 1.0),
    ([1, 2, 3], [6, 4, 2], -1.0),
    ([1, 2, 3, 4], [1, 3, 2, 4], 0.8),
    ([1, 2, 3], [1, 3, 2], 0.5),
    ([1, 2, 3, 4, 5], [2, 1, 4, 3, 5], 0.8),
    ([0, 0, 1, 1], [0, 1, 0, 1], 0.0),
])
def test_pearson_hand_values(xs, ys, r):
    assert abs(pearson(xs, ys) - r) <= 1e-9


def test_pearson_errors():
    with pytest.raises(UndefinedCorrelation):
        pearson([1, 1, 1], [1, 2, 3])
    with pytest.raises(ValueError):
        pearson([1], [2])
    with pytest.raises(ValueError):
        pearson([1, 2], [1, 2, 3])


series = st.lists(st.integers(-50, 50), min_size=3, max_size=20)


@given(series, series, st.floats(0.1, 10), st.floats(-10, 10))
def test_pearson_symmetry_and_affine(xs, ys, a, b):
    n = min(len(xs), len(ys))
    xs, ys = xs[:n], ys[:n]
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        return
    r = pearson(xs, ys)
    assert -1 <= r <= 1
    assert abs(r - pearson(ys, xs)) <= 1e-9
    assert abs(r - pearson([a * x + b for x in xs], ys)) <= 1e-9


def test_correlation_monotone_construction():
    clusters, origins, records = evaluation_fixture()
    for g in GROUPS:
        r = quality_removal_correlation(records, clusters, origins, g)
        assert 0.7 < r <= 1


def test_correlation_shuffled_near_zero():
    rng = random.Random(3)
    xs = [rng.random() for _ in range(4000)]
    ys = [rng.random() for _ in range(4000)]
    assert abs(pearson(xs, ys)) < 0.05


def test_analyze_and_outputs():
    size_clusters, size_origins = size_fixture()
    eval_clusters, eval_origins, records = evaluation_fixture()
    clusters = ClusterSet(list(size_clusters) + list(eval_clusters))
    origins = {**size_origins, **eval_origins}
    report = analyze(clusters, records, origins)
    assert report.removal_table.total("NC") == 73 and report.removal_table.total("CON") == 80
    # the 100-word evaluation clusters land in the top size bin
    assert report.size_table.cell(">=40", "NC") == (4 + 73, 64)
    text = render_text(report)
    assert "45% (33)" in text and "Correlation" in text and "0.898" in text
    csv_text = report_to_csv(report)
    assert csv_text.splitlines()[0] == "section,bin,NC_count,NC_pct,CON_count,CON_pct"
    assert "removed,0%,33,45,49,61" in csv_text
    assert "correlation,NC,0.898,,," in csv_text
    assert report_to_csv(analyze(clusters, records, origins)) == csv_text


def test_analyze_expert_counts():
    c = [Cluster(f"c{i}", frozenset({f"w{i}"}), frozenset()) for i in range(3)]
    recs = [ClusterEvalRecord("c0", e, "good", frozenset()) for e in ("e1", "e2", "e3")]
    recs.append(ClusterEvalRecord("c1", "e1", "bad", frozenset()))
    report = analyze(ClusterSet(c), recs, {"c0": "NC", "c1": "NC", "c2": "CON"})
    assert report.evaluations_by_all == {"NC": 1, "CON": 0}
    assert report.evaluations_by_one == {"NC": 1, "CON": 0}
    assert report.correlations["NC"] is None  # removal is constant
