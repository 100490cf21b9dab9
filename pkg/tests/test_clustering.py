import io
import math

import pytest
from hypothesis import given, settings, strategies as st

from morphkit.affixes import Segmentation
from morphkit.clustering import (Cluster, ClusterSet, SimilarityParams, build_context_vectors,
                                 initial_clusters, merge_clusters, merge_round,
                                 orthographic_similarity, read_clusters, semantic_similarity,
                                 write_clusters)


def seg(prefixes, stem, suffixes=()):
    s = Segmentation.build(prefixes, stem, suffixes)
    return s.surface(), s


def test_initial_shared_stem():
    cs = initial_clusters([seg(["n"], "igdeb"), seg(["t"], "igdeb"), seg(["j"], "igdeb")])
    [c] = list(cs)
    assert c.members == {"nigdeb", "tigdeb", "jigdeb"} and c.stem_keys == {"igdeb"}
    assert c.merge_depth == 0


def test_initial_stem_variation_splits():
    cs = initial_clusters([seg([], "gideb"), seg([], "giddieb")])
    assert len(cs) == 2


def test_initial_empty():
    assert len(initial_clusters([])) == 0


def test_cluster_ids_stable():
    a = initial_clusters([seg(["n"], "igdeb"), seg(["t"], "igdeb")])
    b = initial_clusters([seg(["t"], "igdeb"), seg(["n"], "igdeb")])
    assert [c.id for c in a] == [c.id for c in b]


def test_overlap_rejected():
    with pytest.raises(ValueError):
        ClusterSet([Cluster("a", frozenset({"x"}), frozenset()),
                    Cluster("b", frozenset({"x", "y"}), frozenset())])


def test_ortho_examples():
    assert orthographic_similarity("ittra", "ittra") == 1.0
    assert orthographic_similarity("ittra", "ittraduċi") == pytest.approx(10 / 14)
    assert orthographic_similarity("ab", "cd") == 0.0


@given(st.text("abġ", min_size=1, max_size=8), st.text("abġ", min_size=1, max_size=8))
def test_ortho_properties(a, b):
    s = orthographic_similarity(a, b)
    assert 0.0 <= s <= 1.0 and s == orthographic_similarity(b, a)
    assert (s == 1.0) == (a == b)


def test_context_vectors():
    v = build_context_vectors(["a", "b", "c"], ["b", "z"], window=1)
    assert v["b"] == {"a": 1, "c": 1}
    assert sum(v["z"].values()) == 0


def test_context_vectors_mirrored():
    v = build_context_vectors(["a", "b", "a", "b"], ["a", "b"], window=1)
    assert v["a"] == {"b": 3} and v["b"] == {"a": 3}


def test_semantic_examples():
    v = build_context_vectors([], ["p", "q", "r", "z"])
    v.vectors.update(p={"x": 1, "y": 1}, q={"x": 1}, r={"y": 2})
    assert semantic_similarity("p", "q", v) == pytest.approx(1 / math.sqrt(2))
    assert semantic_similarity("q", "r", v) == 0.0
    assert semantic_similarity("p", "p", v) == pytest.approx(1.0)
    assert semantic_similarity("p", "z", v) == 0.0


# a little corpus: gideb/giddieb share contexts, ittra/ittraduċi do not
CORPUS = ("hu gideb lilha . hu giddieb lilha . hu gideb ħafna . hu giddieb ħafna . "
          "l-ittra waslet . kitbet l-ittra . ried ittraduċi kollox . ittraduċi dan").split()


def _set(*words):
    return ClusterSet([Cluster(f"k{w}", frozenset({w}), frozenset({w})) for w in words])


def test_related_clusters_merge():
    # gideb/giddieb share only "gid": 2*3/12 = 0.5, below the 0.6 default
    vectors = build_context_vectors(CORPUS, ["gideb", "giddieb"])
    assert orthographic_similarity("gideb", "giddieb") == 0.5
    assert len(merge_clusters(_set("gideb", "giddieb"), vectors)) == 2
    out = merge_clusters(_set("gideb", "giddieb"), vectors, SimilarityParams(0.45, 0.2))
    [c] = list(out)
    assert c.members == {"gideb", "giddieb"} and c.merge_depth == 1


def test_ittra_not_merged():
    vectors = build_context_vectors(CORPUS, ["ittra", "ittraduċi"])
    assert orthographic_similarity("ittra", "ittraduċi") > 0.6
    assert semantic_similarity("ittra", "ittraduċi", vectors) <= 0.2
    assert len(merge_clusters(_set("ittra", "ittraduċi"), vectors)) == 2


def test_zero_rounds_is_identity():
    vectors = build_context_vectors(CORPUS, ["gideb", "giddieb"])
    cs = _set("gideb", "giddieb")
    assert merge_clusters(cs, vectors, SimilarityParams(0.45, max_merge_rounds=0)) is cs


def test_each_cluster_merges_once_per_round():
    words = ["abcd", "abce", "abcf", "abcg"]
    vectors = build_context_vectors(["x", *" x ".join(words).split(), "x"], words)
    out, n = merge_round(_set(*words), vectors, SimilarityParams())
    assert n == 2 and len(out) == 2 and all(c.merge_depth == 1 for c in out)
    final = merge_clusters(_set(*words), vectors)
    assert len(final) == 1 and list(final)[0].merge_depth == 2


vocab = st.lists(st.text("abcd", min_size=2, max_size=5), min_size=1, max_size=8, unique=True)


@settings(max_examples=50)
@given(vocab, st.lists(st.sampled_from(["x", "y", "z"]), max_size=10),
       st.floats(0, 1), st.floats(0, 1), st.integers(0, 3))
def test_merge_properties(words, filler, ortho, sem, rounds):
    tokens = []
    for i, w in enumerate(words):
        tokens += [w, filler[i % len(filler)] if filler else "x"]
    vectors = build_context_vectors(tokens, words)
    params = SimilarityParams(ortho, sem, max_merge_rounds=rounds)
    start = _set(*words)
    current, sizes = start, [len(start)]
    for _ in range(rounds):
        current, _ = merge_round(current, vectors, params)
        sizes.append(len(current))
    assert sizes == sorted(sizes, reverse=True)
    final = merge_clusters(start, vectors, params)
    assert final.vocabulary() == frozenset(words)
    assert sum(len(c.members) for c in final) == len(words)
    assert all(c.merge_depth <= rounds for c in final)


@given(vocab)
def test_thresholds_above_one_never_merge(words):
    vectors = build_context_vectors(words * 2, words)
    params = SimilarityParams(1.0, 1.0)  # comparisons are strict, so nothing clears 1.0
    assert len(merge_clusters(_set(*words), vectors, params)) == len(words)


def test_params_validated():
    with pytest.raises(ValueError):
        SimilarityParams(window=0)
    with pytest.raises(ValueError):
        SimilarityParams(max_merge_rounds=-1)
    with pytest.raises(ValueError):
        SimilarityParams(ortho_threshold=1.5)


def test_cluster_file_round_trip():
    vectors = build_context_vectors(CORPUS, ["gideb", "giddieb", "ittra"])
    cs = merge_clusters(_set("gideb", "giddieb", "ittra"), vectors)
    buf = io.StringIO()
    write_clusters(cs, buf)
    back = read_clusters(buf.getvalue())
    assert [(c.id, c.members, c.merge_depth) for c in back] == \
        [(c.id, c.members, c.merge_depth) for c in cs]


def test_cluster_file_errors():
    with pytest.raises(ValueError):
        read_clusters("c1\tone\ta b\n")
    with pytest.raises(ValueError):
        read_clusters("c1\t0\n")
