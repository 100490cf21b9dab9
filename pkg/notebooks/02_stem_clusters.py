"""
Clustering by stem, then merging
================================

Words sharing a stem start in one cluster.  Clusters are then merged when
they look alike in spelling and also turn up in similar contexts.
"""

from morphkit import (Segmentation, SimilarityParams, build_context_vectors, initial_clusters,
                      merge_clusters, orthographic_similarity, semantic_similarity)

text = ("hu gideb lilha . hu giddieb lilha . hu gideb ħafna . hu giddieb ħafna . "
        "l-ittra waslet . kitbet l-ittra . ried ittraduċi kollox . ittraduċi dan")
tokens = text.split()

segs = [("gideb", Segmentation.build([], "gideb", [])),
        ("giddieb", Segmentation.build([], "giddieb", [])),
        ("ittra", Segmentation.build([], "ittra", [])),
        ("ittraduċi", Segmentation.build([], "ittraduċi", []))]
clusters = initial_clusters(segs)
print(len(clusters), "stem clusters")

vectors = build_context_vectors(tokens, [w for w, _ in segs], window=3)
for a, b in (("gideb", "giddieb"), ("ittra", "ittraduċi")):
    print(f"{a}/{b}: spelling {orthographic_similarity(a, b):.3f}, "
          f"context {semantic_similarity(a, b, vectors):.3f}")

# gideb/giddieb only share "gid", so the spelling threshold must come down to 0.45
for threshold in (0.6, 0.45):
    merged = merge_clusters(clusters, vectors, SimilarityParams(ortho_threshold=threshold))
    print(threshold, [sorted(c.members) for c in merged])
