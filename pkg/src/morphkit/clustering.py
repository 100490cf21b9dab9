"""Stem-keyed clustering of related words with similarity-driven merging."""
from __future__ import annotations

import hashlib
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache


@dataclass(frozen=True)
class Cluster:
    id: str
    members: frozenset
    stem_keys: frozenset
    merge_depth: int = 0

    def __post_init__(self):
        if not self.members:
            raise ValueError("cluster has no members")
        if self.merge_depth < 0:
            raise ValueError("merge_depth must be >= 0")

    def sorted_members(self):
        return sorted(self.members)


def cluster_id(members):
    """Stable id: hash of the sorted member list."""
    digest = hashlib.sha1("\n".join(sorted(members)).encode("utf-8")).hexdigest()
    return "c" + digest[:10]


@dataclass
class ClusterSet:
    clusters: list = field(default_factory=list)

    def __post_init__(self):
        self.clusters = sorted(self.clusters, key=lambda c: (min(c.members), c.id))
        seen = set()
        for c in self.clusters:
            if seen & c.members:
                raise ValueError(f"cluster {c.id} overlaps another cluster")
            seen |= c.members

    def __len__(self):
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    def vocabulary(self):
        return frozenset().union(*(c.members for c in self.clusters))

    def by_id(self):
        return {c.id: c for c in self.clusters}


@dataclass(frozen=True)
class SimilarityParams:
    ortho_threshold: float = 0.6
    sem_threshold: float = 0.2
    window: int = 3
    max_merge_rounds: int = 2

    def __post_init__(self):
        for name in ("ortho_threshold", "sem_threshold"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.max_merge_rounds < 0:
            raise ValueError("max_merge_rounds must be >= 0")


def initial_clusters(segmentations) -> ClusterSet:
    """Group words by identical stem; ``segmentations`` is (surface, Segmentation) pairs."""
    groups = defaultdict(set)
    for surface, seg in segmentations:
        groups[seg.stem].add(surface)
    clusters = []
    for stem, members in groups.items():
        clusters.append(Cluster(cluster_id(members), frozenset(members), frozenset([stem])))
    return ClusterSet(clusters)


@lru_cache(maxsize=1 << 16)
def _longest_common_substring(a, b):
    best = 0
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0] * (len(b) + 1)
        for j, cb in enumerate(b, start=1):
            if ca == cb:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


def orthographic_similarity(a, b) -> float:
    """2 * longest common substring / total length."""
    if not a or not b:
        raise ValueError("orthographic similarity needs non-empty strings")
    if a > b:
        a, b = b, a
    return 2 * _longest_common_substring(a, b) / (len(a) + len(b))


@dataclass
class ContextVectors:
    vectors: dict

    def __getitem__(self, word):
        return self.vectors[word]

    def __contains__(self, word):
        return word in self.vectors


def build_context_vectors(corpus_tokens, vocabulary, window=3) -> ContextVectors:
    """Counts of tokens within +/- ``window`` positions of each vocabulary word."""
    if window < 1:
        raise ValueError("window must be >= 1")
    vocab = set(vocabulary)
    vectors = {w: Counter() for w in vocab}
    tokens = list(corpus_tokens)
    for i, tok in enumerate(tokens):
        if tok not in vocab:
            continue
        vec = vectors[tok]
        for j in range(max(0, i - window), min(len(tokens), i + window + 1)):
            if j != i:
                vec[tokens[j]] += 1
    return ContextVectors(vectors)


def semantic_similarity(a, b, vectors) -> float:
    """Cosine of the two count vectors; 0 when either is all-zero."""
    va, vb = vectors[a], vectors[b]
    if len(va) > len(vb):
        va, vb = vb, va
    dot = sum(c * vb.get(k, 0) for k, c in va.items())
    if dot == 0:
        return 0.0
    norm = math.sqrt(sum(c * c for c in va.values())) * math.sqrt(sum(c * c for c in vb.values()))
    return min(1.0, dot / norm)


def _pair_affinity(c1, c2, vectors):
    ortho = max(orthographic_similarity(a, b) for a in c1.members for b in c2.members)
    sem = max(semantic_similarity(a, b, vectors) for a in c1.members for b in c2.members)
    return ortho, sem


def merge_round(cluster_set, vectors, params):
    """One merge pass; returns the new ClusterSet and the number of merges."""
    clusters = list(cluster_set)
    scored = []
    for i, c1 in enumerate(clusters):
        for c2 in clusters[i + 1:]:
            ortho, sem = _pair_affinity(c1, c2, vectors)
            if ortho > params.ortho_threshold and sem > params.sem_threshold:
                scored.append(((ortho + sem) / 2, c1, c2))
    scored.sort(key=lambda t: (-t[0], t[1].id, t[2].id))

    used, merged = set(), []
    for _, c1, c2 in scored:
        if c1.id in used or c2.id in used:
            continue
        used.update((c1.id, c2.id))
        members = c1.members | c2.members
        merged.append(Cluster(cluster_id(members), members, c1.stem_keys | c2.stem_keys,
                              1 + max(c1.merge_depth, c2.merge_depth)))
    kept = [c for c in clusters if c.id not in used]
    return ClusterSet(kept + merged), len(merged)


def merge_clusters(cluster_set, vectors, params=None) -> ClusterSet:
    """Merge rounds until ``max_merge_rounds`` or a fixed point.

    A pair merges when both its best member-pair orthographic similarity and
    its best member-pair semantic similarity exceed their thresholds.  Pairs
    are taken by decreasing mean of the two, each cluster at most once a round.
    """
    params = params or SimilarityParams()
    current = cluster_set
    for _ in range(params.max_merge_rounds):
        current, n_merged = merge_round(current, vectors, params)
        if n_merged == 0:
            break
    return current


def write_clusters(cluster_set, stream):
    for c in cluster_set:
        stream.write(f"{c.id}\t{c.merge_depth}\t{' '.join(c.sorted_members())}\n")


def read_clusters(stream) -> ClusterSet:
    text = stream.read() if hasattr(stream, "read") else stream
    clusters = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 3 or not cells[2].split():
            raise ValueError(f"line {lineno}: expected id, merge_depth, members")
        try:
            depth = int(cells[1])
        except ValueError:
            raise ValueError(f"line {lineno}: merge_depth {cells[1]!r} is not an integer") from None
        clusters.append(Cluster(cells[0], frozenset(cells[2].split()), frozenset(), depth))
    return ClusterSet(clusters)
