"""Basic word features and categorical ID3 decision trees."""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from morphkit.affixes import cv_pattern, detect_gemination

TREE_FORMAT = "morphkit-tree"
TREE_VERSION = 1
INHERITED_PREFIX = "prev:"


@dataclass(frozen=True)
class FeatureVector:
    stem: str
    prefix: Optional[str]
    suffix: Optional[str]
    composite_suffix: Optional[str]
    cv_pattern: str
    gemination: bool
    inherited: tuple = ()  # (property, value) pairs in cascade order

    def as_dict(self):
        d = {
            "stem": self.stem,
            "prefix": self.prefix,
            "suffix": self.suffix,
            "composite_suffix": self.composite_suffix,
            "cv_pattern": self.cv_pattern,
            "gemination": self.gemination,
        }
        for prop, value in self.inherited:
            d[INHERITED_PREFIX + prop] = value
        return d

    def with_inherited(self, prop, value):
        return FeatureVector(self.stem, self.prefix, self.suffix, self.composite_suffix,
                             self.cv_pattern, self.gemination,
                             self.inherited + ((prop, value),))


def extract_features(word, segmentation) -> FeatureVector:
    if segmentation.surface() != word:
        raise ValueError(f"segmentation does not spell {word!r}")
    return FeatureVector(
        stem=segmentation.stem,
        prefix=segmentation.prefixes[-1] if segmentation.prefixes else None,
        suffix=segmentation.suffixes[-1] if segmentation.suffixes else None,
        composite_suffix=segmentation.composite_suffix,
        cv_pattern=cv_pattern(word),
        gemination=detect_gemination(word)[0],
    )


def value_key(v):
    """Total order over feature values and labels; None sorts first."""
    if v is None:
        return (0, "")
    return (1, type(v).__name__, str(v))


def _features(x):
    return x.as_dict() if isinstance(x, FeatureVector) else x


def entropy(labels):
    counts = Counter(labels)
    n = sum(counts.values())
    return -sum(c / n * math.log2(c / n) for c in counts.values())


def information_gain(instances, feature) -> float:
    """H(label) - sum_v p(v) H(label | feature = v), base 2.

    ``instances`` is a sequence of (features, label) pairs where features is
    a mapping or a :class:`FeatureVector`.
    """
    if not instances:
        raise ValueError("information gain of no instances")
    groups = {}
    for x, y in instances:
        groups.setdefault(_features(x).get(feature), []).append(y)
    n = len(instances)
    h = entropy([y for _, y in instances])
    h_cond = sum(len(ys) / n * entropy(ys) for ys in groups.values())
    return max(0.0, h - h_cond)


@dataclass(frozen=True)
class TrainParams:
    min_leaf: int = 2
    max_depth: Optional[int] = None

    def __post_init__(self):
        if self.min_leaf < 1:
            raise ValueError("min_leaf must be >= 1")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")


@dataclass
class Leaf:
    distribution: dict  # label -> count

    @property
    def label(self):
        # majority, ties to the smallest label
        return min(self.distribution, key=lambda l: (-self.distribution[l], value_key(l)))

    @property
    def confidence(self):
        return self.distribution[self.label] / sum(self.distribution.values())


@dataclass
class Split:
    feature: str
    branches: dict  # value -> node
    fallback: Leaf


@dataclass
class DecisionTree:
    target: str
    root: object
    features: tuple = field(default=())

    def predict(self, features):
        return predict(self, features)

    def nodes(self):
        stack = [(self.root, ())]
        while stack:
            node, path = stack.pop()
            yield node, path
            if isinstance(node, Split):
                for child in node.branches.values():
                    stack.append((child, path + (node.feature,)))


def _distribution(labels):
    return dict(Counter(labels))


def _grow(instances, features, depth, params):
    labels = [y for _, y in instances]
    leaf = Leaf(_distribution(labels))
    if (len(leaf.distribution) == 1 or not features or len(instances) < params.min_leaf
            or (params.max_depth is not None and depth >= params.max_depth)):
        return leaf

    best, best_gain = None, -1.0
    for f in features:  # sorted, so ties go to the lexicographically first feature
        if len({value_key(x.get(f)) for x, _ in instances}) < 2:
            continue
        gain = information_gain(instances, f)
        if gain > best_gain + 1e-12:
            best, best_gain = f, gain
    if best is None:
        return leaf

    parts = {}
    for x, y in instances:
        parts.setdefault(x.get(best), []).append((x, y))
    rest = tuple(f for f in features if f != best)
    branches = {v: _grow(parts[v], rest, depth + 1, params)
                for v in sorted(parts, key=value_key)}
    return Split(best, branches, leaf)


def train(instances, target, params=None) -> DecisionTree:
    """Greedy top-down induction by maximum information gain.

    Splits continue at zero gain while the node is impure and some feature
    still varies, so conflict-free data is always fit exactly when depth
    and ``min_leaf`` allow.
    """
    params = params or TrainParams()
    if not instances:
        raise ValueError("cannot train a tree on no instances")
    rows = [(_features(x), y) for x, y in instances]
    features = tuple(sorted(set().union(*(r.keys() for r, _ in rows))))
    return DecisionTree(target, _grow(rows, features, 0, params), features)


def predict(tree, fv):
    """(label, confidence); unseen values take the node's fallback leaf."""
    x = _features(fv)
    node = tree.root
    while isinstance(node, Split):
        value = x.get(node.feature)
        node = node.branches.get(value, node.fallback)
    return node.label, node.confidence


def _node_to_json(node):
    dist = [[label, count] for label, count in
            sorted(node.distribution.items(), key=lambda kv: value_key(kv[0]))] \
        if isinstance(node, Leaf) else None
    if isinstance(node, Leaf):
        return {"leaf": dist}
    return {
        "feature": node.feature,
        "branches": [[v, _node_to_json(child)] for v, child in node.branches.items()],
        "fallback": _node_to_json(node.fallback),
    }


def _node_from_json(obj):
    if "leaf" in obj:
        return Leaf({label: count for label, count in obj["leaf"]})
    return Split(obj["feature"],
                 {v: _node_from_json(child) for v, child in obj["branches"]},
                 _node_from_json(obj["fallback"]))


def serialize_tree(tree) -> str:
    doc = {"format": TREE_FORMAT, "version": TREE_VERSION, "target": tree.target,
           "features": list(tree.features), "root": _node_to_json(tree.root)}
    return json.dumps(doc, ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def deserialize_tree(text) -> DecisionTree:
    doc = json.loads(text)
    if doc.get("format") != TREE_FORMAT or doc.get("version") != TREE_VERSION:
        raise ValueError(f"not a {TREE_FORMAT} v{TREE_VERSION} document")
    return DecisionTree(doc["target"], _node_from_json(doc["root"]), tuple(doc["features"]))
