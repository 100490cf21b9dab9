"""Cascades of per-property classifiers and the search for a good order."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from morphkit.affixes import AffixParams, read_inventory, segment, write_inventory
from morphkit.classify import (TrainParams, deserialize_tree, extract_features,
                               serialize_tree, train)

# default order for Maltese verbs: polarity and clitic objects first, person last
DEFAULT_ORDER = ("polarity", "ind_obj", "dir_obj", "tam", "number", "gender", "person")
PROPERTIES = DEFAULT_ORDER
BUNDLE_FORMAT = "morphkit-cascade"
BUNDLE_VERSION = 1


@dataclass(frozen=True)
class MorphLabel:
    polarity: Optional[str] = None
    ind_obj: Optional[str] = None
    dir_obj: Optional[str] = None
    tam: Optional[str] = None
    number: Optional[str] = None
    gender: Optional[str] = None
    person: Optional[str] = None

    def as_dict(self):
        return {p: getattr(self, p) for p in PROPERTIES}


@dataclass
class Cascade:
    order: tuple
    classifiers: dict
    inventory: object = None
    params: TrainParams = field(default_factory=TrainParams)

    def __post_init__(self):
        self.order = tuple(self.order)
        if set(self.classifiers) != set(self.order):
            raise ValueError("classifiers must cover exactly the cascade order")


@dataclass(frozen=True)
class SequenceSearchParams:
    strategy: str = "greedy"
    beam: int = 3

    def __post_init__(self):
        if self.strategy not in ("exhaustive", "greedy"):
            raise ValueError(f"unknown search strategy {self.strategy!r}")
        if self.beam < 1:
            raise ValueError("beam must be >= 1")


def check_order(order):
    order = tuple(order)
    if not order:
        raise ValueError("cascade order is empty")
    if len(set(order)) != len(order):
        raise ValueError(f"cascade order {order} repeats a property")
    unknown = [p for p in order if p not in PROPERTIES]
    if unknown:
        raise ValueError(f"unknown properties {unknown}")
    return order


def word_features(entry, inventory, use_known_segmentation=True):
    """Basic features for an entry, preferring its known segmentation."""
    seg = entry.segmentation if use_known_segmentation else None
    if seg is None:
        if inventory is None:
            raise ValueError(f"no segmentation or inventory for {entry.surface!r}")
        seg = segment(entry.surface, inventory)
    return extract_features(entry.surface, seg)


def training_instances(entries, order, position, inventory):
    """Rows for the classifier at ``order[position]``; inherited features carry gold labels."""
    prop = order[position]
    rows = []
    for e in entries:
        fv = word_features(e, inventory)
        for prev in order[:position]:
            fv = fv.with_inherited(prev, getattr(e, prev))
        rows.append((fv, getattr(e, prop)))
    return rows


class _TreeCache:
    """Trees depend only on the target and the *set* of earlier properties."""

    def __init__(self, entries, inventory, params):
        self.entries, self.inventory, self.params = entries, inventory, params
        self.base = [word_features(e, inventory) for e in entries]
        self.trees = {}

    def get(self, prop, previous):
        key = (prop, frozenset(previous))
        if key not in self.trees:
            rows = []
            for e, fv in zip(self.entries, self.base):
                for prev in sorted(previous):
                    fv = fv.with_inherited(prev, getattr(e, prev))
                rows.append((fv, getattr(e, prop)))
            self.trees[key] = train(rows, prop, self.params)
        return self.trees[key]


def train_cascade(train_set, order=DEFAULT_ORDER, params=None, inventory=None) -> Cascade:
    order = check_order(order)
    params = params or TrainParams()
    if not train_set:
        raise ValueError("cannot train a cascade on an empty training set")
    cache = _TreeCache(list(train_set), inventory, params)
    classifiers = {p: cache.get(p, order[:i]) for i, p in enumerate(order)}
    return Cascade(order, classifiers, inventory, params)


def _chain(cascade, fv):
    label = {}
    for prop in cascade.order:
        value, _ = cascade.classifiers[prop].predict(fv.as_dict())
        label[prop] = value
        fv = fv.with_inherited(prop, value)
    return label


def classify(cascade, word, inventory=None) -> MorphLabel:
    """Segment, extract features, then run each classifier on the growing feature set."""
    inventory = inventory if inventory is not None else cascade.inventory
    if inventory is None:
        raise ValueError("classify needs an affix inventory")
    fv = extract_features(word, segment(word, inventory))
    return MorphLabel(**_chain(cascade, fv))


def predict_entry(cascade, entry, use_known_segmentation=True):
    """Predicted property values for a labelled entry (chained predictions)."""
    return _chain(cascade, word_features(entry, cascade.inventory, use_known_segmentation))


def order_score(cascade, heldout):
    """Mean over the cascade's properties of held-out exact-match accuracy."""
    correct = dict.fromkeys(cascade.order, 0)
    for e in heldout:
        pred = predict_entry(cascade, e)
        for p in cascade.order:
            correct[p] += pred[p] == getattr(e, p)
    return sum(correct.values()) / (len(cascade.order) * len(heldout))


def search_best_order(train_set, heldout_set, params=None, inventory=None,
                      properties=DEFAULT_ORDER, train_params=None):
    """Best cascade order by held-out mean accuracy; ties go to the smallest order."""
    params = params or SequenceSearchParams()
    properties = check_order(properties)
    if params.strategy == "exhaustive" and len(properties) > 7:
        raise ValueError("exhaustive search is limited to 7 properties")
    overlap = {e.surface for e in train_set} & {e.surface for e in heldout_set}
    if overlap:
        raise ValueError(f"train and heldout share forms, e.g. {sorted(overlap)[0]!r}")
    if not heldout_set:
        raise ValueError("heldout set is empty")
    train_params = train_params or TrainParams()
    cache = _TreeCache(list(train_set), inventory, train_params)
    heldout = list(heldout_set)

    def score(order):
        cascade = Cascade(order, {p: cache.get(p, order[:i]) for i, p in enumerate(order)},
                          inventory, train_params)
        return order_score(cascade, heldout)

    def best_of(scored):
        return min(scored, key=lambda t: (-t[1], t[0]))

    if params.strategy == "exhaustive":
        return best_of([(o, score(o)) for o in itertools.permutations(sorted(properties))])

    beam = [()]
    for _ in properties:
        grown = [(o + (p,), score(o + (p,))) for o in beam for p in sorted(properties)
                 if p not in o]
        grown.sort(key=lambda t: (-t[1], t[0]))
        beam = [o for o, _ in grown[:params.beam]]
    return grown[0]


def save_cascade(cascade, directory):
    """Write a bundle: manifest.json, one tree file per property, inventory.tsv."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    manifest = {"format": BUNDLE_FORMAT, "version": BUNDLE_VERSION,
                "order": list(cascade.order),
                "trees": {p: f"tree_{p}.json" for p in cascade.order},
                "train_params": {"min_leaf": cascade.params.min_leaf,
                                 "max_depth": cascade.params.max_depth}}
    if cascade.inventory is not None:
        p = cascade.inventory.params
        manifest["inventory"] = "inventory.tsv"
        manifest["affix_params"] = {"max_affix_len": p.max_affix_len, "min_count": p.min_count,
                                    "branch_min": p.branch_min, "min_stem_len": p.min_stem_len,
                                    "max_prefixes": p.max_prefixes}
        with open(d / "inventory.tsv", "w", encoding="utf-8", newline="\n") as fh:
            write_inventory(cascade.inventory, fh)
    for prop, name in manifest["trees"].items():
        (d / name).write_text(serialize_tree(cascade.classifiers[prop]), encoding="utf-8")
    (d / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n",
                                     encoding="utf-8")


def load_cascade(directory) -> Cascade:
    d = Path(directory)
    manifest = json.loads((d / "manifest.json").read_text(encoding="utf-8"))
    if manifest.get("format") != BUNDLE_FORMAT or manifest.get("version") != BUNDLE_VERSION:
        raise ValueError(f"{d} is not a {BUNDLE_FORMAT} v{BUNDLE_VERSION} bundle")
    order = check_order(manifest["order"])
    trees = {p: deserialize_tree((d / manifest["trees"][p]).read_text(encoding="utf-8"))
             for p in order}
    inventory = None
    if "inventory" in manifest:
        with open(d / manifest["inventory"], encoding="utf-8") as fh:
            inventory = read_inventory(fh, AffixParams(**manifest["affix_params"]))
    return Cascade(order, trees, inventory, TrainParams(**manifest["train_params"]))
