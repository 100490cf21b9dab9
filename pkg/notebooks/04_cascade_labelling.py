"""
Labelling verb forms with a cascade
===================================

One decision tree per property.  Each tree sees the labels picked by the
trees before it, so order matters.
"""

from morphkit import (WordEntry, build_inventory, classify, data_path, load_labelled_lexicon,
                      train_cascade)
from morphkit.cascade import SequenceSearchParams, search_best_order
from morphkit.lexicon import split_dataset
from morphkit.synthetic import generate_lexicon

lexicon = load_labelled_lexicon(data_path("verbs_fixture.tsv").read_text(encoding="utf-8"))
inventory = build_inventory([WordEntry(s) for s in sorted({e.surface for e in lexicon})])
cascade = train_cascade(lexicon, inventory=inventory)
print("order:", ", ".join(cascade.order))

for w in ("jigdbu", "neżamina", "nigdibx", "qatilhuli"):
    label = classify(cascade, w)
    print(w, {k: v for k, v in label.as_dict().items() if v is not None})

# the tree for person, as nested splits
tree = cascade.classifiers["person"]
for node, path in tree.nodes():
    if hasattr(node, "feature"):
        print("  " * len(path) + "split on", node.feature)

# searching for an order on held-out data (synthetic paradigms)
data = generate_lexicon(16, nc_fraction=0.5, seed=2)
split = split_dataset(data, (0.7, 0.2, 0.1), seed=2)
inv = build_inventory([WordEntry(s) for s in sorted({e.surface for e in split.train})])
order, score = search_best_order(split.train, split.heldout, SequenceSearchParams("greedy", 3),
                                 inv)
print("greedy order:", order, f"held-out mean accuracy {score:.3f}")
