"""
Held-out accuracy versus a gold standard
========================================

Train on paradigms that are mostly templatic and test in two ways: on
held-out forms with known segmentation, and on a balanced gold set from
unseen lemmas that has to be segmented automatically.
"""

from morphkit import WordEntry, build_inventory, evaluate_split, train_cascade
from morphkit.evaluation import render_bars, report_to_csv
from morphkit.lexicon import split_dataset
from morphkit.synthetic import generate_lexicon

lexicon = generate_lexicon(40, nc_fraction=0.8, seed=0)
split = split_dataset(lexicon, (0.8, 0.1, 0.1), seed=0)
inventory = build_inventory([WordEntry(s) for s in sorted({e.surface for e in split.train})])
cascade = train_cascade(split.train, inventory=inventory)

gold = generate_lexicon(20, nc_fraction=0.5, seed=1000, exclude={e.lemma for e in lexicon})
report = evaluate_split(cascade, gold, split.test, metadata={"seed": 0})
print(report.counts)
print(render_bars(report))
print(report_to_csv(report))
