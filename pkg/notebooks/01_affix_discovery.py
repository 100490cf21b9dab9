"""
Finding affixes in a handful of verb forms
==========================================

Twelve imperfective forms of two verbs, one with a stable stem (eżamina)
and one whose stem shifts (gideb).
"""

from morphkit import WordEntry, build_inventory, build_trie, transitional_probability
from morphkit.affixes import AffixInventory, segment

forms = ("neżamina teżamina jeżamina neżaminaw teżaminaw jeżaminaw "
         "nigdeb tigdeb jigdeb nigdbu tigdbu jigdbu").split()
words = [WordEntry(f) for f in forms]

# after the first letter the forward trie branches on every stem letter ...
trie = build_trie(words)
for first in "ntj":
    node = trie.node(first)
    print(first, {c: round(transitional_probability(trie, first, c), 2) for c in node.children})

# ... and the scorer turns that into ranked candidates
inventory = build_inventory(words)
for kind in ("prefix", "suffix"):
    print(kind)
    for c in getattr(inventory, kind + "es")[:6]:
        print(f"  {c.text:<8} score {c.score:6.2f}  support {c.support}")

# segmentation strips suffixes first, then up to two prefixes, longest match first
hand = AffixInventory.from_affixes(["n", "t", "j"], ["w", "u", "hu", "li"])
for w in ("neżaminaw", "jigdbu", "qatilhuli", "ftit"):
    s = segment(w, hand)
    print(w, "->", "-".join(list(s.prefixes) + [s.stem] + list(s.suffixes)),
          "composite:", s.composite_suffix)
