"""Synthetic Maltese-like verb paradigms with known segmentation.

Non-concatenative lemmas are built from a three-consonant root and a vowel
melody, so their stem changes across the paradigm (``gideb``, ``igdeb``,
``igdb-u``, ``gdib-t``).  Concatenative lemmas keep one vowel-final stem
(``eżamina``, ``n-eżamina-w``).  Both take the same person prefixes and
similar suffixes, and either may be negated with ``-x`` or carry object
clitics.
"""
from __future__ import annotations

import random

from morphkit.affixes import Segmentation
from morphkit.lexicon import LabelledEntry

CONSONANTS = "bdfgklmnqrstz"
MELODIES = (("i", "e"), ("a", "a"), ("e", "e"), ("o", "o"), ("i", "i"))
SYLLABLE_CONSONANTS = "bdfklmnprstvz"
SYLLABLE_VOWELS = "aeiou"

IMPERFECTIVE_PREFIX = {"1sg": "n", "2sg": "t", "3sgm": "j", "3sgf": "t",
                       "1pl": "n", "2pl": "t", "3pl": "j"}
CELLS = {  # person, number, gender
    "1sg": ("1", "sg", None), "2sg": ("2", "sg", None), "3sgm": ("3", "sg", "m"),
    "3sgf": ("3", "sg", "f"), "1pl": ("1", "pl", None), "2pl": ("2", "pl", None),
    "3pl": ("3", "pl", None),
}
DIR_CLITICS = {"3sgm": "h", "3sgf": "ha", "3pl": "hom"}
IND_CLITICS = {"1sg": "li", "3sgm": "lu", "3sgf": "lha"}


def _entry(prefixes, stem, suffixes, lemma, cell, tam, origin, polarity="positive",
           dir_obj=None, ind_obj=None):
    seg = Segmentation.build(prefixes, stem, suffixes)
    person, number, gender = CELLS[cell] if cell else (None, None, None)
    return LabelledEntry(seg.surface(), lemma, person, number, gender, dir_obj, ind_obj,
                         tam, polarity, origin, segmentation=seg)


def non_concatenative_paradigm(root, melody=("i", "e")):
    c1, c2, c3 = root
    v1, v2 = melody
    lemma = c1 + v1 + c2 + v2 + c3
    origin = "non_concatenative"
    short = "i" + c1 + c2 + v2 + c3          # imperfective stem, n-igdeb
    closed = "i" + c1 + c2 + c3              # before vowel suffixes, n-igdb-u
    neg = "i" + c1 + c2 + "i" + c3           # n-igdib-x
    perf_cv = c1 + c2 + "i" + c3             # gdib-t
    perf_vc = c1 + v1 + c2 + c3              # gidb-et
    out = []
    for cell, pre in IMPERFECTIVE_PREFIX.items():
        if CELLS[cell][1] == "sg":
            out.append(_entry([pre], short, [], lemma, cell, "imperfective", origin))
            out.append(_entry([pre], neg, ["x"], lemma, cell, "imperfective", origin, "negative"))
        else:
            out.append(_entry([pre], closed, ["u"], lemma, cell, "imperfective", origin))
            out.append(_entry([pre], closed, ["u", "x"], lemma, cell, "imperfective", origin,
                              "negative"))
    perfective = {"1sg": (perf_cv, ["t"]), "2sg": (perf_cv, ["t"]), "3sgm": (lemma, []),
                  "3sgf": (perf_vc, ["et"]), "1pl": (perf_cv, ["na"]),
                  "2pl": (perf_cv, ["tu"]), "3pl": (perf_vc, ["u"])}
    for cell, (stem, suf) in perfective.items():
        out.append(_entry([], stem, suf, lemma, cell, "perfective", origin))
    out.append(_entry([], short, [], lemma, "2sg", "imperative", origin))
    out.append(_entry([], closed, ["u"], lemma, "2pl", "imperative", origin))
    host = c1 + v1 + c2 + "i" + c3
    for obj, clitic in DIR_CLITICS.items():
        out.append(_entry([], host, [clitic], lemma, "3sgm", "perfective", origin,
                          dir_obj=obj))
    for obj, clitic in IND_CLITICS.items():
        out.append(_entry([], host, [clitic], lemma, "3sgm", "perfective", origin,
                          ind_obj=obj))
    out.append(_entry([], host, ["hu", "li"], lemma, "3sgm", "perfective", origin,
                      dir_obj="3sgm", ind_obj="1sg"))
    return out


def concatenative_paradigm(stem):
    """Paradigm of a vowel-final stable stem such as ``eżamina``."""
    lemma, origin = stem, "concatenative"
    out = []
    for cell, pre in IMPERFECTIVE_PREFIX.items():
        suf = [] if CELLS[cell][1] == "sg" else ["w"]
        out.append(_entry([pre], stem, suf, lemma, cell, "imperfective", origin))
        out.append(_entry([pre], stem, suf + ["x"], lemma, cell, "imperfective", origin,
                          "negative"))
    perfective = {"1sg": ["jt"], "2sg": ["jt"], "3sgm": [], "3sgf": ["t"],
                  "1pl": ["jna"], "2pl": ["jtu"], "3pl": ["w"]}
    for cell, suf in perfective.items():
        out.append(_entry([], stem, suf, lemma, cell, "perfective", origin))
    out.append(_entry([], stem, [], lemma, "2sg", "imperative", origin))
    out.append(_entry([], stem, ["w"], lemma, "2pl", "imperative", origin))
    for obj, clitic in DIR_CLITICS.items():
        out.append(_entry([], stem, [clitic], lemma, "3sgm", "perfective", origin, dir_obj=obj))
    for obj, clitic in IND_CLITICS.items():
        out.append(_entry([], stem, [clitic], lemma, "3sgm", "perfective", origin, ind_obj=obj))
    out.append(_entry([], stem, ["hu", "li"], lemma, "3sgm", "perfective", origin,
                      dir_obj="3sgm", ind_obj="1sg"))
    return out


def random_root(rng):
    return tuple(rng.sample(CONSONANTS, 3))


def random_stem(rng):
    n = rng.choice((2, 3))
    syllables = [rng.choice(SYLLABLE_CONSONANTS) + rng.choice(SYLLABLE_VOWELS)
                 for _ in range(n)]
    stem = "".join(syllables)
    if rng.random() < 0.5:
        stem = rng.choice("ei") + stem
    return stem[:-1] + "a"


def generate_lexicon(n_lemmas, nc_fraction=0.5, seed=0, exclude=()):
    """Entries for ``n_lemmas`` lemmas, ``round(nc_fraction * n)`` of them templatic.

    Lemmas listed in ``exclude`` are skipped so that two generated lexicons
    can be kept lemma-disjoint.
    """
    rng = random.Random(seed)
    n_nc = int(nc_fraction * n_lemmas + 0.5)
    taken = set(exclude)
    entries, lemmas = [], []
    while len(lemmas) < n_lemmas:
        if len(lemmas) < n_nc:
            forms = non_concatenative_paradigm(random_root(rng), rng.choice(MELODIES))
        else:
            forms = concatenative_paradigm(random_stem(rng))
        lemma = forms[0].lemma
        if lemma in taken:
            continue
        taken.add(lemma)
        lemmas.append(lemma)
        entries.extend(forms)
    return entries
