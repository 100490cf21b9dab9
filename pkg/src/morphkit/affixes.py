"""Affix discovery from character tries and surface segmentation.

Suffix candidates are read from a backward trie (reversed words), prefix
candidates from a forward trie.  A candidate split ``stem|affix`` of a word
is scored by the branching on both sides of the boundary:

* stem side: how many distinct continuations (characters or word edge)
  follow the stem in the opposite-direction trie;
* affix side: how many distinct characters can sit where the affix meets
  its parent path in the affix-direction trie.

The split's branching factor is the product of the two, and a candidate's
score sums ``frequency * log2(branching)`` over every word whose split
reaches ``branch_min``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

FORWARD = "forward"
BACKWARD = "backward"
PREFIX = "prefix"
SUFFIX = "suffix"

VOWELS = frozenset("aeiou")
VOWEL_DIGRAPHS = ("ie",)
CONSONANT_DIGRAPHS = ("għ",)

# score precision used for ranking and for the TSV format
SCORE_DIGITS = 9


class TrieNode:
    __slots__ = ("count", "terminal", "children")

    def __init__(self):
        self.count = 0
        self.terminal = 0
        self.children = {}

    @property
    def branching(self):
        """Distinct continuations, counting the word end as one."""
        return len(self.children) + (1 if self.terminal else 0)


class Trie:
    """Frequency-weighted character trie.

    Paths are in reading order: a backward trie stores reversed words, so
    ``trie.node("de")`` there is the node for words ending in ``-ed``.
    """

    def __init__(self, direction=FORWARD):
        if direction not in (FORWARD, BACKWARD):
            raise ValueError(f"unknown direction {direction!r}")
        self.direction = direction
        self.root = TrieNode()

    def orient(self, surface):
        """Surface string -> path in this trie's reading order."""
        return surface[::-1] if self.direction == BACKWARD else surface

    def insert(self, surface, count=1):
        node = self.root
        node.count += count
        for ch in self.orient(surface):
            node = node.children.setdefault(ch, TrieNode())
            node.count += count
        node.terminal += count

    def node(self, path):
        node = self.root
        for ch in path:
            node = node.children.get(ch)
            if node is None:
                return None
        return node

    def words(self):
        """Yield ``(surface, count)`` for every inserted word, sorted by path."""
        stack = [("", self.root)]
        while stack:
            path, node = stack.pop()
            if node.terminal:
                yield self.orient(path), node.terminal
            for ch in sorted(node.children, reverse=True):
                stack.append((path + ch, node.children[ch]))


def build_trie(words, direction=FORWARD) -> Trie:
    trie = Trie(direction)
    for w in words:
        trie.insert(w.surface, w.frequency)
    return trie


def transitional_probability(trie, path, next_char) -> float:
    """P(next_char | path); ``next_char=None`` asks for the word-end probability."""
    node = trie.node(path)
    if node is None:
        raise KeyError(f"path {path!r} not in trie")
    if next_char is None:
        return node.terminal / node.count
    child = node.children.get(next_char)
    return child.count / node.count if child is not None else 0.0


@dataclass(frozen=True)
class AffixCandidate:
    text: str
    kind: str
    score: float
    support: int


@dataclass(frozen=True)
class AffixParams:
    max_affix_len: int = 5
    min_count: int = 2
    branch_min: int = 2
    min_stem_len: int = 2
    max_prefixes: int = 2

    def __post_init__(self):
        if self.max_affix_len < 1 or self.min_count < 1:
            raise ValueError("max_affix_len and min_count must be >= 1")
        if self.branch_min < 2:
            raise ValueError("branch_min must be >= 2")
        if self.min_stem_len < 1 or self.max_prefixes < 0:
            raise ValueError("min_stem_len must be >= 1 and max_prefixes >= 0")


def rank_key(c):
    return (-c.score, -len(c.text), c.text)


@dataclass
class AffixInventory:
    prefixes: list = field(default_factory=list)
    suffixes: list = field(default_factory=list)
    params: AffixParams = field(default_factory=AffixParams)

    def __post_init__(self):
        self.prefixes = sorted(self.prefixes, key=rank_key)
        self.suffixes = sorted(self.suffixes, key=rank_key)
        self._prefix_set = frozenset(c.text for c in self.prefixes)
        self._suffix_set = frozenset(c.text for c in self.suffixes)
        self._max_len = max((len(c.text) for c in self.prefixes + self.suffixes), default=0)

    @classmethod
    def from_affixes(cls, prefixes=(), suffixes=(), params=None):
        """Inventory from bare affix strings, all scored zero."""
        return cls([AffixCandidate(p, PREFIX, 0.0, 0) for p in prefixes],
                   [AffixCandidate(s, SUFFIX, 0.0, 0) for s in suffixes],
                   params or AffixParams())

    def top(self, kind, k):
        return [c.text for c in (self.prefixes if kind == PREFIX else self.suffixes)[:k]]


def score_affixes(trie, kind, max_affix_len=5, min_count=2, branch_min=2):
    """Rank affix candidates of one kind from a trie read in the affix direction."""
    expected = BACKWARD if kind == SUFFIX else FORWARD
    if trie.direction != expected:
        raise ValueError(f"{kind} scoring needs a {expected} trie")
    words = list(trie.words())
    opposite = Trie(FORWARD if expected == BACKWARD else BACKWARD)
    for surface, count in words:
        opposite.insert(surface, count)

    scores, support = {}, {}
    for surface, count in words:
        path = trie.orient(surface)
        # affix is path[:n] in the affix trie, stem is the remainder
        for n in range(1, min(max_affix_len, len(path) - 1) + 1):
            affix_side = trie.node(path[:n - 1]).branching
            stem_side = opposite.node(path[n:][::-1]).branching
            branching = affix_side * stem_side
            if branching < branch_min:
                continue
            text = trie.orient(path[:n])
            scores[text] = scores.get(text, 0.0) + count * math.log2(branching)
            support[text] = support.get(text, 0) + count

    candidates = [AffixCandidate(t, kind, round(scores[t], SCORE_DIGITS), support[t])
                  for t in scores if support[t] >= min_count and scores[t] > 0]
    return sorted(candidates, key=rank_key)


def build_inventory(words, params=None) -> AffixInventory:
    params = params or AffixParams()
    words = list(words)
    if not words:
        raise ValueError("cannot build an affix inventory from no words")
    kw = dict(max_affix_len=params.max_affix_len, min_count=params.min_count,
              branch_min=params.branch_min)
    return AffixInventory(
        prefixes=score_affixes(build_trie(words, FORWARD), PREFIX, **kw),
        suffixes=score_affixes(build_trie(words, BACKWARD), SUFFIX, **kw),
        params=params,
    )


@dataclass(frozen=True)
class Segmentation:
    prefixes: tuple
    stem: str
    suffixes: tuple
    composite_suffix: Optional[str] = None

    @classmethod
    def build(cls, prefixes, stem, suffixes):
        suffixes = tuple(suffixes)
        composite = "".join(suffixes) if len(suffixes) >= 2 else None
        return cls(tuple(prefixes), stem, suffixes, composite)

    def surface(self):
        return "".join(self.prefixes) + self.stem + "".join(self.suffixes)


def segment(word, inventory) -> Segmentation:
    """Greedy longest-match segmentation, suffixes first.

    Any number of suffixes and at most ``max_prefixes`` prefixes are
    stripped, each only while the residue keeps ``min_stem_len`` characters.
    """
    if not word:
        raise ValueError("cannot segment an empty word")
    params = inventory.params
    stem, suffixes, prefixes = word, [], []

    def longest(options, match):
        for n in range(min(inventory._max_len, len(stem) - params.min_stem_len), 0, -1):
            piece = match(n)
            if piece in options:
                return piece
        return None

    while True:
        s = longest(inventory._suffix_set, lambda n: stem[-n:])
        if s is None:
            break
        suffixes.insert(0, s)
        stem = stem[:-len(s)]
    while len(prefixes) < params.max_prefixes:
        p = longest(inventory._prefix_set, lambda n: stem[:n])
        if p is None:
            break
        prefixes.append(p)
        stem = stem[len(p):]
    return Segmentation.build(prefixes, stem, suffixes)


def _cv_units(word):
    i = 0
    while i < len(word):
        pair = word[i:i + 2]
        if pair in VOWEL_DIGRAPHS:
            yield "V", 2
        elif pair in CONSONANT_DIGRAPHS:
            yield "C", 2
        else:
            yield ("V" if word[i] in VOWELS else "C"), 1
        i += 2 if pair in VOWEL_DIGRAPHS or pair in CONSONANT_DIGRAPHS else 1


def cv_pattern(word) -> str:
    """Consonant/vowel skeleton; ``ie`` counts as one V and ``għ`` as one C."""
    if not word:
        raise ValueError("empty word")
    return "".join(unit for unit, _ in _cv_units(word.lower()))


def detect_gemination(word):
    """(flag, positions) for adjacent doubled consonant letters."""
    if not word:
        raise ValueError("empty word")
    w = word.lower()
    positions = [i for i in range(len(w) - 1)
                 if w[i] == w[i + 1] and w[i].isalpha() and w[i] not in VOWELS]
    return bool(positions), positions


def write_inventory(inventory, stream):
    stream.write("kind\ttext\tscore\tsupport\n")
    for c in inventory.prefixes + inventory.suffixes:
        stream.write(f"{c.kind}\t{c.text}\t{c.score:.{SCORE_DIGITS}f}\t{c.support}\n")


def read_inventory(stream, params=None) -> AffixInventory:
    lines = stream.read().splitlines() if hasattr(stream, "read") else stream.splitlines()
    if not lines or lines[0].split("\t") != ["kind", "text", "score", "support"]:
        raise ValueError("affix inventory header must be: kind text score support")
    prefixes, suffixes = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            kind, text, score, support = line.split("\t")
            cand = AffixCandidate(text, kind, float(score), int(support))
        except ValueError:
            raise ValueError(f"line {lineno}: malformed inventory row {line!r}") from None
        if kind not in (PREFIX, SUFFIX) or not text:
            raise ValueError(f"line {lineno}: bad affix kind or text {line!r}")
        (prefixes if kind == PREFIX else suffixes).append(cand)
    return AffixInventory(prefixes, suffixes, params or AffixParams())


def write_segmentations(pairs, stream):
    """``pairs`` is an iterable of (surface, Segmentation)."""
    stream.write("surface\tprefixes\tstem\tsuffixes\n")
    for surface, seg in pairs:
        stream.write(f"{surface}\t{'+'.join(seg.prefixes)}\t{seg.stem}\t{'+'.join(seg.suffixes)}\n")


def read_segmentations(stream):
    lines = stream.read().splitlines() if hasattr(stream, "read") else stream.splitlines()
    if not lines or lines[0].split("\t") != ["surface", "prefixes", "stem", "suffixes"]:
        raise ValueError("segmentation header must be: surface prefixes stem suffixes")
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 4 or not cells[2]:
            raise ValueError(f"line {lineno}: malformed segmentation row {line!r}")
        seg = Segmentation.build([p for p in cells[1].split("+") if p], cells[2],
                                 [s for s in cells[3].split("+") if s])
        if seg.surface() != cells[0]:
            raise ValueError(f"line {lineno}: segmentation does not spell {cells[0]!r}")
        out.append((cells[0], seg))
    return out
