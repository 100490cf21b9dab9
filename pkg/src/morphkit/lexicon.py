"""Corpus, labelled-lexicon and cluster-evaluation readers, plus dataset splitting.

File formats
------------
Corpus
    Plain UTF-8 text.
Labelled lexicon
    UTF-8 TSV with header ``surface lemma person number gender dir_obj
    ind_obj tam polarity origin``; an optional trailing ``segmentation``
    column holds a known analysis as ``prefixes|stem|suffixes`` with
    ``+``-joined affixes.  Blank cells mean "not applicable".
Cluster evaluations
    CSV with header ``cluster_id,expert_id,quality,removed_words``;
    removed words are separated by ``;``.
"""
from __future__ import annotations

import csv
import io
import random
import unicodedata
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from morphkit.affixes import Segmentation

LEXICON_COLUMNS = ("surface", "lemma", "person", "number", "gender",
                   "dir_obj", "ind_obj", "tam", "polarity", "origin")
SEGMENTATION_COLUMN = "segmentation"

PRONOUN_LABELS = frozenset(
    ["1sg", "2sg", "3sgm", "3sgf", "1pl", "2pl", "3pl"])

# allowed values for every nullable property column
PROPERTY_VALUES = {
    "person": frozenset(["1", "2", "3"]),
    "number": frozenset(["sg", "pl"]),
    "gender": frozenset(["m", "f"]),
    "dir_obj": PRONOUN_LABELS,
    "ind_obj": PRONOUN_LABELS,
    "tam": frozenset(["perfective", "imperfective", "imperative"]),
    "polarity": frozenset(["positive", "negative"]),
}
ORIGINS = ("concatenative", "non_concatenative", "unknown")
QUALITY_LEVELS = ("very_bad", "bad", "medium", "good", "very_good")


class LexiconError(ValueError):
    """Malformed input data; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CorpusDecodeError(LexiconError):
    def __init__(self, offset, reason):
        super().__init__(f"invalid UTF-8 at byte offset {offset}: {reason}")
        self.offset = offset


@dataclass(frozen=True)
class WordEntry:
    surface: str
    frequency: int = 1

    def __post_init__(self):
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise ValueError(f"bad surface form {self.surface!r}")
        if self.frequency < 1:
            raise ValueError(f"frequency must be >= 1, got {self.frequency}")


@dataclass(frozen=True)
class LabelledEntry:
    surface: str
    lemma: Optional[str] = None
    person: Optional[str] = None
    number: Optional[str] = None
    gender: Optional[str] = None
    dir_obj: Optional[str] = None
    ind_obj: Optional[str] = None
    tam: Optional[str] = None
    polarity: Optional[str] = None
    origin: str = "unknown"
    segmentation: Optional[Segmentation] = field(default=None, compare=False)

    def __post_init__(self):
        for prop, allowed in PROPERTY_VALUES.items():
            value = getattr(self, prop)
            if value is not None and value not in allowed:
                raise ValueError(f"{prop}={value!r} not one of {sorted(allowed)}")
        if self.origin not in ORIGINS:
            raise ValueError(f"origin={self.origin!r} not one of {ORIGINS}")

    def label(self):
        """Property values as a dict keyed by property name."""
        return {prop: getattr(self, prop) for prop in PROPERTY_VALUES}


@dataclass(frozen=True)
class ClusterEvalRecord:
    cluster_id: str
    expert_id: str
    quality: str
    removed_words: frozenset = frozenset()

    def __post_init__(self):
        if self.quality not in QUALITY_LEVELS:
            raise ValueError(f"quality={self.quality!r} not one of {QUALITY_LEVELS}")


@dataclass
class DatasetSplit:
    train: list
    heldout: list
    test: list
    seed: int


def _as_text(stream):
    """Read a str, bytes, text stream or binary stream into a str."""
    data = stream if isinstance(stream, (str, bytes, bytearray)) else stream.read()
    if isinstance(data, str):
        return data
    try:
        return bytes(data).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusDecodeError(exc.start, exc.reason) from None


def _is_edge_punct(ch):
    return unicodedata.category(ch)[0] in "PS"


def normalize_token(token):
    """NFC, lowercase, strip punctuation at both edges; may return ''."""
    token = unicodedata.normalize("NFC", token).lower()
    start, end = 0, len(token)
    while start < end and _is_edge_punct(token[start]):
        start += 1
    while end > start and _is_edge_punct(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(text):
    """Running tokens of ``text`` in order, normalised as in :func:`load_corpus`."""
    text = _as_text(text)
    tokens = []
    for raw in text.split():
        tok = normalize_token(raw)
        if tok:
            tokens.append(tok)
    return tokens


def count_tokens(tokens: Iterable[str]) -> list[WordEntry]:
    counts = Counter(tokens)
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [WordEntry(w, c) for w, c in ordered]


def load_corpus(text_stream) -> list[WordEntry]:
    """Distinct tokens with frequencies, most frequent first (ties by form)."""
    return count_tokens(tokenize(text_stream))


def render_corpus(entries: Sequence[WordEntry]) -> str:
    """Inverse of :func:`load_corpus` up to token order."""
    return "\n".join(" ".join([e.surface] * e.frequency) for e in entries)


def parse_segmentation(cell, surface):
    prefixes, stem, suffixes = cell.split("|")
    seg = Segmentation.build(
        [p for p in prefixes.split("+") if p], stem,
        [s for s in suffixes.split("+") if s])
    if seg.surface() != surface:
        raise ValueError(f"segmentation {cell!r} does not spell {surface!r}")
    return seg


def format_segmentation(seg):
    return "|".join(["+".join(seg.prefixes), seg.stem, "+".join(seg.suffixes)])


def load_labelled_lexicon(tsv_stream) -> list[LabelledEntry]:
    """Parse a labelled lexicon TSV.

    Duplicate ``(surface, label)`` rows are dropped and reported with a single
    :class:`UserWarning` carrying the count.
    """
    lines = _as_text(tsv_stream).splitlines()
    if not lines:
        raise LexiconError("empty lexicon: header row missing", line=1)
    header = tuple(c.strip() for c in lines[0].split("\t"))
    with_seg = header == LEXICON_COLUMNS + (SEGMENTATION_COLUMN,)
    if header != LEXICON_COLUMNS and not with_seg:
        raise LexiconError(
            f"header {list(header)} does not match {list(LEXICON_COLUMNS)}", line=1)

    entries, seen, duplicates = [], set(), 0
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = [c.strip() for c in line.split("\t")]
        if len(cells) < len(header):
            cells += [""] * (len(header) - len(cells))
        if len(cells) > len(header):
            raise LexiconError(f"expected {len(header)} cells, got {len(cells)}", lineno)
        row = dict(zip(header, cells))
        surface = unicodedata.normalize("NFC", row["surface"])
        if not surface:
            raise LexiconError("blank surface form", lineno)
        kwargs = {prop: row[prop] or None for prop in PROPERTY_VALUES}
        try:
            seg = None
            if with_seg and row[SEGMENTATION_COLUMN]:
                seg = parse_segmentation(row[SEGMENTATION_COLUMN], surface)
            entry = LabelledEntry(surface=surface, lemma=row["lemma"] or None,
                                  origin=row["origin"] or "unknown",
                                  segmentation=seg, **kwargs)
        except ValueError as exc:
            raise LexiconError(str(exc), lineno) from None
        key = (entry.surface, tuple(sorted(entry.label().items())))
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        entries.append(entry)
    if duplicates:
        warnings.warn(f"{duplicates} duplicate (surface, label) rows dropped")
    return entries


def write_labelled_lexicon(entries, stream):
    with_seg = any(e.segmentation is not None for e in entries)
    header = LEXICON_COLUMNS + ((SEGMENTATION_COLUMN,) if with_seg else ())
    stream.write("\t".join(header) + "\n")
    for e in entries:
        cells = [e.surface, e.lemma or ""]
        cells += [getattr(e, p) or "" for p in PROPERTY_VALUES]
        cells.append(e.origin)
        if with_seg:
            cells.append(format_segmentation(e.segmentation) if e.segmentation else "")
        stream.write("\t".join(cells) + "\n")


def split_dataset(entries, fractions=(0.8, 0.1, 0.1), seed=0) -> DatasetSplit:
    """Shuffle distinct surface forms and cut them into train/heldout/test.

    Sizes are counted in distinct surfaces; heldout and test get
    ``round(f * n)`` forms and train takes the rest, so a fraction sum below
    one leaves the remainder in train.
    """
    if len(fractions) != 3 or any(f <= 0 for f in fractions):
        raise ValueError(f"need three positive fractions, got {fractions}")
    if sum(fractions) > 1 + 1e-12:
        raise ValueError(f"fractions sum to {sum(fractions)} > 1")

    by_surface = defaultdict(list)
    for e in entries:
        by_surface[e.surface].append(e)
    surfaces = sorted(by_surface)
    random.Random(seed).shuffle(surfaces)

    n = len(surfaces)
    n_heldout = int(fractions[1] * n + 0.5)
    n_test = int(fractions[2] * n + 0.5)
    n_train = n - n_heldout - n_test
    if min(n_train, n_heldout, n_test) < 1:
        raise ValueError(f"{n} distinct forms are too few for fractions {fractions}")

    def collect(forms):
        return [e for s in forms for e in by_surface[s]]

    return DatasetSplit(
        train=collect(surfaces[:n_train]),
        heldout=collect(surfaces[n_train:n_train + n_heldout]),
        test=collect(surfaces[n_train + n_heldout:]),
        seed=seed,
    )


def normalize_quality(token):
    q = token.strip().lower().replace(" ", "_").replace("-", "_")
    if q not in QUALITY_LEVELS:
        raise ValueError(f"unknown quality rating {token!r}")
    return q


def load_cluster_evals(csv_stream, cluster_set) -> list[ClusterEvalRecord]:
    """One record per CSV row, validated against ``cluster_set`` membership."""
    clusters = cluster_set.by_id()
    reader = csv.DictReader(io.StringIO(_as_text(csv_stream)))
    expected = ["cluster_id", "expert_id", "quality", "removed_words"]
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
        raise LexiconError(f"header {reader.fieldnames} does not match {expected}", 1)
    records = []
    for lineno, row in enumerate(reader, start=2):
        cid = row["cluster_id"].strip()
        if cid not in clusters:
            raise LexiconError(f"unknown cluster {cid!r}", lineno)
        removed = frozenset(
            unicodedata.normalize("NFC", w.strip())
            for w in (row["removed_words"] or "").split(";") if w.strip())
        outside = sorted(removed - clusters[cid].members)
        if outside:
            raise LexiconError(
                f"removed word {outside[0]!r} is not a member of cluster {cid!r}", lineno)
        try:
            quality = normalize_quality(row["quality"])
        except ValueError as exc:
            raise LexiconError(str(exc), lineno) from None
        records.append(ClusterEvalRecord(cid, row["expert_id"].strip(), quality, removed))
    return records


def write_cluster_evals(records, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["cluster_id", "expert_id", "quality", "removed_words"])
    for r in records:
        writer.writerow([r.cluster_id, r.expert_id, r.quality,
                         ";".join(sorted(r.removed_words))])
