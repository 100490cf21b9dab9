"""Command-line front end: ``morphkit <subcommand> ...``.

Settings come from a flat ``key = value`` file (``--config`` or the
``MORPHKIT_CONFIG`` environment variable); flags given on the command line
win.  Every subcommand reads and validates all of its inputs before it
writes anything.
"""
from __future__ import annotations

import argparse
import io
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from morphkit import cluster_stats
from morphkit.affixes import (AffixParams, build_inventory, read_inventory, read_segmentations,
                              segment, write_inventory, write_segmentations)
from morphkit.cascade import (DEFAULT_ORDER, SequenceSearchParams, classify, load_cascade,
                              save_cascade, search_best_order, train_cascade)
from morphkit.classify import TrainParams
from morphkit.clustering import (SimilarityParams, build_context_vectors, initial_clusters,
                                 merge_clusters, read_clusters, write_clusters)
from morphkit.evaluation import evaluate_split, report_to_csv
from morphkit.lexicon import (LexiconError, WordEntry, count_tokens, load_cluster_evals,
                              load_labelled_lexicon, split_dataset, tokenize)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISSING_FILE = 3
EXIT_CONFIG = 4
EXIT_DATA = 5

LABEL_FIELDS = ("person", "number", "gender", "dir_obj", "ind_obj", "tam", "polarity")


class ConfigError(ValueError):
    pass


class UsageError(ValueError):
    pass


@dataclass
class Config:
    max_affix_len: int = 5
    min_count: int = 2
    branch_min: int = 2
    min_stem_len: int = 2
    max_prefixes: int = 2
    window: int = 3
    ortho_threshold: float = 0.6
    sem_threshold: float = 0.2
    max_merge_rounds: int = 2
    min_leaf: int = 2
    max_depth: Optional[int] = None
    search_strategy: str = "greedy"
    beam: int = 3
    seed: int = 0
    heldout_fraction: float = 0.1
    corpus: Optional[str] = None
    lexicon: Optional[str] = None
    test: Optional[str] = None
    gold: Optional[str] = None

    def affix_params(self):
        return AffixParams(self.max_affix_len, self.min_count, self.branch_min,
                           self.min_stem_len, self.max_prefixes)

    def similarity_params(self):
        return SimilarityParams(self.ortho_threshold, self.sem_threshold, self.window,
                                self.max_merge_rounds)

    def train_params(self):
        return TrainParams(self.min_leaf, self.max_depth)

    def search_params(self):
        return SequenceSearchParams(self.search_strategy, self.beam)

    def validate(self):
        try:
            self.affix_params()
            self.similarity_params()
            self.train_params()
            self.search_params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not 0 < self.heldout_fraction < 0.5:
            raise ConfigError("heldout_fraction must lie in (0, 0.5)")
        return self


def _coerce(name, raw):
    f = {f.name: f for f in fields(Config)}[name]
    default = f.default
    if name == "max_depth":
        return None if raw.lower() in ("", "none", "unlimited") else int(raw)
    if name in ("corpus", "lexicon", "test", "gold"):
        return raw
    return type(default)(raw)


def parse_config(text, source="config"):
    """Parse ``key = value`` lines; ``#`` starts a comment.  Unknown keys are errors."""
    known = {f.name for f in fields(Config)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _coerce(key, raw)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: bad value {raw!r} for {key}") from None
    return values


def load_config(path=None, overrides=None):
    values = {}
    path = path or os.environ.get("MORPHKIT_CONFIG")
    if path:
        p = Path(path)
        if not p.is_file():
            raise FileNotFoundError(f"config file not found: {path}")
        values.update(parse_config(p.read_text(encoding="utf-8"), str(path)))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return Config(**values).validate()


def _read(path):
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    return p.read_bytes()


def _text(path):
    data = _read(path)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise LexiconError(f"{path}: invalid UTF-8 at byte offset {exc.start}") from None


def _require(value, flag):
    if not value:
        raise UsageError(f"missing required {flag}")
    return value


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _entries_from_corpus(path):
    return count_tokens(tokenize(_read(path)))


def cmd_affixes(args, cfg):
    words = _entries_from_corpus(_require(args.corpus or cfg.corpus, "--corpus"))
    inventory = build_inventory(words, cfg.affix_params())
    buf = io.StringIO()
    write_inventory(inventory, buf)
    _write(args.out, buf.getvalue())


def cmd_segment(args, cfg):
    words = _entries_from_corpus(_require(args.corpus or cfg.corpus, "--corpus"))
    inventory = read_inventory(_text(args.affixes), cfg.affix_params())
    pairs = [(w.surface, segment(w.surface, inventory))
             for w in sorted(words, key=lambda w: w.surface)]
    buf = io.StringIO()
    write_segmentations(pairs, buf)
    _write(args.out, buf.getvalue())


def cmd_cluster(args, cfg):
    pairs = read_segmentations(_text(args.segments))
    tokens = tokenize(_read(_require(args.corpus or cfg.corpus, "--corpus")))
    params = cfg.similarity_params()
    clusters = initial_clusters(pairs)
    vectors = build_context_vectors(tokens, [s for s, _ in pairs], params.window)
    merged = merge_clusters(clusters, vectors, params)
    buf = io.StringIO()
    write_clusters(merged, buf)
    _write(args.out, buf.getvalue())


def read_origins(text):
    """CSV ``cluster_id,origin`` with a header row."""
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or [c.strip() for c in lines[0].split(",")] != ["cluster_id", "origin"]:
        raise LexiconError("origins header must be: cluster_id,origin", 1)
    origins = {}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise LexiconError("expected cluster_id,origin", lineno)
        try:
            origins[cells[0]] = cluster_stats.origin_group(cells[1])
        except ValueError as exc:
            raise LexiconError(str(exc), lineno) from None
    return origins


def cmd_analyze_clusters(args, cfg):
    clusters = read_clusters(_text(args.clusters))
    records = load_cluster_evals(_read(args.evals), clusters)
    origins = read_origins(_text(args.origins))
    report = cluster_stats.analyze(clusters, records, origins)
    _write(args.out, cluster_stats.report_to_csv(report))
    sys.stdout.write(cluster_stats.render_text(report))


def _lexicon(path):
    return load_labelled_lexicon(_read(path))


def cmd_train(args, cfg):
    entries = _lexicon(_require(args.lexicon or cfg.lexicon, "--lexicon"))
    if not entries:
        raise LexiconError("lexicon has no entries")
    if args.order and args.search:
        raise UsageError("--order and --search are mutually exclusive")
    surfaces = sorted({e.surface for e in entries})
    inventory = build_inventory([WordEntry(s) for s in surfaces], cfg.affix_params())
    if args.search:
        h = cfg.heldout_fraction
        split = split_dataset(entries, (1 - 2 * h, h, h), cfg.seed)
        # the test part plays no role in the search, so it stays with training
        order, _ = search_best_order(split.train + split.test, split.heldout,
                                     cfg.search_params(), inventory,
                                     train_params=cfg.train_params())
    else:
        order = tuple(p.strip() for p in args.order.split(",")) if args.order else DEFAULT_ORDER
    cascade = train_cascade(entries, order, cfg.train_params(), inventory)
    save_cascade(cascade, args.out)


def _words(args):
    words = list(args.word or [])
    if args.words:
        words += _text(args.words).split()
    if not words:
        raise UsageError("no words given (use --words FILE or positional words)")
    return words


def format_label(word, label):
    values = label.as_dict()
    cells = [f"{p}={values[p]}" for p in LABEL_FIELDS if values[p] is not None]
    return " ".join([word] + cells)


def cmd_label(args, cfg):
    cascade = _load_bundle(args.cascade)
    words = _words(args)
    out = [format_label(w, classify(cascade, w)) for w in words]
    sys.stdout.write("\n".join(out) + "\n")


def _load_bundle(path):
    if not (Path(path) / "manifest.json").is_file():
        raise FileNotFoundError(f"cascade bundle not found: {path}")
    try:
        return load_cascade(path)
    except (KeyError, ValueError) as exc:
        raise LexiconError(f"{path}: bad cascade bundle ({exc})") from None


def cmd_evaluate(args, cfg):
    cascade = _load_bundle(args.cascade)
    test_path, gold_path = args.test or cfg.test, args.gold or cfg.gold
    if not test_path and not gold_path:
        raise UsageError("evaluate needs --test and/or --gold")
    test = _lexicon(test_path) if test_path else None
    gold = _lexicon(gold_path) if gold_path else None
    report = evaluate_split(cascade, gold, test, metadata={"seed": cfg.seed})
    _write(args.out, report_to_csv(report))


def build_parser():
    parser = argparse.ArgumentParser(prog="morphkit", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key = value settings file")
    parser.add_argument("--seed", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        for field_name, typ in (("max_affix_len", int), ("min_count", int), ("branch_min", int),
                                ("min_stem_len", int), ("max_prefixes", int)):
            if name in ("affixes", "segment", "train"):
                p.add_argument("--" + field_name.replace("_", "-"), dest=field_name, type=typ)
        return p

    p = add("affixes", cmd_affixes, "discover an affix inventory from a corpus")
    p.add_argument("--corpus")
    p.add_argument("--out", required=True)

    p = add("segment", cmd_segment, "segment every corpus word with an inventory")
    p.add_argument("--corpus")
    p.add_argument("--affixes", required=True)
    p.add_argument("--out", required=True)

    p = add("cluster", cmd_cluster, "stem clusters plus similarity merging")
    p.add_argument("--segments", required=True)
    p.add_argument("--corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--window", type=int)
    p.add_argument("--ortho-threshold", dest="ortho_threshold", type=float)
    p.add_argument("--sem-threshold", dest="sem_threshold", type=float)
    p.add_argument("--max-merge-rounds", dest="max_merge_rounds", type=int)

    p = add("analyze-clusters", cmd_analyze_clusters, "size/removal/quality tables")
    p.add_argument("--clusters", required=True)
    p.add_argument("--evals", required=True)
    p.add_argument("--origins", required=True)
    p.add_argument("--out", required=True)

    p = add("train", cmd_train, "train a cascade bundle from a labelled lexicon")
    p.add_argument("--lexicon")
    p.add_argument("--order", help="comma-separated property order")
    p.add_argument("--search", action="store_true", help="search the order on held-out data")
    p.add_argument("--strategy", dest="search_strategy", choices=("exhaustive", "greedy"))
    p.add_argument("--beam", type=int)
    p.add_argument("--min-leaf", dest="min_leaf", type=int)
    p.add_argument("--out", required=True)

    p = add("label", cmd_label, "label words with a trained cascade")
    p.add_argument("--cascade", required=True)
    p.add_argument("--words", help="file of whitespace-separated words")
    p.add_argument("word", nargs="*")

    p = add("evaluate", cmd_evaluate, "per-property accuracy report")
    p.add_argument("--cascade", required=True)
    p.add_argument("--test")
    p.add_argument("--gold")
    p.add_argument("--out", required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {f.name: getattr(args, f.name, None) for f in fields(Config)
                 if f.name not in ("corpus", "lexicon", "test", "gold")}
    try:
        cfg = load_config(args.config, overrides)
        args.func(args, cfg)
    except FileNotFoundError as exc:
        return _fail(exc, EXIT_MISSING_FILE)
    except ConfigError as exc:
        return _fail(exc, EXIT_CONFIG)
    except UsageError as exc:
        return _fail(exc, EXIT_USAGE)
    except (LexiconError, ValueError) as exc:
        return _fail(exc, EXIT_DATA)
    return EXIT_OK


def _fail(exc, code):
    msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
    print(f"morphkit: error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
