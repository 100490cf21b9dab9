"""Per-property accuracy under traditional and gold-standard evaluation."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional

from morphkit.cascade import DEFAULT_ORDER, predict_entry

CSV_COLUMNS = ("property", "acc_traditional", "acc_gold", "acc_con", "acc_nc")
_COLUMN_ATTR = {"acc_traditional": "traditional", "acc_gold": "gold",
                "acc_con": "gold_concatenative", "acc_nc": "gold_non_concatenative"}


def correct_counts(cascade, entries, use_known_segmentation=True):
    counts = dict.fromkeys(cascade.order, 0)
    for e in entries:
        pred = predict_entry(cascade, e, use_known_segmentation)
        for p in cascade.order:
            counts[p] += pred[p] == getattr(e, p)
    return counts


def evaluate(cascade, labelled_set, use_known_segmentation=True):
    """Exact-match accuracy per property, with chained predictions."""
    entries = list(labelled_set)
    if not entries:
        raise ValueError("cannot evaluate on an empty set")
    counts = correct_counts(cascade, entries, use_known_segmentation)
    return {p: c / len(entries) for p, c in counts.items()}


@dataclass
class EvalReport:
    order: tuple
    traditional: Optional[dict] = None
    gold: Optional[dict] = None
    gold_concatenative: Optional[dict] = None
    gold_non_concatenative: Optional[dict] = None
    counts: dict = field(default_factory=dict)
    correct: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)


def _accuracy(correct, n):
    return {p: (c / n if n else None) for p, c in correct.items()}


def evaluate_split(cascade, gold_set, traditional_set=None, metadata=None) -> EvalReport:
    """Gold accuracy overall and split by origin, plus optional traditional accuracy.

    Gold words are segmented automatically with the cascade's inventory;
    traditional entries use their known segmentation when they have one.
    """
    report = EvalReport(tuple(cascade.order), metadata=dict(metadata or {}))
    report.metadata.setdefault("order", ",".join(cascade.order))
    if traditional_set is not None:
        trad = list(traditional_set)
        if not trad:
            raise ValueError("traditional set is empty")
        report.correct["traditional"] = correct_counts(cascade, trad, True)
        report.counts["traditional"] = len(trad)
        report.traditional = _accuracy(report.correct["traditional"], len(trad))
    if gold_set is not None:
        gold = list(gold_set)
        unknown = sorted({e.surface for e in gold if e.origin not in
                          ("concatenative", "non_concatenative")})
        if unknown:
            raise ValueError(f"gold entries without origin: {', '.join(unknown)}")
        if not gold:
            raise ValueError("gold set is empty")
        con = [e for e in gold if e.origin == "concatenative"]
        nc = [e for e in gold if e.origin == "non_concatenative"]
        for key, part in (("gold_concatenative", con), ("gold_non_concatenative", nc)):
            report.correct[key] = correct_counts(cascade, part, False)
            report.counts[key] = len(part)
            setattr(report, key, _accuracy(report.correct[key], len(part)))
        report.correct["gold"] = {p: report.correct["gold_concatenative"][p]
                                  + report.correct["gold_non_concatenative"][p]
                                  for p in cascade.order}
        report.counts["gold"] = len(gold)
        report.gold = _accuracy(report.correct["gold"], len(gold))
    return report


def _fmt(value):
    return "" if value is None else repr(float(value))


def report_to_csv(report) -> str:
    rows = [p for p in DEFAULT_ORDER if p in report.order]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p in rows:
        cells = [p]
        for col in CSV_COLUMNS[1:]:
            column = getattr(report, _COLUMN_ATTR[col])
            cells.append(_fmt(column.get(p) if column else None))
        w.writerow(cells)
    return buf.getvalue()


def export_report(report, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(report_to_csv(report))


def read_report(path) -> EvalReport:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"report header must be {','.join(CSV_COLUMNS)}")
        rows = list(reader)
    report = EvalReport(tuple(r["property"] for r in rows))
    for col, attr in _COLUMN_ATTR.items():
        values = {r["property"]: float(r[col]) for r in rows if r[col] != ""}
        setattr(report, attr, values or None)
    return report


def render_bars(report, width=30) -> str:
    """Plain-text bar chart of the gold-vs-traditional and origin comparisons."""
    series = [("traditional", report.traditional), ("gold", report.gold),
              ("concatenative", report.gold_concatenative),
              ("non-concat.", report.gold_non_concatenative)]
    series = [(name, col) for name, col in series if col]
    lines = []
    for p in (p for p in DEFAULT_ORDER if p in report.order):
        lines.append(p)
        for name, col in series:
            acc = col.get(p)
            if acc is None:
                lines.append(f"  {name:<14} {'':<{width}} n/a")
            else:
                lines.append(f"  {name:<14} {'#' * round(acc * width):<{width}} {acc:.3f}")
    return "\n".join(lines) + "\n"
