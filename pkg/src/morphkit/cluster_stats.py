"""Size, removal and quality distributions of evaluated clusters by origin.

Percentages are ``round(100 * count / total)`` with halves rounded up.
Removal bins are left-open and right-closed apart from the exact-zero bin,
so 5% falls in ``1-5%`` and 10% in ``5-10%``.

The quality/removal correlation pairs the ordinal quality (very bad = 1 ...
very good = 5) with the *negated* removal percentage, so that "fewer words
removed, better rating" comes out positive.
"""
from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass, field
from fractions import Fraction

NC, CON = "NC", "CON"
GROUPS = (NC, CON)

SIZE_BINS = ("<10", "10-19", "20-29", "30-39", ">=40")
REMOVAL_BINS = ("0%", "1-5%", "5-10%", "10-20%", "20-30%", "30-40%",
                "40-60%", "60-80%", ">80%")
# right edges (inclusive) of the non-zero removal bins, in percent
_REMOVAL_EDGES = (5, 10, 20, 30, 40, 60, 80, 100)
QUALITY_BINS = ("very_good", "good", "medium", "bad", "very_bad")
QUALITY_SCORE = {"very_bad": 1, "bad": 2, "medium": 3, "good": 4, "very_good": 5}

_ORIGIN_ALIASES = {
    "nc": NC, "non_concatenative": NC, "non-concatenative": NC,
    "con": CON, "concatenative": CON,
}


class UndefinedCorrelation(ValueError):
    pass


def origin_group(tag):
    try:
        return _ORIGIN_ALIASES[str(tag).strip().lower()]
    except KeyError:
        raise ValueError(f"unknown origin tag {tag!r}") from None


def percent(count, total):
    if total == 0:
        return 0
    return int(Fraction(100 * count, total) + Fraction(1, 2))


@dataclass
class BinnedTable:
    labels: tuple
    counts: dict = field(default_factory=dict)  # group -> list of counts per bin

    def __post_init__(self):
        for g in GROUPS:
            self.counts.setdefault(g, [0] * len(self.labels))

    def total(self, group):
        return sum(self.counts[group])

    def percentages(self, group):
        t = self.total(group)
        return [percent(c, t) for c in self.counts[group]]

    def rows(self):
        """(label, NC count, NC %, CON count, CON %) per bin."""
        pn, pc = self.percentages(NC), self.percentages(CON)
        return [(lab, self.counts[NC][i], pn[i], self.counts[CON][i], pc[i])
                for i, lab in enumerate(self.labels)]

    def cell(self, label, group):
        i = self.labels.index(label)
        return self.counts[group][i], self.percentages(group)[i]


def size_bin(n):
    if n < 10:
        return 0
    return min(n // 10, 4)


def removal_bin(fraction):
    """Bin index for a removal fraction in [0, 1]."""
    pct = Fraction(fraction) * 100
    if pct == 0:
        return 0
    for i, edge in enumerate(_REMOVAL_EDGES, start=1):
        if pct <= edge:
            return i
    raise ValueError(f"removal fraction {fraction} outside [0, 1]")


def _origins(origin_tags):
    return {cid: origin_group(tag) for cid, tag in origin_tags.items()}


def size_distribution(clusters, origin_tags) -> BinnedTable:
    origins = _origins(origin_tags)
    table = BinnedTable(SIZE_BINS)
    for c in clusters:
        if c.id not in origins:
            raise ValueError(f"cluster {c.id} has no origin tag")
        table.counts[origins[c.id]][size_bin(len(c.members))] += 1
    return table


def removal_fraction(record, clusters_by_id):
    cluster = clusters_by_id[record.cluster_id]
    return Fraction(len(record.removed_words), len(cluster.members))


def _record_origin(record, origins):
    try:
        return origins[record.cluster_id]
    except KeyError:
        raise ValueError(f"cluster {record.cluster_id} has no origin tag") from None


def removal_distribution(records, clusters, origin_tags) -> BinnedTable:
    """Histogram over (cluster, expert) evaluations of the share of words removed."""
    origins = _origins(origin_tags)
    by_id = clusters.by_id()
    table = BinnedTable(REMOVAL_BINS)
    for r in records:
        table.counts[_record_origin(r, origins)][removal_bin(removal_fraction(r, by_id))] += 1
    return table


def quality_distribution(records, origin_tags) -> BinnedTable:
    origins = _origins(origin_tags)
    table = BinnedTable(QUALITY_BINS)
    for r in records:
        table.counts[_record_origin(r, origins)][QUALITY_BINS.index(r.quality)] += 1
    return table


def pearson(xs, ys) -> float:
    """Product-moment correlation coefficient."""
    xs, ys = [float(x) for x in xs], [float(y) for y in ys]
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("pearson needs two equal-length series of at least 2 values")
    if len(set(xs)) == 1 or len(set(ys)) == 1:
        raise UndefinedCorrelation("correlation is undefined for a constant series")
    r = statistics.correlation(xs, ys)
    return max(-1.0, min(1.0, r))


def quality_removal_correlation(records, clusters, origin_tags, origin) -> float:
    """Pearson r of quality score against negated removal percentage for one group."""
    origins = _origins(origin_tags)
    group = origin_group(origin)
    by_id = clusters.by_id()
    qs, rs = [], []
    for r in records:
        if _record_origin(r, origins) == group:
            qs.append(QUALITY_SCORE[r.quality])
            rs.append(-100 * float(removal_fraction(r, by_id)))
    return pearson(qs, rs)


@dataclass
class AnalysisReport:
    size_table: BinnedTable
    removal_table: BinnedTable
    quality_table: BinnedTable
    correlations: dict
    evaluations_by_all: dict = field(default_factory=dict)
    evaluations_by_one: dict = field(default_factory=dict)


def analyze(clusters, records, origin_tags) -> AnalysisReport:
    origins = _origins(origin_tags)
    correlations = {}
    for g in GROUPS:
        try:
            correlations[g] = quality_removal_correlation(records, clusters, origins, g)
        except (UndefinedCorrelation, ValueError):
            correlations[g] = None
    experts = {}
    for r in records:
        experts.setdefault(r.cluster_id, set()).add(r.expert_id)
    n_experts = max((len(e) for e in experts.values()), default=0)
    by_all = {g: 0 for g in GROUPS}
    by_one = {g: 0 for g in GROUPS}
    for cid, e in experts.items():
        if len(e) == 1:
            by_one[origins[cid]] += 1
        elif len(e) == n_experts:
            by_all[origins[cid]] += 1
    return AnalysisReport(
        size_distribution(clusters, origins),
        removal_distribution(records, clusters, origins),
        quality_distribution(records, origins),
        correlations, by_all, by_one,
    )


_SECTIONS = (("size", "size_table"), ("removed", "removal_table"), ("quality", "quality_table"))


def report_to_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "bin", "NC_count", "NC_pct", "CON_count", "CON_pct"])
    for section, attr in _SECTIONS:
        table = getattr(report, attr)
        for row in table.rows():
            w.writerow([section, *row])
        w.writerow([section, "total", table.total(NC), 100 if table.total(NC) else 0,
                    table.total(CON), 100 if table.total(CON) else 0])
    for g in GROUPS:
        r = report.correlations.get(g)
        w.writerow(["correlation", g, "" if r is None else f"{r:.3f}", "", "", ""])
    return buf.getvalue()


def render_text(report) -> str:
    """Aligned plain-text tables, one column per origin group."""
    titles = {"size": "Size", "removed": "Removed", "quality": "Quality"}
    lines = ["# removal bins are left-open, right-closed (exact 0% separate);",
             "# correlation = Pearson(quality 1-5, -removal%)", ""]
    for section, attr in _SECTIONS:
        table = getattr(report, attr)
        lines.append(f"{titles[section]:<12}{'NC':>12}{'CON':>12}")
        for label, nc, nc_pct, con, con_pct in table.rows():
            lines.append(f"{label:<12}{f'{nc_pct}% ({nc})':>12}{f'{con_pct}% ({con})':>12}")
        lines.append(f"{'Total':<12}{table.total(NC):>12}{table.total(CON):>12}")
        if section == "size" and (report.evaluations_by_all or report.evaluations_by_one):
            lines.append(f"{'All experts':<12}{report.evaluations_by_all.get(NC, 0):>12}"
                         f"{report.evaluations_by_all.get(CON, 0):>12}")
            lines.append(f"{'One expert':<12}{report.evaluations_by_one.get(NC, 0):>12}"
                         f"{report.evaluations_by_one.get(CON, 0):>12}")
        lines.append("")
    corr = [("n/a" if report.correlations.get(g) is None else f"{report.correlations[g]:.3f}")
            for g in GROUPS]
    lines.append(f"{'Correlation':<12}{corr[0]:>12}{corr[1]:>12}")
    return "\n".join(lines) + "\n"
