import pytest
from fractions import Fraction

from morphkit.affixes import AffixInventory, Segmentation
from morphkit.cascade import DEFAULT_ORDER, Cascade
from morphkit.evaluation import (CSV_COLUMNS, evaluate, evaluate_split,
                                 export_report, read_report, render_bars, report_to_csv)
from morphkit.lexicon import LabelledEntry


class Constant:
    def __init__(self, value):
        self.value = value

    def predict(self, features):
        return self.value, 1.0


class ByStem:
    """Right only for stems it has been told about."""

    def __init__(self, answers, default=None):
        self.answers, self.default = answers, default

    def predict(self, features):
        return self.answers.get(features["stem"], self.default), 1.0


def constant_cascade(**values):
    order = tuple(p for p in DEFAULT_ORDER if p in values) or DEFAULT_ORDER
    return Cascade(order, {p: Constant(values.get(p)) for p in order}, AffixInventory())


def entry(surface, origin="concatenative", **labels):
    return LabelledEntry(surface, origin=origin,
                         segmentation=Segmentation.build([], surface, []), **labels)


def test_all_correct():
    entries = [entry(f"w{i}") for i in range(5)]
    cascade = Cascade(DEFAULT_ORDER, {p: Constant(None) for p in DEFAULT_ORDER}, None)
    assert evaluate(cascade, entries) == dict.fromkeys(DEFAULT_ORDER, 1.0)


def test_constant_null_base_rate():
    entries = [entry(f"w{i}", ind_obj="1sg" if i < 3 else None) for i in range(10)]
    acc = evaluate(constant_cascade(ind_obj=None), entries)
    assert acc["ind_obj"] == 0.7


def test_one_miss_in_ten():
    entries = [entry(f"w{i}", number="sg" if i else "pl") for i in range(10)]
    assert evaluate(constant_cascade(number="sg"), entries)["number"] == 0.9


def test_empty_set():
    with pytest.raises(ValueError):
        evaluate(constant_cascade(number="sg"), [])


def gold_fixture(n_nc=76, n_con=18):
    nc = [entry(f"nc{i}", "non_concatenative", number="sg" if i % 4 else "pl")
          for i in range(n_nc)]
    con = [entry(f"con{i}", "concatenative", number="pl" if i % 3 else "sg")
           for i in range(n_con)]
    return nc + con


def test_group_counts():
    report = evaluate_split(constant_cascade(number="sg"), gold_fixture())
    assert (report.counts["gold_non_concatenative"], report.counts["gold_concatenative"]) == (76, 18)
    assert report.counts["gold"] == 94 and report.traditional is None


def test_weighted_mean_identity():
    report = evaluate_split(constant_cascade(number="sg", person=None), gold_fixture())
    n_con, n_nc = report.counts["gold_concatenative"], report.counts["gold_non_concatenative"]
    for p in report.order:
        con = Fraction(report.correct["gold_concatenative"][p], n_con)
        nc = Fraction(report.correct["gold_non_concatenative"][p], n_nc)
        overall = Fraction(report.correct["gold"][p], n_con + n_nc)
        assert overall == (n_con * con + n_nc * nc) / (n_con + n_nc)
        assert report.gold[p] == float(overall)


def test_correct_only_on_nc():
    gold = gold_fixture(4, 3)
    answers = {e.surface: e.number for e in gold if e.origin == "non_concatenative"}
    cascade = Cascade(("number",), {"number": ByStem(answers, "du")}, AffixInventory())
    report = evaluate_split(cascade, gold)
    assert report.gold_concatenative["number"] == 0.0
    assert report.gold_non_concatenative["number"] == 1.0


def test_unknown_origin_lists_surfaces():
    gold = gold_fixture(2, 2) + [entry("ftit", "unknown"), entry("kiteb", "unknown")]
    with pytest.raises(ValueError, match="ftit, kiteb"):
        evaluate_split(constant_cascade(number="sg"), gold)


def test_gold_uses_automatic_segmentation():
    # known segmentation would give stem "igdb"; the empty inventory leaves the whole word
    e = LabelledEntry("nigdbu", number="pl", origin="non_concatenative",
                      segmentation=Segmentation.build(["n"], "igdb", ["u"]))
    cascade = Cascade(("number",), {"number": ByStem({"igdb": "pl"}, "sg")}, AffixInventory())
    report = evaluate_split(cascade, [e], traditional_set=[e])
    assert report.traditional["number"] == 1.0 and report.gold["number"] == 0.0


def test_csv_schema_and_round_trip(tmp_path):
    gold = gold_fixture(5, 5)
    report = evaluate_split(constant_cascade(**dict.fromkeys(DEFAULT_ORDER, "sg")), gold,
                            traditional_set=gold[:4])
    text = report_to_csv(report)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS) and len(lines) == 8
    assert [l.split(",")[0] for l in lines[1:]] == list(DEFAULT_ORDER)
    export_report(report, tmp_path / "r.csv")
    back = read_report(tmp_path / "r.csv")
    for attr in ("traditional", "gold", "gold_concatenative", "gold_non_concatenative"):
        assert getattr(back, attr) == getattr(report, attr)
    assert (tmp_path / "r.csv").read_text() == text


def test_missing_column_is_blank(tmp_path):
    report = evaluate_split(constant_cascade(number="sg"), gold_fixture(3, 3))
    line = report_to_csv(report).splitlines()[1]
    assert line.startswith("number,,") and ",," in line
    export_report(report, tmp_path / "r.csv")
    assert read_report(tmp_path / "r.csv").traditional is None


def test_render_bars():
    report = evaluate_split(constant_cascade(number="sg"), gold_fixture(3, 3))
    text = render_bars(report)
    assert text.splitlines()[0] == "number" and "non-concat." in text
