import pytest

from morphkit import data_path
from morphkit.affixes import AffixInventory
from morphkit.lexicon import WordEntry, load_labelled_lexicon

PARADIGM_FORMS = ("neżamina teżamina jeżamina neżaminaw teżaminaw jeżaminaw "
                "nigdeb tigdeb jigdeb nigdbu tigdbu jigdbu").split()
ENGLISH_FORMS = "walk walked walking talk talked talking".split()
PERFECTIVE_FORMS = "kiteb kitbet ktibt ktibna ktibtu kitbu qatel qatlet qtilt qtilna qtiltu qatlu".split()
MIXED_FORMS = ("unhappy unkind unfair happy kind fair kindly fairly happily "
               "kindness fairness happiness").split()


def words(forms):
    return [WordEntry(f) for f in forms]


@pytest.fixture
def paradigm_entries():
    return load_labelled_lexicon(data_path("paradigm_verbs.tsv").read_text(encoding="utf-8"))


@pytest.fixture
def verbs_entries():
    return load_labelled_lexicon(data_path("verbs_fixture.tsv").read_text(encoding="utf-8"))


@pytest.fixture
def paradigm_inventory():
    """Person prefixes, plural suffixes and two enclitics."""
    return AffixInventory.from_affixes(["n", "t", "j"], ["w", "u", "hu", "li"])


# acceptance verdicts, collected by test_acceptance and echoed at the end of the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
