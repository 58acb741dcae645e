import pytest

from besmints.exceptions import BesMintsError
from besmints.harness.crosscheck import (
    CorpusEntry,
    CrosscheckOptions,
    bounded_universe,
    crosscheck,
    curated_corpus,
    load_corpus,
    load_corpus_file,
)
from besmints.harness.generator import random_corpus
from besmints.logic.grammar import parse_formula


class TestCorpus:
    def test_tags_comments_and_blank_lines(self):
        text = "valid: p -> p\n# comment\n\np \\/ q   # trailing\ninvalid: ~~p -> p\n"
        entries = load_corpus(text)
        assert [e.expected for e in entries] == [True, None, False]
        assert entries[1].formula == parse_formula("p \\/ q")

    def test_parse_error_names_the_line(self):
        with pytest.raises(BesMintsError) as excinfo:
            load_corpus("p -> p\np ->\n")
        assert "corpus line 2" in excinfo.value.message

    def test_missing_file(self, tmp_path):
        with pytest.raises(BesMintsError):
            load_corpus_file(tmp_path / "absent.corpus")

    def test_curated(self):
        entries = curated_corpus()
        assert len(entries) == 9
        assert sum(1 for e in entries if e.expected) == 5


class TestCrosscheck:
    def test_curated_corpus_agrees(self):
        records, summary = crosscheck(curated_corpus())
        assert summary.ok
        assert summary.checked == 9
        assert (summary.valid, summary.invalid, summary.refuted) == (5, 4, 4)
        for r in records:
            assert (r.kripke is None) == r.oracle

    def test_single_formula(self):
        records, summary = crosscheck([CorpusEntry(parse_formula("p -> p"))])
        assert summary.checked == 1
        assert records[0].agree
        assert records[0].bounded is None

    def test_wrong_expectation_is_a_mismatch(self):
        _, summary = crosscheck([CorpusEntry(parse_formula("p \\/ ~p"), expected=True)])
        assert not summary.ok
        assert summary.mismatched == [0]

    def test_jobs_keep_input_order(self):
        entries = curated_corpus()
        serial, _ = crosscheck(entries, CrosscheckOptions(jobs=1))
        parallel, _ = crosscheck(entries, CrosscheckOptions(jobs=2))
        assert [r.model_dump() for r in serial] == [r.model_dump() for r in parallel]
        assert [r.index for r in parallel] == list(range(len(entries)))

    def test_random_corpus_agrees(self):
        entries = [CorpusEntry(f) for f in random_corpus(40, seed=42, max_size=6)]
        _, summary = crosscheck(entries)
        assert summary.ok, summary.mismatched

    @pytest.mark.slow
    def test_random_corpus_default_size(self):
        entries = [CorpusEntry(f) for f in random_corpus(200, seed=42, max_size=8, atoms=3)]
        _, summary = crosscheck(entries, CrosscheckOptions(jobs=2))
        assert summary.ok, summary.mismatched

    def test_bounded_findings_do_not_fail_the_run(self):
        records, summary = crosscheck(curated_corpus(), CrosscheckOptions(bounded=True))
        assert summary.ok
        assert summary.bounded_findings is not None
        for r in records:
            assert r.bounded is not None
            if r.bes:
                assert r.bounded


def test_bounded_universe_outnumbers_the_rule_cap():
    universe = bounded_universe(parse_formula("p -> p"), 2)
    assert len(universe) == 3
    assert len(bounded_universe(parse_formula("p /\\ q /\\ r /\\ s"), 2)) == 4
