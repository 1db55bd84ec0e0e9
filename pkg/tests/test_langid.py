from datetime import date

import pytest

from conftest import DATA_DIR, make_corpus, utc
from opforensics.errors import InsufficientDataError
from opforensics.langid import (
    LanguageCall,
    build_profile,
    detect,
    detect_corpus,
    group_calls_by_user,
    language_histogram,
    polyglot_stats,
    read_profile,
    write_histogram_csv,
    write_profile,
)


def training_text(code):
    return (DATA_DIR / "langid_training" / f"{code}.txt").read_text(encoding="utf-8")


class TestBuildProfile:
    def test_english_top_trigrams_contain_the(self):
        profile = build_profile(training_text("en"), "en")
        assert " th" in profile.ranks
        assert "the" in profile.ranks
        assert len(profile) <= 300

    def test_repeated_character_degenerate(self):
        profile = build_profile("a" * 12_000, "aa")
        assert set(profile.ranks) == {"aaa"}

    def test_disjoint_alphabets_disjoint_profiles(self):
        latin = build_profile("the cat sat on the mat " * 600, "xx")
        cyrillic = build_profile("кот сидит на ковре дома " * 600, "yy")
        assert not set(latin.ranks) & set(cyrillic.ranks)

    def test_short_training_text_is_error(self):
        with pytest.raises(InsufficientDataError):
            build_profile("too short", "xx")

    def test_ranks_unique(self, bundled_profiles):
        for profile in bundled_profiles:
            ranks = list(profile.ranks.values())
            assert len(set(ranks)) == len(ranks)
            assert len(profile) <= 300


class TestDetect:
    def test_german_sentence(self, bundled_profiles):
        call = detect(
            "Die Bundeskanzlerin gewinnt die Wahl am Sonntag", bundled_profiles
        )
        assert call.code == "de"

    def test_below_min_length_undecided(self, bundled_profiles):
        call = detect("a", bundled_profiles)
        assert call.code == "und"
        assert call.score == 0.0

    def test_pure_cyrillic_resolves_ru(self, bundled_profiles):
        call = detect(
            "Все голоса на участках пересчитали дважды за ночь", bundled_profiles
        )
        assert call.code == "ru"
        assert call.score == 1.0  # script prior leaves one candidate

    def test_whitespace_invariance(self, bundled_profiles):
        text = "Le gouvernement a annoncé une réforme des transports publics"
        plain = detect(text, bundled_profiles)
        padded = detect(f"   {text}\n\t", bundled_profiles)
        assert plain == padded

    def test_deterministic(self, bundled_profiles):
        text = "The committee will publish the housing report on Friday"
        assert detect(text, bundled_profiles) == detect(text, bundled_profiles)

    def test_self_consistency_on_training_texts(self, bundled_profiles):
        for code in ("en", "de", "fr", "ru"):
            call = detect(training_text(code), bundled_profiles)
            assert call.code == code, code

    def test_score_in_unit_interval(self, bundled_profiles):
        for text in (
            "Les enfants jouent dans le jardin derrière la maison",
            "Der Zug nach Berlin ist heute wieder verspätet",
            "Markets opened lower after the holiday weekend",
        ):
            call = detect(text, bundled_profiles)
            assert 0.0 <= call.score <= 1.0

    def test_und_exactly_when_short_or_low_margin(self, bundled_profiles):
        # the decision rule is a biconditional: und <=> (short text or
        # margin below threshold), given Latin-script input
        samples = (
            "ok",  # too short
            "la la la le le le de de да",  # mixed scripts, ambiguous
            "The committee will publish the housing report on Friday",
            "Das neue Gesetz wird im Herbst im Bundestag beraten",
            "le chat noir",  # 11 letters, below the minimum
        )
        for text in samples:
            call = detect(text, bundled_profiles)
            letters = sum(1 for c in text if c.isalpha())
            if call.code == "und":
                assert letters < 20 or call.score < 0.05, (text, call)
            else:
                assert letters >= 20 and call.score >= 0.05, (text, call)


class TestLanguageHistogram:
    def corpus_and_calls(self, bundled_profiles):
        corpus = make_corpus(
            [
                ("u1", utc(2017, 9, 1, 9), "Die Wahl findet am Sonntag statt und alle reden darüber"),
                ("u1", utc(2017, 9, 1, 12), "Die Kanzlerin spricht heute Abend im Fernsehen zur Lage"),
                ("u2", utc(2017, 9, 1, 15), "Der Zug nach Berlin ist heute wieder einmal verspätet"),
                ("u2", utc(2017, 9, 3, 10), "The polls will open early on Sunday morning everywhere"),
            ]
        )
        return corpus, detect_corpus(corpus, bundled_profiles)

    def test_same_day_posts_single_bin(self, bundled_profiles):
        corpus, calls = self.corpus_and_calls(bundled_profiles)
        series = language_histogram(corpus, calls, "de")
        assert series.dates[0] == date(2017, 9, 1)
        assert series.counts[0] == 3
        assert series.total() == 3

    def test_zero_filled_between_first_and_last_day(self, bundled_profiles):
        corpus, calls = self.corpus_and_calls(bundled_profiles)
        series = language_histogram(corpus, calls, "en")
        assert len(series.dates) == 3  # Sep 1, 2, 3
        assert series.counts == (0, 0, 1)

    def test_unknown_code_flagged_empty(self, bundled_profiles):
        corpus, calls = self.corpus_and_calls(bundled_profiles)
        series = language_histogram(corpus, calls, "tlh")
        assert series.unknown_code
        assert series.dates == () and series.counts == ()

    def test_known_code_with_no_hits_is_zero_series(self, bundled_profiles):
        corpus, calls = self.corpus_and_calls(bundled_profiles)
        series = language_histogram(
            corpus, calls, "fr", known_codes=("en", "de", "fr", "ru", "und")
        )
        assert not series.unknown_code
        assert series.total() == 0

    def test_totals_partition_corpus(self, bundled_profiles):
        corpus, calls = self.corpus_and_calls(bundled_profiles)
        codes = {call.code for call in calls} | {"und"}
        total = sum(
            language_histogram(corpus, calls, code).total() for code in codes
        )
        assert total == len(corpus)

    def test_calls_must_cover_corpus(self, bundled_profiles):
        corpus, calls = self.corpus_and_calls(bundled_profiles)
        with pytest.raises(ValueError):
            language_histogram(corpus, calls[:-1], "de")


class TestPolyglotStats:
    @staticmethod
    def call(code):
        return LanguageCall(None, code, 1.0 if code != "und" else 0.0)

    def test_bilingual_fixture(self):
        calls_by_user = {
            "b1": [self.call(c) for c in ("en", "de", "en", "de")],
            "b2": [self.call(c) for c in ("en", "de", "en", "de", "en")],
            "m1": [self.call(c) for c in ("en", "en")],
            "m2": [self.call("en")],
        }
        stats = polyglot_stats(calls_by_user)
        assert stats.users_considered == 4
        assert stats.pct_users_en_de == pytest.approx(50.0)
        assert stats.msg_share_en_de == pytest.approx(75.0)  # 9 of 12
        assert stats.pct_users_en_fr_de == 0.0

    def test_monolingual_corpus(self):
        calls_by_user = {
            "u1": [self.call("en")],
            "u2": [self.call("en"), self.call("en")],
        }
        stats = polyglot_stats(calls_by_user)
        assert stats.pct_users_en_de == 0.0
        assert stats.msg_share_en_de == 0.0

    def test_trilingual_subset_of_bilingual(self):
        calls_by_user = {
            "tri": [self.call(c) for c in ("en", "fr", "de")],
            "bi": [self.call(c) for c in ("en", "de")],
            "mono": [self.call("en")],
            "quiet": [self.call("und")],
        }
        stats = polyglot_stats(calls_by_user)
        assert stats.users_considered == 3  # quiet has no decided call
        assert stats.pct_users_en_fr_de == pytest.approx(100.0 / 3.0)
        assert stats.pct_users_en_de == pytest.approx(200.0 / 3.0)
        assert stats.pct_users_en_fr_de <= stats.pct_users_en_de

    def test_grouping_helper(self, bundled_profiles):
        corpus = make_corpus(
            [
                ("a", utc(2017, 1, 1), "Hello there, the voting has started everywhere"),
                ("a", utc(2017, 1, 2), "Second message from the same user this week"),
                ("b", utc(2017, 1, 1), "Die Wahl beginnt am Sonntag überall im Land"),
            ]
        )
        calls = detect_corpus(corpus, bundled_profiles)
        grouped = group_calls_by_user(corpus, calls)
        assert sorted(grouped) == ["a", "b"]
        assert len(grouped["a"]) == 2


class TestProfileIO:
    def test_round_trip(self, tmp_path, bundled_profiles):
        original = bundled_profiles[0]
        path = tmp_path / "profile.tsv"
        write_profile(original, path)
        loaded = read_profile(path, original.code)
        assert loaded == original

    def test_histogram_csv(self, tmp_path, bundled_profiles):
        corpus = make_corpus(
            [
                ("u", utc(2017, 9, 1), "Die Wahl findet am Sonntag statt und alle reden darüber"),
                ("u", utc(2017, 9, 2), "Der Zug nach Berlin ist heute wieder einmal verspätet"),
            ]
        )
        calls = detect_corpus(corpus, bundled_profiles)
        series = language_histogram(corpus, calls, "de")
        path = tmp_path / "hist.csv"
        write_histogram_csv(series, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "date,count"
        assert lines[1] == "2017-09-01,1"

    def test_holdout_sentences_are_long_enough(self):
        for code in ("en", "de", "fr", "ru"):
            lines = (
                (DATA_DIR / "langid_holdout" / f"{code}.txt")
                .read_text(encoding="utf-8")
                .splitlines()
            )
            assert len(lines) == 200
            assert all(len(line) >= 40 for line in lines)
