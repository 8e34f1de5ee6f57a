import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vaxsent.textprep import clean_text
from vaxsent.vader import (POLARITY_RANK, LexiconError, Polarity, SentimentScores, classify,
                           load_lexicon, normalize_score, score)


def test_golden_corpus(golden, lexicon):
    assert len(golden) >= 100
    worst = 0.0
    for case in golden:
        s = score(case["text"], lexicon)
        for key in ("pos", "neg", "neu", "compound"):
            worst = max(worst, abs(getattr(s, key) - case[key]))
    assert worst < 1e-4


def test_canonical_sentence(golden, lexicon):
    want = next(c for c in golden if c["text"] == "VADER is smart, handsome, and funny.")
    got = score(want["text"], lexicon).compound
    assert got == pytest.approx(want["compound"], abs=1e-12)
    assert got == pytest.approx(0.83, abs=0.01)


def test_empty_text(lexicon):
    assert score("", lexicon) == SentimentScores(0.0, 0.0, 0.0, 0.0)


def test_lexicon_contents(lexicon):
    assert lexicon.entries["good"] == 1.9
    assert 7000 <= len(lexicon.entries) <= 8000
    assert lexicon.valence("GOOD") == 1.9
    assert all(abs(v) < 1 for v in lexicon.boosters.values())
    assert "but" in lexicon.contrastive_conjunctions


def test_empty_lexicon_file(tmp_path):
    p = tmp_path / "lex.txt"
    p.write_text("\n\n", encoding="utf-8")
    with pytest.raises(LexiconError, match="empty lexicon"):
        load_lexicon(p)


def test_missing_lexicon_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_lexicon(tmp_path / "absent.txt")


def test_small_lexicon(tmp_path):
    p = tmp_path / "lex.txt"
    p.write_text("Shot\t1.0\t0.5\t[1, 1]\nbad\t-2.0\t0.1\t[]\nnonsense line\n", encoding="utf-8")
    lex = load_lexicon(p)
    assert lex.entries == {"shot": 1.0, "bad": -2.0}
    assert score("shot", lex).compound > 0 > score("bad", lex).compound


def test_normalize_score():
    assert normalize_score(0.0) == 0.0
    assert normalize_score(math.sqrt(15)) == pytest.approx(1 / math.sqrt(2), abs=1e-5)
    assert normalize_score(-math.sqrt(15)) == pytest.approx(-0.70711, abs=1e-5)
    assert -1 <= normalize_score(1e300) <= 1


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_normalize_monotone(a, b):
    if a < b:
        assert normalize_score(a) <= normalize_score(b)


def _scores(c):
    return SentimentScores(0.0, 0.0, 0.0, c)


def test_classify_boundaries():
    assert classify(_scores(0.0)) is Polarity.NEUTRAL
    assert classify(_scores(0.05)) is Polarity.POSITIVE
    assert classify(_scores(-0.05)) is Polarity.NEGATIVE
    assert classify(_scores(0.0499)) is Polarity.NEUTRAL


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0.001, 0.999))
def test_classify_monotone(a, b, theta):
    lo, hi = sorted((a, b))
    assert POLARITY_RANK[classify(_scores(lo), theta)] <= POLARITY_RANK[classify(_scores(hi), theta)]


def test_polarity_encoding():
    assert (int(Polarity.NEUTRAL), int(Polarity.NEGATIVE), int(Polarity.POSITIVE)) == (0, 1, 2)


def test_vaccine_tweet_labels(lexicon):
    row0 = "Same folks said daikon paste could treat a cytokine storm #PfizerBioNTech"
    assert classify(score(clean_text(row0).cleaned, lexicon)) is Polarity.POSITIVE
    # the reference engine rates "safe" +1.9, so this row is Positive (0.7003), not Neutral
    row4 = ("Does anyone have any useful advice/guidance for whether the COVID vaccine "
            "is safe whilst breastfeeding")
    s = score(clean_text(row4).cleaned, lexicon)
    assert s.compound == pytest.approx(0.7003, abs=1e-4)
    assert classify(s) is Polarity.POSITIVE


def test_negation_flip(lexicon):
    assert score("not good", lexicon).compound < 0 < score("good", lexicon).compound


def test_heuristics_direction(lexicon):
    base = score("The vaccine is good", lexicon).compound
    assert score("The vaccine is very good", lexicon).compound > base
    assert score("The vaccine is GOOD", lexicon).compound > base
    assert score("The vaccine is good!!!", lexicon).compound > base
    assert score("The vaccine is slightly good", lexicon).compound < base
    # after "but" counts 1.5x, before it 0.5x
    assert score("The vaccine is good but the wait is bad", lexicon).compound < 0


def test_exclamation_never_decreases(golden, lexicon):
    for case in golden:
        text = case["text"]
        if case["compound"] > 0 and "!" not in text:
            # gluing "!" onto a trailing emoticon makes an unknown token (":)!"), as in the reference
            bang = text + ("!" if text[-1].isalnum() else " !")
            assert score(bang, lexicon).compound >= case["compound"]


def test_glued_emoticon_matches_reference(lexicon):
    assert score("Second dose done :)!", lexicon).compound == 0.0


@given(text=st.text(max_size=200))
@settings(max_examples=300)
def test_bounded_and_closed(text, lexicon):
    s = score(text, lexicon)
    assert -1 <= s.compound <= 1
    assert 0 <= min(s.pos, s.neg, s.neu)
    total = s.pos + s.neg + s.neu
    assert total == 0 or abs(total - 1) < 1e-6
    assert score(text, lexicon) == s


@given(words=st.lists(st.sampled_from(["good", "bad", "not", "very", "BAD", "but", "vaccine", "shot",
                                 "kind", "of", "least", "never", "so", "!", "?", ":)"]),
                min_size=1, max_size=25))
def test_ratio_closure_on_lexicon_words(words, lexicon):
    s = score(" ".join(words), lexicon)
    assert abs(s.pos + s.neg + s.neu - 1) < 1e-6 or s.pos + s.neg + s.neu == 0
