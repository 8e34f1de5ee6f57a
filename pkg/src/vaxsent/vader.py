"""Lexicon and rule based sentiment scoring (VADER compatible).

The scorer reproduces VADER 3.3.2 (Hutto & Gilbert, ICWSM 2014) token for
token: lexicon lookup, ALL-CAPS emphasis, booster/dampener words with
distance decay, negation within three preceding words, a handful of
idioms, the ``least`` rule, contrastive ``but`` reweighting and ``!``/``?``
emphasis. Results are returned unrounded.
"""
from __future__ import annotations

import enum
import math
import string
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

# Heuristic constants, all copied from vaderSentiment 3.3.2 (vaderSentiment.py).
CONSTANTS = {
    "booster_incr": 0.293,  # B_INCR
    "booster_decr": -0.293,  # B_DECR
    "caps_incr": 0.733,  # C_INCR
    "negation_scalar": -0.74,  # N_SCALAR
    "booster_decay": (1.0, 0.95, 0.9),  # scalar damping for words 1, 2, 3 back
    "never_so_scalar": 1.25,  # "never so/this <word>"
    "but_before": 0.5,  # _but_check
    "but_after": 1.5,
    "exclaim_incr": 0.292,  # _amplify_ep
    "exclaim_max": 4,
    "question_incr": 0.18,  # _amplify_qm, applies for 2..3 marks
    "question_cap": 0.96,  # for more than 3 marks
    "alpha": 15.0,  # normalize()
}

NEGATIONS = frozenset([
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing", "nowhere",
    "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't",
    "without", "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite",
])

_UP = (
    "absolutely amazingly awfully completely considerable considerably decidedly "
    "deeply effing enormous enormously entirely especially exceptional "
    "exceptionally extreme extremely fabulously flipping flippin frackin fracking "
    "fricking frickin frigging friggin fully fuckin fucking fuggin fugging greatly "
    "hella highly hugely incredible incredibly intensely major majorly more most "
    "particularly purely quite really remarkably so substantially thoroughly total "
    "totally tremendous tremendously uber unbelievably unusually utter utterly very"
).split()
_DOWN = (
    "almost barely hardly kinda kindof kind-of less little marginal marginally "
    "occasional occasionally partly scarce scarcely slight slightly somewhat sorta "
    "sortof sort-of"
).split() + ["just enough", "kind of", "sort of"]

BOOSTERS = {w: CONSTANTS["booster_incr"] for w in _UP}
BOOSTERS.update({w: CONSTANTS["booster_decr"] for w in _DOWN})

# multi-word phrases whose valence overrides the lexicon word inside them
SPECIAL_CASES = {
    "the shit": 3.0, "the bomb": 3.0, "bad ass": 1.5, "badass": 1.5, "bus stop": 0.0,
    "yeah right": -2.0, "kiss of death": -1.5, "to die for": 3.0, "beating heart": 3.5,
}


class Polarity(enum.IntEnum):
    NEUTRAL = 0
    NEGATIVE = 1
    POSITIVE = 2

    @property
    def label(self) -> str:
        return self.name.capitalize()


# ordering used for monotonicity: Negative < Neutral < Positive
POLARITY_RANK = {Polarity.NEGATIVE: 0, Polarity.NEUTRAL: 1, Polarity.POSITIVE: 2}


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, float]
    boosters: dict[str, float] = field(default_factory=lambda: dict(BOOSTERS))
    negations: frozenset[str] = NEGATIONS
    contrastive_conjunctions: frozenset[str] = frozenset({"but"})
    special_cases: dict[str, float] = field(default_factory=lambda: dict(SPECIAL_CASES))
    emojis: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.entries:
            raise LexiconError("empty lexicon")
        if any(abs(v) >= 1 for v in self.boosters.values()):
            raise LexiconError("booster increments must be smaller than 1 in magnitude")

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.entries

    def valence(self, token: str) -> float:
        return self.entries[token.lower()]


@dataclass(frozen=True)
class SentimentScores:
    pos: float
    neg: float
    neu: float
    compound: float

    def as_dict(self) -> dict[str, float]:
        return {"compound": self.compound, "pos": self.pos, "neg": self.neg, "neu": self.neu}


def load_lexicon(path: str | Path, emoji_path: str | Path | None = None) -> Lexicon:
    """Read a tab separated ``token, mean, stddev, ratings`` lexicon file.

    Keys are lowercased. When a mixed-case key (an emoticon such as ``:D``)
    collides with an existing lowercase key, the lowercase entry wins since
    lookups always go through the lowercased token.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"lexicon not found: {path}")
    entries: dict[str, float] = {}
    folded: dict[str, float] = {}
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            parts = line.strip("\n").split("\t")
            if len(parts) < 2 or not parts[0]:
                continue
            try:
                value = float(parts[1])
            except ValueError:
                continue
            token = parts[0].strip()
            if token == token.lower():
                entries[token] = value
            else:
                folded.setdefault(token.lower(), value)
    for token, value in folded.items():
        entries.setdefault(token, value)
    if not entries:
        raise LexiconError("empty lexicon")
    emojis = _load_emojis(Path(emoji_path)) if emoji_path else {}
    return Lexicon(entries=entries, emojis=emojis)


def _load_emojis(path: Path) -> dict[str, str]:
    emojis = {}
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            parts = line.strip().split("\t")
            if len(parts) >= 2:
                emojis[parts[0]] = parts[1]
    return emojis


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    """The bundled VADER 3.3.2 lexicon plus its emoji descriptions."""
    data = resources.files("vaxsent") / "data"
    with resources.as_file(data / "vader_lexicon.txt") as lex, \
            resources.as_file(data / "emoji_utf8_lexicon.txt") as emo:
        return load_lexicon(lex, emo)


def normalize_score(raw_sum: float, alpha: float = CONSTANTS["alpha"]) -> float:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    value = raw_sum / math.sqrt(raw_sum * raw_sum + alpha)
    return min(1.0, max(-1.0, value))


def classify(scores: SentimentScores, threshold: float = 0.05) -> Polarity:
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    if scores.compound >= threshold:
        return Polarity.POSITIVE
    if scores.compound <= -threshold:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL


# --- scoring -----------------------------------------------------------------

def _strip_punct(token: str) -> str:
    # short results are most likely emoticons such as ":)"; keep those whole
    stripped = token.strip(string.punctuation)
    return token if len(stripped) <= 2 else stripped


def _replace_emojis(text: str, emojis: dict[str, str]) -> str:
    if not emojis:
        return text.strip()
    out = []
    prev_space = True
    for ch in text:
        desc = emojis.get(ch)
        if desc is not None:
            if not prev_space:
                out.append(" ")
            out.append(desc)
            prev_space = False
        else:
            out.append(ch)
            prev_space = ch == " "
    return "".join(out).strip()


def _is_negation(word: str, lex: Lexicon) -> bool:
    return word in lex.negations or "n't" in word


class _Sentence:
    """Tokens of one input plus the lowercase view and caps flag."""

    def __init__(self, text: str):
        self.words = [_strip_punct(w) for w in text.split()]
        self.lower = [w.lower() for w in self.words]
        n_caps = sum(1 for w in self.words if w.isupper())
        self.caps_differ = 0 < len(self.words) - n_caps < len(self.words)


def _booster_scalar(word: str, valence: float, caps_differ: bool, lex: Lexicon) -> float:
    key = word.lower()
    if key not in lex.boosters:
        return 0.0
    scalar = lex.boosters[key]
    if valence < 0:
        scalar = -scalar
    if word.isupper() and caps_differ:
        scalar += CONSTANTS["caps_incr"] if valence > 0 else -CONSTANTS["caps_incr"]
    return scalar


def _negation_adjust(valence: float, low: list[str], distance: int, i: int, lex: Lexicon) -> float:
    neg = CONSTANTS["negation_scalar"]
    emph = CONSTANTS["never_so_scalar"]
    if distance == 0:
        if _is_negation(low[i - 1], lex):
            valence *= neg
    elif distance == 1:
        if low[i - 2] == "never" and low[i - 1] in ("so", "this"):
            valence *= emph
        elif low[i - 2] == "without" and low[i - 1] == "doubt":
            pass
        elif _is_negation(low[i - 2], lex):
            valence *= neg
    else:
        if (low[i - 3] == "never" and low[i - 2] in ("so", "this")) or low[i - 1] in ("so", "this"):
            valence *= emph
        elif low[i - 3] == "without" and "doubt" in (low[i - 2], low[i - 1]):
            pass
        elif _is_negation(low[i - 3], lex):
            valence *= neg
    return valence


def _idiom_adjust(valence: float, low: list[str], i: int, lex: Lexicon) -> float:
    one_zero = f"{low[i - 1]} {low[i]}"
    two_one_zero = f"{low[i - 2]} {low[i - 1]} {low[i]}"
    two_one = f"{low[i - 2]} {low[i - 1]}"
    three_two_one = f"{low[i - 3]} {low[i - 2]} {low[i - 1]}"
    three_two = f"{low[i - 3]} {low[i - 2]}"
    for seq in (one_zero, two_one_zero, two_one, three_two_one, three_two):
        if seq in lex.special_cases:
            valence = lex.special_cases[seq]
            break
    if len(low) - 1 > i:
        zero_one = f"{low[i]} {low[i + 1]}"
        if zero_one in lex.special_cases:
            valence = lex.special_cases[zero_one]
    if len(low) - 1 > i + 1:
        zero_one_two = f"{low[i]} {low[i + 1]} {low[i + 2]}"
        if zero_one_two in lex.special_cases:
            valence = lex.special_cases[zero_one_two]
    for ngram in (three_two_one, three_two, two_one):
        if ngram in lex.boosters:
            valence += lex.boosters[ngram]
    return valence


def _least_adjust(valence: float, low: list[str], i: int, lex: Lexicon) -> float:
    neg = CONSTANTS["negation_scalar"]
    if i > 1 and low[i - 1] not in lex.entries and low[i - 1] == "least":
        if low[i - 2] not in ("at", "very"):
            valence *= neg
    elif i > 0 and low[i - 1] not in lex.entries and low[i - 1] == "least":
        valence *= neg
    return valence


def _token_valence(sent: _Sentence, i: int, lex: Lexicon) -> float:
    words, low = sent.words, sent.lower
    item = low[i]
    if item not in lex.entries:
        return 0.0
    valence = lex.entries[item]
    # "no" directly before another lexicon word acts as a negator, not a word
    if item == "no" and i != len(words) - 1 and low[i + 1] in lex.entries:
        valence = 0.0
    if (i > 0 and low[i - 1] == "no") or (i > 1 and low[i - 2] == "no") or (
            i > 2 and low[i - 3] == "no" and low[i - 1] in ("or", "nor")):
        valence = lex.entries[item] * CONSTANTS["negation_scalar"]

    if words[i].isupper() and sent.caps_differ:
        valence += CONSTANTS["caps_incr"] if valence > 0 else -CONSTANTS["caps_incr"]

    for distance in range(3):
        if i > distance and low[i - distance - 1] not in lex.entries:
            s = _booster_scalar(words[i - distance - 1], valence, sent.caps_differ, lex)
            if s != 0:
                s *= CONSTANTS["booster_decay"][distance]
            valence += s
            valence = _negation_adjust(valence, low, distance, i, lex)
            if distance == 2:
                valence = _idiom_adjust(valence, low, i, lex)

    return _least_adjust(valence, low, i, lex)


def _contrast_adjust(low: list[str], sentiments: list[float], lex: Lexicon) -> list[float]:
    pivot = next((k for k, w in enumerate(low) if w in lex.contrastive_conjunctions), None)
    if pivot is None:
        return sentiments
    out = list(sentiments)
    # the reference locates each value with list.index(), i.e. the first
    # equal entry; that lookup is reproduced so outputs agree exactly
    for j in range(len(out)):
        k = out.index(out[j])
        if k < pivot:
            out[k] *= CONSTANTS["but_before"]
        elif k > pivot:
            out[k] *= CONSTANTS["but_after"]
    return out


def _punctuation_emphasis(text: str) -> float:
    ep = min(text.count("!"), CONSTANTS["exclaim_max"]) * CONSTANTS["exclaim_incr"]
    qm = text.count("?")
    if qm > 3:
        qe = CONSTANTS["question_cap"]
    elif qm > 1:
        qe = qm * CONSTANTS["question_incr"]
    else:
        qe = 0.0
    return ep + qe


def token_valences(text: str, lexicon: Lexicon) -> list[float]:
    """Per-token valences after all contextual rules, before summation."""
    return _valences(_replace_emojis(text, lexicon.emojis), lexicon)


def _valences(text: str, lexicon: Lexicon) -> list[float]:
    sent = _Sentence(text)
    sentiments = []
    for i, w in enumerate(sent.lower):
        if w in lexicon.boosters:
            sentiments.append(0.0)
        elif w == "kind" and i < len(sent.lower) - 1 and sent.lower[i + 1] == "of":
            sentiments.append(0.0)
        else:
            sentiments.append(_token_valence(sent, i, lexicon))
    return _contrast_adjust(sent.lower, sentiments, lexicon)


def score(text: str, lexicon: Lexicon) -> SentimentScores:
    text = _replace_emojis(text, lexicon.emojis)
    sentiments = _valences(text, lexicon)
    if not sentiments:
        return SentimentScores(pos=0.0, neg=0.0, neu=0.0, compound=0.0)

    emphasis = _punctuation_emphasis(text)
    total = float(sum(sentiments))
    if total > 0:
        total += emphasis
    elif total < 0:
        total -= emphasis
    compound = normalize_score(total)

    # +1/-1 compensates for neutral words counting 1 each
    pos_sum = sum(s + 1 for s in sentiments if s > 0)
    neg_sum = sum(s - 1 for s in sentiments if s < 0)
    neu_count = sum(1 for s in sentiments if s == 0)
    if pos_sum > abs(neg_sum):
        pos_sum += emphasis
    elif pos_sum < abs(neg_sum):
        neg_sum -= emphasis
    mass = pos_sum + abs(neg_sum) + neu_count
    return SentimentScores(
        pos=abs(pos_sum / mass), neg=abs(neg_sum / mass), neu=abs(neu_count / mass),
        compound=compound,
    )
