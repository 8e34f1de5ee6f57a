"""Synthetic data: the planted-token sequence task and tweet-like corpora.

The tweet generator writes rows in the 16-column vaccine tweet CSV layout
so that every pipeline stage can run without the original snapshot. Texts
mix vaccine vocabulary with lexicon words, boosters, negations, ``but``
clauses, hashtags, mentions and URLs; labels come from the rule engine,
not from the generator.
"""
from __future__ import annotations

import datetime as dt

import numpy as np

from vaxsent.nncore import rng

POS_TOKEN, NEG_TOKEN = "pos", "neg"


def planted_task(n: int = 2000, n_filler: int = 50, min_len: int = 5, max_len: int = 20,
                 seed: int = 0) -> tuple[list[list[str]], list[int]]:
    """Token lists with a planted ``pos`` (class 2), ``neg`` (class 1) or neither (0)."""
    gen = rng(seed, 10)
    filler = [f"w{k}" for k in range(n_filler)]
    docs, labels = [], []
    for _ in range(n):
        length = int(gen.integers(min_len, max_len + 1))
        doc = [filler[k] for k in gen.integers(0, n_filler, size=length)]
        label = int(gen.integers(0, 3))
        if label:
            doc[int(gen.integers(0, length))] = POS_TOKEN if label == 2 else NEG_TOKEN
        docs.append(doc)
        labels.append(label)
    return docs, labels


VACCINES = ["Pfizer", "Moderna", "AstraZeneca", "Covaxin", "Sputnik V", "Sinopharm",
            "Sinovac", "the vaccine", "my second dose", "the first jab", "the booster",
            "the rollout", "the Pfizer shot", "my Moderna dose"]
HASHTAGS = ["PfizerBioNTech", "Moderna", "AstraZeneca", "Covaxin", "SputnikV", "Sinopharm",
            "Sinovac", "CovidVaccine", "covid19", "COVID19Vaccine", "vaccine", "vaccination",
            "GetVaccinated", "coronavirus"]
NEUTRAL_CLAUSES = [
    "{v} arrives in {place} {when}", "{v} was approved in {place}",
    "{v} is scheduled for {when}", "got {v} at the {site} {when}",
    "{v} shipment landed in {place} {when}", "appointment for {v} {when}",
    "{place} starts rolling out {v} {when}", "waiting in line at the {site} for {v}",
    "{v} trial data published {when}", "{v} second dose due {when}",
    "how many people in {place} got {v}", "anyone else getting {v} {when}",
]
PLACES = ["India", "the UK", "Canada", "the US", "Brazil", "my town", "Ontario", "London",
          "Delhi", "Texas", "Mumbai", "New York", "Germany", "Russia"]
WHEN = ["today", "this week", "on Monday", "next month", "tomorrow", "tonight",
        "this morning", "in March", "after lunch", ""]
SITES = ["clinic", "pharmacy", "hospital", "stadium", "community center", "drive through"]
POSITIVE = ["good", "great", "happy", "excited", "grateful", "thankful", "safe", "relieved",
            "hopeful", "amazing", "wonderful", "proud", "glad", "lucky", "fantastic",
            "awesome", "blessed", "nice", "easy", "helpful", "strong", "better", "excellent",
            "effective", "protected", "brilliant"]
NEGATIVE = ["bad", "sad", "scared", "worried", "sick", "painful", "terrible", "awful",
            "angry", "dangerous", "nervous", "tired", "sore", "horrible", "upset",
            "disappointed", "frustrated", "worst", "fake"]
POS_NOUNS = ["love", "hope", "thanks", "best news", "relief"]
NEG_NOUNS = ["pain", "death", "fear", "chaos", "crisis", "problem", "delay", "lies", "risk"]
BOOSTERS = ["very", "so", "really", "extremely", "totally", "slightly", "kinda", "incredibly"]
NEGATORS = ["not", "never", "dont feel", "isnt", "wasnt", "not really"]
FEEL = ["I feel {a}", "feeling {a}", "it was {a}", "so far so {a}", "honestly {a}",
        "{a} experience", "the staff were {a}", "everyone seems {a}", "{a} day",
        "I am {a} about it"]
NOUN_FORMS = ["so much {n}", "{n} everywhere", "nothing but {n}", "full of {n}", "{n} again"]
SOURCES = ["Twitter for iPhone", "Twitter for Android", "Twitter Web App", "TweetDeck",
           "Instagram", "Hootsuite Inc."]
LOCATIONS = ["New York, NY", "London, England", "Toronto, Ontario", "Mumbai, India",
             "United States", "USA", "UK", "Canada", "India", "New Delhi", "Los Angeles, CA",
             "Vancouver, BC", "Manchester, UK", "Bengaluru", "Sydney, Australia", "Lagos, Nigeria",
             "Berlin", "Earth", "", "", ""]
NAMES = ["Jane Doe", "vax_watch", "Dr. Smith", "news24", "Priya", "Tom", "HealthNow",
         "Ali", "Maria G", "covid tracker", "Sam", "Nurse Kelly"]


def _pick(gen, seq):
    return seq[int(gen.integers(0, len(seq)))]


_SYLLABLES = [c + v for c in "bdfgklmnprstvz" for v in "aeiou"]


def pseudo_words(n: int = 5000, seed: int = 0) -> list[str]:
    """Pronounceable non-words standing in for names, places and slang.

    Anything that collides with the bundled lexicon or its modifier lists
    is skipped, so these tokens never carry valence.
    """
    from vaxsent.vader import BOOSTERS as MODIFIERS, NEGATIONS, default_lexicon

    lex = default_lexicon()
    gen = rng(seed, 12)
    out: dict[str, None] = {}
    while len(out) < n:
        w = "".join(_pick(gen, _SYLLABLES) for _ in range(int(gen.integers(2, 5))))
        if w not in lex.entries and w not in MODIFIERS and w not in NEGATIONS:
            out[w] = None
    return list(out)


def _sentiment_clause(gen, polarity: int) -> str:
    if gen.random() < 0.3:
        noun = _pick(gen, POS_NOUNS if polarity > 0 else NEG_NOUNS)
        return _pick(gen, NOUN_FORMS).format(n=noun)
    adj = _pick(gen, POSITIVE if polarity > 0 else NEGATIVE)
    r = gen.random()
    if r < 0.25:
        adj = f"{_pick(gen, BOOSTERS)} {adj}"
    elif r < 0.40:
        # negated opposite word carries the intended polarity
        adj = f"{_pick(gen, NEGATORS)} {_pick(gen, NEGATIVE if polarity > 0 else POSITIVE)}"
    elif r < 0.45:
        adj = adj.upper()
    return _pick(gen, FEEL).format(a=adj)


def tweet_text(gen: np.random.Generator, noise: list[str] | None = None) -> tuple[str, list[str]]:
    clause = _pick(gen, NEUTRAL_CLAUSES).format(
        v=_pick(gen, VACCINES), place=_pick(gen, PLACES), when=_pick(gen, WHEN),
        site=_pick(gen, SITES))
    parts = [clause]
    r = gen.random()
    if r < 0.27:
        parts.append(_sentiment_clause(gen, +1))
    elif r < 0.47:
        parts.append(_sentiment_clause(gen, -1))
    if r < 0.47 and gen.random() < 0.2:
        parts.append("but " + _sentiment_clause(gen, _pick(gen, [-1, 1])))
    if len(parts) > 1 and not parts[-1].startswith("but") and gen.random() < 0.3:
        parts.reverse()
    if noise:
        # long tail of rare tokens, roughly Zipf distributed
        for _ in range(int(gen.integers(0, 4))):
            w = noise[min(int(gen.zipf(1.3)) - 1, len(noise) - 1)]
            parts.insert(int(gen.integers(0, len(parts) + 1)), w.capitalize())
    text = ", ".join(p for p in parts if p).strip()
    if gen.random() < 0.3:
        text = f"@{_pick(gen, NAMES).replace(' ', '_')} {text}"
    tags = [_pick(gen, HASHTAGS) for _ in range(int(gen.choice([0, 1, 1, 2, 3, 4])))]
    end = _pick(gen, ["", ".", "!", "?", "!!", "..."])
    text = text + end
    if tags:
        text += " " + " ".join("#" + t for t in tags)
    if gen.random() < 0.4:
        text += " https://t.co/" + "".join(_pick(gen, "abcdefghijkXYZ0123") for _ in range(10))
    if gen.random() < 0.1:
        text = text.replace(", ", "\n", 1)
    return text, tags


def _date(gen) -> dt.datetime:
    start = dt.datetime(2020, 12, 12)
    day = int(gen.integers(0, 230))
    # extra mass from March onwards, when volume rose sharply
    if gen.random() < 0.5:
        day = 80 + int(gen.integers(0, 150))
    return start + dt.timedelta(days=day, seconds=int(gen.integers(0, 86400)))


def tweet_rows(n: int, seed: int = 0) -> list[dict[str, str]]:
    """``n`` CSV rows (string cells) in the 16-column corpus layout."""
    gen = rng(seed, 11)
    noise = pseudo_words(seed=seed)
    rows = []
    for k in range(n):
        text, tags = tweet_text(gen, noise)
        created = dt.datetime(2009, 1, 1) + dt.timedelta(days=int(gen.integers(0, 4000)))
        rows.append({
            "id": str(1340000000000000000 + k * 7919 + int(gen.integers(0, 7919))),
            "user_name": _pick(gen, NAMES),
            "user_location": _pick(gen, LOCATIONS),
            "user_description": _pick(gen, ["", "Views my own", "Nurse", "Health news",
                                           "Dad, runner", "Science!"]),
            "user_created": created.strftime("%Y-%m-%d %H:%M:%S"),
            "user_followers": str(int(gen.integers(0, 50000))),
            "user_friends": str(int(gen.integers(0, 5000))),
            "user_favourites": str(int(gen.integers(0, 90000))),
            "user_verified": _pick(gen, ["False"] * 9 + ["True"]),
            "date": _date(gen).strftime("%Y-%m-%d %H:%M:%S"),
            "text": text,
            "hashtags": repr(tags) if tags else "",
            "source": _pick(gen, SOURCES),
            "retweets": str(int(gen.integers(0, 50))),
            "favorites": str(int(gen.integers(0, 200))),
            "is_retweet": "False",
        })
    return rows
