"""Tweet text cleaning and whitespace tokenization.

Cleaning keeps letter case; lowercasing happens later when the neural
vocabulary is built, because the rule engine uses capitalization.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass, field

URL_RE = re.compile(r"(?:https?://|www\.)\S*|\bt\.co/\S*", re.IGNORECASE)
EMAIL_RE = re.compile(r"[^\s@]+@[^\s@]+\.[^\s@]+")
NEWLINE_RE = re.compile(r"[\r\n\x0b\x0c\x85\u2028\u2029]+")

QUOTES = "\"'‘’“”"
_DROP_QUOTES = str.maketrans("", "", QUOTES)
_DROP_PUNCT = str.maketrans("", "", string.punctuation)


@dataclass(frozen=True)
class CleanText:
    original: str
    cleaned: str
    tokens: list[str] = field(default_factory=list)


def clean_text(raw: str) -> CleanText:
    """Strip URLs, emails, newlines, quotes and ASCII punctuation.

    The steps run in a fixed order: URLs go first so that ``https://x.co``
    disappears whole instead of leaving ``httpsxco`` behind.
    """
    text = URL_RE.sub(" ", raw)
    text = EMAIL_RE.sub(" ", text)
    text = NEWLINE_RE.sub(" ", text)
    text = text.translate(_DROP_QUOTES)
    text = text.translate(_DROP_PUNCT)
    tokens = tokenize(text)
    return CleanText(original=raw, cleaned=detokenize(tokens), tokens=tokens)


def tokenize(text: str) -> list[str]:
    return text.split()


def detokenize(tokens: list[str]) -> str:
    for tok in tokens:
        if not tok or tok != tok.strip() or len(tok.split()) != 1:
            raise ValueError(f"token {tok!r} is empty or contains whitespace")
    return " ".join(tokens)
