"""Corpus level tables: sentiment shares, daily timelines, hashtag counts,
term frequencies, sources and locations."""
from __future__ import annotations

import datetime as dt
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from vaxsent.ingest import TweetRecord
from vaxsent.textprep import clean_text
from vaxsent.vader import Polarity

log = logging.getLogger(__name__)

OTHER = "other"


@dataclass(frozen=True)
class Distribution:
    counts: dict[Polarity, int]
    percentages: dict[Polarity, float]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def rows(self) -> list[dict]:
        return [{"class": int(p), "label": p.label, "count": self.counts[p],
                 "percentage": self.percentages[p]} for p in Polarity]


@dataclass(frozen=True)
class TimelinePoint:
    day: dt.date
    total: int
    per_class: dict[Polarity, int]


@dataclass(frozen=True)
class HashtagHistogram:
    counts: dict[int, int]
    density: dict[int, float]


def sentiment_distribution(labels: Iterable[int]) -> Distribution:
    c = Counter(Polarity(int(v)) for v in labels)
    total = sum(c.values())
    if total == 0:
        raise ValueError("no labels")
    counts = {p: c.get(p, 0) for p in Polarity}
    return Distribution(counts=counts, percentages={p: 100.0 * n / total for p, n in counts.items()})


def daily_timeline(records: Sequence[TweetRecord], labels: Sequence[int]) -> list[TimelinePoint]:
    """Per UTC day counts, zero-filled between the first and last day."""
    if len(records) != len(labels):
        raise ValueError(f"{len(records)} records but {len(labels)} labels")
    if not records:
        return []
    by_day: dict[dt.date, Counter] = {}
    for rec, lab in zip(records, labels):
        day = rec.date.astimezone(dt.timezone.utc).date()
        by_day.setdefault(day, Counter())[Polarity(int(lab))] += 1
    first, last = min(by_day), max(by_day)
    points = []
    day = first
    while day <= last:
        c = by_day.get(day, Counter())
        points.append(TimelinePoint(day=day, total=sum(c.values()),
                                    per_class={p: c.get(p, 0) for p in Polarity}))
        day += dt.timedelta(days=1)
    return points


def hashtag_histogram(records: Iterable[TweetRecord]) -> HashtagHistogram:
    c = Counter(len(r.hashtags) for r in records)
    total = sum(c.values())
    counts = dict(sorted(c.items()))
    return HashtagHistogram(counts=counts,
                            density={k: v / total for k, v in counts.items()} if total else {})


@lru_cache(maxsize=1)
def default_aliases() -> dict[str, tuple[str, ...]]:
    raw = json.loads((resources.files("vaxsent") / "data" / "location_aliases.json").read_text("utf-8"))
    return {k: tuple(v) for k, v in raw.items() if not k.startswith("_")}


@lru_cache(maxsize=4096)
def _alias_pattern(alias: str) -> re.Pattern:
    # substring match that may not start or end inside a word ("uk" vs "ukraine")
    alias = alias.lower()
    head = r"(?<!\w)" if alias[:1].isalnum() else ""
    tail = r"(?!\w)" if alias[-1:].isalnum() else ""
    return re.compile(head + re.escape(alias) + tail)


def location_group(location: str | None, aliases: dict[str, Sequence[str]] | None = None) -> str:
    """Country bucket for a free-text location; first matching group wins."""
    if not location:
        return OTHER
    aliases = default_aliases() if aliases is None else aliases
    low = location.lower()
    for group, names in aliases.items():
        if any(_alias_pattern(a).search(low) for a in names):
            return group
    return OTHER


def _terms(rec: TweetRecord) -> list[str]:
    return [t.lower() for t in clean_text(rec.text).tokens]


def top_terms(records: Iterable[TweetRecord], group_by: str = "none", group_value: str | None = None,
              k: int = 20, aliases: dict[str, Sequence[str]] | None = None) -> list[tuple[str, int]]:
    """Most frequent lowercased cleaned tokens, ties broken alphabetically.

    ``group_by`` is ``location`` (country bucket from the alias table),
    ``source`` (case-insensitive exact client name) or ``none``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    aliases = default_aliases() if aliases is None else aliases
    if group_by == "location":
        if group_value not in aliases and group_value != OTHER:
            log.warning("unknown location group %r", group_value)
            return []
        selected = (r for r in records if location_group(r.user_location, aliases) == group_value)
    elif group_by == "source":
        want = (group_value or "").lower()
        selected = (r for r in records if r.source.lower() == want)
    elif group_by == "none":
        selected = records
    else:
        raise ValueError(f"unknown grouping {group_by!r}")
    counts: Counter = Counter()
    for rec in selected:
        counts.update(_terms(rec))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


def ranked_counts(values: Iterable[str]) -> list[tuple[str, int]]:
    c = Counter(values)
    return sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))


def source_counts(records: Iterable[TweetRecord]) -> list[tuple[str, int]]:
    return ranked_counts(r.source or "unknown" for r in records)


def location_counts(records: Iterable[TweetRecord],
                    aliases: dict[str, Sequence[str]] | None = None) -> list[tuple[str, int]]:
    return ranked_counts(location_group(r.user_location, aliases) for r in records)


def monthly_totals(points: Iterable[TimelinePoint]) -> dict[str, int]:
    out: Counter = Counter()
    for p in points:
        out[p.day.strftime("%Y-%m")] += p.total
    return dict(sorted(out.items()))
