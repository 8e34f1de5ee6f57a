"""Load the 16-column vaccine tweet CSV into typed records."""
from __future__ import annotations

import ast
import csv
import datetime as dt
import io
import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

log = logging.getLogger(__name__)

COLUMNS = [
    "id", "user_name", "user_location", "user_description", "user_created",
    "user_followers", "user_friends", "user_favourites", "user_verified", "date",
    "text", "hashtags", "source", "retweets", "favorites", "is_retweet",
]
REQUIRED = ("id", "date", "text")
_INT_FIELDS = ("user_followers", "user_friends", "user_favourites", "retweets", "favorites")
_BOOL_FIELDS = ("user_verified", "is_retweet")


class IngestError(ValueError):
    pass


class FieldError(ValueError):
    """A single cell could not be parsed; ``reason`` names the rejection bucket."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class TweetRecord:
    id: str
    user_name: str
    date: dt.datetime
    text: str
    hashtags: tuple[str, ...] = ()
    source: str = ""
    user_location: str | None = None
    user_description: str | None = None
    user_created: dt.datetime | None = None
    user_followers: int | None = None
    user_friends: int | None = None
    user_favourites: int | None = None
    user_verified: bool | None = None
    retweets: int | None = None
    favorites: int | None = None
    is_retweet: bool | None = None


@dataclass
class IngestSummary:
    accepted: int = 0
    rejected: int = 0
    rejection_reasons: dict[str, int] = field(default_factory=dict)
    duplicate_ids: int = 0
    warnings: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.accepted + self.rejected

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def parse_timestamp(raw: str) -> dt.datetime:
    """``YYYY-MM-DD HH:MM:SS`` or ISO-8601; naive values are taken as UTC."""
    raw = raw.strip()
    if not raw:
        raise ValueError("empty timestamp")
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    value = dt.datetime.fromisoformat(raw)
    if value.tzinfo is None:
        return value.replace(tzinfo=dt.timezone.utc)
    return value.astimezone(dt.timezone.utc)


def format_timestamp(value: dt.datetime) -> str:
    return value.astimezone(dt.timezone.utc).replace(tzinfo=None).isoformat(sep=" ")


def parse_hashtag_field(raw: str | None, strict: bool = False) -> list[str]:
    """Parse a bracketed, quoted list cell such as ``['PfizerBioNTech', 'covid']``.

    Tags are returned bare (no ``#``), in order, duplicates kept. A malformed
    cell raises :class:`FieldError` when ``strict``, otherwise it logs a
    warning and yields an empty list.
    """
    if raw is None or not raw.strip():
        return []
    try:
        value = ast.literal_eval(raw.strip())
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise ValueError("not a list of strings")
    except (ValueError, SyntaxError, MemoryError, RecursionError) as exc:
        if strict:
            raise FieldError("bad_hashtags", f"malformed hashtag cell {raw!r}") from exc
        log.warning("malformed hashtag cell %r; using no tags", raw)
        return []
    tags = [v.strip().lstrip("#").strip() for v in value]
    return [t for t in tags if t]


def _parse_int(raw: str) -> int:
    value = int(float(raw)) if "." in raw or "e" in raw.lower() else int(raw)
    if value < 0:
        raise ValueError("negative count")
    return value


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _optional(row: dict, name: str, parse, strict: bool, warnings: Counter):
    raw = row.get(name)
    if raw is None or not raw.strip():
        return None
    try:
        return parse(raw.strip())
    except (ValueError, OverflowError) as exc:
        if strict:
            raise FieldError(f"bad_{name}", f"{name}: {exc}") from exc
        warnings[f"bad_{name}"] += 1
        return None


def parse_row(row: dict[str, str | None], strict: bool = False,
              warnings: Counter | None = None) -> TweetRecord:
    """Build one record from a CSV row dict; raise :class:`FieldError` to reject."""
    warnings = warnings if warnings is not None else Counter()
    text = row.get("text") or ""
    if not text.strip():
        raise FieldError("empty_text", "text is empty")
    try:
        date = parse_timestamp(row.get("date") or "")
    except ValueError as exc:
        raise FieldError("bad_date", f"date: {exc}") from exc
    tweet_id = (row.get("id") or "").strip()
    if not tweet_id:
        raise FieldError("missing_id", "id is empty")
    try:
        hashtags = parse_hashtag_field(row.get("hashtags"), strict=True)
    except FieldError:
        if strict:
            raise
        warnings["bad_hashtags"] += 1
        hashtags = []

    def opt_text(name):
        v = row.get(name)
        return v if v else None

    return TweetRecord(
        id=tweet_id,
        user_name=row.get("user_name") or "",
        date=date,
        text=text,
        hashtags=tuple(hashtags),
        source=row.get("source") or "",
        user_location=opt_text("user_location"),
        user_description=opt_text("user_description"),
        user_created=_optional(row, "user_created", parse_timestamp, strict, warnings),
        **{k: _optional(row, k, _parse_int, strict, warnings) for k in _INT_FIELDS},
        **{k: _optional(row, k, _parse_bool, strict, warnings) for k in _BOOL_FIELDS},
    )


def read_rows(stream: Iterable[str]) -> tuple[list[str], csv.DictReader]:
    reader = csv.DictReader(stream)
    try:
        header = reader.fieldnames
    except csv.Error as exc:
        raise IngestError(f"unreadable header: {exc}") from exc
    if header is None:
        raise IngestError("file has no header row")
    missing = [c for c in REQUIRED if c not in header]
    if missing:
        raise IngestError(f"header is missing required columns: {', '.join(missing)}")
    return list(header), reader


def load_corpus(path: str | Path, schema_mode: str = "lenient") -> tuple[list[TweetRecord], IngestSummary]:
    """Parse and validate the corpus, preserving row order.

    Rows with an empty text, an unparseable date or no id are rejected in
    both modes. ``strict`` also rejects rows with malformed optional cells,
    ``lenient`` turns those cells into ``None``.
    """
    if schema_mode not in ("strict", "lenient"):
        raise ValueError("schema_mode must be 'strict' or 'lenient'")
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"corpus not found: {path}")
    with path.open(encoding="utf-8", newline="") as fh:
        return load_rows(fh, schema_mode)


def load_rows(stream: Iterable[str], schema_mode: str = "lenient") -> tuple[list[TweetRecord], IngestSummary]:
    strict = schema_mode == "strict"
    _, rows = read_rows(stream)
    records: list[TweetRecord] = []
    reasons: Counter = Counter()
    warnings: Counter = Counter()
    seen: set[str] = set()
    duplicates = 0
    while True:
        try:
            row = next(rows)
        except StopIteration:
            break
        except csv.Error as exc:
            raise IngestError(f"CSV syntax error near line {rows.line_num}: {exc}") from exc
        try:
            rec = parse_row(row, strict=strict, warnings=warnings)
        except FieldError as exc:
            reasons[exc.reason] += 1
            continue
        if rec.id in seen:
            duplicates += 1
        seen.add(rec.id)
        records.append(rec)
    summary = IngestSummary(accepted=len(records), rejected=sum(reasons.values()),
                            rejection_reasons=dict(sorted(reasons.items())),
                            duplicate_ids=duplicates, warnings=dict(sorted(warnings.items())))
    if warnings:
        log.warning("ingest warnings: %s", summary.warnings)
    return records, summary


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, dt.datetime):
        return format_timestamp(value)
    if isinstance(value, tuple):
        return repr(list(value)) if value else ""
    return str(value)


def record_to_row(rec: TweetRecord) -> dict[str, str]:
    return {c: _cell(getattr(rec, c)) for c in COLUMNS}


def write_corpus(records: Iterable[TweetRecord | dict], out) -> None:
    """Write records (or raw row dicts) as CSV to a path or text stream."""
    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_corpus(records, fh)
        return
    # CRLF terminator so that cells holding a bare "\r" get quoted (RFC 4180)
    writer = csv.DictWriter(out, fieldnames=COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec if isinstance(rec, dict) else record_to_row(rec))


def corpus_bytes(records: Iterable[TweetRecord | dict]) -> bytes:
    buf = io.StringIO(newline="")
    write_corpus(records, buf)
    return buf.getvalue().encode("utf-8")
