"""CSV archive ingestion into validated post records.

Input is a UTF-8 (lossy-tolerant) CSV with a header row.  A
:class:`SchemaMap` binds the logical fields to column names; rows whose
timestamp fails to parse or whose user key is empty are rejected and
counted, never silently dropped.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from .errors import (
    ConfigurationError,
    EmptyCorpusError,
    MissingInputError,
    SchemaBindingError,
)

__all__ = [
    "PostRecord",
    "SchemaMap",
    "IngestStats",
    "Corpus",
    "sanitize_text",
    "load_corpus",
    "filter_window",
    "analyzable_user_count",
]


@dataclass(frozen=True)
class PostRecord:
    """One ingested post: lowercase user key, UTC instant, sanitized text."""

    user_key: str
    timestamp: datetime
    text: str
    post_id: str | None = None


@dataclass(frozen=True)
class SchemaMap:
    """Column-name bindings plus the timestamp format string."""

    user_key: str = "user_key"
    timestamp: str = "created_str"
    text: str = "text"
    post_id: str | None = "tweet_id"
    timestamp_format: str = "%Y-%m-%d %H:%M:%S"

    @classmethod
    def nbc(cls) -> "SchemaMap":
        """Preset for the NBC tweet-archive column names."""
        return cls()

    def required_columns(self) -> tuple[str, ...]:
        return (self.user_key, self.timestamp, self.text)


@dataclass(frozen=True)
class IngestStats:
    rows_read: int
    rows_rejected: int
    retained: int
    distinct_users: int
    rows_excluded: int = 0  # window filtering, not parse failures


@dataclass(frozen=True)
class Corpus:
    """Immutable ordered post collection with a per-user index.

    ``user_index`` maps each user key to record positions sorted by
    timestamp, covering exactly the retained records.
    """

    records: tuple[PostRecord, ...]
    user_index: dict[str, tuple[int, ...]]
    stats: IngestStats

    def __len__(self) -> int:
        return len(self.records)

    def users(self) -> list[str]:
        return sorted(self.user_index)

    def posts_for(self, user_key: str):
        index = self.user_index.get(user_key, ())
        return [self.records[i] for i in index]

    def span(self) -> tuple[datetime, datetime]:
        if not self.records:
            raise EmptyCorpusError("corpus has no records")
        stamps = [r.timestamp for r in self.records]
        return min(stamps), max(stamps)

    @classmethod
    def from_records(
        cls,
        records,
        rows_read: int | None = None,
        rows_rejected: int = 0,
        rows_excluded: int = 0,
    ) -> "Corpus":
        records = tuple(records)
        index: dict[str, list[tuple[datetime, int]]] = {}
        for pos, record in enumerate(records):
            index.setdefault(record.user_key, []).append((record.timestamp, pos))
        user_index = {
            user: tuple(pos for _, pos in sorted(entries))
            for user, entries in index.items()
        }
        stats = IngestStats(
            rows_read=len(records) if rows_read is None else rows_read,
            rows_rejected=rows_rejected,
            retained=len(records),
            distinct_users=len(user_index),
            rows_excluded=rows_excluded,
        )
        return cls(records, user_index, stats)


def sanitize_text(raw: bytes | str) -> str:
    """Decode to valid unicode (invalid sequences replaced) and trim."""
    if isinstance(raw, bytes):
        text = raw.decode("utf-8", errors="replace")
    else:
        # Surrogates can sneak in via lossy upstream decoding.
        text = raw.encode("utf-8", errors="replace").decode("utf-8", errors="replace")
    return text.strip()


def _parse_timestamp(value: str, fmt: str) -> datetime | None:
    try:
        parsed = datetime.strptime(value.strip(), fmt)
    except ValueError:
        return None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def load_corpus(path: str | Path, schema: SchemaMap | None = None) -> Corpus:
    """Parse a CSV archive into a Corpus, counting every rejected row."""
    schema = schema or SchemaMap.nbc()
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"input file not found: {path}")

    with path.open("r", encoding="utf-8", errors="replace", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyCorpusError(f"{path}: file is empty") from None
        header = [sanitize_text(name) for name in header]
        positions = {}
        for column in schema.required_columns():
            if column not in header:
                raise SchemaBindingError(
                    f"{path}: header lacks bound column {column!r}"
                )
            positions[column] = header.index(column)
        id_pos = None
        if schema.post_id is not None and schema.post_id in header:
            id_pos = header.index(schema.post_id)

        records = []
        rows_read = 0
        rejected = 0
        needed = max(positions.values())
        for row in reader:
            rows_read += 1
            if len(row) <= needed:
                rejected += 1
                continue
            user = sanitize_text(row[positions[schema.user_key]]).lower()
            if not user:
                rejected += 1
                continue
            stamp = _parse_timestamp(
                row[positions[schema.timestamp]], schema.timestamp_format
            )
            if stamp is None:
                rejected += 1
                continue
            text = sanitize_text(row[positions[schema.text]])
            post_id = None
            if id_pos is not None and id_pos < len(row):
                post_id = sanitize_text(row[id_pos]) or None
            records.append(PostRecord(user, stamp, text, post_id))

    if not records:
        raise EmptyCorpusError(f"{path}: zero rows retained")
    corpus = Corpus.from_records(records, rows_read=rows_read, rows_rejected=rejected)
    return corpus


def filter_window(corpus: Corpus, start: datetime, end: datetime) -> Corpus:
    """Keep posts with start <= timestamp < end; stats are recomputed."""
    if start >= end:
        raise ConfigurationError(f"inverted window: {start} >= {end}")
    kept = [r for r in corpus.records if start <= r.timestamp < end]
    dropped = len(corpus.records) - len(kept)
    return Corpus.from_records(
        kept,
        rows_read=corpus.stats.rows_read,
        rows_rejected=corpus.stats.rows_rejected,
        rows_excluded=corpus.stats.rows_excluded + dropped,
    )


def analyzable_user_count(corpus: Corpus, min_posts: int = 1) -> int:
    """Users with at least ``min_posts`` posts of non-empty text."""
    count = 0
    for user in corpus.user_index:
        non_empty = sum(1 for r in corpus.posts_for(user) if r.text)
        if non_empty >= min_posts:
            count += 1
    return count
