"""Tokenisation, stemming, stopword removal, and per-user documents.

The per-user document is the unit of the language-community pipeline:
all of a user's posts concatenated, tokenised, stemmed, and reduced to
stem counts with static stopwords removed.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .porter import porter_stem

__all__ = [
    "UserDocument",
    "DocumentSet",
    "StopwordList",
    "tokenize",
    "stem",
    "build_user_documents",
    "top_terms",
    "load_stopwords",
    "write_ranked_terms_csv",
]

# Retweet syntax ("rt @user") and bare mentions/URLs carry no topical
# content; strip them before word extraction.
_RT_MENTION = re.compile(r"\brt\s+@\w+")
_MENTION = re.compile(r"@\w+")
_URL = re.compile(r"(?:https?://|www\.)\S+")
_WORD = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Split a post into lowercase content tokens.

    URLs and @-mentions are dropped, '#' markers are stripped (the tag
    body is kept), punctuation is removed, and tokens shorter than two
    characters are discarded.  Non-Latin scripts pass through.
    """
    lowered = text.lower()
    lowered = _URL.sub(" ", lowered)
    lowered = _RT_MENTION.sub(" ", lowered)
    lowered = _MENTION.sub(" ", lowered)
    tokens = []
    for match in _WORD.finditer(lowered):
        token = match.group().strip("_")
        if len(token) >= 2:
            tokens.append(token)
    return tokens


def stem(token: str) -> str:
    """Stem an English token; anything non-ASCII-alpha passes through."""
    if token.isascii() and token.isalpha():
        return porter_stem(token)
    return token


@dataclass(frozen=True)
class UserDocument:
    """Stem counts for one user's concatenated posts."""

    user_key: str
    stem_counts: Mapping[str, int]
    total_tokens: int


@dataclass(frozen=True)
class DocumentSet:
    """Documents plus the users dropped for having no surviving tokens."""

    documents: tuple[UserDocument, ...]
    omitted_users: tuple[str, ...]


@dataclass(frozen=True)
class StopwordList:
    stems: frozenset[str]
    provenance: str = "built-in"

    def __contains__(self, item: str) -> bool:
        return item in self.stems


_BUNDLED_STOPWORDS = ("english", "german", "french", "russian")


def load_stopwords(path: str | Path | None = None) -> StopwordList:
    """Load a stopword file (one stem per line, '#' comments).

    With no path, the bundled English list is used; the names
    ``english``/``german``/``french``/``russian`` select the other
    bundled lists.  Entries are expected to be pre-stemmed; they are
    lowercased on load.
    """
    if path is None or path in _BUNDLED_STOPWORDS:
        name = path or "english"
        text = (
            resources.files("opforensics._data.stopwords")
            .joinpath(f"{name}.txt")
            .read_text(encoding="utf-8")
        )
        provenance = "built-in" if path is None else f"built-in:{name}"
    else:
        text = Path(path).read_text(encoding="utf-8")
        provenance = str(path)
    stems = set()
    for line in text.splitlines():
        entry = line.split("#", 1)[0].strip().lower()
        if entry:
            stems.add(entry)
    return StopwordList(frozenset(stems), provenance)


def merge_stopwords(*lists: StopwordList) -> StopwordList:
    stems = frozenset().union(*(sl.stems for sl in lists))
    provenance = "+".join(sl.provenance for sl in lists)
    return StopwordList(stems, provenance)


def build_user_documents(corpus, stopwords: StopwordList) -> DocumentSet:
    """One document per user: tokenize -> stem -> drop stopword stems -> count.

    Users left with zero tokens are omitted from the documents and
    listed separately.
    """
    documents = []
    omitted = []
    for user in corpus.users():
        counts: dict[str, int] = {}
        total = 0
        for record in corpus.posts_for(user):
            for token in tokenize(record.text):
                stemmed = stem(token)
                if stemmed in stopwords:
                    continue
                counts[stemmed] = counts.get(stemmed, 0) + 1
                total += 1
        if counts:
            documents.append(UserDocument(user, counts, total))
        else:
            omitted.append(user)
    return DocumentSet(tuple(documents), tuple(omitted))


def top_terms(documents: Iterable[UserDocument], n: int) -> list[tuple[str, int]]:
    """Rank stems by summed count, descending; ties lexicographic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    totals: dict[str, int] = {}
    for doc in documents:
        for term, count in doc.stem_counts.items():
            totals[term] = totals.get(term, 0) + count
    ranked = sorted(totals.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:n]


def write_ranked_terms_csv(ranked: Iterable[tuple[str, int]], path) -> None:
    """Ranked term output as ``stem,count`` rows."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["stem", "count"])
        writer.writerows(ranked)
