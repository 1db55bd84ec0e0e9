"""Rank-order character-trigram language identification.

Profiles are the 300 most frequent character trigrams of a training
corpus, ranked.  A text is scored against each profile by summing rank
differences over shared trigrams (with an out-of-profile penalty equal
to the profile length); the lowest distance wins, and the normalized
margin over the runner-up becomes the confidence score.  Short texts
and narrow margins resolve to "und".  When most letters are Cyrillic,
only Cyrillic-script profiles compete.
"""

from __future__ import annotations

import csv
import re
from collections import Counter
from dataclasses import dataclass
from datetime import date, timedelta
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import ConfigurationError, InsufficientDataError
from .ingest import Corpus

__all__ = [
    "LanguageProfile",
    "LanguageCall",
    "DateSeries",
    "PolyglotStats",
    "build_profile",
    "detect",
    "detect_corpus",
    "group_calls_by_user",
    "language_histogram",
    "polyglot_stats",
    "load_bundled_profiles",
    "read_profile",
    "write_profile",
    "write_histogram_csv",
]

PROFILE_SIZE = 300
MIN_LETTERS = 20
DEFAULT_THRESHOLD = 0.05
MIN_TRAINING_CHARS = 10_000

_LETTER_RUN = re.compile(r"[^\W\d_]+", re.UNICODE)
BUNDLED_CODES = ("de", "en", "fr", "ru")


def _normalize(text: str) -> str:
    """Lowercase and collapse every non-letter run to a single space."""
    words = _LETTER_RUN.findall(text.lower())
    return " ".join(words)


def _trigram_counts(normalized: str) -> Counter:
    return Counter(
        normalized[i : i + 3] for i in range(len(normalized) - 2)
    )


def _rank(counts: Counter, size: int) -> dict[str, int]:
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return {gram: rank for rank, (gram, _) in enumerate(ordered[:size], start=1)}


def _cyrillic_fraction(text: str) -> float:
    letters = [c for c in text if c.isalpha()]
    if not letters:
        return 0.0
    cyrillic = sum(1 for c in letters if "Ѐ" <= c <= "ӿ")
    return cyrillic / len(letters)


@dataclass(frozen=True)
class LanguageProfile:
    code: str
    ranks: Mapping[str, int]  # trigram -> 1-based rank, unique

    def __len__(self) -> int:
        return len(self.ranks)

    @property
    def is_cyrillic(self) -> bool:
        return _cyrillic_fraction("".join(self.ranks)) > 0.5


@dataclass(frozen=True)
class LanguageCall:
    post_id: str | None
    code: str  # ISO-ish code, or "und" when undecided
    score: float  # normalized margin in [0, 1]


@dataclass(frozen=True)
class DateSeries:
    """Per-day counts, zero-filled across the corpus span."""

    dates: tuple[date, ...]
    counts: tuple[int, ...]
    unknown_code: bool = False

    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class PolyglotStats:
    """Language-crossing user shares, as percentages.

    User percentages are over users with at least one decided call;
    message shares are over every post in the corpus.
    """

    users_considered: int
    pct_users_en_fr_de: float
    pct_users_en_de: float
    msg_share_en_fr_de: float
    msg_share_en_de: float


def build_profile(training_text: str, code: str) -> LanguageProfile:
    """Profile the ``PROFILE_SIZE`` most frequent trigrams of a corpus."""
    if len(training_text) < MIN_TRAINING_CHARS:
        raise InsufficientDataError(
            f"training text for {code!r} too short: "
            f"{len(training_text)} < {MIN_TRAINING_CHARS} characters"
        )
    counts = _trigram_counts(_normalize(training_text))
    if not counts:
        raise InsufficientDataError(f"no trigrams in training text for {code!r}")
    return LanguageProfile(code, _rank(counts, PROFILE_SIZE))


def _distance(text_ranks: Mapping[str, int], profile: LanguageProfile) -> float:
    penalty = len(profile)
    total = 0.0
    for gram, rank in text_ranks.items():
        profile_rank = profile.ranks.get(gram)
        total += penalty if profile_rank is None else abs(rank - profile_rank)
    return total


def detect(
    text: str,
    profiles: Sequence[LanguageProfile],
    *,
    threshold: float = DEFAULT_THRESHOLD,
    min_letters: int = MIN_LETTERS,
    post_id: str | None = None,
) -> LanguageCall:
    """Classify one text against the loaded profiles."""
    if not profiles:
        raise ConfigurationError("no language profiles loaded")
    normalized = _normalize(text)
    letters = sum(1 for c in normalized if c != " ")
    if letters < min_letters:
        return LanguageCall(post_id, "und", 0.0)

    candidates = list(profiles)
    if _cyrillic_fraction(normalized) > 0.5:
        cyrillic = [p for p in candidates if p.is_cyrillic]
        if not cyrillic:
            return LanguageCall(post_id, "und", 0.0)
        candidates = cyrillic

    text_ranks = _rank(_trigram_counts(normalized), PROFILE_SIZE)
    scored = sorted(
        ((_distance(text_ranks, p), p.code) for p in candidates),
        key=lambda item: (item[0], item[1]),
    )
    if len(scored) == 1:
        return LanguageCall(post_id, scored[0][1], 1.0)
    best, second = scored[0], scored[1]
    margin = (second[0] - best[0]) / second[0] if second[0] > 0 else 0.0
    if margin < threshold:
        return LanguageCall(post_id, "und", margin)
    return LanguageCall(post_id, best[1], margin)


def detect_corpus(
    corpus: Corpus,
    profiles: Sequence[LanguageProfile],
    *,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[LanguageCall]:
    """One call per record, aligned with ``corpus.records``."""
    return [
        detect(record.text, profiles, threshold=threshold, post_id=record.post_id)
        for record in corpus.records
    ]


def group_calls_by_user(
    corpus: Corpus, calls: Sequence[LanguageCall]
) -> dict[str, list[LanguageCall]]:
    if len(calls) != len(corpus.records):
        raise ValueError(
            f"calls ({len(calls)}) do not cover the corpus ({len(corpus.records)})"
        )
    grouped: dict[str, list[LanguageCall]] = {}
    for record, call in zip(corpus.records, calls):
        grouped.setdefault(record.user_key, []).append(call)
    return grouped


def language_histogram(
    corpus: Corpus,
    calls: Sequence[LanguageCall],
    code: str,
    known_codes: Iterable[str] | None = None,
) -> DateSeries:
    """Daily counts of posts called ``code``, zero-filled over the span.

    ``known_codes`` names the codes the detector could have produced
    (defaults to the codes present in ``calls``); asking for anything
    else yields an empty series flagged rather than raising.
    """
    if len(calls) != len(corpus.records):
        raise ValueError(
            f"calls ({len(calls)}) do not cover the corpus ({len(corpus.records)})"
        )
    if known_codes is None:
        known_codes = {call.code for call in calls}
    if code not in set(known_codes):
        return DateSeries((), (), unknown_code=True)
    first, last = corpus.span()
    start, end = first.date(), last.date()
    n_days = (end - start).days + 1
    counts = [0] * n_days
    for record, call in zip(corpus.records, calls):
        if call.code == code:
            counts[(record.timestamp.date() - start).days] += 1
    dates = tuple(start + timedelta(days=i) for i in range(n_days))
    return DateSeries(dates, tuple(counts))


def polyglot_stats(calls_by_user: Mapping[str, Sequence[LanguageCall]]) -> PolyglotStats:
    """Cross-language usage shares over users with a decided language."""
    total_messages = sum(len(calls) for calls in calls_by_user.values())
    decided_users = {
        user: {call.code for call in calls if call.code != "und"}
        for user, calls in calls_by_user.items()
    }
    decided_users = {u: langs for u, langs in decided_users.items() if langs}
    considered = len(decided_users)

    tri = {u for u, langs in decided_users.items() if {"en", "fr", "de"} <= langs}
    bi = {u for u, langs in decided_users.items() if {"en", "de"} <= langs}

    def pct(part: int, whole: int) -> float:
        return 100.0 * part / whole if whole else 0.0

    msgs_tri = sum(len(calls_by_user[u]) for u in tri)
    msgs_bi = sum(len(calls_by_user[u]) for u in bi)
    return PolyglotStats(
        users_considered=considered,
        pct_users_en_fr_de=pct(len(tri), considered),
        pct_users_en_de=pct(len(bi), considered),
        msg_share_en_fr_de=pct(msgs_tri, total_messages),
        msg_share_en_de=pct(msgs_bi, total_messages),
    )


def write_histogram_csv(series: DateSeries, path: str | Path) -> None:
    """Per-day counts as ``date,count`` rows."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["date", "count"])
        for day, count in zip(series.dates, series.counts):
            writer.writerow([day.isoformat(), count])


def write_profile(profile: LanguageProfile, path: str | Path) -> None:
    """One ``trigram<TAB>rank`` line per entry, rank order."""
    lines = sorted(profile.ranks.items(), key=lambda item: item[1])
    text = "".join(f"{gram}\t{rank}\n" for gram, rank in lines)
    Path(path).write_text(text, encoding="utf-8")


def _parse_profile(text: str, code: str) -> LanguageProfile:
    ranks: dict[str, int] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        gram, _, rank = line.partition("\t")
        ranks[gram] = int(rank)
    if len(set(ranks.values())) != len(ranks):
        raise ConfigurationError(f"profile {code!r} has duplicate ranks")
    return LanguageProfile(code, ranks)


def read_profile(path: str | Path, code: str | None = None) -> LanguageProfile:
    path = Path(path)
    return _parse_profile(
        path.read_text(encoding="utf-8"), code or path.stem
    )


def load_bundled_profiles() -> list[LanguageProfile]:
    """The shipped en/de/fr/ru profiles."""
    profiles = []
    root = resources.files("opforensics._data.profiles")
    for code in BUNDLED_CODES:
        text = root.joinpath(f"{code}.tsv").read_text(encoding="utf-8")
        profiles.append(_parse_profile(text, code))
    return profiles
