"""Seeded synthetic corpora with planted structure.

Two generators back the recovery tests and demo runs: disjoint
vocabulary groups salted with shared noise words (the language
pipeline should recover the groups), and posting-tempo archetypes
(the behaviour pipeline should recover the archetypes).  Synthetic
words carry digits so the stemmer leaves them untouched.
"""

from __future__ import annotations

import csv
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .ingest import Corpus, PostRecord

__all__ = [
    "planted_language_corpus",
    "planted_tempo_corpus",
    "planted_mixed_corpus",
    "write_corpus_csv",
    "TEMPO_ARCHETYPES",
]

_UTC = timezone.utc
DEFAULT_START = datetime(2016, 7, 18, tzinfo=_UTC)

TEMPO_ARCHETYPES = ("persistent", "dayburst", "fourday")


def planted_language_corpus(
    n_groups: int = 4,
    users_per_group: int = 15,
    seed: int = 0,
    tokens_per_user: int = 200,
    noise_fraction: float = 0.2,
    group_vocab_size: int = 15,
    noise_vocab_size: int = 10,
    start: datetime = DEFAULT_START,
) -> Corpus:
    """Users drawing from disjoint group vocabularies plus shared noise.

    Each user's tokens come ``1 - noise_fraction`` from the group
    vocabulary and the rest from a noise vocabulary common to everyone,
    so the noise words become dynamic stopwords of the corpus.
    """
    rng = np.random.default_rng(seed)
    group_vocab = [
        [f"g{g}w{i}x" for i in range(group_vocab_size)] for g in range(n_groups)
    ]
    noise_vocab = [f"noise{i}z" for i in range(noise_vocab_size)]
    n_noise = int(round(tokens_per_user * noise_fraction))
    n_own = tokens_per_user - n_noise

    records = []
    for g in range(n_groups):
        for u in range(users_per_group):
            user = f"lang{g}user{u:02d}"
            tokens = [
                group_vocab[g][i] for i in rng.integers(0, group_vocab_size, n_own)
            ]
            tokens += [noise_vocab[i] for i in rng.integers(0, noise_vocab_size, n_noise)]
            rng.shuffle(tokens)
            for p, lo in enumerate(range(0, len(tokens), 8)):
                stamp = start + timedelta(hours=6 * p, minutes=(g * 17 + u) % 60)
                records.append(
                    PostRecord(
                        user_key=user,
                        timestamp=stamp,
                        text=" ".join(tokens[lo : lo + 8]),
                        post_id=f"{user}-{p}",
                    )
                )
    return Corpus.from_records(records)


def planted_group_labels(corpus: Corpus) -> dict[str, int]:
    """Ground truth for :func:`planted_language_corpus` users."""
    labels = {}
    for user in corpus.users():
        if user.startswith("lang"):
            labels[user] = int(user[4:].split("user")[0])
    return labels


def _daily_counts(archetype: str, days: int, phase: float, rng) -> np.ndarray:
    d = np.arange(days)
    if archetype == "persistent":
        # slow envelope: one cycle over the whole window
        signal = 60 + 40 * np.sin(2 * np.pi * d / days + phase)
    elif archetype == "dayburst":
        # daily posting bursts whose volume follows a weekly cycle
        signal = 56 + 28 * np.sin(2 * np.pi * d / 7 + phase)
    elif archetype == "fourday":
        signal = 50 + 30 * np.sin(2 * np.pi * d / 4 + phase)
    else:
        raise ValueError(f"unknown archetype {archetype!r}")
    noisy = signal + rng.normal(0.0, 2.0, size=days)
    return np.maximum(0, np.round(noisy)).astype(int)


def planted_tempo_corpus(
    seed: int = 0,
    start: datetime = DEFAULT_START,
    days: int = 112,
    users_per_archetype: int = 4,
    scale: float = 1.0,
) -> Corpus:
    """Heavy posters in three tempo archetypes over ``days`` days.

    ``persistent`` users drift on a window-long envelope, ``dayburst``
    users post in a fixed afternoon block with a weekly volume cycle,
    and ``fourday`` users run a four-day cycle (bin ``days/4`` of the
    daily spectrum).  ``scale`` shrinks volumes for faster fixtures.
    """
    rng = np.random.default_rng(seed)
    records = []
    for a, archetype in enumerate(TEMPO_ARCHETYPES):
        for u in range(users_per_archetype):
            user = f"{archetype}{u:02d}"
            phase = rng.uniform(0, 2 * np.pi)
            counts = _daily_counts(archetype, days, phase, rng)
            if scale != 1.0:
                counts = np.maximum(0, np.round(counts * scale)).astype(int)
            for day, count in enumerate(counts):
                for j in range(count):
                    if archetype == "dayburst":
                        hour = 12 + (j % 6)
                    else:
                        hour = (j * 24) // max(count, 1)
                    stamp = start + timedelta(
                        days=day, hours=int(hour), minutes=(7 * j) % 60,
                        seconds=(13 * j) % 60,
                    )
                    records.append(
                        PostRecord(
                            user_key=user,
                            timestamp=stamp,
                            text=f"u{a}{u}w{j % 3}x tick{day % 5}z",
                            post_id=f"{user}-{day}-{j}",
                        )
                    )
    return Corpus.from_records(records)


def planted_archetype_labels(corpus: Corpus) -> dict[str, int]:
    """Ground truth for :func:`planted_tempo_corpus` users."""
    labels = {}
    for user in corpus.users():
        for a, archetype in enumerate(TEMPO_ARCHETYPES):
            if user.startswith(archetype):
                labels[user] = a
    return labels


def planted_mixed_corpus(seed: int = 0, start: datetime = DEFAULT_START) -> Corpus:
    """Language groups plus tempo users in one corpus (for CLI runs)."""
    lang = planted_language_corpus(seed=seed, start=start)
    tempo = planted_tempo_corpus(seed=seed, start=start, scale=0.25)
    return Corpus.from_records(lang.records + tempo.records)


def write_corpus_csv(corpus: Corpus, path: str | Path) -> Path:
    """Dump records in the default schema's column layout."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["user_key", "created_str", "text", "tweet_id"])
        for record in corpus.records:
            writer.writerow(
                [
                    record.user_key,
                    record.timestamp.strftime("%Y-%m-%d %H:%M:%S"),
                    record.text,
                    record.post_id or "",
                ]
            )
    return path
