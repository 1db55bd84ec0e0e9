"""Command-line pipeline runner with deterministic report files.

Every subcommand reads the corpus named in the config file, writes
``<subcommand>.json`` and ``<subcommand>.csv`` into the output
directory, and finishes with a ``manifest.json`` recording the config
hash, input digest, and seed.  Outputs carry no timestamps and use
stable key order, so a rerun with the same inputs and seed is
byte-identical.  On any pipeline error the partial outputs are removed
and a machine-readable error JSON is printed on stderr.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from datetime import date, datetime, timedelta
from pathlib import Path

from . import __version__
from .behavior import cluster_behaviors, spectral_similarity
from .community import cluster_users_by_language
from .config import AnalysisConfig
from .errors import ConfigurationError, ForensicsError, UnknownUserError
from .ingest import Corpus, analyzable_user_count, load_corpus
from .langid import (
    detect_corpus,
    group_calls_by_user,
    language_histogram,
    load_bundled_profiles,
    polyglot_stats,
)
from .textproc import build_user_documents, load_stopwords, merge_stopwords
from .timeseries import acf, aggregate_daily, bin_hourly, dominant_bins, power_spectrum

_ALL_ORDER = ("ingest-stats", "activity", "languages", "communities", "behaviors")


def activity_timeline(corpus: Corpus) -> tuple[list[date], list[int]]:
    """Per-day total post counts, zero-filled over the corpus span."""
    first, last = corpus.span()
    start, end = first.date(), last.date()
    n_days = (end - start).days + 1
    counts = [0] * n_days
    for record in corpus.records:
        counts[(record.timestamp.date() - start).days] += 1
    return [start + timedelta(days=i) for i in range(n_days)], counts


class _Outputs:
    """Tracks written files so a failed run can clean up after itself."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.written: list[Path] = []

    def write_json(self, name: str, payload) -> None:
        path = self.out_dir / f"{name}.json"
        text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
        path.write_text(text + "\n", encoding="utf-8")
        self.written.append(path)

    def write_csv(self, name: str, header: list[str], rows) -> None:
        path = self.out_dir / f"{name}.csv"
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        self.written.append(path)

    def discard(self) -> None:
        for path in self.written:
            try:
                path.unlink()
            except OSError:
                pass


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _load_stopwords(cfg: AnalysisConfig):
    base = load_stopwords(cfg.stopword_path)
    if cfg.extra_stopword_paths:
        extras = [load_stopwords(p) for p in cfg.extra_stopword_paths]
        return merge_stopwords(base, *extras)
    return base


def _isoformat(stamp: datetime) -> str:
    return stamp.strftime("%Y-%m-%dT%H:%M:%SZ")


def _run_ingest_stats(corpus, cfg, out: _Outputs) -> None:
    stats = corpus.stats
    first, last = corpus.span()
    analyzable = analyzable_user_count(corpus, cfg.min_posts)
    payload = {
        "rows_read": stats.rows_read,
        "rows_rejected": stats.rows_rejected,
        "rows_excluded": stats.rows_excluded,
        "retained": stats.retained,
        "distinct_users": stats.distinct_users,
        "analyzable_users": analyzable,
        "min_posts": cfg.min_posts,
        "span": {"first": _isoformat(first), "last": _isoformat(last)},
    }
    out.write_json("ingest-stats", payload)
    rows = sorted(
        (k, v) for k, v in payload.items() if isinstance(v, int)
    )
    out.write_csv("ingest-stats", ["metric", "value"], rows)


def _run_activity(corpus, cfg, out: _Outputs) -> None:
    dates, counts = activity_timeline(corpus)
    payload = {
        "total": sum(counts),
        "series": [
            {"date": d.isoformat(), "count": c} for d, c in zip(dates, counts)
        ],
    }
    out.write_json("activity", payload)
    out.write_csv(
        "activity",
        ["date", "count"],
        [(d.isoformat(), c) for d, c in zip(dates, counts)],
    )


def _run_languages(corpus, cfg, out: _Outputs) -> None:
    profiles = load_bundled_profiles()
    calls = detect_corpus(corpus, profiles)
    codes = sorted({p.code for p in profiles} | {"und"})
    histograms = {
        code: language_histogram(corpus, calls, code, known_codes=codes)
        for code in codes
    }
    stats = polyglot_stats(group_calls_by_user(corpus, calls))
    payload = {
        "totals": {code: histograms[code].total() for code in codes},
        "histograms": {
            code: [
                {"date": d.isoformat(), "count": c}
                for d, c in zip(histograms[code].dates, histograms[code].counts)
            ]
            for code in codes
        },
        "polyglot": {
            "users_considered": stats.users_considered,
            "pct_users_en_fr_de": stats.pct_users_en_fr_de,
            "pct_users_en_de": stats.pct_users_en_de,
            "msg_share_en_fr_de": stats.msg_share_en_fr_de,
            "msg_share_en_de": stats.msg_share_en_de,
        },
    }
    out.write_json("languages", payload)
    rows = []
    for code in codes:
        series = histograms[code]
        rows.extend(
            (code, d.isoformat(), c) for d, c in zip(series.dates, series.counts)
        )
    out.write_csv("languages", ["code", "date", "count"], rows)


def _run_communities(corpus, cfg, out: _Outputs) -> None:
    stopwords = _load_stopwords(cfg)
    docs = build_user_documents(corpus, stopwords)
    report = cluster_users_by_language(docs.documents, cfg)
    communities = []
    for community, members in report.communities().items():
        communities.append(
            {
                "id": community,
                "members": members,
                "central_users": report.central_users[community],
                "keywords": [
                    {"term": term, "count": count}
                    for term, count in report.keyword_rankings[community][:50]
                ],
            }
        )
    payload = {
        "parameters": report.parameters,
        "n_communities": len(report.partition),
        "modularity": report.partition.q,
        "dynamic_stopword_count": report.dynamic_stopword_count,
        "keyword_count": report.keyword_count,
        "omitted_users": list(docs.omitted_users),
        "communities": communities,
    }
    out.write_json("communities", payload)
    assignment = report.partition.assignment
    out.write_csv(
        "communities",
        ["vertex", "community"],
        [(user, assignment[user]) for user in sorted(assignment)],
    )


def _run_behaviors(corpus, cfg, out: _Outputs, window_spec: str | None) -> None:
    window = cfg.resolve_window(window_spec) if window_spec else cfg.windows["us2016"]
    report = cluster_behaviors(corpus, cfg, window=window)
    users = sorted(report.spectra)
    payload = {
        "parameters": report.parameters,
        "window": {
            "start": _isoformat(report.window[0]),
            "end": _isoformat(report.window[1]),
        },
        "modularity": report.partition.q,
        "zero_variance_users": list(report.zero_variance_users),
        "users": [
            {
                "user": user,
                "posts": report.user_post_counts[user],
                "dominant_bins": dominant_bins(report.spectra[user], 3),
                "days": report.spectra[user].n,
            }
            for user in users
        ],
        "clusters": [
            {"id": community, "members": members}
            for community, members in report.clusters().items()
        ],
        "edges": [
            {"a": a, "b": b, "similarity": w}
            for a, b, w in report.similarity_graph.edges()
        ],
    }
    out.write_json("behaviors", payload)
    rows = []
    for a in users:
        row = [a]
        for b in users:
            row.append(
                "1.0" if a == b else repr(
                    spectral_similarity(report.spectra[a], report.spectra[b])
                )
            )
        rows.append(row)
    out.write_csv("behaviors", ["user"] + users, rows)


def _window_or_span(corpus, cfg, window_spec: str | None):
    if window_spec:
        return cfg.resolve_window(window_spec)
    first, last = corpus.span()
    return first, last + timedelta(seconds=1)


def _run_acf(corpus, cfg, out: _Outputs, user: str, window_spec, max_lag: int) -> None:
    window = _window_or_span(corpus, cfg, window_spec)
    hourly = bin_hourly(corpus, user, window)
    lag = min(max_lag, len(hourly.counts) - 1)
    values = acf(hourly.counts, lag)
    payload = {
        "user": user,
        "window": {"start": _isoformat(window[0]), "end": _isoformat(window[1])},
        "max_lag": lag,
        "values": [float(v) for v in values],
    }
    out.write_json("acf", payload)
    out.write_csv(
        "acf", ["lag", "value"], [(i, repr(float(v))) for i, v in enumerate(values)]
    )


def _run_spectrum(corpus, cfg, out: _Outputs, user: str, window_spec) -> None:
    window = _window_or_span(corpus, cfg, window_spec)
    hourly = bin_hourly(corpus, user, window)
    daily = aggregate_daily(hourly)
    spectrum = power_spectrum(daily.counts, dt=daily.dt)
    payload = {
        "user": user,
        "window": {"start": _isoformat(window[0]), "end": _isoformat(window[1])},
        "days": spectrum.n,
        "dropped_trailing_hours": daily.dropped_hours,
        "dominant_bins": dominant_bins(spectrum, 5),
        "power": [float(p) for p in spectrum.power],
    }
    out.write_json("spectrum", payload)
    out.write_csv(
        "spectrum",
        ["bin", "power"],
        [(b, repr(float(p))) for b, p in enumerate(spectrum.power)],
    )


def _write_manifest(cfg_path: Path, cfg, out: _Outputs, ran: list[str]) -> None:
    payload = {
        "version": __version__,
        "config_sha256": _sha256(cfg_path),
        "input_sha256": _sha256(Path(cfg.csv_path)),
        "seed": cfg.seed,
        "subcommands": ran,
        "parameters": {
            "p": cfg.p,
            "q": cfg.q,
            "k": cfg.k,
            "similarity_threshold": cfg.similarity_threshold,
            "heavy_us": cfg.heavy_us,
            "heavy_de": cfg.heavy_de,
            "heavy_behavior": cfg.heavy_behavior,
            "min_posts": cfg.min_posts,
        },
    }
    out.write_json("manifest", payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opforensics",
        description="Corpus forensics pipeline over a social-media post archive.",
    )
    parser.add_argument("--config", required=True, help="path to the INI config file")
    parser.add_argument("--seed", type=int, default=None, help="override the seed")
    parser.add_argument("--out", default=None, help="override the output directory")
    parser.add_argument(
        "--window",
        default=None,
        help="window name from the config or inline start:end dates",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in ("ingest-stats", "activity", "languages", "communities", "behaviors", "all"):
        sub.add_parser(name)
    acf_parser = sub.add_parser("acf")
    acf_parser.add_argument("user")
    acf_parser.add_argument("--max-lag", type=int, default=168)
    spectrum_parser = sub.add_parser("spectrum")
    spectrum_parser.add_argument("user")
    return parser


def _error_json(subcommand: str, exc: Exception) -> str:
    payload = {
        "error": {
            "type": type(exc).__name__,
            "message": str(exc),
            "subcommand": subcommand,
        }
    }
    if isinstance(exc, UnknownUserError):
        payload["error"]["user"] = str(exc).split("'")[1] if "'" in str(exc) else None
    return json.dumps(payload, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    subcommand = args.subcommand

    try:
        cfg_path = Path(args.config)
        cfg = AnalysisConfig.from_file(cfg_path).with_overrides(
            seed=args.seed, out_dir=args.out
        )
        if not cfg.csv_path:
            raise ConfigurationError("config lacks [data] csv = <path>")
        out_dir = Path(cfg.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        out = _Outputs(out_dir)
        corpus = load_corpus(cfg.csv_path, cfg.schema)
    except ForensicsError as exc:
        print(_error_json(subcommand, exc), file=sys.stderr)
        return 1

    try:
        ran = []
        steps = _ALL_ORDER if subcommand == "all" else (subcommand,)
        for step in steps:
            if step == "ingest-stats":
                _run_ingest_stats(corpus, cfg, out)
            elif step == "activity":
                _run_activity(corpus, cfg, out)
            elif step == "languages":
                _run_languages(corpus, cfg, out)
            elif step == "communities":
                _run_communities(corpus, cfg, out)
            elif step == "behaviors":
                _run_behaviors(corpus, cfg, out, args.window)
            elif step == "acf":
                _run_acf(corpus, cfg, out, args.user, args.window, args.max_lag)
            elif step == "spectrum":
                _run_spectrum(corpus, cfg, out, args.user, args.window)
            ran.append(step)
        _write_manifest(cfg_path, cfg, out, ran)
    except (ForensicsError, ValueError) as exc:
        out.discard()
        print(_error_json(subcommand, exc), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
