"""Run configuration: every tunable of the pipeline in one dataclass.

Config files are plain INI-style key/value text (sections in brackets),
parsed with :mod:`configparser`.  Only the output directory may be
overridden from the environment of the CLI flags; everything else is in
the file so a run is auditable.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from .errors import ConfigurationError
from .ingest import SchemaMap

__all__ = ["AnalysisConfig", "DEFAULT_WINDOWS", "parse_window"]


def _utc(year: int, month: int, day: int) -> datetime:
    return datetime(year, month, day, tzinfo=timezone.utc)


def _parse_date(value: str) -> datetime:
    try:
        parsed = datetime.strptime(value.strip(), "%Y-%m-%d")
    except ValueError as exc:
        raise ConfigurationError(f"bad date {value!r}: {exc}") from None
    return parsed.replace(tzinfo=timezone.utc)


def parse_window(value: str) -> tuple[datetime, datetime]:
    """Parse ``YYYY-MM-DD:YYYY-MM-DD`` into a half-open [start, end) pair."""
    parts = value.split(":")
    if len(parts) != 2:
        raise ConfigurationError(f"window must be start:end, got {value!r}")
    start, end = _parse_date(parts[0]), _parse_date(parts[1])
    if start >= end:
        raise ConfigurationError(f"inverted window: {value!r}")
    return start, end


# Election run-up windows, half-open on the right.
DEFAULT_WINDOWS: dict[str, tuple[datetime, datetime]] = {
    "us2016": (_utc(2016, 7, 18), _utc(2016, 11, 10)),
    "de2017": (_utc(2017, 6, 21), _utc(2017, 9, 2)),
}


@dataclass
class AnalysisConfig:
    """All tunables of the pipeline, with the defaults used throughout."""

    csv_path: str | None = None
    schema: SchemaMap = field(default_factory=SchemaMap.nbc)
    stopword_path: str | None = None  # None -> bundled English list
    extra_stopword_paths: tuple[str, ...] = ()
    p: float = 0.333  # dynamic-stopword user fraction
    q: float = 0.9  # keyword quantile
    k: int = 3  # top-k edge thinning
    similarity_threshold: float = 0.7  # spectral cosine cut (T)
    heavy_us: int = 500
    heavy_de: int = 100
    heavy_behavior: int = 400
    min_posts: int = 1  # analyzable-user cutoff
    windows: dict[str, tuple[datetime, datetime]] = field(
        default_factory=lambda: dict(DEFAULT_WINDOWS)
    )
    seed: int = 0
    out_dir: str = "out"

    def __post_init__(self) -> None:
        for name in ("p", "q", "similarity_threshold"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ConfigurationError(f"{name} must be in (0, 1), got {value}")
        if self.k < 1:
            raise ConfigurationError(f"k must be >= 1, got {self.k}")
        for name in ("heavy_us", "heavy_de", "heavy_behavior", "min_posts"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} must be >= 0")
        for name, (start, end) in self.windows.items():
            if start >= end:
                raise ConfigurationError(f"window {name!r} is inverted")

    def resolve_window(self, spec: str) -> tuple[datetime, datetime]:
        """A window name from the config, or an inline start:end pair."""
        if spec in self.windows:
            return self.windows[spec]
        return parse_window(spec)

    @classmethod
    def from_file(cls, path: str | Path) -> "AnalysisConfig":
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        # no interpolation: raw strftime formats like %Y-%m-%d must survive
        parser = configparser.ConfigParser(
            interpolation=None, inline_comment_prefixes=(";",)
        )
        try:
            parser.read_string(path.read_text(encoding="utf-8"))
        except configparser.Error as exc:
            raise ConfigurationError(f"{path}: {exc}") from None

        def get(section: str, option: str, fallback=None):
            return parser.get(section, option, fallback=fallback)

        schema = SchemaMap(
            user_key=get("data", "user_column", "user_key"),
            timestamp=get("data", "time_column", "created_str"),
            text=get("data", "text_column", "text"),
            post_id=get("data", "id_column", "tweet_id") or None,
            timestamp_format=get("data", "time_format", "%Y-%m-%d %H:%M:%S"),
        )

        windows = dict(DEFAULT_WINDOWS)
        if parser.has_section("windows"):
            for name, value in parser.items("windows"):
                windows[name] = parse_window(value)

        extra = get("textproc", "extra_stopwords", "") or ""
        extra_paths = tuple(p.strip() for p in extra.split(",") if p.strip())
        stopword_path = get("textproc", "stopwords", "") or None
        if stopword_path in ("builtin", "built-in"):
            stopword_path = None

        try:
            return cls(
                csv_path=get("data", "csv"),
                schema=schema,
                stopword_path=stopword_path,
                extra_stopword_paths=extra_paths,
                p=float(get("analysis", "p", "0.333")),
                q=float(get("analysis", "q", "0.9")),
                k=int(get("analysis", "k", "3")),
                similarity_threshold=float(
                    get("analysis", "similarity_threshold", "0.7")
                ),
                heavy_us=int(get("analysis", "heavy_us", "500")),
                heavy_de=int(get("analysis", "heavy_de", "100")),
                heavy_behavior=int(get("analysis", "heavy_behavior", "400")),
                min_posts=int(get("analysis", "min_posts", "1")),
                windows=windows,
                seed=int(get("analysis", "seed", "0")),
                out_dir=get("output", "dir", "out"),
            )
        except ValueError as exc:
            raise ConfigurationError(f"{path}: {exc}") from None

    def with_overrides(
        self, seed: int | None = None, out_dir: str | None = None
    ) -> "AnalysisConfig":
        updated = self
        if seed is not None:
            updated = replace(updated, seed=seed)
        if out_dir is not None:
            updated = replace(updated, out_dir=out_dir)
        return updated
