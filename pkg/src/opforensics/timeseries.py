"""Per-user activity series, autocorrelation, and power spectra.

Hourly counts are zero-filled over the whole analysis window, reduced
to daily counts by non-overlapping 24-bin sums (the trailing partial
day is dropped, never padded), and transformed with an unnormalized
DFT after mean correction.  Power spectra keep the complex
coefficients so selected bins can be inverted back to a time series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Sequence

import numpy as np

from .errors import InsufficientDataError, UndefinedAcfError, UnknownUserError
from .ingest import Corpus

__all__ = [
    "HourlySeries",
    "DailySeries",
    "PowerSpectrum",
    "bin_hourly",
    "aggregate_daily",
    "acf",
    "mean_correct",
    "power_spectrum",
    "dominant_bins",
    "reconstruct",
    "bin_to_period",
]

HOUR = timedelta(hours=1)
DAY = timedelta(hours=24)


@dataclass(frozen=True)
class HourlySeries:
    user_key: str
    start: datetime
    counts: np.ndarray  # one bin per hour, zero-filled
    dt: timedelta = HOUR

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class DailySeries:
    user_key: str
    start: datetime
    counts: np.ndarray
    dropped_hours: int  # trailing partial day, reported not padded
    dt: timedelta = DAY

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class PowerSpectrum:
    """Squared DFT magnitudes of a mean-corrected series.

    ``power[b] = |X_b|^2`` for bins 0..N//2; the full complex
    coefficient vector is retained for reconstruction.
    """

    n: int
    dt: timedelta
    power: np.ndarray
    coefficients: np.ndarray = field(repr=False)
    mean_corrected: bool = True

    def total_power(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


def bin_hourly(
    corpus: Corpus, user: str, window: tuple[datetime, datetime]
) -> HourlySeries:
    """Hourly post counts for one user over [start, end), explicit zeros."""
    start, end = window
    if start >= end:
        raise ValueError(f"inverted window: {start} >= {end}")
    if user not in corpus.user_index:
        raise UnknownUserError(f"user {user!r} not present in corpus")
    n_bins = math.ceil((end - start) / HOUR)
    counts = np.zeros(n_bins, dtype=np.int64)
    for record in corpus.posts_for(user):
        if start <= record.timestamp < end:
            counts[int((record.timestamp - start) // HOUR)] += 1
    return HourlySeries(user, start, counts)


def aggregate_daily(hourly: HourlySeries) -> DailySeries:
    """Tumbling 24-hour sums; the trailing partial day is dropped."""
    n_days = len(hourly.counts) // 24
    dropped = len(hourly.counts) - 24 * n_days
    daily = hourly.counts[: 24 * n_days].reshape(n_days, 24).sum(axis=1)
    return DailySeries(hourly.user_key, hourly.start, daily, dropped)


def acf(series: Sequence[float] | np.ndarray, max_lag: int) -> np.ndarray:
    """Sample autocorrelation r[0..max_lag] with r[0] = 1."""
    x = np.asarray(series, dtype=float)
    if max_lag < 1:
        raise ValueError(f"max_lag must be >= 1, got {max_lag}")
    if max_lag >= len(x):
        raise ValueError(f"max_lag {max_lag} must be < series length {len(x)}")
    centered = x - x.mean()
    denom = float(np.dot(centered, centered))
    if denom <= 0.0:
        raise UndefinedAcfError("constant series has no autocorrelation")
    out = np.empty(max_lag + 1)
    for lag in range(max_lag + 1):
        out[lag] = np.dot(centered[: len(x) - lag], centered[lag:]) / denom
    return out


def mean_correct(series: Sequence[float] | np.ndarray) -> np.ndarray:
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        return x
    return x - x.mean()


def power_spectrum(
    series: Sequence[float] | np.ndarray, dt: timedelta = DAY
) -> PowerSpectrum:
    """DFT power of the mean-corrected series, bins 0..N//2.

    Mean correction is applied internally (and recorded), so the DC bin
    carries no power.  Unnormalized convention: sum over all N bins of
    |X_b|^2 equals N times the corrected series energy.
    """
    x = np.asarray(series, dtype=float)
    n = len(x)
    if n < 4:
        raise InsufficientDataError(f"series too short for a spectrum: {n} < 4")
    corrected = x - x.mean()
    coefficients = np.fft.fft(corrected)
    power = np.abs(coefficients[: n // 2 + 1]) ** 2
    return PowerSpectrum(n=n, dt=dt, power=power, coefficients=coefficients)


def dominant_bins(spectrum: PowerSpectrum, n: int) -> list[int]:
    """Bins 1..N/2 by descending power; ties broken toward lower bins."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    candidates = range(1, spectrum.n // 2 + 1)
    ranked = sorted(candidates, key=lambda b: (-spectrum.power[b], b))
    return ranked[:n]


def reconstruct(spectrum: PowerSpectrum, bins: Sequence[int]) -> np.ndarray:
    """Invert the DFT keeping only the selected bins and their mirrors."""
    n = spectrum.n
    selected = np.zeros(n, dtype=complex)
    for b in bins:
        if not 1 <= b <= n // 2:
            raise ValueError(f"bin {b} outside 1..{n // 2}")
        selected[b] = spectrum.coefficients[b]
        if b != n - b:
            selected[n - b] = spectrum.coefficients[n - b]
    signal = np.fft.ifft(selected)
    residue = float(np.max(np.abs(signal.imag))) if n else 0.0
    scale = max(1.0, float(np.max(np.abs(signal.real))) if n else 1.0)
    if residue > 1e-9 * scale:
        raise ValueError(f"reconstruction not real: imaginary residue {residue}")
    return signal.real


def bin_to_period(bin_index: int, n: int, dt: timedelta) -> timedelta:
    """Period of a spectral bin: N * dt / bin."""
    if bin_index < 1:
        raise ValueError("bin 0 has no finite period")
    if bin_index > n // 2:
        raise ValueError(f"bin {bin_index} beyond Nyquist {n // 2}")
    return dt * (n / bin_index)
