"""Per-window feature extraction: the canonical 30-dimensional vector.

Seven feature families over time and frequency domains. The frequency
domain of an axis is the full two-sided magnitude DFT of its window
(see gaitid.dsp). Canonical slot layout:

    0-2    time mean x/y/z
    3-5    freq mean x/y/z
    6-8    time median x/y/z
    9-11   freq median x/y/z
    12     time magnitude (mean Euclidean norm of tri-axial samples)
    13     freq magnitude (same, over magnitude-spectrum bins)
    14-15  time Corr_xz, Corr_yz (ratios of axis means to the z mean)
    16-17  freq Corr_xz, Corr_yz
    18-20  peak count x/y/z (time domain)
    21-23  mean peak spacing x/y/z (time domain, seconds)
    24-26  spectral centroid x/y/z
    27-29  mean absolute deviation x/y/z (time domain)
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from . import dsp
from .signal_model import N_FEATURES, Dataset, FeatureVector, Window

#: Denominator guard for the Corr features.
CORR_EPSILON = 1e-9

FEATURE_NAMES = (
    "time_mean_x", "time_mean_y", "time_mean_z",
    "freq_mean_x", "freq_mean_y", "freq_mean_z",
    "time_median_x", "time_median_y", "time_median_z",
    "freq_median_x", "freq_median_y", "freq_median_z",
    "time_magnitude",
    "freq_magnitude",
    "time_corr_xz", "time_corr_yz",
    "freq_corr_xz", "freq_corr_yz",
    "peak_count_x", "peak_count_y", "peak_count_z",
    "peak_spacing_x", "peak_spacing_y", "peak_spacing_z",
    "spectral_centroid_x", "spectral_centroid_y", "spectral_centroid_z",
    "mad_x", "mad_y", "mad_z",
)

assert len(FEATURE_NAMES) == N_FEATURES


def mean(series) -> float:
    arr = np.asarray(series, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("mean of empty series")
    return float(arr.mean())


def median(series) -> float:
    """Middle element of the sorted series; average of the two middles for even length."""
    arr = np.asarray(series, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("median of empty series")
    return float(np.median(arr))


def magnitude(a, b, c) -> float:
    """Mean Euclidean norm of the three equal-length series."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if not (a.shape == b.shape == c.shape):
        raise ValueError("series lengths must match")
    return float(np.mean(np.sqrt(a * a + b * b + c * c)))


def cross_correlation(numerator_mean: float, z_mean: float):
    """Ratio of an axis mean to the z-axis mean (not statistical correlation).

    Returns (value, degenerate). When |z_mean| <= CORR_EPSILON the value is
    substituted with 0 and degenerate is True so a single still window cannot
    abort batch featurization.
    """
    if abs(z_mean) <= CORR_EPSILON:
        return 0.0, True
    return numerator_mean / z_mean, False


def peak_count(series) -> int:
    return int(len(dsp.find_peaks(series)))


def mean_peak_spacing(series, rate_hz: float) -> float:
    """Average time interval between successive peaks, in seconds.

    Fewer than two peaks yields 0.
    """
    peaks = dsp.find_peaks(series)
    if len(peaks) < 2:
        return 0.0
    return float(np.mean(np.diff(peaks)) / rate_hz)


def mean_abs_deviation(series) -> float:
    arr = np.asarray(series, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("mean_abs_deviation of empty series")
    return float(np.mean(np.abs(arr - arr.mean())))


def extract_feature_vector(win: Window) -> FeatureVector:
    """Fill the canonical 30-slot layout for one window.

    The three per-axis magnitude spectra are computed once and reused by all
    frequency features. Degenerate Corr denominators are counted in the
    returned vector's ``degenerate_flags``.
    """
    if len(win) < 2:
        raise ValueError("window must contain at least 2 samples")
    tx, ty, tz = win.series_x, win.series_y, win.series_z
    sx = dsp.dft_magnitude(tx)
    sy = dsp.dft_magnitude(ty)
    sz = dsp.dft_magnitude(tz)
    fx, fy, fz = sx.bins, sy.bins, sz.bins

    t_means = (mean(tx), mean(ty), mean(tz))
    f_means = (mean(fx), mean(fy), mean(fz))

    flags = 0
    t_corr_xz, d1 = cross_correlation(t_means[0], t_means[2])
    t_corr_yz, d2 = cross_correlation(t_means[1], t_means[2])
    f_corr_xz, d3 = cross_correlation(f_means[0], f_means[2])
    f_corr_yz, d4 = cross_correlation(f_means[1], f_means[2])
    flags = sum((d1, d2, d3, d4))

    values = np.array([
        *t_means,
        *f_means,
        median(tx), median(ty), median(tz),
        median(fx), median(fy), median(fz),
        magnitude(tx, ty, tz),
        magnitude(fx, fy, fz),
        t_corr_xz, t_corr_yz,
        f_corr_xz, f_corr_yz,
        peak_count(tx), peak_count(ty), peak_count(tz),
        mean_peak_spacing(tx, win.rate_hz),
        mean_peak_spacing(ty, win.rate_hz),
        mean_peak_spacing(tz, win.rate_hz),
        dsp.spectral_centroid(tx, sx),
        dsp.spectral_centroid(ty, sy),
        dsp.spectral_centroid(tz, sz),
        mean_abs_deviation(tx), mean_abs_deviation(ty), mean_abs_deviation(tz),
    ])
    return FeatureVector(values, win.user_id, flags)


def featurize_windows(windows, class_count=None) -> Dataset:
    rows = [extract_feature_vector(w) for w in windows]
    return Dataset.from_rows(rows, class_count)


class SchemaError(ValueError):
    pass


def write_feature_csv(dataset: Dataset, path) -> None:
    """Write the interchange CSV: 30 canonical columns plus ``label``.

    Floats are written with shortest round-trip repr, so reading the file
    back reproduces the values bit-identically.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(FEATURE_NAMES) + ["label"])
        for row, label in zip(dataset.X, dataset.y):
            writer.writerow([repr(float(v)) for v in row] + [int(label)])


def read_feature_csv(path) -> Dataset:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty feature file") from None
        expected = list(FEATURE_NAMES) + ["label"]
        missing = [c for c in expected if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing columns: {', '.join(missing)}")
        col = [header.index(c) for c in expected]
        X, y = [], []
        for line in reader:
            if not line:
                continue
            X.append([float(line[c]) for c in col[:-1]])
            y.append(int(line[col[-1]]))
    if not X:
        raise SchemaError(f"{path}: no feature rows")
    y = np.array(y, dtype=np.int64)
    return Dataset(np.array(X), y, int(y.max()) + 1)
