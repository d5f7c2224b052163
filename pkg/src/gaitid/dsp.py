"""Signal-processing primitives: magnitude DFT, peak finding, spectral centroid."""

from __future__ import annotations

import numpy as np

from .signal_model import Spectrum


def dft_magnitude(series) -> Spectrum:
    """Full two-sided magnitude spectrum of a real series, DC included.

    bins[m] = | sum_k series[k] * exp(-2*pi*i*k*m/l) | for m = 0..l-1.
    """
    arr = np.asarray(series, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("series must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("series contains non-finite entries")
    return Spectrum(np.abs(np.fft.fft(arr)))


def find_peaks(series) -> np.ndarray:
    """Indices of strict local maxima (greater than both neighbours).

    Endpoints are never peaks; plateau points fail the strict test.
    """
    arr = np.asarray(series, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("series must be a non-empty 1-d sequence")
    if arr.size < 3:
        return np.empty(0, dtype=np.int64)
    interior = (arr[1:-1] > arr[:-2]) & (arr[1:-1] > arr[2:])
    return (np.nonzero(interior)[0] + 1).astype(np.int64)


def spectral_centroid(time_series, spectrum: Spectrum) -> float:
    """Acceleration samples weighted by same-index magnitude bins, averaged.

    Returns (sum_k x_k * f_k) / l where f_k is the magnitude DFT bin at the
    same index as time sample x_k.
    """
    arr = np.asarray(time_series, dtype=np.float64)
    if arr.shape != spectrum.bins.shape:
        raise ValueError("time series and spectrum lengths must match")
    return float(np.dot(arr, spectrum.bins) / arr.size)
