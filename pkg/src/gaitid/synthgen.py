"""Deterministic synthetic gait generator.

Stands in for a real multi-user walking corpus: each user gets a
two-harmonic sinusoid per axis (distinct step frequency, amplitudes, and
phases) plus Gaussian noise and a gravity-like z baseline. Not a
biomechanical model; just enough structure that the time- and
frequency-domain features separate users.

Step frequencies are drawn from a seed-permuted 0.05 Hz grid, so any two
users under one seed are at least 0.05 Hz apart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import segment_windows
from .signal_model import Dataset, Recording
from .features import extract_feature_vector

#: Step-frequency grid: 1.4 Hz up in 0.05 Hz steps.
_FREQ_GRID_START = 1.4
_FREQ_GRID_STEP = 0.05
_FREQ_GRID_SIZE = 72  # keeps every slot below 5 Hz

DEFAULT_NOISE_SIGMA = 0.6
DEFAULT_RATE_HZ = 50.0


@dataclass(frozen=True)
class GaitProfile:
    user_id: int
    step_freq: float
    amplitude: tuple
    phase: tuple
    harmonic_2_gain: float
    noise_sigma: float
    baseline: tuple

    def __post_init__(self):
        if not 0.5 <= self.step_freq <= 5.0:
            raise ValueError("step_freq out of range [0.5, 5]")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if any(a < 0 for a in self.amplitude):
            raise ValueError("amplitudes must be >= 0")


def _rng(*key) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


def generate_profile(user_id: int, seed: int,
                     noise_sigma: float = DEFAULT_NOISE_SIGMA) -> GaitProfile:
    """Deterministic per-user gait parameters for one seed."""
    if user_id >= _FREQ_GRID_SIZE:
        raise ValueError(f"at most {_FREQ_GRID_SIZE} distinct users per seed")
    grid_perm = _rng(seed).permutation(_FREQ_GRID_SIZE)
    step_freq = _FREQ_GRID_START + _FREQ_GRID_STEP * int(grid_perm[user_id])
    rng = _rng(seed, user_id)
    return GaitProfile(
        user_id=user_id,
        step_freq=step_freq,
        amplitude=tuple(rng.uniform(0.6, 1.8, size=3)),
        phase=tuple(rng.uniform(0.0, 2.0 * np.pi, size=3)),
        harmonic_2_gain=float(rng.uniform(0.15, 0.5)),
        noise_sigma=noise_sigma,
        baseline=(
            float(rng.uniform(-0.3, 0.3)),
            float(rng.uniform(-0.3, 0.3)),
            -9.8 + float(rng.uniform(-0.2, 0.2)),
        ),
    )


def generate_recording(profile: GaitProfile, duration_s: float,
                       rate_hz: float = DEFAULT_RATE_HZ, seed: int = 0) -> Recording:
    """Two-harmonic sinusoid per axis plus Gaussian noise, seeded."""
    if duration_s <= 0:
        raise ValueError("duration_s must be positive")
    n = int(round(duration_s * rate_hz))
    k = np.arange(n)
    rng = _rng(seed, profile.user_id, 1)
    xyz = np.empty((n, 3))
    for a in range(3):
        base = profile.baseline[a]
        amp = profile.amplitude[a]
        phase = profile.phase[a]
        arg = 2.0 * np.pi * profile.step_freq * k / rate_hz + phase
        xyz[:, a] = (
            base
            + amp * np.sin(arg)
            + profile.harmonic_2_gain * amp * np.sin(2.0 * arg)
            + rng.normal(0.0, profile.noise_sigma, size=n)
        )
    return Recording(profile.user_id, rate_hz, xyz)


def recording_duration_for_windows(window_count: int, width: int = 100,
                                   overlap_fraction: float = 0.5,
                                   rate_hz: float = DEFAULT_RATE_HZ) -> float:
    """Duration (seconds) yielding exactly ``window_count`` full windows."""
    step = round(width * (1.0 - overlap_fraction))
    n = width + (window_count - 1) * step
    return n / rate_hz


def generate_benchmark_dataset(user_count: int = 10, windows_per_user: int = 360,
                               seed: int = 0,
                               noise_sigma: float = DEFAULT_NOISE_SIGMA,
                               rate_hz: float = DEFAULT_RATE_HZ,
                               width: int = 100,
                               overlap_fraction: float = 0.5) -> Dataset:
    """Featurized multi-user dataset at the target scale (~3600 rows by default)."""
    if user_count < 2:
        raise ValueError("user_count must be >= 2")
    duration = recording_duration_for_windows(windows_per_user, width,
                                              overlap_fraction, rate_hz)
    rows = []
    for user_id in range(user_count):
        profile = generate_profile(user_id, seed, noise_sigma)
        rec = generate_recording(profile, duration, rate_hz, seed)
        for win in segment_windows(rec, width, overlap_fraction):
            rows.append(extract_feature_vector(win))
    return Dataset.from_rows(rows, user_count)
