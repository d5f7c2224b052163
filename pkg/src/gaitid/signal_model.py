"""Core domain types shared across the pipeline.

All types are immutable after construction (arrays are marked read-only),
so they can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

#: Dimensionality of the canonical feature vector (see gaitid.features).
N_FEATURES = 30


def _frozen_array(a, dtype=np.float64) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class AxialSample:
    """One tri-axial accelerometer reading at sample index ``t``."""

    t: int
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y) and np.isfinite(self.z)):
            raise ValueError("acceleration values must be finite")


class Recording:
    """Labeled tri-axial accelerometer time series at a fixed sample rate.

    Samples are stored as an (n, 3) float array; the row index is the
    0-based sample index (sampling is assumed uniform at ``rate_hz``).
    """

    __slots__ = ("user_id", "rate_hz", "xyz")

    def __init__(self, user_id: int, rate_hz: float, xyz) -> None:
        if rate_hz <= 0:
            raise ValueError(f"rate_hz must be positive, got {rate_hz}")
        arr = np.asarray(xyz, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError(f"expected (n, 3) sample array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("recording contains non-finite samples")
        self.user_id = int(user_id)
        self.rate_hz = float(rate_hz)
        self.xyz = _frozen_array(arr)

    def __len__(self) -> int:
        return self.xyz.shape[0]

    def sample(self, i: int) -> AxialSample:
        x, y, z = self.xyz[i]
        return AxialSample(i, float(x), float(y), float(z))


class Window:
    """A fixed-width slice of a recording: one identification interval."""

    __slots__ = ("series_x", "series_y", "series_z", "rate_hz", "user_id")

    def __init__(self, series_x, series_y, series_z, rate_hz: float, user_id: int) -> None:
        x = _frozen_array(series_x)
        y = _frozen_array(series_y)
        z = _frozen_array(series_z)
        if not (len(x) == len(y) == len(z)):
            raise ValueError("axis series must have identical length")
        self.series_x = x
        self.series_y = y
        self.series_z = z
        self.rate_hz = float(rate_hz)
        self.user_id = int(user_id)

    def __len__(self) -> int:
        return len(self.series_x)


class Spectrum:
    """Full two-sided magnitude DFT of one axis series (DC included)."""

    __slots__ = ("bins",)

    def __init__(self, bins) -> None:
        arr = _frozen_array(bins)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("spectrum must be a non-empty 1-d sequence")
        if np.any(arr < 0):
            raise ValueError("magnitude bins must be non-negative")
        self.bins = arr

    def __len__(self) -> int:
        return len(self.bins)


@dataclass(frozen=True)
class FeatureVector:
    """The canonical 30-dimensional per-window feature row.

    ``degenerate_flags`` counts cross-correlation features whose denominator
    was below the epsilon guard and was substituted with 0; it is metadata,
    not part of the 30 values.
    """

    values: np.ndarray
    label: int
    degenerate_flags: int = 0

    def __post_init__(self):
        arr = _frozen_array(self.values)
        if arr.shape != (N_FEATURES,):
            raise ValueError(f"feature vector must have exactly {N_FEATURES} entries")
        if not np.all(np.isfinite(arr)):
            raise ValueError("feature vector contains non-finite entries")
        object.__setattr__(self, "values", arr)


class Dataset:
    """A labeled collection of feature vectors, stored columnar.

    ``X`` is (n, 30) float64, ``y`` is (n,) int64 with labels in
    [0, class_count).
    """

    __slots__ = ("X", "y", "class_count")

    def __init__(self, X, y, class_count: int) -> None:
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.ndim != 2 or X.shape[1] != N_FEATURES:
            raise ValueError(f"X must be (n, {N_FEATURES}), got shape {X.shape}")
        if y.shape != (X.shape[0],):
            raise ValueError("y length must match X rows")
        if class_count < 1:
            raise ValueError("class_count must be >= 1")
        if len(y) and (y.min() < 0 or y.max() >= class_count):
            raise ValueError(f"labels must lie in [0, {class_count})")
        self.X = _frozen_array(X)
        self.y = _frozen_array(y, dtype=np.int64)
        self.class_count = int(class_count)

    def __len__(self) -> int:
        return self.X.shape[0]

    @classmethod
    def from_rows(cls, rows, class_count: int | None = None) -> "Dataset":
        rows = list(rows)
        if not rows:
            raise ValueError("cannot build a dataset from zero rows")
        X = np.stack([r.values for r in rows])
        y = np.array([r.label for r in rows], dtype=np.int64)
        if class_count is None:
            class_count = int(y.max()) + 1
        return cls(X, y, class_count)
