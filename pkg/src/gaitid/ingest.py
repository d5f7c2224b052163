"""Parse accelerometer recording files and segment them into windows.

Recording files are CSV with one sample per line (``x,y,z`` as decimal
floats) and an optional single header line. The batch layout on disk is
``<root>/<user_label>/<recording>.csv``.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

import numpy as np

from .signal_model import Recording, Window


class IngestError(ValueError):
    pass


class ParseError(IngestError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class EmptyRecordingError(IngestError):
    pass


def parse_recording(text: str, user_id: int, rate_hz: float = 50.0) -> Recording:
    """Parse a CSV body into a Recording.

    An optional single header line (first token non-numeric) is skipped.
    Raises ParseError on malformed fields and EmptyRecordingError when no
    samples remain.
    """
    rows = []
    lines = text.splitlines()
    start = 0
    if lines:
        first = lines[0].split(",")[0].strip()
        try:
            float(first)
        except ValueError:
            start = 1
    for i in range(start, len(lines)):
        line = lines[i].strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError(f"expected 3 fields, got {len(parts)}", i + 1)
        try:
            sample = [float(p) for p in parts]
        except ValueError:
            raise ParseError(f"malformed numeric field in {line!r}", i + 1) from None
        if not all(math.isfinite(v) for v in sample):
            raise IngestError(f"line {i + 1}: non-finite sample value")
        rows.append(sample)
    if not rows:
        raise EmptyRecordingError("recording has no samples")
    return Recording(user_id, rate_hz, np.array(rows))


def load_recording(path, user_id: int, rate_hz: float = 50.0) -> Recording:
    try:
        return parse_recording(Path(path).read_text(), user_id, rate_hz)
    except IngestError as exc:
        raise IngestError(f"{path}: {exc}") from exc


def load_directory(root, rate_hz: float = 50.0):
    """Load ``<root>/<user_label>/*.csv`` into recordings plus a label map.

    User labels (directory names) are sorted and mapped to dense integers
    0..K-1. Returns (recordings, label_map).
    """
    root = Path(root)
    if not root.is_dir():
        raise IngestError(f"not a directory: {root}")
    user_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not user_dirs:
        raise IngestError(f"no user directories under {root}")
    label_map = {p.name: i for i, p in enumerate(user_dirs)}
    recordings = []
    for p in user_dirs:
        for f in sorted(p.glob("*.csv")):
            recordings.append(load_recording(f, label_map[p.name], rate_hz))
    return recordings, label_map


def segment_windows(rec: Recording, width: int = 100, overlap_fraction: float = 0.5):
    """Slice a recording into overlapping full-width windows.

    Offsets are 0, step, 2*step, ... with step = round(width*(1-overlap)).
    Trailing partial windows are dropped, never padded.
    """
    if width < 2:
        raise ValueError("width must be >= 2")
    if not (0 <= overlap_fraction < 1):
        raise ValueError("overlap_fraction must lie in [0, 1)")
    step = round(width * (1.0 - overlap_fraction))
    if step < 1:
        raise ValueError("overlap too large: step would be < 1 sample")
    n = len(rec)
    if n < width:
        return []
    out = []
    for start in range(0, n - width + 1, step):
        block = rec.xyz[start:start + width]
        out.append(Window(block[:, 0], block[:, 1], block[:, 2], rec.rate_hz, rec.user_id))
    return out
