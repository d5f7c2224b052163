import numpy as np
import pytest

from gaitid import ingest
from gaitid.signal_model import Recording


def test_parse_recording_basic():
    rec = ingest.parse_recording("1.0,2.0,3.0\n4.0,5.0,6.0", user_id=7)
    assert len(rec) == 2
    assert rec.user_id == 7
    assert rec.rate_hz == 50.0
    np.testing.assert_array_equal(rec.xyz, [[1, 2, 3], [4, 5, 6]])


def test_parse_recording_skips_header():
    rec = ingest.parse_recording("x,y,z\n1.0,2.0,3.0", 0)
    assert len(rec) == 1


def test_parse_recording_empty_body():
    with pytest.raises(ingest.EmptyRecordingError):
        ingest.parse_recording("", 0)
    with pytest.raises(ingest.EmptyRecordingError):
        ingest.parse_recording("x,y,z\n", 0)


def test_parse_recording_malformed_field_reports_line():
    with pytest.raises(ingest.ParseError) as exc:
        ingest.parse_recording("1.0,abc,3.0", 0)
    assert exc.value.line_no == 1
    with pytest.raises(ingest.ParseError) as exc:
        ingest.parse_recording("1,2,3\n4,5", 0)
    assert exc.value.line_no == 2


def test_parse_recording_rejects_non_finite():
    with pytest.raises(ingest.IngestError):
        ingest.parse_recording("1.0,nan,3.0", 0)
    with pytest.raises(ingest.IngestError):
        ingest.parse_recording("inf,0,0", 0)


def _recording(n, user_id=0):
    return Recording(user_id, 50.0, np.arange(3 * n, dtype=float).reshape(n, 3))


def test_segment_single_full_window():
    wins = ingest.segment_windows(_recording(100))
    assert len(wins) == 1
    assert len(wins[0]) == 100


def test_segment_counts_and_offsets():
    rec = _recording(200)
    wins = ingest.segment_windows(rec)
    assert len(wins) == 3  # offsets 0, 50, 100
    # adjacent windows share exactly 50 samples
    np.testing.assert_array_equal(wins[0].series_x[50:], wins[1].series_x[:50])
    np.testing.assert_array_equal(wins[1].series_x[50:], wins[2].series_x[:50])


def test_segment_short_recording_yields_nothing():
    assert ingest.segment_windows(_recording(99)) == []


def test_segment_window_count_formula():
    for n in (100, 149, 150, 151, 500):
        wins = ingest.segment_windows(_recording(n), width=100, overlap_fraction=0.5)
        assert len(wins) == (n - 100) // 50 + 1


def test_segment_offsets_are_arithmetic():
    rec = _recording(400)
    wins = ingest.segment_windows(rec, width=100, overlap_fraction=0.75)
    step = 25
    for i, w in enumerate(wins):
        assert w.series_x[0] == rec.xyz[i * step, 0]


def test_segment_preconditions():
    with pytest.raises(ValueError):
        ingest.segment_windows(_recording(10), width=1)
    with pytest.raises(ValueError):
        ingest.segment_windows(_recording(10), overlap_fraction=1.0)
    with pytest.raises(ValueError):
        ingest.segment_windows(_recording(200), width=100, overlap_fraction=0.999)


def test_load_directory_layout(tmp_path):
    for label, body in (("alice", "1,2,3\n4,5,6\n"), ("bob", "7,8,9\n")):
        d = tmp_path / label
        d.mkdir()
        (d / "rec.csv").write_text(body)
    recs, label_map = ingest.load_directory(tmp_path)
    assert label_map == {"alice": 0, "bob": 1}
    assert [r.user_id for r in recs] == [0, 1]
    with pytest.raises(ingest.IngestError):
        ingest.load_directory(tmp_path / "missing")
