import numpy as np
import pytest

from gaitid import dsp
from reference import naive_dft_magnitude, ref_peaks


def test_impulse_has_flat_spectrum():
    np.testing.assert_allclose(dsp.dft_magnitude([1, 0, 0, 0]).bins, [1, 1, 1, 1],
                               atol=1e-12)


def test_constant_is_dc_only():
    c = 2.5
    np.testing.assert_allclose(dsp.dft_magnitude([c] * 4).bins, [4 * c, 0, 0, 0],
                               atol=1e-12)


def test_cosine_at_bin_one():
    np.testing.assert_allclose(dsp.dft_magnitude([1, 0, -1, 0]).bins, [0, 2, 0, 2],
                               atol=1e-12)


def test_dft_matches_naive_oracle_across_lengths():
    rng = np.random.default_rng(42)
    for l in (1, 2, 3, 7, 16, 100, 128):
        s = rng.normal(size=l)
        np.testing.assert_allclose(dsp.dft_magnitude(s).bins, naive_dft_magnitude(s),
                                   atol=1e-9)


def test_parseval():
    rng = np.random.default_rng(7)
    for l in (5, 64, 100):
        s = rng.normal(size=l)
        bins = dsp.dft_magnitude(s).bins
        assert np.sum(bins ** 2) == pytest.approx(l * np.sum(s ** 2), rel=1e-6)


def test_spectrum_conjugate_symmetry():
    rng = np.random.default_rng(3)
    s = rng.normal(size=100)
    bins = dsp.dft_magnitude(s).bins
    for m in range(1, 100):
        assert bins[m] == pytest.approx(bins[100 - m], abs=1e-9)


def test_dft_rejects_bad_input():
    with pytest.raises(ValueError):
        dsp.dft_magnitude([])
    with pytest.raises(ValueError):
        dsp.dft_magnitude([1.0, np.nan])


def test_find_peaks_basic():
    assert list(dsp.find_peaks([0, 1, 0])) == [1]
    assert list(dsp.find_peaks([0, 1, 2, 3])) == []
    assert list(dsp.find_peaks([0, 1, 1, 0])) == []  # plateaus are not peaks
    assert list(dsp.find_peaks([5.0])) == []
    assert list(dsp.find_peaks([1, 0, 1])) == []


def test_find_peaks_matches_reference_and_excludes_endpoints():
    rng = np.random.default_rng(11)
    for _ in range(50):
        s = rng.normal(size=rng.integers(1, 60))
        got = list(dsp.find_peaks(s))
        assert got == ref_peaks(s)
        assert got == sorted(got)
        assert 0 not in got and len(s) - 1 not in got


def test_spectral_centroid_examples():
    assert dsp.spectral_centroid([0, 0, 0, 0], dsp.dft_magnitude([0, 0, 0, 0])) == 0.0
    assert dsp.spectral_centroid([1, 0, 0, 0], dsp.dft_magnitude([1, 0, 0, 0])) \
        == pytest.approx(0.25)
    assert dsp.spectral_centroid([1, 1, 1, 1], dsp.dft_magnitude([1, 1, 1, 1])) \
        == pytest.approx(1.0)


def test_spectral_centroid_linear_in_time_series():
    rng = np.random.default_rng(5)
    spec = dsp.dft_magnitude(rng.normal(size=32))
    a = rng.normal(size=32)
    b = rng.normal(size=32)
    lhs = dsp.spectral_centroid(2.0 * a + 3.0 * b, spec)
    rhs = 2.0 * dsp.spectral_centroid(a, spec) + 3.0 * dsp.spectral_centroid(b, spec)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_spectral_centroid_length_mismatch():
    with pytest.raises(ValueError):
        dsp.spectral_centroid([1, 2], dsp.dft_magnitude([1, 2, 3]))
