import numpy as np
import pytest

from mrchirp import (
    SliceCurve,
    Signal,
    TFGrid,
    TFMatrix,
    WindowParams,
    ct,
    find_slice_peaks,
    mainlobe_width,
    make_tf_grid,
    renyi_entropy,
    slice_at_freq,
    slice_at_time,
    write_slice_csv,
)

from helpers import gauss_halfpower_width


def test_slice_curve_validation():
    SliceCurve(axis=np.linspace(0, 1, 5), mags=np.ones(5))
    with pytest.raises(ValueError):
        SliceCurve(axis=np.array([0.0, 0.1, 0.3]), mags=np.ones(3))
    with pytest.raises(ValueError):
        SliceCurve(axis=np.linspace(0, 1, 5), mags=-np.ones(5))
    with pytest.raises(ValueError):
        SliceCurve(axis=np.array([0.0]), mags=np.array([1.0]))
    with pytest.raises(ValueError):
        SliceCurve(axis=np.linspace(0, 1, 5), mags=np.full(5, np.nan))


def test_slice_extraction():
    grid = TFGrid(times=np.linspace(0, 1, 9), freqs=np.linspace(0, 10, 5))
    vals = np.arange(45.0).reshape(5, 9)
    tf = TFMatrix(grid=grid, values=vals, is_magnitude=True)
    ts = slice_at_time(tf, 0.26)   # nearest frame is index 2
    np.testing.assert_array_equal(ts.mags, vals[:, 2])
    np.testing.assert_array_equal(ts.axis, grid.freqs)
    fs_ = slice_at_freq(tf, 7.4)   # nearest row is index 3
    np.testing.assert_array_equal(fs_.mags, vals[3, :])
    np.testing.assert_array_equal(fs_.axis, grid.times)
    cplx = TFMatrix(grid=grid, values=vals * (1 + 0j), is_magnitude=False)
    with pytest.raises(ValueError):
        slice_at_time(cplx, 0.5)
    with pytest.raises(ValueError):
        slice_at_time(tf, 3.0)


def test_mainlobe_width_gaussian_curve():
    s = 0.7
    x = np.linspace(-6, 6, 2001)
    curve = SliceCurve(axis=x, mags=np.exp(-(x**2) / (2 * s * s)))
    # the half-power point of an amplitude curve sits at level 1/sqrt(2)
    got = mainlobe_width(curve, 2 ** -0.5)
    assert got == pytest.approx(gauss_halfpower_width(s), rel=1e-4)
    got_half_mag = mainlobe_width(curve, 0.5)
    assert got_half_mag == pytest.approx(got * np.sqrt(2), rel=1e-4)


def test_mainlobe_width_interpolates_between_samples():
    x = np.arange(5.0)
    curve = SliceCurve(axis=x, mags=np.array([0.0, 0.25, 1.0, 0.25, 0.0]))
    # crossings at 0.5 * peak sit 2/3 of a step beyond the neighbors
    assert mainlobe_width(curve, 0.5) == pytest.approx(2.0 / 1.5)


def test_mainlobe_width_errors():
    x = np.linspace(0, 1, 11)
    with pytest.raises(ValueError):
        mainlobe_width(SliceCurve(axis=x, mags=np.ones(11)), 0.5)  # tied max
    with pytest.raises(ValueError):
        mainlobe_width(SliceCurve(axis=x, mags=np.zeros(11)), 0.5)
    ramp = SliceCurve(axis=x, mags=np.linspace(0.4, 1.0, 11))
    with pytest.raises(ValueError):
        mainlobe_width(ramp, 0.5)  # never drops below threshold on the right
    with pytest.raises(ValueError):
        mainlobe_width(SliceCurve(axis=x, mags=x), 1.5)


def test_renyi_uniform_and_invariance():
    grid = TFGrid(times=np.linspace(0, 1, 16), freqs=np.linspace(0, 10, 8))
    flat = TFMatrix(grid=grid, values=np.ones((8, 16)), is_magnitude=True)
    assert renyi_entropy(flat, 3.0) == pytest.approx(np.log2(8 * 16), abs=1e-12)
    rng = np.random.default_rng(3)
    vals = rng.uniform(0.1, 1.0, (8, 16))
    a = TFMatrix(grid=grid, values=vals, is_magnitude=True)
    b = TFMatrix(grid=grid, values=7.5 * vals, is_magnitude=True)
    assert renyi_entropy(a) == pytest.approx(renyi_entropy(b), rel=1e-12)
    assert renyi_entropy(a) < np.log2(8 * 16)
    spik = np.full((8, 16), 1e-9)
    spik[4, 7] = 1.0
    spike = TFMatrix(grid=grid, values=spik, is_magnitude=True)
    assert renyi_entropy(spike) < renyi_entropy(a)
    with pytest.raises(ValueError):
        renyi_entropy(a, 1.0)
    with pytest.raises(ValueError):
        renyi_entropy(TFMatrix(grid=grid, values=np.zeros((8, 16)), is_magnitude=True))


def test_find_slice_peaks_two_tones_and_band():
    fs = 256.0
    t = np.arange(512) / fs
    sig = Signal(samples=np.exp(2j * np.pi * 40 * t) + np.exp(2j * np.pi * 60 * t), fs=fs)
    grid = make_tf_grid(sig, 129, 128.0)
    tf = ct(sig, WindowParams(sigma=0.1, beta=0.0), grid)
    mag = TFMatrix(grid=grid, values=np.abs(tf.values), is_magnitude=True)
    curve = slice_at_time(mag, 1.0)
    idx = find_slice_peaks(curve)
    got = sorted(curve.axis[idx] / (2 * np.pi))
    assert got == pytest.approx([40.0, 60.0], abs=0.5)
    banded = find_slice_peaks(curve, band=(2 * np.pi * 50, 2 * np.pi * 128))
    assert list(curve.axis[banded] / (2 * np.pi)) == pytest.approx([60.0], abs=0.5)
    with pytest.raises(ValueError):
        find_slice_peaks(curve, band=(3.0, 1.0))
    with pytest.raises(ValueError):
        find_slice_peaks(curve, band=(1e6, 2e6))


def test_find_slice_peaks_prominence_and_empty():
    x = np.arange(30.0)
    m = np.zeros(30)
    m[10] = 1.0
    m[11] = 0.9
    m[20] = 0.2   # below the 0.5 * max prominence bar
    idx = find_slice_peaks(SliceCurve(axis=x, mags=m))
    assert list(idx) == [10]
    assert find_slice_peaks(SliceCurve(axis=x, mags=np.zeros(30))).size == 0


def test_write_slice_csv_roundtrip(tmp_path):
    curve = SliceCurve(axis=np.linspace(0, 1, 7), mags=np.linspace(0.5, 2.0, 7) ** 2)
    p = tmp_path / "slice.csv"
    write_slice_csv(p, curve, axis_name="freq_hz")
    lines = p.read_text().strip().split("\n")
    assert lines[0] == "freq_hz,mag"
    back = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    np.testing.assert_array_equal(back[:, 0], curve.axis)
    np.testing.assert_array_equal(back[:, 1], curve.mags)
