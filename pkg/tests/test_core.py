import numpy as np
import pytest

from mrchirp import ParameterSet, Signal, TFGrid, TFMatrix, WindowParams, make_tf_grid


def test_signal_basics():
    s = Signal(samples=np.ones(8), fs=4.0, t0=0.5)
    assert s.n == 8
    assert s.duration == 2.0
    assert s.is_real
    np.testing.assert_allclose(s.times, 0.5 + np.arange(8) / 4.0)
    assert s.samples.dtype == np.complex128
    with pytest.raises(ValueError):
        s.samples[0] = 2.0


def test_signal_validation():
    with pytest.raises(ValueError):
        Signal(samples=np.array([]), fs=1.0)
    with pytest.raises(ValueError):
        Signal(samples=np.array([1.0, np.nan]), fs=1.0)
    with pytest.raises(ValueError):
        Signal(samples=np.ones(4), fs=0.0)
    with pytest.raises(ValueError):
        Signal(samples=np.ones((2, 2)), fs=1.0)
    assert not Signal(samples=np.array([1j, 0]), fs=1.0).is_real


def test_grid_axes():
    g = TFGrid(times=np.arange(10) / 5.0, freqs=np.linspace(0.0, 100.0, 26))
    assert g.n_times == 10 and g.n_freqs == 26
    assert g.dt == pytest.approx(0.2)
    assert g.domega == pytest.approx(4.0)
    assert g.time_at(3) == pytest.approx(0.6)
    assert g.freq_at(25) == pytest.approx(100.0)
    with pytest.raises(ValueError):
        g.times[0] = 9.0


def test_grid_rejects_bad_axes():
    with pytest.raises(ValueError):
        TFGrid(times=np.array([0.0, 1.0, 3.0]), freqs=np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        TFGrid(times=np.array([1.0, 0.0]), freqs=np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        TFGrid(times=np.array([0.0]), freqs=np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        TFGrid(times=np.array([0.0, np.inf]), freqs=np.array([0.0, 1.0]))


def test_nearest_index_rounds_and_bounds():
    g = TFGrid(times=np.arange(5), freqs=np.linspace(0.0, 8.0, 5))
    assert g.nearest_time_index(2.4) == 2
    assert g.nearest_time_index(2.5) in (2, 3)  # tie goes to either neighbor
    assert g.nearest_freq_index(3.9) == 2
    with pytest.raises(ValueError):
        g.nearest_time_index(4.7)
    with pytest.raises(ValueError):
        g.nearest_freq_index(-1.5)


def test_tfmatrix_shape_and_flags():
    g = TFGrid(times=np.arange(4.0), freqs=np.arange(3.0))
    m = TFMatrix(grid=g, values=np.zeros((3, 4)), is_magnitude=True)
    assert m.values.shape == (3, 4)
    with pytest.raises(ValueError):
        TFMatrix(grid=g, values=np.zeros((4, 3)))
    with pytest.raises(ValueError):
        TFMatrix(grid=g, values=-np.ones((3, 4)), is_magnitude=True)
    with pytest.raises(ValueError):
        TFMatrix(grid=g, values=np.zeros((3, 4), dtype=complex), is_magnitude=True)
    v = np.zeros((3, 4))
    v[1, 1] = np.inf
    with pytest.raises(ValueError):
        TFMatrix(grid=g, values=v, is_magnitude=True)
    ok = TFMatrix(grid=g, values=v, is_magnitude=True, allow_inf=True)
    assert np.isinf(ok.values[1, 1])


def test_window_params_and_sets():
    with pytest.raises(ValueError):
        WindowParams(sigma=0.0, beta=1.0)
    with pytest.raises(ValueError):
        WindowParams(sigma=0.1, beta=np.inf)
    a = WindowParams(sigma=0.1, beta=2.0)
    b = WindowParams(sigma=0.2, beta=2.0)
    ps = ParameterSet(entries=(a, b))
    assert ps.m == 2
    with pytest.raises(ValueError):
        ParameterSet(entries=())
    with pytest.raises(ValueError):
        ParameterSet(entries=(a, WindowParams(sigma=0.1, beta=2.0)))


def test_make_tf_grid():
    sig = Signal(samples=np.ones(256), fs=128.0)
    g = make_tf_grid(sig, 65, 64.0)
    assert g.n_freqs == 65 and g.n_times == 256
    assert g.freqs[0] == 0.0
    assert g.freqs[-1] == pytest.approx(2 * np.pi * 64.0)
    np.testing.assert_allclose(g.times, sig.times)
    with pytest.raises(ValueError):
        make_tf_grid(sig, 65, 65.0)  # beyond fs/2
    with pytest.raises(ValueError):
        make_tf_grid(sig, 1, 32.0)
