import numpy as np
import pytest

from mrchirp import (
    ChirpSpec,
    ImpulseSpec,
    Signal,
    add_awgn,
    analytic,
    chirp_pulse_mix,
    read_signal_csv,
    synth_chirp,
    synth_example1,
    synth_example1_clean,
    synth_example2,
    synth_example2_clean,
    synth_impulse,
    write_signal_csv,
)
from helpers import phase_if_hz


def test_synth_chirp_matches_formula():
    fs = 128.0
    sig = synth_chirp(ChirpSpec(amp=2.0, a=2 * np.pi * 5, b=2 * np.pi * 10, support=(0.25, 1.5)), fs, 2.0)
    t = np.arange(256) / fs
    want = 2.0 * np.exp(1j * (2 * np.pi * 5 * t + np.pi * 10 * t * t))
    inside = (t >= 0.25) & (t <= 1.5)  # support bounds are inclusive
    np.testing.assert_allclose(sig.samples[inside], want[inside], rtol=1e-12)
    assert np.all(sig.samples[~inside] == 0.0)


def test_synth_chirp_envelope_callable():
    fs = 64.0
    env = lambda t: 1.0 + 0.5 * t
    sig = synth_chirp(ChirpSpec(amp=env, a=2 * np.pi * 4, b=0.0, support=(0.0, 4.0)), fs, 1.0)
    t = sig.times
    np.testing.assert_allclose(np.abs(sig.samples), 1.0 + 0.5 * t, rtol=1e-12)


def test_synth_chirp_nyquist_guard():
    # IF reaches 20 + 80*2 = 180 Hz > fs/2 inside the support
    with pytest.raises(ValueError):
        synth_chirp(ChirpSpec(amp=1.0, a=2 * np.pi * 20, b=2 * np.pi * 80, support=(0.0, 2.0)), 256.0, 2.0)
    # clipping the support to the record keeps it legal
    synth_chirp(ChirpSpec(amp=1.0, a=2 * np.pi * 20, b=2 * np.pi * 80, support=(0.0, 1.0)), 256.0, 1.0)


def test_synth_impulse_sample_area():
    sig = synth_impulse(ImpulseSpec(amp=0.05, t0=0.5), 256.0, 1.0)
    assert sig.samples[128] == pytest.approx(0.05 * 256.0)
    assert np.count_nonzero(sig.samples) == 1
    with pytest.raises(ValueError):
        synth_impulse(ImpulseSpec(amp=1.0, t0=1.5), 256.0, 1.0)


def test_add_awgn_exact_snr_and_determinism():
    base = Signal(samples=np.exp(2j * np.pi * 0.1 * np.arange(512)), fs=64.0)
    for snr in (10.0, 0.0, -3.0):
        noisy = add_awgn(base, snr, seed=5)
        pn = np.mean(np.abs(noisy.samples - base.samples) ** 2)
        ps = np.mean(np.abs(base.samples) ** 2)
        assert 10 * np.log10(ps / pn) == pytest.approx(snr, abs=1e-10)
    a = add_awgn(base, 10.0, seed=7).samples
    b = add_awgn(base, 10.0, seed=7).samples
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, add_awgn(base, 10.0, seed=8).samples)


def test_add_awgn_real_stays_real():
    base = Signal(samples=np.cos(2 * np.pi * 0.1 * np.arange(256)), fs=32.0)
    assert add_awgn(base, 6.0, seed=1).is_real
    assert add_awgn(base, np.inf, seed=1).samples is not None
    np.testing.assert_array_equal(add_awgn(base, np.inf, seed=1).samples, base.samples)


def test_analytic_one_sided():
    t = np.arange(256) / 64.0
    sig = Signal(samples=np.cos(2 * np.pi * 10 * t), fs=64.0)
    a = analytic(sig)
    np.testing.assert_allclose(a.samples.real, sig.samples.real, atol=1e-12)
    spec = np.fft.fft(a.samples)
    # negative-frequency half must vanish
    assert np.max(np.abs(spec[129:])) < 1e-9 * np.max(np.abs(spec))
    with pytest.raises(ValueError):
        analytic(a)


def test_example1_layout():
    sig = synth_example1(0)
    assert sig.fs == 256.0 and sig.n == 512
    assert not sig.is_real  # two components live in the spectral domain
    clean = synth_example1_clean()
    # chirp IFs 20+80t and 34+80t Hz cross 60 and 74 Hz at t = 0.5
    t = clean.times
    comp = np.sin(2 * np.pi * (20 * t + 40 * t * t))
    if_hz = phase_if_hz(analytic(Signal(samples=comp, fs=256.0)).samples, 256.0)
    mid = slice(64, 200)  # stay clear of the [0, 1] s support edges
    err = np.abs(if_hz[mid] - (20 + 80 * t[mid]))
    # truncation ripple moves single estimates by ~2 Hz; the law must hold
    assert np.median(err) < 0.5 and err.max() < 2.5


def test_example2_layout():
    sig = synth_example2(3)
    assert sig.fs == 512.0 and sig.n == 512
    assert sig.is_real
    clean = synth_example2_clean()
    pulses = 5 * np.exp(-10000 * np.pi * (clean.times - 0.46) ** 2)
    assert np.max(np.abs(clean.samples)) <= 2 * (1.1 + 1.05) + 10  # sane scale
    assert pulses.max() > 4.5  # sample lattice does not hit 0.46 exactly


def test_chirp_pulse_mix_layout():
    sig = chirp_pulse_mix()
    assert sig.fs == 64.0 and sig.n == 512
    # impulse samples carry the added spikes
    for t_imp in (3.75, 4.25):
        k = int(round(t_imp * 64.0))
        assert np.abs(sig.samples[k]) > 0.8 * 0.05 * 64.0
    # same object twice: generator is deterministic
    np.testing.assert_array_equal(sig.samples, chirp_pulse_mix().samples)


def test_signal_csv_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    sig = Signal(samples=rng.standard_normal(37) + 1j * rng.standard_normal(37), fs=100.0, t0=-0.25)
    path = tmp_path / "sig.csv"
    write_signal_csv(sig, str(path))
    back = read_signal_csv(str(path))
    assert back.fs == sig.fs and back.t0 == sig.t0
    np.testing.assert_array_equal(back.samples, sig.samples)


def test_signal_csv_real_column_only(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("# fs=8.0 t0=0.0\n1.0\n-2.0\n0.5\n")
    sig = read_signal_csv(str(path))
    assert sig.is_real and sig.n == 3
    np.testing.assert_array_equal(sig.samples.real, [1.0, -2.0, 0.5])


def test_signal_csv_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,2.0\n")
    with pytest.raises(ValueError):
        read_signal_csv(str(path))
