"""Synthetic test signals, noise, the analytic-signal helper and CSV I/O."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import hilbert

from .core import Signal

__all__ = [
    "ChirpSpec",
    "ImpulseSpec",
    "synth_chirp",
    "synth_impulse",
    "add_awgn",
    "analytic",
    "synth_example1",
    "synth_example1_clean",
    "synth_example2",
    "synth_example2_clean",
    "chirp_pulse_mix",
    "read_signal_csv",
    "write_signal_csv",
]


@dataclass(frozen=True)
class ChirpSpec:
    """Linear chirp: amp * exp(j*(a*t + b/2*t^2)) on [support).

    amp may be a nonnegative scalar or a callable envelope of t (array in,
    array out).  a is rad/s, b is rad/s^2, support endpoints in seconds.
    """

    amp: object
    a: float
    b: float
    support: tuple

    def __post_init__(self):
        lo, hi = self.support
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError("ChirpSpec.support must be a finite (start, end) with start < end")
        if not callable(self.amp):
            if not (math.isfinite(float(self.amp)) and float(self.amp) >= 0):
                raise ValueError("ChirpSpec.amp must be nonnegative or callable")
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("ChirpSpec rates must be finite")


@dataclass(frozen=True)
class ImpulseSpec:
    """Discrete impulse of area amp at time t0 (seconds)."""

    amp: float
    t0: float

    def __post_init__(self):
        if not math.isfinite(self.amp):
            raise ValueError("ImpulseSpec.amp must be finite")
        if not math.isfinite(self.t0):
            raise ValueError("ImpulseSpec.t0 must be finite")


def synth_chirp(spec: ChirpSpec, fs: float, duration: float) -> Signal:
    """Sample a linear chirp on t = n/fs, zero outside its support."""
    n = int(round(fs * duration))
    if n < 1:
        raise ValueError("duration too short for fs")
    t = np.arange(n) / fs
    lo = max(spec.support[0], 0.0)
    hi = min(spec.support[1], duration)
    if lo < hi:
        worst_if = max(abs(spec.a + spec.b * lo), abs(spec.a + spec.b * hi))
        if worst_if >= math.pi * fs:
            raise ValueError(
                f"instantaneous frequency {worst_if:.3g} rad/s reaches Nyquist pi*fs"
            )
    mask = (t >= spec.support[0]) & (t <= spec.support[1])
    amp = spec.amp(t) if callable(spec.amp) else float(spec.amp)
    samples = np.where(mask, amp * np.exp(1j * (spec.a * t + 0.5 * spec.b * t * t)), 0.0)
    return Signal(samples=samples, fs=fs)


def synth_impulse(spec: ImpulseSpec, fs: float, duration: float) -> Signal:
    """Single-sample impulse with value amp*fs so its discrete area is amp."""
    n = int(round(fs * duration))
    idx = int(round(spec.t0 * fs))
    if idx < 0 or idx >= n:
        raise ValueError("ImpulseSpec.t0 outside the record")
    samples = np.zeros(n, dtype=np.complex128)
    samples[idx] = spec.amp * fs
    return Signal(samples=samples, fs=fs)


def add_awgn(signal: Signal, snr_db: float, seed: int) -> Signal:
    """Add white Gaussian noise scaled to an exact whole-record SNR.

    The drawn noise is rescaled so 10*log10(Ps/Pn) equals snr_db exactly
    (mean power over the full record).  Real input gets real noise, complex
    input gets circular complex noise.  snr_db = inf returns the signal
    unchanged.
    """
    if snr_db == math.inf:
        return Signal(samples=signal.samples, fs=signal.fs, t0=signal.t0)
    if not math.isfinite(snr_db):
        raise ValueError("snr_db must be finite or +inf")
    p_sig = float(np.mean(np.abs(signal.samples) ** 2))
    if p_sig == 0.0:
        raise ValueError("cannot set an SNR on an all-zero signal")
    rng = np.random.default_rng(seed)
    if signal.is_real:
        noise = rng.standard_normal(signal.n).astype(np.complex128)
    else:
        noise = rng.standard_normal(signal.n) + 1j * rng.standard_normal(signal.n)
    p_target = p_sig / 10.0 ** (snr_db / 10.0)
    p_actual = float(np.mean(np.abs(noise) ** 2))
    noise *= math.sqrt(p_target / p_actual)
    return Signal(samples=signal.samples + noise, fs=signal.fs, t0=signal.t0)


def analytic(signal: Signal) -> Signal:
    """Analytic signal of a real-valued input (negative frequencies removed)."""
    if not signal.is_real:
        raise ValueError("analytic() expects a real-valued signal")
    z = hilbert(signal.samples.real)
    return Signal(samples=z, fs=signal.fs, t0=signal.t0)


# -- bundled test mixtures ---------------------------------------------------

_E1_FS = 256.0
_E1_N = 512


def _example1_components():
    t = np.arange(_E1_N) / _E1_FS
    f1 = np.where(t <= 1.0, np.sin(2 * np.pi * (20 * t + 40 * t * t)), 0.0)
    f2 = np.where((t >= 0.1) & (t <= 0.78), np.sin(2 * np.pi * (34 * t + 40 * t * t)), 0.0)
    c3 = 0.02 * np.exp(2j * np.pi * (430 * t - 5 * t * t))
    c4 = 0.02 * np.exp(2j * np.pi * (445 * t - 5 * t * t))
    # spectral-domain chirp images: unitary DFT read back as a time series
    f3 = np.fft.fft(c3) / math.sqrt(_E1_N)
    f4 = np.fft.fft(c4) / math.sqrt(_E1_N)
    return f1, f2, f3, f4


def synth_example1_clean() -> Signal:
    """Noise-free version of synth_example1."""
    f1, f2, f3, f4 = _example1_components()
    return Signal(samples=f1 + f2 + f3 + f4, fs=_E1_FS)


def synth_example1(seed: int, snr_db: float = 10.0) -> Signal:
    """Two close sine chirps (IF 20+80t and 34+80t Hz) plus two broadband
    transients built from spectral images of narrowband chirps; 2 s at 256 Hz.

    The mixture is complex, so the noise is complex as well.
    """
    return add_awgn(synth_example1_clean(), snr_db, seed)


_E2_FS = 512.0
_E2_N = 512


def _example2_components():
    t = np.arange(_E2_N) / _E2_FS
    f1 = (1 + 0.05 * np.cos(20 * np.pi * t)) * np.cos(2 * np.pi * (9 * np.sin(2 * np.pi * t) + 80 * t))
    f2 = (1 + 0.10 * np.cos(20 * np.pi * t)) * np.cos(2 * np.pi * (9 * np.sin(2 * np.pi * t) + 115 * t))
    f3 = 5 * np.exp(-10000 * np.pi * (t - 0.46) ** 2) * np.cos(340 * np.pi * t)
    f4 = 5 * np.exp(-10000 * np.pi * (t - 0.52) ** 2) * np.cos(340 * np.pi * t)
    return f1, f2, f3, f4


def synth_example2_clean() -> Signal:
    """Noise-free version of synth_example2 (real-valued)."""
    f1, f2, f3, f4 = _example2_components()
    return Signal(samples=(f1 + f2 + f3 + f4).astype(np.complex128), fs=_E2_FS)


def synth_example2(seed: int, snr_db: float = 8.0) -> Signal:
    """Two cosine-FM tones (centers 80 and 115 Hz, +/-18pi Hz deviation) and
    two short Gaussian pulses at 0.46 s / 0.52 s with a 170 Hz carrier; 1 s at
    512 Hz, real-valued.  Pass through analytic() before transforms.
    """
    return add_awgn(synth_example2_clean(), snr_db, seed)


def chirp_pulse_mix() -> Signal:
    """Two parallel slow chirps (2 Hz apart, rate 7 rad/s^2) plus two impulses
    0.5 s apart; 8 s at 64 Hz, noise free.

    Small-sigma analysis separates the impulses but merges the chirps; large
    sigma does the opposite; a chirped window at beta = 7 resolves both.
    """
    fs, n = 64.0, 512
    t = np.arange(n) / fs
    b = 7.0
    fa = np.exp(1j * (2 * np.pi * 8.0 * t + 0.5 * b * t * t))
    fb = np.exp(1j * (2 * np.pi * 10.0 * t + 0.5 * b * t * t))
    samples = fa + fb
    for t_imp in (3.75, 4.25):
        samples[int(round(t_imp * fs))] += 0.05 * fs
    return Signal(samples=samples, fs=fs)


# -- CSV I/O -----------------------------------------------------------------


def write_signal_csv(signal: Signal, path: str) -> None:
    """Write `# fs=<Hz> t0=<s>` header then one `re,im` row per sample."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# fs={float(signal.fs)!r} t0={float(signal.t0)!r}\n")
        for z in signal.samples:
            fh.write(f"{float(z.real)!r},{float(z.imag)!r}\n")


def read_signal_csv(path: str) -> Signal:
    """Read the format written by write_signal_csv; the im column is optional."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise ValueError("signal CSV must start with a `# fs=... t0=...` header")
        fields = dict(
            item.split("=", 1) for item in header.lstrip("#").split() if "=" in item
        )
        try:
            fs = float(fields["fs"])
            t0 = float(fields.get("t0", "0"))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad signal CSV header: {header!r}") from exc
        rows = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            re = float(parts[0])
            im = float(parts[1]) if len(parts) > 1 and parts[1] else 0.0
            rows.append(complex(re, im))
    if not rows:
        raise ValueError("signal CSV contains no samples")
    return Signal(samples=np.asarray(rows, dtype=np.complex128), fs=fs, t0=t0)
