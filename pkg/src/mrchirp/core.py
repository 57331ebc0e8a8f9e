"""Shared domain types and grid construction.

Unit conventions used across the library: time in seconds, frequency in
rad/s, chirp rate in rad/s^2.  Conversion to and from Hz / Hz-per-second
happens only at the CLI and file-format boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Signal",
    "TFGrid",
    "TFMatrix",
    "WindowParams",
    "ParameterSet",
    "make_tf_grid",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled time series (stored complex, may be real-valued)."""

    samples: np.ndarray
    fs: float
    t0: float = 0.0

    def __post_init__(self):
        s = np.array(self.samples, dtype=np.complex128)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("Signal.samples must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(s.view(np.float64))):
            raise ValueError("Signal.samples must be finite")
        if not (math.isfinite(self.fs) and self.fs > 0):
            raise ValueError("Signal.fs must be finite and positive")
        if not math.isfinite(self.t0):
            raise ValueError("Signal.t0 must be finite")
        object.__setattr__(self, "samples", _readonly(s))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.n / self.fs

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) / self.fs

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.samples.imag == 0.0))


def _check_uniform(axis: np.ndarray, name: str) -> float:
    if axis.ndim != 1 or axis.size < 2:
        raise ValueError(f"TFGrid.{name} needs at least two points")
    step = float(axis[1] - axis[0])
    if step <= 0:
        raise ValueError(f"TFGrid.{name} must be strictly increasing")
    if not np.allclose(np.diff(axis), step, rtol=1e-9, atol=1e-12 * abs(step)):
        raise ValueError(f"TFGrid.{name} must be uniformly spaced")
    return step


@dataclass(frozen=True)
class TFGrid:
    """Rectangular evaluation lattice: times in seconds, freqs in rad/s."""

    times: np.ndarray
    freqs: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=np.float64)
        w = np.array(self.freqs, dtype=np.float64)
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
            raise ValueError("TFGrid axes must be finite")
        dt = _check_uniform(t, "times")
        dw = _check_uniform(w, "freqs")
        object.__setattr__(self, "times", _readonly(t))
        object.__setattr__(self, "freqs", _readonly(w))
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "domega", dw)

    dt: float = 0.0
    domega: float = 0.0

    @property
    def n_times(self) -> int:
        return self.times.size

    @property
    def n_freqs(self) -> int:
        return self.freqs.size

    def time_at(self, i: int) -> float:
        return float(self.times[i])

    def freq_at(self, k: int) -> float:
        return float(self.freqs[k])

    def nearest_time_index(self, t: float) -> int:
        i = int(round((t - self.times[0]) / self.dt))
        if i < 0 or i >= self.n_times or abs(self.times[i] - t) > self.dt / 2 + 1e-12:
            raise ValueError(f"time {t} outside grid range")
        return i

    def nearest_freq_index(self, w: float) -> int:
        k = int(round((w - self.freqs[0]) / self.domega))
        if k < 0 or k >= self.n_freqs or abs(self.freqs[k] - w) > self.domega / 2 + 1e-12:
            raise ValueError(f"frequency {w} outside grid range")
        return k


@dataclass(frozen=True)
class TFMatrix:
    """Values on a TFGrid, laid out [freq bin, time frame].

    ``is_magnitude`` marks real nonnegative data.  ``allow_inf`` is reserved
    for representations that use +inf as an excluded-bin sentinel; ordinary
    transforms always produce finite entries.
    """

    grid: TFGrid
    values: np.ndarray
    is_magnitude: bool = False
    allow_inf: bool = False

    def __post_init__(self):
        v = np.array(self.values)
        if v.shape != (self.grid.n_freqs, self.grid.n_times):
            raise ValueError(
                f"values shape {v.shape} does not match grid "
                f"({self.grid.n_freqs}, {self.grid.n_times})"
            )
        if self.is_magnitude:
            if np.iscomplexobj(v):
                raise ValueError("magnitude matrix must be real")
            if np.any(v < 0):
                raise ValueError("magnitude matrix must be nonnegative")
        if np.iscomplexobj(v):
            finite = np.isfinite(v.real) & np.isfinite(v.imag)
        else:
            finite = np.isfinite(v) | (self.allow_inf & np.isposinf(v))
        if not np.all(finite):
            raise ValueError("TFMatrix entries must be finite")
        object.__setattr__(self, "values", _readonly(v))


@dataclass(frozen=True)
class WindowParams:
    """Analysis-window parameters: time spread sigma (s), chirp rate beta (rad/s^2)."""

    sigma: float
    beta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError("WindowParams.sigma must be finite and positive")
        if not math.isfinite(self.beta):
            raise ValueError("WindowParams.beta must be finite")


@dataclass(frozen=True)
class ParameterSet:
    """Ordered collection of distinct window parameter pairs."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) < 1:
            raise ValueError("ParameterSet needs at least one entry")
        for e in entries:
            if not isinstance(e, WindowParams):
                raise TypeError("ParameterSet entries must be WindowParams")
        if len({(e.sigma, e.beta) for e in entries}) != len(entries):
            raise ValueError("ParameterSet entries must be pairwise distinct")
        object.__setattr__(self, "entries", entries)

    @property
    def m(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def make_tf_grid(signal: Signal, n_freq_bins: int, f_max: float) -> TFGrid:
    """Build the default grid: every sample instant x [0, f_max] Hz.

    f_max is in Hz and must not exceed fs/2; the frequency axis it produces
    is in rad/s like everything else internal.
    """
    if n_freq_bins < 2:
        raise ValueError("n_freq_bins must be at least 2")
    if not (0 < f_max <= signal.fs / 2):
        raise ValueError(f"f_max must satisfy 0 < f_max <= fs/2 = {signal.fs / 2}")
    freqs = np.linspace(0.0, 2 * np.pi * f_max, n_freq_bins)
    return TFGrid(times=signal.times, freqs=freqs)
