"""Resolution and concentration measurements on time-frequency matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .core import TFMatrix, _check_uniform, _readonly

__all__ = [
    "SliceCurve",
    "slice_at_time",
    "slice_at_freq",
    "mainlobe_width",
    "renyi_entropy",
    "find_slice_peaks",
    "write_slice_csv",
]

# Peaks must rise at least this fraction of the in-band maximum above their
# surroundings; a shoulder on a merged lobe therefore does not count.
PEAK_PROMINENCE_REL = 0.5
PEAK_MIN_DISTANCE = 3


@dataclass(frozen=True)
class SliceCurve:
    """One row or column of a magnitude matrix with its axis."""

    axis: np.ndarray
    mags: np.ndarray

    def __post_init__(self):
        ax = np.asarray(self.axis, dtype=np.float64)
        mg = np.asarray(self.mags, dtype=np.float64)
        if ax.ndim != 1 or ax.shape != mg.shape or ax.size < 2:
            raise ValueError("axis and mags must be equal-length 1-D, size >= 2")
        _check_uniform(ax, "axis")
        if not np.all(np.isfinite(mg)) or np.any(mg < 0):
            raise ValueError("mags must be finite and nonnegative")
        object.__setattr__(self, "axis", _readonly(ax))
        object.__setattr__(self, "mags", _readonly(mg))


def _require_magnitude(tf: TFMatrix):
    if not tf.is_magnitude:
        raise ValueError("expected a magnitude matrix")
    if not np.all(np.isfinite(tf.values)):
        raise ValueError("matrix contains non-finite bins")


def slice_at_time(tf: TFMatrix, t: float) -> SliceCurve:
    """Frequency profile of the frame nearest t."""
    _require_magnitude(tf)
    n = tf.grid.nearest_time_index(t)
    return SliceCurve(axis=tf.grid.freqs, mags=tf.values[:, n])


def slice_at_freq(tf: TFMatrix, omega: float) -> SliceCurve:
    """Time profile of the frequency row nearest omega (rad/s)."""
    _require_magnitude(tf)
    k = tf.grid.nearest_freq_index(omega)
    return SliceCurve(axis=tf.grid.times, mags=tf.values[k, :])


def mainlobe_width(curve: SliceCurve, level: float = 0.5) -> float:
    """Width of the lobe around the global maximum at level * peak.

    Crossing positions are linearly interpolated between samples.  Raises
    if the lobe is not fully contained in the axis or the maximum is tied.
    """
    if not 0 < level < 1:
        raise ValueError("level must be in (0, 1)")
    m = curve.mags
    imax = int(np.argmax(m))
    peak = m[imax]
    if peak <= 0:
        raise ValueError("curve has no positive maximum")
    if np.count_nonzero(m == peak) > 1:
        raise ValueError("maximum is not unique")
    thr = level * peak
    step = curve.axis[1] - curve.axis[0]

    i = imax
    while i + 1 < m.size and m[i + 1] >= thr:
        i += 1
    if i + 1 >= m.size:
        raise ValueError("lobe extends past the axis end")
    right = curve.axis[i] + step * (m[i] - thr) / (m[i] - m[i + 1])

    i = imax
    while i - 1 >= 0 and m[i - 1] >= thr:
        i -= 1
    if i - 1 < 0:
        raise ValueError("lobe extends past the axis start")
    left = curve.axis[i] - step * (m[i] - thr) / (m[i] - m[i - 1])
    return float(right - left)


def renyi_entropy(tf: TFMatrix, alpha: float = 3.0) -> float:
    """Order-alpha Renyi entropy (bits) of the normalized energy surface.

    Lower values mean the energy is concentrated on fewer bins.
    """
    if not (math.isfinite(alpha) and alpha > 0) or alpha == 1.0:
        raise ValueError("alpha must be positive, finite and != 1")
    _require_magnitude(tf)
    e = np.asarray(tf.values, dtype=np.float64) ** 2
    total = e.sum()
    if total <= 0:
        raise ValueError("matrix is identically zero")
    p = e / total
    s = np.sum(p[p > 0] ** alpha)
    return float(math.log2(s) / (1.0 - alpha))


def find_slice_peaks(curve: SliceCurve, band: tuple | None = None) -> np.ndarray:
    """Indices of distinct local maxima of a slice, strongest criteria:

    prominence >= PEAK_PROMINENCE_REL * in-band max and a minimum spacing of
    PEAK_MIN_DISTANCE samples.  band restricts the search to a closed axis
    interval; returned indices refer to the full curve.
    """
    m = curve.mags
    lo = 0
    if band is not None:
        b0, b1 = float(band[0]), float(band[1])
        if not b0 < b1:
            raise ValueError("band must satisfy lo < hi")
        mask = (curve.axis >= b0) & (curve.axis <= b1)
        if not mask.any():
            raise ValueError("band does not intersect the axis")
        lo = int(np.argmax(mask))
        m = m[mask]
    mmax = m.max()
    if mmax <= 0:
        return np.array([], dtype=np.int64)
    idx, _ = find_peaks(
        m, prominence=PEAK_PROMINENCE_REL * mmax, distance=PEAK_MIN_DISTANCE
    )
    return idx + lo


def write_slice_csv(path, curve: SliceCurve, axis_name: str = "axis"):
    """Two-column CSV: axis value, magnitude."""
    with open(path, "w") as fh:
        fh.write("%s,mag\n" % axis_name)
        for x, y in zip(curve.axis, curve.mags):
            fh.write("%r,%r\n" % (float(x), float(y)))
