"""Combined IF/group-delay field and the synchroextracting post-processor.

The ratio of t-weighted to plain transform products vanishes on ridges and
at impulse centers; keeping only bins where it is small concentrates the
combined magnitude onto those sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combine import _geometric_mean, mrct
from .core import ParameterSet, Signal, TFGrid, TFMatrix
from .transforms import ct_t_weighted

__all__ = [
    "ExtractionConfig",
    "RidgeTrack",
    "mrif",
    "mrsect",
    "ridge_extract",
]


@dataclass(frozen=True)
class ExtractionConfig:
    """Extraction thresholds.

    gamma_rel scales the hard magnitude threshold gamma = gamma_rel * max of
    the combined magnitude.  tolerance (seconds-valued field compared against
    the IF ratio) defaults to half the grid frequency step when None; the
    ratio has units of time, so callers may prefer a time-scale tolerance
    such as 1.5 sample periods.
    """

    gamma_rel: float = 1e-2
    tolerance: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.gamma_rel) and 0 < self.gamma_rel < 1):
            raise ValueError("gamma_rel must be in (0, 1)")
        if self.tolerance is not None and not (
            math.isfinite(self.tolerance) and self.tolerance > 0
        ):
            raise ValueError("tolerance must be positive")


def _ratio_field(signal: Signal, params: ParameterSet, grid: TFGrid, cfg: ExtractionConfig):
    """Combined magnitude and the masked ratio field (inf where suppressed)."""
    res = mrct(signal, params, grid)
    combined = res.magnitude.values
    th = [np.abs(ct_t_weighted(signal, wp, grid).values) for wp in params]
    num = _geometric_mean(th)
    den = _geometric_mean([np.abs(c.values) for c in res.cts])
    ratio = np.full(combined.shape, np.inf)
    kept = combined > cfg.gamma_rel * combined.max()
    ok = kept & (den > 0)
    ratio[ok] = num[ok] / den[ok]
    return res.magnitude, ratio


def mrif(
    signal: Signal,
    params: ParameterSet,
    grid: TFGrid,
    cfg: ExtractionConfig = ExtractionConfig(),
) -> TFMatrix:
    """Ratio of the t-weighted to the plain transform magnitude products.

    Zero on ridges and at impulse centers, growing with distance from them;
    units are seconds.  Bins whose combined magnitude falls below the hard
    threshold carry +inf, an explicit excluded sentinel (never 0, which
    would mimic a perfect ridge hit).
    """
    _, ratio = _ratio_field(signal, params, grid, cfg)
    return TFMatrix(grid=grid, values=ratio, is_magnitude=True, allow_inf=True)


def mrsect(
    signal: Signal,
    params: ParameterSet,
    grid: TFGrid,
    cfg: ExtractionConfig = ExtractionConfig(),
) -> TFMatrix:
    """Synchroextraction: combined magnitude where the IF ratio is small.

    Keeps bins with ratio < tolerance (default: half the frequency step per
    the discrete-interval rule; see ExtractionConfig on units), zero
    elsewhere.  Kept bins carry the combined magnitude unchanged.
    """
    combined, ratio = _ratio_field(signal, params, grid, cfg)
    tol = cfg.tolerance if cfg.tolerance is not None else grid.domega / 2.0
    vals = np.where(ratio < tol, combined.values, 0.0)
    return TFMatrix(grid=grid, values=vals, is_magnitude=True)


@dataclass(frozen=True)
class RidgeTrack:
    """Per-frame ridge location: frequency (rad/s, NaN where absent) and amplitude."""

    times: np.ndarray
    freqs: np.ndarray
    amps: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        f = np.asarray(self.freqs, dtype=np.float64)
        a = np.asarray(self.amps, dtype=np.float64)
        if not (t.shape == f.shape == a.shape) or t.ndim != 1:
            raise ValueError("times, freqs, amps must be 1-D and equally long")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "amps", a)

    @property
    def coverage(self) -> float:
        """Fraction of frames with an extracted frequency."""
        return float(np.mean(~np.isnan(self.freqs)))


def ridge_extract(tf: TFMatrix, n_ridges: int = 1) -> list:
    """Greedy ridge tracking on a magnitude matrix.

    Each pass seeds at the global argmax and walks outward frame by frame,
    constraining the per-frame argmax to within 2 bins of the previous
    frame's pick; zero columns yield NaN entries without breaking the walk.
    Extracted bins are notched (the bin and its two neighbors zeroed) before
    the next pass.  Returns fewer tracks than requested once the matrix is
    exhausted.
    """
    if n_ridges < 1:
        raise ValueError("n_ridges must be >= 1")
    work = np.abs(np.asarray(tf.values)).astype(np.float64)
    n_freqs, n_frames = work.shape
    tracks = []
    for _ in range(n_ridges):
        if not work.max() > 0:
            break
        k0, n0 = np.unravel_index(np.argmax(work), work.shape)
        bins = np.full(n_frames, -1, dtype=np.int64)
        bins[n0] = k0
        for direction in (1, -1):
            prev = k0
            rng = range(n0 + 1, n_frames) if direction == 1 else range(n0 - 1, -1, -1)
            for n in rng:
                lo = max(prev - 2, 0)
                hi = min(prev + 3, n_freqs)
                seg = work[lo:hi, n]
                k = lo + int(np.argmax(seg))
                if work[k, n] > 0:
                    bins[n] = k
                    prev = k
        freqs = np.full(n_frames, np.nan)
        amps = np.full(n_frames, np.nan)
        hit = bins >= 0
        freqs[hit] = tf.grid.freqs[bins[hit]]
        amps[hit] = work[bins[hit], np.nonzero(hit)[0]]
        for n in np.nonzero(hit)[0]:
            b = bins[n]
            work[max(b - 1, 0) : b + 2, n] = 0.0
        tracks.append(RidgeTrack(times=tf.grid.times, freqs=freqs, amps=amps))
    return tracks
