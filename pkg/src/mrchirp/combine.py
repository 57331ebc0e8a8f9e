"""Multi-resolution combination of chirplet transforms.

Parameter selection from the chirp-rate spectrum, sigma schedules, the
geometric-mean magnitude combination, and the divergence objective that the
combination minimizes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import ParameterSet, Signal, TFGrid, TFMatrix, WindowParams
from .transforms import CRSpectrum, cft, ct

__all__ = [
    "FLOOR_REL",
    "PeakList",
    "find_cr_peaks",
    "select_parameters",
    "sigma_schedule",
    "MrctResult",
    "mrct",
    "gkl_objective",
]

# relative magnitude floor shared by every log-domain product in the package
FLOOR_REL = 1e-12


@dataclass(frozen=True)
class PeakList:
    """(omega, cr, mag) triples sorted by descending magnitude."""

    peaks: tuple

    def __post_init__(self):
        pk = tuple((float(w), float(c), float(g)) for w, c, g in self.peaks)
        mags = [g for _, _, g in pk]
        if any(not math.isfinite(g) or g < 0 for g in mags):
            raise ValueError("peak magnitudes must be finite and nonnegative")
        if any(mags[i] < mags[i + 1] for i in range(len(mags) - 1)):
            raise ValueError("peaks must be sorted by descending magnitude")
        object.__setattr__(self, "peaks", pk)

    def __len__(self):
        return len(self.peaks)

    def __iter__(self):
        return iter(self.peaks)


def find_cr_peaks(spectrum: CRSpectrum, m: int, exclusion_bins: tuple = (3, 3)) -> PeakList:
    """First m peaks of a CR spectrum by iterative argmax with suppression.

    After each pick a rectangle of +/-exclusion_bins (freq, cr) around it is
    masked out.  Returns fewer peaks (with a warning) when the remaining
    magnitude is exhausted.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    ex_f, ex_c = exclusion_bins
    work = np.array(spectrum.mag)
    found = []
    for _ in range(m):
        q, k = np.unravel_index(np.argmax(work), work.shape)
        if not work[q, k] > 0:
            break
        found.append((spectrum.freqs[k], spectrum.crs[q], float(work[q, k])))
        work[
            max(q - ex_c, 0) : q + ex_c + 1,
            max(k - ex_f, 0) : k + ex_f + 1,
        ] = -1.0
    if len(found) < m:
        warnings.warn(f"only {len(found)} of {m} requested peaks found", stacklevel=2)
    return PeakList(peaks=tuple(found))


def select_parameters(
    signal: Signal,
    m: int,
    C_sigma: float,
    freq_axis,
    cr_axis,
) -> ParameterSet:
    """Window parameters from the m strongest CR-spectrum peaks.

    Each peak (w*, b*) maps to sigma = C_sigma/sqrt(2*pi*|b*|), beta = b*.
    Peaks with |b*| under half a cr bin count as zero chirp rate and get the
    record-length cap sigma_max = duration/4, which also bounds every other
    sigma so the window stays inside the record.  Duplicate (sigma, beta)
    pairs collapse with a warning; the result can therefore be shorter than m.
    """
    if not (math.isfinite(C_sigma) and C_sigma > 0):
        raise ValueError("C_sigma must be positive")
    spectrum = cft(signal, freq_axis, cr_axis)
    peaks = find_cr_peaks(spectrum, m)
    crs = np.asarray(cr_axis, dtype=np.float64)
    half_bin = 0.5 * (crs[1] - crs[0]) if crs.size >= 2 else 0.0
    sigma_max = signal.duration / 4.0
    entries = []
    for _, b_star, _ in peaks:
        if abs(b_star) <= half_bin:
            wp = WindowParams(sigma=sigma_max, beta=0.0)
        else:
            sigma = min(C_sigma / math.sqrt(2.0 * math.pi * abs(b_star)), sigma_max)
            wp = WindowParams(sigma=sigma, beta=b_star)
        if wp not in entries:
            entries.append(wp)
    if len(entries) < len(peaks):
        warnings.warn(
            f"{len(peaks) - len(entries)} duplicate parameter pairs collapsed", stacklevel=2
        )
    if not entries:
        raise ValueError("no parameters selected (spectrum is identically zero)")
    return ParameterSet(entries=tuple(entries))


def sigma_schedule(sigma1: float, m: int, mode: str = "multiplicative", delta: float | None = None):
    """Deterministic sigma ladders: i*sigma1 or sigma1 + i*delta, i = 1..m."""
    if not (math.isfinite(sigma1) and sigma1 > 0):
        raise ValueError("sigma1 must be positive")
    if m < 1:
        raise ValueError("m must be >= 1")
    if mode == "multiplicative":
        return [i * sigma1 for i in range(1, m + 1)]
    if mode == "additive":
        if delta is None or not (math.isfinite(delta) and delta > 0):
            raise ValueError("additive schedule requires delta > 0")
        return [sigma1 + i * delta for i in range(1, m + 1)]
    raise ValueError(f"unknown schedule mode {mode!r}")


def _floored_log(mag: np.ndarray) -> np.ndarray:
    top = mag.max()
    if top == 0.0:
        return np.full(mag.shape, -np.inf)
    return np.log(np.maximum(mag, FLOOR_REL * top))


def _geometric_mean(mags) -> np.ndarray:
    logs = _floored_log(mags[0])
    for mag in mags[1:]:
        logs = logs + _floored_log(mag)
    with np.errstate(under="ignore"):
        out = np.exp(logs / len(mags))
    out[~np.isfinite(out)] = 0.0
    return out


@dataclass(frozen=True)
class MrctResult:
    """Combined magnitude plus the constituent complex transforms."""

    magnitude: TFMatrix
    cts: tuple

    def __iter__(self):
        return iter((self.magnitude, self.cts))


def mrct(signal: Signal, params: ParameterSet, grid: TFGrid) -> MrctResult:
    """Geometric mean of the m chirplet-transform magnitudes.

    Computed in the log domain with each component floored at FLOOR_REL of
    its own peak, then clipped into the pointwise [min, max] envelope of the
    components so the geometric-mean bound holds exactly even below the
    floor.  The individual complex transforms are retained for reuse.
    """
    cts = tuple(ct(signal, wp, grid) for wp in params)
    mags = [np.abs(c.values) for c in cts]
    combined = _geometric_mean(mags)
    lo, hi = mags[0], mags[0]
    for mag in mags[1:]:
        lo = np.minimum(lo, mag)
        hi = np.maximum(hi, mag)
    combined = np.clip(combined, lo, hi)
    return MrctResult(
        magnitude=TFMatrix(grid=grid, values=combined, is_magnitude=True), cts=cts
    )


def gkl_objective(P: TFMatrix, cts) -> float:
    """Summed generalized KL divergence of P against each component magnitude.

    sum_i sum_(t,w) [P*ln(P/C_i) - P + C_i] * dt * dw, with 0*ln 0 = 0 and
    each C_i floored at FLOOR_REL of its peak (identically to mrct).  A
    component that is identically zero against a nonzero P yields +inf.
    """
    p = np.asarray(P.values)
    if np.iscomplexobj(p) or np.any(p < 0):
        raise ValueError("P must be a nonnegative magnitude matrix")
    area = P.grid.dt * P.grid.domega
    pos = p > 0
    plogp = np.zeros_like(p)
    plogp[pos] = p[pos] * np.log(p[pos])
    total = 0.0
    for comp in cts:
        c = np.asarray(comp.values)
        if np.iscomplexobj(c) or np.any(c < 0):
            raise ValueError("components must be nonnegative magnitude matrices")
        if c.shape != p.shape:
            raise ValueError("component shape does not match P")
        top = c.max()
        if top == 0.0:
            if np.any(pos):
                return math.inf
            continue
        cf = np.maximum(c, FLOOR_REL * top)
        total += float(np.sum(plogp[pos] - p[pos] * np.log(cf[pos]) - p[pos] + cf[pos]))
        total += float(np.sum(cf[~pos]))
    return total * area
