"""Transform kernels: chirplet, STFT, t-weighted, rotation-window, WVD, CFT.

All integrals are Riemann sums with weight 1/fs.  Gaussian windows are
truncated at 5 effective standard deviations.  Output matrices are laid out
[freq bin, time frame].  Everything here is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import Signal, TFGrid, TFMatrix, WindowParams, _check_uniform, _readonly
from .window_geometry import rotated_params

__all__ = [
    "CRSpectrum",
    "ct",
    "stft",
    "ct_t_weighted",
    "rotation_window",
    "rotation_ct",
    "wvd",
    "cft",
    "closed_form_chirp_ct",
]


def _frame_indices(signal: Signal, grid: TFGrid) -> np.ndarray:
    """Map grid frame times onto sample indices; frames must sit on samples."""
    rel = (grid.times - signal.t0) * signal.fs
    idx = np.rint(rel).astype(np.int64)
    if np.any(np.abs(rel - idx) > 1e-6):
        raise ValueError("grid.times must coincide with sample instants")
    if idx[0] < 0 or idx[-1] >= signal.n:
        raise ValueError("grid.times extend beyond the signal record")
    return idx


def _window_half_len(sigma: float, fs: float) -> int:
    if 10.0 * sigma * fs < 3.0:
        raise ValueError(
            f"window support 10*sigma = {10 * sigma:.3g} s is under 3 samples at fs={fs:g}"
        )
    return int(math.floor(5.0 * sigma * fs + 1e-9))


def _gauss_window(sigma: float, fs: float) -> np.ndarray:
    L = _window_half_len(sigma, fs)
    u = np.arange(-L, L + 1) / fs
    return (math.sqrt(2.0 * math.pi) * sigma) ** -0.5 * np.exp(-u * u / (2.0 * sigma * sigma))


def _project_segments(seg: np.ndarray, L: int, freqs: np.ndarray, fs: float) -> np.ndarray:
    """Sum seg[n,p]*exp(-j*w_k*p/fs) over p for each frame n; (frames, bins) out.

    Uses one FFT per frame when the frequency axis coincides with DFT bins of
    some integer length M (folding the segment mod M first); falls back to a
    direct matrix product otherwise.
    """
    K = len(freqs)
    P = seg.shape[1]
    if K >= 2:
        domega = freqs[1] - freqs[0]
        m_float = 2.0 * math.pi * fs / domega
        M = int(round(m_float))
        # size cap keeps the fold buffer proportional to the request
        if (
            abs(m_float - M) <= 1e-6
            and abs(freqs[0]) <= 1e-9 * domega
            and K <= M <= max(4096, 8 * K)
        ):
            folded = np.zeros((seg.shape[0], M), dtype=np.complex128)
            if P <= M:
                folded[:, : L + 1] = seg[:, L:]
                if L:
                    folded[:, M - L :] += seg[:, :L]
            else:
                for j0 in range(0, P, M):
                    blk = seg[:, j0 : j0 + M]
                    c0 = (j0 - L) % M
                    w1 = min(M - c0, blk.shape[1])
                    folded[:, c0 : c0 + w1] += blk[:, :w1]
                    if blk.shape[1] > w1:
                        folded[:, : blk.shape[1] - w1] += blk[:, w1:]
            return np.fft.fft(folded, axis=1)[:, :K]
    u = np.arange(-L, L + 1) / fs
    return seg @ np.exp(-1j * np.outer(u, freqs))


def _correlate(signal: Signal, kernel: np.ndarray, grid: TFGrid) -> TFMatrix:
    """Frame-wise correlation of the signal against a centered kernel."""
    L = (len(kernel) - 1) // 2
    idx = _frame_indices(signal, grid)
    pad = np.zeros(L, dtype=np.complex128)
    fpad = np.concatenate([pad, signal.samples, pad])
    windows = sliding_window_view(fpad, 2 * L + 1)
    seg = windows[idx] * kernel
    vals = _project_segments(seg, L, grid.freqs, signal.fs) / signal.fs
    return TFMatrix(grid=grid, values=np.ascontiguousarray(vals.T))


def ct(signal: Signal, wp: WindowParams, grid: TFGrid) -> TFMatrix:
    """Chirplet transform: Gaussian-window STFT with chirp modulation exp(-j*beta/2*u^2).

    values[k][n] = (1/fs) * sum_p f[n+p] g(u_p) exp(-j*beta/2*u_p^2) exp(-j*w_k*u_p)
    with u_p = p/fs, |u_p| <= 5*sigma, and g the Gaussian of amplitude
    (sqrt(2*pi)*sigma)^(-1/2).
    """
    L = _window_half_len(wp.sigma, signal.fs)
    u = np.arange(-L, L + 1) / signal.fs
    kernel = _gauss_window(wp.sigma, signal.fs) * np.exp(-0.5j * wp.beta * u * u)
    return _correlate(signal, kernel, grid)


def stft(signal: Signal, sigma: float, grid: TFGrid) -> TFMatrix:
    """Gaussian-window STFT; the chirp-free (beta = 0) case of ct."""
    return ct(signal, WindowParams(sigma=sigma, beta=0.0), grid)


def ct_t_weighted(signal: Signal, wp: WindowParams, grid: TFGrid) -> TFMatrix:
    """ct with an extra (mu - t) factor in the integrand (group-delay numerator)."""
    L = _window_half_len(wp.sigma, signal.fs)
    u = np.arange(-L, L + 1) / signal.fs
    kernel = u * _gauss_window(wp.sigma, signal.fs) * np.exp(-0.5j * wp.beta * u * u)
    return _correlate(signal, kernel, grid)


def rotation_window(wp: WindowParams, fs: float) -> np.ndarray:
    """Sampled rotated Gaussian window exp(-t^2/(2*sh^2)) * exp(+j*bh/2*t^2).

    (sh, bh) is the rotated parameter pair of the input window; support covers
    5 effective standard deviations of the Gaussian envelope, i.e. |t| <= 5*sh.
    """
    rp = rotated_params(wp)
    L = _window_half_len(rp.sigma, fs)
    u = np.arange(-L, L + 1) / fs
    env = (math.sqrt(2.0 * math.pi) * rp.sigma) ** -0.5 * np.exp(
        -u * u / (2.0 * rp.sigma * rp.sigma)
    )
    return env * np.exp(0.5j * rp.beta * u * u)


def rotation_ct(signal: Signal, wp: WindowParams, grid: TFGrid) -> TFMatrix:
    """STFT-type correlation against the rotated window.

    Equals ct(signal, rotated_params(wp), grid) up to rounding; both paths are
    kept so the equivalence is testable.
    """
    kernel = np.conj(rotation_window(wp, signal.fs))
    return _correlate(signal, kernel, grid)


def wvd(signal: Signal, grid: TFGrid) -> TFMatrix:
    """Discrete Wigner-Ville distribution via integer-lag products.

    r[n,m] = f[n+m] f*[n-m] on lags m = 0..N-1 (zero outside the record),
    W[k,n] = (2/fs) * Re sum_m w_m r[n,m] exp(-j*(2/fs)*m*w_k), w_0 = 1,
    w_m = 2 otherwise.  The lag step makes the frequency axis periodic with
    period pi*fs (half the usual DFT span); values are real and signed.
    """
    if signal.n < 8:
        raise ValueError("wvd needs at least 8 samples")
    idx = _frame_indices(signal, grid)
    n_sig = signal.n
    fpad = np.concatenate(
        [np.zeros(n_sig - 1, dtype=np.complex128), signal.samples, np.zeros(n_sig - 1, dtype=np.complex128)]
    )
    m = np.arange(n_sig)
    centers = (n_sig - 1) + idx[:, None]
    lagprod = fpad[centers + m] * np.conj(fpad[centers - m])
    lagprod[:, 1:] *= 2.0
    basis = np.exp(-1j * (2.0 / signal.fs) * np.outer(m, grid.freqs))
    w = (2.0 / signal.fs) * (lagprod @ basis).real
    return TFMatrix(grid=grid, values=np.ascontiguousarray(w.T))


@dataclass(frozen=True)
class CRSpectrum:
    """Magnitude of a joint (frequency, chirp-rate) spectrum, laid out [cr][freq]."""

    freqs: np.ndarray
    crs: np.ndarray
    mag: np.ndarray

    def __post_init__(self):
        f = np.array(self.freqs, dtype=np.float64)
        c = np.array(self.crs, dtype=np.float64)
        for axis, name in ((f, "freqs"), (c, "crs")):
            if axis.ndim != 1 or axis.size < 1:
                raise ValueError(f"CRSpectrum.{name} must be a non-empty 1-D axis")
            if axis.size >= 2:
                _check_uniform(axis, f"CRSpectrum.{name}")
        m = np.array(self.mag, dtype=np.float64)
        if m.shape != (c.size, f.size):
            raise ValueError(f"mag shape {m.shape} does not match (crs, freqs)")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValueError("CRSpectrum.mag must be finite and nonnegative")
        object.__setattr__(self, "freqs", _readonly(f))
        object.__setattr__(self, "crs", _readonly(c))
        object.__setattr__(self, "mag", _readonly(m))


def cft(signal: Signal, freq_axis, cr_axis) -> CRSpectrum:
    """Whole-record correlation against chirp atoms exp(j*(b/2*t^2 + w*t)).

    mag[q][k] = |(1/fs) * sum_n f(t_n) exp(-j*(cr_q/2)*t_n^2) exp(-j*w_k*t_n)|
    over absolute sample times t_n.  One FFT per chirp-rate row when the
    frequency axis sits on DFT bins.
    """
    freqs = np.asarray(freq_axis, dtype=np.float64)
    crs = np.asarray(cr_axis, dtype=np.float64)
    if freqs.ndim != 1 or crs.ndim != 1 or freqs.size < 1 or crs.size < 1:
        raise ValueError("cft axes must be non-empty 1-D arrays")
    mu = signal.times
    fs = signal.fs
    K = freqs.size
    fast = False
    if K >= 2:
        domega = freqs[1] - freqs[0]
        m_float = 2.0 * math.pi * fs / domega
        M = int(round(m_float))
        fast = (
            abs(m_float - M) <= 1e-6
            and abs(freqs[0]) <= 1e-9 * domega
            and K <= M <= max(4096, 8 * K)
        )
    if not fast:
        basis = np.exp(-1j * np.outer(mu, freqs))
    mag = np.empty((crs.size, K))
    for q, beta in enumerate(crs):
        d = signal.samples * np.exp(-0.5j * beta * mu * mu)
        if fast:
            folded = np.zeros(M, dtype=np.complex128)
            for j0 in range(0, signal.n, M):
                blk = d[j0 : j0 + M]
                c0 = j0 % M
                w1 = min(M - c0, blk.size)
                folded[c0 : c0 + w1] += blk[:w1]
                if blk.size > w1:
                    folded[: blk.size - w1] += blk[w1:]
            # |exp(-j*w_k*t0)| = 1, so magnitudes survive the index-time DFT
            row = np.abs(np.fft.fft(folded)[:K])
        else:
            row = np.abs(d @ basis)
        mag[q] = row / fs
    return CRSpectrum(freqs=freqs, crs=crs, mag=mag)


def closed_form_chirp_ct(A: float, a: float, b: float, wp: WindowParams, grid: TFGrid) -> TFMatrix:
    """Analytic chirplet transform of the infinite chirp A*exp(j*(a*t + b/2*t^2)).

    values[k][n] = f(t_n) * sqrt(sqrt(2*pi)*sigma/(1+j*sigma^2*(beta-b)))
                 * exp(-sigma^2*(w_k - a - b*t_n)^2 / (2*(1+j*sigma^2*(beta-b)))).
    """
    t = grid.times[None, :]
    w = grid.freqs[:, None]
    f = A * np.exp(1j * (a * t + 0.5 * b * t * t))
    denom = 1.0 + 1j * wp.sigma ** 2 * (wp.beta - b)
    amp = np.sqrt(math.sqrt(2.0 * math.pi) * wp.sigma / denom)
    vals = f * amp * np.exp(-(wp.sigma ** 2) * (w - a - b * t) ** 2 / (2.0 * denom))
    return TFMatrix(grid=grid, values=vals)
