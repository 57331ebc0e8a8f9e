"""Independent reference implementations used as oracles in the tests.

Everything here is written straight from the defining sums, with explicit
loops where that keeps the code obviously correct, and shares no code with
the package under test.
"""

import numpy as np


def ct_direct(samples, fs, sigma, beta, times, freqs, t0=0.0):
    """Windowed chirp correlation by explicit summation."""
    L = int(np.floor(5.0 * sigma * fs + 1e-9))
    u = np.arange(-L, L + 1) / fs
    g = (np.sqrt(2.0 * np.pi) * sigma) ** -0.5 * np.exp(-(u**2) / (2.0 * sigma**2))
    kern = g * np.exp(-0.5j * beta * u**2)
    pad = np.zeros(len(samples) + 2 * L, dtype=complex)
    pad[L:L + len(samples)] = samples
    idx = np.rint((np.asarray(times, dtype=float) - t0) * fs).astype(int)
    out = np.empty((len(freqs), len(idx)), dtype=complex)
    for j, n in enumerate(idx):
        seg = pad[n:n + 2 * L + 1] * kern
        for k, w in enumerate(freqs):
            out[k, j] = np.sum(seg * np.exp(-1j * w * u)) / fs
    return out


def cft_naive(samples, fs, freqs, crs, t0=0.0):
    """Whole-record chirp correlation magnitudes, one explicit sum per bin."""
    t = t0 + np.arange(len(samples)) / fs
    out = np.empty((len(crs), len(freqs)))
    for q, b in enumerate(crs):
        base = np.asarray(samples) * np.exp(-0.5j * b * t * t)
        for k, w in enumerate(freqs):
            out[q, k] = abs(np.sum(base * np.exp(-1j * w * t))) / fs
    return out


def wvd_samples(samples, fs, t0, frame_times, omegas):
    """Lag-product Wigner distribution on arbitrary frequency points.

    W(t_n, w) = (2/fs) * sum_m f[n+m] conj(f[n-m]) exp(-2j w m / fs), with
    the record zero outside its support.
    """
    f = np.asarray(samples, dtype=complex)
    n_tot = f.size
    idx = np.rint((np.asarray(frame_times, dtype=float) - t0) * fs).astype(int)
    omegas = np.asarray(omegas, dtype=float)
    out = np.empty((omegas.size, idx.size), dtype=complex)
    m = np.arange(-(n_tot - 1), n_tot)
    ek = np.exp(-2j * np.outer(omegas, m) / fs)
    for j, n in enumerate(idx):
        prod = np.zeros(m.size, dtype=complex)
        for i, mm in enumerate(m):
            ia, ib = n + mm, n - mm
            if 0 <= ia < n_tot and 0 <= ib < n_tot:
                prod[i] = f[ia] * np.conj(f[ib])
        out[:, j] = ek @ prod * (2.0 / fs)
    return out


def phase_if_hz(samples, fs):
    """Instantaneous frequency in Hz from the unwrapped phase gradient."""
    ph = np.unwrap(np.angle(np.asarray(samples)))
    return np.gradient(ph) * fs / (2.0 * np.pi)


def gauss_halfpower_width(s):
    # width of the lobe exp(-x^2/(2 s^2)) at the 2^-1/2 level
    return 2.0 * s * np.sqrt(np.log(2.0))
