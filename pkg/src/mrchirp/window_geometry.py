"""Level-curve geometry of chirp-window WVDs.

The WVD of a chirp-modulated Gaussian window is an elongated Gaussian blob
whose superlevel sets are ellipses.  This module evaluates the closed-form
long-axis length and orientation of those ellipses, maps window parameters
through the time-frequency rotation, and extracts the same quantities
numerically from a sampled WVD matrix for cross-checking.

Convention: long_axis_len is twice the squared max distance from the ellipse
center (the closed form's natural scale), while extract_level_curve reports
twice the max distance itself; compare lengths across parameter pairs as
ratios, taking the square root of closed-form ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Signal, TFGrid, TFMatrix, WindowParams

__all__ = [
    "EllipseGeometry",
    "ellipse_geometry_ct",
    "ellipse_geometry_rotation",
    "rotated_params",
    "extract_level_curve",
    "sample_window_wvd",
]

LEVEL_HALF_C = math.log(2.0)


@dataclass(frozen=True)
class EllipseGeometry:
    """Long-axis length, orientation slope, and the auxiliary quantity A.

    tan_theta is +inf for a vertical long axis (beta = 0 with sigma < 1);
    all other fields are finite.  A_aux is 0 for numerically extracted
    geometry, where it has no closed-form meaning.
    """

    long_axis_len: float
    tan_theta: float
    A_aux: float

    def __post_init__(self):
        if not (math.isfinite(self.long_axis_len) and self.long_axis_len > 0):
            raise ValueError("long_axis_len must be finite and positive")
        if math.isnan(self.tan_theta) or self.tan_theta == -math.inf:
            raise ValueError("tan_theta must be finite or +inf")
        if not math.isfinite(self.A_aux):
            raise ValueError("A_aux must be finite")

    @property
    def angle(self) -> float:
        """Orientation in radians, in (-pi/2, pi/2]."""
        return math.pi / 2 if self.tan_theta == math.inf else math.atan(self.tan_theta)


def ellipse_geometry_ct(wp: WindowParams, C: float = LEVEL_HALF_C) -> EllipseGeometry:
    """Ellipse geometry of the level curve t^2/s^2 + s^2*(w - b*t)^2 = C.

    C = ln(1/level_fraction) corresponds to the level_fraction contour of the
    window's WVD.  long_axis_len = C*(A*s^2 + 2/s^2 + D) with
    A = 1 + b^2 - 1/s^4 and D = sqrt(A^2*s^4 + 4*b^2); the slope is
    2*b/(s^2*(D + A*s^2)) + b, with the vertical (b=0, s<1) and degenerate
    circle (b=0, s=1) cases handled explicitly.
    """
    if not (math.isfinite(C) and C > 0):
        raise ValueError("C must be positive")
    s, b = wp.sigma, wp.beta
    s2 = s * s
    A = 1.0 + b * b - 1.0 / (s2 * s2)
    D = math.sqrt(A * A * s2 * s2 + 4.0 * b * b)
    length = C * (A * s2 + 2.0 / s2 + D)
    if b == 0.0:
        tan_theta = math.inf if s < 1.0 else 0.0
    else:
        tan_theta = 2.0 * b / (s2 * (D + A * s2)) + b
    return EllipseGeometry(long_axis_len=length, tan_theta=tan_theta, A_aux=A)


def rotated_params(wp: WindowParams) -> WindowParams:
    """Parameter pair (sh, bh) of the rotated Gaussian window.

    sh^2 = (1 + s^2 b^2)/(s (1 + b^2)), bh = b (1 - s^2)/(1 + s^2 b^2).
    Fixed point at s = 1 (bh = 0, sh = 1).
    """
    s, b = wp.sigma, wp.beta
    s2 = s * s
    sh2 = (1.0 + s2 * b * b) / (s * (1.0 + b * b))
    bh = b * (1.0 - s2) / (1.0 + s2 * b * b)
    return WindowParams(sigma=math.sqrt(sh2), beta=bh)


def ellipse_geometry_rotation(wp: WindowParams, C: float = LEVEL_HALF_C) -> EllipseGeometry:
    """Branch form of the rotated-window ellipse geometry.

    long_axis_len = 2C/s (s<1), 2C (s=1), 2sC (s>1); slope = b (s<1),
    0 (s=1), -1/b (s>1, 0 when b=0).  Agrees with ellipse_geometry_ct
    applied to rotated_params(wp).
    """
    if not (math.isfinite(C) and C > 0):
        raise ValueError("C must be positive")
    s, b = wp.sigma, wp.beta
    if s < 1.0:
        length, tan_theta = 2.0 * C / s, b
    elif s == 1.0:
        length, tan_theta = 2.0 * C, 0.0
    else:
        length, tan_theta = 2.0 * s * C, (0.0 if b == 0.0 else -1.0 / b)
    rp = rotated_params(wp)
    A = 1.0 + rp.beta * rp.beta - 1.0 / rp.sigma ** 4
    return EllipseGeometry(long_axis_len=length, tan_theta=tan_theta, A_aux=A)


def extract_level_curve(wvd_matrix: TFMatrix, level_fraction: float = 0.5) -> EllipseGeometry:
    """Numerical ellipse geometry from a superlevel set of a WVD matrix.

    Thresholds at level_fraction times the (unique) global max and measures
    the farthest superlevel point from the set centroid: long_axis_len is
    twice that distance.  The axis angle is the farthest point's direction
    refined to sub-lattice precision by a quadratic fit of distance versus
    (axis-folded) direction over the near-maximal shell; when that fit is
    flat over a wide angular range the set is a lattice circle and the slope
    is reported as 0.
    """
    if not 0.0 < level_fraction < 1.0:
        raise ValueError("level_fraction must be in (0, 1)")
    vals = np.asarray(wvd_matrix.values).real
    vmax = vals.max()
    if not (vmax > 0):
        raise ValueError("matrix has no positive values to threshold")
    if np.count_nonzero(vals == vmax) != 1:
        raise ValueError("global max is not unique")
    ii, jj = np.nonzero(vals >= level_fraction * vmax)
    t = wvd_matrix.grid.times[jj]
    w = wvd_matrix.grid.freqs[ii]
    dt_off = t - t.mean()
    dw_off = w - w.mean()
    dist = np.hypot(dt_off, dw_off)
    imax = int(np.argmax(dist))
    dmax = float(dist[imax])
    if dmax == 0.0:
        raise ValueError("level set is a single point")
    step = math.hypot(wvd_matrix.grid.dt, wvd_matrix.grid.domega)
    phi0 = math.atan2(dw_off[imax], dt_off[imax])
    sel = dist >= dmax - 2.0 * step
    # fold directions onto the axis through phi0 (theta and theta+pi agree)
    psi = (np.arctan2(dw_off[sel], dt_off[sel]) - phi0 + math.pi / 2) % math.pi - math.pi / 2
    vertex = 0.0
    if psi.size >= 3:
        c2, c1, _ = np.polyfit(psi, dist[sel], 2)
        half_range = float(np.max(np.abs(psi)))
        if half_range > 1.0 and abs(c1) * half_range + abs(c2) * half_range ** 2 < 0.5 * step:
            return EllipseGeometry(long_axis_len=2.0 * dmax, tan_theta=0.0, A_aux=0.0)
        if c2 < 0.0:
            vertex = float(np.clip(-c1 / (2.0 * c2), psi.min(), psi.max()))
    ang = phi0 + vertex
    if abs(math.cos(ang)) < 1e-12:
        tan_theta = math.inf
    else:
        tan_theta = math.tan(ang)
    return EllipseGeometry(long_axis_len=2.0 * dmax, tan_theta=tan_theta, A_aux=0.0)


def sample_window_wvd(
    wp: WindowParams,
    rotation: bool = False,
    support_sigmas: float = 3.5,
    n_freq_bins: int = 513,
    max_frames: int = 401,
    fs: float | None = None,
) -> TFMatrix:
    """WVD of the analysis window itself, sampled as a signal.

    rotation=True analyzes the rotated window.  The lattice is symmetric
    about (0, 0), covers support_sigmas envelope deviations in time and the
    tilted ridge extent in frequency, and the sample rate is chosen to keep
    the lag products alias free; frames are decimated to at most max_frames.
    """
    eff = rotated_params(wp) if rotation else wp
    s, b = eff.sigma, eff.beta
    if fs is None:
        content = abs(b) * support_sigmas * s + 3.0 / s
        fs = max(2.5 * content / math.pi, 32.0 / s)
    half = int(math.ceil(support_sigmas * s * fs))
    u = np.arange(-half, half + 1) / fs
    env = (math.sqrt(2.0 * math.pi) * s) ** -0.5 * np.exp(-u * u / (2.0 * s * s))
    sig = Signal(samples=env * np.exp(0.5j * b * u * u), fs=fs, t0=-half / fs)
    stride = max(1, -(-(2 * half + 1) // max_frames))
    n_half_frames = half // stride
    times = np.arange(-n_half_frames, n_half_frames + 1) * (stride / fs)
    omega_span = 1.5 * (abs(b) * s + 1.0 / s)
    freqs = np.linspace(-omega_span, omega_span, n_freq_bins)
    grid = TFGrid(times=times, freqs=freqs)
    from .transforms import wvd

    return wvd(sig, grid)
