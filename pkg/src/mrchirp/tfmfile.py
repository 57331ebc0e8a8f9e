"""Flat binary container for TF matrices.

Layout: a 64-byte ASCII header line, then the payload as little-endian
float32, row-major with rows = frequency bins (rows = chirp-rate bins for
the crs kind).

    TFM1 <rows> <cols> <kind> <dt> <dw> <t0> <f0>

kind is one of mag (one float per bin), cplx (re,im pairs), crs (a
frequency/chirp-rate magnitude map; the dt/t0 slots then carry the
chirp-rate step and origin in rad/s^2).  dt and t0 are seconds, dw and f0
rad/s.  Numbers use repr-style shortest form at up to 10 significant
digits, dropping to 6 if the line would not fit.
"""

from __future__ import annotations

import numpy as np

from .core import TFGrid, TFMatrix
from .transforms import CRSpectrum

__all__ = ["write_tfm", "read_tfm", "HEADER_LEN"]

HEADER_LEN = 64
_KINDS = ("mag", "cplx", "crs")


def _header(rows, cols, kind, dt, dw, t0, f0) -> bytes:
    for digits in (10, 6):
        text = "TFM1 %d %d %s %.*g %.*g %.*g %.*g" % (
            rows, cols, kind, digits, dt, digits, dw, digits, t0, digits, f0
        )
        if len(text) <= HEADER_LEN - 1:
            return (text + " " * (HEADER_LEN - 1 - len(text)) + "\n").encode("ascii")
    raise ValueError("header does not fit in %d bytes" % HEADER_LEN)


def _axis_step(axis: np.ndarray) -> float:
    return float(axis[1] - axis[0]) if axis.size >= 2 else 1.0


def write_tfm(path, obj) -> None:
    """Write a TFMatrix (mag or cplx) or CRSpectrum (crs) to path."""
    if isinstance(obj, CRSpectrum):
        head = _header(
            obj.crs.size, obj.freqs.size, "crs",
            _axis_step(obj.crs), _axis_step(obj.freqs),
            float(obj.crs[0]), float(obj.freqs[0]),
        )
        payload = obj.mag.astype("<f4").tobytes()
    elif isinstance(obj, TFMatrix):
        g = obj.grid
        v = obj.values
        kind = "mag" if (obj.is_magnitude and not np.iscomplexobj(v)) else "cplx"
        head = _header(
            g.n_freqs, g.n_times, kind,
            g.dt, g.domega, float(g.times[0]), float(g.freqs[0]),
        )
        if kind == "mag":
            payload = v.astype("<f4").tobytes()
        else:
            z = np.asarray(v, dtype=np.complex128)
            inter = np.empty(z.shape + (2,), dtype="<f4")
            inter[..., 0] = z.real
            inter[..., 1] = z.imag
            payload = inter.tobytes()
    else:
        raise TypeError("write_tfm expects TFMatrix or CRSpectrum")
    with open(path, "wb") as fh:
        fh.write(head)
        fh.write(payload)


def read_tfm(path):
    """Read a file written by write_tfm; returns TFMatrix or CRSpectrum."""
    with open(path, "rb") as fh:
        head = fh.read(HEADER_LEN)
        if len(head) != HEADER_LEN:
            raise ValueError("truncated header")
        parts = head.decode("ascii", errors="replace").split()
        if len(parts) != 8 or parts[0] != "TFM1":
            raise ValueError("not a TFM1 file")
        try:
            rows, cols = int(parts[1]), int(parts[2])
            kind = parts[3]
            dt, dw, t0, f0 = (float(x) for x in parts[4:8])
        except ValueError:
            raise ValueError("malformed TFM1 header fields")
        if kind not in _KINDS:
            raise ValueError("unknown payload kind %r" % kind)
        if rows < 1 or cols < 1:
            raise ValueError("bad matrix shape in header")
        per = 2 if kind == "cplx" else 1
        raw = fh.read(rows * cols * per * 4)
    data = np.frombuffer(raw, dtype="<f4")
    if data.size != rows * cols * per:
        raise ValueError("payload size does not match header shape")
    if kind == "crs":
        return CRSpectrum(
            freqs=f0 + dw * np.arange(cols),
            crs=t0 + dt * np.arange(rows),
            mag=data.reshape(rows, cols).astype(np.float64),
        )
    grid = TFGrid(times=t0 + dt * np.arange(cols), freqs=f0 + dw * np.arange(rows))
    if kind == "cplx":
        pairs = data.reshape(rows, cols, 2).astype(np.float64)
        return TFMatrix(grid=grid, values=pairs[..., 0] + 1j * pairs[..., 1])
    return TFMatrix(grid=grid, values=data.reshape(rows, cols).astype(np.float64),
                    is_magnitude=True)
