"""Heatmap rendering of stored TF matrices.

Magnitude is mapped to dB relative to the matrix maximum, clipped db_floor
dB down, and painted with the low-frequency row at the bottom of the
image.  PGM output is always available; PNG needs the optional Pillow
install.
"""

from __future__ import annotations

import os

import numpy as np

from .tfmfile import read_tfm
from .transforms import CRSpectrum

__all__ = ["render", "DB_FLOOR_DEFAULT"]

DB_FLOOR_DEFAULT = 60.0

# coarse viridis-style anchors, interpolated to a 256-entry table
_VIRIDIS_ANCHORS = [
    (68, 1, 84), (72, 36, 117), (65, 68, 135), (53, 95, 141),
    (42, 120, 142), (33, 144, 141), (34, 168, 132), (66, 190, 113),
    (122, 209, 81), (189, 223, 38), (253, 231, 37),
]


def _levels(mag: np.ndarray, db_floor: float) -> np.ndarray:
    peak = float(mag.max())
    if peak <= 0.0:
        return np.zeros(mag.shape, dtype=np.uint8)
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mag / peak)
    db = np.clip(db, -db_floor, 0.0)
    return np.rint((db + db_floor) / db_floor * 255.0).astype(np.uint8)


def _palette() -> np.ndarray:
    anchors = np.array(_VIRIDIS_ANCHORS, dtype=np.float64)
    pos = np.linspace(0.0, 1.0, anchors.shape[0])
    x = np.linspace(0.0, 1.0, 256)
    return np.stack(
        [np.rint(np.interp(x, pos, anchors[:, c])) for c in range(3)], axis=1
    ).astype(np.uint8)


def _write_pgm(path, img: np.ndarray) -> None:
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(img.tobytes())


def _write_png(path, img: np.ndarray, colormap: str) -> None:
    try:
        from PIL import Image
    except ImportError:
        raise RuntimeError(
            "PNG output requires the optional Pillow dependency; "
            "use PGM or install the [png] extra"
        )
    if colormap == "gray":
        Image.fromarray(img, mode="L").save(path, format="PNG")
    else:
        Image.fromarray(_palette()[img], mode="RGB").save(path, format="PNG")


def render(tf_matrix_file, out_path, colormap: str = "gray",
           db_floor: float = DB_FLOOR_DEFAULT) -> str:
    """Render a matrix file to out_path (.png via Pillow, else binary PGM).

    colormap is "gray" or "viridis" (PGM output is always grayscale).
    Returns out_path.
    """
    if colormap not in ("gray", "viridis"):
        raise ValueError("colormap must be 'gray' or 'viridis'")
    if not (db_floor > 0):
        raise ValueError("db_floor must be positive")
    obj = read_tfm(tf_matrix_file)
    if isinstance(obj, CRSpectrum):
        mag = obj.mag
    else:
        mag = np.abs(obj.values)
    img = np.flipud(_levels(mag, db_floor))
    if os.path.splitext(str(out_path))[1].lower() == ".png":
        _write_png(out_path, img, colormap)
    else:
        _write_pgm(out_path, np.ascontiguousarray(img))
    return str(out_path)
