"""Command-line front-end.

Two subcommands: ``run`` computes one transform of one signal and writes a
matrix file (plus optional images and slice CSVs), ``render`` turns a
stored matrix into a heatmap.  Flags speak Hz and Hz/s; conversion to the
internal rad/s happens in one place here.  Exit codes: 0 ok, 2 invalid
configuration (message names the offending field), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, fields

import numpy as np

from .core import ParameterSet, Signal, TFMatrix, WindowParams, make_tf_grid
from .combine import mrct, select_parameters
from .extract import ExtractionConfig, mrsect
from .metrics import SliceCurve, slice_at_freq, slice_at_time, write_slice_csv
from .render import DB_FLOOR_DEFAULT, render
from .signals import (
    analytic,
    chirp_pulse_mix,
    read_signal_csv,
    synth_example1,
    synth_example2,
)
from .tfmfile import write_tfm
from . import transforms

__all__ = ["RunConfig", "run", "main"]

METHODS = ("stft", "ct", "rotation-ct", "wvd", "cft", "mrct", "mrsect")
GENERATORS = ("example1", "example2", "chirp-pulse-mix")

TWO_PI = 2.0 * np.pi


class ConfigError(ValueError):
    """Invalid run configuration; str(err) starts with the offending field."""


@dataclass
class RunConfig:
    """One transform job.  Frequencies in Hz, chirp rates in Hz/s."""

    method: str
    out: str
    generator: str | None = None
    seed: int | None = None
    input_csv: str | None = None
    sigma: tuple | None = None
    beta_hz_s: tuple | None = None
    m: int | None = None
    c_sigma: float = 1.0
    gamma_rel: float | None = None
    tolerance: float | None = None
    nbins: int = 128
    f_max: float | None = None
    cr_max: float | None = None
    cr_bins: int | None = None
    png: str | None = None
    pgm: str | None = None
    colormap: str = "gray"
    db_floor: float = DB_FLOOR_DEFAULT
    slice_time: float | None = None
    slice_time_out: str | None = None
    slice_freq: float | None = None
    slice_freq_out: str | None = None


def _fail(field: str, why: str):
    raise ConfigError(f"{field}: {why}")


def _load_signal(cfg: RunConfig) -> Signal:
    if (cfg.generator is None) == (cfg.input_csv is None):
        _fail("--generator", "exactly one of --generator and --input must be given")
    if cfg.input_csv is not None:
        sig = read_signal_csv(cfg.input_csv)
    else:
        if cfg.generator not in GENERATORS:
            _fail("--generator", f"unknown generator {cfg.generator!r}")
        if cfg.seed is None:
            _fail("--seed", "required whenever --generator is used")
        if cfg.generator == "example1":
            sig = synth_example1(cfg.seed)
        elif cfg.generator == "example2":
            sig = synth_example2(cfg.seed)
        else:
            sig = chirp_pulse_mix()  # deterministic; seed accepted and unused
    # real-valued records are analytically continued so negative-frequency
    # images do not alias into the displayed band
    if np.all(sig.samples.imag == 0.0):
        sig = analytic(sig)
    return sig


def _radian_params(cfg: RunConfig) -> ParameterSet:
    """sigma/beta flag lists -> WindowParams in rad/s^2 (the Hz boundary)."""
    sigmas = cfg.sigma
    betas = cfg.beta_hz_s if cfg.beta_hz_s is not None else (0.0,)
    if len(betas) == 1:
        betas = betas * len(sigmas)
    if len(betas) != len(sigmas):
        _fail("--beta-hz-s", f"need 1 or {len(sigmas)} values, got {len(betas)}")
    try:
        pairs = tuple(
            WindowParams(sigma=float(s), beta=TWO_PI * float(b))
            for s, b in zip(sigmas, betas)
        )
        return ParameterSet(entries=pairs)
    except ValueError as e:
        raise ConfigError(f"--sigma: {e}") from e


def _cr_axis(cfg: RunConfig, f_max: float) -> np.ndarray:
    cr_max = cfg.cr_max if cfg.cr_max is not None else f_max
    bins = cfg.cr_bins if cfg.cr_bins is not None else cfg.nbins + 1
    if not cr_max > 0:
        _fail("--cr-max", "must be positive")
    if bins < 2:
        _fail("--cr-bins", "must be at least 2")
    return TWO_PI * np.linspace(-cr_max, cr_max, bins)


def _reject_unused(cfg: RunConfig, *names: str):
    labels = {
        "sigma": "--sigma", "beta_hz_s": "--beta-hz-s", "m": "--m",
        "gamma_rel": "--gamma-rel", "tolerance": "--tolerance",
        "cr_max": "--cr-max", "cr_bins": "--cr-bins",
    }
    for name in names:
        if getattr(cfg, name) is not None:
            _fail(labels[name], f"not used by method {cfg.method!r}")


def _mr_params(cfg: RunConfig, sig: Signal, grid, f_max: float) -> ParameterSet:
    if cfg.sigma is not None:
        if cfg.m is not None and cfg.m != len(cfg.sigma):
            _fail("--m", f"contradicts the {len(cfg.sigma)} --sigma values")
        return _radian_params(cfg)
    if cfg.m is None:
        _fail("--m", f"method {cfg.method!r} needs --sigma or --m")
    if cfg.m < 1:
        _fail("--m", "must be >= 1")
    if not cfg.c_sigma > 0:
        _fail("--c-sigma", "must be positive")
    return select_parameters(sig, cfg.m, cfg.c_sigma, grid.freqs, _cr_axis(cfg, f_max))


def _compute(cfg: RunConfig, sig: Signal):
    """Dispatch to the transform; returns TFMatrix or CRSpectrum."""
    f_max = cfg.f_max if cfg.f_max is not None else sig.fs / 2.0
    try:
        grid = make_tf_grid(sig, cfg.nbins, f_max)
    except ValueError as e:
        raise ConfigError(f"--nbins/--f-max: {e}") from e
    method = cfg.method

    if method in ("stft", "ct", "rotation-ct"):
        _reject_unused(cfg, "m", "gamma_rel", "tolerance", "cr_max", "cr_bins")
        if cfg.sigma is None or len(cfg.sigma) != 1:
            _fail("--sigma", f"method {method!r} needs exactly one value")
        if method == "stft":
            _reject_unused(cfg, "beta_hz_s")
            return transforms.stft(sig, cfg.sigma[0], grid)
        wp = _radian_params(cfg).entries[0]
        fn = transforms.ct if method == "ct" else transforms.rotation_ct
        return fn(sig, wp, grid)

    if method == "wvd":
        _reject_unused(cfg, "sigma", "beta_hz_s", "m", "gamma_rel", "tolerance",
                       "cr_max", "cr_bins")
        return transforms.wvd(sig, grid)

    if method == "cft":
        _reject_unused(cfg, "sigma", "beta_hz_s", "m", "gamma_rel", "tolerance")
        return transforms.cft(sig, grid.freqs, _cr_axis(cfg, f_max))

    if method == "mrct":
        _reject_unused(cfg, "gamma_rel", "tolerance")
        return mrct(sig, _mr_params(cfg, sig, grid, f_max), grid).magnitude

    if method == "mrsect":
        params = _mr_params(cfg, sig, grid, f_max)
        try:
            ex = ExtractionConfig(
                gamma_rel=cfg.gamma_rel if cfg.gamma_rel is not None else 1e-2,
                tolerance=cfg.tolerance,
            )
        except ValueError as e:
            raise ConfigError(f"--gamma-rel/--tolerance: {e}") from e
        return mrsect(sig, params, grid, ex)

    _fail("--method", f"unknown method {cfg.method!r}; choose from {', '.join(METHODS)}")


def _as_magnitude(result, field: str) -> TFMatrix:
    if not isinstance(result, TFMatrix):
        _fail(field, "slices are not defined for the cft output")
    if result.is_magnitude:
        return result
    return TFMatrix(grid=result.grid, values=np.abs(result.values), is_magnitude=True)


def _write_slices(cfg: RunConfig, result, written: list):
    if cfg.slice_time is not None:
        curve = slice_at_time(_as_magnitude(result, "--slice-time"), cfg.slice_time)
        hz = SliceCurve(axis=curve.axis / TWO_PI, mags=curve.mags)
        path = cfg.slice_time_out or cfg.out + ".tslice.csv"
        write_slice_csv(path, hz, axis_name="freq_hz")
        written.append(path)
    if cfg.slice_freq is not None:
        curve = slice_at_freq(_as_magnitude(result, "--slice-freq"), TWO_PI * cfg.slice_freq)
        path = cfg.slice_freq_out or cfg.out + ".fslice.csv"
        write_slice_csv(path, curve, axis_name="time_s")
        written.append(path)


def run(cfg: RunConfig) -> int:
    """Execute one job; returns 0, raising ConfigError/OSError otherwise."""
    if cfg.method not in METHODS:
        _fail("--method", f"unknown method {cfg.method!r}; choose from {', '.join(METHODS)}")
    if not cfg.out:
        _fail("--out", "an output matrix path is required")
    if cfg.sigma is not None and any(not s > 0 for s in cfg.sigma):
        _fail("--sigma", "all entries must be positive")
    start = time.perf_counter()
    sig = _load_signal(cfg)
    result = _compute(cfg, sig)
    write_tfm(cfg.out, result)
    written = [cfg.out]
    for path, cmap in ((cfg.png, cfg.colormap), (cfg.pgm, "gray")):
        if path:
            render(cfg.out, path, colormap=cmap, db_floor=cfg.db_floor)
            written.append(path)
    _write_slices(cfg, result, written)
    if isinstance(result, TFMatrix):
        rows, cols = result.grid.n_freqs, result.grid.n_times
    else:
        rows, cols = result.crs.size, result.freqs.size
    wall = time.perf_counter() - start
    print(f"{cfg.method}: {rows}x{cols} matrix, {wall:.3f} s, wrote {' '.join(written)}")
    return 0


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mrchirp",
        description="Chirplet-transform batch runner and matrix renderer.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="compute one transform and write artifacts")
    r.add_argument("--config", help="JSON file whose keys mirror the flags; "
                                    "explicit flags win")
    r.add_argument("--generator", choices=GENERATORS,
                   help="built-in test signal (chirp-pulse-mix ignores the seed "
                        "value but still requires --seed)")
    r.add_argument("--seed", type=int, help="noise seed, required with --generator")
    r.add_argument("--input", dest="input_csv", help="signal CSV (two or three columns)")
    r.add_argument("--method", choices=METHODS)
    r.add_argument("--sigma", type=_float_list, help="window sigma(s), comma separated")
    r.add_argument("--beta-hz-s", type=_float_list,
                   help="window chirp rate(s) in Hz/s; broadcasts over --sigma")
    r.add_argument("--m", type=int, help="number of auto-selected windows")
    r.add_argument("--c-sigma", type=float, help="sigma scale constant (default 1)")
    r.add_argument("--gamma-rel", type=float,
                   help="relative magnitude threshold for mrsect")
    r.add_argument("--tolerance", type=float, help="mrsect ridge tolerance")
    r.add_argument("--nbins", type=int, help="frequency bins (default 128)")
    r.add_argument("--f-max", type=float, help="top display frequency in Hz (default fs/2)")
    r.add_argument("--cr-max", type=float, help="chirp-rate half-range in Hz/s")
    r.add_argument("--cr-bins", type=int, help="chirp-rate bins")
    r.add_argument("--out", help="matrix file path (required)")
    r.add_argument("--png", help="also render a PNG heatmap here")
    r.add_argument("--pgm", help="also render a PGM heatmap here")
    r.add_argument("--colormap", choices=("gray", "viridis"))
    r.add_argument("--db-floor", type=float, help="heatmap dynamic range in dB")
    r.add_argument("--slice-time", type=float, help="write the frequency slice at this time (s)")
    r.add_argument("--slice-time-out", help="path for the time-slice CSV")
    r.add_argument("--slice-freq", type=float, help="write the time slice at this frequency (Hz)")
    r.add_argument("--slice-freq-out", help="path for the frequency-slice CSV")

    v = sub.add_parser("render", help="render a stored matrix to an image")
    v.add_argument("matrix", help="TFM1 matrix file")
    v.add_argument("image", help="output image (.png needs Pillow, else PGM)")
    v.add_argument("--colormap", choices=("gray", "viridis"), default="gray")
    v.add_argument("--db-floor", type=float, default=DB_FLOOR_DEFAULT)
    return p


def _merge_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"--config: not valid JSON ({e})") from e
        if not isinstance(raw, dict):
            raise ConfigError("--config: top level must be an object")
        known = {f.name for f in fields(RunConfig)}
        for key, val in raw.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ConfigError(f"--config: unknown key {key!r}")
            if name in ("sigma", "beta_hz_s"):
                val = tuple(val) if isinstance(val, (list, tuple)) else (float(val),)
            values[name] = val
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    for f in ("method", "out"):
        if not values.get(f):
            raise ConfigError(f"--{f}: required")
    defaults = {"c_sigma": 1.0, "nbins": 128, "colormap": "gray",
                "db_floor": DB_FLOOR_DEFAULT}
    for name, val in defaults.items():
        values.setdefault(name, val)
        if values[name] is None:
            values[name] = val
    for name in ("seed", "m", "nbins", "cr_bins"):
        val = values.get(name)
        if val is None or isinstance(val, bool):
            continue
        if isinstance(val, float) and val.is_integer():
            values[name] = int(val)
        elif not isinstance(val, int):
            raise ConfigError(f"--{name.replace('_', '-')}: must be an integer")
    try:
        return RunConfig(**values)
    except TypeError as e:
        raise ConfigError(f"--config: {e}") from e


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        if args.cmd == "run":
            return run(_merge_config(args))
        render(args.matrix, args.image, colormap=args.colormap, db_floor=args.db_floor)
        print(f"rendered {args.matrix} -> {args.image}")
        return 0
    except OSError as e:
        print(f"mrchirp: i/o error: {e}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError, RuntimeError) as e:
        print(f"mrchirp: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
