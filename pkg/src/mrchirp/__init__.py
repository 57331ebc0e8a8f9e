"""Chirplet-transform time-frequency toolkit.

Gaussian chirplet analysis with per-window control of time spread (sigma)
and chirp rate (beta), multi-window combination by geometric mean, ridge
synchroextraction, parameter selection from the chirp-rate spectrum, and
the measurement/plumbing pieces around them.
"""

from .core import (
    ParameterSet,
    Signal,
    TFGrid,
    TFMatrix,
    WindowParams,
    make_tf_grid,
)
from .signals import (
    ChirpSpec,
    ImpulseSpec,
    add_awgn,
    analytic,
    chirp_pulse_mix,
    read_signal_csv,
    synth_chirp,
    synth_example1,
    synth_example1_clean,
    synth_example2,
    synth_example2_clean,
    synth_impulse,
    write_signal_csv,
)
from .transforms import (
    CRSpectrum,
    cft,
    closed_form_chirp_ct,
    ct,
    ct_t_weighted,
    rotation_ct,
    rotation_window,
    stft,
    wvd,
)
from .window_geometry import (
    EllipseGeometry,
    ellipse_geometry_ct,
    ellipse_geometry_rotation,
    extract_level_curve,
    rotated_params,
)
from .combine import (
    MrctResult,
    PeakList,
    find_cr_peaks,
    gkl_objective,
    mrct,
    select_parameters,
    sigma_schedule,
)
from .extract import (
    ExtractionConfig,
    RidgeTrack,
    mrif,
    mrsect,
    ridge_extract,
)
from .metrics import (
    SliceCurve,
    find_slice_peaks,
    mainlobe_width,
    renyi_entropy,
    slice_at_freq,
    slice_at_time,
    write_slice_csv,
)
from .tfmfile import read_tfm, write_tfm
from .render import render

__version__ = "0.1.0"

__all__ = [
    "Signal", "TFGrid", "TFMatrix", "WindowParams", "ParameterSet",
    "make_tf_grid",
    "ChirpSpec", "ImpulseSpec", "synth_chirp", "synth_impulse", "add_awgn",
    "analytic", "synth_example1", "synth_example1_clean", "synth_example2",
    "synth_example2_clean", "chirp_pulse_mix", "read_signal_csv",
    "write_signal_csv",
    "ct", "stft", "ct_t_weighted", "rotation_ct", "rotation_window", "wvd",
    "cft", "CRSpectrum", "closed_form_chirp_ct",
    "EllipseGeometry", "ellipse_geometry_ct", "ellipse_geometry_rotation",
    "rotated_params", "extract_level_curve",
    "MrctResult", "PeakList", "mrct", "find_cr_peaks", "select_parameters",
    "sigma_schedule", "gkl_objective",
    "ExtractionConfig", "mrif", "mrsect", "RidgeTrack", "ridge_extract",
    "SliceCurve", "slice_at_time", "slice_at_freq", "mainlobe_width",
    "renyi_entropy", "find_slice_peaks", "write_slice_csv",
    "read_tfm", "write_tfm", "render",
    "__version__",
]
