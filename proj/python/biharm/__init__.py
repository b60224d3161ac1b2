"""Biharmonic hypersurfaces and warped products."""

import json as _json

from ._core import (
    Error,
    Immersion,
    Scene,
    WarpedScene,
    cone,
    eval_expr,
    load_scene,
    parse_scene,
    sphere_slice,
)
from . import _core

__all__ = [
    "Error",
    "Immersion",
    "Scene",
    "WarpedScene",
    "analyze",
    "classify",
    "cone",
    "eval_expr",
    "load_scene",
    "parse_scene",
    "scan",
    "sphere_slice",
    "verify",
    "warped_report",
]


def analyze(immersion, point):
    """Geometry and, for hypersurfaces, both residuals at one chart point."""
    return _json.loads(_core._analyze(immersion, list(point)))


def classify(immersion, points, tol=1e-7):
    return _json.loads(_core._classify(immersion, [list(p) for p in points], tol))


def scan(immersion, param, lo, hi, probe, samples=41):
    """Roots of the normal residual in ``param`` over [lo, hi]."""
    return _json.loads(_core._scan(immersion, param, lo, hi, samples, list(probe)))


def warped_report(scene, t, point):
    return _json.loads(_core._warped_report(scene, t, list(point)))


def verify(filter=""):
    return _json.loads(_core._verify(filter))
