"""INI-style scene/experiment configuration.

Sections and keys (key paths are reported as ``section.key``)::

    [room]        size = lx, ly, lz                      (m)
    [led]         height (m), normal = nx, ny, nz
    [estimators]  a1, a2 = x, y, z (m); normals = optimal | "x,y,z; x,y,z; x,y,z; x,y,z"
    [optics]      transmit_power_lm, lambertian_order, pd_area_mm2, responsivity_nA_per_lux
    [noise]       enabled = true|false, const_coeff_A2, linear_coeff_A
    [model]       mode = linear|physical, degeneracy_threshold, min_separation_m
    [sweep]       x_range, y_range = lo, hi (m); step_m; trials; seed; workers

Missing keys take the ``fig3`` preset value. Values in mm^2 and nA/lux are
converted to m^2 and A/lux on load with exact decimal scaling, so
``load_config(write_config(...))`` reproduces every float bit for bit.
"""

import configparser
from decimal import Decimal, InvalidOperation
from importlib import resources

import numpy as np

from .aoa import AoaEstimator, optimal_normals
from .channel import NoiseModel, OpticalParams
from .exceptions import BeaconLocError, ParseError, ValidationError
from .montecarlo import ExperimentSpec
from .scene import LINEAR, PHYSICAL, Scene

PRESETS = ("fig3", "fig4")


def _scaled(text, key, exponent):
    try:
        return float(Decimal(text.strip()).scaleb(exponent))
    except InvalidOperation:
        raise ParseError(f"{key}: not a number: {text!r}") from None


def _unscaled(value, exponent):
    return str(Decimal(repr(float(value))).scaleb(-exponent))


class _Reader:
    def __init__(self, parser, defaults):
        self.parser = parser
        self.defaults = defaults

    def raw(self, section, key):
        if self.parser.has_option(section, key):
            return self.parser.get(section, key)
        if self.defaults is not None and self.defaults.has_option(section, key):
            return self.defaults.get(section, key)
        raise ValidationError(f"{section}.{key}", "missing")

    def number(self, section, key, exponent=0):
        return _scaled(self.raw(section, key), f"{section}.{key}", exponent)

    def integer(self, section, key):
        text = self.raw(section, key).strip()
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"{section}.{key}: not an integer: {text!r}") from None

    def vector(self, section, key, n):
        text = self.raw(section, key)
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        if len(parts) != n:
            raise ParseError(f"{section}.{key}: expected {n} numbers, got {text!r}")
        return np.array([_scaled(p, f"{section}.{key}", 0) for p in parts])

    def boolean(self, section, key):
        text = self.raw(section, key).strip().lower()
        if text in ("true", "yes", "on", "1"):
            return True
        if text in ("false", "no", "off", "0"):
            return False
        raise ParseError(f"{section}.{key}: not a boolean: {text!r}")


def _parser(text, source):
    p = configparser.ConfigParser(inline_comment_prefixes=("#", ";;"))
    p.optionxform = str
    try:
        p.read_string(text, source=source)
    except configparser.Error as exc:
        raise ParseError(str(exc)) from None
    return p


def _preset_text(name):
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return resources.files("beaconloc").joinpath("presets", f"{name}.ini").read_text()


def _check(cond, key, reason):
    if not cond:
        raise ValidationError(key, reason)


def parse_config(text, source="<config>"):
    """Build ``(Scene, ExperimentSpec)`` from configuration text."""
    rd = _Reader(_parser(text, source), _parser(_preset_text("fig3"), "fig3"))

    room = rd.vector("room", "size", 3)
    _check(np.all(room > 0), "room.size", "dimensions must be positive")

    height = rd.number("led", "height")
    _check(0 < height <= room[2], "led.height", "must lie within (0, room height]")
    normal = rd.vector("led", "normal", 3)
    _check(abs(np.linalg.norm(normal) - 1) <= 1e-12, "led.normal", "must be a unit vector")

    positions = {}
    for key in ("a1", "a2"):
        a = rd.vector("estimators", key, 3)
        _check(np.all(a >= 0) and np.all(a <= room), f"estimators.{key}", "outside the room")
        positions[key] = a
    normals_text = rd.raw("estimators", "normals").strip()
    if normals_text.lower() == "optimal":
        normals = None
    else:
        normals = rd.vector("estimators", "normals", 12).reshape(4, 3)

    mode = rd.raw("model", "mode").strip().lower()
    _check(mode in (LINEAR, PHYSICAL), "model.mode", "must be 'linear' or 'physical'")
    threshold = rd.number("model", "degeneracy_threshold")
    _check(threshold >= 0, "model.degeneracy_threshold", "must be >= 0")
    min_sep = rd.number("model", "min_separation_m")
    _check(min_sep >= 0, "model.min_separation_m", "must be >= 0")
    _check(np.linalg.norm(positions["a2"] - positions["a1"]) > min_sep, "estimators.a2",
           f"closer than model.min_separation_m = {min_sep} to estimators.a1")

    try:
        ests = [AoaEstimator(positions[k]) if normals is None
                else AoaEstimator(positions[k], normals) for k in ("a1", "a2")]
    except (ValueError, BeaconLocError) as exc:
        raise ValidationError("estimators.normals", str(exc)) from None

    optics_keys = [("transmit_power_lm", 0), ("lambertian_order", 0),
                   ("pd_area_mm2", -6), ("responsivity_nA_per_lux", -9)]
    vals = [rd.number("optics", k, e) for k, e in optics_keys]
    for (k, _), v, ok in zip(optics_keys, vals, [vals[0] > 0, vals[1] >= 0, vals[2] > 0, vals[3] > 0]):
        _check(ok, f"optics.{k}", "out of range (must be positive; order >= 0)")
    optics = OpticalParams(*vals)

    enabled = rd.boolean("noise", "enabled")
    b0 = rd.number("noise", "const_coeff_A2")
    b1 = rd.number("noise", "linear_coeff_A")
    _check(b0 >= 0, "noise.const_coeff_A2", "must be >= 0")
    _check(b1 >= 0, "noise.linear_coeff_A", "must be >= 0")
    noise = NoiseModel(b0, b1) if enabled else NoiseModel.silent()

    scene = Scene(ests[0], ests[1], optics, noise, tuple(room), height, normal,
                  threshold, min_sep, mode)

    xr = rd.vector("sweep", "x_range", 2)
    yr = rd.vector("sweep", "y_range", 2)
    _check(0 <= xr[0] <= xr[1] <= room[0], "sweep.x_range", "must be ascending and inside the room")
    _check(0 <= yr[0] <= yr[1] <= room[1], "sweep.y_range", "must be ascending and inside the room")
    step = rd.number("sweep", "step_m")
    _check(step > 0, "sweep.step_m", "must be > 0")
    trials = rd.integer("sweep", "trials")
    _check(trials >= 1, "sweep.trials", "must be >= 1")
    seed = rd.integer("sweep", "seed")
    _check(seed >= 0, "sweep.seed", "must be >= 0")
    workers = rd.integer("sweep", "workers")
    _check(workers >= 1, "sweep.workers", "must be >= 1")
    spec = ExperimentSpec(scene, tuple(xr), tuple(yr), step, trials, seed, workers)
    return scene, spec


def load_config(path):
    """Read and validate a configuration file; returns ``(Scene, ExperimentSpec)``."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_config(text, str(path))


def load_preset(name):
    return parse_config(_preset_text(name), name)


def _fmt_vec(v):
    return ", ".join(repr(float(x)) for x in v)


def write_config(scene, spec):
    """Serialise a scene and sweep to configuration text."""
    if not np.array_equal(scene.est1.normals, scene.est2.normals):
        raise ValueError("both heads must share one normal matrix to be serialised")
    normals = scene.est1.normals
    normals_text = ("optimal" if np.array_equal(normals, optimal_normals())
                    else "; ".join(_fmt_vec(row) for row in normals))
    o, n = scene.optics, scene.noise
    sections = {
        "room": {"size": _fmt_vec(scene.room)},
        "led": {"height": repr(float(scene.led_height)), "normal": _fmt_vec(scene.led_normal)},
        "estimators": {"a1": _fmt_vec(scene.est1.position), "a2": _fmt_vec(scene.est2.position),
                       "normals": normals_text},
        "optics": {"transmit_power_lm": repr(float(o.transmit_power)),
                   "lambertian_order": repr(float(o.lambertian_order)),
                   "pd_area_mm2": _unscaled(o.pd_area, -6),
                   "responsivity_nA_per_lux": _unscaled(o.responsivity, -9)},
        "noise": {"enabled": "false" if n.is_silent else "true",
                  "const_coeff_A2": repr(float(n.const_coeff)),
                  "linear_coeff_A": repr(float(n.linear_coeff))},
        "model": {"mode": scene.mode,
                  "degeneracy_threshold": repr(float(scene.degeneracy_threshold)),
                  "min_separation_m": repr(float(scene.min_separation))},
        "sweep": {"x_range": _fmt_vec(spec.x_range), "y_range": _fmt_vec(spec.y_range),
                  "step_m": repr(float(spec.step)), "trials": str(spec.trials_per_point),
                  "seed": str(spec.seed), "workers": str(spec.workers)},
    }
    lines = []
    for name, items in sections.items():
        lines.append(f"[{name}]")
        lines.extend(f"{k} = {v}" for k, v in items.items())
        lines.append("")
    return "\n".join(lines)
