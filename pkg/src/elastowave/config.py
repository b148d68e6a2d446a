"""Run-configuration grammar and validation.

Configs are flat ``section.key = value`` lines; ``#`` starts a comment.
Values are typed: floats (``-inf`` allowed where documented), integers,
comma-separated vectors (``0,0,1``), colon ranges (``min:max:count``) and
enumerated strings. The parser collects every violation before failing so
a bad file reports all its problems at once.

Documented keys
---------------
material.rho / material.lam / material.mu / material.nu
    Density and Lame constants; give either lam or nu with mu.
source.dimension
    3d-point | 2d-inplane | 2d-antiplane
trajectory.preset
    static | uniform | oscillatory | piecewise-polynomial | tabulated,
    with preset parameters trajectory.position, trajectory.origin,
    trajectory.velocity, trajectory.center, trajectory.amplitude,
    trajectory.omega, trajectory.phase, trajectory.times,
    trajectory.positions (flattened triples), trajectory.breakpoints,
    trajectory.coefficients (flattened, highest power first).
force.preset
    constant | step | ramp | sinusoid | bump | polynomial, with
    force.q0, force.t_on (finite required for 2D), force.rate,
    force.omega, force.phase, force.center, force.half_width,
    force.coefficients (flattened rows of 3, lowest power first).
grid.x1, grid.x2, grid.x3, grid.t
    Ranges min:max:count (count >= 1).
tolerances.quad_rel / tolerances.retarded_rel / tolerances.history_rel
    Positive tolerances for the slowness quadrature, the retarded-time
    solver, and the 2D history quadrature.
run.seed / run.char_length / run.checks
    Seed for randomized validation, characteristic length setting the
    singular-point cutoff (r_min = 1e-9 * char_length), and an optional
    comma list restricting which validation checks run.
output.path / output.format
    Output file and csv | json.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .kinematics import (
    ForceProfile,
    Trajectory,
    bump_force,
    constant_force,
    oscillatory_trajectory,
    piecewise_polynomial_trajectory,
    polynomial_force,
    ramp_force,
    sinusoid_force,
    static_trajectory,
    step_force,
    tabulated_trajectory,
    uniform_trajectory,
)
from .material import Material, make_material, make_material_poisson

__all__ = ["RunConfig", "GridSpec", "parse_config", "TRAJECTORY_PRESETS", "FORCE_PRESETS"]

DIMENSIONS = ("3d-point", "2d-inplane", "2d-antiplane")

TRAJECTORY_PRESETS = {
    "static": ("position",),
    "uniform": ("origin", "velocity"),
    "oscillatory": ("center", "amplitude", "omega", "phase"),
    "piecewise-polynomial": ("breakpoints", "coefficients"),
    "tabulated": ("times", "positions"),
}

FORCE_PRESETS = {
    "constant": ("q0",),
    "step": ("q0", "t_on"),
    "ramp": ("rate", "t_on"),
    "sinusoid": ("q0", "omega", "phase"),
    "bump": ("q0", "center", "half_width"),
    "polynomial": ("coefficients", "t_on"),
}

_KNOWN_KEYS = {
    "material.rho", "material.lam", "material.mu", "material.nu",
    "source.dimension",
    "trajectory.preset", "trajectory.position", "trajectory.origin",
    "trajectory.velocity", "trajectory.center", "trajectory.amplitude",
    "trajectory.omega", "trajectory.phase", "trajectory.times",
    "trajectory.positions", "trajectory.breakpoints", "trajectory.coefficients",
    "force.preset", "force.q0", "force.t_on", "force.rate", "force.omega",
    "force.phase", "force.center", "force.half_width", "force.coefficients",
    "grid.x1", "grid.x2", "grid.x3", "grid.t",
    "tolerances.quad_rel", "tolerances.retarded_rel", "tolerances.history_rel",
    "run.seed", "run.char_length", "run.checks",
    "output.path", "output.format",
}


@dataclass(frozen=True)
class GridSpec:
    """Axis ranges (min, max, count) for x1, x2, x3 and t."""

    x1: tuple[float, float, int] = (0.0, 0.0, 1)
    x2: tuple[float, float, int] = (0.0, 0.0, 1)
    x3: tuple[float, float, int] = (0.0, 0.0, 1)
    t: tuple[float, float, int] = (0.0, 0.0, 1)

    def axis_values(self, name):
        lo, hi, n = getattr(self, name)
        return np.linspace(lo, hi, n)

    @property
    def n_points(self):
        return self.x1[2] * self.x2[2] * self.x3[2]

    @property
    def n_events(self):
        return self.n_points * self.t[2]


@dataclass
class RunConfig:
    """Validated run description with constructed physics objects."""

    material: Material
    dimension: str
    trajectory: Trajectory
    force: ForceProfile
    grid: GridSpec
    quad_rel: float = 1e-10
    retarded_rel: float = 1e-12
    history_rel: float = 1e-8
    seed: int = 0
    char_length: float = 1.0
    checks: list[str] | None = None
    out_path: str = "fields.csv"
    out_format: str = "csv"
    text_sha256: str = ""
    raw: dict = field(default_factory=dict)

    @property
    def r_min(self):
        return 1e-9 * self.char_length


def _parse_scalar(value, errors, key):
    v = value.strip().lower()
    try:
        if v in ("-inf", "inf"):
            return float(v)
        return float(value)
    except ValueError:
        errors.append(f"{key}: expected a number, got {value!r}")
        return math.nan


def _parse_vector(value, errors, key):
    try:
        return np.array([float(p) for p in value.split(",") if p.strip() != ""])
    except ValueError:
        errors.append(f"{key}: expected comma-separated numbers, got {value!r}")
        return np.zeros(3)


def _parse_range(value, errors, key):
    parts = value.split(":")
    if len(parts) != 3:
        errors.append(f"{key}: expected min:max:count, got {value!r}")
        return (0.0, 0.0, 1)
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        errors.append(f"{key}: expected min:max:count with numeric fields, got {value!r}")
        return (0.0, 0.0, 1)
    if n < 1:
        errors.append(f"{key}: count must be >= 1, got {n}")
        n = 1
    return (lo, hi, n)


def _build_material(kv, errors):
    rho = _parse_scalar(kv.get("material.rho", "1.0"), errors, "material.rho")
    mu = _parse_scalar(kv.get("material.mu", "1.0"), errors, "material.mu")
    has_lam = "material.lam" in kv
    has_nu = "material.nu" in kv
    if has_lam and has_nu:
        errors.append("material: give either material.lam or material.nu, not both")
    try:
        if has_nu:
            return make_material_poisson(rho, mu, _parse_scalar(kv["material.nu"], errors, "material.nu"))
        lam = _parse_scalar(kv.get("material.lam", "1.0"), errors, "material.lam")
        return make_material(rho, lam, mu)
    except ValueError as exc:
        errors.append(f"material: {exc}")
        return make_material(1.0, 1.0, 1.0)


def _build_trajectory(kv, errors):
    preset = kv.get("trajectory.preset", "static").strip()
    if preset not in TRAJECTORY_PRESETS:
        errors.append(
            f"trajectory.preset: unknown preset {preset!r}; known: {sorted(TRAJECTORY_PRESETS)}"
        )
        return static_trajectory([0, 0, 0])
    try:
        if preset == "static":
            return static_trajectory(_parse_vector(kv.get("trajectory.position", "0,0,0"), errors, "trajectory.position"))
        if preset == "uniform":
            return uniform_trajectory(
                _parse_vector(kv.get("trajectory.origin", "0,0,0"), errors, "trajectory.origin"),
                _parse_vector(kv.get("trajectory.velocity", "0,0,0"), errors, "trajectory.velocity"),
            )
        if preset == "oscillatory":
            return oscillatory_trajectory(
                _parse_vector(kv.get("trajectory.center", "0,0,0"), errors, "trajectory.center"),
                _parse_vector(kv.get("trajectory.amplitude", "0,0,0"), errors, "trajectory.amplitude"),
                _parse_scalar(kv.get("trajectory.omega", "1.0"), errors, "trajectory.omega"),
                _parse_scalar(kv.get("trajectory.phase", "0.0"), errors, "trajectory.phase"),
            )
        if preset == "tabulated":
            times = _parse_vector(kv.get("trajectory.times", ""), errors, "trajectory.times")
            flat = _parse_vector(kv.get("trajectory.positions", ""), errors, "trajectory.positions")
            if times.size < 2 or flat.size != 3 * times.size:
                errors.append("trajectory: tabulated preset needs times (n>=2) and 3n positions")
                return static_trajectory([0, 0, 0])
            return tabulated_trajectory(times, flat.reshape(-1, 3))
        breaks = _parse_vector(kv.get("trajectory.breakpoints", ""), errors, "trajectory.breakpoints")
        flat = _parse_vector(kv.get("trajectory.coefficients", ""), errors, "trajectory.coefficients")
        n_int = breaks.size - 1
        if n_int < 1 or flat.size % (3 * n_int) != 0:
            errors.append(
                "trajectory: piecewise-polynomial needs breakpoints (n>=2) and "
                "order*3*(n-1) coefficients"
            )
            return static_trajectory([0, 0, 0])
        order = flat.size // (3 * n_int)
        return piecewise_polynomial_trajectory(breaks, flat.reshape(order, n_int, 3))
    except (ValueError, TypeError) as exc:
        errors.append(f"trajectory: {exc}")
        return static_trajectory([0, 0, 0])


def _build_force(kv, errors):
    preset = kv.get("force.preset", "constant").strip()
    if preset not in FORCE_PRESETS:
        errors.append(f"force.preset: unknown preset {preset!r}; known: {sorted(FORCE_PRESETS)}")
        return constant_force([0, 0, 1])
    q0 = _parse_vector(kv.get("force.q0", "0,0,1"), errors, "force.q0")
    t_on = _parse_scalar(kv.get("force.t_on", "-inf"), errors, "force.t_on")
    try:
        if preset == "constant":
            return constant_force(q0)
        if preset == "step":
            return step_force(q0, t_on)
        if preset == "ramp":
            return ramp_force(_parse_vector(kv.get("force.rate", "0,0,1"), errors, "force.rate"), t_on)
        if preset == "sinusoid":
            return sinusoid_force(
                q0,
                _parse_scalar(kv.get("force.omega", "1.0"), errors, "force.omega"),
                _parse_scalar(kv.get("force.phase", "0.0"), errors, "force.phase"),
            )
        if preset == "bump":
            return bump_force(
                q0,
                _parse_scalar(kv.get("force.center", "0.0"), errors, "force.center"),
                _parse_scalar(kv.get("force.half_width", "1.0"), errors, "force.half_width"),
            )
        flat = _parse_vector(kv.get("force.coefficients", ""), errors, "force.coefficients")
        if flat.size == 0 or flat.size % 3 != 0:
            errors.append("force: polynomial preset needs 3k coefficients (rows of 3)")
            return constant_force(q0)
        if not math.isfinite(t_on):
            errors.append("force: polynomial preset requires a finite force.t_on")
            t_on = 0.0
        return polynomial_force(flat.reshape(-1, 3), t_on)
    except (ValueError, TypeError) as exc:
        errors.append(f"force: {exc}")
        return constant_force([0, 0, 1])


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a config; raises ConfigError listing every violation."""
    errors: list[str] = []
    kv: dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'section.key = value', got {raw_line!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in kv:
            errors.append(f"line {lineno}: duplicate key {key!r}")
        kv[key] = value

    mat = _build_material(kv, errors)
    traj = _build_trajectory(kv, errors)
    prof = _build_force(kv, errors)

    dimension = kv.get("source.dimension", "3d-point").strip()
    if dimension not in DIMENSIONS:
        errors.append(f"source.dimension: must be one of {DIMENSIONS}, got {dimension!r}")

    if traj.vmax >= mat.cT:
        errors.append(
            f"supersonic trajectory: vmax={traj.vmax:g} >= cT={mat.cT:g}; only subsonic motion is supported"
        )
    if dimension.startswith("2d") and not math.isfinite(prof.t_on):
        errors.append("finite switch-on required in 2D: force.t_on must be finite")
    if math.isfinite(traj.domain[0]) and prof.t_on < traj.domain[0]:
        errors.append("force.t_on precedes the first trajectory knot")

    grid = GridSpec(
        x1=_parse_range(kv.get("grid.x1", "0:0:1"), errors, "grid.x1"),
        x2=_parse_range(kv.get("grid.x2", "0:0:1"), errors, "grid.x2"),
        x3=_parse_range(kv.get("grid.x3", "0:0:1"), errors, "grid.x3"),
        t=_parse_range(kv.get("grid.t", "0:0:1"), errors, "grid.t"),
    )

    tols = {}
    for name, default in (
        ("quad_rel", 1e-10), ("retarded_rel", 1e-12), ("history_rel", 1e-8)
    ):
        val = _parse_scalar(kv.get(f"tolerances.{name}", str(default)), errors, f"tolerances.{name}")
        if not val > 0.0:
            errors.append(f"tolerances.{name}: must be positive, got {val:g}")
            val = default
        tols[name] = val

    char_length = _parse_scalar(kv.get("run.char_length", "1.0"), errors, "run.char_length")
    if not char_length > 0.0:
        errors.append(f"run.char_length: must be positive, got {char_length:g}")
        char_length = 1.0
    try:
        seed = int(kv.get("run.seed", "0"))
    except ValueError:
        errors.append(f"run.seed: expected an integer, got {kv.get('run.seed')!r}")
        seed = 0

    checks = None
    if "run.checks" in kv:
        checks = [c.strip() for c in kv["run.checks"].split(",") if c.strip()]

    out_format = kv.get("output.format", "csv").strip()
    if out_format not in ("csv", "json"):
        errors.append(f"output.format: must be csv or json, got {out_format!r}")
        out_format = "csv"

    if errors:
        raise ConfigError(errors)

    return RunConfig(
        material=mat,
        dimension=dimension,
        trajectory=traj,
        force=prof,
        grid=grid,
        quad_rel=tols["quad_rel"],
        retarded_rel=tols["retarded_rel"],
        history_rel=tols["history_rel"],
        seed=seed,
        char_length=char_length,
        checks=checks,
        out_path=kv.get("output.path", "fields.csv").strip(),
        out_format=out_format,
        text_sha256=hashlib.sha256(text.encode("utf-8")).hexdigest(),
        raw=kv,
    )
