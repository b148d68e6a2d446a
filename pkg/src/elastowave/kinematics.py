"""Source trajectories, force-magnitude profiles, and retarded-time solving.

A trajectory supplies the source worldline s(t) with exact analytic
velocity and acceleration; a force profile supplies the strength Q(t) and
its analytic derivative. The retarded-time condition

    t - t' - kappa * |x - s(t')| = 0

is strictly monotone in t' whenever the source stays slower than the wave
speed 1/kappa, so a bracketed Newton iteration with bisection fallback
always converges to the unique root. The same solver serves 3D points and
2D lines (``dim=2`` restricts the geometry to the x1-x2 plane).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline, PPoly

from .errors import (
    ExtrapolationError,
    NoRetardationError,
    SingularPointError,
    SupersonicError,
)

__all__ = [
    "Trajectory",
    "ForceProfile",
    "RetardedState",
    "static_trajectory",
    "uniform_trajectory",
    "oscillatory_trajectory",
    "piecewise_polynomial_trajectory",
    "tabulated_trajectory",
    "constant_force",
    "step_force",
    "ramp_force",
    "sinusoid_force",
    "bump_force",
    "polynomial_force",
    "eval_trajectory",
    "eval_force",
    "retarded_time",
    "retarded_time_bisection",
]

DEFAULT_RETARDED_TOL = 1e-12
DEFAULT_R_MIN = 1e-9

_VMAX_SAMPLES = 10_000


@dataclass(frozen=True)
class Trajectory:
    """Source worldline with analytic derivatives.

    ``vmax`` is the declared supremum of |V|; exact for the analytic
    presets, spot-checked by dense sampling for tabulated/piecewise data.
    ``domain`` bounds where the worldline is defined (infinite for the
    analytic presets).
    """

    kind: str
    vmax: float
    _fn: Callable[[float], tuple[np.ndarray, np.ndarray, np.ndarray]] = field(repr=False)
    domain: tuple[float, float] = (-math.inf, math.inf)

    def eval(self, t):
        """Return (s, V, A) at time t; batched evaluation accepts an array."""
        ta = np.asarray(t, dtype=float)
        lo = ta.min() if ta.ndim else ta
        hi = ta.max() if ta.ndim else ta
        if lo < self.domain[0] or hi > self.domain[1]:
            raise ExtrapolationError(
                f"time {t!r} outside trajectory domain [{self.domain[0]:g}, {self.domain[1]:g}]"
            )
        return self._fn(t)


@dataclass(frozen=True)
class ForceProfile:
    """Force strength Q(t) and its analytic time derivative.

    Q and Qdot vanish identically outside [t_on, t_off]. 2D history
    integrals require a finite t_on; 3D admits t_on = -inf.
    """

    kind: str
    t_on: float
    _fn: Callable[[float], tuple[np.ndarray, np.ndarray]] = field(repr=False)
    t_off: float = math.inf

    def eval(self, t):
        """Return (Q, Qdot) at time t; batched evaluation accepts an array."""
        ta = np.asarray(t, dtype=float)
        if ta.ndim == 0:
            if ta < self.t_on or ta > self.t_off:
                z = np.zeros(3)
                return z, z
            return self._fn(float(ta))
        q, qd = self._fn(ta)
        active = ((ta >= self.t_on) & (ta <= self.t_off))[:, None]
        return np.where(active, q, 0.0), np.where(active, qd, 0.0)


@dataclass(frozen=True)
class RetardedState:
    """Solved retarded time and the geometric bundle evaluated there.

    Attributes:
        t_ret: retarded time [s]
        rvec:  R = x - s(t_ret) [m] (2 or 3 components)
        r:     |R| [m]
        n:     R / |R|
        pc:    Doppler denominator R - kappa * (V . R) [m], positive for
               subsonic motion
        slowness: kappa = 1/c used for this solve [s/m]
    """

    t_ret: float
    rvec: np.ndarray
    r: float
    n: np.ndarray
    pc: float
    slowness: float


# ---------------------------------------------------------------------------
# trajectory presets

def _sampled_vmax(fn, lo, hi):
    ts = np.linspace(lo, hi, _VMAX_SAMPLES)
    return max(float(np.linalg.norm(fn(t)[1])) for t in ts)


def _vec3(v):
    a = np.asarray(v, dtype=float).reshape(-1)
    if a.size == 2:
        a = np.array([a[0], a[1], 0.0])
    if a.size != 3:
        raise ValueError(f"expected a 2- or 3-vector, got {v!r}")
    return a


def _broadcast_const(vec, t):
    t = np.asarray(t, dtype=float)
    if t.ndim == 0:
        return vec
    return np.broadcast_to(vec, t.shape + (3,))


def static_trajectory(position) -> Trajectory:
    """Source fixed at ``position``."""
    p = _vec3(position)
    zero = np.zeros(3)

    def fn(t):
        return _broadcast_const(p, t), _broadcast_const(zero, t), _broadcast_const(zero, t)

    return Trajectory("static", 0.0, fn)


def uniform_trajectory(origin, velocity) -> Trajectory:
    """s(t) = origin + velocity * t."""
    x0 = _vec3(origin)
    v = _vec3(velocity)
    zero = np.zeros(3)
    speed = float(np.linalg.norm(v))

    def fn(t):
        return x0 + np.multiply.outer(np.asarray(t, float), v), _broadcast_const(v, t), _broadcast_const(zero, t)

    return Trajectory("uniform", speed, fn)


def oscillatory_trajectory(center, amplitude, omega: float, phase: float = 0.0) -> Trajectory:
    """s(t) = center + amplitude * sin(omega*t + phase); vmax = |amplitude|*omega."""
    c = _vec3(center)
    a = _vec3(amplitude)
    w = float(omega)

    def fn(t):
        ph = w * np.asarray(t, float) + phase
        sin, cos = np.sin(ph), np.cos(ph)
        return (
            c + np.multiply.outer(sin, a),
            np.multiply.outer(cos, w * a),
            np.multiply.outer(sin, -w * w * a),
        )

    return Trajectory("oscillatory", float(np.linalg.norm(a)) * abs(w), fn)


def piecewise_polynomial_trajectory(breakpoints, coefficients) -> Trajectory:
    """Piecewise-polynomial worldline on a finite window.

    ``coefficients`` has shape (order, n_intervals, 3) in the scipy PPoly
    convention (highest power first, local variable t - breakpoints[i]).
    """
    breaks = np.asarray(breakpoints, dtype=float)
    coefs = np.asarray(coefficients, dtype=float)
    pp = PPoly(coefs, breaks)
    dpp = pp.derivative()
    ddpp = dpp.derivative()

    def fn(t):
        return np.asarray(pp(t), float), np.asarray(dpp(t), float), np.asarray(ddpp(t), float)

    dom = (float(breaks[0]), float(breaks[-1]))
    return Trajectory("piecewise-polynomial", _sampled_vmax(fn, *dom), fn, dom)


def tabulated_trajectory(times, positions) -> Trajectory:
    """C2 cubic-spline interpolant through sampled positions.

    Queries outside [times[0], times[-1]] raise ExtrapolationError; any
    force profile used with this trajectory must switch on at or after
    the first knot.
    """
    ts = np.asarray(times, dtype=float)
    ps = np.asarray(positions, dtype=float)
    if ps.shape != (ts.size, 3):
        raise ValueError("positions must have shape (len(times), 3)")
    sp = CubicSpline(ts, ps, axis=0, bc_type="natural")
    dsp = sp.derivative()
    ddsp = dsp.derivative()

    def fn(t):
        return np.asarray(sp(t), float), np.asarray(dsp(t), float), np.asarray(ddsp(t), float)

    dom = (float(ts[0]), float(ts[-1]))
    return Trajectory("tabulated", _sampled_vmax(fn, *dom), fn, dom)


def eval_trajectory(traj: Trajectory, t: float):
    """Return (s, V, A) at time t; errors outside a tabulated domain."""
    return traj.eval(t)


# ---------------------------------------------------------------------------
# force-profile presets

def constant_force(q0) -> ForceProfile:
    """Q(t) = q0 for all time (t_on = -inf)."""
    q = _vec3(q0)
    zero = np.zeros(3)

    def fn(t):
        return _broadcast_const(q, t), _broadcast_const(zero, t)

    return ForceProfile("constant", -math.inf, fn)


def step_force(q0, t_on: float) -> ForceProfile:
    """Q(t) = q0 * H(t - t_on)."""
    q = _vec3(q0)
    zero = np.zeros(3)

    def fn(t):
        return _broadcast_const(q, t), _broadcast_const(zero, t)

    return ForceProfile("step", float(t_on), fn)


def ramp_force(rate, t_on: float) -> ForceProfile:
    """Q(t) = rate * (t - t_on) for t >= t_on."""
    r = _vec3(rate)

    def fn(t):
        return np.multiply.outer(np.asarray(t, float) - t_on, r), _broadcast_const(r, t)

    return ForceProfile("ramp", float(t_on), fn)


def sinusoid_force(q0, omega: float, phase: float = 0.0) -> ForceProfile:
    """Q(t) = q0 * sin(omega*t + phase), active for all time."""
    q = _vec3(q0)
    w = float(omega)

    def fn(t):
        ph = w * np.asarray(t, float) + phase
        return np.multiply.outer(np.sin(ph), q), np.multiply.outer(np.cos(ph), w * q)

    return ForceProfile("sinusoid", -math.inf, fn)


def bump_force(q0, center: float, half_width: float) -> ForceProfile:
    """Smooth compactly supported pulse on [center - w, center + w].

    Q(t) = q0 * exp(1 - 1/(1 - xi^2)) with xi = (t - center)/w; infinitely
    differentiable, exactly zero outside the support.
    """
    q = _vec3(q0)
    w = float(half_width)
    if w <= 0.0:
        raise ValueError("half_width must be positive")

    def fn(t):
        xi = (np.asarray(t, float) - center) / w
        g = 1.0 - xi * xi
        inside = g > 0.0
        g_safe = np.where(inside, g, 1.0)
        e = np.where(inside, np.exp(1.0 - 1.0 / g_safe), 0.0)
        return (
            np.multiply.outer(e, q),
            np.multiply.outer(e * (-2.0 * xi / (g_safe * g_safe)) / w, q),
        )

    return ForceProfile("bump", center - w, fn, t_off=center + w)


def polynomial_force(coefficients, t_on: float) -> ForceProfile:
    """Q_i(t) = sum_k c[k, i] * (t - t_on)^k for t >= t_on.

    ``coefficients`` has shape (order + 1, 3), lowest power first.
    """
    c = np.asarray(coefficients, dtype=float)
    if c.ndim != 2 or c.shape[1] != 3:
        raise ValueError("coefficients must have shape (order + 1, 3)")
    dc = c[1:] * np.arange(1, c.shape[0])[:, None] if c.shape[0] > 1 else np.zeros((1, 3))

    def fn(t):
        tau = np.asarray(t, float) - t_on
        q = np.multiply.outer(tau, np.ones(c.shape[0])) ** np.arange(c.shape[0]) @ c
        qd = np.multiply.outer(tau, np.ones(dc.shape[0])) ** np.arange(dc.shape[0]) @ dc
        return q, qd

    return ForceProfile("polynomial", float(t_on), fn)


def eval_force(profile: ForceProfile, t: float):
    """Return (Q, Qdot) at time t."""
    return profile.eval(t)


# ---------------------------------------------------------------------------
# retarded-time solving

def _retardation_geometry(traj, x, t, dim):
    s, v, _ = traj.eval(t)
    rvec = x - s[:dim]
    r = math.sqrt(float(rvec @ rvec))
    return rvec, r, v[:dim]


def _bracket(traj, x, t, slowness, dim):
    """Bracket [lo, hi] with f(lo) >= 0 >= f(hi) for f = t - t' - kappa R(t').

    For |V| <= vmax with kappa*vmax < 1 the initial bracket is already
    guaranteed; geometric expansion only fires when a sampled vmax slightly
    underestimates the true supremum.
    """
    kv = slowness * traj.vmax
    _, r_now, _ = _retardation_geometry(traj, x, t, dim)
    lo = t - slowness * r_now / (1.0 - kv)
    hi = t - slowness * r_now / (1.0 + kv)

    def f(tp):
        _, r, _ = _retardation_geometry(traj, x, tp, dim)
        return t - tp - slowness * r

    t_min = traj.domain[0]
    if hi < t_min:
        raise NoRetardationError(
            f"retarded time for event (t={t:g}) precedes the trajectory domain"
        )
    if lo < t_min:
        lo = t_min
    flo = f(lo)
    span = max(hi - lo, slowness * max(r_now, 1.0), 1e-9)
    while flo < 0.0:
        if lo <= t_min:
            raise NoRetardationError(
                f"retarded time for event (t={t:g}) precedes the trajectory domain"
            )
        lo = max(lo - span, t_min)
        span *= 2.0
        flo = f(lo)
    fhi = f(hi)
    while fhi > 0.0:
        new_hi = min(0.5 * (hi + t), t)
        if new_hi == hi:
            break
        hi = new_hi
        fhi = f(hi)
    return lo, hi, flo, fhi


def _finalize_state(traj, x, t, tp, slowness, r_min, dim):
    rvec, r, v = _retardation_geometry(traj, x, tp, dim)
    if r < r_min:
        raise SingularPointError(
            f"observer within r_min={r_min:g} of the source worldline at t'={tp:g}"
        )
    pc = r - slowness * float(v @ rvec)
    if pc <= 0.0:
        raise SupersonicError(
            f"non-positive Doppler denominator P_c={pc:g}; motion is not subsonic "
            f"for slowness {slowness:g}"
        )
    return RetardedState(
        t_ret=tp, rvec=rvec, r=r, n=rvec / r, pc=pc, slowness=slowness
    )


def _check_slowness(traj, slowness):
    if slowness <= 0.0:
        raise ValueError("slowness must be positive")
    if slowness * traj.vmax >= 1.0:
        raise SupersonicError(
            f"trajectory vmax={traj.vmax:g} is not subsonic for wave speed "
            f"{1.0 / slowness:g}"
        )


def retarded_time(
    traj: Trajectory,
    x,
    t: float,
    slowness: float,
    tol: float = DEFAULT_RETARDED_TOL,
    r_min: float = DEFAULT_R_MIN,
    dim: int = 3,
) -> RetardedState:
    """Solve t - t' - kappa |x - s(t')| = 0 for the unique subsonic root.

    Bracketed Newton with bisection fallback; the residual is driven to
    |f| <= tol * max(1, t - t'). Raises NoRetardationError when the root
    precedes a bounded trajectory domain, SingularPointError when the
    observer sits on the worldline, SupersonicError when kappa*vmax >= 1.
    """
    x = np.asarray(x, dtype=float)[:dim]
    _check_slowness(traj, slowness)
    lo, hi, flo, fhi = _bracket(traj, x, t, slowness, dim)
    if fhi >= 0.0:
        tp = hi
    else:
        tp = 0.5 * (lo + hi)
        for _ in range(120):
            rvec, r, v = _retardation_geometry(traj, x, tp, dim)
            fval = t - tp - slowness * r
            if fval == 0.0:
                break
            if fval > 0.0:
                lo = tp
            else:
                hi = tp
            df = -1.0 + (slowness * float(v @ rvec) / r if r > 0.0 else 0.0)
            t_new = tp - fval / df
            if abs(fval) <= tol * max(1.0, t - tp):
                # One final Newton increment past the tolerance keeps solver
                # jitter at machine level; downstream adaptive quadrature of
                # smooth kappa-integrands relies on that. The increment is
                # tiny here, so a non-strict bracket test suffices.
                if lo <= t_new <= hi:
                    tp = t_new
                break
            if not lo < t_new < hi:
                t_new = 0.5 * (lo + hi)
            if t_new == tp:
                break
            tp = t_new
    return _finalize_state(traj, x, t, tp, slowness, r_min, dim)


def retarded_time_bisection(
    traj: Trajectory,
    x,
    t: float,
    slowness: float,
    tol: float = DEFAULT_RETARDED_TOL,
    r_min: float = DEFAULT_R_MIN,
    dim: int = 3,
) -> RetardedState:
    """Plain-bisection reference solver for the same root as retarded_time."""
    x = np.asarray(x, dtype=float)[:dim]
    _check_slowness(traj, slowness)
    lo, hi, flo, fhi = _bracket(traj, x, t, slowness, dim)
    if fhi >= 0.0:
        return _finalize_state(traj, x, t, hi, slowness, r_min, dim)
    eps = np.finfo(float).eps
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 4.0 * eps * max(1.0, abs(lo), abs(hi)):
            break
        _, r, _ = _retardation_geometry(traj, x, mid, dim)
        if t - mid - slowness * r > 0.0:
            lo = mid
        else:
            hi = mid
    return _finalize_state(traj, x, t, 0.5 * (lo + hi), slowness, r_min, dim)
