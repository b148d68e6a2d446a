"""Exact elastodynamic fields of a non-uniformly moving subsonic point force.

The displacement of a point force Q(t) moving along s(t) through an
unbounded isotropic medium is a superposition of three retarded
contributions: a transversal term propagating at cT, a longitudinal term
at cL, and an intermediate term integrated over slowness kappa between
1/cL and 1/cT. Each carries a Doppler denominator P = R - kappa (V . R)
evaluated at its own retarded time. Distortion (beta_ik = d_k u_i) and
particle velocity (v_i = d_t u_i) follow by exact differentiation of the
retarded geometry; no numerical differentiation appears in the production
path.

The distortion and velocity split naturally into a part driven by the
force rate Qdot, a part driven by the source acceleration Vdot (the
radiation part, decaying as 1/R), and a velocity-only remainder (the
near field, 1/R^2). ``radiation_split`` exposes that decomposition.

Static-source limits reduce to the classical time-dependent concentrated
force solution (``stokes_*``) and, for constant strength, to the static
concentrated-force solution (``kelvin_*``); both closed forms live here
and double as oracles for the moving-source evaluator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import NoRetardationError, SupersonicError, TransonicAccuracyWarning
from .kinematics import (
    DEFAULT_R_MIN,
    DEFAULT_RETARDED_TOL,
    ForceProfile,
    RetardedState,
    Trajectory,
    retarded_time,
)
from .material import Material
from .quadrature import adaptive_gauss_legendre

__all__ = [
    "QuadSpec",
    "KappaQuadrature",
    "FieldSample",
    "lw_fields",
    "lw_displacement",
    "lw_distortion",
    "lw_velocity",
    "radiation_split",
    "stokes_displacement",
    "stokes_gradient",
    "stokes_gradient_split",
    "kelvin_displacement",
    "kelvin_gradient",
    "kappa_integrate",
]

_I3 = np.eye(3)


@dataclass(frozen=True)
class QuadSpec:
    """Adaptive slowness-quadrature settings for the intermediate term."""

    rel_tol: float = 1e-10
    nodes: int = 16
    max_depth: int = 44


@dataclass
class KappaQuadrature:
    """Realized slowness quadrature for one observation event.

    Nodes are strictly interior to [1/cL, 1/cT]; weights sum to the
    interval length 1/cT - 1/cL. ``states`` caches the retarded solve at
    each node so displacement, distortion, velocity and the radiation
    split all share one solve per node.
    """

    nodes: np.ndarray
    weights: np.ndarray
    states: dict = field(default_factory=dict)


@dataclass
class FieldSample:
    """Fields at one observation event.

    ``beta_parts``/``v_parts`` hold the {vel, acc, qdot} decomposition;
    the parts sum to the totals within quadrature tolerance.
    """

    u: np.ndarray
    beta: np.ndarray
    v: np.ndarray
    beta_parts: dict | None = None
    v_parts: dict | None = None


def _require_subsonic(mat: Material, traj: Trajectory):
    if traj.vmax >= mat.cT:
        raise SupersonicError(
            f"trajectory vmax={traj.vmax:g} >= cT={mat.cT:g}; only subsonic motion is supported"
        )
    if traj.vmax > 0.95 * mat.cT:
        warnings.warn(
            f"vmax={traj.vmax:g} exceeds 0.95*cT={0.95 * mat.cT:g}; "
            "field accuracy is not guaranteed this close to the transonic limit",
            TransonicAccuracyWarning,
            stacklevel=3,
        )


def _require_history(traj: Trajectory, prof: ForceProfile):
    # Zero initial conditions demand Q = 0 wherever the worldline is undefined.
    if math.isfinite(traj.domain[0]) and prof.t_on < traj.domain[0]:
        raise ValueError(
            "force switches on before the first trajectory knot; "
            "the force must vanish where the worldline is undefined"
        )


# ---------------------------------------------------------------------------
# per-channel term assembly
#
# Each retarded channel is characterized by (p, k, G, m): an overall
# prefactor p, the channel slowness k, a projector G acting on the force,
# and a sign multiplier m for the purely geometric gradient terms.
#   transversal:   p = kT^2, k = kT, Gq = q - n (n.q),       m = +1
#   longitudinal:  p = kL^2, k = kL, Gq = n (n.q),           m = -1
#   intermediate:  p = kappa, k = kappa, Gq = 3 n (n.q) - q, m = -3

def _channel_terms(p, k, m, st: RetardedState, v, a, q, qd, gq, gqd):
    rv = st.rvec
    r = st.r
    pc = st.pc
    rq = float(rv @ q)
    vq = float(v @ q)
    vr = float(v @ rv)
    ar = float(a @ rv)
    vv = float(v @ v)
    pc2 = pc * pc
    pc3 = pc2 * pc

    u = (p / pc) * gq

    b_qdot = (p * k / pc2) * np.outer(gqd, rv)
    b_acc = (p * k * k * ar / pc3) * np.outer(gq, rv)
    geom = (
        (rq / (r * r * pc)) * (_I3 + (k / pc) * np.outer(v, rv))
        + np.outer(rv, q + (k * vq / pc) * rv) / (r * r * pc)
        - (2.0 * rq / (r ** 3 * pc2)) * np.outer(rv, rv)
    )
    b_vel = (p / pc3) * np.outer(gq, (1.0 - k * k * vv) * rv - (k * pc) * v) + (p * m) * geom

    v_qdot = (p * r / pc2) * gqd
    v_acc = (p * k * r * ar / pc3) * gq
    geom_v = ((rq * v + vq * rv) / (r * pc2)) - (2.0 * vr * rq / (r ** 3 * pc2)) * rv
    v_vel = (p * (vr - k * r * vv) / pc3) * gq + (p * m) * geom_v

    return u, b_qdot, b_vel, b_acc, v_qdot, v_vel, v_acc


def _motion_and_force(traj, prof, st):
    _, v, a = traj.eval(st.t_ret)
    q, qd = prof.eval(st.t_ret)
    return v, a, q, qd


def _far_channel(mat, traj, prof, st, transversal):
    """Transversal or longitudinal channel contribution (7-tuple of terms)."""
    v, a, q, qd = _motion_and_force(traj, prof, st)
    n = st.n
    nq = float(n @ q) * n
    nqd = float(n @ qd) * n
    if transversal:
        k = 1.0 / mat.cT
        gq, gqd, m = q - nq, qd - nqd, 1.0
    else:
        k = 1.0 / mat.cL
        gq, gqd, m = nq, nqd, -1.0
    return _channel_terms(k * k, k, m, st, v, a, q, qd, gq, gqd)


def _kappa_integrand_full(traj, prof, st):
    """All field components of the intermediate-slowness integrand at one node."""
    v, a, q, qd = _motion_and_force(traj, prof, st)
    n = st.n
    gq = 3.0 * float(n @ q) * n - q
    gqd = 3.0 * float(n @ qd) * n - qd
    k = st.slowness
    u, b_qd, b_vel, b_acc, v_qd, v_vel, v_acc = _channel_terms(
        k, k, -3.0, st, v, a, q, qd, gq, gqd
    )
    return np.concatenate(
        [u, b_qd.ravel(), b_vel.ravel(), b_acc.ravel(), v_qd, v_vel, v_acc]
    )


class _StateCache:
    """Retarded-time solves for one (x, t), keyed by slowness."""

    def __init__(self, traj, x, t, tol, r_min):
        self.traj = traj
        self.x = x
        self.t = t
        self.tol = tol
        self.r_min = r_min
        self.states: dict[float, RetardedState | None] = {}

    def state(self, kappa: float) -> RetardedState | None:
        st = self.states.get(kappa, _MISSING)
        if st is _MISSING:
            try:
                st = retarded_time(self.traj, self.x, self.t, kappa, self.tol, self.r_min)
            except NoRetardationError:
                # Root precedes the worldline; the force vanishes there.
                st = None
            self.states[kappa] = st
        return st


_MISSING = object()


def _solve_retarded_batch(traj, x, t, kappas, tol, r_min):
    """Vectorized bracketed Newton over an array of slownesses.

    Only used for trajectories defined on all of time, where a root always
    exists; the scalar path handles bounded domains.
    """
    from .errors import SingularPointError

    kappas = np.asarray(kappas, dtype=float)
    s_now, _, _ = traj.eval(t)
    r_now = float(np.linalg.norm(x - s_now))
    kv = kappas * traj.vmax
    lo = t - kappas * r_now / (1.0 - kv)
    hi = t - kappas * r_now / (1.0 + kv)
    tp = 0.5 * (lo + hi)
    eps = np.finfo(float).eps
    for _ in range(120):
        s, v, _ = traj.eval(tp)
        rv = x[None, :] - s
        r = np.sqrt(np.einsum("ni,ni->n", rv, rv))
        fval = t - tp - kappas * r
        pos = fval > 0.0
        lo = np.where(pos, tp, lo)
        hi = np.where(pos, hi, tp)
        df = -1.0 + kappas * np.einsum("ni,ni->n", v, rv) / r
        t_new = tp - fval / df
        outside = ~((lo < t_new) & (t_new < hi))
        t_new = np.where(outside, 0.5 * (lo + hi), t_new)
        done = np.abs(fval) <= 64.0 * eps * np.maximum(1.0, t - tp)
        tp = np.where(done, tp, t_new)
        if bool(np.all(done)):
            break
    s, v, a = traj.eval(tp)
    rv = x[None, :] - s
    r = np.sqrt(np.einsum("ni,ni->n", rv, rv))
    if np.any(r < r_min):
        raise SingularPointError(
            f"observer within r_min={r_min:g} of the source worldline"
        )
    pc = r - kappas * np.einsum("ni,ni->n", v, rv)
    if np.any(pc <= 0.0):
        raise SupersonicError("non-positive Doppler denominator in batched solve")
    return tp, rv, r, pc, v, a


def _batch_channel_terms(p, k, m, rv, r, pc, v, a, q, qd, gq, gqd):
    """Vectorized analog of _channel_terms over a leading node axis."""
    n_nodes = rv.shape[0]
    rq = np.einsum("ni,ni->n", rv, q)
    vq = np.einsum("ni,ni->n", v, q)
    vr = np.einsum("ni,ni->n", v, rv)
    ar = np.einsum("ni,ni->n", a, rv)
    vv = np.einsum("ni,ni->n", v, v)
    pc2 = pc * pc
    pc3 = pc2 * pc
    r2 = r * r

    def outer(u1, u2):
        return np.einsum("ni,nk->nik", u1, u2)

    u = (p / pc)[:, None] * gq
    b_qdot = (p * k / pc2)[:, None, None] * outer(gqd, rv)
    b_acc = (p * k * k * ar / pc3)[:, None, None] * outer(gq, rv)
    eye = np.broadcast_to(_I3, (n_nodes, 3, 3))
    geom = (
        (rq / (r2 * pc))[:, None, None] * (eye + (k / pc)[:, None, None] * outer(v, rv))
        + outer(rv, q + ((k * vq / pc)[:, None] * rv)) / (r2 * pc)[:, None, None]
        - (2.0 * rq / (r2 * r * pc2))[:, None, None] * outer(rv, rv)
    )
    b_vel = (p / pc3)[:, None, None] * outer(
        gq, (1.0 - k * k * vv)[:, None] * rv - (k * pc)[:, None] * v
    ) + (p * m)[:, None, None] * geom

    v_qdot = (p * r / pc2)[:, None] * gqd
    v_acc = (p * k * r * ar / pc3)[:, None] * gq
    geom_v = (rq[:, None] * v + vq[:, None] * rv) / (r * pc2)[:, None] - (
        2.0 * vr * rq / (r2 * r * pc2)
    )[:, None] * rv
    v_vel = (p * (vr - k * r * vv) / pc3)[:, None] * gq + (p * m)[:, None] * geom_v

    return np.concatenate(
        [
            u,
            b_qdot.reshape(n_nodes, 9),
            b_vel.reshape(n_nodes, 9),
            b_acc.reshape(n_nodes, 9),
            v_qdot,
            v_vel,
            v_acc,
        ],
        axis=1,
    )


def _batch_kappa_full(traj, prof, x, t, kappas, tol, r_min):
    tp, rv, r, pc, v, a = _solve_retarded_batch(traj, x, t, kappas, tol, r_min)
    q, qd = prof.eval(tp)
    nvec = rv / r[:, None]
    nq = np.einsum("ni,ni->n", nvec, q)
    nqd = np.einsum("ni,ni->n", nvec, qd)
    gq = 3.0 * nq[:, None] * nvec - q
    gqd = 3.0 * nqd[:, None] * nvec - qd
    m = np.full_like(kappas, -3.0)
    return _batch_channel_terms(kappas, kappas, m, rv, r, pc, v, a, q, qd, gq, gqd)


def _batch_kappa_u(traj, prof, x, t, kappas, tol, r_min):
    tp, rv, r, pc, _, _ = _solve_retarded_batch(traj, x, t, kappas, tol, r_min)
    q, _ = prof.eval(tp)
    nvec = rv / r[:, None]
    nq = np.einsum("ni,ni->n", nvec, q)
    gq = 3.0 * nq[:, None] * nvec - q
    return (kappas / pc)[:, None] * gq


def lw_fields(
    mat: Material,
    traj: Trajectory,
    prof: ForceProfile,
    x,
    t: float,
    quad: QuadSpec | None = None,
    tol_ret: float = DEFAULT_RETARDED_TOL,
    r_min: float = DEFAULT_R_MIN,
) -> FieldSample:
    """Displacement, distortion and velocity of the moving point force.

    One retarded solve per slowness node is shared by every returned
    quantity. Events the force has not yet influenced give exactly zero.
    """
    _require_subsonic(mat, traj)
    _require_history(traj, prof)
    x = np.asarray(x, dtype=float)
    kL, kT = 1.0 / mat.cL, 1.0 / mat.cT
    quad = quad or QuadSpec()
    cache = _StateCache(traj, x, t, tol_ret, r_min)

    # Vector layout: u(3) | b_qdot(9) | b_vel(9) | b_acc(9) | v_qdot(3) | v_vel(3) | v_acc(3)
    acc = np.zeros(39)
    for kappa, transversal in ((kT, True), (kL, False)):
        st = cache.state(kappa)
        if st is None:
            continue
        terms = _far_channel(mat, traj, prof, st, transversal)
        acc += np.concatenate([np.ravel(term) for term in terms])

    batch_ok = math.isinf(traj.domain[0]) and math.isinf(traj.domain[1])
    if batch_ok:
        def integrand(kappas):
            return _batch_kappa_full(traj, prof, x, t, kappas, tol_ret, r_min)
    else:
        def integrand(kappa):
            st = cache.state(kappa)
            if st is None:
                return np.zeros(39)
            return _kappa_integrand_full(traj, prof, st)

    acc += adaptive_gauss_legendre(
        integrand, kL, kT, rel_tol=quad.rel_tol, nodes=quad.nodes,
        max_depth=quad.max_depth, vectorized=batch_ok,
    )

    pref = 1.0 / (4.0 * math.pi * mat.rho)
    beta_parts = {
        "qdot": -pref * acc[3:12].reshape(3, 3),
        "vel": -pref * acc[12:21].reshape(3, 3),
        "acc": -pref * acc[21:30].reshape(3, 3),
    }
    v_parts = {
        "qdot": pref * acc[30:33],
        "vel": pref * acc[33:36],
        "acc": pref * acc[36:39],
    }
    return FieldSample(
        u=pref * acc[0:3],
        beta=beta_parts["qdot"] + beta_parts["vel"] + beta_parts["acc"],
        v=v_parts["qdot"] + v_parts["vel"] + v_parts["acc"],
        beta_parts=beta_parts,
        v_parts=v_parts,
    )


def lw_displacement(
    mat: Material,
    traj: Trajectory,
    prof: ForceProfile,
    x,
    t: float,
    quad: QuadSpec | None = None,
    tol_ret: float = DEFAULT_RETARDED_TOL,
    r_min: float = DEFAULT_R_MIN,
) -> np.ndarray:
    """Displacement only; cheaper than lw_fields when derivatives are not needed."""
    _require_subsonic(mat, traj)
    _require_history(traj, prof)
    x = np.asarray(x, dtype=float)
    kL, kT = 1.0 / mat.cL, 1.0 / mat.cT
    quad = quad or QuadSpec()
    cache = _StateCache(traj, x, t, tol_ret, r_min)

    u = np.zeros(3)
    for kappa, transversal in ((kT, True), (kL, False)):
        st = cache.state(kappa)
        if st is None:
            continue
        _, _, q, _ = _motion_and_force(traj, prof, st)
        n = st.n
        nq = float(n @ q) * n
        gq = (q - nq) if transversal else nq
        u += (kappa * kappa / st.pc) * gq

    batch_ok = math.isinf(traj.domain[0]) and math.isinf(traj.domain[1])
    if batch_ok:
        def integrand(kappas):
            return _batch_kappa_u(traj, prof, x, t, kappas, tol_ret, r_min)
    else:
        def integrand(kappa):
            st = cache.state(kappa)
            if st is None:
                return np.zeros(3)
            _, _, q, _ = _motion_and_force(traj, prof, st)
            n = st.n
            gq = 3.0 * float(n @ q) * n - q
            return (kappa / st.pc) * gq

    u += adaptive_gauss_legendre(
        integrand, kL, kT, rel_tol=quad.rel_tol, nodes=quad.nodes,
        max_depth=quad.max_depth, vectorized=batch_ok,
    )
    return u / (4.0 * math.pi * mat.rho)


def lw_distortion(mat, traj, prof, x, t, quad=None, **kw) -> np.ndarray:
    """Elastic distortion beta_ik = d_k u_i at one event."""
    return lw_fields(mat, traj, prof, x, t, quad, **kw).beta


def lw_velocity(mat, traj, prof, x, t, quad=None, **kw) -> np.ndarray:
    """Particle velocity v_i = d_t u_i at one event."""
    return lw_fields(mat, traj, prof, x, t, quad, **kw).v


def radiation_split(mat, traj, prof, x, t, quad=None, **kw) -> FieldSample:
    """Fields with the {vel, acc, qdot} decomposition guaranteed present."""
    return lw_fields(mat, traj, prof, x, t, quad, **kw)


# ---------------------------------------------------------------------------
# static-source closed forms

def stokes_displacement(
    mat: Material, prof: ForceProfile, rvec, t: float, rel_tol: float = 1e-12,
    r_min: float = DEFAULT_R_MIN,
) -> np.ndarray:
    """Displacement of a fixed concentrated force with time-dependent strength."""
    rv, r, n = _static_geometry(rvec, r_min)
    kL, kT = 1.0 / mat.cL, 1.0 / mat.cT
    qT, _ = prof.eval(t - r * kT)
    qL, _ = prof.eval(t - r * kL)
    iq = _kappa_moment(prof, t, r, kL, kT, rel_tol)
    u = (
        kT * kT * (qT - float(n @ qT) * n)
        + kL * kL * float(n @ qL) * n
        + 3.0 * float(n @ iq) * n
        - iq
    )
    return u / (4.0 * math.pi * mat.rho * r)


def stokes_gradient(mat, prof, rvec, t, rel_tol: float = 1e-12,
                    r_min: float = DEFAULT_R_MIN) -> np.ndarray:
    """Displacement gradient of the fixed concentrated force."""
    parts = stokes_gradient_split(mat, prof, rvec, t, rel_tol, r_min)
    return parts["q"] + parts["qdot"]


def stokes_gradient_split(mat, prof, rvec, t, rel_tol: float = 1e-12,
                          r_min: float = DEFAULT_R_MIN, parts=("q", "qdot")) -> dict:
    """Gradient split into strength-driven (1/R^2) and rate-driven (1/R) parts.

    Only the strength part needs the slowness moment integral, so far-field
    scans of the rate part stay cheap via ``parts=("qdot",)``.
    """
    rv, r, n = _static_geometry(rvec, r_min)
    kL, kT = 1.0 / mat.cL, 1.0 / mat.cT
    qT, qdT = prof.eval(t - r * kT)
    qL, qdL = prof.eval(t - r * kL)
    nn = np.outer(n, n)
    r2 = r * r
    pref = -1.0 / (4.0 * math.pi * mat.rho)

    def sym3(vec):
        return np.outer(vec, n) + np.outer(n, vec) + float(n @ vec) * _I3

    out = {}
    if "q" in parts:
        iq = _kappa_moment(prof, t, r, kL, kT, rel_tol)
        qdiff = kL * kL * qL - kT * kT * qT
        term1 = (3.0 / r2) * (5.0 * float(n @ iq) * nn - sym3(iq))
        term2 = (1.0 / r2) * (6.0 * float(n @ qdiff) * nn - sym3(qdiff))
        term3_q = (kT * kT / r2) * np.outer(qT, n)
        out["q"] = pref * (term1 + term2 + term3_q)
    if "qdot" in parts:
        term3_qd = (kT ** 3 / r) * np.outer(qdT, n)
        term4 = (float(n @ (kL ** 3 * qdL - kT ** 3 * qdT)) / r) * nn
        out["qdot"] = pref * (term3_qd + term4)
    return out


def kelvin_displacement(mat: Material, q, rvec, r_min: float = DEFAULT_R_MIN) -> np.ndarray:
    """Displacement of a static concentrated force of constant strength."""
    q = np.asarray(q, dtype=float)
    rv, r, n = _static_geometry(rvec, r_min)
    pref = 1.0 / (16.0 * math.pi * mat.mu * (1.0 - mat.nu) * r)
    return pref * ((3.0 - 4.0 * mat.nu) * q + float(n @ q) * n)


def kelvin_gradient(mat: Material, q, rvec, r_min: float = DEFAULT_R_MIN) -> np.ndarray:
    """Displacement gradient of the static concentrated force."""
    q = np.asarray(q, dtype=float)
    rv, r, n = _static_geometry(rvec, r_min)
    pref = -1.0 / (16.0 * math.pi * mat.mu * (1.0 - mat.nu) * r * r)
    return pref * (
        (3.0 - 4.0 * mat.nu) * np.outer(q, n)
        - np.outer(n, q)
        - float(n @ q) * _I3
        + 3.0 * float(n @ q) * np.outer(n, n)
    )


def _static_geometry(rvec, r_min):
    from .errors import SingularPointError

    rv = np.asarray(rvec, dtype=float)
    r = float(np.linalg.norm(rv))
    if r < r_min:
        raise SingularPointError(f"field point within r_min={r_min:g} of the force")
    return rv, r, rv / r


def _kappa_moment(prof, t, r, kL, kT, rel_tol):
    """integral of kappa * Q(t - kappa r) over the slowness interval."""
    def f(kappa):
        q, _ = prof.eval(t - kappa * r)
        return kappa * q

    return adaptive_gauss_legendre(f, kL, kT, rel_tol=rel_tol)


# ---------------------------------------------------------------------------
# generic slowness integration

def kappa_integrate(
    f,
    mat: Material,
    rel_tol: float = 1e-10,
    state_fn=None,
    nodes: int = 16,
    max_depth: int = 44,
    full_output: bool = False,
):
    """Integrate a per-slowness bundle over kappa in [1/cL, 1/cT].

    ``f(kappa)`` (or ``f(kappa, state)`` when ``state_fn`` supplies the
    retarded solve for that node) returns a float or 1d array. With
    ``full_output`` the realized KappaQuadrature (nodes, weights, cached
    states) is returned alongside the value.
    """
    kL, kT = 1.0 / mat.cL, 1.0 / mat.cT
    states: dict[float, RetardedState | None] = {}

    if state_fn is None:
        def g(kappa):
            return np.atleast_1d(np.asarray(f(kappa), dtype=float))
    else:
        def g(kappa):
            st = states.get(kappa)
            if st is None and kappa not in states:
                st = state_fn(kappa)
                states[kappa] = st
            return np.atleast_1d(np.asarray(f(kappa, st), dtype=float))

    panels: list | None = [] if full_output else None
    value = adaptive_gauss_legendre(
        g, kL, kT, rel_tol=rel_tol, nodes=nodes, max_depth=max_depth, collect=panels
    )
    if value.size == 1:
        value = float(value[0])
    if not full_output:
        return value
    all_nodes = np.concatenate([p[0] for p in panels])
    all_weights = np.concatenate([p[1] for p in panels])
    order = np.argsort(all_nodes)
    kq = KappaQuadrature(nodes=all_nodes[order], weights=all_weights[order], states=states)
    return value, kq
