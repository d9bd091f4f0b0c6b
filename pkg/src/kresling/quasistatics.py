"""Energy-based quasi-static model of a pressurised module.

Units: pressure kPa, volume mm^3, energy uJ (1 kPa mm^3 = 1 uJ), torque N mm.
Crease constants are N/rad and crease lengths mm, so the crease energy comes
out in N mm = mJ and is scaled by 1000 to uJ.

Sign convention: the total potential is ``W_s - p V``.  Gauge pressure below
zero (vacuum) therefore favours smaller chamber volume, i.e. folding towards
larger ``theta_u``.  Equilibrium at fixed ``p`` means
``dW_s/dtheta - p dV/dtheta = 0`` and the external torque is
``1e-3 * (dW_s/dtheta - p dV/dtheta)``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, NoEquilibriumError, SingularConfigurationError
from .geometry import ModulePattern, fold_angles, height_from_rotation, rotation_from_height
from .kinematics import ActuatorSpec
from .numdiff import richardson_derivative

MJ_TO_UJ = 1000.0
UJ_PER_RAD_TO_NMM = 1e-3
# grid spacing used to map out the monotone branch around the rest angle
BRANCH_STEP = math.radians(0.25)
# relative Richardson tolerance for every model derivative
DERIV_RTOL = 1e-6


@dataclass(frozen=True)
class EnergyState:
    W_s: float
    W_p: float
    theta_u: float

    @property
    def potential(self) -> float:
        return self.W_s - self.W_p


@dataclass(frozen=True)
class EquilibriumCurve:
    """Columns of an equilibrium sweep; unsolved samples hold NaN."""

    pressure: np.ndarray
    theta_u: np.ndarray
    volume: np.ndarray
    torque: np.ndarray

    def __len__(self):
        return len(self.pressure)


def _weights(pattern: ModulePattern, k_c1: float, k_c2: float) -> np.ndarray:
    # per-family stiffness in mJ/rad^2 for (QM, QR, RM), summed over n repeats
    n = pattern.n_sides
    return n * 0.5 * np.array([k_c1 * 2.0 * pattern.b, k_c1 * 2.0 * pattern.a, k_c2 * pattern.c])


def crease_energy(pattern: ModulePattern, k_c1: float, k_c2: float, theta_u: float) -> float:
    """Stored crease energy (uJ) relative to the as-molded rest state."""
    rest = fold_angles(pattern, pattern.rest_rotation).as_array()
    now = fold_angles(pattern, theta_u).as_array()
    if np.any(np.isnan(now)):
        raise SingularConfigurationError(f"fold angles undefined at theta_u={math.degrees(theta_u):.6g} deg")
    return MJ_TO_UJ * float(_weights(pattern, k_c1, k_c2) @ (now - rest) ** 2)


class ModuleModel:
    """Fast evaluation of one module's energy, volume and their derivatives."""

    def __init__(self, pattern: ModulePattern, k_c1: float, k_c2: float, theta_limit: float | None = None):
        self.pattern = pattern
        self.k_c1, self.k_c2 = k_c1, k_c2
        self.theta_limit = pattern.theta_max if theta_limit is None else theta_limit
        self._w = MJ_TO_UJ * _weights(pattern, k_c1, k_c2)
        self._args = (pattern.a, pattern.b, pattern.n_sides)
        self.theta0 = pattern.rest_rotation
        self._rest = np.array(kernels.module_state(*self._args, self.theta0)[2:])
        # energy gradient of a 1 rad deviation on every family; normalises residuals
        self.stiffness_scale = float(self._w.sum())
        self.volume_scale = kernels.module_state(*self._args, 0.0)[1]

    def state(self, theta: float):
        """``(W_s, V)`` at ``theta``."""
        h, volume, qm, qr, rm = kernels.module_state(*self._args, theta)
        dev = np.array((qm, qr, rm)) - self._rest
        return np.array((float(self._w @ (dev * dev)), volume))

    def gradients(self, theta: float):
        """``(dW_s/dtheta, dV/dtheta)`` by verified central differences."""
        d, _ = richardson_derivative(
            self.state, theta, h=1e-3, rtol=DERIV_RTOL,
            atol=np.array((1e-9 * self.stiffness_scale, 1e-12 * self.volume_scale)))
        if not np.all(np.isfinite(d)):
            raise SingularConfigurationError(
                f"degenerate panel at theta_u={math.degrees(theta):.6g} deg")
        return float(d[0]), float(d[1])

    def residual(self, theta: float, p: float) -> float:
        """Generalised force ``dW_s/dtheta - p dV/dtheta`` in uJ/rad."""
        dw, dv = self.gradients(theta)
        return dw - p * dv

    def pressure(self, theta: float) -> float:
        dw, dv = self.gradients(theta)
        if abs(dv) < 1e-9 * self.volume_scale:
            raise SingularConfigurationError(
                f"dV/dtheta vanishes at theta_u={math.degrees(theta):.6g} deg; "
                "no unique equilibrium pressure")
        return dw / dv

    @functools.cached_property
    def branch(self):
        """``(theta_lo, theta_hi)`` of the monotone pressure branch holding the rest angle."""
        return _find_branch(self)


def _find_branch(model: ModuleModel):
    theta0, top = model.theta0, model.theta_limit
    step = BRANCH_STEP

    def walk(direction):
        last_theta, last_p = theta0, 0.0
        trend = None
        while True:
            theta = last_theta + direction * step
            if not 0.0 < theta < top:
                return last_theta, trend
            try:
                p = model.pressure(theta)
            except SingularConfigurationError:
                return last_theta, trend
            # p as seen walking away from rest: sign of dp/dtheta
            slope = math.copysign(1.0, (p - last_p) * direction) if p != last_p else 0.0
            if slope == 0.0 or (trend is not None and slope != trend):
                return last_theta, trend
            trend = slope
            last_theta, last_p = theta, p

    lo, trend_lo = walk(-1.0)
    hi, trend_hi = walk(+1.0)
    if trend_lo is not None and trend_hi is not None and trend_lo != trend_hi:
        # the rest angle is a turning point of p; keep the folding side
        lo = theta0
    return lo, hi


@functools.lru_cache(maxsize=64)
def _cached_model(geometry, k_c1, k_c2, theta_limit):
    return ModuleModel(ModulePattern(*geometry), k_c1, k_c2, theta_limit)


def module_model(spec) -> ModuleModel:
    """Model for the shared module geometry of ``spec`` (or a bare pattern)."""
    if isinstance(spec, ModulePattern):
        spec = ActuatorSpec((spec,))
    p = spec.pattern
    geometry = (p.a, p.b, p.c, p.delta0, p.n_sides)
    return _cached_model(geometry, spec.k_c1, spec.k_c2, spec.theta_limit)


def _check_open(model: ModuleModel, theta_u: float):
    if not 0.0 < theta_u < model.theta_limit:
        raise DomainError(
            f"theta_u={math.degrees(theta_u):.6g} deg outside open interval "
            f"(0, {math.degrees(model.theta_limit):.6g}) deg")


def energy_state(spec, p: float, theta_u: float) -> EnergyState:
    model = module_model(spec)
    w, v = model.state(theta_u)
    return EnergyState(W_s=float(w), W_p=p * float(v), theta_u=theta_u)


def equilibrium_pressure(spec, theta_u: float) -> float:
    """Pressure (kPa) holding the unloaded module at ``theta_u``."""
    model = module_model(spec)
    _check_open(model, theta_u)
    if theta_u == model.theta0:
        return 0.0
    return model.pressure(theta_u)


def pressure_range(spec) -> tuple:
    """Pressures at the two ends of the default branch, ascending."""
    model = module_model(spec)
    lo, hi = model.branch
    ends = [model.pressure(t) if t != model.theta0 else 0.0 for t in (lo, hi)]
    return tuple(sorted(ends))


def equilibrium_rotation(spec, p: float, branch=None) -> float:
    """Rotation ``theta_u`` (rad) at which pressure ``p`` (kPa) is balanced.

    The root is bracketed by the default branch (or ``branch``) and found by
    bisection down to floating-point resolution.
    """
    model = module_model(spec)
    if p == 0.0 and branch is None:
        return model.theta0
    lo, hi = branch or model.branch
    r_lo, r_hi = model.residual(lo, p), model.residual(hi, p)
    if r_lo == 0.0:
        return lo
    if r_hi == 0.0:
        return hi
    if (r_lo > 0) == (r_hi > 0):
        p_lo, p_hi = pressure_range(spec) if branch is None else sorted(
            (model.pressure(lo), model.pressure(hi)))
        raise NoEquilibriumError(
            f"p={p:.6g} kPa has no equilibrium on theta_u in [{math.degrees(lo):.4f}, "
            f"{math.degrees(hi):.4f}] deg (branch spans p in [{p_lo:.6g}, {p_hi:.6g}] kPa)")
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        r_mid = model.residual(mid, p)
        if r_mid == 0.0:
            return mid
        if (r_mid > 0) == (r_lo > 0):
            lo, r_lo = mid, r_mid
        else:
            hi, r_hi = mid, r_mid
    theta = lo if abs(r_lo) <= abs(r_hi) else hi
    if min(abs(r_lo), abs(r_hi)) > 1e-9 * model.stiffness_scale:
        raise NoEquilibriumError(
            f"p={p:.6g} kPa: residual jumps sign at theta_u={math.degrees(theta):.6g} deg "
            "(kink in the crease energy), no smooth equilibrium")
    return theta


def normalized_residual(spec, p: float, theta_u: float) -> float:
    model = module_model(spec)
    return abs(model.residual(theta_u, p)) / model.stiffness_scale


def output_torque(spec, p: float, theta_u: float) -> float:
    """External torque (N mm) needed to hold ``theta_u`` at pressure ``p``."""
    model = module_model(spec)
    if not 0.0 <= theta_u <= model.pattern.theta_max:
        raise DomainError(
            f"theta_u={math.degrees(theta_u):.6g} deg outside [0, "
            f"{math.degrees(model.pattern.theta_max):.6g}] deg")
    return UJ_PER_RAD_TO_NMM * model.residual(theta_u, p)


def torsional_rigidity(torque: float, length: float, phi_prime: float, phi0: float) -> float:
    """``T l / (phi' - phi0)``; angles in degrees, result in N mm^2/deg."""
    delta = phi_prime - phi0
    if delta == 0:
        raise ZeroDivisionError("torsional rigidity undefined for zero end rotation")
    return torque * length / delta


def efficiency(torque: float, theta: float, pressure: float, volume: float) -> float:
    """Mechanical over pneumatic work.

    ``torque`` in N mm, ``theta`` in degrees, ``pressure`` in kPa and
    ``volume`` in mm^3.
    """
    denom = pressure * volume
    if denom == 0:
        raise ZeroDivisionError("efficiency undefined for zero pressure-volume work")
    return MJ_TO_UJ * torque * math.radians(theta) / denom


def pressure_angle_curve(spec, p_grid) -> EquilibriumCurve:
    """Equilibrium rotation for each pressure, ordered by pressure."""
    model = module_model(spec)
    ps = np.sort(np.asarray(p_grid, dtype=float))
    theta = np.full(ps.shape, np.nan)
    volume = np.full(ps.shape, np.nan)
    torque = np.full(ps.shape, np.nan)
    for i, p in enumerate(ps):
        try:
            t = equilibrium_rotation(spec, float(p))
        except (NoEquilibriumError, SingularConfigurationError):
            continue
        theta[i] = t
        volume[i] = model.state(t)[1]
        torque[i] = UJ_PER_RAD_TO_NMM * model.residual(t, float(p))
    return EquilibriumCurve(ps, theta, volume, torque)


@dataclass(frozen=True)
class TorqueSample:
    length: float
    theta_u: float
    torque: float
    rigidity: float


def torque_vs_operating_length(spec: ActuatorSpec, p: float, l_grid) -> list:
    """Torque and rigidity of an actuator held at each operating length.

    Every module shares ``theta_u = rotation_from_height(l / n)``; rigidity
    is taken against the end rotation relative to the rest pose and is NaN
    at the rest length itself.
    """
    if isinstance(spec, ModulePattern):
        spec = ActuatorSpec((spec,))
    pattern = spec.pattern
    n = len(spec)
    theta0 = pattern.rest_rotation
    out = []
    for length in np.asarray(l_grid, dtype=float):
        if not 0.0 < length <= n * pattern.b * (1 + 1e-12):
            raise DomainError(
                f"operating length {length:.6g} mm unreachable; need 0 < l <= n*b = {n * pattern.b:.6g} mm")
        theta = rotation_from_height(pattern, min(length / n, pattern.b))
        tau = output_torque(spec, p, theta)
        end_rotation = n * math.degrees(theta - theta0)
        k = torsional_rigidity(tau, length, end_rotation, 0.0) if end_rotation != 0 else math.nan
        out.append(TorqueSample(float(length), theta, tau, k))
    return out


def branch_lengths(spec: ActuatorSpec, count: int = 41) -> np.ndarray:
    """Operating lengths spanned by the default branch, ascending (mm)."""
    if count < 2:
        raise DomainError(f"count={count!r} violates rule 'count >= 2'")
    model = module_model(spec)
    lo, hi = model.branch
    n = len(spec)
    pattern = spec.pattern
    return np.linspace(n * height_from_rotation(pattern, hi), n * height_from_rotation(pattern, lo), count)
