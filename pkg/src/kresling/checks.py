"""Internal oracle suite run by ``kresling check``.

Each check compares a library result with an independent route to the same
number and reports pass/fail with the observed discrepancy.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import geometry, kernels, kinematics, materials, quasistatics
from .geometry import ModulePattern

MC_CHUNK = 1_000_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def divergence_volume(pattern: ModulePattern, theta_u: float) -> float:
    """Signed volume from the divergence theorem over the triangulated surface."""
    tris = geometry.triangles(pattern, theta_u)
    return float(np.einsum("ij,ij->i", tris[:, 0], np.cross(tris[:, 1], tris[:, 2])).sum() / 6.0)


def monte_carlo_volume(pattern: ModulePattern, theta_u: float, samples: int = 10**7, seed: int = 0) -> float:
    """Winding-number volume estimate from uniform samples in the bounding box."""
    tris = geometry.triangles(pattern, theta_u)
    lo = tris.reshape(-1, 3).min(axis=0)
    hi = tris.reshape(-1, 3).max(axis=0)
    rng = np.random.default_rng(seed)
    count = 0
    left = samples
    while left > 0:
        k = min(left, MC_CHUNK)
        pts = lo + (hi - lo) * rng.random((k, 3))
        count += kernels.winding_sum(tris, pts)
        left -= k
    return float(np.prod(hi - lo)) * count / samples


def vertex_rest_rotation(pattern: ModulePattern, iterations: int = 200) -> float:
    """Rest rotation found by placing the top ring at ``h0 = b sin(delta0)``.

    Bisects on the rotation until the built vertices ``Q`` and ``M`` are one
    hypotenuse crease ``b`` apart.
    """
    h0 = pattern.b * math.sin(math.radians(pattern.delta0))
    a = pattern.a

    def gap(theta):
        q = np.array([a * math.sin(theta), h0, a * math.cos(theta)])
        m = np.array([0.0, 0.0, a])
        return float(np.linalg.norm(q - m)) - pattern.b

    lo, hi = 0.0, math.pi
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def random_instances(count: int, seed: int = 0):
    """Random (pattern, theta_u) pairs with a positive chamber volume."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a = rng.uniform(10.0, 30.0)
        ratio = rng.uniform(0.5, 2.0)
        delta0 = rng.uniform(20.0, 80.0)
        pattern = ModulePattern(a, ratio * a, 1.5 * a, delta0, int(rng.integers(4, 9)))
        theta = rng.uniform(0.02, 0.98) * pattern.theta_max
        if geometry.chamber_volume(pattern, theta) > 1e-3 * a ** 3:
            out.append((pattern, theta))
    return out


def _timed(name, fn):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing oracle is a failed check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(ok), detail, time.perf_counter() - start)


def _check_closed_forms():
    worst = 0.0
    for delta0, ratio in ((53.0, 2.0), (45.0, 1.0), (30.0, 1.5), (70.0, 0.8)):
        p = ModulePattern(10.0, 10.0 * ratio, 10.0, delta0)
        closed = kinematics.unfold_rotation(math.radians(delta0), ratio)
        worst = max(worst, abs(closed - vertex_rest_rotation(p)))
    return worst < 1e-9, f"max |closed form - vertex construction| = {worst:.2e} rad"


def _check_volumes(mc_samples):
    def run():
        worst_div = worst_mc = 0.0
        for i, (p, t) in enumerate(random_instances(5, seed=1)):
            v = geometry.chamber_volume(p, t)
            worst_div = max(worst_div, abs(v - divergence_volume(p, t)) / v)
            if mc_samples:
                worst_mc = max(worst_mc, abs(v - monte_carlo_volume(p, t, mc_samples, seed=i)) / v)
        ok = worst_div < 1e-9 and worst_mc < 0.01
        return ok, f"divergence rel err {worst_div:.1e}, Monte-Carlo rel err {worst_mc:.1e}"
    return run


def _check_kernel_parity():
    worst = 0.0
    for p, t in random_instances(10, seed=2):
        py = np.array(kernels.python_backend.module_state(p.a, p.b, p.n_sides, t))
        cb = np.array(kernels.backend.module_state(p.a, p.b, p.n_sides, t))
        worst = max(worst, float(np.max(np.abs(py - cb) / np.maximum(np.abs(py), 1.0))))
        fa = geometry.fold_angles(p, t).as_array()
        worst = max(worst, float(np.max(np.abs(fa - cb[2:]))) * 1e-3)
        worst = max(worst, abs(cb[1] - geometry.chamber_volume(p, t)) / cb[1])
    return worst < 1e-9, f"backend {kernels.BACKEND}, max discrepancy {worst:.1e}"


def _check_quasistatics(spec):
    def run():
        theta0 = spec.pattern.rest_rotation
        rest = abs(quasistatics.equilibrium_rotation(spec, 0.0) - theta0)
        lo, hi = quasistatics.pressure_range(spec)
        curve = quasistatics.pressure_angle_curve(spec, np.linspace(lo, hi, 21)[1:-1])
        tau = float(np.nanmax(np.abs(curve.torque)))
        inv = 0.0
        for t in np.linspace(*quasistatics.module_model(spec).branch, 9)[1:-1]:
            inv = max(inv, abs(quasistatics.equilibrium_rotation(
                spec, quasistatics.equilibrium_pressure(spec, t)) - t))
        ok = rest < 1e-6 and tau < 1e-9 and inv < 1e-6
        return ok, f"|rest err| {rest:.1e} rad, max |torque| {tau:.1e} N mm, inverse err {inv:.1e} rad"
    return run


def _check_materials():
    worst = 0.0
    for coeffs in materials.TABLE_S1.values():
        fit = materials.fit_yeoh(materials.synthetic_curve(coeffs))
        worst = max(worst, float(np.max(np.abs(fit.coefficients.as_array() - coeffs.as_array())
                                        / np.abs(coeffs.as_array()))))
    return worst < 1e-8, f"max relative coefficient error {worst:.1e}"


def _check_chain():
    p = ModulePattern(18.0, 18.0, 27.6, 45.0)
    spec = kinematics.ActuatorSpec.build(p, 8, kinematics.TypeLabel.TypeII)
    pose = kinematics.chain_pose(spec, kinematics.shared_angles(spec, 0.4))
    net = abs(pose.angle) + abs(pose.wrapped_angle)
    return net < 1e-12, f"Type II net rotation {net:.1e} rad"


def run_checks(spec=None, mc_samples: int = 200_000) -> list:
    """Run every oracle; ``spec`` defaults to the bundled IB actuator."""
    if spec is None:
        from .config import load_config
        spec = load_config("IB").actuator()
    return [
        _timed("kinematics.closed_form_vs_vertices", _check_closed_forms),
        _timed("geometry.volume_oracles", _check_volumes(mc_samples)),
        _timed("kernels.parity", _check_kernel_parity),
        _timed("quasistatics.identities", _check_quasistatics(spec)),
        _timed("materials.round_trip", _check_materials),
        _timed("kinematics.type_ii_cancels", _check_chain),
    ]
