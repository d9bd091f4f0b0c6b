"""Closed-form module rotation and serial-chain poses.

Scalar functions take and return radians.  Handedness convention: a CW
module folds with positive ``theta``, a CCW module with negative ``theta``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, KreslingError
from .geometry import Handedness, ModulePattern, height_from_rotation

PAPER_LINEAR_FULL_FOLD = math.radians(60.0)


class TypeLabel(str, enum.Enum):
    TypeI = "TypeI"
    TypeII = "TypeII"
    TypeIII = "TypeIII"
    Custom = "Custom"


class HeightModel(str, enum.Enum):
    Exact = "exact"
    PaperLinear = "paper-linear"


def _arcsin_arg(value: float, what: str) -> float:
    if not -1.0 - 1e-12 <= value <= 1.0 + 1e-12:
        raise DomainError(f"{what}: arcsin argument {value:.12g} outside [-1, 1]")
    return min(max(value, -1.0), 1.0)


def _check_delta_ratio(delta: float, b_over_a: float):
    if not 0.0 < delta <= math.pi / 2 + 1e-15:
        raise DomainError(f"delta={math.degrees(delta):.6g} deg violates bound 0 < delta <= 90 deg")
    if not 0.0 < b_over_a <= 2.0:
        raise DomainError(f"b/a={b_over_a:.6g} violates bound 0 < b/a <= 2")


def unfold_rotation(delta: float, b_over_a: float) -> float:
    """Relative rotation of the top polygon at fold angle ``delta``."""
    _check_delta_ratio(delta, b_over_a)
    return 2.0 * math.asin(_arcsin_arg(b_over_a * math.cos(delta) / 2.0, "unfold_rotation"))


def max_rotation(b_over_a: float) -> float:
    if not 0.0 < b_over_a <= 2.0:
        raise DomainError(f"b/a={b_over_a:.6g} violates bound 0 < b/a <= 2")
    return 2.0 * math.asin(_arcsin_arg(b_over_a / 2.0, "max_rotation"))


def folding_rotation(delta: float, b_over_a: float) -> float:
    """Rotation still available between fold angle ``delta`` and flat folding."""
    return max_rotation(b_over_a) - unfold_rotation(delta, b_over_a)


def skeleton_max_rotation(b_over_a: float, k: float, delta0: float) -> float:
    """Maximum rotation with an internal skeleton of thickness ``k * b``."""
    if k < 0:
        raise DomainError(f"k={k!r} violates bound k >= 0")
    if not 0.0 < delta0 < math.pi / 2 + 1e-15:
        raise DomainError(f"delta0={math.degrees(delta0):.6g} deg violates bound 0 < delta0 <= 90 deg")
    if not 0.0 < b_over_a <= 2.0:
        raise DomainError(f"b/a={b_over_a:.6g} violates bound 0 < b/a <= 2")
    arg = b_over_a / 2.0 * (1.0 - k / math.sin(delta0))
    return 2.0 * math.asin(_arcsin_arg(arg, "skeleton_max_rotation"))


@dataclass(frozen=True)
class Pose:
    """Homogeneous transform whose rotation is about the module (``y``) axis.

    ``angle`` keeps the unwrapped net rotation, which the matrix alone
    cannot represent beyond one turn.
    """

    matrix: np.ndarray
    angle: float = 0.0
    warnings: tuple = field(default=(), compare=False)

    @classmethod
    def identity(cls) -> "Pose":
        return cls(np.eye(4), 0.0)

    @classmethod
    def about_axis(cls, theta: float, translation_y: float, warnings=()) -> "Pose":
        c, s = math.cos(theta), math.sin(theta)
        m = np.array([
            [c, 0.0, s, 0.0],
            [0.0, 1.0, 0.0, translation_y],
            [-s, 0.0, c, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
        return cls(m, theta, tuple(warnings))

    @property
    def rotation(self) -> np.ndarray:
        return self.matrix[:3, :3]

    @property
    def translation(self) -> np.ndarray:
        return self.matrix[:3, 3]

    @property
    def wrapped_angle(self) -> float:
        return math.atan2(self.matrix[0, 2], self.matrix[0, 0])

    def __matmul__(self, other: "Pose") -> "Pose":
        return Pose(self.matrix @ other.matrix, self.angle + other.angle,
                    self.warnings + other.warnings)

    def inverse(self) -> "Pose":
        r = self.rotation.T
        m = np.eye(4)
        m[:3, :3] = r
        m[:3, 3] = -r @ self.translation
        return Pose(m, -self.angle, self.warnings)


def module_transform(pattern: ModulePattern, theta: float, height_model=HeightModel.Exact) -> Pose:
    """Pose of a module's top plate relative to its bottom plate.

    ``theta`` is signed; its magnitude is the relative rotation angle.
    """
    height_model = HeightModel(height_model)
    magnitude = abs(theta)
    if magnitude > pattern.theta_max + 1e-12:
        raise DomainError(
            f"|theta|={math.degrees(magnitude):.6g} deg violates bound "
            f"|theta| <= theta_max={math.degrees(pattern.theta_max):.6g} deg")
    notes = ()
    if height_model is HeightModel.Exact:
        y = height_from_rotation(pattern, min(magnitude, pattern.theta_max))
    else:
        y = pattern.b - pattern.b / PAPER_LINEAR_FULL_FOLD * magnitude
        if abs(pattern.theta_max - PAPER_LINEAR_FULL_FOLD) > 1e-9:
            notes = (f"paper-linear height model assumes theta_max = 60 deg, "
                     f"pattern has {math.degrees(pattern.theta_max):.2f} deg",)
            warnings.warn(notes[0], RuntimeWarning, stacklevel=2)
    return Pose.about_axis(theta, y, notes)


@dataclass(frozen=True)
class ActuatorSpec:
    """An ordered stack of modules with crease constants.

    ``k_c1`` and ``k_c2`` are the thick- and thin-crease torsional constants
    in N/rad; ``skeleton_ratio`` is ``t_s / b``.
    """

    modules: tuple
    type_label: TypeLabel = TypeLabel.Custom
    skeleton_ratio: float = 0.0
    k_c1: float = 2.0
    k_c2: float = 0.25

    def __post_init__(self):
        object.__setattr__(self, "modules", tuple(self.modules))
        object.__setattr__(self, "type_label", TypeLabel(self.type_label))
        if not self.modules:
            raise KreslingError("an actuator needs at least one module")
        if self.k_c1 < 0 or self.k_c2 < 0:
            raise DomainError(f"crease constants k_c1={self.k_c1!r}, k_c2={self.k_c2!r} must be >= 0")
        if self.skeleton_ratio < 0:
            raise DomainError(f"skeleton_ratio={self.skeleton_ratio!r} violates rule 'k >= 0'")
        for m in self.modules:
            skeleton_max_rotation(m.ratio, self.skeleton_ratio, math.radians(m.delta0))
        expected = handedness_pattern(self.type_label, len(self.modules), self.modules[0].handedness)
        if expected is not None and [m.handedness for m in self.modules] != expected:
            raise DomainError(
                f"module handedness {[m.handedness.value for m in self.modules]} does not match "
                f"{self.type_label.value} pattern {[h.value for h in expected]}")

    @classmethod
    def build(cls, pattern: ModulePattern, n_modules: int, type_label=TypeLabel.TypeI, **kw) -> "ActuatorSpec":
        type_label = TypeLabel(type_label)
        hands = handedness_pattern(type_label, n_modules, pattern.handedness)
        if hands is None:
            hands = [pattern.handedness] * n_modules
        return cls(tuple(pattern.with_handedness(h) for h in hands), type_label, **kw)

    def __len__(self):
        return len(self.modules)

    @property
    def pattern(self) -> ModulePattern:
        """The shared module geometry; raises if modules differ."""
        first = self.modules[0]
        for m in self.modules[1:]:
            if not first.same_geometry(m):
                raise KreslingError("modules do not share one geometry")
        return first

    @property
    def theta_limit(self) -> float:
        m = self.pattern
        if self.skeleton_ratio > 0:
            return skeleton_max_rotation(m.ratio, self.skeleton_ratio, math.radians(m.delta0))
        return m.theta_max

    @property
    def signs(self) -> list:
        return [m.handedness.sign for m in self.modules]


def handedness_pattern(type_label, n_modules: int, first=Handedness.CW):
    """Handedness list for a type label, or ``None`` for ``Custom``."""
    type_label = TypeLabel(type_label)
    first = Handedness(first)
    if type_label is TypeLabel.TypeI:
        return [first] * n_modules
    if type_label is TypeLabel.TypeII:
        half = n_modules // 2
        return [first] * half + [first.flipped()] * (n_modules - half)
    if type_label is TypeLabel.TypeIII:
        return [first if i % 2 == 0 else first.flipped() for i in range(n_modules)]
    return None


def chain_pose(spec: ActuatorSpec, thetas, height_model=HeightModel.Exact) -> Pose:
    """Pose of the free end: the ordered product of module transforms."""
    return chain_poses(spec, thetas, height_model)[-1]


def chain_poses(spec: ActuatorSpec, thetas, height_model=HeightModel.Exact) -> list:
    """Cumulative poses after each module (one entry per connection edge)."""
    thetas = list(thetas)
    if len(thetas) != len(spec.modules):
        raise KreslingError(
            f"got {len(thetas)} module angles for an actuator with {len(spec.modules)} modules")
    pose = Pose.identity()
    out = []
    for m, theta in zip(spec.modules, thetas):
        pose = pose @ module_transform(m, theta, height_model)
        out.append(pose)
    return out


def shared_angles(spec: ActuatorSpec, theta_u: float) -> list:
    """Signed per-module angles when every module sits at ``theta_u``."""
    return [s * theta_u for s in spec.signs]


def height_model_gap(pattern: ModulePattern, samples: int = 2001) -> float:
    """Largest difference between exact and paper-linear module heights."""
    top = min(pattern.theta_max, PAPER_LINEAR_FULL_FOLD)
    grid = np.linspace(0.0, top, samples)
    exact = np.array([height_from_rotation(pattern, t) for t in grid])
    linear = pattern.b - pattern.b / PAPER_LINEAR_FULL_FOLD * grid
    return float(np.max(np.abs(exact - linear)))


QUANTITIES = ("theta_u", "theta_f", "theta_max", "theta_ts")


def parametric_sweep(quantity: str, delta_grid, ratio_grid, k: float = 0.0) -> np.ndarray:
    """Tabulate a rotation quantity over ``delta`` (rows) x ``b/a`` (columns).

    Angles in and out are radians; points outside a formula's domain are NaN.
    ``delta`` plays the role of ``delta0`` for ``theta_ts``.
    """
    if quantity not in QUANTITIES:
        raise KreslingError(f"unknown quantity {quantity!r}; expected one of {', '.join(QUANTITIES)}")
    delta_grid = np.atleast_1d(np.asarray(delta_grid, dtype=float))
    ratio_grid = np.atleast_1d(np.asarray(ratio_grid, dtype=float))
    if delta_grid.size == 0 or ratio_grid.size == 0:
        raise KreslingError("sweep grids must be nonempty")
    func = {
        "theta_u": unfold_rotation,
        "theta_f": folding_rotation,
        "theta_max": lambda d, r: max_rotation(r),
        "theta_ts": lambda d, r: skeleton_max_rotation(r, k, d),
    }[quantity]
    out = np.full((delta_grid.size, ratio_grid.size), np.nan)
    for i, d in enumerate(delta_grid):
        for j, r in enumerate(ratio_grid):
            try:
                out[i, j] = func(float(d), float(r))
            except DomainError:
                pass
    return out
