"""Truss geometry of a single Kresling module.

The module axis is ``y``.  A vertex at polar angle ``phi`` on a ring of
radius ``a`` sits at ``(a sin phi, y, a cos phi)``; the bottom ring lies in
``y = 0`` and the top ring at ``y = h``, rotated by ``theta_u``.  With ``M``,
``P`` the first two bottom vertices and ``Q``, ``R`` the first two top
vertices, each wall is split into the panels ``QMR`` and ``RMP``.

Angles are radians in this module unless a name ends in ``_deg``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryError, SingularConfigurationError

# slack allowed on closed-interval bounds before an angle is rejected
ANGLE_TOL = 1e-12


class Handedness(str, enum.Enum):
    CW = "CW"
    CCW = "CCW"

    @property
    def sign(self) -> int:
        # CW modules rotate positively under deflation
        return 1 if self is Handedness.CW else -1

    def flipped(self) -> "Handedness":
        return Handedness.CCW if self is Handedness.CW else Handedness.CW


@dataclass(frozen=True)
class ModulePattern:
    """Mold geometry of one module.

    ``a`` is the polygon circumradius, ``b`` the hypotenuse crease, ``c`` the
    diagonal crease length used only as an energy weight, all in mm.
    ``delta0`` is the rest fold angle in degrees.
    """

    a: float
    b: float
    c: float
    delta0: float
    n_sides: int = 6
    handedness: Handedness = Handedness.CW

    def __post_init__(self):
        object.__setattr__(self, "handedness", Handedness(self.handedness))
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise GeometryError(f"{name}={value!r} violates rule '{name} > 0'")
        if int(self.n_sides) != self.n_sides or self.n_sides < 4:
            raise GeometryError(f"n_sides={self.n_sides!r} violates rule 'n_sides >= 4'")
        object.__setattr__(self, "n_sides", int(self.n_sides))
        if not 0.0 < self.delta0 < 90.0:
            raise DomainError(f"delta0={self.delta0!r} violates rule '0 < delta0 < 90 deg'")
        if self.b > 2.0 * self.a:
            raise DomainError(
                f"b/a={self.b / self.a:.6g} violates rule 'b <= 2a' "
                "(maximum rotation 2*arcsin(b/2a) undefined)"
            )

    @property
    def ratio(self) -> float:
        return self.b / self.a

    @property
    def theta_max(self) -> float:
        return 2.0 * math.asin(min(1.0, self.b / (2.0 * self.a)))

    @property
    def rest_height(self) -> float:
        return self.b * math.sin(math.radians(self.delta0))

    @property
    def rest_rotation(self) -> float:
        return 2.0 * math.asin(self.b * math.cos(math.radians(self.delta0)) / (2.0 * self.a))

    @property
    def sector(self) -> float:
        """Polar angle between neighbouring polygon vertices."""
        return 2.0 * math.pi / self.n_sides

    def with_handedness(self, handedness) -> "ModulePattern":
        return ModulePattern(self.a, self.b, self.c, self.delta0, self.n_sides, Handedness(handedness))

    def same_geometry(self, other: "ModulePattern") -> bool:
        return (self.a, self.b, self.c, self.delta0, self.n_sides) == (
            other.a, other.b, other.c, other.delta0, other.n_sides)


@dataclass(frozen=True)
class ModuleState:
    theta_u: float
    h: float

    @classmethod
    def at(cls, pattern: ModulePattern, theta_u: float) -> "ModuleState":
        return cls(check_rotation(pattern, theta_u), height_from_rotation(pattern, theta_u))


@dataclass(frozen=True)
class FoldAngles:
    theta_QM: float
    theta_QR: float
    theta_RM: float

    def as_array(self) -> np.ndarray:
        return np.array([self.theta_QM, self.theta_QR, self.theta_RM])


def check_rotation(pattern: ModulePattern, theta_u: float) -> float:
    """Return ``theta_u`` clipped onto ``[0, theta_max]`` or raise."""
    theta_max = pattern.theta_max
    if not math.isfinite(theta_u) or theta_u < -ANGLE_TOL:
        raise DomainError(f"theta_u={math.degrees(theta_u):.6g} deg violates bound theta_u >= 0")
    if theta_u > theta_max + ANGLE_TOL:
        raise DomainError(
            f"theta_u={math.degrees(theta_u):.6g} deg violates bound "
            f"theta_u <= theta_max={math.degrees(theta_max):.6g} deg"
        )
    return min(max(theta_u, 0.0), theta_max)


def height_from_rotation(pattern: ModulePattern, theta_u: float) -> float:
    theta_u = check_rotation(pattern, theta_u)
    chord = 2.0 * pattern.a * math.sin(theta_u / 2.0)
    return math.sqrt(max(pattern.b * pattern.b - chord * chord, 0.0))


def rotation_from_height(pattern: ModulePattern, h: float) -> float:
    b = pattern.b
    if not 0.0 <= h <= b * (1.0 + 1e-12):
        raise DomainError(f"h={h!r} mm violates bound 0 <= h <= b={b!r} mm")
    arg = math.sqrt(max(b * b - h * h, 0.0)) / (2.0 * pattern.a)
    if arg > 1.0 + 1e-12:
        raise GeometryError(f"h={h!r} mm: sqrt(b^2 - h^2) > 2a, pattern cannot close")
    return 2.0 * math.asin(min(arg, 1.0))


def vertex_positions(pattern: ModulePattern, theta_u: float) -> np.ndarray:
    """Bottom ring, top ring and the reference point ``G``, shape ``(2n+1, 3)``.

    Rows ``0`` and ``1`` are ``M`` and ``P``; rows ``n`` and ``n+1`` are ``Q`` and
    ``R``; the last row is ``G = (0, h/2, 0)``.
    """
    theta_u = check_rotation(pattern, theta_u)
    h = height_from_rotation(pattern, theta_u)
    n, a = pattern.n_sides, pattern.a
    phi = np.arange(n) * pattern.sector
    out = np.empty((2 * n + 1, 3))
    out[:n, 0] = a * np.sin(phi)
    out[:n, 1] = 0.0
    out[:n, 2] = a * np.cos(phi)
    out[n:2 * n, 0] = a * np.sin(phi + theta_u)
    out[n:2 * n, 1] = h
    out[n:2 * n, 2] = a * np.cos(phi + theta_u)
    out[2 * n] = (0.0, h / 2.0, 0.0)
    return out


def faces(n_sides: int) -> list[tuple[int, ...]]:
    """Outward-oriented faces over the vertex rows of :func:`vertex_positions`.

    Two caps (``n``-gons) followed by ``2n`` wall triangles.
    """
    n = n_sides
    bottom = tuple(range(n - 1, -1, -1))
    top = tuple(range(n, 2 * n))
    walls = []
    for k in range(n):
        b0, b1 = k, (k + 1) % n
        t0, t1 = n + k, n + (k + 1) % n
        walls.append((b0, t1, t0))   # Q M R panel
        walls.append((b0, b1, t1))   # R M P panel
    return [bottom, top, *walls]


def triangles(pattern: ModulePattern, theta_u: float) -> np.ndarray:
    """Closed triangulated surface of the chamber, shape ``(4n - 4 + 2n, 3, 3)``.

    Caps are fanned from their first vertex.
    """
    verts = vertex_positions(pattern, theta_u)
    tris = []
    for face in faces(pattern.n_sides):
        for j in range(1, len(face) - 1):
            tris.append(verts[[face[0], face[j], face[j + 1]]])
    return np.array(tris)


def _area_vector(points: np.ndarray) -> np.ndarray:
    # Newell's formula; exact for planar polygons
    nxt = np.roll(points, -1, axis=0)
    return 0.5 * np.cross(points, nxt).sum(axis=0)


def chamber_volume(pattern: ModulePattern, theta_u: float) -> float:
    """Volume enclosed by the caps and wall panels (mm^3).

    Sum of pyramids with apex ``G`` over every face, using the signed
    projection of ``G`` onto each face's area vector.
    """
    verts = vertex_positions(pattern, theta_u)
    apex = verts[-1]
    total = 0.0
    for face in faces(pattern.n_sides):
        pts = verts[list(face)]
        total += np.dot(pts.mean(axis=0) - apex, _area_vector(pts)) / 3.0
    return max(float(total), 0.0)


def _unit_normal(u: np.ndarray, v: np.ndarray, what: str, theta_u: float) -> np.ndarray:
    n = np.cross(u, v)
    norm = math.sqrt(float(np.dot(n, n)))
    if norm < 1e-12 * max(float(np.dot(u, u)), float(np.dot(v, v)), 1e-300):
        raise SingularConfigurationError(
            f"degenerate panel {what} at theta_u={math.degrees(theta_u):.6g} deg")
    return n / norm


def _arccos_abs(x: float) -> float:
    return math.acos(min(abs(x), 1.0))


def fold_angles(pattern: ModulePattern, theta_u: float) -> FoldAngles:
    """Rotation angles of the three fold families at ``theta_u``.

    ``T`` is the bottom vertex preceding ``M``, so ``QM x MT`` is the normal of
    the neighbouring ``RMP``-type panel that shares crease ``QM``.
    """
    verts = vertex_positions(pattern, theta_u)
    n = pattern.n_sides
    M, P, T = verts[0], verts[1], verts[n - 1]
    Q, R = verts[n], verts[n + 1]
    QM, QR, MT, RM, MP = M - Q, R - Q, T - M, M - R, P - M
    n_qmr = _unit_normal(QM, QR, "QMR", theta_u)
    n_qmt = _unit_normal(QM, MT, "QMT", theta_u)
    n_rmp = _unit_normal(RM, MP, "RMP", theta_u)
    return FoldAngles(
        theta_QM=_arccos_abs(np.dot(n_qmr, n_qmt)),
        theta_QR=_arccos_abs(n_qmr[1]),
        theta_RM=_arccos_abs(np.dot(n_qmr, n_rmp)),
    )
