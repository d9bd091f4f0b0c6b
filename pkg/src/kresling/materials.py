"""Incompressible Yeoh model: evaluation and uniaxial least-squares fitting.

Stresses and coefficients are in MPa (an assumption; the source data carries
no units).  Stress is nominal (force over undeformed area) against stretch.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, FitError

UNITS_NOTE = "coefficients and stresses in MPa (assumed)"


@dataclass(frozen=True)
class YeohCoefficients:
    C10: float
    C20: float = 0.0
    C30: float = 0.0

    def __post_init__(self):
        if not self.C10 > 0:
            raise DomainError(f"C10={self.C10!r} violates rule 'C10 > 0'")

    def as_array(self) -> np.ndarray:
        return np.array([self.C10, self.C20, self.C30])


# Fitted coefficients for the three tested silicones.
TABLE_S1 = {
    "Ecoflex 00-30": YeohCoefficients(0.00364188, 0.000573251, -3.93058e-06),
    "E615": YeohCoefficients(0.0727207, 0.00527073, -7.73102e-05),
    "Mixture": YeohCoefficients(0.0683405, 0.00958809, -0.000363852),
}


def first_invariant(l1, l2, l3):
    l1, l2, l3 = np.asarray(l1, float), np.asarray(l2, float), np.asarray(l3, float)
    if np.any(l1 <= 0) or np.any(l2 <= 0) or np.any(l3 <= 0):
        raise DomainError("principal stretches must be > 0")
    out = l1 * l1 + l2 * l2 + l3 * l3
    return float(out) if out.ndim == 0 else out


def uniaxial_invariant(lam):
    lam = np.asarray(lam, float)
    if np.any(lam <= 0):
        raise DomainError("stretch lambda must be > 0")
    return first_invariant(lam, lam ** -0.5, lam ** -0.5)


def yeoh_energy_density(coeffs: YeohCoefficients, I1):
    """Strain energy density ``sum C_i0 (I1 - 3)^i``."""
    I1 = np.asarray(I1, float)
    # 1e-12 absorbs rounding of I1 at lambda = 1
    if np.any(I1 < 3.0 - 1e-12):
        raise DomainError(f"I1={I1!r} violates bound I1 >= 3")
    x = np.maximum(I1 - 3.0, 0.0)
    c = coeffs.as_array()
    out = x * (c[0] + x * (c[1] + x * c[2]))
    return float(out) if out.ndim == 0 else out


def _stress_basis(lam: np.ndarray) -> np.ndarray:
    """Design matrix: nominal stress per unit of each coefficient."""
    x = np.maximum(lam * lam + 2.0 / lam - 3.0, 0.0)
    pre = 2.0 * (lam - lam ** -2)
    return np.stack([pre, 2.0 * pre * x, 3.0 * pre * x * x], axis=-1)


def uniaxial_nominal_stress(coeffs: YeohCoefficients, lam):
    lam = np.asarray(lam, float)
    if np.any(lam <= 0):
        raise DomainError("stretch lambda must be > 0")
    out = _stress_basis(lam) @ coeffs.as_array()
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class StressStrainCurve:
    stretch: np.ndarray
    stress: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.stretch, float)
        sig = np.asarray(self.stress, float)
        if lam.shape != sig.shape or lam.ndim != 1:
            raise FitError("stretch and stress must be 1-D arrays of equal length")
        if np.any(np.diff(lam) <= 0):
            raise FitError("stretch samples must be strictly increasing")
        if np.any(lam < 1.0 - 1e-12):
            raise FitError("stretch samples must be >= 1 (uniaxial tension)")
        object.__setattr__(self, "stretch", lam)
        object.__setattr__(self, "stress", sig)

    @classmethod
    def read_csv(cls, path) -> "StressStrainCurve":
        lam, sig = [], []
        with open(path, newline="") as fh:
            rows = (r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#"))
            header = next(rows, None)
            if header is None or [h.strip() for h in header[:2]] != ["lambda", "stress_mpa"]:
                raise FitError(f"{path}: expected header 'lambda,stress_mpa', got {header!r}")
            for lineno, row in enumerate(rows, start=2):
                try:
                    lam.append(float(row[0]))
                    sig.append(float(row[1]))
                except (ValueError, IndexError):
                    raise FitError(f"{path}: bad sample row {lineno}: {row!r}") from None
        return cls(np.array(lam), np.array(sig))

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("lambda,stress_mpa\n")
            for l, s in zip(self.stretch, self.stress):
                fh.write(f"{float(l)!r},{float(s)!r}\n")


@dataclass(frozen=True)
class FitReport:
    coefficients: YeohCoefficients
    residual_norm: float
    errors: np.ndarray = field(repr=False)
    rank: int = 3


def fit_yeoh(curve: StressStrainCurve, order: int = 3) -> FitReport:
    """Linear least-squares fit of the first ``order`` Yeoh coefficients."""
    if not 1 <= order <= 3:
        raise FitError(f"order={order!r} must be 1, 2 or 3")
    lam, sig = curve.stretch, curve.stress
    if lam.size < 4:
        raise FitError(f"need at least 4 samples, got {lam.size}")
    if lam[-1] < 1.5:
        raise FitError(f"samples must reach stretch 1.5, max is {lam[-1]:.4g}")
    if np.ptp(sig) == 0.0:
        raise FitError("degenerate data: constant stress carries no stiffness information")
    basis = _stress_basis(lam)[:, :order]
    # column scaling keeps the conditioning independent of coefficient magnitude
    scale = np.linalg.norm(basis, axis=0)
    if np.any(scale == 0):
        raise FitError("rank-deficient design: a basis column vanishes")
    sol, _, rank, sv = np.linalg.lstsq(basis / scale, sig, rcond=None)
    if rank < order or sv[-1] <= 1e-10 * sv[0]:
        raise FitError(f"rank-deficient design (rank {rank} < {order})")
    c = np.zeros(3)
    c[:order] = sol / scale
    try:
        coeffs = YeohCoefficients(*c)
    except DomainError as exc:
        raise FitError(f"fit produced non-physical coefficients: {exc}") from None
    errors = basis @ c[:order] - sig
    return FitReport(coeffs, float(math.sqrt(float(errors @ errors))), errors, int(rank))


def synthetic_curve(coeffs: YeohCoefficients, lam_max=2.0, n=50) -> StressStrainCurve:
    lam = np.linspace(1.0, lam_max, n)
    return StressStrainCurve(lam, uniaxial_nominal_stress(coeffs, lam))


def load_curve(path: str | Path) -> StressStrainCurve:
    if not Path(path).is_file():
        raise FitError(f"stress-strain file {str(path)!r} not found")
    return StressStrainCurve.read_csv(path)
