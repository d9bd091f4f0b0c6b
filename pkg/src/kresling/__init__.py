"""Modelling toolkit for Kresling-pattern pneumatic twisting actuators.

Submodules: :mod:`geometry` (module truss, chamber volume, fold angles),
:mod:`kinematics` (closed-form rotations, serial-chain poses),
:mod:`materials` (Yeoh model and fitting), :mod:`quasistatics`
(virtual-work pressure, rotation and torque) and :mod:`cli`.
"""
__version__ = "0.1.0"

from .errors import (ConfigError, DomainError, FitError, GeometryError, KreslingError,
                     NoEquilibriumError, OutputError, SingularConfigurationError)
from .geometry import (FoldAngles, Handedness, ModulePattern, ModuleState, chamber_volume,
                       fold_angles, height_from_rotation, rotation_from_height, vertex_positions)
from .kinematics import (ActuatorSpec, HeightModel, Pose, TypeLabel, chain_pose, chain_poses,
                         folding_rotation, max_rotation, module_transform, parametric_sweep,
                         skeleton_max_rotation, unfold_rotation)
from .materials import (StressStrainCurve, YeohCoefficients, fit_yeoh, uniaxial_nominal_stress,
                        yeoh_energy_density)
from .quasistatics import (EnergyState, EquilibriumCurve, crease_energy, efficiency,
                           equilibrium_pressure, equilibrium_rotation, output_torque,
                           pressure_angle_curve, torque_vs_operating_length, torsional_rigidity)
from .config import load_config
