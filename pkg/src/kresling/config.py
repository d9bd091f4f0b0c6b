"""Actuator configuration files.

A config is a TOML document with up to three tables::

    [patterns.IB]            # one ModulePattern per name
    a = 20.0
    b = 40.0
    c = 44.7
    delta0_deg = 53.0
    n_sides = 6              # optional, default 6
    handedness = "CW"        # optional, default CW

    [actuators.IB]
    pattern = "IB"           # must name a pattern above
    modules = 4              # or: handedness = ["CW", "CCW", ...]
    type = "TypeI"           # TypeI | TypeII | TypeIII | Custom
    k_c1 = 2.0               # N/rad
    k_c2 = 0.25              # N/rad
    skeleton_ratio = 0.0

    [materials.E615]
    curve = "e615.csv"       # relative to the config file
    # or: C10 = ..., C20 = ..., C30 = ...

Bundled configs for the four prototypes are addressable by name
(``IA``, ``II``, ``III``, ``IB``).
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError, KreslingError
from .geometry import Handedness, ModulePattern
from .kinematics import ActuatorSpec, TypeLabel
from .materials import StressStrainCurve, YeohCoefficients

DATA_DIR = Path(__file__).parent / "data"
BUNDLED = ("IA", "II", "III", "IB")

_PATTERN_KEYS = {"a", "b", "c", "delta0_deg", "n_sides", "handedness"}
_ACTUATOR_KEYS = {"pattern", "modules", "handedness", "type", "k_c1", "k_c2", "skeleton_ratio"}
_MATERIAL_KEYS = {"curve", "C10", "C20", "C30"}


@dataclass
class Config:
    patterns: dict = field(default_factory=dict)
    actuators: dict = field(default_factory=dict)
    materials: dict = field(default_factory=dict)
    source: str = field(default="", compare=False)

    def actuator(self, name: str | None = None) -> ActuatorSpec:
        """The named actuator, or the only one when ``name`` is None."""
        if name is None:
            if len(self.actuators) != 1:
                raise ConfigError(
                    f"{self.source or 'config'}: defines {len(self.actuators)} actuators "
                    f"({', '.join(self.actuators) or 'none'}); choose one with --actuator")
            return next(iter(self.actuators.values()))
        try:
            return self.actuators[name]
        except KeyError:
            raise ConfigError(
                f"actuator {name!r} not defined; known: {', '.join(self.actuators) or 'none'}") from None


def bundled_path(name: str) -> Path:
    return DATA_DIR / f"{name}.toml"


def resolve_path(ref: str | Path) -> Path:
    """A config path, falling back to a bundled config name."""
    path = Path(ref)
    if path.is_file():
        return path
    if str(ref) in BUNDLED:
        return bundled_path(str(ref))
    raise ConfigError(
        f"config {str(ref)!r} not found (not a file, and not one of the bundled names "
        f"{', '.join(BUNDLED)})")


def _number(table: dict, key: str, where: str, default=None, integer=False):
    if key not in table:
        if default is None:
            raise ConfigError(f"{where}.{key}: required field missing")
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} = {value!r}: expected a number")
    if integer and int(value) != value:
        raise ConfigError(f"{where}.{key} = {value!r}: expected an integer")
    if not math.isfinite(value):
        raise ConfigError(f"{where}.{key} = {value!r}: expected a finite number")
    return int(value) if integer else float(value)


def _check_keys(table, allowed, where):
    if not isinstance(table, dict):
        raise ConfigError(f"{where}: expected a table, got {table!r}")
    extra = sorted(set(table) - allowed)
    if extra:
        raise ConfigError(f"{where}: unknown field(s) {', '.join(extra)}")


def _pattern(name: str, table: dict) -> ModulePattern:
    where = f"patterns.{name}"
    _check_keys(table, _PATTERN_KEYS, where)
    values = dict(
        a=_number(table, "a", where),
        b=_number(table, "b", where),
        c=_number(table, "c", where),
        delta0=_number(table, "delta0_deg", where),
        n_sides=_number(table, "n_sides", where, default=6, integer=True),
    )
    hand = table.get("handedness", "CW")
    try:
        values["handedness"] = Handedness(hand)
    except ValueError:
        raise ConfigError(f"{where}.handedness = {hand!r}: expected 'CW' or 'CCW'") from None
    try:
        return ModulePattern(**values)
    except KreslingError as exc:
        raise ConfigError(f"{where} (a={values['a']}, b={values['b']}, c={values['c']}, "
                          f"delta0_deg={values['delta0']}): {exc}") from None


def _actuator(name: str, table: dict, patterns: dict) -> ActuatorSpec:
    where = f"actuators.{name}"
    _check_keys(table, _ACTUATOR_KEYS, where)
    ref = table.get("pattern")
    if ref is None:
        raise ConfigError(f"{where}.pattern: required field missing")
    if ref not in patterns:
        raise ConfigError(f"{where}.pattern = {ref!r}: no such pattern; "
                          f"known: {', '.join(patterns) or 'none'}")
    pattern = patterns[ref]
    type_name = table.get("type", "Custom")
    try:
        type_label = TypeLabel(type_name)
    except ValueError:
        raise ConfigError(f"{where}.type = {type_name!r}: expected one of "
                          f"{', '.join(t.value for t in TypeLabel)}") from None
    kw = dict(
        k_c1=_number(table, "k_c1", where, default=2.0),
        k_c2=_number(table, "k_c2", where, default=0.25),
        skeleton_ratio=_number(table, "skeleton_ratio", where, default=0.0),
    )
    try:
        if "handedness" in table:
            hands = table["handedness"]
            if not isinstance(hands, list) or not hands:
                raise ConfigError(f"{where}.handedness = {hands!r}: expected a nonempty list")
            try:
                hands = [Handedness(h) for h in hands]
            except ValueError:
                raise ConfigError(f"{where}.handedness = {hands!r}: entries must be 'CW' or 'CCW'") from None
            if "modules" in table and _number(table, "modules", where, integer=True) != len(hands):
                raise ConfigError(f"{where}.modules = {table['modules']!r} disagrees with "
                                  f"{len(hands)} handedness entries")
            return ActuatorSpec(tuple(pattern.with_handedness(h) for h in hands), type_label, **kw)
        n = _number(table, "modules", where, integer=True)
        if n < 1:
            raise ConfigError(f"{where}.modules = {n!r}: violates rule 'modules >= 1'")
        return ActuatorSpec.build(pattern, n, type_label, **kw)
    except ConfigError:
        raise
    except KreslingError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _material(name: str, table: dict, base: Path):
    where = f"materials.{name}"
    _check_keys(table, _MATERIAL_KEYS, where)
    if "curve" in table:
        path = base / table["curve"]
        if not path.is_file():
            raise ConfigError(f"{where}.curve = {table['curve']!r}: file {path} not found")
        try:
            return StressStrainCurve.read_csv(path)
        except KreslingError as exc:
            raise ConfigError(f"{where}.curve: {exc}") from None
    try:
        return YeohCoefficients(_number(table, "C10", where), _number(table, "C20", where, default=0.0),
                                _number(table, "C30", where, default=0.0))
    except ConfigError:
        raise
    except KreslingError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_config(text: str, source: str = "<string>", base: Path | None = None) -> Config:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{source}: parse error: {exc}") from None
    unknown = sorted(set(doc) - {"patterns", "actuators", "materials"})
    if unknown:
        raise ConfigError(f"{source}: unknown top-level table(s) {', '.join(unknown)}")
    cfg = Config(source=source)
    try:
        for name, table in doc.get("patterns", {}).items():
            cfg.patterns[name] = _pattern(name, table)
        for name, table in doc.get("actuators", {}).items():
            cfg.actuators[name] = _actuator(name, table, cfg.patterns)
        for name, table in doc.get("materials", {}).items():
            cfg.materials[name] = _material(name, table, base or Path("."))
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return cfg


def load_config(ref: str | Path) -> Config:
    """Parse and validate a config file (or bundled config name)."""
    path = resolve_path(ref)
    return parse_config(path.read_text(), source=str(ref), base=path.parent)


def _fmt(value) -> str:
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(cfg: Config) -> str:
    """TOML text that :func:`parse_config` maps back to an equal config.

    Actuators are written with an explicit handedness list and reference a
    pattern named after the actuator.  Materials given as curves cannot be
    serialised without a file and are rejected.
    """
    lines = []
    patterns = dict(cfg.patterns)
    refs = {}
    for name, spec in cfg.actuators.items():
        base = spec.pattern.with_handedness(Handedness.CW)
        ref = next((k for k, p in patterns.items() if p.same_geometry(base)), None)
        if ref is None:
            ref = f"{name}_module"
            patterns[ref] = base
        refs[name] = ref
    for name, p in patterns.items():
        lines.append(f"[patterns.{name}]")
        for key, value in (("a", p.a), ("b", p.b), ("c", p.c), ("delta0_deg", float(p.delta0)),
                           ("n_sides", p.n_sides), ("handedness", p.handedness.value)):
            lines.append(f"{key} = {_fmt(value)}")
        lines.append("")
    for name, spec in cfg.actuators.items():
        hands = ", ".join(_fmt(m.handedness.value) for m in spec.modules)
        lines.append(f"[actuators.{name}]")
        lines.append(f"pattern = {_fmt(refs[name])}")
        lines.append(f"handedness = [{hands}]")
        lines.append(f"type = {_fmt(spec.type_label.value)}")
        for key in ("k_c1", "k_c2", "skeleton_ratio"):
            lines.append(f"{key} = {_fmt(float(getattr(spec, key)))}")
        lines.append("")
    for name, mat in cfg.materials.items():
        if not isinstance(mat, YeohCoefficients):
            raise ConfigError(f"materials.{name}: curve-backed materials cannot be serialised inline")
        lines.append(f"[materials.{name}]")
        for key in ("C10", "C20", "C30"):
            lines.append(f"{key} = {_fmt(float(getattr(mat, key)))}")
        lines.append("")
    return "\n".join(lines)
