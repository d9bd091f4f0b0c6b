import pytest

from kresling.config import BUNDLED, dump_config, load_config, parse_config
from kresling.errors import ConfigError
from kresling.geometry import Handedness
from kresling.kinematics import TypeLabel
from kresling.materials import YeohCoefficients


def test_bundled_ia():
    spec = load_config("IA").actuator()
    p = spec.pattern
    assert (p.a, p.b, p.c, p.delta0, len(spec)) == (18.0, 18.0, 27.6, 45.0, 8)
    assert p.ratio == 1.0 and spec.type_label is TypeLabel.TypeI
    assert (spec.k_c1, spec.k_c2) == (2.0, 0.25)


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_round_trip(name):
    cfg = load_config(name)
    back = parse_config(dump_config(cfg))
    assert back.actuators == cfg.actuators


def test_bundled_type_patterns():
    ii = [m.handedness for m in load_config("II").actuator().modules]
    iii = [m.handedness for m in load_config("III").actuator().modules]
    assert ii == [Handedness.CW] * 4 + [Handedness.CCW] * 4
    assert iii[:2] == [Handedness.CW, Handedness.CCW]
    assert len(load_config("IB").actuator()) == 4


PATTERN = "[patterns.p]\na = 10.0\nb = {b}\nc = 5.0\ndelta0_deg = 40.0\n"


def test_ratio_three_rejected():
    with pytest.raises(ConfigError, match=r"patterns\.p.*b=30\.0.*b <= 2a"):
        parse_config(PATTERN.format(b=30.0))


def test_parse_error_has_line():
    with pytest.raises(ConfigError, match="line 3"):
        parse_config("[patterns.p]\na = 1.0\nb = \n")


def test_field_errors():
    with pytest.raises(ConfigError, match=r"patterns\.p\.c: required"):
        parse_config("[patterns.p]\na = 1.0\nb = 1.0\ndelta0_deg = 40.0\n")
    with pytest.raises(ConfigError, match=r"patterns\.p\.a = 'x'"):
        parse_config('[patterns.p]\na = "x"\nb = 1.0\nc = 1.0\ndelta0_deg = 40.0\n')
    with pytest.raises(ConfigError, match="unknown field"):
        parse_config(PATTERN.format(b=10.0) + "colour = 3\n")
    with pytest.raises(ConfigError, match="no such pattern"):
        parse_config(PATTERN.format(b=10.0) + '[actuators.x]\npattern = "q"\nmodules = 2\n')
    with pytest.raises(ConfigError, match="TypeI"):
        parse_config(PATTERN.format(b=10.0) +
                     '[actuators.x]\npattern = "p"\nhandedness = ["CW", "CCW"]\ntype = "TypeI"\n')
    with pytest.raises(ConfigError, match="unknown top-level"):
        parse_config("[stuff]\n")


def test_custom_and_materials(tmp_path):
    (tmp_path / "e.csv").write_text("lambda,stress_mpa\n1.0,0.0\n1.5,0.1\n2.0,0.2\n")
    text = PATTERN.format(b=10.0) + (
        '[actuators.x]\npattern = "p"\nhandedness = ["CW", "CW", "CCW"]\nk_c1 = 1.5\n'
        '[materials.m]\nC10 = 0.1\nC20 = 0.01\n'
        '[materials.curve]\ncurve = "e.csv"\n')
    path = tmp_path / "c.toml"
    path.write_text(text)
    cfg = load_config(path)
    spec = cfg.actuator()
    assert [m.handedness.value for m in spec.modules] == ["CW", "CW", "CCW"]
    assert spec.k_c1 == 1.5 and spec.type_label is TypeLabel.Custom
    assert cfg.materials["m"] == YeohCoefficients(0.1, 0.01, 0.0)
    assert cfg.materials["curve"].stretch.size == 3


def test_actuator_selection():
    two = PATTERN.format(b=10.0) + ('[actuators.x]\npattern = "p"\nmodules = 1\n'
                                    '[actuators.y]\npattern = "p"\nmodules = 2\n')
    cfg = parse_config(two)
    with pytest.raises(ConfigError, match="choose one"):
        cfg.actuator()
    assert len(cfg.actuator("y")) == 2
    with pytest.raises(ConfigError, match="not defined"):
        cfg.actuator("z")


def test_missing_file():
    with pytest.raises(ConfigError, match="not found"):
        load_config("/no/such/file.toml")
