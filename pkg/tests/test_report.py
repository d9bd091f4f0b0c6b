import io
import math

import pytest

from kresling.errors import OutputError
from kresling.report import Column, angle, emit_report, length, pressure, render

COLUMNS = [Column("name", "text"), angle("theta"), length("h"), pressure("p"), Column("E_r", "ratio", "deg")]
ROW = dict(name="This work", theta=73.99456, h=31.9454, p=-5.0, E_r=435 / 3.19)


def test_formats():
    text = render([ROW], COLUMNS)
    assert text.splitlines() == [
        "name,theta [deg],h [mm],p [kPa],E_r [deg]",
        "This work,73.99,31.95,-5.000,136.4",
    ]


def test_missing_and_quoting():
    row = dict(ROW, name='a, "b"', theta=math.nan, h=None, p=-0.0001)
    line = render([row], COLUMNS).splitlines()[1]
    assert line == '"a, ""b""",,,0.000,136.4'


def test_meta_line():
    assert render([ROW], COLUMNS, meta="kresling x").startswith("# kresling x\n")


def test_empty_rows():
    with pytest.raises(OutputError, match="no rows"):
        render([], COLUMNS)


def test_emit_destinations(tmp_path):
    buf = io.StringIO()
    emit_report([ROW], buf, COLUMNS)
    path = tmp_path / "out.csv"
    emit_report([ROW], path, COLUMNS)
    emit_report([ROW], tmp_path / "again.csv", COLUMNS)
    assert path.read_bytes() == (tmp_path / "again.csv").read_bytes()
    assert path.read_text() == buf.getvalue()
    with pytest.raises(OutputError, match="cannot write"):
        emit_report([ROW], tmp_path / "missing" / "x.csv", COLUMNS)
