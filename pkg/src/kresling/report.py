"""Comma-delimited report output with fixed column formats."""
from __future__ import annotations

import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import OutputError

# decimal places per quantity kind
FORMATS = {
    "angle": "{:.2f}",
    "length": "{:.2f}",
    "pressure": "{:.3f}",
    "ratio": "{:.1f}",
    "volume": "{:.3f}",
    "torque": "{:.4f}",
    "rigidity": "{:.3f}",
    "energy": "{:.4f}",
    "stress": "{:.6e}",
    "coefficient": "{:.9e}",
    "number": "{:.6g}",
    "int": "{:d}",
    "text": "{}",
}


@dataclass(frozen=True)
class Column:
    key: str
    kind: str = "number"
    unit: str = ""

    @property
    def header(self) -> str:
        return f"{self.key} [{self.unit}]" if self.unit else self.key

    def format(self, value) -> str:
        if value is None:
            return ""
        if isinstance(value, float) and math.isnan(value):
            return ""
        if self.kind == "text":
            text = str(value)
            if any(ch in text for ch in ',"\n'):
                text = '"' + text.replace('"', '""') + '"'
            return text
        if self.kind == "int":
            return str(int(value))
        out = FORMATS[self.kind].format(float(value))
        # avoid a signed zero after rounding
        if out.startswith("-") and float(out) == 0.0:
            out = out[1:]
        return out


def angle(key): return Column(key, "angle", "deg")
def length(key): return Column(key, "length", "mm")
def pressure(key): return Column(key, "pressure", "kPa")


def render(rows, columns, meta: str | None = None) -> str:
    rows = list(rows)
    if not rows:
        raise OutputError("report has no rows")
    buf = io.StringIO()
    if meta:
        buf.write(f"# {meta}\n")
    buf.write(",".join(c.header for c in columns) + "\n")
    for row in rows:
        try:
            buf.write(",".join(c.format(row[c.key]) for c in columns) + "\n")
        except KeyError as exc:
            raise OutputError(f"row is missing column {exc.args[0]!r}") from None
    return buf.getvalue()


def emit_report(rows, destination, columns, meta: str | None = None) -> str:
    """Write rows to ``destination`` (a path, ``'-'`` or a text stream).

    Column order follows ``columns``; NaN and None are written as empty
    fields.  Returns the rendered text.
    """
    text = render(rows, columns, meta)
    if destination is None or destination == "-":
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        try:
            with open(Path(destination), "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OutputError(f"cannot write {destination}: {exc.strerror}") from None
    return text
