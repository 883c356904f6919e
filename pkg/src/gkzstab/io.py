"""Reading configuration files and encoding exact values for reports.

Two input formats are accepted (UTF-8 text):

Line format::

    # comments and blank lines are ignored
    2               <- the dimension n
    0 0             <- one point per line, n integers separated by
    1 0                spaces and/or commas
    0 1

Object format (JSON)::

    {"name": "conic", "dim": 2,
     "points": [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [2, 0]],
     "dilations": [1, 2]}

``name`` and ``dilations`` are optional; ``dim`` must match the points.
"""

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction

from .config import load_configuration
from .errors import InputError

__all__ = [
    "ConfigurationFile",
    "read_configuration",
    "parse_configuration",
    "rational",
    "parse_rational",
    "encode",
    "parse_dilations",
    "read_heights",
]


@dataclass(frozen=True)
class ConfigurationFile:
    config: object
    dilations: tuple


def read_configuration(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_configuration(text, default_name=stem)


def parse_configuration(text, default_name=None):
    if text.lstrip().startswith("{"):
        return _parse_object(text, default_name)
    return _parse_lines(text, default_name)


_INT = re.compile(r"^[+-]?\d+$")


def _parse_lines(text, name):
    dim = None
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = [t for t in re.split(r"[\s,]+", line) if t]
        if any(not _INT.match(t) for t in tokens):
            raise InputError("expected integers", line=lineno)
        values = [int(t) for t in tokens]
        if dim is None:
            if len(values) != 1 or values[0] < 1:
                raise InputError("first line must be a positive dimension", line=lineno)
            dim = values[0]
            continue
        if len(values) != dim:
            raise InputError(f"expected {dim} coordinates, got {len(values)}", line=lineno)
        points.append(tuple(values))
    if dim is None:
        raise InputError("empty configuration file")
    if not points:
        raise InputError("no points given")
    return ConfigurationFile(load_configuration(points, name=name), ())


def _parse_object(text, default_name):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    unknown = set(doc) - {"name", "dim", "points", "dilations"}
    if unknown:
        raise InputError(f"unknown field {sorted(unknown)[0]!r}", field=sorted(unknown)[0])
    name = doc.get("name", default_name)
    if name is not None and not isinstance(name, str):
        raise InputError("name must be a string", field="name")
    points = doc.get("points")
    if not isinstance(points, list) or not points:
        raise InputError("points must be a nonempty list", field="points")
    for k, p in enumerate(points):
        if not isinstance(p, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in p
        ):
            raise InputError(f"point {k} must be a list of integers", field="points")
    dim = doc.get("dim", len(points[0]))
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError("dim must be a positive integer", field="dim")
    if any(len(p) != dim for p in points):
        raise InputError(f"every point must have {dim} coordinates", field="points")
    dilations = doc.get("dilations", [])
    if not isinstance(dilations, list) or not all(
        isinstance(i, int) and not isinstance(i, bool) and i >= 1 for i in dilations
    ):
        raise InputError("dilations must be a list of positive integers", field="dilations")
    config = load_configuration([tuple(p) for p in points], name=name)
    return ConfigurationFile(config, tuple(dilations))


def parse_dilations(text):
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad dilation list {text!r}", field="--dilation") from None
    if not values or any(i < 1 for i in values):
        raise InputError("dilations must be positive integers", field="--dilation")
    return tuple(values)


def read_heights(path, count):
    """Height vectors for k-check: a JSON list of lists, or one vector per
    line. Entries may be integers or rationals written p/q."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc.msg}", line=exc.lineno) from None
        numbered = list(enumerate(rows, start=1))
    else:
        numbered = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                numbered.append((lineno, [t for t in re.split(r"[\s,]+", line) if t]))
    out = []
    for lineno, row in numbered:
        if not isinstance(row, list) or len(row) != count:
            raise InputError(f"expected {count} heights", line=lineno)
        try:
            out.append(tuple(parse_rational(x) for x in row))
        except (ValueError, TypeError, ZeroDivisionError):
            raise InputError("heights must be rationals", line=lineno) from None
    if not out:
        raise InputError("no height vectors given")
    return out


def rational(x):
    """Exact string form: "p/q", or "p" for integers."""
    return str(Fraction(x))


def parse_rational(s):
    if isinstance(s, bool):
        raise TypeError(s)
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(s)


def encode(value):
    """Recursively turn exact numbers into strings and tuples into lists."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return rational(value)
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")
