"""Versioned JSON instance schema shared by the CLI and library callers.

All integers are carried as decimal strings so that arbitrary-precision
values survive any JSON implementation; sets are sorted ascending.  The
top-level ``type`` field discriminates: "dkn" | "bdkn" | "cube" | "pell".
On input, plain JSON integers are also accepted.
"""

from __future__ import annotations

import json
from fractions import Fraction

import mpmath

from .cubes import HilbertCube
from .errors import SchemaError
from .tuples import BipartitePair, TupleInstance

SCHEMA_VERSION = 1


def _as_int(value, field: str) -> int:
    if isinstance(value, bool):
        raise SchemaError("expected an integer, got a boolean", field)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        s = value.strip()
        sign = s[1:] if s.startswith("-") else s
        if sign.isdigit():
            return int(s)
    raise SchemaError(f"expected an integer or decimal string, got {value!r}", field)


def _as_int_list(value, field: str) -> list[int]:
    if not isinstance(value, list):
        raise SchemaError("expected a list", field)
    return [_as_int(v, f"{field}[{i}]") for i, v in enumerate(value)]


def int_str(x: int) -> str:
    return str(int(x))


def load_instance(path_or_dict):
    """Parse an instance file (or already-loaded dict) into a typed object.

    Returns one of TupleInstance, BipartitePair, HilbertCube, or a
    ("pell", a, u, [(x, z), ...]) tuple.  Malformed content raises
    SchemaError carrying the offending field (or line for JSON syntax
    errors).
    """
    if isinstance(path_or_dict, dict):
        data = path_or_dict
    else:
        with open(path_or_dict, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as e:
                raise SchemaError(
                    f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
                ) from e
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    if _as_int(data.get("schema", 0), "schema") != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema version {data.get('schema')!r}", "schema"
        )
    kind = data.get("type")
    try:
        if kind == "dkn":
            return TupleInstance(
                k=_as_int(data["k"], "k"),
                n=_as_int(data["n"], "n"),
                elements=tuple(sorted(_as_int_list(data["elements"], "elements"))),
            )
        if kind == "bdkn":
            return BipartitePair(
                k=_as_int(data["k"], "k"),
                n=_as_int(data["n"], "n"),
                A=tuple(sorted(_as_int_list(data["A"], "A"))),
                B=tuple(sorted(_as_int_list(data["B"], "B"))),
            )
        if kind == "cube":
            return (
                _as_int(data["k"], "k"),
                _as_int(data["n"], "n"),
                HilbertCube(
                    a0=_as_int(data["a0"], "a0"),
                    generators=tuple(
                        sorted(_as_int_list(data["generators"], "generators"))
                    ),
                ),
            )
        if kind == "pell":
            sols = data.get("solutions", [])
            if not isinstance(sols, list):
                raise SchemaError("expected a list", "solutions")
            pairs = []
            for i, item in enumerate(sols):
                if not isinstance(item, list) or len(item) != 2:
                    raise SchemaError("expected [x, z]", f"solutions[{i}]")
                pairs.append(
                    (
                        _as_int(item[0], f"solutions[{i}][0]"),
                        _as_int(item[1], f"solutions[{i}][1]"),
                    )
                )
            return ("pell", _as_int(data["a"], "a"), _as_int(data["u"], "u"), pairs)
    except KeyError as e:
        raise SchemaError("missing required field", str(e.args[0])) from e
    raise SchemaError(f"unknown instance type {kind!r}", "type")


def dump_instance(obj) -> dict:
    """Serialize a typed instance back to its schema dict."""
    if isinstance(obj, TupleInstance):
        return {
            "schema": SCHEMA_VERSION,
            "type": "dkn",
            "k": int_str(obj.k),
            "n": int_str(obj.n),
            "elements": [int_str(e) for e in obj.elements],
        }
    if isinstance(obj, BipartitePair):
        return {
            "schema": SCHEMA_VERSION,
            "type": "bdkn",
            "k": int_str(obj.k),
            "n": int_str(obj.n),
            "A": [int_str(e) for e in obj.A],
            "B": [int_str(e) for e in obj.B],
        }
    raise TypeError(f"cannot serialize {type(obj)}")


def jsonable(value):
    """Recursively convert result values to JSON-safe, deterministic data.

    ints become decimal strings, Fractions become "p/q", mpmath floats
    are printed to 25 significant digits.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return int_str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (mpmath.mpf,)):
        return mpmath.nstr(value, 25)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    if hasattr(value, "__dataclass_fields__"):
        return {
            name: jsonable(getattr(value, name))
            for name in sorted(value.__dataclass_fields__)
        }
    return str(value)
