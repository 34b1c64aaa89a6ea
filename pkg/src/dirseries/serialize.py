"""Machine-readable output: JSON with 17-significant-digit floats, CSV."""

import dataclasses
import math

import numpy as np


def format_float(x):
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite value {x} cannot be serialized")
    return "%.17g" % x


def _escape(s):
    import json

    return json.dumps(s)


def json_dumps(obj):
    """JSON text; floats carry 17 significant digits so they re-parse bit-identically."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return json_dumps({"re": obj.real, "im": obj.imag})
    if isinstance(obj, str):
        return _escape(obj)
    if dataclasses.is_dataclass(obj):
        fields = {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}
        return json_dumps(fields)
    if isinstance(obj, dict):
        inner = ",".join(f"{_escape(str(k))}:{json_dumps(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, np.ndarray):
        return json_dumps(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(json_dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def scalar_text(v):
    if isinstance(v, (float, np.floating)):
        return format_float(float(v))
    return str(v)


def coeffs_csv_lines(values, start=1):
    yield "n,value"
    for n, v in enumerate(values, start):
        yield f"{n},{scalar_text(v)}"


def table_csv_lines(header, rows):
    yield ",".join(header)
    for row in rows:
        yield ",".join(scalar_text(v) for v in row)
