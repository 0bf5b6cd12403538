"""Turns engine results into deterministic JSON: floats rounded to SIG_DIGITS
significant digits, Fractions as "p/q" strings, numpy scalars and arrays
unwrapped, result objects through their to_json(). Two runs of the same
request give byte-identical output."""

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

from config import SIG_DIGITS


def _round(x: float) -> Any:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    r = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if r == 0.0 else r


def render(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [render(v) for v in obj.tolist()] if obj.dtype != object else [render(v) for v in obj]
    if hasattr(obj, "to_json"):
        return render(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): render(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [render(v) for v in obj]
    raise TypeError(f"cannot render {type(obj).__name__} as JSON")


def dumps(obj: Any) -> str:
    return json.dumps(render(obj), sort_keys=True, indent=2)
