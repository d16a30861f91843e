"""Byte-stable JSON rendering for reports.

Rules: keys sorted, UTF-8, every integer rendered as a decimal string
(64-bit values survive any JSON parser), floats at 12 significant
digits.  Two renderings of equal payloads are byte-identical.
"""

import json
import math

import numpy as np


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float in report: {x!r}")
    return f"{x:.12g}"


def dumps(obj) -> str:
    return "".join(_emit(obj))


def _emit(obj):
    if obj is None:
        yield "null"
    elif isinstance(obj, (bool, np.bool_)):
        yield "true" if obj else "false"
    elif isinstance(obj, (int, np.integer)):
        yield f'"{int(obj):d}"'
    elif isinstance(obj, (float, np.floating)):
        yield format_float(float(obj))
    elif isinstance(obj, str):
        yield json.dumps(obj, ensure_ascii=False)
    elif isinstance(obj, dict):
        yield "{"
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"report keys must be strings, got {key!r}")
            if i:
                yield ", "
            yield json.dumps(key, ensure_ascii=False)
            yield ": "
            yield from _emit(obj[key])
        yield "}"
    elif isinstance(obj, (list, tuple)):
        yield "["
        for i, item in enumerate(obj):
            if i:
                yield ", "
            yield from _emit(item)
        yield "]"
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__} in a report")
