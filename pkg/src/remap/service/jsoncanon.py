"""Canonical JSON serialization for query responses.

Floats are emitted with at most 12 significant digits; NaN/inf are
rejected (undefined values must be explicit nulls with a reason). The
same encoder backs both the HTTP service and the offline CLI, so
identical payloads serialize byte-identically.
"""

from __future__ import annotations

import json
import math


def _canon(obj):
    if isinstance(obj, dict):
        return {k: _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite float in payload")
        v = float(f"{obj:.12g}")
        return 0.0 if v == 0.0 else v  # normalize -0.0
    raise TypeError(f"unserializable type {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(_canon(obj), separators=(",", ":"), allow_nan=False)
