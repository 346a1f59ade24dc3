"""Deterministic JSON emission: sorted keys, floats with 17 significant digits."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass
from enum import Enum

import numpy as np


def _float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    text = format(x, ".17g")
    if "e" not in text and "." not in text and "inf" not in text:
        text += ".0"
    return text


def _emit(obj, indent, level) -> str:
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    close = "" if indent is None else "\n" + " " * (indent * level)
    sep = ", " if indent is None else ","
    if is_dataclass(obj) and not isinstance(obj, type):
        obj = asdict(obj)
    if isinstance(obj, Enum):
        obj = obj.value
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, complex):
        return _emit({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            pad + json.dumps(str(k)) + ": " + _emit(obj[k], indent, level + 1)
            for k in sorted(obj, key=str)
        ]
        return "{" + sep.join(items) + close + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + sep.join(pad + _emit(v, indent, level + 1) for v in obj) + close + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    return _emit(obj, indent, 0)
