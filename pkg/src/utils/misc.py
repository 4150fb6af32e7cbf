"""
Date: 18-10-2026
Miscellaneous helpers: deterministic float formatting and JSON, argument parsing
for value lists.
"""

import json
import math
from typing import Any, List

import numpy as np

from ..config import FLOAT_FORMAT


def format_float(value: float) -> str:
    """
    Fixed 17-significant-digit rendering; round-trips every double.

    :param value: Float to format.
    :return: Decimal string.
    """
    return FLOAT_FORMAT % value


def parse_float_list(text: str) -> List[float]:
    """
    Parse "0.2,0.5,0.9" into floats.

    :param text: Comma separated values.
    :return: List of floats.
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("Empty value list")
    return [float(item) for item in items]


def to_plain(value: Any) -> Any:
    """
    Recursively convert numpy scalars/arrays and tuples into plain Python containers.

    :param value: Arbitrary nested value.
    :return: JSON-compatible structure.
    """
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def dumps_report(value: Any, indent: int = 2) -> str:
    """
    Deterministic JSON: insertion-ordered keys, floats with 17 significant digits,
    non-finite floats as null.

    :param value: Nested dicts/lists of plain or numpy values.
    :param indent: Spaces per nesting level.
    :return: JSON text.
    """
    def encode(item: Any, level: int) -> str:
        pad = " " * (indent * (level + 1))
        close = " " * (indent * level)
        if isinstance(item, dict):
            if not item:
                return "{}"
            body = ",\n".join(f"{pad}{json.dumps(str(k))}: {encode(v, level + 1)}" for k, v in item.items())
            return "{\n" + body + "\n" + close + "}"
        if isinstance(item, (list, tuple, np.ndarray)):
            if len(item) == 0:
                return "[]"
            body = ",\n".join(f"{pad}{encode(v, level + 1)}" for v in item)
            return "[\n" + body + "\n" + close + "]"
        if item is None:
            return "null"
        if isinstance(item, (bool, np.bool_)):
            return "true" if item else "false"
        if isinstance(item, (int, np.integer)):
            return str(int(item))
        if isinstance(item, (float, np.floating)):
            return format_float(float(item)) if math.isfinite(item) else "null"
        if isinstance(item, str):
            return json.dumps(item)
        return json.dumps(to_plain(item))

    return encode(value, 0)
