"""JSON coefficient files: ``{"b0": [re, im], "tail": [[re, im], ...]}``."""

import json
from pathlib import Path

import numpy as np

from .core import LaurentMap

__all__ = ["dump_map", "load_map", "map_to_json", "map_from_json"]


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _complex(value, name):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"field {name!r}: expected [re, im], got {value!r}")


def map_to_json(f: LaurentMap) -> dict:
    return {"b0": _pair(f.b0), "tail": [_pair(b) for b in f.tail]}


def map_from_json(obj) -> LaurentMap:
    if not isinstance(obj, dict):
        raise ValueError("coefficient file must hold a JSON object")
    if "tail" not in obj:
        raise ValueError("field 'tail' is missing")
    tail = obj["tail"]
    if not isinstance(tail, list):
        raise ValueError("field 'tail' must be a list of [re, im] pairs")
    b0 = _complex(obj.get("b0", [0.0, 0.0]), "b0")
    return LaurentMap(b0, np.array([_complex(v, f"tail[{i}]") for i, v in enumerate(tail)],
                                   dtype=complex))


def dump_map(f: LaurentMap, path) -> None:
    Path(path).write_text(json.dumps(map_to_json(f)) + "\n")


def load_map(path) -> LaurentMap:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    return map_from_json(obj)
