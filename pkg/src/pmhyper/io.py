"""JSON file formats for spaces, maps and ball families.

Rationals are JSON integers or ``"a/b"`` strings; floats are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import PMetricError, PMetricSpace, format_rational, to_fraction, validate_pmetric
from .hyperconvexity import BallFamily

FORMAT_VERSION = 1


class FormatError(PMetricError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _load_json(source: Union[str, Path]):
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(str(source), f"cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from exc


def _rational(value, where):
    if isinstance(value, float):
        raise FormatError(where, f"floats are not allowed ({value!r}); use an integer or 'a/b'")
    try:
        return to_fraction(value)
    except (TypeError, ValueError) as exc:
        raise FormatError(where, str(exc)) from exc


def raw_space(doc, where: str = "space") -> tuple:
    """Parse labels and matrix without checking the axioms."""
    if not isinstance(doc, dict):
        raise FormatError(where, "expected a JSON object")
    for key in ("points", "p"):
        if key not in doc:
            raise FormatError(where, f"missing field {key!r}")
    points = doc["points"]
    if not isinstance(points, list) or not all(isinstance(x, str) for x in points):
        raise FormatError(f"{where}.points", "expected a list of strings")
    rows = doc["p"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"{where}.p", "expected a list of rows")
    matrix = [
        [_rational(v, f"{where}.p[{i}][{j}]") for j, v in enumerate(row)]
        for i, row in enumerate(rows)
    ]
    return points, matrix


def space_from_dict(doc, where: str = "space") -> PMetricSpace:
    return validate_pmetric(*raw_space(doc, where))


def space_to_dict(space: PMetricSpace) -> dict:
    return space.to_dict()


def load_raw_space(source: Union[str, Path]) -> tuple:
    return raw_space(_load_json(source), str(source))


def load_space(source: Union[str, Path]) -> PMetricSpace:
    return space_from_dict(_load_json(source), str(source))


def dumps_space(space: PMetricSpace) -> str:
    return json.dumps(space.to_dict())


def loads_space(text: str) -> PMetricSpace:
    return space_from_dict(json.loads(text))


def save_space(space: PMetricSpace, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_space(space) + "\n", encoding="utf-8")


def map_from_dict(doc, where: str = "map") -> dict:
    if not isinstance(doc, dict) or not isinstance(doc.get("map"), dict):
        raise FormatError(where, 'expected {"map": {"x": "y", ...}}')
    mapping = doc["map"]
    for k, v in mapping.items():
        if not isinstance(v, str):
            raise FormatError(f"{where}.map.{k}", "images must be point labels")
    return dict(mapping)


def load_map(source: Union[str, Path]) -> dict:
    return map_from_dict(_load_json(source), str(source))


def family_from_dict(doc, where: str = "family") -> BallFamily:
    if isinstance(doc, dict) and "family" in doc and isinstance(doc["family"], dict):
        doc = doc["family"]
    if not isinstance(doc, dict) or not doc:
        raise FormatError(where, 'expected {"center": radius, ...}')
    return BallFamily({k: _rational(v, f"{where}.{k}") for k, v in doc.items()})


def dumps(obj) -> str:
    """Deterministic JSON used by every command."""
    return json.dumps(obj, sort_keys=False, indent=2)


__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "dumps",
    "dumps_space",
    "family_from_dict",
    "format_rational",
    "load_map",
    "load_raw_space",
    "load_space",
    "raw_space",
    "loads_space",
    "map_from_dict",
    "save_space",
    "space_from_dict",
    "space_to_dict",
]
