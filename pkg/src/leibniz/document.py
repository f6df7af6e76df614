"""Point-set documents: a JSON object or plain CSV coordinate rows.

JSON form::

    {"dimension": 2, "points": [[0, 0], [4, 0], [0, 3]],
     "query_point": [2, 1.5], "metadata": {"name": "3-4-5"}}

``query_point`` and ``metadata`` are optional. CSV input has one point per
row; the dimension is the column count, a non-numeric first row is taken
as a header and ``#`` lines are comments.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .core import PointSystem


class DocumentError(ValueError):
    pass


@dataclass(frozen=True)
class PointSetDocument:
    dimension: int
    points: list[list[float]]
    query_point: list[float] | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.dimension, int) or isinstance(self.dimension, bool) or self.dimension < 1:
            raise DocumentError(f"dimension must be a positive integer, got {self.dimension!r}")
        if len(self.points) < 2:
            raise DocumentError(f"need at least 2 points, got {len(self.points)}")
        for k, row in enumerate(self.points):
            if len(row) != self.dimension:
                raise DocumentError(f"point {k} has {len(row)} coordinates, expected {self.dimension}")
        if self.query_point is not None and len(self.query_point) != self.dimension:
            raise DocumentError(
                f"query_point has {len(self.query_point)} coordinates, expected {self.dimension}"
            )

    def point_system(self) -> PointSystem:
        return PointSystem(self.points)

    def to_dict(self) -> dict:
        out = {"dimension": self.dimension, "points": [list(r) for r in self.points]}
        if self.query_point is not None:
            out["query_point"] = list(self.query_point)
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{where}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise DocumentError(f"{where}: coordinates must be finite")
    return x


def _row(values, where: str) -> list[float]:
    if not isinstance(values, list):
        raise DocumentError(f"{where}: expected a list of coordinates")
    return [_number(v, f"{where}[{j}]") for j, v in enumerate(values)]


def _reject_constant(name):
    raise DocumentError(f"non-finite number {name} is not allowed")


def _from_json(text: str) -> PointSetDocument:
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DocumentError("the document must be a JSON object")
    unknown = set(data) - {"dimension", "points", "query_point", "metadata"}
    if unknown:
        raise DocumentError(f"unknown fields: {', '.join(sorted(unknown))}")
    if "points" not in data:
        raise DocumentError("missing field 'points'")
    if not isinstance(data["points"], list):
        raise DocumentError("'points' must be a list of coordinate rows")
    points = [_row(r, f"points[{k}]") for k, r in enumerate(data["points"])]
    dimension = data.get("dimension", len(points[0]) if points else 0)
    query = data.get("query_point")
    if query is not None:
        query = _row(query, "query_point")
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict) or not all(isinstance(v, str) for v in metadata.values()):
        raise DocumentError("'metadata' must map strings to strings")
    return PointSetDocument(dimension, points, query, dict(metadata))


def _from_csv(text: str) -> PointSetDocument:
    rows = []
    for k, rec in enumerate(csv.reader(io.StringIO(text))):
        cells = [c.strip() for c in rec]
        if not cells or all(c == "" for c in cells) or cells[0].startswith("#"):
            continue
        try:
            values = [float(c) for c in cells]
        except ValueError:
            if not rows and k == 0:
                continue  # header
            raise DocumentError(f"line {k + 1}: non-numeric value in {rec!r}") from None
        rows.append([_number(v, f"line {k + 1}") for v in values])
    if not rows:
        raise DocumentError("no coordinate rows found")
    return PointSetDocument(len(rows[0]), rows)


def parse_document(text: str) -> PointSetDocument:
    stripped = text.lstrip()
    if not stripped:
        raise DocumentError("empty input")
    if stripped.startswith("{"):
        return _from_json(stripped)
    return _from_csv(text)


def dump_document(doc: PointSetDocument) -> str:
    """JSON text whose numbers parse back to the identical floats."""
    return json.dumps(doc.to_dict(), indent=2)
