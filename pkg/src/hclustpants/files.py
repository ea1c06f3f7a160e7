"""Instance and result files: versioned JSON documents."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .hierarchy import ClusterHierarchy

SCHEMA_VERSION = 1
KINDS = ("euclidean", "hyperbolic", "metric", "tree", "graph")


class InputError(ValueError):
    """Malformed instance or result file."""


@dataclass
class InstanceFile:
    kind: str
    n: int
    points: list | None = None
    matrix: list | None = None
    edges: list | None = None
    metadata: dict = field(default_factory=dict)
    version: int = SCHEMA_VERSION

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"field 'kind': unknown kind {self.kind!r}, expected one of {KINDS}")
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"field 'n': expected a positive integer, got {self.n!r}")
        if self.kind in ("euclidean", "hyperbolic"):
            if self.points is None:
                raise InputError(f"field 'points': required for kind {self.kind!r}")
            for i, pt in enumerate(self.points):
                if not (isinstance(pt, (list, tuple)) and len(pt) == 2):
                    raise InputError(f"field 'points[{i}]': expected [x, y], got {pt!r}")
                if not all(isinstance(c, (int, float)) and math.isfinite(c) for c in pt):
                    raise InputError(f"field 'points[{i}]': coordinates must be finite numbers")
                if self.kind == "hyperbolic" and pt[0] ** 2 + pt[1] ** 2 >= 1.0:
                    raise InputError(f"field 'points[{i}]': hyperbolic points must lie inside the unit disk")
            if len(self.points) != self.n:
                raise InputError(f"field 'points': {len(self.points)} points but n = {self.n}")
        elif self.kind == "metric":
            if self.matrix is None:
                raise InputError("field 'matrix': required for kind 'metric'")
            if len(self.matrix) != self.n or any(len(row) != self.n for row in self.matrix):
                raise InputError(f"field 'matrix': expected {self.n} rows of {self.n} entries")
            m = np.asarray(self.matrix, dtype=float)
            if not np.all(np.isfinite(m)) or np.any(m < 0):
                raise InputError("field 'matrix': entries must be finite and nonnegative")
            if np.any(np.diag(m) != 0):
                raise InputError("field 'matrix': diagonal must be zero")
            bad = np.argwhere(m != m.T)
            if len(bad):
                i, j = bad[0]
                raise InputError(f"field 'matrix[{i}][{j}]': matrix is not symmetric")
        else:
            if self.edges is None:
                raise InputError(f"field 'edges': required for kind {self.kind!r}")
            for k, e in enumerate(self.edges):
                if not (isinstance(e, (list, tuple)) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                    raise InputError(f"field 'edges[{k}]': expected [u, v] integers, got {e!r}")
                if not all(0 <= x < self.n for x in e) or e[0] == e[1]:
                    raise InputError(f"field 'edges[{k}]': vertex out of range or self-loop")

    def to_dict(self) -> dict:
        out = {"version": self.version, "kind": self.kind, "n": self.n}
        for key in ("points", "matrix", "edges"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out["metadata"] = self.metadata
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceFile":
        if not isinstance(data, dict):
            raise InputError("instance file must hold a JSON object")
        version = data.get("version")
        if version != SCHEMA_VERSION:
            raise InputError(f"field 'version': expected {SCHEMA_VERSION}, got {version!r}")
        for key in ("kind", "n"):
            if key not in data:
                raise InputError(f"field {key!r}: missing")
        return cls(
            kind=data["kind"],
            n=data["n"],
            points=data.get("points"),
            matrix=data.get("matrix"),
            edges=[list(e) for e in data["edges"]] if data.get("edges") is not None else None,
            metadata=dict(data.get("metadata", {})),
            version=version,
        )

    def points_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    def matrix_array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)


@dataclass
class ResultFile:
    kind: str
    algorithm: str
    hierarchy: ClusterHierarchy | None
    costs: dict
    curves: list = field(default_factory=list)
    points: list | None = None
    validation: dict | None = None
    extra: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out = asdict(self)
        out["hierarchy"] = self.hierarchy.to_nested() if self.hierarchy is not None else None
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ResultFile":
        if not isinstance(data, dict):
            raise InputError("result file must hold a JSON object")
        if data.get("version") != SCHEMA_VERSION:
            raise InputError(f"field 'version': expected {SCHEMA_VERSION}, got {data.get('version')!r}")
        try:
            hierarchy = data.get("hierarchy")
            return cls(
                kind=data["kind"],
                algorithm=data["algorithm"],
                hierarchy=ClusterHierarchy.from_nested(hierarchy) if hierarchy is not None else None,
                costs=dict(data["costs"]),
                curves=list(data.get("curves", [])),
                points=data.get("points"),
                validation=data.get("validation"),
                extra=dict(data.get("extra", {})),
                timings=dict(data.get("timings", {})),
                metadata=dict(data.get("metadata", {})),
                version=data["version"],
            )
        except KeyError as exc:
            raise InputError(f"field {exc.args[0]!r}: missing") from None
        except ValueError as exc:
            raise InputError(f"field 'hierarchy': {exc}") from None


def _clean(value):
    """Replace non-finite floats so the document stays strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.generic):
        return _clean(value.item())
    return value


def dumps(doc) -> str:
    data = doc.to_dict() if hasattr(doc, "to_dict") else doc
    return json.dumps(_clean(data), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def read_instance(path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return InstanceFile.from_dict(_load_json(text, str(path)))
    except InputError as exc:
        if str(exc).startswith(str(path)):
            raise
        raise InputError(f"{path}: {exc}") from None


def read_result(path) -> ResultFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return ResultFile.from_dict(_load_json(text, str(path)))
    except InputError as exc:
        if str(exc).startswith(str(path)):
            raise
        raise InputError(f"{path}: {exc}") from None


def loads_result(text: str) -> ResultFile:
    return ResultFile.from_dict(_load_json(text, "<string>"))
