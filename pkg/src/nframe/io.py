"""Instance files: UTF-8 JSON, validated against the bundled schema."""
from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .errors import InputError
from .frames import FrameSequence
from .generate import Instance
from .nspace import AmbientSpace, AnchorSet
from .quotient import build_quotient

__all__ = [
    "SCHEMA_VERSION",
    "bundled_example",
    "dump_instance",
    "instance_schema",
    "load_instance",
    "parse_instance",
    "to_jsonable",
    "write_json",
]

SCHEMA_VERSION = "1.0"
OPERATOR_NAMES = ("K", "T", "L", "U")

_schema_cache = {}


def instance_schema() -> dict:
    if "instance" not in _schema_cache:
        text = resources.files("nframe").joinpath("data/instance.schema.json").read_text("utf-8")
        _schema_cache["instance"] = json.loads(text)
    return _schema_cache["instance"]


def bundled_example(name: str) -> Path | None:
    """Path of a bundled example file such as ``parseval.json``, if it exists."""
    res = resources.files("nframe").joinpath("data/examples").joinpath(name)
    return Path(str(res)) if res.is_file() else None


def _reject_constant(token):
    raise ValueError(f"non-finite number {token} is not allowed")


def _field(path) -> str:
    parts = [str(p) for p in path]
    return "/".join(parts) if parts else "<root>"


def _matrix(doc, key, cols, rows=None, where=None) -> np.ndarray:
    M = np.array(doc[key], dtype=float)
    where = where or key
    if M.size == 0 and rows in (None, 0):
        return M.reshape(0, cols)
    if M.ndim != 2:
        raise InputError(f"{where}: rows have unequal lengths")
    if M.shape[1] != cols:
        raise InputError(f"{where}: expected {cols} columns, got {M.shape[1]}")
    if rows is not None and M.shape[0] != rows:
        raise InputError(f"{where}: expected {rows} rows, got {M.shape[0]}")
    return M


def parse_instance(text: str, source: str = "<string>") -> Instance:
    """Parse and validate an instance document; errors name the line/column or field."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None
    try:
        jsonschema.validate(doc, instance_schema())
    except jsonschema.ValidationError as exc:
        raise InputError(f"{source}: schema violation at {_field(exc.absolute_path)}: {exc.message}") from None

    d, n = doc["dim"], doc["arity"]
    try:
        space = AmbientSpace(d, n)
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from None
    q = d - n + 1
    try:
        anchors = _matrix(doc, "anchors", d, n - 1)
        frame = _matrix(doc, "frame", d)
        second = _matrix(doc, "second_frame", d, frame.shape[0]) if "second_frame" in doc else None
        ops = {
            name: _matrix(doc["operators"], name, q, q, where=f"operators/{name}")
            for name in OPERATOR_NAMES
            if name in doc.get("operators", {})
        }
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from None
    if frame.shape[0] == 0:
        raise InputError(f"{source}: frame: at least one element is required")

    qs = build_quotient(space, AnchorSet(anchors))
    return Instance(
        qs,
        FrameSequence(frame, qs),
        ops,
        None if second is None else FrameSequence(second, qs),
        doc.get("kind"),
        doc.get("seed"),
    )


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_instance(text, str(path))


def to_jsonable(obj):
    """Plain JSON types; non-finite floats become the strings ``"inf"``, ``"-inf"``, ``"nan"``."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return obj


def dump_instance(inst: Instance, generator: str | None = None, description: str | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dim": inst.space.dim,
        "arity": inst.space.arity,
        "anchors": inst.anchors.vectors,
        "frame": inst.frame.elements,
    }
    if inst.second_frame is not None:
        doc["second_frame"] = inst.second_frame.elements
    if inst.operators:
        doc["operators"] = dict(inst.operators)
    if inst.kind is not None:
        doc["kind"] = inst.kind
    if inst.seed is not None:
        doc["seed"] = inst.seed
    if generator:
        doc["generator"] = generator
    if description:
        doc["description"] = description
    return to_jsonable(doc)


def write_json(obj, path) -> None:
    text = json.dumps(to_jsonable(obj), indent=2, sort_keys=False, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")
