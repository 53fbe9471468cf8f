"""JSON interchange: metric Lie algebra files with optional generator metadata."""
from __future__ import annotations

import json
from pathlib import Path

from .catalog import FamilySpec
from .errors import SchemaError
from .metric import MetricLieAlgebra


def dumps(obj) -> str:
    """Canonical text form: sorted keys, two-space indent, LF endings, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def instance_to_json(m: MetricLieAlgebra, spec: FamilySpec | None = None) -> dict:
    data = m.to_json()
    if spec is not None:
        data["metadata"] = spec.to_json()
    return data


def parse_instance(text: str) -> MetricLieAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top-level JSON value must be an object")
    return MetricLieAlgebra.from_json(data)


def load_instance(path: str | Path) -> MetricLieAlgebra:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
