"""Command reports and their text and JSON renderings."""

import hashlib
import json
import os
from fractions import Fraction
from typing import Any, Dict, List, Literal, Tuple, Type

import numpy as np
from pydantic import BaseModel, Field
from sympy import Poly

from dissecta.core.dissection.polynomials import format_fraction, format_polynomial
from dissecta.core.documents import D, parse_document
from dissecta.core.errors import ParseError

OutputFormat = Literal["text", "json"]


class Report(BaseModel):
    command: str
    inputs: Dict[str, str] = Field(default_factory=dict, description="file name -> sha256")
    results: Dict[str, Any] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)

    def read_input(self, path: str, model: Type[D]) -> D:
        """Parse a document and record its digest under the file's base name."""
        try:
            with open(path, "rb") as f:
                raw = f.read()
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e.strerror}") from e
        self.inputs[os.path.basename(path)] = hashlib.sha256(raw).hexdigest()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"{path} is not UTF-8: {e}") from e
        return parse_document(text, model)

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def as_data(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": dict(self.inputs),
            "results": to_data(self.results),
            "warnings": list(self.warnings),
        }


def to_data(value: Any) -> Any:
    """Plain JSON values: fractions and polynomials become canonical strings."""
    match value:
        case bool() | str() | None:
            return value
        case Fraction():
            return format_fraction(value)
        case Poly():
            return format_polynomial(value)
        case int() | np.integer():
            return int(value)
        case np.bool_():
            return bool(value)
        case BaseModel():
            return to_data(dict(value))
        case dict():
            return {str(k): to_data(v) for k, v in value.items()}
        case frozenset() | set():
            return sorted(to_data(v) for v in value)
        case list() | tuple():
            return [to_data(v) for v in value]
    raise TypeError(f"cannot render {type(value).__name__} in a report")


def _flatten(prefix: str, value: Any, out: List[Tuple[str, str]]) -> None:
    if isinstance(value, dict) and value:
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, (dict, list)):
        out.append((prefix, json.dumps(value, ensure_ascii=False)))
    elif isinstance(value, bool):
        out.append((prefix, "true" if value else "false"))
    elif value is None:
        out.append((prefix, "null"))
    else:
        out.append((prefix, str(value)))


def render_text(report: Report) -> str:
    lines: List[Tuple[str, str]] = []
    _flatten("", report.as_data(), lines)
    return "".join(f"{k}: {v}\n" for k, v in sorted(lines))


def render_json(report: Report) -> str:
    return json.dumps(report.as_data(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render(report: Report, output_format: OutputFormat = "text") -> str:
    if output_format == "json":
        return render_json(report)
    return render_text(report)
