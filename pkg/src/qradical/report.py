"""Report documents emitted by the command line tool.

Every number is serialized as its canonical exact string; the JSON never
contains floats.  ``report.schema.json`` next to this module is the
contract checked by the test suite.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from .field import GaussianRational, format_gaussian
from .poly import DensePoly, FactoredPoly, format_factored, format_poly

SCHEMA_VERSION = "1"

# verdict -> exit status
EXIT_CODES = {
    "ok": 0,
    "holds": 0,
    "consistent": 0,
    "incomplete": 0,
    "violated": 1,
    "not-applicable": 1,
    "counterexample": 1,
}


def exact(value: Any) -> Any:
    """Recursively turn exact numbers and polynomials into canonical strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_gaussian(GaussianRational(value))
    if isinstance(value, GaussianRational):
        return format_gaussian(value)
    if isinstance(value, DensePoly):
        return format_poly(value)
    if isinstance(value, FactoredPoly):
        return format_factored(value)
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass
class ReportDocument:
    command: dict
    q: str | None
    verdict: str
    premises: list[dict] = field(default_factory=list)
    quantities: dict[str, Any] = field(default_factory=dict)
    payload: dict | None = None
    schema_version: str = SCHEMA_VERSION

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["premises"] = [exact(p) for p in self.premises]
        d["quantities"] = exact(self.quantities)
        d["payload"] = exact(self.payload) if self.payload is not None else None
        d["command"] = exact(self.command)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls(**json.loads(text))

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"command: {d['command']['name']}"]
        if d["q"] is not None:
            lines.append(f"q: {d['q']}")
        for p in d["premises"]:
            mark = "ok" if p["holds"] else "FAILED"
            extra = f"  ({p['witness']})" if p.get("witness") else ""
            lines.append(f"premise {p['name']}: {mark}{extra}")
        for k, v in d["quantities"].items():
            lines.append(f"{k}: {_text_value(v)}")
        if d["payload"]:
            for k, v in d["payload"].items():
                lines.append(f"{k}: {_text_value(v)}")
        lines.append(f"verdict: {d['verdict']}")
        return "\n".join(lines)


def _text_value(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(x)}" for k, x in v.items()) + "}"
    return str(v)


def premise_dicts(premises) -> list[dict]:
    return [{"name": p.name, "holds": p.holds, "witness": p.witness} for p in premises]


def load_schema() -> dict:
    return json.loads(resources.files("qradical").joinpath("report.schema.json").read_text())
