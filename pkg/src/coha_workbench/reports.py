"""Check records and the JSON report envelope shared by all suites."""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1


def jsonable(x):
    """Convert nested values (Fractions, tuples, numpy scalars) to JSON-ready data."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        try:
            return x.item()
        except (TypeError, ValueError):
            pass
    return x


@dataclass
class CheckRecord:
    name: str
    passed: bool
    inputs: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[Any] = None
    detail: Optional[Any] = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.passed else "fail",
               "inputs": jsonable(self.inputs)}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.detail is not None:
            out["detail"] = jsonable(self.detail)
        return out


@dataclass
class CheckReport:
    suite: str
    records: List[CheckRecord] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def add(self, name, passed, inputs=None, witness=None, detail=None) -> CheckRecord:
        rec = CheckRecord(name, bool(passed), dict(inputs or {}), witness if not passed else None, detail)
        self.records.append(rec)
        return rec

    def extend(self, other: "CheckReport"):
        self.records.extend(other.records)
        self.data.update(other.data)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [r.to_dict() for r in self.records], "data": jsonable(self.data)}

    def summary(self) -> str:
        n = len(self.records)
        bad = len(self.failures())
        return f"{self.suite}: {n - bad}/{n} checks passed"


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)
