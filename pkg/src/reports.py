import hashlib
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Tuple

from src.graph_core import Graph
from src.structure import HypothesisReport

SCHEMA_VERSION = 1


class ReportError(Exception):
    """Raised when a JSON report cannot be read back"""
    pass


def digest_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def input_digest(g: Graph) -> str:
    """sha256 of the canonical edge list"""
    return digest_text(g.to_edge_list())


@dataclass(frozen=True)
class ExactSummary:
    gamma_r: int
    differential: int
    witness: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"gamma_r": self.gamma_r, "differential": self.differential, "witness": list(self.witness)}

    @classmethod
    def from_dict(cls, data: dict) -> "ExactSummary":
        return cls(data["gamma_r"], data["differential"], tuple(data["witness"]))


@dataclass(frozen=True)
class RunReport:
    input_digest: str
    command: str
    hypothesis: Optional[HypothesisReport] = None
    exact: Optional[ExactSummary] = None
    certificate: Optional[Dict[str, Any]] = None
    timing: Dict[str, float] = field(default_factory=dict)
    counterexample: Optional[str] = None
    components: Tuple["RunReport", ...] = ()

    @property
    def bound_ok(self) -> bool:
        """False as soon as this report or a component report holds a violated bound"""
        if self.certificate is not None and not self.certificate["checks"]["bound_ok"]:
            return False
        if self.counterexample is not None:
            return False
        return all(c.bound_ok for c in self.components)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "input_digest": self.input_digest,
            "command": self.command,
            "hypothesis": self.hypothesis.to_dict() if self.hypothesis else None,
            "exact": self.exact.to_dict() if self.exact else None,
            "certificate": self.certificate,
            "timing": dict(self.timing),
            "counterexample": self.counterexample,
            "components": [c.to_dict() for c in self.components],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        if data.get("schema") != SCHEMA_VERSION:
            raise ReportError(f"unsupported report schema {data.get('schema')!r}")
        return cls(
            input_digest=data["input_digest"],
            command=data["command"],
            hypothesis=HypothesisReport.from_dict(data["hypothesis"]) if data.get("hypothesis") else None,
            exact=ExactSummary.from_dict(data["exact"]) if data.get("exact") else None,
            certificate=data.get("certificate"),
            timing=dict(data.get("timing", {})),
            counterexample=data.get("counterexample"),
            components=tuple(cls.from_dict(c) for c in data.get("components", [])),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        try:
            return cls.from_dict(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ReportError(f"not a RomanPy report: {e}") from e


class Timer:
    """Per-phase wall-clock seconds for the report's ``timing`` field"""

    def __init__(self):
        self.phases: Dict[str, float] = {}

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.phases[name] = round(time.perf_counter() - start, 6)
