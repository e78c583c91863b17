"""Certificates: an operation's input, its output and the predicates it passed.

Lifts put an :class:`IntMatrix` in ``output``; the arithmetic helpers use
plain JSON-ready values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..errors import InternalCheckFailed
from ..matrix import IntMatrix


@dataclass(frozen=True)
class LiftCertificate:
    operation: str
    input: Any
    output: Any
    lambdas: tuple[int, ...] = ()
    checks: tuple[tuple[str, bool], ...] = field(default=())

    def __post_init__(self):
        failed = [name for name, ok in self.checks if not ok]
        if failed:
            raise InternalCheckFailed(f"{self.operation}: checks failed: {', '.join(failed)}")

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_json(self) -> dict:
        return {
            "operation": self.operation,
            "input": self.input,
            "output": self.output.to_json() if isinstance(self.output, IntMatrix) else self.output,
            "lambdas": [str(x) for x in self.lambdas],
            "checks": [{"name": n, "pass": ok} for n, ok in self.checks],
        }
