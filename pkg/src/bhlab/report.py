"""Typed result objects for verification checks.

Checks never assert; they return a CheckReport carrying the verdict, the
modulus (or tolerance) at which the comparison ran, and enough detail to
see what was compared.  Boolean short-circuiting is left to callers and
the CLI exit code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    check: str
    params: dict
    passed: bool
    modulus: str
    detail: dict = field(default_factory=dict)
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "params": _jsonable(self.params),
            "passed": self.passed,
            "modulus": self.modulus,
            "detail": _jsonable(self.detail),
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, float):
        return f"{obj:.12e}"
    if isinstance(obj, complex):
        return f"{obj.real:.12e}{obj.imag:+.12e}j"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


def fraction_congruent(x: Fraction, y: Fraction, p: int, e: int) -> bool:
    """x = y mod p^e in Z_p; requires both to be p-integral."""
    d = Fraction(x) - Fraction(y)
    if d.denominator % p == 0:
        raise ValueError(f"difference {d} is not p-integral")
    return d.numerator % p ** e == 0
