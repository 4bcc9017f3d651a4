"""Time parsing/formatting and model parameter validation.

All model arithmetic is done in seconds (plain ``float``); conversion to
minutes or hours happens only when reading user input or printing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

UNIT_SECONDS = {
    "s": 1.0,
    "sec": 1.0,
    "m": 60.0,
    "min": 60.0,
    "h": 3600.0,
    "hr": 3600.0,
}

_DURATION_RE = re.compile(
    r"^\s*(?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?P<unit>[A-Za-z]*)\s*$"
)


class ModelError(ValueError):
    """Base class for user-facing input errors."""


class ParseError(ModelError):
    pass


class ValidationError(ModelError):
    pass


class DomainError(ModelError):
    pass


@dataclass(frozen=True)
class ModelParams:
    """Model times in seconds.

    Args:
        t_f: mean time to failure.
        t_s: exposed checkpoint save time.
        t_r: recovery time after detection.
        t_e: error detection latency.
    """

    t_f: float
    t_s: float
    t_r: float = 0.0
    t_e: float = 0.0

    def scaled(self, k: float) -> ModelParams:
        return ModelParams(self.t_f * k, self.t_s * k, self.t_r * k, self.t_e * k)


def parse_duration(text: str) -> float:
    """Parse ``"1h"``, ``"4min"``, ``"1.41"`` etc. into seconds.

    A bare number is taken as seconds.
    """
    m = _DURATION_RE.match(text)
    if m is None:
        # find the first token that breaks the grammar for a useful message
        tok = text.strip() or repr(text)
        raise ParseError(f"malformed duration {tok!r}")
    num, unit = m.group("num"), m.group("unit")
    scale = UNIT_SECONDS.get(unit.lower() if unit else "s")
    if scale is None:
        raise ParseError(f"unknown unit suffix {unit!r} in {text.strip()!r}")
    value = float(num)
    if not math.isfinite(value):
        raise ParseError(f"non-finite duration {num!r}")
    if value < 0:
        raise ParseError(f"negative duration {num!r}")
    return value * scale


def format_duration(seconds: float, unit: str = "s", digits: int | None = None) -> str:
    """Format a duration with a unit suffix.

    ``digits=None`` emits the shortest text that parses back to the same
    value; pass ``digits=6`` for human-facing output.
    """
    if unit not in UNIT_SECONDS:
        raise ValueError(f"unknown unit {unit!r}")
    value = seconds / UNIT_SECONDS[unit]
    text = repr(value) if digits is None else f"{value:.{digits}g}"
    return f"{text}{unit}"


def to_unit(seconds: float, unit: str) -> float:
    return seconds / UNIT_SECONDS[unit]


def validate_params(p: ModelParams, for_optimization: bool = False) -> ModelParams:
    """Check the parameter invariants, returning ``p`` unchanged.

    Raises:
        ValidationError: listing every violated invariant by field name.
    """
    problems = []
    for name in ("t_f", "t_s", "t_r", "t_e"):
        v = getattr(p, name)
        if not isinstance(v, (int, float)) or not math.isfinite(v):
            problems.append(f"{name} must be a finite number")
    if not problems:
        if p.t_f <= 0:
            problems.append("t_f must be positive")
        if p.t_s < 0:
            problems.append("t_s must be non-negative")
        elif for_optimization and p.t_s == 0:
            problems.append("t_s must be positive for optimization")
        if p.t_r < 0:
            problems.append("t_r must be non-negative")
        if p.t_e < 0:
            problems.append("t_e must be non-negative")
    if problems:
        raise ValidationError("; ".join(problems))
    return p


def check_tc(t_c: float) -> None:
    if not (t_c > 0 and math.isfinite(t_c)):
        raise DomainError(f"t_c must be positive and finite, got {t_c!r}")
