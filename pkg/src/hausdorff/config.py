"""Runtime configuration shared by the comparison, set and CLI layers."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import ValidationError


@dataclass(frozen=True)
class Config:
    # interval-arithmetic working precision cap, in bits
    precision_bits: int = 256
    # recursion depth cap for set-interaction decisions
    depth_cap: int = 40
    # comparison tolerance for interval-valued test assertions
    tolerance: Fraction = Fraction(1, 10**9)
    # "human" or "json"
    output: str = "human"

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValidationError("precision_bits must be at least 64")
        if self.depth_cap < 8:
            raise ValidationError("depth_cap must be at least 8")
        if self.tolerance <= 0:
            raise ValidationError("tolerance must be positive")
        if self.output not in ("human", "json"):
            raise ValidationError("output must be 'human' or 'json'")


_current = Config()


def get_config() -> Config:
    return _current


def set_config(cfg: Config) -> Config:
    """Install cfg as the ambient configuration. Returns the previous one."""
    global _current
    previous = _current
    _current = cfg
    return previous


def update_config(**kwargs) -> Config:
    """Replace selected fields of the ambient configuration."""
    return set_config(replace(_current, **kwargs))
