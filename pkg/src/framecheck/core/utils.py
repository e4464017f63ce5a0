"""Shared utility helpers used across services."""

from fractions import Fraction
from pathlib import Path

import yaml

Exponent = int | Fraction | str


def load_yaml(path: Path) -> dict | list:
    """Load a YAML file and return its contents.

    Returns an empty dict if the file does not exist or is empty.
    """
    if not path.exists():
        return {}
    with open(path) as f:
        data = yaml.safe_load(f)
    return data if data else {}


def dump_yaml(data: dict | list) -> str:
    """Serialize plain data to YAML, keeping key order as given."""
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)


def to_half_units(value: Exponent) -> int:
    """Convert an exact exponent (``3``, ``Fraction(3, 2)`` or ``"3/2"``) to half-units.

    Raises ``ValueError`` when the exponent is not a multiple of 1/2.
    """
    if isinstance(value, bool):
        raise ValueError(f"Not an exponent: {value!r}")
    if isinstance(value, str):
        value = Fraction(value.strip())
    elif isinstance(value, float):
        if not value.is_integer() and not (2 * value).is_integer():
            raise ValueError(f"Exponent {value} is not a multiple of 1/2")
        value = Fraction(value)
    doubled = Fraction(value) * 2
    if doubled.denominator != 1:
        raise ValueError(f"Exponent {value} is not a multiple of 1/2")
    return int(doubled)


def from_half_units(half: int) -> int | Fraction:
    """Exact exponent for a half-unit value: an int when whole, else a Fraction."""
    if half % 2 == 0:
        return half // 2
    return Fraction(half, 2)


def format_exponent(half: int) -> str:
    """Render a half-unit exponent as ``3`` or ``3/2``."""
    return str(from_half_units(half))
