"""Characters of circle-subgroup restrictions.

A character is an integer Laurent polynomial in the circle generator
``γ``. Exponents are stored in half-units (the key ``2e`` holds the
coefficient of ``γ^e``) so spinor weights such as ``(2+2+2-4)/2`` stay
exact.
"""

from collections.abc import Iterable, Mapping
from enum import Enum
from fractions import Fraction
from types import MappingProxyType

from framecheck.core.utils import Exponent, format_exponent, from_half_units, to_half_units


class CharacterError(ValueError):
    """A value is not a valid character for the requested operation."""


class Parity(str, Enum):
    """Which sign patterns a spinor character keeps."""

    FULL = "full"
    PLUS = "plus"
    MINUS = "minus"


class Character:
    """Immutable integer Laurent polynomial in ``γ`` with half-unit exponents."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        cleaned = {int(h): int(c) for h, c in (coeffs or {}).items() if c}
        self._coeffs = MappingProxyType(dict(sorted(cleaned.items())))

    @classmethod
    def from_exponents(cls, terms: Mapping[Exponent, int]) -> "Character":
        """Build from ``{exponent: coefficient}`` with exact exponents (``3``, ``"3/2"``)."""
        coeffs: dict[int, int] = {}
        for exponent, coeff in terms.items():
            half = to_half_units(exponent)
            coeffs[half] = coeffs.get(half, 0) + int(coeff)
        return cls(coeffs)

    @classmethod
    def from_weights(cls, weights: Iterable[Exponent]) -> "Character":
        """Sum of monomials ``γ^w`` over a weight multiset."""
        coeffs: dict[int, int] = {}
        for w in weights:
            half = to_half_units(w)
            coeffs[half] = coeffs.get(half, 0) + 1
        return cls(coeffs)

    @classmethod
    def monomial(cls, exponent: Exponent, coeff: int = 1) -> "Character":
        return cls({to_half_units(exponent): coeff})

    @classmethod
    def trivial(cls, n: int) -> "Character":
        """``n·γ^0``."""
        return cls({0: n})

    @property
    def coeffs(self) -> Mapping[int, int]:
        """Read-only ``{half-unit exponent: coefficient}``, ascending."""
        return self._coeffs

    def coefficient(self, exponent: Exponent) -> int:
        return self._coeffs.get(to_half_units(exponent), 0)

    def exponents(self) -> dict[int | Fraction, int]:
        """``{exact exponent: coefficient}`` with exponents as int or Fraction."""
        return {from_half_units(h): c for h, c in self._coeffs.items()}

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._coeffs.values())

    def is_integral(self) -> bool:
        """True when every exponent is a whole number."""
        return all(h % 2 == 0 for h in self._coeffs)

    def is_self_conjugate(self) -> bool:
        return self == conjugate(self)

    def __add__(self, other: "Character") -> "Character":
        return add(self, other)

    def __mul__(self, other: "Character") -> "Character":
        return mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"Character({self})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for half, coeff in self._coeffs.items():
            sign = "-" if coeff < 0 else "+"
            term = f"{abs(coeff)}γ^{format_exponent(half)}"
            if not parts:
                parts.append(term if coeff > 0 else f"-{term}")
            else:
                parts.append(f"{sign} {term}")
        return " ".join(parts)


def add(a: Character, b: Character) -> Character:
    """Coefficientwise sum."""
    coeffs = dict(a.coeffs)
    for half, coeff in b.coeffs.items():
        coeffs[half] = coeffs.get(half, 0) + coeff
    return Character(coeffs)


def mul(a: Character, b: Character) -> Character:
    """Laurent-polynomial product (exponent-wise convolution)."""
    coeffs: dict[int, int] = {}
    for ha, ca in a.coeffs.items():
        for hb, cb in b.coeffs.items():
            coeffs[ha + hb] = coeffs.get(ha + hb, 0) + ca * cb
    return Character(coeffs)


def dim(c: Character) -> int:
    """Sum of coefficients; the representation dimension."""
    return sum(c.coeffs.values())


def conjugate(c: Character) -> Character:
    """``γ ↦ γ^{-1}``."""
    return Character({-half: coeff for half, coeff in c.coeffs.items()})


def scale_exponents(c: Character, divisor: int) -> Character:
    """Divide every exponent by ``divisor``.

    Raises ``CharacterError`` naming the first exponent that is not divisible.
    """
    if divisor < 1:
        raise CharacterError(f"Exponent divisor must be positive, got {divisor}")
    if divisor == 1:
        return c
    coeffs: dict[int, int] = {}
    for half, coeff in c.coeffs.items():
        if half % (2 * divisor):
            raise CharacterError(
                f"Exponent divisor {divisor} does not divide weight "
                f"{format_exponent(half)} (coefficient {coeff})"
            )
        coeffs[half // divisor] = coeff
    return Character(coeffs)
