"""Integer linear relations among the generators ``t^j``."""

import re
from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType


class RelationError(ValueError):
    """A relation cannot be built or transformed as requested."""


class Relation:
    """``Σ c_j·t^j = 0``, exactly (``modulus == 0``) or inside ``modulus·G``."""

    __slots__ = ("_terms", "modulus", "provenance")

    def __init__(self, terms: Mapping[int, int], modulus: int = 0, provenance: str = ""):
        cleaned = {int(e): int(c) for e, c in terms.items() if c}
        if not cleaned:
            raise RelationError(f"Relation '{provenance}' has no nonzero terms")
        if modulus < 0:
            raise RelationError(f"Relation '{provenance}' has negative modulus {modulus}")
        self._terms = MappingProxyType(dict(sorted(cleaned.items())))
        self.modulus = modulus
        self.provenance = provenance

    @classmethod
    def build(
        cls, terms: Mapping[int, int], modulus: int = 0, provenance: str = ""
    ) -> "Relation | None":
        """Like the constructor, but returns ``None`` when every term cancels."""
        if not any(terms.values()):
            return None
        return cls(terms, modulus, provenance)

    @property
    def terms(self) -> Mapping[int, int]:
        return self._terms

    def exponents(self) -> list[int]:
        return list(self._terms)

    def max_abs_exponent(self) -> int:
        return max(abs(e) for e in self._terms)

    def evaluate(self, assign) -> int:
        """``Σ c_j·assign(j)``; used by the annihilation checks."""
        return sum(c * assign(e) for e, c in self._terms.items())

    def key(self) -> tuple:
        """Identity up to sign and provenance."""
        items = tuple(self._terms.items())
        if items[0][1] < 0:
            items = tuple((e, -c) for e, c in items)
        return items, self.modulus

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return dict(self._terms) == dict(other._terms) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((tuple(self._terms.items()), self.modulus))

    def __repr__(self) -> str:
        return f"Relation({self.to_line()!r})"

    def to_line(self) -> str:
        """``provenance: c1*t^e1 + c2*t^e2 = 0 [mod m]``."""
        parts: list[str] = []
        for e, c in self._terms.items():
            term = f"{abs(c)}*t^{e}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"{'-' if c < 0 else '+'} {term}")
        line = f"{self.provenance}: {' '.join(parts)} = 0"
        if self.modulus:
            line += f" mod {self.modulus}"
        return line

    @classmethod
    def from_line(cls, line: str) -> "Relation":
        """Parse the output of :meth:`to_line`."""
        provenance, sep, body = line.rpartition(": ")
        if not sep:
            raise RelationError(f"Missing provenance separator in {line!r}")
        match = _LINE.fullmatch(body.strip())
        if not match:
            raise RelationError(f"Malformed relation line {line!r}")
        lhs = match["lhs"].replace(" ", "")
        if _TERM.sub("", lhs):
            raise RelationError(f"Malformed terms in {line!r}")
        terms: dict[int, int] = {}
        for sign, coeff, exponent in _TERM.findall(lhs):
            value = int(coeff) * (-1 if sign == "-" else 1)
            terms[int(exponent)] = terms.get(int(exponent), 0) + value
        modulus = int(match["mod"]) if match["mod"] else 0
        return cls(terms, modulus, provenance)


_LINE = re.compile(r"(?P<lhs>.+?)\s*=\s*0(?:\s+mod\s+(?P<mod>\d+))?")
_TERM = re.compile(r"([+-]?)(\d+)\*t\^(-?\d+)")


@dataclass(frozen=True)
class GeneratorWindow:
    """Generators ``t^j`` with ``-bound ≤ j ≤ bound``; slack generators are added per matrix."""

    bound: int

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise RelationError(f"Window bound must be positive, got {self.bound}")

    def __contains__(self, exponent: int) -> bool:
        return -self.bound <= exponent <= self.bound

    def admits(self, relation: Relation) -> bool:
        return relation.max_abs_exponent() <= self.bound

    def exponents(self) -> range:
        return range(-self.bound, self.bound + 1)
