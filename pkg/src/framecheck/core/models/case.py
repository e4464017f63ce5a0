"""Declarative description of one group case.

These models are the validated in-memory form of a case document; the
YAML layout is the same keys (see ``framecheck/cases/*.yaml``).
"""

from __future__ import annotations

from math import gcd
from typing import Annotated, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from framecheck.core.models.character import Parity
from framecheck.core.utils import to_half_units


def _normalize_exponent(value: object) -> int | str:
    """``3``, ``"3"``, ``3.0`` -> ``3``; ``"3/2"``, ``1.5`` -> ``"3/2"``."""
    half = to_half_units(value)  # type: ignore[arg-type]
    return half // 2 if half % 2 == 0 else f"{half}/2"


Weight = Annotated[Union[int, str], BeforeValidator(_normalize_exponent)]


class _Term(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class TrivialTerm(_Term):
    """``n·γ^0``."""

    trivial: int = Field(ge=0)


class MonomialsTerm(_Term):
    """Explicit weight multiset ``{exponent: multiplicity}``."""

    monomials: dict[Weight, int]


class CircleTerm(_Term):
    """The circle weights ``k_1, …, k_ℓ`` of the case as monomials."""

    circle: bool = True


class SpinorSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    x: list[Weight] = Field(min_length=1)
    parity: Parity = Parity.FULL


class SpinorTerm(_Term):
    spinor: SpinorSpec


class ExteriorSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    of: Recipe
    j: int = Field(ge=0)


class ExteriorTerm(_Term):
    exterior: ExteriorSpec


class SumTerm(_Term):
    sum: list[Recipe] = Field(min_length=1)


Recipe = Union[TrivialTerm, MonomialsTerm, SpinorTerm, ExteriorTerm, SumTerm, CircleTerm]

ExteriorSpec.model_rebuild()
ExteriorTerm.model_rebuild()
SumTerm.model_rebuild()


class PrintedRelation(BaseModel):
    """A relation display transcribed from the source, instantiated for every shift ``i``.

    With ``symmetric`` the mirror terms ``t^{-e+i}`` are implied; otherwise
    ``coeffs`` lists every term (duplicated printed terms summed).
    """

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    positive_coeffs: dict[int, int] = Field(alias="coeffs")
    rhs_multiplier: int = Field(alias="rhs")
    modulus: int = Field(default=0, ge=0)
    source_tag: str = Field(alias="source")
    lambda_power: int = Field(default=1, ge=1)
    symmetric: bool = True
    prescaled: bool = False

    def full_coeffs(self) -> dict[int, int]:
        """Every printed term, mirror included."""
        coeffs: dict[int, int] = {}
        for e, c in self.positive_coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
            if self.symmetric:
                coeffs[-e] = coeffs.get(-e, 0) + c
        return {e: c for e, c in coeffs.items() if c}

    @property
    def is_balanced(self) -> bool:
        """The right side equals the coefficient sum of the left side."""
        return sum(self.full_coeffs().values()) == self.rhs_multiplier


class CaseSpec(BaseModel):
    """One group case: circle subgroup, representation recipe and printed relations."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(min_length=1)
    group: str | None = None
    circle_weights: list[Weight] = Field(min_length=1)
    recipe: Recipe
    lambda_powers: list[int] = Field(default_factory=lambda: [1])
    primes: list[int] = Field(default_factory=lambda: [2, 3])
    exponent_divisor: int = Field(default=1, ge=1)
    printed_relations: list[PrintedRelation] = Field(default_factory=list)
    i_max: int = Field(default=16, ge=0)
    window: int = Field(default=64, ge=1)
    identities: dict[int, list[str]] = Field(
        default_factory=dict, description="Intermediate identities to check, per prime"
    )
    notes: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_invariants(self) -> CaseSpec:
        if 1 not in self.lambda_powers:
            raise ValueError("lambda_powers must include 1")
        if any(j < 1 for j in self.lambda_powers):
            raise ValueError(f"lambda_powers must be positive, got {self.lambda_powers}")
        if not self.primes or not set(self.primes) <= {2, 3}:
            raise ValueError(f"primes must be a nonempty subset of {{2, 3}}, got {self.primes}")
        halves = [to_half_units(w) for w in self.circle_weights]
        nonzero = [h for h in halves if h]
        if not nonzero:
            raise ValueError("circle_weights must contain a nonzero weight")
        if any(h % 2 for h in nonzero):
            # half-integer weights: no lattice condition to check
            return self
        step = 0
        for h in nonzero:
            step = gcd(step, h // 2)
        d = self.exponent_divisor
        if d > 1 and step % d == 0:
            step //= d
        if step not in (1, 2) and d == 1:
            raise ValueError(
                f"circle_weights {self.circle_weights} generate {step}Z; "
                "a unit weight (or a spin lift generating 2Z) is required"
            )
        return self

    @property
    def group_name(self) -> str:
        return self.group or self.name
