"""Case resolution: recipes to characters, and printed displays against them."""

import logging
from math import gcd

from framecheck.core.models.case import (
    CaseSpec,
    CircleTerm,
    ExteriorTerm,
    MonomialsTerm,
    PrintedRelation,
    Recipe,
    SpinorTerm,
    SumTerm,
    TrivialTerm,
)
from framecheck.core.models.character import Character, CharacterError, scale_exponents
from framecheck.core.schemas import CoefficientDiff, ConsistencyEntry, ConsistencyStatus
from framecheck.services.characters import exterior_power, spinor_character

logger = logging.getLogger(__name__)

# smallest admissible rank per classical family
CLASSICAL_MIN_RANK = {"Sp": 4, "SU": 8, "SO": 8, "Spin": 8}


def resolve_recipe(recipe: Recipe, circle_weights: list, path: str = "recipe") -> Character:
    """Evaluate a recipe to a character; errors are prefixed with the field path."""
    try:
        if isinstance(recipe, TrivialTerm):
            return Character.trivial(recipe.trivial)
        if isinstance(recipe, MonomialsTerm):
            return Character.from_exponents(recipe.monomials)
        if isinstance(recipe, CircleTerm):
            return Character.from_weights(circle_weights)
        if isinstance(recipe, SpinorTerm):
            return spinor_character(recipe.spinor.x, recipe.spinor.parity)
    except (CharacterError, ValueError) as e:
        raise CharacterError(f"{path}: {e}") from e

    if isinstance(recipe, ExteriorTerm):
        inner = resolve_recipe(recipe.exterior.of, circle_weights, f"{path}.exterior.of")
        try:
            return exterior_power(inner, recipe.exterior.j)
        except CharacterError as e:
            raise CharacterError(f"{path}.exterior: {e}") from e
    if isinstance(recipe, SumTerm):
        total = Character()
        for n, term in enumerate(recipe.sum):
            total = total + resolve_recipe(term, circle_weights, f"{path}.sum[{n}]")
        return total
    raise CharacterError(f"{path}: unknown recipe term {recipe!r}")


def _resolve(case: CaseSpec, lambda_power: int) -> Character:
    base = resolve_recipe(case.recipe, case.circle_weights)
    if not base.is_nonnegative():
        raise CharacterError(f"recipe: resolves to a non-character {base}")
    if lambda_power > 1:
        base = exterior_power(base, lambda_power)
    try:
        return scale_exponents(base, case.exponent_divisor)
    except CharacterError as e:
        raise CharacterError(f"exponent_divisor: {e}") from e


def resolve_character(case: CaseSpec, lambda_power: int) -> Character:
    """``λ^j`` of the case's restriction character, exponents divided by the divisor."""
    if lambda_power not in case.lambda_powers:
        raise ValueError(
            f"λ^{lambda_power} is not among {case.name} lambda_powers {case.lambda_powers}"
        )
    return _resolve(case, lambda_power)


def check_exponent_divisor(case: CaseSpec) -> None:
    """Resolve ``λ^1`` and require the divisor to divide every weight.

    The divided weights must still generate ``Z`` (or ``2Z`` for a spin lift).
    """
    if case.exponent_divisor == 1:
        return
    divided = _resolve(case, 1)
    step = 0
    for half in divided.coeffs:
        step = gcd(step, half)
    # half units: Z is 2, 2Z is 4
    if step not in (2, 4):
        generated = "no nonzero weight" if step == 0 else f"weights generating {step // 2}Z"
        raise CharacterError(
            f"exponent_divisor: dividing by {case.exponent_divisor} leaves {generated}; "
            "a unit weight (or a spin lift generating 2Z) is required"
        )


def _printed_in_case_units(pr: PrintedRelation, divisor: int) -> dict[int, int]:
    coeffs = pr.full_coeffs()
    if pr.prescaled or divisor == 1:
        return coeffs
    bad = [e for e in coeffs if e % divisor]
    if bad:
        raise CharacterError(f"exponent_divisor {divisor} does not divide printed exponents {bad}")
    return {e // divisor: c for e, c in coeffs.items()}


def compare_printed(case: CaseSpec, pr: PrintedRelation) -> ConsistencyEntry:
    """Classify one printed display against the computed character."""
    entry = {
        "source": pr.source_tag,
        "lambda_power": pr.lambda_power,
        "rhs_printed": pr.rhs_multiplier,
        "balanced": pr.modulus != 0 or pr.is_balanced,
    }
    if pr.modulus:
        return ConsistencyEntry(
            **entry,
            status=ConsistencyStatus.UNCHECKED,
            note=f"congruence modulo {pr.modulus}; no exact counterpart",
        )
    try:
        computed = _resolve(case, pr.lambda_power)
        printed = _printed_in_case_units(pr, case.exponent_divisor)
    except CharacterError as e:
        return ConsistencyEntry(**entry, status=ConsistencyStatus.DISCREPANT, note=str(e))
    if not computed.is_integral():
        return ConsistencyEntry(
            **entry,
            status=ConsistencyStatus.DISCREPANT,
            note="computed character has half-integer exponents",
        )

    nonzero = {h // 2: c for h, c in computed.coeffs.items() if h}
    rhs_computed = sum(nonzero.values())
    diff = [
        CoefficientDiff(exponent=e, printed=printed.get(e, 0), computed=nonzero.get(e, 0))
        for e in sorted(set(printed) | set(nonzero))
        if printed.get(e, 0) != nonzero.get(e, 0)
    ]
    if rhs_computed != pr.rhs_multiplier:
        diff.append(CoefficientDiff(exponent=0, printed=pr.rhs_multiplier, computed=rhs_computed))
    status = ConsistencyStatus.DISCREPANT if diff else ConsistencyStatus.REPRODUCED
    if diff:
        logger.warning(
            f"{case.name} {pr.source_tag}: printed display differs in {len(diff)} places"
        )
    return ConsistencyEntry(**entry, status=status, diff=diff, rhs_computed=rhs_computed)


def consistency_check(case: CaseSpec) -> list[ConsistencyEntry]:
    """Compare every printed display of a case; never raises.

    A rhs mismatch is listed in ``diff`` under exponent 0.
    """
    return [compare_printed(case, pr) for pr in case.printed_relations]


def classical_case(template: CaseSpec, n: int) -> CaseSpec:
    """A classical case (Sp/SU/SO/Spin) at rank ``n``: the circle weights padded with zeros."""
    family = template.group_name
    if family not in CLASSICAL_MIN_RANK:
        raise ValueError(f"{family} is not a classical family {sorted(CLASSICAL_MIN_RANK)}")
    min_rank = CLASSICAL_MIN_RANK[family]
    if n < min_rank:
        raise ValueError(f"{family}({n}) is below the admissible rank {min_rank}")
    slots = 2 * n if family == "Sp" else n
    nonzero = [w for w in template.circle_weights if w != 0]
    if slots < len(nonzero):
        raise ValueError(f"{family}({n}) has too few slots for {len(nonzero)} weights")
    return template.model_copy(
        update={
            "name": f"{template.name}({n})",
            "group": family,
            "circle_weights": nonzero + [0] * (slots - len(nonzero)),
        }
    )
