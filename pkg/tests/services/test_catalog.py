import pytest

from framecheck.core.models.case import CaseSpec, PrintedRelation
from framecheck.core.models.character import Character, CharacterError, conjugate, dim
from framecheck.core.schemas import ConsistencyStatus
from framecheck.services.catalog import (
    compare_printed,
    consistency_check,
    resolve_character,
    resolve_recipe,
)

R, D, U = ConsistencyStatus.REPRODUCED, ConsistencyStatus.DISCREPANT, ConsistencyStatus.UNCHECKED

EXPECTED_STATUS = {
    "Sp": [R, R],
    "SU": [R],
    "SO": [R],
    "Spin": [R, D],
    "F4": [R, D],
    "E6": [R, D],
    "E7": [D, U],
    "E8": [R],
    "E8-p3": [D],
}


def symmetric(**half) -> Character:
    """``symmetric(e1=4)`` is ``4γ + 4γ^{-1}``; ``e0`` is the constant term."""
    exps = {}
    for key, coeff in half.items():
        e = int(key[1:])
        exps[e] = coeff
        exps[-e] = coeff
    return Character.from_exponents(exps)


def test_f4_and_e6_characters(case):
    f4 = resolve_character(case("F4"), 1)
    assert f4 == symmetric(e0=2, e1=4, e2=3, e3=3, e4=1, e5=1)
    assert dim(f4) == 26
    e6 = resolve_character(case("E6"), 1)
    assert e6 == f4 + Character.trivial(1)


def test_e7_character_is_not_self_conjugate(case):
    e7 = resolve_character(case("E7"), 1)
    assert e7 == Character.from_exponents({1: 21, -3: 7, 2: 35, -2: 35})
    assert dim(e7) == 98
    assert conjugate(e7) != e7


def test_e8_characters(case):
    for name in ("E8", "E8-p3"):
        c = resolve_character(case(name), 1)
        assert dim(c) == 248
        assert c.is_integral()


def test_sp_lambda_two(case):
    c = resolve_character(case("Sp"), 2)
    assert dim(c) == 28
    assert c.coeffs[0] == 4


def test_builtin_characters_are_self_conjugate_except_e7(repo):
    for case in repo.list_all():
        for j in case.lambda_powers:
            c = resolve_character(case, j)
            assert c.is_nonnegative()
            assert (conjugate(c) == c) is (case.name != "E7")


def test_unlisted_lambda_power_is_rejected(case):
    with pytest.raises(ValueError, match="not among"):
        resolve_character(case("E7"), 2)


def test_consistency_classification(repo):
    for case in repo.list_all():
        statuses = [entry.status for entry in consistency_check(case)]
        assert statuses == EXPECTED_STATUS[case.name], case.name


def test_unbalanced_display_reports_both_sides(case):
    entry = consistency_check(case("E7"))[0]
    assert not entry.balanced
    assert entry.rhs_printed == 52
    assert entry.rhs_computed == 98
    assert any(d.exponent == 0 and d.printed == 52 for d in entry.diff)


def test_relabelled_display_points_at_the_moved_term(case):
    [entry] = consistency_check(case("E8-p3"))
    moved = {d.exponent: (d.printed, d.computed) for d in entry.diff}
    assert moved[2] == (0, 28)
    assert moved[4] == (28, 0)


def test_congruence_displays_are_unchecked(case):
    entry = consistency_check(case("E7"))[1]
    assert entry.status is U
    assert entry.balanced
    assert "modulo 8" in entry.note


def make_case(**overrides) -> CaseSpec:
    data = {"name": "t", "circle_weights": [1, -1, 2, -2], "recipe": {"circle": True}}
    data.update(overrides)
    return CaseSpec.model_validate(data)


def test_exterior_of_explicit_monomials():
    case = make_case(recipe={"exterior": {"of": {"monomials": {1: 7, -7: 1}}, "j": 2}})
    assert resolve_recipe(case.recipe, case.circle_weights) == Character.from_exponents(
        {2: 21, -6: 7}
    )


def test_divisor_must_divide_every_weight():
    case = make_case(exponent_divisor=2)
    with pytest.raises(CharacterError, match="exponent_divisor"):
        resolve_character(case, 1)
    pr = PrintedRelation(coeffs={1: 1, 2: 1}, rhs=4, source="(x)")
    entry = compare_printed(case, pr)
    assert entry.status is D
    assert entry.note.startswith("exponent_divisor")


def test_recipe_errors_carry_the_path():
    case = make_case(
        recipe={"sum": [{"trivial": 1}, {"exterior": {"of": {"monomials": {1: -1}}, "j": 2}}]}
    )
    with pytest.raises(CharacterError, match=r"recipe\.sum\[1\]\.exterior"):
        resolve_recipe(case.recipe, case.circle_weights)


def test_negative_recipe_is_not_a_character():
    case = make_case(recipe={"monomials": {1: -1}})
    with pytest.raises(CharacterError, match="non-character"):
        resolve_character(case, 1)


def test_e6_carries_the_f4_displays(case):
    f4, e6 = case("F4"), case("E6")
    assert e6.printed_relations == f4.printed_relations
    assert [pr.source_tag for pr in e6.printed_relations] == ["spin9", "spin9-λ2"]
