import pytest

from framecheck.core.models.relation import GeneratorWindow, Relation, RelationError


def test_relation_drops_zero_terms():
    r = Relation({1: 2, 3: 0, -1: -5}, provenance="x")
    assert dict(r.terms) == {-1: -5, 1: 2}
    assert r.max_abs_exponent() == 1


@pytest.mark.parametrize(
    "terms, modulus",
    [({}, 0), ({2: 0}, 0), ({1: 1}, -8)],
)
def test_invalid_relations_are_rejected(terms, modulus):
    with pytest.raises(RelationError):
        Relation(terms, modulus)


def test_build_returns_none_when_everything_cancels():
    assert Relation.build({0: 0, 4: 0}) is None
    assert Relation.build({0: 2}) == Relation({0: 2})


def test_key_ignores_sign_and_provenance():
    a = Relation({5: 1, -5: 1}, provenance="adams(p=3,k=-1,j=5)")
    b = Relation({-5: -1, 5: -1}, provenance="adams(p=3,k=-1,j=-5)")
    assert a.key() == b.key()
    assert a != b
    assert Relation({1: 1}, modulus=8).key() != Relation({1: 1}).key()


def test_line_format():
    r = Relation({2: 1, 7: 1, -1: -8, 0: 1}, provenance="vector_1")
    assert r.to_line() == "vector_1: -8*t^-1 + 1*t^0 + 1*t^2 + 1*t^7 = 0"
    modular = Relation({1: 9, -1: 9}, modulus=8, provenance="su8-mod8_0")
    assert modular.to_line() == "su8-mod8_0: 9*t^-1 + 9*t^1 = 0 mod 8"


def test_line_parsing_restores_the_relation():
    line = "adams(p=2,k=3,j=1): 1*t^1 - 3*t^3 = 0"
    r = Relation.from_line(line)
    assert dict(r.terms) == {1: 1, 3: -3}
    assert r.provenance == "adams(p=2,k=3,j=1)"
    modular = Relation.from_line("E7:su8-mod8_3: 9*t^2 + 1*t^6 = 0 mod 8")
    assert modular.modulus == 8
    assert modular.provenance == "E7:su8-mod8_3"


@pytest.mark.parametrize("line", ["1*t^1 = 0", "x: t^1 = 0", "x: 1*t^1 = 1"])
def test_malformed_lines_are_rejected(line):
    with pytest.raises(RelationError):
        Relation.from_line(line)


def test_evaluate_substitutes_generators():
    r = Relation({2: 1, 7: 1, 0: 1, -1: 1, -2: 1, -5: 1, 3: 1, 4: 1, 1: -8})
    assert r.evaluate(lambda j: 1) == 0
    assert r.evaluate(lambda j: j - 1) == 0


def test_generator_window():
    window = GeneratorWindow(3)
    assert 3 in window and -3 in window and 4 not in window
    assert window.admits(Relation({3: 1, -3: 1}))
    assert not window.admits(Relation({4: 1}))
    assert list(window.exponents()) == [-3, -2, -1, 0, 1, 2, 3]
    with pytest.raises(RelationError):
        GeneratorWindow(0)
