import pytest

from framecheck.core.config import AdamsMode
from framecheck.core.models.case import CaseSpec
from framecheck.core.models.relation import GeneratorWindow
from framecheck.services.decider import verify_certificate_file
from framecheck.services.lattice import RelationMatrix, minimal_multiple
from framecheck.services.verification import (
    Source,
    build_relations,
    default_k_set,
    printed_instances,
    run_case,
)


@pytest.fixture
def toy() -> CaseSpec:
    """A case whose printed display is ``t^{1+i} = 0`` outright."""
    return CaseSpec.model_validate(
        {
            "name": "toy",
            "circle_weights": [1, -1],
            "recipe": {"circle": True},
            "printed_relations": [
                {"source": "(t)", "coeffs": {1: 1}, "rhs": 0, "symmetric": False}
            ],
            "i_max": 2,
            "window": 8,
            "notes": ["toy note"],
        }
    )


# (zero_at_p, m) from the printed displays alone, window 64, spanning Adams relations
PRINTED_HEADLINES = {
    ("Sp", 2): (False, 8),
    ("Sp", 3): (False, 3),
    ("SU", 2): (False, 16),
    ("SU", 3): (False, 3),
    ("SO", 2): (False, 16),
    ("SO", 3): (False, 3),
    ("Spin", 2): (False, 8),
    ("Spin", 3): (False, 9),
    ("F4", 2): (False, 8),
    ("F4", 3): (False, 9),
    ("E6", 2): (False, 8),
    ("E6", 3): (False, 9),
    ("E7", 2): (False, 16),
    ("E7", 3): (True, 1),
    ("E8", 2): (False, 16),
    ("E8-p3", 3): (False, 9),
}

# identity -> order when the step is derived; False when it is not
IDENTITY_ORDERS = {
    ("Sp", 2): {"16*t^1 = 0": True, "t^4 = 4*t^1 + t^0": True, "t^8 = 8*t^1 + t^0": True},
    ("Sp", 3): {"3*t^1 = 0": True, "t^3 = 0": True, "t^9 = 0": True},
    ("Spin", 2): {"8*t^1 = 0": True},
    ("F4", 2): {"8*t^1 = 0": True, "t^4 = 2*t^2": 2, "t^8 = 4*t^2 + t^0": True},
    ("F4", 3): {"3*t^1 = 0": False, "t^3 = 0": False, "t^9 = 0": True},
    ("E6", 2): {"8*t^1 = 0": True, "t^4 = 2*t^2": 2, "t^8 = 4*t^2 + t^0": True},
    ("E6", 3): {"3*t^1 = 0": False, "t^3 = 0": False, "t^9 = 0": True},
    ("E8", 2): {"2*t^1 = 0": 8, "t^16 = 2*t^2 + t^0": False},
    ("E8-p3", 3): {"3*t^1 = 0": False, "t^3 = 0": False},
}


def test_headline_table_covers_every_builtin_prime(repo):
    pairs = {(c.name, p) for c in repo.list_all() for p in c.primes}
    assert pairs == set(PRINTED_HEADLINES)


@pytest.mark.parametrize("name, p", sorted(PRINTED_HEADLINES))
def test_printed_headline_results(case, name, p):
    zero, m = PRINTED_HEADLINES[(name, p)]
    c = case(name)
    report = run_case(c, p, source=Source.PRINTED, adams_mode=AdamsMode.SPANNING)
    assert (report.zero_at_p, report.minimal_multiple) == (zero, m)
    if zero:
        assert report.certificate_verified
    else:
        assert report.certificate_verified is False
        assert f"minimal multiple {m}" in report.failures[-1]
        assert any(n.startswith("Open question") for n in report.notes)
        assert set(c.notes) <= set(report.notes)


def test_e7_at_three_rests_on_the_unbalanced_display(case):
    report = run_case(case("E7"), 3, source=Source.PRINTED, adams_mode=AdamsMode.SPANNING)
    assert report.zero_at_p
    assert report.unbalanced_support == ["su8"]
    assert "t = 0 rests on the unbalanced printed display su8" in report.notes
    e7_su8 = [e for e in report.consistency if e.source == "su8"]
    assert [e.balanced for e in e7_su8] == [False]


def test_only_e7_at_three_vanishes_with_every_relation(repo):
    zeros = []
    for c in repo.list_all():
        for p in c.primes:
            report = run_case(c, p, adams_mode=AdamsMode.SPANNING)
            if report.zero_at_p:
                assert report.certificate_verified
                assert report.minimal_multiple % p != 0
                zeros.append((c.name, p))
            else:
                assert report.minimal_multiple is None or report.minimal_multiple % p == 0
    assert zeros == [("E7", 3)]


@pytest.mark.parametrize("name, p", sorted(IDENTITY_ORDERS))
def test_identity_orders(case, name, p):
    report = run_case(case(name), p, adams_mode=AdamsMode.SPANNING)
    outcomes = {o.identity: o for o in report.identities}
    assert set(outcomes) == set(IDENTITY_ORDERS[(name, p)])
    for identity, expected in IDENTITY_ORDERS[(name, p)].items():
        outcome = outcomes[identity]
        assert outcome.error is None
        if expected is True:
            assert outcome.holds, identity
            assert outcome.minimal_multiple % p != 0
        elif expected is False:
            assert not outcome.holds, identity
        else:
            assert not outcome.holds, identity
            assert outcome.minimal_multiple == expected


def test_listed_mode_never_decides_more_than_spanning(repo):
    for c in repo.list_all():
        for p in c.primes:
            listed = run_case(c, p, source=Source.PRINTED, window=32)
            spanning = run_case(
                c, p, source=Source.PRINTED, window=32, adams_mode=AdamsMode.SPANNING
            )
            if not spanning.zero_at_p:
                assert not listed.zero_at_p, (c.name, p)
            if listed.minimal_multiple is not None:
                assert spanning.minimal_multiple is not None
                assert listed.minimal_multiple % spanning.minimal_multiple == 0


def _order(case, p, window):
    bound = GeneratorWindow(window)
    relations = build_relations(case, p, Source.BOTH, bound, case.i_max)
    return minimal_multiple(1, RelationMatrix(relations.all(), bound))


def test_larger_window_never_weakens_the_result(repo):
    for case in repo.list_all():
        for p in case.primes:
            small, large = _order(case, p, 32), _order(case, p, 64)
            if small is not None:
                assert large is not None
                assert small % large == 0, case.name


def test_tiny_window_drops_relations_and_fails(case):
    sp = case("Sp")
    report = run_case(sp, 2, window=3)
    assert report.dropped_relations > 0
    assert not report.zero_at_p
    assert report.minimal_multiple is None
    assert "minimal multiple ∞" in report.failures[-1]
    assert report.notes == sp.notes
    assert not report.certificate_verified


def test_extra_identities_and_parse_errors(case):
    report = run_case(case("Sp"), 3, window=3, identities=["t^x = 0", "2*t^0 = 0"])
    outcomes = {o.identity: o for o in report.identities}
    assert outcomes["t^x = 0"].error.startswith("Unexpected character")
    assert not outcomes["t^x = 0"].holds
    assert outcomes["2*t^0 = 0"].holds
    assert outcomes["2*t^0 = 0"].minimal_multiple == 1


def test_unproved_prime_is_noted(case):
    report = run_case(case("E8"), 3, window=3)
    assert report.notes[0] == "E8 is proved at p in [2], not p=3"


def test_certificate_is_written_and_reverified(toy, tmp_path):
    path = tmp_path / "certs" / "toy.json"
    report = run_case(toy, 2, source=Source.PRINTED, certificate_path=path)
    assert report.zero_at_p
    assert report.minimal_multiple == 1
    assert report.certificate_verified
    assert report.certificate_path == str(path)
    assert verify_certificate_file(path)
    assert report.failures == []
    assert "toy note" not in report.notes


def test_sources_select_the_relation_families(toy):
    window = GeneratorWindow(8)
    computed = build_relations(toy, 2, Source.COMPUTED, window, 2)
    printed = build_relations(toy, 2, "printed", window, 2)
    assert set(computed.families) == {"restriction", "adams", "base"}
    assert set(printed.families) == {"printed", "adams", "base"}
    both = build_relations(toy, 2, Source.BOTH, window, 2)
    assert len(both.all()) <= sum(len(r) for r in both.families.values())


def test_listed_adams_mode(toy):
    window = GeneratorWindow(8)
    relations = build_relations(toy, 3, Source.BOTH, window, 2, AdamsMode.LISTED)
    provenances = {r.provenance for r in relations.families["adams"]}
    assert any(p.startswith("adams(p=3,k=2,") for p in provenances)
    assert default_k_set(3) == (-1, 2, 4, 5)
    assert default_k_set(5) == (-1, 2, 3, 4)


def test_computed_failures_are_recorded_not_raised():
    case = CaseSpec.model_validate(
        {
            "name": "odd",
            "circle_weights": [1, -1, 2, -2],
            "recipe": {"circle": True},
            "exponent_divisor": 2,
            "window": 8,
            "i_max": 2,
        }
    )
    report = run_case(case, 3, source=Source.COMPUTED)
    assert any(f.startswith("computed λ^1: exponent_divisor") for f in report.failures)
    assert "restriction" not in report.relation_counts


def test_printed_instances_are_rescaled(case):
    e8 = case("E8-p3")
    [pr] = e8.printed_relations
    first = printed_instances(e8, pr, 1)[0]
    assert dict(first.terms) == {-4: 28, -3: 8, -1: 56, 0: -184, 1: 56, 3: 8, 4: 28}
