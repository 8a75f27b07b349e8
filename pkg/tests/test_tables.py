from dataclasses import replace

import pytest

from hyperladder.families import FAMILY_NAMES, default_family
from hyperladder.orthonormal import Term
from hyperladder.tables import DOCUMENTED, FIXTURES, fixtures_for, generic_fixtures, run_fixture, run_fixtures

# Relations whose printed form is wrong although no correction is on record.
# Each was confirmed with an independent sympy/mpmath transcription.
UNDOCUMENTED = {
    "laguerre": {"La 3", "NLa product"},
    "jacobi": {"J 4", "NJ 1", "NJ 2", "NJ 4", "NJ def", "NJ psi0"},
    "kravchuk": {"K 2"},
    "meixner": {"M 2"},
    "hahn": {"Ha 4"},
}


def test_every_family_has_thirteen_table_entries():
    for name in FAMILY_NAMES:
        assert len(fixtures_for(default_family(name))) == 13, name


def test_tags_are_unique():
    keys = [(fx.family, fx.tag) for fx in FIXTURES]
    assert len(keys) == len(set(keys))


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_table_fixtures_hold_as_printed_or_corrected(name):
    F = default_family(name)
    outcomes = run_fixtures(F)
    assert all(o.passed for o in outcomes)
    corrected = {o.fixture.tag for o in outcomes if o.corrected}
    documented = {tag for tag in corrected if tag in DOCUMENTED}
    assert corrected - documented == UNDOCUMENTED.get(name, set())


def test_documented_family_corrections():
    kinds = {}
    for name in ("kravchuk", "chebyshev", "jacobi", "hahn"):
        for o in run_fixtures(default_family(name)):
            kinds[o.fixture.tag] = o.status
    assert kinds["K 4"] == "corrected"
    assert kinds["NT 1"] == "corrected"
    assert kinds["NT def"] == "corrected"
    assert kinds["NJ 3"] == "corrected"
    # the displayed NHa 3 has no stray term and verifies as printed
    assert kinds["NHa 3"] == "as-printed"


def test_generic_relations():
    status = {}
    for fx in generic_fixtures():
        outcomes = [run_fixture(default_family(n), fx) for n in FAMILY_NAMES if default_family(n).kind == fx.kind]
        assert all(o.passed for o in outcomes), fx.tag
        status[fx.tag] = "corrected" if any(o.corrected for o in outcomes) else "as-printed"
    corrected = {tag for tag, s in status.items() if s == "corrected"}
    assert corrected == {"C4", "D2", "D3", "D4", "H(s,n)", "NC2"}
    assert "NC2" not in DOCUMENTED


def _mutated(fx, factor):
    def build(F, n):
        rel = fx.printed(F, n)
        terms = rel.terms if hasattr(rel, "terms") else rel
        head, *rest = terms
        return [Term(head.coef * factor, head.op, head.shift)] + rest
    return replace(fx, printed=build, corrected=None)


@pytest.mark.parametrize("tag", ["He 2", "NHe 2", "K 1", "NK 2", "NHa 2", "NT 2"])
def test_mutated_fixture_fails(tag):
    fx = next(f for f in FIXTURES if f.tag == tag)
    F = default_family(fx.family)
    assert run_fixture(F, fx).status == "as-printed"
    assert run_fixture(F, _mutated(fx, 3)).status == "fail"


def test_numeric_fixture_detects_wrong_normalization():
    fx = next(f for f in FIXTURES if f.tag == "NLe def")
    F = default_family("legendre")
    wrong = replace(fx, printed=lambda F, n: (lambda at: 1.01 * fx.printed(F, n)(at)))
    assert run_fixture(F, wrong).status == "fail"
