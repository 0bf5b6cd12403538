"""
Tests for core/omp/omp.py -- finite orthomodular posets, their states and
P(q|p) by linear programming.

Boolean algebras are checked exhaustively: P(q|p) exists exactly when p <= q
or p is orthogonal to q. The Greechie chain of three triangles shows a
transition probability that fails to exist because a far block is left free.
The H_2(R) sublogic fixture (two 2 x 2 real projections at angle pi/4 and
their complements, with five density states) must reproduce the Jordan-side
value 1/2 with its declared states, and lose it on the full state polytope.
The hexagon is the textbook orthocomplemented lattice that is not
orthomodular.
"""

import json
import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "core"))
for _d in ("algebra", "logic", "transition", "omp"):
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "core", _d))

from example_gen import two_by_two_pair  # noqa: E402
from omp import (  # noqa: E402
    INFEASIBLE,
    NOT_CONSTANT,
    InvalidOMP,
    OMPMorphism,
    boolean_algebra,
    check_morphism,
    density_states,
    from_blocks,
    from_json,
    from_projections,
    from_raw,
    is_state,
    is_strong,
    strong_report,
    transition_probability_lp,
    validate,
)
from projection_logic import Projection, orthocomplement, rank_one_projection  # noqa: E402
from transition import transition_probability  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "core", "data", "fixtures")
HALF = Fraction(1, 2)


def _fixture(name):
    with open(os.path.join(FIXTURES, f"{name}.json"), encoding="utf-8") as f:
        return json.load(f)


HEXAGON = {
    "elements": ["0", "a", "b", "b'", "a'", "1"],
    "order": [["0", "a"], ["a", "b"], ["b", "1"], ["0", "b'"], ["b'", "a'"], ["a'", "1"]],
    "orthocomplement": {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"},
}


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def test_boolean_algebra_elements():
    logic = boolean_algebra(["a", "b", "c"])
    assert len(logic.elements) == 8
    assert logic.elements[0] == "0" and logic.elements[-1] == "1"
    assert logic.complement["a"] == "b+c"
    assert logic.le("a", "a+b") and not logic.le("a+b", "a")
    assert logic.join("a", "b") == "a+b"
    assert logic.join("a", "a+b") is None


def test_greechie_chain_identifies_shared_elements():
    logic = from_json(_fixture("greechie_chain"))
    # 0, 1, six per block, minus c, c', e, e' counted twice
    assert len(logic.elements) == 16
    assert logic.complement["c"] == "a+b"
    assert logic.complement["a+b"] == "c"
    assert logic.le("d", "a+b")


def test_raw_logic_fills_joins_from_the_order():
    doc = _fixture("h2r_sublogic")
    doc.pop("joins")
    logic = from_raw(doc)
    assert logic.zero == "0" and logic.one == "1"
    assert logic.join("a", "a'") == "1"
    assert logic.join("a'", "a") == "1"
    assert logic.join("a", "0") == "a"


def test_from_blocks_rejects_bad_input():
    with pytest.raises(InvalidOMP):
        from_blocks([])
    with pytest.raises(InvalidOMP):
        from_blocks([["a", "a", "b"]])


def test_blocks_sharing_two_atoms_rejected():
    with pytest.raises(InvalidOMP):
        from_blocks([["a", "b", "c"], ["a", "b", "d"]])
    with pytest.raises(InvalidOMP):
        from_blocks([["a", "b"], ["a", "b"]])
    assert len(from_blocks([["a", "b", "c"], ["c", "d", "e"]]).elements) == 12


def test_raw_logic_rejects_bad_input():
    with pytest.raises(InvalidOMP):
        from_raw({"elements": ["0", "1"]})
    with pytest.raises(InvalidOMP):
        from_raw({"elements": ["0", "1"], "order": [["0", "x"]], "orthocomplement": {"0": "1", "1": "0"}})
    with pytest.raises(InvalidOMP):
        from_raw({"elements": ["a", "b"], "orthocomplement": {"a": "b", "b": "a"}})


def test_states_on_atoms_extend_to_every_element():
    logic = boolean_algebra(["a", "b", "c"], states=[{"a": "1/2", "b": "1/3", "c": "1/6"}])
    mu = logic.states[0]
    assert mu["a+b"] == Fraction(5, 6) and mu["1"] == 1 and mu["0"] == 0
    assert is_state(logic, mu)


def test_state_with_a_missing_atom_rejected():
    with pytest.raises(InvalidOMP):
        boolean_algebra(["a", "b"], states=[{"a": 1}])


def test_to_json_round_trip():
    logic = from_json(_fixture("h2r_sublogic"))
    again = from_raw(logic.to_json())
    assert again.elements == logic.elements
    assert again.order == logic.order
    assert again.states == logic.states


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["boolean_2x3", "greechie_chain", "h2r_sublogic"])
def test_fixtures_are_valid(name):
    report = validate(from_json(_fixture(name)))
    assert report["valid"], report
    assert report["axiom"] is None


def test_hexagon_is_not_orthomodular():
    report = validate(from_raw(HEXAGON))
    assert not report["valid"]
    assert report["axiom"] == "d"


def test_non_involutive_complement():
    doc = {
        "elements": ["0", "a", "b", "1"],
        "order": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
        "orthocomplement": {"0": "1", "1": "0", "a": "b", "b": "b"},
    }
    assert validate(from_raw(doc))["axiom"] == "b"


def test_antisymmetry_violation():
    doc = {
        "elements": ["0", "a", "b", "1"],
        "order": [["0", "a"], ["a", "b"], ["b", "a"], ["b", "1"]],
        "orthocomplement": {"0": "1", "1": "0", "a": "b", "b": "a"},
    }
    assert validate(from_raw(doc))["axiom"] == "poset"


# ---------------------------------------------------------------------------
# P(q|p) by linear programming
# ---------------------------------------------------------------------------

def test_boolean_dichotomy():
    logic = boolean_algebra(["a", "b", "c"])
    for p in logic.elements:
        if p == logic.zero:
            continue
        for q in logic.elements:
            r = transition_probability_lp(logic, p, q)
            assert r.exists == (logic.le(p, q) or logic.orthogonal(p, q)), (p, q)
            if r.exists:
                assert r.s == (1 if logic.le(p, q) else 0)
                assert r.path == "lp"


def test_greechie_chain_leaves_far_block_free():
    logic = from_json(_fixture("greechie_chain"))
    assert transition_probability_lp(logic, "a", "c").s == 0
    assert transition_probability_lp(logic, "a", "a+b").s == 1
    r = transition_probability_lp(logic, "a", "e")
    assert not r.exists and r.reason == NOT_CONSTANT
    assert r.residual == 1.0


@pytest.mark.parametrize("name", ["boolean_2x3", "greechie_chain", "h2r_sublogic"])
def test_restricting_p_keeps_the_transition_probability(name):
    logic = from_json(_fixture(name))
    nonzero = [e for e in logic.elements if e != logic.zero]
    table = {(p, q): transition_probability_lp(logic, p, q) for p in nonzero for q in logic.elements}
    checked = 0
    for (p, q), r in table.items():
        if not r.exists:
            continue
        for p_o in nonzero:
            if logic.le(p_o, p):
                sub = table[(p_o, q)]
                assert sub.exists and sub.s == r.s, (p_o, p, q)
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("name", ["boolean_2x3", "greechie_chain", "h2r_sublogic"])
def test_strict_nonzero_subelement_has_a_positive_gap(name):
    logic = from_json(_fixture(name))
    pairs = [(p, q) for p in logic.elements for q in logic.elements
             if q not in (logic.zero, p) and logic.le(q, p)]
    assert pairs
    for p, q in pairs:
        r = transition_probability_lp(logic, p, q)
        assert not r.exists and r.residual > 0, (p, q)


def test_declared_states_give_the_jordan_value():
    logic = from_json(_fixture("h2r_sublogic"))
    for p, q in (("a", "b"), ("b", "a"), ("a'", "b'"), ("b", "a'")):
        r = transition_probability_lp(logic, p, q)
        assert r.exists and r.s == HALF, (p, q)
    assert transition_probability_lp(logic, "a", "a'").s == 0


def test_full_polytope_loses_the_value():
    doc = _fixture("h2r_sublogic")
    doc.pop("states")
    r = transition_probability_lp(from_raw(doc), "a", "b")
    assert not r.exists and r.reason == NOT_CONSTANT


def test_states_argument_overrides_declared_states():
    logic = from_json(_fixture("h2r_sublogic"))
    only_b = [logic.states[2]]
    r = transition_probability_lp(logic, "a", "b", states=only_b)
    assert not r.exists and r.reason == INFEASIBLE


def test_floating_states():
    logic = boolean_algebra(["a", "b"], states=[{"a": 0.25, "b": 0.75}, {"a": 1.0, "b": 0.0}])
    r = transition_probability_lp(logic, "a", "b")
    assert r.exists and isinstance(r.s, float) and r.s == 0.0


def test_lp_argument_errors():
    logic = boolean_algebra(["a", "b"])
    with pytest.raises(ValueError):
        transition_probability_lp(logic, "0", "a")
    with pytest.raises(InvalidOMP):
        transition_probability_lp(logic, "a", "z")


# ---------------------------------------------------------------------------
# Projection sublogics agree with the Jordan side
# ---------------------------------------------------------------------------

def _h2r_family():
    a, b = two_by_two_pair(HALF)
    return {
        "0": Projection(a.element.zero_like()),
        "1": Projection(a.element.identity_like()),
        "a": a,
        "a'": orthocomplement(a),
        "b": b,
        "b'": orthocomplement(b),
    }


def test_from_projections_matches_the_fixture():
    family = _h2r_family()
    psi = rank_one_projection([Fraction(3, 5), Fraction(4, 5)], "R")
    rhos = [family[k].element for k in ("a", "a'", "b", "b'")] + [psi.element]
    logic = from_projections(family, density_states(family, rhos))
    assert validate(logic)["valid"]
    fixture = from_json(_fixture("h2r_sublogic"))
    assert logic.order == fixture.order
    assert logic.states == fixture.states
    lp = transition_probability_lp(logic, "a", "b")
    assert lp.s == transition_probability(family["a"], family["b"]).s == HALF


def test_from_projections_needs_complements():
    family = _h2r_family()
    del family["b'"]
    with pytest.raises(InvalidOMP):
        from_projections(family)


def test_density_state_of_zero_trace_rejected():
    family = _h2r_family()
    with pytest.raises(ValueError):
        density_states(family, [family["0"].element])


# ---------------------------------------------------------------------------
# Strong state sets
# ---------------------------------------------------------------------------

def test_boolean_algebra_is_strong():
    report = strong_report(boolean_algebra(["a", "b", "c"]))
    assert report["strong"] and report["pairs_checked"] > 0


def test_greechie_chain_is_strong():
    report = strong_report(from_json(_fixture("greechie_chain")))
    assert report["strong"] and report["pairs_checked"] > 0


def test_h2r_sublogic_is_strong():
    assert is_strong(from_json(_fixture("h2r_sublogic")))


def test_too_few_states_are_not_strong():
    logic = boolean_algebra(["a", "b"], states=[{"a": "1/2", "b": "1/2"}])
    report = strong_report(logic)
    assert not report["strong"]
    assert report["pair"] == ["a", "0"]


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

def _morphism(mapping=None):
    doc = _fixture("morphism_boolean")
    src, tgt = from_json(doc["source"]), from_json(doc["target"])
    return OMPMorphism(src, tgt, mapping or doc["mapping"])


def test_fixture_morphism():
    report = check_morphism(_morphism())
    assert report["ok"] and report["condition"] is None


def test_morphism_must_keep_the_unit():
    report = check_morphism(_morphism({"0": "0", "x": "a", "y": "b+c", "1": "a+b"}))
    assert not report["ok"] and report["condition"] == "a"


def test_morphism_must_preserve_joins():
    report = check_morphism(_morphism({"0": "0", "x": "a", "y": "b", "1": "1"}))
    assert not report["ok"] and report["condition"] == "b"


def test_morphism_must_be_total():
    with pytest.raises(InvalidOMP):
        _morphism({"0": "0", "x": "a", "1": "1"})


def test_states_pull_back():
    m = _morphism()
    uniform = [{"a": "1/3", "b": "1/3", "c": "1/3"}]
    report = check_morphism(m, target_states=uniform)
    assert report["ok"] and report["states_pulled_back"] == 1
    # The pulled-back state (1/3, 2/3) is outside the hull of a single point mass ...
    report = check_morphism(m, source_states=[{"x": 1, "y": 0}], target_states=uniform)
    assert not report["ok"] and report["condition"] == "c"
    # ... but inside the hull of both point masses.
    report = check_morphism(m, source_states=[{"x": 1, "y": 0}, {"x": 0, "y": 1}], target_states=uniform)
    assert report["ok"]

