"""
Tests for core/cloning/cloning.py -- the product rule in H_m(C) (x) H_n(C)
and the no-cloning harness.

An orthogonal basis can be cloned (the controlled shift does it), and the
chain then forces s = 0. A non-orthogonal pair cannot: the search must end
with a clearly positive residual, and say that it only looked at unitary
conjugations.
"""

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "core"))
for _d in ("algebra", "logic", "transition", "cloning"):
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "core", _d))

from cloning import (  # noqa: E402
    NOT_A_CLONER,
    SEARCH_STATEMENT,
    CloningCandidate,
    TensorModel,
    basis_cloner,
    cloner_search,
    cloning_identity_check,
    family_identity_check,
    product_rule_check,
    random_unitary_c,
)
from example_gen import (  # noqa: E402
    ConstructionSpec,
    build_pair,
    random_isometry,
    random_projection,
    strict_subprojection,
    two_by_two_pair,
)
from jordan import from_complex_matrix, to_complex_matrix  # noqa: E402
from projection_logic import rank_one_projection  # noqa: E402
from transition import transition_probability  # noqa: E402

E0 = rank_one_projection([1.0, 0.0], "C")
E1 = rank_one_projection([0.0, 1.0], "C")
PLUS = rank_one_projection([2 ** -0.5, 2 ** -0.5], "C")


# ---------------------------------------------------------------------------
# The tensor model
# ---------------------------------------------------------------------------

def test_model_rejects_empty_factors():
    with pytest.raises(ValueError):
        TensorModel(0, 2)


def test_bar_and_tilde():
    model = TensorModel(2, 2)
    assert np.allclose(to_complex_matrix(model.bar(E0).element), np.diag([1, 1, 0, 0]))
    assert np.allclose(to_complex_matrix(model.tilde(E0).element), np.diag([1, 0, 1, 0]))
    t = model.tensor(E0, E1)
    assert np.allclose(to_complex_matrix(t.element), np.diag([0, 1, 0, 0]))


def test_tensor_of_nonzero_projections_is_nonzero():
    model = TensorModel(2, 2)
    assert not model.tensor(PLUS, E1).is_zero()


def test_tensor_is_the_kronecker_product():
    rng = np.random.default_rng(31)
    for k in range(10):
        m, n = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        model = TensorModel(m, n)
        p = random_projection("C", m, int(rng.integers(1, m + 1)), 2 * k)
        q = random_projection("C", n, int(rng.integers(1, n + 1)), 2 * k + 1)
        want = np.kron(to_complex_matrix(p.element), to_complex_matrix(q.element))
        assert np.allclose(to_complex_matrix(model.tensor(p, q).element), want, atol=1e-8)


def test_bar_and_tilde_operator_commute():
    rng = np.random.default_rng(32)
    model = TensorModel(2, 3)
    p = random_projection("C", 2, 1, 5).to_float()
    q = random_projection("C", 3, 2, 6).to_float()
    bp, tq = model.bar(p).element, model.tilde(q).element
    for _ in range(10):
        z = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        x = from_complex_matrix((z + z.conj().T) / 2)
        assert (bp.jordan(tq.jordan(x)) - tq.jordan(bp.jordan(x))).norm() <= 1e-10


def test_factor_sizes_are_checked():
    model = TensorModel(2, 3)
    with pytest.raises(ValueError):
        model.tilde(E0)


def test_quaternionic_factors_rejected():
    p, _ = build_pair(ConstructionSpec("H", 1, 1, 0.5, random_isometry("H", 1, 1, 0)))
    with pytest.raises(ValueError):
        TensorModel(2, 2).bar(p)


# ---------------------------------------------------------------------------
# Product rule
# ---------------------------------------------------------------------------

def test_product_rule_on_real_pairs():
    model = TensorModel(2, 2)
    p1, q1 = two_by_two_pair(0.5)
    p2, q2 = two_by_two_pair(0.25)
    rule = product_rule_check(model, p1, q1, p2, q2)
    assert rule["ok"]
    assert abs(rule["composite"] - 0.125) <= 1e-9


def test_product_rule_with_unequal_factors():
    model = TensorModel(2, 3)
    p1, q1 = two_by_two_pair(0.5)
    u = random_isometry("C", 1, 2, 4)
    p2, q2 = build_pair(ConstructionSpec("C", 1, 2, 0.3, u))
    rule = product_rule_check(model, p1, q1, p2, q2)
    assert rule["ok"]
    assert abs(rule["composite"] - 0.15) <= 1e-9


def test_product_rule_for_pure_states():
    model = TensorModel(2, 2)
    rule = product_rule_check(model, E0, PLUS, PLUS, E1)
    assert rule["ok"] and abs(rule["product"] - 0.25) <= 1e-12


# ---------------------------------------------------------------------------
# Cloning candidates and the chain
# ---------------------------------------------------------------------------

def test_candidate_must_be_unitary():
    with pytest.raises(ValueError):
        CloningCandidate(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        CloningCandidate(np.eye(3)[:2])


def test_haar_unitary_is_unitary():
    u = random_unitary_c(4, np.random.default_rng(0))
    assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-12)


def test_unitary_conjugation_preserves_transition_probabilities():
    rng = np.random.default_rng(33)
    for k in range(10):
        s = float(rng.uniform(0.05, 0.95))
        p, q = build_pair(ConstructionSpec("C", 1, 2, s, random_isometry("C", 1, 2, k)))
        t = CloningCandidate(random_unitary_c(3, rng))
        before, after = transition_probability(p, q), transition_probability(t.apply(p), t.apply(q))
        assert after.exists and abs(after.s - before.s) <= 1e-9
    p = random_projection("C", 3, 2, 40)
    q = strict_subprojection(p, seed=41)
    t = CloningCandidate(random_unitary_c(3, rng))
    assert not transition_probability(t.apply(p), t.apply(q)).exists


def test_basis_cloner_clones_the_basis():
    model = TensorModel(2, 2)
    t = basis_cloner(model, [[1, 0], [0, 1]], [1, 0])
    for p in (E0, E1):
        src = to_complex_matrix(model.tensor(p, E0).element)
        dst = to_complex_matrix(model.tensor(p, p).element)
        assert np.allclose(t.apply_matrix(src), dst, atol=1e-12)


def test_basis_cloner_needs_orthonormal_vectors():
    with pytest.raises(ValueError):
        basis_cloner(TensorModel(2, 2), [[1, 0], [1, 1]], [1, 0])


def test_chain_on_an_orthogonal_pair_gives_zero():
    model = TensorModel(2, 2)
    t = basis_cloner(model, [[1, 0], [0, 1]], [1, 0])
    report = cloning_identity_check(model, E0, E1, E0, t)
    assert report["cloner"] and report["chain_ok"]
    assert report["s"] == 0.0 and report["s_in_0_1"]
    assert [s["step"] for s in report["steps"]][0] == "P(p_j|p_k)^2"
    assert "reason" not in report


def test_identity_is_not_a_cloner():
    model = TensorModel(2, 2)
    report = cloning_identity_check(model, E0, PLUS, E0, CloningCandidate(np.eye(4)))
    assert not report["cloner"]
    assert report["reason"] == NOT_A_CLONER
    assert report["condition_residual"] > 0.1


def test_chain_needs_equal_factors():
    with pytest.raises(ValueError):
        cloning_identity_check(TensorModel(2, 3), E0, E1, E0, CloningCandidate(np.eye(6)))


def test_family_check_over_a_basis():
    model = TensorModel(3, 3)
    basis = [rank_one_projection(v, "C") for v in np.eye(3)]
    t = basis_cloner(model, np.eye(3), [1, 0, 0])
    report = family_identity_check(model, basis, basis[0], t)
    assert report["cloner"] and report["all_zero_one"]
    assert len(report["pairs"]) == 6


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def test_search_finds_the_orthogonal_cloner():
    report = cloner_search(TensorModel(2, 2), E0, E1, E0, trials=5, seed=1, refine_rounds=2, keep=1)
    assert report["cloner_found"]
    assert report["best_residual"] <= 1e-9
    assert report["s"] == 0.0


def test_search_on_a_non_orthogonal_pair_stays_away_from_zero():
    messages = []
    report = cloner_search(TensorModel(2, 2), E0, PLUS, E0, trials=40, seed=42,
                           refine_rounds=10, keep=1, progress=messages.append)
    assert not report["cloner_found"]
    assert report["residual_floor_positive"]
    assert report["best_residual"] >= 1e-3
    assert report["best_residual"] <= report["best_random_residual"]
    assert abs(report["s"] - transition_probability(E0, PLUS).s) <= 1e-12
    assert report["statement"] == SEARCH_STATEMENT
    assert any("random trials" in m for m in messages)
    assert messages[-1].startswith("refinement done")


def test_search_is_deterministic_for_a_seed():
    kw = dict(trials=15, seed=7, refine_rounds=3, keep=1)
    a = cloner_search(TensorModel(2, 2), E0, PLUS, E0, **kw)
    b = cloner_search(TensorModel(2, 2), E0, PLUS, E0, **kw)
    assert a == b


def test_search_needs_equal_factors():
    with pytest.raises(ValueError):
        cloner_search(TensorModel(2, 3), E0, PLUS, E0, trials=1)
