"""
Tests for core/transition/transition.py and paths.py -- P(q|p) on projection
lattices, the exchange symmetry, the decomposition q = q_o + q_1 and the
structure cases.

The 2 x 2 real pair is worked by hand: {a,b,a} = a/2, and at s = 9/25 the
exchange symmetry is exactly the reflection [[3/5, 4/5], [4/5, -3/5]]. The
oracle is checked against the algebraic path on seeded random projections
in every associative ring; the composite instance (isoclinic pair plus an
orthogonal block) is built with a known q_o and r so the decomposition has a
ground truth to recover.
"""

import os
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "core"))
for _d in ("algebra", "logic", "transition"):
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "core", _d))

import paths  # noqa: E402
from division_rings import RingMismatch, unit  # noqa: E402
from example_gen import (  # noqa: E402
    ConstructionSpec,
    build_composite,
    build_pair,
    conjugate,
    octonion_example,
    random_isometry,
    random_projection,
    random_unitary,
    rational_isometry,
    strict_subprojection,
    two_by_two_pair,
)
from jordan import from_entries, from_real_matrix  # noqa: E402
from projection_logic import (  # noqa: E402
    Projection,
    ZeroProjection,
    is_compatible,
    leq,
    orthocomplement,
    orthogonal_join,
    rank_one_projection,
    zero_projection,
)
from transition import (  # noqa: E402
    BOUNDARY,
    ISOCLINIC,
    NOT_BIDIRECTIONAL,
    NOT_CONSTANT,
    ORTHOGONAL,
    SPREAD,
    SUBORDINATE,
    OracleUnavailable,
    TransitionUndefined,
    atom_state,
    case_tag,
    classify_pair,
    decompose,
    expectation_probability,
    isoclinic_analysis,
    pure_state_probability,
    trace_monotonicity_check,
    transition_oracle,
    transition_probability,
    transition_table,
)

FULL = pytest.mark.skipif(
    os.environ.get("TRANSPROB_FULL") != "1",
    reason="full-size oracle sweep; set TRANSPROB_FULL=1",
)

HALF = Fraction(1, 2)


def diag(*vals, ring="R"):
    n = len(vals)
    return Projection(from_entries(ring, [[Fraction(vals[i]) if i == j else 0 for j in range(n)] for i in range(n)]))


A = Projection(from_real_matrix([[1, 0], [0, 0]], exact=True))
B = Projection(from_real_matrix([[HALF, HALF], [HALF, HALF]], exact=True))


def _composite(exact=True):
    if exact:
        spec = ConstructionSpec("C", 2, 3, Fraction(1, 5), rational_isometry("C", 2, 3))
    else:
        spec = ConstructionSpec("C", 2, 3, 0.3, random_isometry("C", 2, 3, 42))
    return build_composite(spec, extra=1)


# ---------------------------------------------------------------------------
# Algebraic path
# ---------------------------------------------------------------------------

def test_the_pair_both_ways():
    f, b = transition_probability(A, B), transition_probability(B, A)
    assert f.exists and f.s == HALF and f.residual == 0.0
    assert b.exists and b.s == HALF
    assert f.path == "algebraic"


def test_orthogonal_pair_has_zero():
    r = transition_probability(diag(1, 0), diag(0, 1))
    assert r.exists and r.s == 0


def test_subprojection_has_one():
    r = transition_probability(diag(1, 0, 0), diag(1, 1, 0))
    assert r.exists and r.s == 1


def test_strict_subprojection_has_no_transition_probability():
    p = diag(1, 1, 0)
    q = strict_subprojection(p, seed=3)
    assert q.exact
    r = transition_probability(p, q)
    assert not r.exists
    assert r.reason == NOT_CONSTANT
    # The other direction is fine: q <= p.
    back = transition_probability(q, p)
    assert back.exists and back.s == 1


def test_restricting_p_keeps_the_transition_probability():
    p, q = build_pair(ConstructionSpec("C", 2, 3, Fraction(1, 5), rational_isometry("C", 2, 3)))
    p_o = strict_subprojection(p, seed=9)
    assert p_o.exact and leq(p_o, p)
    r = transition_probability(p_o, q)
    assert r.exists and r.s == Fraction(1, 5)
    u = random_isometry("H", 2, 4, 19)
    p, q = build_pair(ConstructionSpec("H", 2, 4, 0.35, u))
    for k in range(5):
        r = transition_probability(strict_subprojection(p, seed=k), q)
        assert r.exists and abs(r.s - 0.35) <= 1e-9


@seed(7373)
@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31), st.sampled_from(["R", "C", "H"]), st.integers(2, 5))
def test_compatible_pairs_have_boundary_values(s, ring, n):
    rng = np.random.default_rng(s)
    a = rng.integers(0, 2, size=n)
    b = rng.integers(0, 2, size=n)
    a[0] = 1
    w = random_unitary(ring, n, s)

    def conj_diag(v):
        rows = [[float(v[i]) if i == j else 0.0 for j in range(n)] for i in range(n)]
        return Projection(conjugate(from_entries(ring, rows), w))

    p, q = conj_diag(a), conj_diag(b)
    assert is_compatible(p, q)
    r = transition_probability(p, q)
    below = all(b[i] >= a[i] for i in range(n))
    apart = not any(a[i] and b[i] for i in range(n))
    assert r.exists == (below or apart)
    if r.exists:
        assert min(abs(r.s), abs(r.s - 1.0)) <= 1e-9


def test_value_of_missing_result_raises():
    r = transition_probability(diag(1, 1, 0), diag(1, 0, 0))
    with pytest.raises(TransitionUndefined):
        r.value()


def test_zero_p_raises():
    with pytest.raises(ZeroProjection):
        transition_probability(zero_projection(A), B)


def test_mixed_modes_rejected():
    with pytest.raises(RingMismatch):
        transition_probability(A, B.to_float())


def test_to_json_carries_s_only_when_it_exists():
    assert transition_probability(A, B).to_json()["s"] == "1/2"
    doc = transition_probability(diag(1, 1, 0), diag(1, 0, 0)).to_json()
    assert "s" not in doc and doc["reason"] == NOT_CONSTANT


def test_floating_values_are_clamped_into_the_unit_interval():
    u = random_isometry("H", 2, 3, 9)
    for s in (0.0, 1.0):
        p, q = build_pair(ConstructionSpec("H", 2, 3, s, u))
        r = transition_probability(p, q)
        assert r.exists and 0.0 <= r.s <= 1.0 and abs(r.s - s) <= 1e-9


def test_octonionic_pair():
    u1 = unit("O", 1).scale(Fraction(3, 5))
    u2 = unit("O", 4).scale(Fraction(4, 5))
    p, q = octonion_example((u1, u2), HALF)
    assert transition_probability(p, q).s == HALF
    assert transition_probability(q, p).s == HALF


# ---------------------------------------------------------------------------
# Spectral oracle
# ---------------------------------------------------------------------------

def test_oracle_on_the_pair():
    r = transition_oracle(A, B)
    assert r.exists and r.path == "oracle"
    assert abs(r.s - 0.5) <= 1e-12


def test_oracle_rejects_strict_subprojection():
    p = diag(1, 1, 0)
    r = transition_oracle(p, strict_subprojection(p, seed=4))
    assert not r.exists and r.reason == SPREAD


def test_oracle_refuses_octonions():
    p = diag(1, 0, 0, ring="O")
    with pytest.raises(OracleUnavailable):
        transition_oracle(p, p)


@pytest.mark.parametrize("ring", ["R", "C", "H"])
def test_oracle_agrees_on_the_construction(ring):
    u = random_isometry(ring, 2, 3, 17)
    p, q = build_pair(ConstructionSpec(ring, 2, 3, 0.35, u))
    a, o = transition_probability(p, q), transition_oracle(p, q)
    assert a.exists and o.exists
    assert abs(a.s - o.s) <= 1e-9


@seed(9090)
@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31), st.sampled_from(["R", "C", "H"]), st.integers(2, 5))
def test_oracle_agrees_with_algebraic_path(s, ring, n):
    rng = np.random.default_rng(s)
    p = random_projection(ring, n, int(rng.integers(1, n)), s)
    q = random_projection(ring, n, int(rng.integers(1, n + 1)), s + 1)
    a, o = transition_probability(p, q), transition_oracle(p, q)
    assert a.exists == o.exists
    if a.exists:
        assert abs(a.s - o.s) <= 1e-9


@FULL
@pytest.mark.parametrize("ring", ["R", "C", "H"])
def test_oracle_sweep_full_size(ring):
    rng = np.random.default_rng(500)
    for k in range(500):
        n = int(rng.integers(2, 7))
        p_rank = 1 if k % 2 == 0 else int(rng.integers(1, n))
        p = random_projection(ring, n, p_rank, 2 * k)
        q = random_projection(ring, n, int(rng.integers(1, n + 1)), 2 * k + 1)
        a, o = transition_probability(p, q), transition_oracle(p, q)
        assert a.exists == o.exists, (k, n)
        if p_rank == 1:
            assert a.exists, (k, n)
        if a.exists:
            assert abs(a.s - o.s) <= 1e-9, (k, n)


# ---------------------------------------------------------------------------
# Path registry
# ---------------------------------------------------------------------------

def test_paths_run_by_name():
    assert paths.run("algebraic", A, B).s == HALF
    assert paths.run("oracle", A, B).path == "oracle"
    assert paths.BASELINE in paths.PATHS


def test_unknown_path_rejected():
    with pytest.raises(ValueError):
        paths.run("telepathy", A, B)


def test_register_adds_a_path():
    paths.register("swapped", lambda p, q: transition_probability(q, p))
    try:
        assert paths.run("swapped", diag(1, 1, 0), diag(1, 0, 0)).s == 1
    finally:
        paths.PATHS.pop("swapped")


# ---------------------------------------------------------------------------
# Isoclinic pairs
# ---------------------------------------------------------------------------

def test_exact_exchange_symmetry():
    p, q = two_by_two_pair(Fraction(9, 25))
    assert p.exact
    report = isoclinic_analysis(p, q)
    assert report.isoclinic
    v = report.symmetry
    want = from_real_matrix([[Fraction(3, 5), Fraction(4, 5)], [Fraction(4, 5), Fraction(-3, 5)]], exact=True)
    assert v.exact and (v - want).is_zero()
    assert report.symmetry_residual == 0.0


def test_floating_exchange_symmetry():
    report = isoclinic_analysis(A, B)
    assert report.isoclinic and report.symmetry is not None
    assert report.symmetry_residual <= 1e-9
    assert report.to_json()["symmetry"] is not None


def test_symmetry_for_the_block_construction():
    u = random_isometry("H", 2, 3, 5)
    p, q = build_pair(ConstructionSpec("H", 2, 3, 0.6, u))
    report = isoclinic_analysis(p, q)
    assert report.symmetry is not None and report.symmetry_residual <= 1e-7


def test_boundary_values_need_no_symmetry():
    report = isoclinic_analysis(diag(1, 0), diag(0, 1))
    assert report.isoclinic and report.symmetry is None
    assert report.reason == BOUNDARY


def test_one_directional_pair_is_not_isoclinic():
    report = isoclinic_analysis(diag(1, 1, 0), diag(1, 0, 0))
    assert not report.isoclinic and report.reason == NOT_BIDIRECTIONAL


def _half_sum_residuals(p, q, s):
    # p o (p o q) = (s p + p o q) / 2 and the same with p and q exchanged
    pe, qe = p.element, q.element
    half = HALF if p.exact else 0.5
    s = s if p.exact else float(s)
    pq = pe.jordan(qe)
    return (pe.jordan(pq) - (pe.scale(s) + pq).scale(half),
            qe.jordan(pq) - (qe.scale(s) + pq).scale(half))


ISOCLINIC_PAIRS = [
    ("pair", lambda: (A, B, HALF)),
    ("nine_25ths", lambda: two_by_two_pair(Fraction(9, 25)) + (Fraction(9, 25),)),
    ("block_C_exact", lambda: build_pair(ConstructionSpec("C", 2, 3, Fraction(1, 5), rational_isometry("C", 2, 3)))
     + (Fraction(1, 5),)),
    ("block_H", lambda: build_pair(ConstructionSpec("H", 2, 3, 0.6, random_isometry("H", 2, 3, 5))) + (0.6,)),
    ("octonion", lambda: octonion_example((unit("O", 1).scale(Fraction(3, 5)), unit("O", 4).scale(Fraction(4, 5))),
                                          HALF) + (HALF,)),
]


@pytest.mark.parametrize("label,make", ISOCLINIC_PAIRS, ids=[c[0] for c in ISOCLINIC_PAIRS])
def test_isoclinic_half_sum_identities(label, make):
    p, q, s = make()
    fwd, back = _half_sum_residuals(p, q, s)
    if p.exact:
        assert fwd.is_zero() and back.is_zero(), label
    else:
        assert fwd.norm() <= 1e-9 and back.norm() <= 1e-9, label


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def test_decomposition_recovers_the_composite_exactly():
    comp = _composite(exact=True)
    d = decompose(comp.p, comp.q)
    assert d.s == Fraction(1, 5)
    assert d.valid, d.checks
    assert d.q_o.equals(comp.q_o)
    assert d.q_1.equals(comp.r)


def test_decomposition_recovers_the_composite_floating():
    comp = _composite(exact=False)
    d = decompose(comp.p, comp.q)
    assert d.valid, d.checks
    assert d.q_o.equals(comp.q_o) and d.q_1.equals(comp.r)


def test_decomposition_of_an_isoclinic_pair_has_empty_remainder():
    d = decompose(A, B)
    assert d.valid
    assert d.q_1.is_zero()
    assert d.to_json()["q_1_zero"] is True


def test_decompose_needs_a_transition_probability():
    p = diag(1, 1, 0)
    with pytest.raises(TransitionUndefined):
        decompose(p, strict_subprojection(p, seed=5))


def test_decompose_needs_nonzero_value():
    with pytest.raises(TransitionUndefined):
        decompose(diag(1, 0), diag(0, 1))


# ---------------------------------------------------------------------------
# Structure cases
# ---------------------------------------------------------------------------

def test_case_tags():
    assert case_tag(Fraction(0)) == ORTHOGONAL
    assert case_tag(1.0) == SUBORDINATE
    assert case_tag(HALF) == ISOCLINIC


def test_isoclinic_pair_generates_a_copy_of_h2r():
    report = classify_pair(A, B)
    assert report.case == ISOCLINIC
    assert report.dimension == 3
    assert report.witness["ok"] and report.witness["core_dimension"] == 3


def test_composite_adds_one_dimension():
    comp = _composite(exact=False)
    report = classify_pair(comp.p, comp.q)
    assert report.case == ISOCLINIC
    assert report.dimension == 4
    assert report.witness["ok"]


def test_orthogonal_case():
    report = classify_pair(diag(1, 0, 0), diag(0, 1, 1))
    assert report.case == ORTHOGONAL and report.dimension == 2


def test_subordinate_case():
    report = classify_pair(diag(1, 0, 0), diag(1, 1, 0))
    assert report.case == SUBORDINATE and report.dimension == 2
    assert report.to_json()["s"] == "1"


def test_subordinate_case_with_equal_projections():
    report = classify_pair(A, A)
    assert report.case == SUBORDINATE and report.dimension == 1


def test_classify_needs_a_transition_probability():
    p = diag(1, 1, 0)
    with pytest.raises(TransitionUndefined):
        classify_pair(p, strict_subprojection(p, seed=6))


def test_octonionic_pair_is_isoclinic():
    u1 = unit("O", 2).scale(Fraction(3, 5))
    u2 = unit("O", 5).scale(Fraction(4, 5))
    p, q = octonion_example((u1, u2), HALF)
    report = classify_pair(p, q)
    assert report.case == ISOCLINIC and report.dimension == 3


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------

def test_trace_equality_for_isoclinic_pair():
    report = trace_monotonicity_check(A, B)
    assert report["ok"] and report["bidirectional"] and report["equal"]


def test_trace_grows_along_the_composite():
    comp = _composite(exact=True)
    report = trace_monotonicity_check(comp.p, comp.q)
    assert report["trace_p"] == "2" and report["trace_q"] == "3"
    assert report["monotone"] and not report["bidirectional"]
    assert report["equal"] is None and report["ok"]


def test_trace_check_needs_nonzero_value():
    with pytest.raises(TransitionUndefined):
        trace_monotonicity_check(diag(1, 0), diag(0, 1))


# ---------------------------------------------------------------------------
# Pure states and atoms
# ---------------------------------------------------------------------------

def test_pure_state_probability_matches_rank_one_projections():
    xi, psi = [1.0, 0.0], [1.0, 1j]
    assert abs(pure_state_probability(xi, psi) - 0.5) <= 1e-12
    p, q = rank_one_projection(xi, "C"), rank_one_projection(psi, "C")
    assert abs(transition_probability(p, q).s - 0.5) <= 1e-12
    assert abs(transition_probability(q, p).s - 0.5) <= 1e-12


def test_pure_state_probability_normalizes():
    assert abs(pure_state_probability([3.0, 0.0], [2.0, 2.0]) - 0.5) <= 1e-12


def test_expectation_probability():
    assert abs(expectation_probability([1.0, 0.0], B) - 0.5) <= 1e-12
    assert abs(expectation_probability([1.0, 1.0], B) - 1.0) <= 1e-12


def test_atom_state():
    assert atom_state(A, [A, B, orthocomplement(A)]) == [1, HALF, 0]


def test_atom_state_is_additive():
    a_perp = orthocomplement(A)
    whole = orthogonal_join(A, a_perp)
    values = atom_state(B, [A, a_perp, whole])
    assert values == [HALF, HALF, 1]
    assert values[0] + values[1] == values[2]


def test_atom_state_needs_an_atom():
    with pytest.raises(ValueError):
        atom_state(diag(1, 1, 0), [diag(1, 0, 0)])


def test_transition_table():
    table = transition_table([A, B, zero_projection(A)])
    assert table[0][1].s == HALF and table[1][0].s == HALF
    assert table[0][0].s == 1
    assert not table[2][0].exists


# ---------------------------------------------------------------------------
# Full-size sweeps
# ---------------------------------------------------------------------------

@FULL
@pytest.mark.parametrize("ring", ["R", "C", "H"])
def test_strict_subprojection_sweep(ring):
    rng = np.random.default_rng(600)
    for k in range(200):
        n = int(rng.integers(2, 7))
        p = random_projection(ring, n, int(rng.integers(2, n + 1)), k)
        q = strict_subprojection(p, seed=k)
        r = transition_probability(p, q)
        assert not r.exists and r.reason == NOT_CONSTANT, (k, n)
        assert abs(transition_probability(q, p).s - 1.0) <= 1e-9, (k, n)


@FULL
@pytest.mark.parametrize("ring", ["R", "C", "H"])
@pytest.mark.parametrize("m", [1, 2])
def test_construction_sweep(ring, m):
    for n in range(m, m + 3):
        for k in range(11):
            s = k / 10
            p, q = build_pair(ConstructionSpec(ring, m, n, s, random_isometry(ring, m, n, 100 * n + k)))
            fwd, back = transition_probability(p, q), transition_probability(q, p)
            assert fwd.exists and abs(fwd.s - s) <= 1e-9, (n, s)
            assert back.exists and abs(back.s - s) <= 1e-9, (n, s)
            f, b = _half_sum_residuals(p, q, s)
            assert f.norm() <= 1e-9 and b.norm() <= 1e-9, (n, s)


@FULL
def test_composite_sweep():
    rng = np.random.default_rng(700)
    for k in range(200):
        ring = ["R", "C", "H"][k % 3]
        m = int(rng.integers(1, 3))
        n = int(rng.integers(m, m + 3))
        s = float(rng.uniform(0.05, 0.95))
        spec = ConstructionSpec(ring, m, n, s, random_isometry(ring, m, n, 2 * k))
        comp = build_composite(spec, extra=1, conjugate_seed=2 * k + 1)
        d = decompose(comp.p, comp.q)
        assert (d.q_o.element - comp.q_o.element).norm() <= 1e-8, k
        assert (d.q_1.element - comp.r.element).norm() <= 1e-8, k
        report = classify_pair(comp.p, comp.q)
        assert report.case == ISOCLINIC and report.dimension == 4, k


# ---------------------------------------------------------------------------
# Cross-path agreement: every path registered in paths.py is checked against
# the "algebraic" baseline on the cases below, so a new path is covered
# without touching this file.
# ---------------------------------------------------------------------------

_NON_BASELINE_PATHS = [name for name in paths.PATHS if name != paths.BASELINE]

PATH_CASES = [
    ("pair", lambda: (A, B)),
    ("orthogonal", lambda: (diag(1, 0), diag(0, 1))),
    ("subordinate", lambda: (diag(1, 0, 0), diag(1, 1, 0))),
    ("strict_sub", lambda: (diag(1, 1, 0), strict_subprojection(diag(1, 1, 0), seed=7))),
    ("block_C", lambda: build_pair(ConstructionSpec("C", 2, 3, 0.4, random_isometry("C", 2, 3, 2)))),
    ("block_H", lambda: build_pair(ConstructionSpec("H", 1, 3, 0.8, random_isometry("H", 1, 3, 3)))),
    ("composite", lambda: (_composite(exact=False).p, _composite(exact=False).q)),
]


@pytest.mark.skipif(not _NON_BASELINE_PATHS, reason="no non-baseline paths registered")
@pytest.mark.parametrize("name", _NON_BASELINE_PATHS)
@pytest.mark.parametrize("label,make", PATH_CASES, ids=[c[0] for c in PATH_CASES])
def test_path_agrees_with_baseline(label, make, name):
    p, q = make()
    baseline = paths.run(paths.BASELINE, p, q)
    candidate = paths.run(name, p, q)
    assert candidate.exists == baseline.exists, f"{label} [{name}]: exists={candidate.exists}"
    if baseline.exists:
        assert float(candidate.s) == pytest.approx(float(baseline.s), abs=1e-9), f"{label} [{name}]"
