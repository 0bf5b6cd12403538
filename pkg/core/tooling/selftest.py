#!/usr/bin/env python3
"""
Seeded invariant suite over every engine module, sized to finish in well under
a minute. Each stage prints one progress line to stderr; the summary report
goes to stdout as JSON. Exit status 1 if any stage fails.

Usage:
    python core/tooling/selftest.py [--seed 42] [--trials 200]

The pytest suite covers the same ground in more depth; this is the quick
end-to-end check the CLI's `selftest` subcommand runs.
"""

import argparse
import os
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

_C = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))  # core/
for _p in (_C, *(os.path.join(_C, _d) for _d in ("algebra", "logic", "transition", "omp", "cloning", "tooling"))):
    if _p not in sys.path:
        sys.path.insert(0, _p)

import numpy as np

from cloning import TensorModel, basis_cloner, cloner_search, cloning_identity_check, product_rule_check
from config import DEFAULT_SEED
from division_rings import RINGS, associator, mul, norm2, random_element, random_word, unit
from example_gen import (
    ConstructionSpec,
    build_composite,
    build_pair,
    octonion_example,
    random_isometry,
    random_projection,
    rational_isometry,
    two_by_two_pair,
)
from jordan import HermitianElement, canonical_basis, generated_subalgebra
from omp import boolean_algebra, density_states, from_projections, transition_probability_lp
from projection_logic import Projection, orthocomplement, rank_one_projection
from report import dumps
from transition import classify_pair, decompose, isoclinic_analysis, transition_oracle, transition_probability


def _random_hermitian(ring: str, n: int, rng: np.random.Generator) -> HermitianElement:
    basis = canonical_basis(ring, n)
    x = basis[0].scale(float(rng.standard_normal()))
    for b in basis[1:]:
        x = x + b.scale(float(rng.standard_normal()))
    return x


# ---------------------------------------------------------------------------
# Stages: each returns (ok, detail)
# ---------------------------------------------------------------------------

def stage_division_rings(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for ring in RINGS:
        for _ in range(trials):
            x, y = random_element(ring, rng), random_element(ring, rng)
            lhs, rhs = float(norm2(mul(x, y))), float(norm2(x)) * float(norm2(y))
            worst = max(worst, abs(lhs - rhs) / max(1.0, rhs))
    alt = 0.0
    for _ in range(trials):
        x, y = random_element("O", rng), random_element("O", rng)
        alt = max(alt, float(norm2(mul(x, mul(x, y)) - mul(mul(x, x), y))) ** 0.5)
        alt = max(alt, float(norm2(mul(mul(y, x), x) - mul(y, mul(x, x)))) ** 0.5)
    e = [unit("O", k) for k in range(8)]
    nonassoc = not associator(e[1], e[2], e[4]).is_zero()
    artin = True
    x, y = random_element("O", rng, exact=True), random_element("O", rng, exact=True)
    for _ in range(trials):
        a, b, c = (random_word(x, y, int(rng.integers(1, 5)), rng) for _ in range(3))
        artin = artin and associator(a, b, c).is_zero()
    ok = worst <= 1e-12 and alt <= 1e-10 and nonassoc and artin
    return ok, {"norm_rel_error": worst, "alternativity_error": alt, "octonions_nonassociative": nonassoc,
                "two_generator_associative": artin}


def stage_jordan(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for ring, n in (("C", 3), ("H", 3), ("O", 3)):
        for _ in range(max(1, trials // 10)):
            x, y = _random_hermitian(ring, n, rng), _random_hermitian(ring, n, rng)
            x2 = x.jordan(x)
            d = x2.jordan(x.jordan(y)) - x.jordan(x2.jordan(y))
            worst = max(worst, d.norm() / max(1.0, x.norm() ** 3 * y.norm()))
    return worst <= 1e-10, {"jordan_axiom_rel_error": worst}


def stage_construction(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    bad = 0
    count = 0
    for ring in ("R", "C", "H"):
        for m in (1, 2):
            for n in range(m, m + 3):
                u = random_isometry(ring, m, n, seed + 7 * m + n)
                for s in (0.0, 0.25, 0.5, 0.75, 1.0):
                    p, q = build_pair(ConstructionSpec(ring, m, n, s, u))
                    f, b = transition_probability(p, q), transition_probability(q, p)
                    count += 1
                    if not (f.exists and b.exists and abs(f.s - s) <= 1e-9 and abs(b.s - s) <= 1e-9):
                        bad += 1
    exact_bad = 0
    for ring, s in (("R", Fraction(1, 2)), ("C", Fraction(1, 5)), ("H", Fraction(9, 10))):
        p, q = build_pair(ConstructionSpec(ring, 2, 3, s, rational_isometry(ring, 2, 3)))
        f = transition_probability(p, q)
        if not (f.exists and f.s == s):
            exact_bad += 1
    return bad == 0 and exact_bad == 0, {"instances": count, "failures": bad, "exact_failures": exact_bad}


def stage_oracle(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    rng = np.random.default_rng(seed)
    disagreements = 0
    count = 0
    for ring in ("R", "C", "H"):
        for t in range(max(1, trials // 10)):
            n = int(rng.integers(2, 6))
            p = random_projection(ring, n, int(rng.integers(1, n)), seed + 1000 * t + 1)
            q = random_projection(ring, n, int(rng.integers(1, n)), seed + 1000 * t + 2)
            a, o = transition_probability(p, q), transition_oracle(p, q)
            count += 1
            if a.exists != o.exists or (a.exists and abs(float(a.s) - float(o.s)) > 1e-9):
                disagreements += 1
    return disagreements == 0, {"pairs": count, "disagreements": disagreements}


def stage_structure(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    a, b = two_by_two_pair(Fraction(1, 2))
    iso = isoclinic_analysis(a, b)
    cls = classify_pair(a, b)
    spec = ConstructionSpec("C", 2, 3, 0.3, random_isometry("C", 2, 3, seed))
    comp = build_composite(spec, extra=1)
    dec = decompose(comp.p, comp.q)
    comp_cls = classify_pair(comp.p, comp.q)
    recovered = dec.q_o.equals(comp.q_o) and dec.q_1.equals(comp.r)
    ok = (iso.symmetry is not None and cls.dimension == 3 and cls.witness["ok"]
          and dec.valid and recovered and comp_cls.dimension == 4)
    return ok, {
        "symmetry_residual": iso.symmetry_residual,
        "pair_dimension": cls.dimension,
        "composite_dimension": comp_cls.dimension,
        "decomposition_recovered": recovered,
    }


def stage_octonion(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    u1 = unit("O", 1).scale(Fraction(3, 5))
    u2 = unit("O", 4).scale(Fraction(4, 5))
    p, q = octonion_example((u1, u2), Fraction(1, 2))
    f, b = transition_probability(p, q), transition_probability(q, p)
    dim = generated_subalgebra([p.element, q.element]).dimension
    ok = f.exists and b.exists and f.s == Fraction(1, 2) and b.s == Fraction(1, 2) and dim == 3
    return ok, {"forward": f.s, "backward": b.s, "subalgebra_dimension": dim}


def stage_omp(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    logic = boolean_algebra(["a", "b", "c"])
    wrong = 0
    for p in logic.elements:
        if p == logic.zero:
            continue
        for q in logic.elements:
            r = transition_probability_lp(logic, p, q)
            expected = logic.le(p, q) or logic.orthogonal(p, q)
            if r.exists != expected:
                wrong += 1
    a, b = two_by_two_pair(Fraction(1, 2))
    family = {"0": Projection(a.element.zero_like()), "1": Projection(a.element.identity_like()),
              "a": a, "a'": orthocomplement(a), "b": b, "b'": orthocomplement(b)}
    psi = rank_one_projection([Fraction(3, 5), Fraction(4, 5)], "R")
    rhos = [family[k].element for k in ("a", "a'", "b", "b'")] + [psi.element]
    sub = from_projections(family, density_states(family, rhos))
    lp = transition_probability_lp(sub, "a", "b")
    ok = wrong == 0 and lp.exists and lp.s == Fraction(1, 2)
    return ok, {"boolean_dichotomy_errors": wrong, "sublogic_value": lp.s if lp.exists else None}


def stage_cloning(seed: int, trials: int) -> Tuple[bool, Dict[str, Any]]:
    model = TensorModel(2, 2)
    p1, q1 = two_by_two_pair(0.5)
    p2, q2 = two_by_two_pair(0.25)
    rule = product_rule_check(model, p1, q1, p2, q2)
    e0 = rank_one_projection([1.0, 0.0], "C")
    e1 = rank_one_projection([0.0, 1.0], "C")
    cloner = basis_cloner(model, [[1, 0], [0, 1]], [1, 0])
    chain = cloning_identity_check(model, e0, e1, e0, cloner)
    plus = rank_one_projection([2 ** -0.5, 2 ** -0.5], "C")
    search = cloner_search(model, e0, plus, e0, trials=trials, seed=seed, refine_rounds=20, keep=2)
    ok = rule["ok"] and chain["cloner"] and chain["s_in_0_1"] and search["best_residual"] >= 1e-3
    return ok, {"product_rule_error": rule["error"], "orthogonal_chain_s": chain["s"],
                "search_best_residual": search["best_residual"]}


STAGES: List[Tuple[str, Callable[[int, int], Tuple[bool, Dict[str, Any]]]]] = [
    ("division_rings", stage_division_rings),
    ("jordan", stage_jordan),
    ("construction", stage_construction),
    ("oracle", stage_oracle),
    ("structure", stage_structure),
    ("octonion", stage_octonion),
    ("omp", stage_omp),
    ("cloning", stage_cloning),
]


def run_suite(seed: int = DEFAULT_SEED, trials: int = 200) -> Dict[str, Any]:
    stages = []
    for name, fn in STAGES:
        t0 = time.monotonic()
        try:
            ok, detail = fn(seed, trials)
        except Exception as e:  # a crashing stage is a failed stage, the rest still run
            ok, detail = False, {"error": f"{type(e).__name__}: {e}"}
        elapsed = time.monotonic() - t0
        print(f"[selftest] {name:16s} {'ok' if ok else 'FAIL'}  ({elapsed:.2f}s)", file=sys.stderr, flush=True)
        stages.append({"stage": name, "ok": ok, "detail": detail})
    return {"seed": seed, "trials": trials, "stages": stages, "ok": all(s["ok"] for s in stages)}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="Run the seeded invariant suite.")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--trials", type=int, default=200)
    args = ap.parse_args(argv)
    summary = run_suite(args.seed, args.trials)
    print(dumps(summary))
    return 0 if summary["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
