"""
Product rule and no-cloning checks in the tensor model H_m(C) (x) H_n(C).

The composite logic is the projection lattice of H_{mn}(C). A projection p of
the first factor enters it as bar(p) = p (x) I_n and one of the second as
tilde(q) = I_m (x) q. These always operator-commute, so bar(p) ^ tilde(q) is
their Jordan product p (x) q, nonzero whenever p and q are.

A cloner T must send bar(p_i) ^ tilde(q_o) to bar(p_i) ^ tilde(p_i) for every
p_i of a family. T is modelled as conjugation x -> U x U* by a unitary of the
composite; that is a logic morphism, but only a subclass of all of them, so a
search that finds no cloner corroborates the no-cloning statement for this
subclass and proves nothing beyond it. The reports say so.

Three tools:

  * product_rule_check       P(q1 (x) q2 | p1 (x) p2) = P(q1|p1) P(q2|p2)
  * cloning_identity_check   evaluates each step of the chain
                             s^2 = P(clones) = P(T(...)) = P(originals) = s
                             for a candidate T that passes the cloning condition
  * cloner_search            Haar-random unitaries plus coordinate descent,
                             minimizing the cloning-condition residual
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg

from config import CLONE_TOL, EPS_PROJ
from jordan import to_complex_matrix
from projection_logic import Projection, ZeroProjection, meet, projection_from_complex
from transition import TransitionUndefined, transition_probability

# Reasons.
NOT_A_CLONER = "not_a_cloner"          # T misses the cloning condition
NOT_ZERO_ONE = "value_not_zero_one"    # chain passed but s outside {0, 1}

SEARCH_STATEMENT = (
    "cloners searched among unitary conjugations only; a positive residual floor "
    "corroborates the no-cloning theorem for this subclass but does not re-prove it"
)

_CHAIN_TOL = 1e-9


# ---------------------------------------------------------------------------
# Model
# ---------------------------------------------------------------------------

@dataclass
class TensorModel:
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError(f"factor sizes must be positive, got m={self.m}, n={self.n}")

    @property
    def dim(self) -> int:
        return self.m * self.n

    def _matrix(self, p: Projection, size: int) -> np.ndarray:
        mat = to_complex_matrix(p.element.to_float())
        if p.element.ring not in ("R", "C") or mat.shape != (size, size):
            raise ValueError(f"expected a projection of H_{size}(C) (or H_{size}(R))")
        return mat

    def bar(self, p: Projection) -> Projection:
        """p (x) I_n."""
        return projection_from_complex(np.kron(self._matrix(p, self.m), np.eye(self.n)))

    def tilde(self, q: Projection) -> Projection:
        """I_m (x) q."""
        return projection_from_complex(np.kron(np.eye(self.m), self._matrix(q, self.n)))

    def tensor(self, p: Projection, q: Projection) -> Projection:
        """bar(p) ^ tilde(q)."""
        return meet(self.bar(p), self.tilde(q))

    def to_json(self) -> Dict[str, Any]:
        return {"m": self.m, "n": self.n}


@dataclass
class CloningCandidate:
    """T(x) = U x U* on the composite."""

    unitary: np.ndarray
    label: str = "unitary"

    def __post_init__(self) -> None:
        u = np.asarray(self.unitary, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("a cloning candidate needs a square unitary")
        dev = float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))
        if dev > 1e-9:
            raise ValueError(f"candidate is not unitary (max |U U* - I| = {dev:.3g})")
        self.unitary = u

    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        return self.unitary @ x @ self.unitary.conj().T

    def apply(self, p: Projection) -> Projection:
        return projection_from_complex(self.apply_matrix(to_complex_matrix(p.element.to_float())))


def _value(p: Projection, q: Projection, what: str):
    r = transition_probability(p, q)
    if not r.exists:
        raise TransitionUndefined(f"{what} does not exist ({r.reason}, residual {r.residual:.3g})")
    return float(r.s)


# ---------------------------------------------------------------------------
# Product rule
# ---------------------------------------------------------------------------

def product_rule_check(model: TensorModel, p1: Projection, q1: Projection,
                       p2: Projection, q2: Projection) -> Dict[str, Any]:
    s1 = _value(p1.to_float(), q1.to_float(), "P(q1|p1)")
    s2 = _value(p2.to_float(), q2.to_float(), "P(q2|p2)")
    pp = model.tensor(p1, p2)
    if pp.is_zero():
        raise ZeroProjection("p1 (x) p2 is zero")
    composite = _value(pp, model.tensor(q1, q2), "P(q1 (x) q2 | p1 (x) p2)")
    error = abs(composite - s1 * s2)
    return {
        "s1": s1,
        "s2": s2,
        "composite": composite,
        "product": s1 * s2,
        "error": error,
        "ok": error <= _CHAIN_TOL,
    }


# ---------------------------------------------------------------------------
# The cloning chain
# ---------------------------------------------------------------------------

def _cloning_residual(model: TensorModel, t: CloningCandidate, p: Projection, q_o: Projection) -> float:
    src = to_complex_matrix(model.tensor(p, q_o).element)
    dst = to_complex_matrix(model.tensor(p, p).element)
    return float(np.linalg.norm(t.apply_matrix(src) - dst))


def cloning_identity_check(model: TensorModel, p_j: Projection, p_k: Projection,
                           q_o: Projection, t: CloningCandidate) -> Dict[str, Any]:
    """Walk the no-cloning chain for one pair. A candidate that misses the
    cloning condition is reported as not a cloner, never as a failure of the
    chain."""
    if model.m != model.n:
        raise ValueError("cloning needs both factors to be the same algebra (m = n)")
    residual = max(_cloning_residual(model, t, p, q_o) for p in (p_j, p_k))
    if residual > EPS_PROJ * max(1.0, float(model.dim) ** 0.5):
        return {"cloner": False, "reason": NOT_A_CLONER, "condition_residual": residual}

    s = _value(p_k.to_float(), p_j.to_float(), "P(p_j|p_k)")
    originals_j, originals_k = model.tensor(p_j, q_o), model.tensor(p_k, q_o)
    steps = [
        ("P(p_j|p_k)^2", s * s),
        ("P(clone_j|clone_k)", _value(model.tensor(p_k, p_k), model.tensor(p_j, p_j), "P(clone_j|clone_k)")),
        ("P(T orig_j|T orig_k)", _value(t.apply(originals_k), t.apply(originals_j), "P(T orig_j|T orig_k)")),
        ("P(orig_j|orig_k)", _value(originals_k, originals_j, "P(orig_j|orig_k)")),
        ("P(p_j|p_k)", s),
    ]
    gaps = [abs(a[1] - b[1]) for a, b in zip(steps, steps[1:])]
    chain_ok = max(gaps) <= _CHAIN_TOL
    zero_one = min(abs(s), abs(s - 1.0)) <= _CHAIN_TOL
    report = {
        "cloner": True,
        "condition_residual": residual,
        "steps": [{"step": name, "value": v} for name, v in steps],
        "max_step_gap": max(gaps),
        "chain_ok": chain_ok,
        "derived": "s^2 = s",
        "s": s,
        "s_in_0_1": zero_one,
    }
    if not zero_one:
        report["reason"] = NOT_ZERO_ONE
    return report


def family_identity_check(model: TensorModel, family: Sequence[Projection], q_o: Projection,
                          t: CloningCandidate) -> Dict[str, Any]:
    """cloning_identity_check over every ordered pair of a finite family."""
    pairs = []
    for j, p_j in enumerate(family):
        for k, p_k in enumerate(family):
            if j != k:
                rep = cloning_identity_check(model, p_j, p_k, q_o, t)
                rep["pair"] = [j, k]
                pairs.append(rep)
    cloner = all(r["cloner"] for r in pairs)
    return {
        "cloner": cloner,
        "pairs": pairs,
        "all_zero_one": cloner and all(r["s_in_0_1"] for r in pairs),
    }


# ---------------------------------------------------------------------------
# Explicit and random unitaries
# ---------------------------------------------------------------------------

def _complete(columns: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a unitary."""
    if columns.shape[1] == columns.shape[0]:
        return columns
    rest = scipy.linalg.null_space(columns.conj().T)
    return np.hstack([columns, rest])


def basis_cloner(model: TensorModel, vectors: Sequence[Sequence[complex]],
                 q_vector: Sequence[complex]) -> CloningCandidate:
    """U = (W (x) W) . S . (W* (x) V*), with W's first columns the (orthonormal)
    vectors v_i, V's first column q, and S the controlled shift
    |i>|j> -> |i>|i + j mod n>. Then U (v_i (x) q) = v_i (x) v_i."""
    if model.m != model.n:
        raise ValueError("basis_cloner needs m = n")
    n = model.n
    vs = np.array([np.asarray(v, dtype=complex) / np.linalg.norm(v) for v in vectors]).T
    if vs.shape[0] != n:
        raise ValueError(f"vectors must have length {n}")
    if float(np.max(np.abs(vs.conj().T @ vs - np.eye(vs.shape[1])))) > 1e-9:
        raise ValueError("basis_cloner needs an orthonormal (or single) family")
    q = np.asarray(q_vector, dtype=complex)
    q = q / np.linalg.norm(q)
    w_a = _complete(vs)
    w_b = _complete(q[:, None])
    shift = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            shift[i * n + (i + j) % n, i * n + j] = 1.0
    u = np.kron(w_a, w_a) @ shift @ np.kron(w_a.conj().T, w_b.conj().T)
    return CloningCandidate(u, "basis_cloner")


def random_unitary_c(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian, phases fixed."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _hermitian_basis(dim: int) -> List[np.ndarray]:
    out = []
    for a in range(dim):
        e = np.zeros((dim, dim), dtype=complex)
        e[a, a] = 1.0
        out.append(e)
    for a in range(dim):
        for b in range(a + 1, dim):
            e = np.zeros((dim, dim), dtype=complex)
            e[a, b] = e[b, a] = 1.0 / np.sqrt(2.0)
            out.append(e)
            f = np.zeros((dim, dim), dtype=complex)
            f[a, b] = -1j / np.sqrt(2.0)
            f[b, a] = 1j / np.sqrt(2.0)
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# Falsification search
# ---------------------------------------------------------------------------

def cloner_search(model: TensorModel, p_1: Projection, p_2: Projection, q_o: Projection,
                  trials: int = 10000, seed: int = 42, refine_rounds: int = 200,
                  step: float = 0.25, keep: int = 4,
                  progress: Optional[Any] = None) -> Dict[str, Any]:
    """Best cloning-condition residual over structured candidates, `trials`
    Haar-random unitaries and a coordinate-descent polish of the best `keep`.
    `progress`, if given, is called with a short status string per stage."""
    if model.m != model.n:
        raise ValueError("cloning needs m = n")
    family = [p_1, p_2]
    src = [to_complex_matrix(model.tensor(p, q_o).element) for p in family]
    dst = [to_complex_matrix(model.tensor(p, p).element) for p in family]

    def residual(u: np.ndarray) -> float:
        return max(float(np.linalg.norm(u @ x @ u.conj().T - y)) for x, y in zip(src, dst))

    s = transition_probability(p_1.to_float(), p_2.to_float())
    s_value = float(s.s) if s.exists else None

    candidates = [("identity", np.eye(model.dim, dtype=complex))]
    shift = np.zeros((model.dim, model.dim))
    for i in range(model.n):
        for j in range(model.n):
            shift[j * model.n + i, i * model.n + j] = 1.0
    candidates.append(("swap", shift.astype(complex)))
    vecs = []
    for p in family:
        mat = to_complex_matrix(p.element.to_float())
        w, v = np.linalg.eigh(mat)
        if np.sum(w > 0.5) == 1:
            vecs.append(v[:, -1])
    qmat = to_complex_matrix(q_o.element.to_float())
    wq, vq = np.linalg.eigh(qmat)
    if len(vecs) == 2 and np.sum(wq > 0.5) == 1:
        fam = vecs if abs(np.vdot(vecs[0], vecs[1])) < 1 - 1e-9 else vecs[:1]
        try:
            candidates.append(("basis_cloner", basis_cloner(model, fam, vq[:, -1]).unitary))
        except ValueError:
            pass

    scored = [(residual(u), name, u) for name, u in candidates]
    if progress:
        progress(f"structured candidates: best {min(scored, key=lambda t: t[0])[0]:.3g}")

    rng = np.random.default_rng(seed)
    for t in range(trials):
        u = random_unitary_c(model.dim, rng)
        scored.append((residual(u), "random", u))
        if len(scored) > 4 * keep + len(candidates):
            scored.sort(key=lambda t: t[0])
            scored = scored[:keep + len(candidates)]
        if progress and trials >= 10 and (t + 1) % max(1, trials // 10) == 0:
            progress(f"random trials {t + 1}/{trials}")
    scored.sort(key=lambda t: t[0])
    random_best = min((r for r, name, _ in scored if name == "random"), default=None)

    gens = _hermitian_basis(model.dim)
    polished = []
    for r0, name, u in scored[:keep]:
        h = step
        best, bu = r0, u
        rounds = 0
        while h > 1e-6 and rounds < refine_rounds and best > 0.0:
            rounds += 1
            improved = False
            for g in gens:
                for sign in (1.0, -1.0):
                    cand = scipy.linalg.expm(1j * sign * h * g) @ bu
                    r = residual(cand)
                    if r < best:
                        best, bu, improved = r, cand, True
            if not improved:
                h /= 2.0
        polished.append((best, name, bu))
    polished.sort(key=lambda t: t[0])
    best_res, best_name, _ = polished[0] if polished else scored[0]
    if progress:
        progress(f"refinement done: best residual {best_res:.3g}")

    return {
        "model": model.to_json(),
        "s": s_value,
        "trials": trials,
        "seed": seed,
        "refine": {"rounds": refine_rounds, "step": step, "keep": keep},
        "tolerance": CLONE_TOL,
        "best_random_residual": random_best,
        "best_residual": best_res,
        "best_candidate": best_name,
        "cloner_found": best_res <= CLONE_TOL,
        "residual_floor_positive": best_res > CLONE_TOL,
        "statement": SEARCH_STATEMENT,
    }
