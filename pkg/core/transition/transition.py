"""
Transition probability P(q|p) between projections of a Jordan algebra.

P(q|p) = s exists iff the Jordan triple product collapses onto p:

    {p, q, p} = s p

The algebraic path computes t = {p,q,p}, takes the least-squares coefficient
s = trace(t o p) / trace(p) of t along p, and accepts s iff the residual
||t - s p|| / ||p|| is within EPS_TP (exactly zero in exact-rational mode).
Extracting s by trace projection first means no entry of p is ever divided by.

The oracle path is independent: states with mu(p) = 1 are the density
operators supported in range(p), so mu(q) sweeps the numerical range of the
compression of q to range(p). P(q|p) exists iff that compression is a scalar,
i.e. all its eigenvalues coincide. Only associative factors have the matrix
representation this needs; octonionic input raises OracleUnavailable.

On top of the two paths:

  * isoclinic_analysis -- P both ways, and for 0 < s < 1 an explicit symmetry
    v (v o v = I, {v,p,v} = q) from the unital span of I, p, q, p o q;
  * decompose          -- q = q_o + q_1 with q_o = {q,p,q}/s isoclinic to p
    and q_1 orthogonal to p;
  * classify_pair      -- which of the three structure cases the pair falls in,
    with the generated subalgebra and, in the isoclinic case, a structure-
    constant witness of the isomorphism onto H_2(R);
  * trace_monotonicity_check -- trace(p) <= trace(q), equality both ways.

Negative answers (no transition probability, no symmetry) are returned with a
reason string, not raised. Precondition failures (p = 0, decomposing a pair
with no transition probability) raise.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config import EPS_ORACLE, EPS_PROJ, EPS_TP, SYMMETRY_TOL
from division_rings import exact_sqrt, render_scalar
from jordan import (
    HermitianElement,
    JordanElement,
    generated_subalgebra,
    to_complex_matrix,
    to_json,
    tolerance_for,
    triple_product,
)
from projection_logic import (
    Projection,
    UnsupportedOperation,
    ZeroProjection,
    same_algebra,
    is_atom,
    is_orthogonal,
    leq,
    range_basis,
)


class TransitionUndefined(ValueError):
    """An operation that needs P(q|p) to exist (and usually s != 0) was asked
    about a pair where it does not."""


class OracleUnavailable(UnsupportedOperation):
    """The spectral oracle needs a matrix representation; H_n(O) has none."""


# Reasons carried by negative results.
NOT_CONSTANT = "not_constant"                  # {p,q,p} is not a multiple of p
SPREAD = "compression_not_scalar"              # oracle: compression eigenvalues differ
NOT_BIDIRECTIONAL = "not_bidirectional"        # only one of P(q|p), P(p|q) exists
VALUES_DIFFER = "values_differ"                # both exist but disagree
BOUNDARY = "boundary_value"                    # s in {0, 1}: no exchange symmetry needed
SYMMETRY_RESIDUAL = "symmetry_residual"        # closed-form v failed verification

ORTHOGONAL = "orthogonal"
SUBORDINATE = "subordinate"
ISOCLINIC = "isoclinic-plus-orthogonal"


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------

@dataclass
class TransitionResult:
    exists: bool
    s: Optional[Any] = None            # Fraction in exact mode, float otherwise
    residual: float = 0.0
    reason: Optional[str] = None
    path: str = "algebraic"

    def value(self) -> float:
        if not self.exists:
            raise TransitionUndefined(f"P(q|p) does not exist ({self.reason})")
        return float(self.s)

    def to_json(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {"exists": self.exists, "residual": self.residual, "path": self.path}
        if self.exists:
            doc["s"] = render_scalar(self.s)
        if self.reason:
            doc["reason"] = self.reason
        return doc


@dataclass
class IsoclinicReport:
    forward: TransitionResult
    backward: TransitionResult
    isoclinic: bool
    symmetry: Optional[JordanElement] = None
    symmetry_residual: Optional[float] = None
    reason: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "forward": self.forward.to_json(),
            "backward": self.backward.to_json(),
            "isoclinic": self.isoclinic,
            "symmetry": to_json(self.symmetry) if self.symmetry is not None else None,
        }
        if self.symmetry_residual is not None:
            doc["symmetry_residual"] = self.symmetry_residual
        if self.reason:
            doc["reason"] = self.reason
        return doc


@dataclass
class DecompositionReport:
    q_o: Projection
    q_1: Projection
    s: Any
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> Dict[str, Any]:
        return {
            "s": render_scalar(self.s),
            "q_o": self.q_o.to_json(),
            "q_1": self.q_1.to_json(),
            "q_1_zero": self.q_1.is_zero(),
            "checks": dict(self.checks),
            "valid": self.valid,
        }


@dataclass
class StructureReport:
    case: str
    s: Any
    dimension: int
    basis: List[JordanElement]
    witness: Optional[Dict[str, Any]] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "case": self.case,
            "s": render_scalar(self.s),
            "dimension": self.dimension,
            "basis": [to_json(b) for b in self.basis],
            "witness": self.witness,
        }


# ---------------------------------------------------------------------------
# Algebraic path
# ---------------------------------------------------------------------------

def _clamp(s):
    if isinstance(s, Fraction):
        return s
    s = float(s)
    if -EPS_TP <= s < 0.0:
        return 0.0
    if 1.0 < s <= 1.0 + EPS_TP:
        return 1.0
    return s


def transition_probability(p: Projection, q: Projection) -> TransitionResult:
    """P(q|p) from {p,q,p} = s p."""
    same_algebra(p, q)
    if p.is_zero():
        raise ZeroProjection("P(q|p) needs p != 0")
    pe = p.element
    t = triple_product(pe, q.element, pe)
    s = t.trace_form(pe) / pe.trace()
    diff = t - pe.scale(s)
    residual = diff.norm() / pe.norm()
    if p.exact:
        ok = diff.is_zero()
    else:
        ok = residual <= EPS_TP
    if not ok:
        return TransitionResult(False, None, residual, NOT_CONSTANT)
    return TransitionResult(True, _clamp(s), residual)


# ---------------------------------------------------------------------------
# Spectral oracle
# ---------------------------------------------------------------------------

def compression_eigenvalues(p: Projection, q: Projection) -> np.ndarray:
    """Eigenvalues of V* Q V, V an orthonormal basis of range(p). Over H each
    value appears twice (the representation doubles every eigenspace)."""
    if not p.associative:
        raise OracleUnavailable("spectral oracle needs an associative factor; H_n(O) has no representation")
    v = range_basis(p)
    mq = to_complex_matrix(q.element)
    return np.linalg.eigvalsh(v.conj().T @ mq @ v)


def transition_oracle(p: Projection, q: Projection) -> TransitionResult:
    """P(q|p) as a scalar compression of q to range(p)."""
    same_algebra(p, q)
    if not p.associative:
        raise OracleUnavailable("spectral oracle needs an associative factor; H_n(O) has no representation")
    if p.is_zero():
        raise ZeroProjection("P(q|p) needs p != 0")
    ev = compression_eigenvalues(p, q)
    spread = float(ev[-1] - ev[0])
    if spread > EPS_ORACLE:
        return TransitionResult(False, None, spread, SPREAD, path="oracle")
    return TransitionResult(True, _clamp(float(np.mean(ev))), spread, path="oracle")


# ---------------------------------------------------------------------------
# Isoclinic pairs and the exchange symmetry
# ---------------------------------------------------------------------------

def _same_value(a: TransitionResult, b: TransitionResult) -> bool:
    if isinstance(a.s, Fraction) and isinstance(b.s, Fraction):
        return a.s == b.s
    return abs(float(a.s) - float(b.s)) <= EPS_TP


def exchange_symmetry(p: Projection, q: Projection, s) -> JordanElement:
    """v = I - (p + q - (2/sqrt s) p o q) / (1 - sqrt s) for an isoclinic pair
    with 0 < s < 1. It lies in span{I, p, q, p o q}, acts as the identity off
    the unit of A_{p,q}, and as the reflection [[c, r], [r, -c]] (c = sqrt s)
    on each 2 x 2 block. Exact when sqrt(s) is rational."""
    root = exact_sqrt(s) if isinstance(s, Fraction) else None
    a, b = p.element, q.element
    if root is None:
        a, b = a.to_float(), b.to_float()
        root = float(s) ** 0.5
    pq = a.jordan(b)
    inner = (a + b - pq.scale(2 / root)).scale(1 / (1 - root))
    return a.identity_like() - inner


def isoclinic_analysis(p: Projection, q: Projection) -> IsoclinicReport:
    if p.is_zero() or q.is_zero():
        raise ZeroProjection("isoclinic_analysis needs p != 0 and q != 0")
    fwd = transition_probability(p, q)
    back = transition_probability(q, p)
    if not (fwd.exists and back.exists):
        return IsoclinicReport(fwd, back, False, reason=NOT_BIDIRECTIONAL)
    if not _same_value(fwd, back):
        return IsoclinicReport(fwd, back, False, reason=VALUES_DIFFER)
    s = fwd.s
    if float(s) <= EPS_TP or float(s) >= 1.0 - EPS_TP:
        return IsoclinicReport(fwd, back, True, reason=BOUNDARY)

    v = exchange_symmetry(p, q, s)
    a = p.element if v.exact else p.element.to_float()
    b = q.element if v.exact else q.element.to_float()
    residual = max(
        (v.jordan(v) - v.identity_like()).norm(),
        (triple_product(v, a, v) - b).norm(),
        (triple_product(v, b, v) - a).norm(),
    )
    if residual > SYMMETRY_TOL:
        return IsoclinicReport(fwd, back, True, None, residual, SYMMETRY_RESIDUAL)
    return IsoclinicReport(fwd, back, True, v, residual)


# ---------------------------------------------------------------------------
# Decomposition q = q_o + q_1
# ---------------------------------------------------------------------------

def _is_zero_value(s) -> bool:
    if isinstance(s, Fraction):
        return s == 0
    return abs(float(s)) <= EPS_TP


def _is_one_value(s) -> bool:
    if isinstance(s, Fraction):
        return s == 1
    return abs(float(s) - 1.0) <= EPS_TP


def decompose(p: Projection, q: Projection) -> DecompositionReport:
    """q_o = {q,p,q} / s, q_1 = q - q_o, with the decomposition's clauses checked:
    both parts are projections, q_o <= q, q_1 is orthogonal to p, and
    P(q_o|p) = P(p|q_o) = s."""
    r = transition_probability(p, q)
    if not r.exists:
        raise TransitionUndefined(f"decompose needs P(q|p) to exist ({r.reason})")
    if _is_zero_value(r.s):
        raise TransitionUndefined("decompose needs P(q|p) != 0")
    s = r.s
    qe = q.element
    inv = (1 / s) if isinstance(s, Fraction) else 1.0 / float(s)
    qo_el = triple_product(qe, p.element, qe).scale(inv)
    q1_el = qe - qo_el
    q_o = Projection(qo_el, check=False)
    q_1 = Projection(q1_el, check=False)

    def idempotent(x: JordanElement) -> bool:
        return (x.jordan(x) - x).is_zero(tolerance_for(qe))

    checks = {
        "q_o_projection": idempotent(qo_el),
        "q_1_projection": idempotent(q1_el),
        "q_o_leq_q": leq(q_o, q),
        "q_1_orthogonal_p": is_orthogonal(q_1, p),
    }
    fwd = transition_probability(p, q_o)
    back = transition_probability(q_o, p) if not q_o.is_zero() else TransitionResult(False)
    checks["p_to_q_o"] = fwd.exists and _same_value(fwd, r)
    checks["q_o_to_p"] = back.exists and _same_value(back, r)
    return DecompositionReport(q_o, q_1, s, checks)


# ---------------------------------------------------------------------------
# Structure of A_{p,q}
# ---------------------------------------------------------------------------

def _two_by_two(s: float):
    """The H_2(R) pair a = diag(1, 0), b = [[s, r], [r, 1 - s]], r = sqrt(s(1-s))."""
    r = (s * (1.0 - s)) ** 0.5
    a = HermitianElement("R", np.array([[1.0, 0.0], [0.0, 0.0]])[:, :, None])
    b = HermitianElement("R", np.array([[s, r], [r, 1.0 - s]])[:, :, None])
    return a, b


def isomorphism_witness(p: Projection, q_o: Projection, s) -> Dict[str, Any]:
    """Check that r1 p + r2 q_o + r3 p o q_o -> r1 a + r2 b + r3 a o b respects
    the Jordan product: every product of two basis elements, written back in
    the basis, must map to the product of the images."""
    x = [p.element.to_float(), q_o.element.to_float()]
    x.append(x[0].jordan(x[1]))
    a, b = _two_by_two(float(s))
    y = [a, b, a.jordan(b)]

    m = np.array([e.to_vector() for e in x], dtype=float).T
    worst = 0.0
    closure = 0.0
    for i in range(3):
        for j in range(i, 3):
            prod = np.asarray(x[i].jordan(x[j]).to_vector(), dtype=float)
            c, *_ = np.linalg.lstsq(m, prod, rcond=None)
            closure = max(closure, float(np.linalg.norm(m @ c - prod)))
            image = y[0].scale(float(c[0])) + y[1].scale(float(c[1])) + y[2].scale(float(c[2]))
            worst = max(worst, (image - y[i].jordan(y[j])).norm())
    tol = 1e-9 * max(1.0, p.element.to_float().norm())
    return {
        "basis": ["p", "q_o", "p o q_o"],
        "image": ["a", "b", "a o b"],
        "closure_residual": closure,
        "max_error": worst,
        "ok": worst <= tol and closure <= tol,
    }


def _nonzero(elements: Sequence[JordanElement]) -> List[JordanElement]:
    return [e for e in elements if not e.is_zero(tolerance_for(e))]


def case_tag(s) -> str:
    """The structure case a transition value puts a pair in."""
    if _is_zero_value(s):
        return ORTHOGONAL
    if _is_one_value(s):
        return SUBORDINATE
    return ISOCLINIC


def classify_pair(p: Projection, q: Projection) -> StructureReport:
    """orthogonal (s = 0), subordinate (s = 1) or isoclinic-plus-orthogonal."""
    r = transition_probability(p, q)
    if not r.exists:
        raise TransitionUndefined(f"classify_pair needs P(q|p) to exist ({r.reason})")
    s = r.s
    if _is_zero_value(s):
        gens = _nonzero([p.element, q.element])
        sub = generated_subalgebra(gens)
        return StructureReport(ORTHOGONAL, s, sub.dimension, gens)
    if _is_one_value(s):
        gens = _nonzero([p.element, q.element - p.element])
        sub = generated_subalgebra(gens)
        return StructureReport(SUBORDINATE, s, sub.dimension, gens)

    d = decompose(p, q)
    core = generated_subalgebra([p.element, d.q_o.element])
    witness = isomorphism_witness(p, d.q_o, s)
    witness["core_dimension"] = core.dimension
    witness["ok"] = witness["ok"] and core.dimension == 3
    if d.q_1.is_zero():
        return StructureReport(ISOCLINIC, s, core.dimension, core.basis, witness)
    full = generated_subalgebra([p.element, q.element])
    return StructureReport(ISOCLINIC, s, full.dimension, full.basis, witness)


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------

def trace_monotonicity_check(p: Projection, q: Projection) -> Dict[str, Any]:
    """trace(p) <= trace(q) when P(q|p) != 0 exists, with equality when P(p|q)
    exists too."""
    r = transition_probability(p, q)
    if not r.exists:
        raise TransitionUndefined(f"trace check needs P(q|p) to exist ({r.reason})")
    if _is_zero_value(r.s):
        raise TransitionUndefined("trace check needs P(q|p) != 0")
    tp, tq = p.trace(), q.trace()
    tol = 0 if p.exact else EPS_PROJ * max(1.0, float(tq))
    back = transition_probability(q, p)
    bidirectional = back.exists and _same_value(back, r)
    report: Dict[str, Any] = {
        "s": render_scalar(r.s),
        "trace_p": render_scalar(tp),
        "trace_q": render_scalar(tq),
        "monotone": bool(tp <= tq + tol),
        "bidirectional": bool(bidirectional),
        "equal": bool(abs(tp - tq) <= tol) if bidirectional else None,
    }
    report["ok"] = report["monotone"] and (report["equal"] is not False)
    return report


# ---------------------------------------------------------------------------
# State-based readings
# ---------------------------------------------------------------------------

def _unit(v: Sequence[complex]) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ZeroProjection("zero vector")
    return v / n


def pure_state_probability(xi: Sequence[complex], psi: Sequence[complex]) -> float:
    """|<xi|psi>|^2 for (normalized) complex vectors; equals P(q|p) and P(p|q)
    for their rank-one projections."""
    return float(abs(np.vdot(_unit(xi), _unit(psi))) ** 2)


def expectation_probability(xi: Sequence[complex], q: Projection) -> float:
    """<xi|q xi> for a unit vector xi in the complex representation of q."""
    x = _unit(xi)
    return float(np.real(np.vdot(x, to_complex_matrix(q.element) @ x)))


def atom_state(p: Projection, qs: Sequence[Projection]) -> List[Any]:
    """q -> P(q|p) over qs, for an atom p (where it always exists)."""
    if not is_atom(p):
        raise ValueError("atom_state needs an atom: {p, A, p} must equal R p")
    out = []
    for q in qs:
        r = transition_probability(p, q)
        if not r.exists:
            raise TransitionUndefined(f"P(q|p) missing for an atom ({r.reason}, residual {r.residual:.3g})")
        out.append(r.s)
    return out


def transition_table(projections: Sequence[Projection]) -> List[List[TransitionResult]]:
    """table[i][j] = P(projections[j] | projections[i]); zero rows left empty."""
    table = []
    for p in projections:
        row = []
        for q in projections:
            row.append(transition_probability(p, q) if not p.is_zero() else TransitionResult(False, reason="zero"))
        table.append(row)
    return table
