"""
The quantum logic L_A = {p in A : p o p = p} of a Jordan algebra A.

A Projection wraps a HermitianElement (or DirectSumElement) and is validated
once, at construction: ||p o p - p|| <= EPS_PROJ * max(1, ||p||) in floating
mode, exact equality in exact-rational mode. Every operation below assumes a
valid projection and never re-checks it.

Order, orthogonality and compatibility are all read off Jordan products:

    p <= q          iff  p o q = p
    p orthogonal q  iff  p o q = 0
    p compatible q  iff  p o (q o x) = q o (p o x) for every x in A

and since both sides of the last one are linear in x, checking the canonical
basis of A is enough.

Meets are the one place the engine leaves the Jordan product: for an
incompatible pair the range intersection is computed in the complex matrix
representation (null space of (I - p) + (I - q)). Octonionic factors have no
representation, so an incompatible octonionic meet is refused with
UnsupportedOperation rather than approximated. Compatible pairs never need
it: their meet is p o q.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg

from config import EPS_PROJ
from division_rings import DIM, DivisionRingElement, RingMismatch, conj_arrays, mul_arrays
from jordan import (
    DirectSumElement,
    HermitianElement,
    JordanElement,
    from_json,
    tolerance_for,
    to_complex_matrix,
    to_json,
    triple_product,
)


class NotAProjection(ValueError):
    """Element is not idempotent under the Jordan product."""


class ZeroProjection(ValueError):
    """An operation that needs p != 0 was given the zero projection."""


class NotOrthogonal(ValueError):
    """orthogonal_join on a pair with p o q != 0."""


class UnsupportedOperation(ValueError):
    """No finite procedure for this request (incompatible octonionic meet)."""


# Rationalizing a floating meet of exact inputs: denominators above this are
# treated as "the range is irrational".
_MAX_DENOMINATOR = 10 ** 6


class Projection:
    """An idempotent element of a Jordan algebra; element of L_A."""

    __slots__ = ("element",)

    def __init__(self, element: JordanElement, check: bool = True):
        if not isinstance(element, (HermitianElement, DirectSumElement)):
            raise TypeError(f"Projection wraps a Jordan element, got {type(element).__name__}")
        if check:
            residual = element.jordan(element) - element
            tol = tolerance_for(element)
            if not residual.is_zero(tol):
                raise NotAProjection(
                    f"p o p != p (residual {residual.norm():.3g}, tolerance {tol:.3g})"
                )
        self.element = element

    @property
    def exact(self) -> bool:
        return self.element.exact

    @property
    def associative(self) -> bool:
        return self.element.associative

    @property
    def descriptor(self):
        return self.element.descriptor

    @property
    def rank(self) -> int:
        """trace(p), which for matrix factors is the rank."""
        return int(round(float(self.element.trace())))

    def trace(self):
        return self.element.trace()

    def is_zero(self) -> bool:
        return self.element.is_zero(tolerance_for(self.element))

    def equals(self, other: "Projection", eps: float = EPS_PROJ) -> bool:
        return (self.element - other.element).is_zero(tolerance_for(self.element, eps))

    def to_float(self) -> "Projection":
        return Projection(self.element.to_float(), check=False)

    def to_json(self) -> Dict[str, Any]:
        doc = to_json(self.element)
        doc["kind"] = "projection"
        return doc

    def __repr__(self) -> str:
        return f"Projection({self.element!r}, rank={self.rank})"


def projection_from_json(doc: Dict[str, Any]) -> Projection:
    kind = doc.get("kind", "projection") if isinstance(doc, dict) else None
    if kind != "projection":
        raise ValueError(f"expected a projection document, got kind={kind!r}")
    return Projection(from_json(doc))


def same_algebra(p: Projection, q: Projection) -> None:
    if p.descriptor != q.descriptor:
        raise RingMismatch(f"projections live in different algebras: {p.descriptor} vs {q.descriptor}")
    if p.exact != q.exact:
        raise RingMismatch("scalar-mode mismatch: exact-rational vs floating projection")


def _tol(p: Projection) -> float:
    return tolerance_for(p.element)


# ---------------------------------------------------------------------------
# Lattice operations
# ---------------------------------------------------------------------------

def identity_projection(p: Projection) -> Projection:
    return Projection(p.element.identity_like(), check=False)


def zero_projection(p: Projection) -> Projection:
    return Projection(p.element.zero_like(), check=False)


def orthocomplement(p: Projection) -> Projection:
    """p' = I - p."""
    return Projection(p.element.identity_like() - p.element, check=False)


def leq(p: Projection, q: Projection) -> bool:
    same_algebra(p, q)
    return (p.element.jordan(q.element) - p.element).is_zero(_tol(p))


def is_orthogonal(p: Projection, q: Projection) -> bool:
    same_algebra(p, q)
    return p.element.jordan(q.element).is_zero(_tol(p))


def is_compatible(p: Projection, q: Projection) -> bool:
    """p and q operator-commute on every canonical basis element of A."""
    same_algebra(p, q)
    a, b = p.element, q.element
    tol = _tol(p)
    for x in a.basis():
        if not (a.jordan(b.jordan(x)) - b.jordan(a.jordan(x))).is_zero(tol):
            return False
    return True


def _rationalize(x: JordanElement) -> JordanElement:
    if isinstance(x, DirectSumElement):
        return DirectSumElement([_rationalize(b) for b in x.blocks])
    conv = np.vectorize(lambda v: Fraction(float(v)).limit_denominator(_MAX_DENOMINATOR), otypes=[object])
    return HermitianElement(x.ring, conv(x.data), check=False)


def meet(p: Projection, q: Projection) -> Projection:
    """p ^ q: projection onto range(p) n range(q). Direct sums meet block by
    block, so an octonionic factor is only refused when its own pair of
    blocks is incompatible."""
    same_algebra(p, q)
    if isinstance(p.element, DirectSumElement):
        blocks = [
            meet(Projection(a, check=False), Projection(b, check=False)).element
            for a, b in zip(p.element.blocks, q.element.blocks)
        ]
        return Projection(DirectSumElement(blocks), check=False)
    if is_compatible(p, q):
        r = p.element.jordan(q.element)
        return Projection(r)
    if not p.associative:
        raise UnsupportedOperation(
            "meet of an incompatible pair in an octonionic factor: no matrix representation to compute ranges"
        )
    mp = to_complex_matrix(p.element)
    mq = to_complex_matrix(q.element)
    eye = np.eye(mp.shape[0])
    basis = scipy.linalg.null_space((eye - mp) + (eye - mq), rcond=EPS_PROJ)
    m = basis @ basis.conj().T
    floated = p.element.to_float().from_complex_like(m)
    if not p.exact:
        return Projection(floated)
    exact = _rationalize(floated)
    result = Projection(exact.zero_like()) if exact.is_zero() else None
    if result is None:
        try:
            result = Projection(exact)
        except NotAProjection as e:
            raise UnsupportedOperation(
                "meet of an exact pair has an irrational range; convert the inputs with to_float()"
            ) from e
    if not (leq(result, p) and leq(result, q)):
        raise UnsupportedOperation(
            "meet of an exact pair has an irrational range; convert the inputs with to_float()"
        )
    return result


def orthogonal_join(p: Projection, q: Projection) -> Projection:
    """p + q for p orthogonal to q (the only joins this logic computes)."""
    if not is_orthogonal(p, q):
        raise NotOrthogonal("orthogonal_join needs p o q = 0")
    return Projection(p.element + q.element, check=False)


def is_atom(p: Projection) -> bool:
    """{p, A, p} = R p, checked on the canonical basis."""
    if p.is_zero():
        raise ZeroProjection("is_atom needs p != 0")
    e = p.element
    pp = e.trace_form(e)
    tol = _tol(p)
    for x in e.basis():
        t = triple_product(e, x, e)
        c = t.trace_form(e) / pp
        if not (t - e.scale(c)).is_zero(tol):
            return False
    return True


# ---------------------------------------------------------------------------
# Rank-one projections from vectors
# ---------------------------------------------------------------------------

def _vector_coords(ring: str, vector: Sequence[Any]) -> np.ndarray:
    rows = []
    for v in vector:
        if isinstance(v, DivisionRingElement):
            if v.ring != ring:
                raise RingMismatch(f"vector entry from {v.ring} for an H_n({ring}) projection")
            rows.append(list(v.coords))
        elif isinstance(v, complex) or isinstance(v, np.complexfloating):
            if ring != "C":
                raise RingMismatch(f"complex vector entry for an H_n({ring}) projection")
            rows.append([float(v.real), float(v.imag)])
        else:
            c = v if isinstance(v, Fraction) else float(v)
            rows.append([c] + [type(c)(0)] * (DIM[ring] - 1))
    exact = all(isinstance(c, Fraction) for r in rows for c in r)
    return np.array(rows, dtype=object if exact else float)


def rank_one_projection(vector: Sequence[Any], ring: str = "C") -> Projection:
    """v v* / |v|^2. Entries may be reals, Python complex numbers (ring C) or
    DivisionRingElements; an all-Fraction vector gives an exact projection.
    Over O this is a projection only when the entries lie in an associative
    subalgebra, and construction validates that."""
    v = _vector_coords(ring, vector)
    n2 = np.sum(v * v)
    if n2 == 0:
        raise ZeroProjection("rank_one_projection of the zero vector")
    n = v.shape[0]
    out = np.empty((n, n, DIM[ring]), dtype=v.dtype)
    for a in range(n):
        for b in range(n):
            out[a, b] = mul_arrays(v[a], conj_arrays(v[b], ring), ring) / n2
    return Projection(HermitianElement(ring, out))


def projection_from_complex(m: np.ndarray, ring: str = "C") -> Projection:
    """A complex (or real) matrix that is a projection, as an element of H_n(ring)."""
    m = np.asarray(m, dtype=complex)
    if ring == "R":
        return Projection(HermitianElement("R", m.real[:, :, None]))
    if ring == "C":
        return Projection(HermitianElement("C", np.stack([m.real, m.imag], axis=-1)))
    raise ValueError(f"projection_from_complex handles R and C, not {ring}")


def range_basis(p: Projection) -> np.ndarray:
    """Orthonormal columns spanning range(p) in the complex representation."""
    m = to_complex_matrix(p.element)
    w, v = np.linalg.eigh(m)
    return v[:, w > 0.5]
