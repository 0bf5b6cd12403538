"""
Generators for projection pairs with a known transition probability.

The workhorse is the block construction in H_{m+n}(K): for u an m x n matrix
over K with u u* = I_m and 0 <= s <= 1,

    p = [[ I_m, 0 ],          q = [[ s I_m,            sqrt(s(1-s)) u ],
         [ 0,   0 ]]               [ sqrt(s(1-s)) u*,  (1-s) u* u     ]]

gives {p,q,p} = s p and {q,p,q} = s q, with p of rank m (so not an atom once
m > 1). Over O only m = 1, n = 2 is allowed, which lands in H_3(O); any two
octonions generate an associative subalgebra, so the construction still holds.

Exact-rational mode needs sqrt(s(1-s)) to be rational (s = 1/2, 1/5, 9/10, ...)
and an exact u; rational_isometry supplies one from 3-4-5 Givens rotations.
Floating mode takes any s and a seeded random u.

Supporting generators: the 2 x 2 real pair, the composite q = q_o + r with r
orthogonal to p (the decomposition workload), a strict rank-one subprojection
(non-existence witness), random projections/unitaries and conjugation.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import EPS_PROJ
from division_rings import (
    ASSOCIATIVE,
    DIM,
    DivisionRingElement,
    RingMismatch,
    conj_arrays,
    conj_transpose_arrays,
    exact_sqrt,
    matmul_arrays,
    mul_arrays,
    parse_scalar,
    render_scalar,
)
from jordan import HermitianElement, triple_product
from projection_logic import Projection, UnsupportedOperation, is_atom, rank_one_projection


def _zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out[...] = Fraction(0)
        return out
    return np.zeros(shape)


def _eye(ring: str, n: int, exact: bool) -> np.ndarray:
    out = _zeros((n, n, DIM[ring]), exact)
    for i in range(n):
        out[i, i, 0] = Fraction(1) if exact else 1.0
    return out


def _is_exact_array(a: np.ndarray) -> bool:
    return a.dtype == object


@dataclass
class ConstructionSpec:
    """(K, m, n, s, u[, w]): u is an (m, n, d) coordinate array with u u* = I_m;
    w, if given, is an (m+n, m+n, d) unitary the pair is conjugated by."""

    ring: str
    m: int
    n: int
    s: Any
    u: np.ndarray
    w: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.ring not in DIM:
            raise ValueError(f"unknown ring {self.ring!r}")
        if not (1 <= self.m <= self.n):
            raise ValueError(f"the construction needs 1 <= m <= n, got m={self.m}, n={self.n}")
        if self.ring == "O" and (self.m, self.n) != (1, 2):
            raise ValueError("octonionic construction is limited to m = 1, n = 2 (H_3(O))")
        self.s = parse_scalar(self.s) if not isinstance(self.s, (float, Fraction)) else self.s
        if not (0 <= self.s <= 1):
            raise ValueError(f"s must lie in [0, 1], got {self.s}")
        self.u = np.asarray(self.u)
        if self.u.shape != (self.m, self.n, DIM[self.ring]):
            raise ValueError(f"u needs shape ({self.m}, {self.n}, {DIM[self.ring]}), got {self.u.shape}")
        if self.w is not None and self.ring not in ASSOCIATIVE:
            raise UnsupportedOperation("conjugation is only supported in associative factors")

    @property
    def exact(self) -> bool:
        return isinstance(self.s, Fraction) and _is_exact_array(self.u) and (
            self.w is None or _is_exact_array(self.w))

    def to_json(self) -> Dict[str, Any]:
        doc = {
            "K": self.ring, "m": self.m, "n": self.n, "s": render_scalar(self.s),
            "u": [[{"ring": self.ring, "coords": [render_scalar(c) for c in self.u[a, t]]}
                   for t in range(self.n)] for a in range(self.m)],
        }
        if self.w is not None:
            doc["conjugated"] = True
        return doc


def _isometry_residual(u: np.ndarray, ring: str) -> Any:
    gram = matmul_arrays(u, conj_transpose_arrays(u, ring), ring)
    diff = gram - _eye(ring, u.shape[0], _is_exact_array(u))
    if _is_exact_array(diff):
        return 0.0 if np.all(diff == 0) else float(np.max(np.abs(diff.astype(float))))
    return float(np.max(np.abs(diff)))


# ---------------------------------------------------------------------------
# Isometries and unitaries
# ---------------------------------------------------------------------------

def _inner(v: np.ndarray, u: np.ndarray, ring: str) -> np.ndarray:
    """<v, u> = sum_t v_t conj(u_t), a ring element."""
    return np.sum(mul_arrays(v, conj_arrays(u, ring), ring), axis=0)


def _gram_schmidt(rows: np.ndarray, ring: str) -> np.ndarray:
    out: List[np.ndarray] = []
    for v in rows:
        w = v.copy()
        for u in out:
            c = _inner(w, u, ring)
            w = w - mul_arrays(c[None, :], u, ring)
        nrm = float(np.sqrt(np.sum(w * w)))
        if nrm < 1e-12:
            raise ValueError("random rows were linearly dependent; try another seed")
        out.append(w / nrm)
    return np.array(out)


def random_isometry(ring: str, m: int, n: int, seed: int) -> np.ndarray:
    """Seeded (m, n, d) array with u u* = I_m (Gram-Schmidt over K)."""
    if ring not in ASSOCIATIVE:
        raise UnsupportedOperation("random isometries are only generated over R, C, H")
    if m > n:
        raise ValueError(f"an isometry u u* = I_m needs m <= n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    return _gram_schmidt(rng.standard_normal((m, n, DIM[ring])), ring)


def random_unitary(ring: str, n: int, seed: int) -> np.ndarray:
    return random_isometry(ring, n, n, seed)


def rational_isometry(ring: str, m: int, n: int) -> np.ndarray:
    """Exact u with u u* = I_m: the first m rows of a chain of (3/5, 4/5) Givens
    rotations, column t then right-multiplied by the unit e_{(t+1) mod d}."""
    if m > n:
        raise ValueError(f"an isometry u u* = I_m needs m <= n, got m={m}, n={n}")
    c, s = Fraction(3, 5), Fraction(4, 5)
    q = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for t in range(n - 1):
        for row in q:
            a, b = row[t], row[t + 1]
            row[t], row[t + 1] = c * a - s * b, s * a + c * b
    d = DIM[ring]
    u = _zeros((m, n, d), True)
    for a in range(m):
        for t in range(n):
            u[a, t, (t + 1) % d] = q[a][t]
    return u


def conjugate(x: HermitianElement, w: np.ndarray) -> HermitianElement:
    """w* x w for a unitary coordinate array w (associative rings only)."""
    if x.ring not in ASSOCIATIVE:
        raise UnsupportedOperation("conjugation needs an associative factor")
    w = np.asarray(w)
    if _is_exact_array(w) != x.exact:
        raise RingMismatch("conjugator and element differ in scalar mode")
    out = matmul_arrays(matmul_arrays(conj_transpose_arrays(w, x.ring), x.data, x.ring), w, x.ring)
    return HermitianElement(x.ring, out)


# ---------------------------------------------------------------------------
# The block construction
# ---------------------------------------------------------------------------

def build_pair(spec: ConstructionSpec) -> Tuple[Projection, Projection]:
    ring, m, n, u = spec.ring, spec.m, spec.n, spec.u
    exact = spec.exact
    if exact:
        s = spec.s
        r = exact_sqrt(s * (1 - s))
        if r is None:
            raise ValueError(
                f"exact construction needs s(1-s) to be a rational square; s = {s} gives {s * (1 - s)}"
            )
    else:
        s = float(spec.s)
        r = (s * (1.0 - s)) ** 0.5
        u = u.astype(float)

    residual = _isometry_residual(u, ring)
    if residual > (0 if exact else EPS_PROJ):
        raise ValueError(f"u u* != I_m (max deviation {residual:.3g})")

    N = m + n
    one = Fraction(1) if exact else 1.0
    p = _zeros((N, N, DIM[ring]), exact)
    for i in range(m):
        p[i, i, 0] = one
    ut = conj_transpose_arrays(u, ring)
    q = _zeros((N, N, DIM[ring]), exact)
    for i in range(m):
        q[i, i, 0] = s
    q[:m, m:] = u * r
    q[m:, :m] = ut * r
    q[m:, m:] = matmul_arrays(ut, u, ring) * (1 - s)

    pe = HermitianElement(ring, p)
    qe = HermitianElement(ring, q)
    if spec.w is not None:
        w = spec.w if exact else np.asarray(spec.w, dtype=float)
        pe, qe = conjugate(pe, w), conjugate(qe, w)
    return Projection(pe), Projection(qe)


def spec_from_json(doc: Dict[str, Any]) -> ConstructionSpec:
    """{"K": "C", "m": 2, "n": 3, "s": "1/5", "u": [[entry, ...], ...],
    "seed": 42, "exact": false, "conjugate": false}. Without "u", an exact
    spec gets rational_isometry and a floating one a seeded random isometry."""
    ring, m, n = doc["K"], int(doc["m"]), int(doc["n"])
    s = parse_scalar(doc["s"])
    exact = bool(doc.get("exact", isinstance(s, Fraction)))
    if not exact:
        s = float(s)
    seed = int(doc.get("seed", 0))
    if "u" in doc:
        rows = doc["u"]
        u = np.array([[_coords(ring, e, exact) for e in row] for row in rows], dtype=object if exact else float)
    elif exact or ring == "O":
        u = rational_isometry(ring, m, n)
        if not exact:
            u = u.astype(float)
    else:
        u = random_isometry(ring, m, n, seed)
    w = None
    if doc.get("conjugate"):
        w = rational_isometry(ring, m + n, m + n) if exact else random_unitary(ring, m + n, seed + 1)
    return ConstructionSpec(ring, m, n, s, u, w)


def _coords(ring: str, entry: Any, exact: bool) -> List[Any]:
    if isinstance(entry, dict):
        coords = DivisionRingElement.from_json(entry).coords
    else:
        v = parse_scalar(entry)
        coords = (v,) + (type(v)(0),) * (DIM[ring] - 1)
    if len(coords) != DIM[ring]:
        raise ValueError(f"u entry for ring {ring} needs {DIM[ring]} coordinates")
    return [Fraction(c) if exact else float(c) for c in coords]


def two_by_two_pair(s: Any = Fraction(1, 2)) -> Tuple[Projection, Projection]:
    """a = diag(1, 0), b = [[s, r], [r, 1 - s]] in H_2(R), r = sqrt(s(1-s))."""
    s = parse_scalar(s) if not isinstance(s, (float, Fraction)) else s
    exact = isinstance(s, Fraction) and exact_sqrt(s * (1 - s)) is not None
    u = np.array([[[Fraction(1) if exact else 1.0]]], dtype=object if exact else float)
    return build_pair(ConstructionSpec("R", 1, 1, s if exact else float(s), u))


def octonion_example(u_pair: Sequence[DivisionRingElement], s: Any) -> Tuple[Projection, Projection]:
    """The construction in H_3(O) with u = (u_1, u_2), |u_1|^2 + |u_2|^2 = 1.
    Both identities {p,q,p} = s p and {q,p,q} = s q are verified through the
    Jordan triple product before returning."""
    if len(u_pair) != 2 or any(x.ring != "O" for x in u_pair):
        raise ValueError("octonion_example needs two octonions")
    total = u_pair[0].norm2() + u_pair[1].norm2()
    exact = all(x.exact for x in u_pair)
    if (total != 1) if exact else abs(float(total) - 1.0) > EPS_PROJ:
        raise ValueError(f"u must be a unit row: |u_1|^2 + |u_2|^2 = {total}")
    s = parse_scalar(s) if not isinstance(s, (float, Fraction)) else s
    if not exact:
        s = float(s)
    u = np.array([[list(u_pair[0].coords), list(u_pair[1].coords)]], dtype=object if exact else float)
    p, q = build_pair(ConstructionSpec("O", 1, 2, s, u))
    for a, b in ((p, q), (q, p)):
        t = triple_product(a.element, b.element, a.element)
        diff = t - a.element.scale(s)
        if not diff.is_zero(0.0 if exact else 1e-10 * max(1.0, a.element.norm())):
            raise ValueError(f"octonionic pair fails its triple-product identity (residual {diff.norm():.3g})")
    return p, q


# ---------------------------------------------------------------------------
# Composite and auxiliary instances
# ---------------------------------------------------------------------------

@dataclass
class CompositeInstance:
    p: Projection
    q: Projection
    q_o: Projection
    r: Projection


def _pad(x: np.ndarray, extra: int, exact: bool) -> np.ndarray:
    n, d = x.shape[0], x.shape[2]
    out = _zeros((n + extra, n + extra, d), exact)
    out[:n, :n] = x
    return out


def build_composite(spec: ConstructionSpec, extra: int = 1, conjugate_seed: Optional[int] = None) -> CompositeInstance:
    """q = q_o + r: the isoclinic pair (p, q_o) padded by `extra` dimensions and
    r the projection onto those, so r is orthogonal to p and q_o. With
    conjugate_seed the whole instance is conjugated by one random unitary."""
    if extra < 1:
        raise ValueError("the orthogonal block needs at least one dimension")
    p, q_o = build_pair(spec)
    ring, exact = p.element.ring, p.exact
    N = spec.m + spec.n + extra
    pd = _pad(np.asarray(p.element.data), extra, exact)
    qd = _pad(np.asarray(q_o.element.data), extra, exact)
    rd = _zeros((N, N, DIM[ring]), exact)
    for i in range(N - extra, N):
        rd[i, i, 0] = Fraction(1) if exact else 1.0
    els = [HermitianElement(ring, pd), HermitianElement(ring, qd), HermitianElement(ring, rd)]
    if conjugate_seed is not None:
        w = random_unitary(ring, N, conjugate_seed)
        els = [conjugate(e.to_float(), w) for e in els]
    pe, qoe, re_ = els
    return CompositeInstance(Projection(pe), Projection(qoe + re_), Projection(qoe), Projection(re_))


def random_projection(ring: str, n: int, rank: int, seed: int) -> Projection:
    """u* u for a seeded random rank x n isometry u."""
    if not 0 <= rank <= n:
        raise ValueError(f"rank must lie in [0, {n}], got {rank}")
    if rank == 0:
        return Projection(HermitianElement(ring, np.zeros((n, n, DIM[ring]))), check=False)
    u = random_isometry(ring, rank, n, seed)
    return Projection(HermitianElement(ring, matmul_arrays(conj_transpose_arrays(u, ring), u, ring)))


def strict_subprojection(p: Projection, seed: int) -> Projection:
    """A rank-one q with 0 != q < p: q = v v* / |v|^2 for v = p x, x random
    (small integers for an exact p, so q stays exact). Only for non-atomic p,
    where P(q|p) then fails to exist."""
    e = p.element
    if not isinstance(e, HermitianElement) or e.ring not in ASSOCIATIVE:
        raise UnsupportedOperation("strict_subprojection needs a single associative factor")
    if is_atom(p):
        raise ValueError("p is an atom: it has no strict nonzero subprojection")
    rng = np.random.default_rng(seed)
    d = DIM[e.ring]
    while True:
        if e.exact:
            x = np.vectorize(Fraction, otypes=[object])(rng.integers(-5, 6, size=(e.n, d)))
        else:
            x = rng.standard_normal((e.n, d))
        v = np.sum(mul_arrays(e.data, x[None, :, :], e.ring), axis=1)
        if any(c != 0 for c in v.reshape(-1)):
            break
    return rank_one_projection([DivisionRingElement.from_array(e.ring, row) for row in v], e.ring)
