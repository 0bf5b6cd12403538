"""
Hermitian matrix Jordan algebras H_n(K), K in {R, C, H, O} (n <= 3 for O),
and finite direct sums of them.

An element is stored as a numpy array of shape (n, n, d): entry (r, c) is the
d coordinates of a division-ring number (see division_rings.py). Float arrays
are floating mode; object arrays of Fractions are exact-rational mode. The
matrix product is only ever used inside the Jordan product

    x o y = (x y + y x) / 2

and everything else -- the triple product, powers, the order cone, generated
subalgebras -- is built from x o y. In particular

    {x, y, z} = x o (y o z) - y o (z o x) + z o (x o y)

is never replaced by the matrix product x y z: over O the matrix product is not
associative and x y x is not a Jordan triple product there.

Two numerical facts the rest of the engine leans on:

  * trace(x o y) is the coordinate dot product of the two (n, n, d) arrays, so
    flattening an element gives an orthonormal-coordinates vector for the trace
    form. Rank detection and orthonormal bases are then plain SVD.
  * Over R, C and H an element has a complex matrix representation (H via the
    2n x 2n symplectic embedding). Positivity, meets and the spectral oracle
    use it. H_3(O) has no such representation; its positivity goes through the
    cubic characteristic polynomial instead.

Direct sums are block lists (DirectSumElement), never one embedded matrix, so an
octonionic factor and an associative factor stay separate.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from config import EPS_HERMITIAN, EPS_PROJ, RANK_RTOL
from division_rings import (
    ASSOCIATIVE,
    DIM,
    DivisionRingElement,
    RingMismatch,
    conj_transpose_arrays,
    matmul_arrays,
    mul_arrays,
    parse_scalar,
    render_scalar,
)


class NotHermitian(ValueError):
    """Input matrix is not equal to its conjugate transpose."""


class NoRepresentation(ValueError):
    """Octonionic elements have no associative matrix representation."""


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    ring: str
    n: int

    def __post_init__(self) -> None:
        if self.ring not in DIM:
            raise ValueError(f"unknown ring {self.ring!r}")
        if self.n < 1:
            raise ValueError(f"matrix size must be positive, got {self.n}")
        if self.ring == "O" and self.n > 3:
            raise ValueError(f"H_{self.n}(O) is not a Jordan algebra; octonionic factors need n <= 3")

    @property
    def dimension(self) -> int:
        """Real dimension of H_n(K)."""
        return self.n + self.n * (self.n - 1) // 2 * DIM[self.ring]

    def to_json(self) -> Dict[str, Any]:
        return {"ring": self.ring, "n": self.n}


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A = H_{n_1}(K_1) + ... + H_{n_k}(K_k)."""

    factors: Tuple[Factor, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("an algebra needs at least one factor")

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors)

    @property
    def associative(self) -> bool:
        return all(f.ring in ASSOCIATIVE for f in self.factors)

    def to_json(self) -> Dict[str, Any]:
        return {"factors": [f.to_json() for f in self.factors]}


# ---------------------------------------------------------------------------
# HermitianElement
# ---------------------------------------------------------------------------

def _half(exact: bool):
    return Fraction(1, 2) if exact else 0.5


def _zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out[...] = Fraction(0)
        return out
    return np.zeros(shape)


class HermitianElement:
    """An n x n matrix over a division ring equal to its conjugate transpose.

    Immutable: the coordinate array is made read-only on construction. Build
    new elements with the arithmetic below, never by editing .data."""

    __slots__ = ("ring", "data")

    def __init__(self, ring: str, data: np.ndarray, check: bool = True):
        if ring not in DIM:
            raise ValueError(f"unknown ring {ring!r}")
        data = np.asarray(data)
        if data.ndim != 3 or data.shape[0] != data.shape[1] or data.shape[2] != DIM[ring]:
            raise ValueError(f"{ring} element needs shape (n, n, {DIM[ring]}), got {data.shape}")
        if ring == "O" and data.shape[0] > 3:
            raise ValueError(f"octonionic Hermitian matrices are limited to n <= 3, got n={data.shape[0]}")
        if data.dtype != object:
            data = data.astype(float)
        if check:
            data = _checked_hermitian(ring, data)
        data.flags.writeable = False
        self.ring = ring
        self.data = data

    # -- shape / mode -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def exact(self) -> bool:
        return self.data.dtype == object

    @property
    def associative(self) -> bool:
        return self.ring in ASSOCIATIVE

    @property
    def descriptor(self) -> AlgebraDescriptor:
        return AlgebraDescriptor((Factor(self.ring, self.n),))

    def _like(self, data: np.ndarray) -> "HermitianElement":
        return HermitianElement(self.ring, data, check=False)

    def _check(self, other: "HermitianElement") -> None:
        if not isinstance(other, HermitianElement):
            raise RingMismatch(f"cannot combine a single factor with {type(other).__name__}")
        if self.ring != other.ring or self.n != other.n:
            raise RingMismatch(f"H_{self.n}({self.ring}) vs H_{other.n}({other.ring})")
        if self.exact != other.exact:
            raise RingMismatch("scalar-mode mismatch: exact-rational vs floating")

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "HermitianElement") -> "HermitianElement":
        self._check(other)
        return self._like(self.data + other.data)

    def __sub__(self, other: "HermitianElement") -> "HermitianElement":
        self._check(other)
        return self._like(self.data - other.data)

    def __neg__(self) -> "HermitianElement":
        return self._like(-self.data)

    def scale(self, r) -> "HermitianElement":
        if self.exact and isinstance(r, float):
            raise RingMismatch("scaling an exact element by a float; convert with to_float() first")
        return self._like(self.data * r)

    # -- products -----------------------------------------------------------

    def matmul(self, other: "HermitianElement") -> np.ndarray:
        """Raw matrix product (not Hermitian in general); internal use."""
        self._check(other)
        return matmul_arrays(self.data, other.data, self.ring)

    def jordan(self, other: "HermitianElement") -> "HermitianElement":
        self._check(other)
        xy = matmul_arrays(self.data, other.data, self.ring)
        yx = matmul_arrays(other.data, self.data, self.ring)
        return self._like((xy + yx) * _half(self.exact))

    # -- scalars ------------------------------------------------------------

    def trace(self):
        return sum((self.data[i, i, 0] for i in range(self.n)), Fraction(0) if self.exact else 0.0)

    def trace_form(self, other: "HermitianElement"):
        self._check(other)
        return np.sum(self.data * other.data)

    def norm(self) -> float:
        return float(self.trace_form(self)) ** 0.5

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return bool(np.all(self.data == 0))
        return self.norm() <= tol

    # -- vectors / bases ----------------------------------------------------

    def to_vector(self) -> np.ndarray:
        return self.data.reshape(-1)

    def like_vector(self, vec: np.ndarray) -> "HermitianElement":
        return self._like(np.asarray(vec).reshape(self.data.shape))

    def identity_like(self) -> "HermitianElement":
        return identity(self.ring, self.n, self.exact)

    def zero_like(self) -> "HermitianElement":
        return zero(self.ring, self.n, self.exact)

    def basis(self) -> List["HermitianElement"]:
        return canonical_basis(self.ring, self.n, self.exact)

    def to_float(self) -> "HermitianElement":
        if not self.exact:
            return self
        return self._like(self.data.astype(float))

    # -- representations ----------------------------------------------------

    def complex_matrix(self) -> np.ndarray:
        return to_complex_matrix(self)

    def from_complex_like(self, m: np.ndarray) -> "HermitianElement":
        return from_complex_representation(m, self.ring)

    def entry(self, r: int, c: int) -> DivisionRingElement:
        return DivisionRingElement.from_array(self.ring, self.data[r, c])

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"HermitianElement(H_{self.n}({self.ring}), {mode})"


def _checked_hermitian(ring: str, data: np.ndarray) -> np.ndarray:
    ct = conj_transpose_arrays(data, ring)
    if data.dtype == object:
        if not np.all(data == ct):
            raise NotHermitian(f"H_{data.shape[0]}({ring}) input is not equal to its conjugate transpose")
        return data.copy()
    scale = max(1.0, float(np.max(np.abs(data))) if data.size else 1.0)
    dev = float(np.max(np.abs(data - ct))) if data.size else 0.0
    if dev > EPS_HERMITIAN * scale:
        raise NotHermitian(
            f"H_{data.shape[0]}({ring}) input deviates from its conjugate transpose by {dev:.3g}"
        )
    return (data + ct) / 2.0


# ---------------------------------------------------------------------------
# DirectSumElement
# ---------------------------------------------------------------------------

class DirectSumElement:
    """An element of H_{n_1}(K_1) + ... + H_{n_k}(K_k), kept as a block list."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: Sequence[HermitianElement]):
        blocks = tuple(blocks)
        if not blocks:
            raise ValueError("a direct sum needs at least one block")
        if len({b.exact for b in blocks}) > 1:
            raise RingMismatch("direct-sum blocks mix exact-rational and floating mode")
        self.blocks = blocks

    @property
    def exact(self) -> bool:
        return self.blocks[0].exact

    @property
    def associative(self) -> bool:
        return all(b.associative for b in self.blocks)

    @property
    def descriptor(self) -> AlgebraDescriptor:
        return AlgebraDescriptor(tuple(Factor(b.ring, b.n) for b in self.blocks))

    def _check(self, other: "DirectSumElement") -> None:
        if not isinstance(other, DirectSumElement) or other.descriptor != self.descriptor:
            raise RingMismatch("direct-sum operands have different factor lists")

    def _zip(self, other, fn) -> "DirectSumElement":
        self._check(other)
        return DirectSumElement([fn(a, b) for a, b in zip(self.blocks, other.blocks)])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return DirectSumElement([-b for b in self.blocks])

    def scale(self, r):
        return DirectSumElement([b.scale(r) for b in self.blocks])

    def jordan(self, other):
        return self._zip(other, lambda a, b: a.jordan(b))

    def trace(self):
        return sum((b.trace() for b in self.blocks[1:]), self.blocks[0].trace())

    def trace_form(self, other):
        self._check(other)
        return sum((a.trace_form(b) for a, b in zip(self.blocks[1:], other.blocks[1:])),
                   self.blocks[0].trace_form(other.blocks[0]))

    def norm(self) -> float:
        return float(self.trace_form(self)) ** 0.5

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return all(b.is_zero() for b in self.blocks)
        return self.norm() <= tol

    def to_vector(self) -> np.ndarray:
        return np.concatenate([b.to_vector() for b in self.blocks])

    def like_vector(self, vec: np.ndarray) -> "DirectSumElement":
        out, at = [], 0
        for b in self.blocks:
            size = b.data.size
            out.append(b.like_vector(vec[at:at + size]))
            at += size
        return DirectSumElement(out)

    def identity_like(self):
        return DirectSumElement([b.identity_like() for b in self.blocks])

    def zero_like(self):
        return DirectSumElement([b.zero_like() for b in self.blocks])

    def basis(self) -> List["DirectSumElement"]:
        out = []
        zeros = [b.zero_like() for b in self.blocks]
        for i, b in enumerate(self.blocks):
            for e in b.basis():
                out.append(DirectSumElement(zeros[:i] + [e] + zeros[i + 1:]))
        return out

    def to_float(self):
        return DirectSumElement([b.to_float() for b in self.blocks])

    def complex_matrix(self) -> np.ndarray:
        return scipy.linalg.block_diag(*[to_complex_matrix(b) for b in self.blocks])

    def from_complex_like(self, m: np.ndarray) -> "DirectSumElement":
        out, at = [], 0
        for b in self.blocks:
            size = to_complex_matrix(b.zero_like().to_float()).shape[0]
            out.append(from_complex_representation(m[at:at + size, at:at + size], b.ring))
            at += size
        return DirectSumElement(out)

    def __repr__(self) -> str:
        parts = " + ".join(f"H_{b.n}({b.ring})" for b in self.blocks)
        return f"DirectSumElement({parts})"


JordanElement = Union[HermitianElement, DirectSumElement]


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def identity(ring: str, n: int, exact: bool = False) -> HermitianElement:
    data = _zeros((n, n, DIM[ring]), exact)
    for i in range(n):
        data[i, i, 0] = Fraction(1) if exact else 1.0
    return HermitianElement(ring, data, check=False)


def zero(ring: str, n: int, exact: bool = False) -> HermitianElement:
    return HermitianElement(ring, _zeros((n, n, DIM[ring]), exact), check=False)


def matrix_unit(ring: str, n: int, i: int, j: int, k: int = 0, exact: bool = False) -> HermitianElement:
    """E_ii for i == j; otherwise e_k at (i, j) and conj(e_k) at (j, i)."""
    data = _zeros((n, n, DIM[ring]), exact)
    one = Fraction(1) if exact else 1.0
    if i == j:
        data[i, i, 0] = one
    else:
        data[i, j, k] = one
        data[j, i, k] = one if k == 0 else -one
    return HermitianElement(ring, data, check=False)


def canonical_basis(ring: str, n: int, exact: bool = False) -> List[HermitianElement]:
    """Trace-orthogonal basis: the n diagonal units, then the symmetric
    off-diagonal units e_k at (i, j) / conj(e_k) at (j, i) for i < j."""
    out = [matrix_unit(ring, n, i, i, exact=exact) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(DIM[ring]):
                out.append(matrix_unit(ring, n, i, j, k, exact=exact))
    return out


def from_entries(ring: str, rows: Sequence[Sequence[Any]]) -> HermitianElement:
    """Build from a grid of DivisionRingElement / real scalars / JSON entries.
    Any floating entry makes the whole element floating."""
    n = len(rows)
    cells: List[List[Tuple]] = []
    for r in rows:
        if len(r) != n:
            raise ValueError(f"matrix rows must all have length {n}")
        row = []
        for e in r:
            if isinstance(e, DivisionRingElement):
                if e.ring != ring:
                    raise RingMismatch(f"entry from ring {e.ring} in an H_n({ring}) matrix")
                row.append(e.coords)
            elif isinstance(e, dict):
                row.append(DivisionRingElement.from_json(e).coords)
            else:
                v = parse_scalar(e)
                row.append((v,) + (type(v)(0),) * (DIM[ring] - 1))
        cells.append(row)
    exact = not any(isinstance(c, float) for row in cells for coords in row for c in coords)
    data = _zeros((n, n, DIM[ring]), exact)
    for a in range(n):
        for b in range(n):
            for k, c in enumerate(cells[a][b]):
                data[a, b, k] = Fraction(c) if exact else float(c)
    return HermitianElement(ring, data)


def from_real_matrix(m: Any, exact: bool = False) -> HermitianElement:
    m = np.asarray(m, dtype=object if exact else float)
    if exact:
        m = np.vectorize(lambda v: Fraction(v), otypes=[object])(m)
    return HermitianElement("R", m[:, :, None])


def from_complex_matrix(m: np.ndarray) -> HermitianElement:
    m = np.asarray(m, dtype=complex)
    return HermitianElement("C", np.stack([m.real, m.imag], axis=-1))


def to_complex_matrix(x: JordanElement) -> np.ndarray:
    """The complex matrix representation: R and C as themselves, H through the
    2n x 2n embedding z1 + z2 j -> [[z1, z2], [-conj(z2), conj(z1)]] per entry.
    Always float. Eigenvalues of an H element appear twice."""
    if isinstance(x, DirectSumElement):
        return x.complex_matrix()
    if x.ring == "O":
        raise NoRepresentation("H_n(O) has no associative matrix representation")
    d = np.asarray(x.data, dtype=float)
    if x.ring == "R":
        return d[:, :, 0].astype(complex)
    if x.ring == "C":
        return d[:, :, 0] + 1j * d[:, :, 1]
    n = x.n
    z1 = d[:, :, 0] + 1j * d[:, :, 1]
    z2 = d[:, :, 2] + 1j * d[:, :, 3]
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    m[0::2, 0::2] = z1
    m[0::2, 1::2] = z2
    m[1::2, 0::2] = -np.conj(z2)
    m[1::2, 1::2] = np.conj(z1)
    return m


def from_complex_representation(m: np.ndarray, ring: str) -> HermitianElement:
    """Inverse of to_complex_matrix. For H the two copies of each coordinate
    are averaged, which also projects a nearly-quaternionic matrix back onto
    the quaternionic ones."""
    m = np.asarray(m, dtype=complex)
    m = (m + m.conj().T) / 2.0
    if ring == "R":
        return HermitianElement("R", m.real[:, :, None])
    if ring == "C":
        return HermitianElement("C", np.stack([m.real, m.imag], axis=-1))
    if ring == "H":
        z1 = (m[0::2, 0::2] + np.conj(m[1::2, 1::2])) / 2.0
        z2 = (m[0::2, 1::2] - np.conj(m[1::2, 0::2])) / 2.0
        return HermitianElement("H", np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1))
    raise NoRepresentation("H_n(O) has no associative matrix representation")


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def jordan_product(x: JordanElement, y: JordanElement) -> JordanElement:
    return x.jordan(y)


def square(x: JordanElement) -> JordanElement:
    return x.jordan(x)


def triple_product(x: JordanElement, y: JordanElement, z: JordanElement) -> JordanElement:
    """{x,y,z} = x o (y o z) - y o (z o x) + z o (x o y)."""
    return x.jordan(y.jordan(z)) - y.jordan(z.jordan(x)) + z.jordan(x.jordan(y))


def trace(x: JordanElement):
    return x.trace()


def trace_form(x: JordanElement, y: JordanElement):
    """<x, y> = trace(x o y)."""
    return x.trace_form(y)


def norm(x: JordanElement) -> float:
    return x.norm()


def tolerance_for(x: JordanElement, eps: float = EPS_PROJ) -> float:
    """eps * max(1, ||x||), or exactly zero in exact mode."""
    if x.exact:
        return 0.0
    return eps * max(1.0, x.norm())


def is_close(x: JordanElement, y: JordanElement, eps: float = EPS_PROJ) -> bool:
    return (x - y).is_zero(tolerance_for(x, eps))


def characteristic_coefficients(x: HermitianElement) -> Tuple:
    """(e_1, ..., e_n) with char poly t^n - e_1 t^(n-1) + e_2 t^(n-2) - ... for
    n <= 3, computed from entries only (so valid over O). Exact in exact mode."""
    d = x.data
    n = x.n
    if n > 3:
        raise ValueError("closed-form characteristic coefficients only for n <= 3")
    diag = [d[i, i, 0] for i in range(n)]

    def n2(i, j):
        return np.sum(d[i, j] * d[i, j])

    if n == 1:
        return (diag[0],)
    if n == 2:
        return (diag[0] + diag[1], diag[0] * diag[1] - n2(0, 1))
    e1 = diag[0] + diag[1] + diag[2]
    e2 = diag[0] * diag[1] + diag[1] * diag[2] + diag[0] * diag[2] - n2(0, 1) - n2(1, 2) - n2(0, 2)
    # Re(x12 (x23 x31)) does not depend on the bracketing, even over O.
    cyc = mul_arrays(d[0, 1], mul_arrays(d[1, 2], d[2, 0], x.ring), x.ring)[0]
    e3 = (diag[0] * diag[1] * diag[2] + 2 * cyc
          - diag[0] * n2(1, 2) - diag[1] * n2(0, 2) - diag[2] * n2(0, 1))
    return (e1, e2, e3)


def eigenvalues(x: JordanElement) -> np.ndarray:
    """Sorted real eigenvalues (floats), with multiplicity."""
    if isinstance(x, DirectSumElement):
        return np.sort(np.concatenate([eigenvalues(b) for b in x.blocks]))
    if x.associative:
        ev = np.linalg.eigvalsh(to_complex_matrix(x))
        return ev[::2] if x.ring == "H" else ev
    coeffs = [float(c) for c in characteristic_coefficients(x)]
    poly = [1.0] + [(-1) ** (k + 1) * c for k, c in enumerate(coeffs)]
    return np.sort(np.real(np.roots(poly)))


def is_positive(x: JordanElement) -> bool:
    """x in the cone A_+ = {y o y}: all eigenvalues >= -tolerance. In exact mode,
    for n <= 3 the test is exact: a real-rooted characteristic polynomial has
    only non-negative roots iff every e_k >= 0."""
    if isinstance(x, DirectSumElement):
        return all(is_positive(b) for b in x.blocks)
    if x.exact and x.n <= 3:
        return all(c >= 0 for c in characteristic_coefficients(x))
    tol = EPS_PROJ * max(1.0, x.to_float().norm())
    return bool(eigenvalues(x.to_float())[0] >= -tol)


# ---------------------------------------------------------------------------
# Generated subalgebras
# ---------------------------------------------------------------------------

@dataclass
class Subalgebra:
    """A Jordan subalgebra, by a basis orthonormal for the trace form
    (orthogonal, not normalized, in exact mode -- square roots leave Q)."""

    parent: AlgebraDescriptor
    basis: List[JordanElement]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, x: JordanElement) -> np.ndarray:
        """Least-squares coefficients of x in the basis."""
        if not self.basis:
            return np.zeros(0)
        m = np.array([np.asarray(b.to_vector(), dtype=float) for b in self.basis])
        coeffs, *_ = np.linalg.lstsq(m.T, np.asarray(x.to_vector(), dtype=float), rcond=None)
        return coeffs

    def contains(self, x: JordanElement, eps: float = EPS_PROJ) -> bool:
        v = np.asarray(x.to_vector(), dtype=float)
        if not self.basis:
            return float(np.linalg.norm(v)) <= eps
        m = np.array([np.asarray(b.to_vector(), dtype=float) for b in self.basis])
        coeffs, *_ = np.linalg.lstsq(m.T, v, rcond=None)
        return float(np.linalg.norm(m.T @ coeffs - v)) <= eps * max(1.0, float(np.linalg.norm(v)))


def _orthonormal_rows(vectors: List[np.ndarray]) -> np.ndarray:
    m = np.array(vectors, dtype=float)
    if m.size == 0:
        return m.reshape(0, 0)
    _, sv, vt = np.linalg.svd(m, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        return vt[:0]
    rank = int(np.sum(sv > RANK_RTOL * sv[0]))
    return vt[:rank]


def _exact_orthogonal(vectors: List[np.ndarray], basis: List[np.ndarray]) -> List[np.ndarray]:
    """Gram-Schmidt over Q: extend `basis` (already orthogonal) by `vectors`."""
    out = list(basis)
    for v in vectors:
        w = np.array(v, dtype=object)
        for b in out:
            w = w - (np.dot(w, b) / np.dot(b, b)) * b
        if any(c != 0 for c in w):
            out.append(w)
    return out


def generated_subalgebra(generators: Sequence[JordanElement], include_unit: bool = False) -> Subalgebra:
    """The Jordan subalgebra generated by `generators` (plus I if include_unit).

    Fixed-point iteration: start from the span of the generators, add every
    Jordan product of two current basis elements, and stop once a round leaves
    the dimension unchanged. Terminates because the dimension is bounded by
    dim A. The unit is only included on request -- A_{a,b} need not contain I."""
    if not generators:
        raise ValueError("need at least one generator")
    template = generators[0]
    seed = list(generators) + ([template.identity_like()] if include_unit else [])
    for g in seed:
        if g.is_zero(tolerance_for(g)):
            raise ValueError("generators must be nonzero")

    if template.exact:
        basis = _exact_orthogonal([g.to_vector() for g in seed], [])
        while True:
            elems = [template.like_vector(b) for b in basis]
            prods = [elems[i].jordan(elems[j]).to_vector()
                     for i in range(len(elems)) for j in range(i, len(elems))]
            grown = _exact_orthogonal(prods, basis)
            if len(grown) == len(basis):
                break
            basis = grown
        return Subalgebra(template.descriptor, [template.like_vector(b) for b in basis])

    floated = template.to_float()
    rows = _orthonormal_rows([np.asarray(g.to_vector(), dtype=float) for g in seed])
    while True:
        elems = [floated.like_vector(r) for r in rows]
        prods = [elems[i].jordan(elems[j]).to_vector()
                 for i in range(len(elems)) for j in range(i, len(elems))]
        grown = _orthonormal_rows(list(rows) + prods)
        if len(grown) == len(rows):
            break
        rows = grown
    return Subalgebra(template.descriptor, [floated.like_vector(r) for r in rows])


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _block_rows(x: HermitianElement) -> List[List[Dict[str, Any]]]:
    return [[{"ring": x.ring, "coords": [render_scalar(c) for c in x.data[r, c_]]}
             for c_ in range(x.n)] for r in range(x.n)]


def to_json(x: JordanElement) -> Dict[str, Any]:
    blocks = x.blocks if isinstance(x, DirectSumElement) else (x,)
    return {
        "factors": [{"ring": b.ring, "n": b.n} for b in blocks],
        "blocks": [_block_rows(b) for b in blocks],
    }


def from_json(doc: Dict[str, Any]) -> JordanElement:
    """{"factors": [{"ring": "C", "n": 3}], "blocks": [[[entry, ...], ...]]};
    entries are division-ring JSON or bare real scalars."""
    try:
        factors, blocks = doc["factors"], doc["blocks"]
    except (KeyError, TypeError) as e:
        raise ValueError("Jordan element JSON needs 'factors' and 'blocks'") from e
    if len(factors) != len(blocks):
        raise ValueError(f"{len(factors)} factors but {len(blocks)} blocks")
    out = []
    for f, rows in zip(factors, blocks):
        factor = Factor(f["ring"], int(f["n"]))
        if len(rows) != factor.n:
            raise ValueError(f"factor H_{factor.n}({factor.ring}) given {len(rows)} rows")
        out.append(from_entries(factor.ring, rows))
    if len({b.exact for b in out}) > 1:
        out = [b.to_float() for b in out]
    return out[0] if len(out) == 1 else DirectSumElement(out)
