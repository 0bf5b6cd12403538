"""
Arithmetic for the four coordinate rings R, C, H (quaternions) and O
(octonions), in floating or exact-rational coordinates.

One fixed multiplication table, built once at import by Cayley-Dickson doubling
from the reals. An element of the doubled ring is a pair (a, b) of elements of
the smaller ring, and

    (a, b) (c, d) = (a c - conj(d) b,  d a + b conj(c))
    conj((a, b))  = (conj(a), -b)

Coordinates are listed lower half first, so the basis is e_0 = 1 and

    C:  e_1 = i
    H:  e_1 = i, e_2 = j, e_3 = k = i j           (i j = k, j i = -k)
    O:  e_0..e_3 the quaternion units, e_4 = (0, 1), e_{4+t} = e_t e_4

Under this table e1 e2 = e3, (e1 e2) e4 = e7 and e1 (e2 e4) = -e7, which is the
non-associativity the rest of the engine has to respect. Every identity the
engine relies on (norm multiplicativity, alternativity, Artin's theorem) holds
for any admissible table; this one is fixed so results are reproducible.

Two layers live here:

  * DivisionRingElement -- one number, immutable, with the operations the
    module contract names (add, mul, conj, norm2, inverse).
  * *_arrays kernels -- the same multiplication applied coordinatewise to numpy
    arrays whose LAST axis holds the d coordinates. jordan.py builds matrix
    products on top of these, for float arrays and for object arrays of
    Fractions alike.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

Scalar = Union[float, Fraction]

RINGS = ("R", "C", "H", "O")
DIM: Dict[str, int] = {"R": 1, "C": 2, "H": 4, "O": 8}
ASSOCIATIVE = frozenset({"R", "C", "H"})

EXACT = "exact-rational"
FLOATING = "floating"


class RingMismatch(ValueError):
    """Operands from different rings, or one exact and one floating."""


# ---------------------------------------------------------------------------
# The multiplication table, by Cayley-Dickson doubling
# ---------------------------------------------------------------------------

def _cd_conj(x: Tuple) -> Tuple:
    return (x[0],) + tuple(-c for c in x[1:])


def _cd_add(x: Tuple, y: Tuple) -> Tuple:
    return tuple(a + b for a, b in zip(x, y))


def _cd_sub(x: Tuple, y: Tuple) -> Tuple:
    return tuple(a - b for a, b in zip(x, y))


def _cd_mul(x: Tuple, y: Tuple) -> Tuple:
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    return _cd_sub(_cd_mul(a, c), _cd_mul(_cd_conj(d), b)) + _cd_add(_cd_mul(d, a), _cd_mul(b, _cd_conj(c)))


def _build_table(d: int) -> List[Tuple[int, int, int, int]]:
    """(i, j, k, sign) with e_i e_j = sign * e_k, for every i, j."""
    table = []
    for i in range(d):
        for j in range(d):
            ei = tuple(1 if t == i else 0 for t in range(d))
            ej = tuple(1 if t == j else 0 for t in range(d))
            prod = _cd_mul(ei, ej)
            (k,) = [t for t, c in enumerate(prod) if c != 0]
            table.append((i, j, k, int(prod[k])))
    return table


TABLE: Dict[str, List[Tuple[int, int, int, int]]] = {r: _build_table(DIM[r]) for r in RINGS}

# Dense structure constants: STRUCTURE[r][i, j, k] = sign if e_i e_j = sign e_k.
STRUCTURE: Dict[str, np.ndarray] = {}
for _r in RINGS:
    _c = np.zeros((DIM[_r],) * 3)
    for _i, _j, _k, _s in TABLE[_r]:
        _c[_i, _j, _k] = _s
    STRUCTURE[_r] = _c


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def parse_scalar(value: Any) -> Scalar:
    """JSON scalar -> Fraction for "p/q" strings and ints, float for floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational scalar: {value!r}") from e
    raise ValueError(f"not a scalar: {value!r}")


def render_scalar(value: Scalar) -> Union[float, str]:
    """Fraction -> "p/q" (or "p" when integral); float unchanged."""
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def is_exact_scalar(value: Any) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def to_float(value: Scalar) -> float:
    return float(value)


def exact_sqrt(value: Fraction):
    """sqrt of a non-negative Fraction if it is a rational square, else None."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# Array kernels (last axis = coordinates)
# ---------------------------------------------------------------------------

def mul_arrays(a: np.ndarray, b: np.ndarray, ring: str) -> np.ndarray:
    """Coordinatewise ring product of two broadcastable coordinate arrays."""
    if ring == "R":
        return a * b
    if a.dtype != object and b.dtype != object:
        return np.einsum("...i,...j,ijk->...k", a, b, STRUCTURE[ring])
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.empty(shape, dtype=object)
    out[...] = Fraction(0)
    for i, j, k, sign in TABLE[ring]:
        out[..., k] = out[..., k] + sign * (a[..., i] * b[..., j])
    return out


def conj_arrays(a: np.ndarray, ring: str) -> np.ndarray:
    if ring == "R":
        return a.copy()
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def matmul_arrays(a: np.ndarray, b: np.ndarray, ring: str) -> np.ndarray:
    """Matrix product over the ring: a is (n, l, d), b is (l, m, d).

    Entry (r, c) is sum_t a[r, t] b[t, c] with the ring product, i.e. the
    ordinary matrix product. Over O it is still well defined entrywise; it is
    only the associativity of the matrix product that fails."""
    if ring == "R":
        return (a[:, :, 0] @ b[:, :, 0])[:, :, None]
    if a.dtype != object and b.dtype != object:
        partial = np.einsum("rti,tcj->rcij", a, b)
        return np.einsum("rcij,ijk->rck", partial, STRUCTURE[ring])
    n, m = a.shape[0], b.shape[1]
    out = np.empty((n, m, DIM[ring]), dtype=object)
    out[...] = Fraction(0)
    for i, j, k, sign in TABLE[ring]:
        out[:, :, k] = out[:, :, k] + sign * (a[:, :, i] @ b[:, :, j])
    return out


def conj_transpose_arrays(a: np.ndarray, ring: str) -> np.ndarray:
    return conj_arrays(np.transpose(a, (1, 0, 2)), ring)


# ---------------------------------------------------------------------------
# DivisionRingElement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DivisionRingElement:
    """A number in R, C, H or O. Coordinates are all Fractions (exact-rational
    mode) or all floats (floating mode); mixed input is promoted to floats."""

    ring: str
    coords: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.ring not in DIM:
            raise ValueError(f"unknown ring {self.ring!r}; expected one of {RINGS}")
        if len(self.coords) != DIM[self.ring]:
            raise ValueError(
                f"ring {self.ring} needs {DIM[self.ring]} coordinates, got {len(self.coords)}"
            )
        parsed = [parse_scalar(c) if not isinstance(c, (float, Fraction)) else c for c in self.coords]
        if any(isinstance(c, float) for c in parsed):
            parsed = [float(c) for c in parsed]
        object.__setattr__(self, "coords", tuple(parsed))

    @property
    def mode(self) -> str:
        return FLOATING if isinstance(self.coords[0], float) else EXACT

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def _check(self, other: "DivisionRingElement") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.mode != other.mode:
            raise RingMismatch(f"scalar-mode mismatch: {self.mode} vs {other.mode}")

    def __add__(self, other: "DivisionRingElement") -> "DivisionRingElement":
        return add(self, other)

    def __sub__(self, other: "DivisionRingElement") -> "DivisionRingElement":
        self._check(other)
        return DivisionRingElement(self.ring, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisionRingElement":
        return DivisionRingElement(self.ring, tuple(-a for a in self.coords))

    def __mul__(self, other: "DivisionRingElement") -> "DivisionRingElement":
        return mul(self, other)

    def scale(self, r: Scalar) -> "DivisionRingElement":
        return DivisionRingElement(self.ring, tuple(r * a for a in self.coords))

    def conj(self) -> "DivisionRingElement":
        return conj(self)

    def norm2(self) -> Scalar:
        return norm2(self)

    def inverse(self) -> "DivisionRingElement":
        return inverse(self)

    def real_part(self) -> Scalar:
        return self.coords[0]

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return all(c == 0 for c in self.coords)
        return all(abs(c) <= tol for c in self.coords)

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=object if self.exact else float)

    def to_json(self) -> Dict[str, Any]:
        return {"ring": self.ring, "coords": [render_scalar(c) for c in self.coords]}

    @classmethod
    def from_json(cls, doc: Dict[str, Any]) -> "DivisionRingElement":
        try:
            ring, coords = doc["ring"], doc["coords"]
        except (KeyError, TypeError) as e:
            raise ValueError(f"division-ring element needs 'ring' and 'coords': {doc!r}") from e
        return cls(ring, tuple(parse_scalar(c) for c in coords))

    @classmethod
    def from_array(cls, ring: str, arr: Sequence) -> "DivisionRingElement":
        return cls(ring, tuple(c if isinstance(c, Fraction) else float(c) for c in arr))


def add(x: DivisionRingElement, y: DivisionRingElement) -> DivisionRingElement:
    x._check(y)
    return DivisionRingElement(x.ring, tuple(a + b for a, b in zip(x.coords, y.coords)))


def mul(x: DivisionRingElement, y: DivisionRingElement) -> DivisionRingElement:
    x._check(y)
    out = [Fraction(0) if x.exact else 0.0] * DIM[x.ring]
    for i, j, k, sign in TABLE[x.ring]:
        out[k] = out[k] + sign * x.coords[i] * y.coords[j]
    return DivisionRingElement(x.ring, tuple(out))


def conj(x: DivisionRingElement) -> DivisionRingElement:
    return DivisionRingElement(x.ring, (x.coords[0],) + tuple(-c for c in x.coords[1:]))


def norm2(x: DivisionRingElement) -> Scalar:
    return sum((c * c for c in x.coords), Fraction(0) if x.exact else 0.0)


def norm(x: DivisionRingElement) -> float:
    return float(norm2(x)) ** 0.5


def inverse(x: DivisionRingElement) -> DivisionRingElement:
    n2 = norm2(x)
    if n2 == 0:
        raise ZeroDivisionError(f"inverse of zero in {x.ring}")
    return conj(x).scale(1 / n2 if not x.exact else Fraction(1) / n2)


def associator(x: DivisionRingElement, y: DivisionRingElement, z: DivisionRingElement) -> DivisionRingElement:
    """(xy)z - x(yz); identically zero on R, C, H, not on O."""
    return mul(mul(x, y), z) - mul(x, mul(y, z))


def _generators(x: DivisionRingElement, y: DivisionRingElement) -> List[DivisionRingElement]:
    x._check(y)
    return [x, y, conj(x), conj(y)]


def subalgebra_words(x: DivisionRingElement, y: DivisionRingElement, length: int = 2) -> List[DivisionRingElement]:
    """Every bracketed product of x, y, conj(x), conj(y) with at most `length`
    factors.

    By Artin's theorem these all lie in one associative subalgebra, so the
    associator of any three of them is zero, in O as well."""
    if length < 1:
        raise ValueError(f"word length must be >= 1, got {length}")
    levels: List[List[DivisionRingElement]] = [_generators(x, y)]
    for k in range(2, length + 1):
        levels.append([mul(a, b) for i in range(1, k) for a in levels[i - 1] for b in levels[k - i - 1]])
    return [w for level in levels for w in level]


def random_word(x: DivisionRingElement, y: DivisionRingElement, length: int,
                rng: np.random.Generator) -> DivisionRingElement:
    """One random bracketed product of `length` factors drawn from x, y,
    conj(x), conj(y)."""
    if length < 1:
        raise ValueError(f"word length must be >= 1, got {length}")
    gens = _generators(x, y)

    def build(k: int) -> DivisionRingElement:
        if k == 1:
            return gens[int(rng.integers(0, 4))]
        split = int(rng.integers(1, k))
        return mul(build(split), build(k - split))

    return build(length)


def unit(ring: str, k: int, exact: bool = True) -> DivisionRingElement:
    """The basis unit e_k (e_0 = 1)."""
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    return DivisionRingElement(ring, tuple(one if t == k else zero for t in range(DIM[ring])))


def zero(ring: str, exact: bool = True) -> DivisionRingElement:
    z = Fraction(0) if exact else 0.0
    return DivisionRingElement(ring, (z,) * DIM[ring])


def one(ring: str, exact: bool = True) -> DivisionRingElement:
    return unit(ring, 0, exact)


def random_element(ring: str, rng: np.random.Generator, exact: bool = False) -> DivisionRingElement:
    """Gaussian coordinates (floating) or small random fractions (exact)."""
    d = DIM[ring]
    if exact:
        nums = rng.integers(-9, 10, size=d)
        dens = rng.integers(1, 10, size=d)
        return DivisionRingElement(ring, tuple(Fraction(int(a), int(b)) for a, b in zip(nums, dens)))
    return DivisionRingElement(ring, tuple(float(c) for c in rng.standard_normal(d)))
