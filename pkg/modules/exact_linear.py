"""
Exact rational linear algebra

Scalars are ``fractions.Fraction`` values held in numpy arrays of dtype
object, so numpy's contraction machinery (``einsum``, ``@``, ``tensordot``)
runs with exact arithmetic. Conventions used across the workbench:

* vectors are 1-d arrays of coordinates in the basis e_0 .. e_{n-1};
* a linear map is stored in column form: ``m @ v`` applies it, and the
  matrix of a dual map f* is ``f.T``;
* a Tensor3 ``t`` holds structure constants, op(e_i, e_j) = sum_k t[i, j, k] e_k;
* a TwoTensor holds r = sum_ij r[i, j] e_i (x) e_j.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from config import config
from utils.error_handler import DimMismatch, SingularMatrix

logger = logging.getLogger(__name__)

Scalar = Fraction
Vector = np.ndarray
Matrix = np.ndarray
Tensor3 = np.ndarray

RationalLike = Union[int, str, Fraction]


def to_scalar(value: RationalLike) -> Fraction:
    """Parse an integer, Fraction or "p/q" literal into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rational literals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise ValueError(f"not an exact rational: {value!r}")


def rational_array(data, shape: Sequence[int] = None) -> np.ndarray:
    """Build a read-only object array of Fractions."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(tuple(shape))
    out = np.empty(arr.shape, dtype=object)
    for idx, value in np.ndenumerate(arr):
        out[idx] = to_scalar(value)
    return freeze(out)


def normalize(arr: np.ndarray) -> np.ndarray:
    """Coerce every entry of a computed object array to Fraction, read-only."""
    out = np.empty(arr.shape, dtype=object)
    for idx, value in np.ndenumerate(arr):
        out[idx] = Fraction(value)
    return freeze(out)


def freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def zeros(*shape: int) -> np.ndarray:
    return rational_array(np.zeros(shape, dtype=int))


def identity(n: int) -> Matrix:
    return rational_array(np.eye(n, dtype=int))


def basis_vector(n: int, i: int) -> Vector:
    v = np.zeros(n, dtype=int)
    v[i] = 1
    return rational_array(v)


def is_zero(arr: np.ndarray) -> bool:
    return not np.any(arr != 0)


def exactly_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and is_zero(a - b)


def check_square(m: Matrix, name: str = "matrix") -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] > config.MAX_DIM * 2:
        raise DimMismatch(f"{name} dimension {m.shape[0]} exceeds limit {config.MAX_DIM * 2}")
    return m.shape[0]


def _integer_rows(m: Matrix) -> Tuple[List[List[Fraction]], List[int]]:
    """Scale each row by the lcm of its denominators."""
    rows, scales = [], []
    for row in m:
        scale = 1
        for value in row:
            scale = math.lcm(scale, Fraction(value).denominator)
        rows.append([Fraction(value) * scale for value in row])
        scales.append(scale)
    return rows, scales


def rank(m: Matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination with column skipping."""
    if m.size == 0:
        return 0
    rows, _ = _integer_rows(m)
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    prev = Fraction(1)
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, nrows):
            factor = rows[i][c]
            for j in range(c + 1, ncols):
                rows[i][j] = (rows[r][c] * rows[i][j] - factor * rows[r][j]) / prev
            rows[i][c] = Fraction(0)
        prev = rows[r][c]
        r += 1
        if r == nrows:
            break
    return r


def matrix_inverse(m: Matrix) -> Matrix:
    """
    Exact inverse by fraction-free Gauss-Jordan elimination.

    Rows are first scaled to integers (N = D m), N is reduced against the
    identity, and m^-1 = N^-1 D.

    Raises:
        SingularMatrix: if m has rank < n
    """
    n = check_square(m)
    rows, scales = _integer_rows(m)
    aug = [rows[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    prev = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrix(rank(m), n)
        aug[k], aug[pivot] = aug[pivot], aug[k]
        pkk = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            factor = aug[i][k]
            for j in range(2 * n):
                if j != k:
                    aug[i][j] = (pkk * aug[i][j] - factor * aug[k][j]) / prev
            aug[i][k] = Fraction(0)
        prev = pkk
    inv_n = [[aug[i][n + j] / aug[i][i] for j in range(n)] for i in range(n)]
    result = np.array(inv_n, dtype=object) * np.array(scales, dtype=object)[None, :]
    return normalize(result)


def contract_bilinear(t: Tensor3, u: Vector, v: Vector) -> Vector:
    """result_k = sum_ij u_i v_j t[i, j, k]."""
    n = t.shape[0]
    if t.shape[1] != n or u.shape != (n,) or v.shape != (n,):
        raise DimMismatch(f"tensor {t.shape} with vectors {u.shape}, {v.shape}")
    return normalize(np.einsum('i,j,ijk->k', u, v, t))


def bilinear_table(t: Tensor3, left: Matrix, right: Matrix) -> Tensor3:
    """Table of op(left e_i, right e_j) for all basis pairs."""
    return np.einsum('pi,qj,pqk->ijk', left, right, t)


def apply_last(m: Matrix, t: np.ndarray) -> np.ndarray:
    """Apply a linear map to the last (output) axis of a table."""
    return np.einsum('km,...m->...k', m, t)


def act_on_slot(ops: np.ndarray, t: np.ndarray, slot: int) -> np.ndarray:
    """
    Apply one operator per basis element to one tensor slot.

    ``ops`` has shape (n, d, d) with ops[a] the matrix of X(e_a); the result
    has shape (n,) + t.shape and holds (.. (x) X(e_a) (x) ..)(t) with
    X(e_a) acting on ``slot``.
    """
    letters = "pqrs"[:t.ndim]
    target = letters[:slot] + "z" + letters[slot + 1:]
    return np.einsum(f"a{letters[slot]}z,{target}->a{letters}", ops, t)


@dataclass(frozen=True)
class TwoTensor:
    """r = sum_ij entries[i, j] e_i (x) e_j."""
    entries: Matrix

    def __post_init__(self):
        check_square(self.entries, "two-tensor")

    @classmethod
    def from_entries(cls, data) -> "TwoTensor":
        return cls(rational_array(data))

    @classmethod
    def zero(cls, n: int) -> "TwoTensor":
        return cls(zeros(n, n))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def flip(self) -> "TwoTensor":
        """tau(r) = sum r[i, j] e_j (x) e_i."""
        return TwoTensor(freeze(self.entries.T.copy()))

    def is_symmetric(self) -> bool:
        return exactly_equal(self.entries, self.entries.T)

    def is_antisymmetric(self) -> bool:
        return is_zero(self.entries + self.entries.T)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoTensor) and exactly_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(tuple(str(x) for x in self.entries.flat))


def split_two_tensor(r: TwoTensor) -> Tuple[TwoTensor, TwoTensor]:
    """Return (S, Lambda) with S = (r + r^T)/2 and Lambda = (r - r^T)/2."""
    half = Fraction(1, 2)
    s = normalize((r.entries + r.entries.T) * half)
    lam = normalize((r.entries - r.entries.T) * half)
    return TwoTensor(s), TwoTensor(lam)


def nonzero_sites(residual: np.ndarray, lead_axes: int) -> Iterable[Tuple[Tuple[int, ...], np.ndarray]]:
    """Yield (indices, residual slice) where a slice over the trailing axes is nonzero."""
    lead_shape = residual.shape[:lead_axes]
    for idx in np.ndindex(*lead_shape):
        chunk = residual[idx]
        if np.ndim(chunk) == 0:
            if chunk != 0:
                yield idx, np.array([chunk], dtype=object)
        elif not is_zero(chunk):
            yield idx, chunk.reshape(-1)
