"""Exact linear algebra over GF(2), GF(p) and the rationals.

Two vector representations are used throughout the engine:

* GF(2): a Python ``int`` whose bit ``i`` is coordinate ``i`` (bit-packed,
  arbitrary width);
* GF(p) and Q: a sparse ``dict`` mapping coordinate -> nonzero coefficient.

Dense matrices are numpy arrays (``int64`` mod p, ``object`` holding
``Fraction`` for Q) or tuples of packed row ints for GF(2).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import DimensionError, FieldError

logger = logging.getLogger(__name__)

Scalar = Any
Vector = Any  # int (GF(2)) or dict[int, Scalar]

MAX_PRIME = 1 << 16


class FieldKind(str, Enum):
    GF2 = "gf2"
    GFP = "gfp"
    RATIONAL = "q"


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind is FieldKind.GF2 and self.p != 2:
            object.__setattr__(self, "p", 2)
        if self.kind is FieldKind.GFP and not (_is_prime(self.p) and self.p < MAX_PRIME):
            raise FieldError(f"GF(p) needs a prime p < {MAX_PRIME}, got {self.p}")
        if self.kind is FieldKind.RATIONAL and self.p != 0:
            object.__setattr__(self, "p", 0)

    @classmethod
    def gf2(cls) -> "FieldSpec":
        return cls(FieldKind.GF2, 2)

    @classmethod
    def gfp(cls, p: int) -> "FieldSpec":
        return cls.gf2() if p == 2 else cls(FieldKind.GFP, p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONAL, 0)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """``gf2``, ``gfp:<prime>`` or ``q``."""
        t = text.strip().lower()
        if t in ("gf2", "gfp:2"):
            return cls.gf2()
        if t in ("q", "qq", "rational", "rationals"):
            return cls.rationals()
        if t.startswith("gfp:"):
            try:
                p = int(t[4:])
            except ValueError:
                raise FieldError(f"bad prime in coefficient spec {text!r}") from None
            return cls.gfp(p)
        raise FieldError(f"unknown coefficient field {text!r} (expected gf2, gfp:<prime> or q)")

    @property
    def label(self) -> str:
        if self.kind is FieldKind.GF2:
            return "gf2"
        if self.kind is FieldKind.GFP:
            return f"gfp:{self.p}"
        return "q"

    @property
    def is_gf2(self) -> bool:
        return self.kind is FieldKind.GF2

    @property
    def characteristic(self) -> int:
        return self.p

    # -- scalar arithmetic (GF(p) and Q; GF(2) vectors never reach these) --

    def coerce(self, x: Any) -> Scalar:
        if self.kind is FieldKind.RATIONAL:
            return Fraction(x)
        return int(x) % self.p

    @property
    def zero(self) -> Scalar:
        return self.coerce(0)

    @property
    def one(self) -> Scalar:
        return self.coerce(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.kind is FieldKind.RATIONAL else (a + b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.kind is FieldKind.RATIONAL else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.kind is FieldKind.RATIONAL else (-a) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.kind is FieldKind.RATIONAL else pow(int(a), -1, self.p)

    def __str__(self) -> str:
        return self.label


# -- sparse vector helpers ---------------------------------------------------


def axpy(field: FieldSpec, y: dict[int, Scalar], a: Scalar, x: dict[int, Scalar]) -> None:
    """``y += a * x`` in place, dropping zeros."""
    for i, xi in x.items():
        v = field.add(y.get(i, field.zero), field.mul(a, xi))
        if v == 0:
            y.pop(i, None)
        else:
            y[i] = v


def scale(field: FieldSpec, x: dict[int, Scalar], a: Scalar) -> dict[int, Scalar]:
    return {i: field.mul(a, xi) for i, xi in x.items()}


def zero_vector(field: FieldSpec) -> Vector:
    return 0 if field.is_gf2 else {}


def unit_vector(field: FieldSpec, i: int) -> Vector:
    return 1 << i if field.is_gf2 else {i: field.one}


def add_into(field: FieldSpec, y: Vector, x: Vector, a: Scalar = 1) -> Vector:
    """Return ``y + a*x`` (``y`` may be mutated for dict vectors)."""
    if field.is_gf2:
        return y ^ x if a % 2 else y
    axpy(field, y, field.coerce(a), x)
    return y


def shift(field: FieldSpec, x: Vector, offset: int) -> Vector:
    if field.is_gf2:
        return x << offset
    return {i + offset: c for i, c in x.items()}


def to_dense(field: FieldSpec, x: Vector, n: int) -> list[Scalar]:
    if field.is_gf2:
        return [(x >> i) & 1 for i in range(n)]
    out = [field.zero] * n
    for i, c in x.items():
        out[i] = c
    return out


def to_sparse(field: FieldSpec, dense: Sequence[Any]) -> Vector:
    if field.is_gf2:
        mask = 0
        for i, c in enumerate(dense):
            if int(c) % 2:
                mask |= 1 << i
        return mask
    out = {}
    for i, c in enumerate(dense):
        v = field.coerce(c)
        if v != 0:
            out[i] = v
    return out


# -- incremental pivot reduction -------------------------------------------


class GF2Reducer:
    """Echelon basis of bit-packed vectors, pivot = lowest set bit.

    Every stored vector carries a *track*: the combination of inserted
    generators it equals. ``reduce`` subtracts pivots until the lowest bit
    is not a pivot; the track records what was subtracted.
    """

    __slots__ = ("_pivots",)

    def __init__(self) -> None:
        self._pivots: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: int, track: int = 0) -> tuple[int, int]:
        pivots = self._pivots
        while vec:
            low = vec & -vec
            hit = pivots.get(low)
            if hit is None:
                break
            vec ^= hit[0]
            track ^= hit[1]
        return vec, track

    def insert(self, vec: int, track: int = 0) -> tuple[bool, int, int]:
        vec, track = self.reduce(vec, track)
        if not vec:
            return False, vec, track
        self._pivots[vec & -vec] = (vec, track)
        return True, vec, track


class FieldReducer:
    """Echelon basis of sparse vectors over GF(p) or Q, pivot = lowest index."""

    __slots__ = ("field", "_pivots")

    def __init__(self, field: FieldSpec) -> None:
        self.field = field
        self._pivots: dict[int, tuple[dict[int, Scalar], dict[int, Scalar]]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(
        self, vec: dict[int, Scalar], track: dict[int, Scalar] | None = None
    ) -> tuple[dict[int, Scalar], dict[int, Scalar]]:
        f = self.field
        vec = dict(vec)
        track = dict(track) if track else {}
        while vec:
            low = min(vec)
            hit = self._pivots.get(low)
            if hit is None:
                break
            c = f.neg(vec[low])
            axpy(f, vec, c, hit[0])
            axpy(f, track, c, hit[1])
        return vec, track

    def insert(
        self, vec: dict[int, Scalar], track: dict[int, Scalar] | None = None
    ) -> tuple[bool, dict[int, Scalar], dict[int, Scalar]]:
        vec, track = self.reduce(vec, track)
        if not vec:
            return False, vec, track
        low = min(vec)
        inv = self.field.inv(vec[low])
        self._pivots[low] = (scale(self.field, vec, inv), scale(self.field, track, inv))
        return True, vec, track


Reducer = GF2Reducer | FieldReducer


def make_reducer(field: FieldSpec) -> Reducer:
    return GF2Reducer() if field.is_gf2 else FieldReducer(field)


def rank_of_vectors(field: FieldSpec, vectors: Sequence[Vector]) -> int:
    """Rank of a family of sparse / packed vectors."""
    if field.is_gf2:
        return gf2_rank(vectors)
    red = FieldReducer(field)
    return sum(1 for v in vectors if red.insert(v)[0])


def gf2_rank(rows: Sequence[int]) -> int:
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


def rank_mod_p(array: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p), numpy-vectorised row elimination."""
    a = np.array(array, dtype=np.int64) % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        below = a[r + 1 :, c].copy()
        if below.any():
            a[r + 1 :] = (a[r + 1 :] - np.outer(below, a[r])) % p
        r += 1
    return r


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r, prev = 0, 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            aic = ai[c]
            a[i] = [(pr[c] * ai[k] - aic * pr[k]) // prev for k in range(ncols)]
        prev = pr[c]
        r += 1
    return r


# -- matrices --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Matrix:
    """Immutable dense matrix over a :class:`FieldSpec`.

    GF(2) rows are bit-packed ints in ``packed``; other fields keep a numpy
    array in ``data``.
    """

    field: FieldSpec
    nrows: int
    ncols: int
    packed: tuple[int, ...] | None = None
    data: np.ndarray | None = None

    # -- constructors --

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[Any]], ncols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        if field.is_gf2:
            return cls(field, nrows, ncols, packed=tuple(to_sparse(field, r) for r in rows))
        if field.kind is FieldKind.RATIONAL:
            data = np.empty((nrows, ncols), dtype=object)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    data[i, j] = Fraction(x)
        else:
            data = np.array([[int(x) % field.p for x in r] for r in rows], dtype=np.int64).reshape(nrows, ncols)
        return cls(field, nrows, ncols, data=data)

    @classmethod
    def from_columns(cls, field: FieldSpec, nrows: int, columns: Sequence[Vector]) -> "Matrix":
        """Build from sparse / packed column vectors."""
        ncols = len(columns)
        if field.is_gf2:
            rows = [0] * nrows
            for j, col in enumerate(columns):
                if col >> nrows:
                    raise DimensionError("column longer than nrows")
                v = col
                while v:
                    low = v & -v
                    rows[low.bit_length() - 1] |= 1 << j
                    v ^= low
            return cls(field, nrows, ncols, packed=tuple(rows))
        dense = [[field.zero] * ncols for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, c in col.items():
                if i >= nrows:
                    raise DimensionError("column longer than nrows")
                dense[i][j] = c
        return cls.from_rows(field, dense, ncols=ncols)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls.from_rows(field, [[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    # -- access --

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> Scalar:
        if self.field.is_gf2:
            return (self.packed[i] >> j) & 1
        x = self.data[i, j]
        return x if self.field.kind is FieldKind.RATIONAL else int(x)

    def to_lists(self) -> list[list[Scalar]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def row_vector(self, i: int) -> Vector:
        if self.field.is_gf2:
            return self.packed[i]
        return to_sparse(self.field, [self.entry(i, j) for j in range(self.ncols)])

    def column_vector(self, j: int) -> Vector:
        if self.field.is_gf2:
            return to_sparse(self.field, [(r >> j) & 1 for r in self.packed])
        return to_sparse(self.field, [self.entry(i, j) for i in range(self.nrows)])

    def columns(self) -> list[Vector]:
        return [self.column_vector(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        if self.field.is_gf2:
            return Matrix(self.field, self.ncols, self.nrows, packed=tuple(self.columns()))
        return Matrix(self.field, self.ncols, self.nrows, data=self.data.T.copy())

    def is_zero(self) -> bool:
        if self.field.is_gf2:
            return not any(self.packed)
        return not np.any(self.data != 0)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise DimensionError("matrices over different fields")
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if self.field.is_gf2:
            out = []
            for row in self.packed:
                acc = 0
                for k in _bit_indices(row):
                    acc ^= other.packed[k]
                out.append(acc)
            return Matrix(self.field, self.nrows, other.ncols, packed=tuple(out))
        if self.ncols == 0:
            return Matrix.zeros(self.field, self.nrows, other.ncols)
        prod = self.data.dot(other.data)
        if self.field.kind is FieldKind.GFP:
            prod = prod % self.field.p
        return Matrix(self.field, self.nrows, other.ncols, data=prod)

    def matvec(self, x: Sequence[Any]) -> list[Scalar]:
        if len(x) != self.ncols:
            raise DimensionError(f"vector of length {len(x)} for {self.ncols} columns")
        if not self.ncols:
            return [0 if self.field.is_gf2 else self.field.zero] * self.nrows
        col = Matrix.from_rows(self.field, [[c] for c in x], ncols=1)
        return [row[0] for row in (self @ col).to_lists()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.to_lists() == other.to_lists()

    def __repr__(self) -> str:
        return f"Matrix({self.field.label}, {self.nrows}x{self.ncols})"


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- operations ------------------------------------------------------------


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if M.field.is_gf2:
        return gf2_rank(M.packed)
    if M.field.kind is FieldKind.GFP:
        return rank_mod_p(M.data, M.field.p)
    rows = []
    for row in M.data.tolist():
        den = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
        rows.append([int(Fraction(x) * den) for x in row])
    return bareiss_rank(rows)


def reduce_columns_tracked(M: Matrix) -> tuple[Matrix, Matrix]:
    """Left-to-right column reduction with operation tracking.

    Returns ``(R, ops)`` with ``R = M @ ops``; nonzero columns of ``R`` have
    pairwise distinct lowest nonzero rows and ``ops`` is unit upper
    triangular, hence invertible.
    """
    f = M.field
    red = make_reducer(f)
    reduced, ops = [], []
    for j, col in enumerate(M.columns()):
        _, v, t = red.insert(col, unit_vector(f, j))
        reduced.append(v)
        ops.append(t)
    return Matrix.from_columns(f, M.nrows, reduced), Matrix.from_columns(f, M.ncols, ops)


def kernel_basis(M: Matrix) -> list[list[Scalar]]:
    f = M.field
    red = make_reducer(f)
    out = []
    for j, col in enumerate(M.columns()):
        inserted, _, t = red.insert(col, unit_vector(f, j))
        if not inserted:
            out.append(to_dense(f, t, M.ncols))
    return out


def solve(M: Matrix, b: Sequence[Any]) -> list[Scalar] | None:
    """Some ``x`` with ``M x = b``, or ``None`` when ``b`` is not in the column space."""
    if len(b) != M.nrows:
        raise DimensionError(f"right-hand side of length {len(b)} for {M.nrows} rows")
    f = M.field
    red = make_reducer(f)
    for j, col in enumerate(M.columns()):
        red.insert(col, unit_vector(f, j))
    rem, t = red.reduce(to_sparse(f, b), zero_vector(f))
    if rem:
        return None
    if f.is_gf2:
        return to_dense(f, t, M.ncols)
    return to_dense(f, scale(f, t, f.neg(f.one)), M.ncols)
