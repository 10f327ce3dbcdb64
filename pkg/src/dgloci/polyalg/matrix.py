"""Polynomial matrices, submodules of free modules, and syzygies.

A matrix is stored by columns; column ``j`` is a sparse vector
``{(row, exponent): coeff}``.  Columns are the images of basis vectors, so
a matrix with ``nrows`` rows and ``ncols`` columns is a map P^ncols -> P^nrows.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from ..errors import RingMismatchError
from .groebner import GBasis, groebner
from .ring import PolyRing, Polynomial, format_terms


def vec_from_polys(polys: Sequence[Polynomial], offset: int = 0) -> dict:
    v = {}
    for i, f in enumerate(polys):
        for e, c in f.terms.items():
            v[(i + offset, e)] = c
    return v


def vec_entry(ring: PolyRing, v: dict, i: int) -> Polynomial:
    return Polynomial(ring, {e: c for (k, e), c in v.items() if k == i})


def vec_add(p: int, a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for t, c in b.items():
        val = out.get(t, 0) + scale * c
        if p:
            val %= p
        if val:
            out[t] = val
        else:
            out.pop(t, None)
    return out


def vec_mul_poly(ring: PolyRing, v: dict, f: Polynomial) -> dict:
    p = ring.field.characteristic
    out: dict = {}
    for (i, e), c in v.items():
        for fe, fc in f.terms.items():
            t = (i, tuple(a + b for a, b in zip(e, fe)))
            val = out.get(t, 0) + c * fc
            if p:
                val %= p
            out[t] = val
    return {t: c for t, c in out.items() if c}


def vec_shift(v: dict, offset: int) -> dict:
    return {(i + offset, e): c for (i, e), c in v.items()}


def vec_restrict(v: dict, lo: int, hi: int, offset: int = 0) -> dict:
    """Components in [lo, hi), renumbered by subtracting ``lo - offset``."""
    return {(i - lo + offset, e): c for (i, e), c in v.items() if lo <= i < hi}


class Matrix:
    """Immutable polynomial matrix, column-major."""

    def __init__(self, ring: PolyRing, nrows: int, cols: Iterable[dict]):
        self.ring = ring
        self.nrows = nrows
        self.cols: tuple[dict, ...] = tuple(cols)
        for c in self.cols:
            for (i, _) in c:
                if not 0 <= i < nrows:
                    raise ValueError(f"column entry in row {i} outside 0..{nrows - 1}")

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
        rows = [[ring(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        cols = [vec_from_polys([r[j] for r in rows]) for j in range(ncols)]
        return cls(ring, len(rows), cols)

    @classmethod
    def from_columns(cls, ring: PolyRing, nrows: int, columns: Sequence[Sequence]) -> Matrix:
        cols = []
        for col in columns:
            col = [ring(x) for x in col]
            if len(col) != nrows:
                raise ValueError("column length does not match nrows")
            cols.append(vec_from_polys(col))
        return cls(ring, nrows, cols)

    @classmethod
    def zero(cls, ring: PolyRing, nrows: int, ncols: int) -> Matrix:
        return cls(ring, nrows, [{} for _ in range(ncols)])

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> Matrix:
        one = ring.field(1)
        z = ring.zero_exp
        return cls(ring, n, [{(i, z): one} for i in range(n)])

    @classmethod
    def scalar(cls, ring: PolyRing, n: int, f) -> Matrix:
        f = ring(f)
        return cls(ring, n, [vec_from_polys([f], offset=i) for i in range(n)])

    def entry(self, i: int, j: int) -> Polynomial:
        return vec_entry(self.ring, self.cols[j], i)

    def rows(self) -> list[list[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def apply(self, v: dict) -> dict:
        """Image of the vector ``v`` (in P^ncols) under the matrix."""
        p = self.ring.field.characteristic
        out: dict = {}
        for (j, e), c in v.items():
            for (i, ce), cc in self.cols[j].items():
                t = (i, tuple(a + b for a, b in zip(e, ce)))
                val = out.get(t, 0) + c * cc
                if p:
                    val %= p
                out[t] = val
        return {t: c for t, c in out.items() if c}

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ring != other.ring:
            raise RingMismatchError("matrix ring mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        return Matrix(self.ring, self.nrows, [self.apply(c) for c in other.cols])

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.ring.field.characteristic
        return Matrix(self.ring, self.nrows, [vec_add(p, a, b) for a, b in zip(self.cols, other.cols)])

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        f = self.ring.const(c) if not isinstance(c, Polynomial) else c
        return Matrix(self.ring, self.nrows, [vec_mul_poly(self.ring, col, f) for col in self.cols])

    def transpose(self) -> Matrix:
        cols: list[dict] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for (i, e), c in col.items():
                cols[i][(j, e)] = c
        return Matrix(self.ring, self.ncols, cols)

    def hstack(self, other: Matrix) -> Matrix:
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        return Matrix(self.ring, self.nrows, self.cols + other.cols)

    def select_columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.ring, self.nrows, [self.cols[j] for j in idx])

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        pos = {r: k for k, r in enumerate(idx)}
        return Matrix(
            self.ring,
            len(idx),
            [{(pos[i], e): c for (i, e), c in col.items() if i in pos} for col in self.cols],
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.shape == other.shape
            and self.cols == other.cols
        )

    def __repr__(self):
        return f"Matrix({self.to_strings()})"

    def to_strings(self) -> list[list[str]]:
        return [[str(f) for f in row] for row in self.rows()]


def block_diag(ring: PolyRing, blocks: Sequence[Matrix]) -> Matrix:
    cols = []
    off = 0
    for b in blocks:
        cols.extend(vec_shift(c, off) for c in b.cols)
        off += b.nrows
    return Matrix(ring, off, cols)


def vec_to_strings(ring: PolyRing, v: dict, rank: int) -> list[str]:
    parts: list[dict] = [{} for _ in range(rank)]
    for (i, e), c in v.items():
        parts[i][e] = c
    key = ring.key
    return [format_terms(ring, sorted(p.items(), key=lambda t: key(t[0]), reverse=True)) for p in parts]


class Submodule:
    """Submodule of P^rank spanned by vectors, with a lazily cached GB."""

    def __init__(self, ring: PolyRing, rank: int, gens: Iterable[dict]):
        self.ring = ring
        self.rank = rank
        self.gens: tuple[dict, ...] = tuple(g for g in gens if g)
        self._gb: GBasis | None = None
        self._lock = threading.Lock()

    def gbasis(self) -> GBasis:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = groebner(list(self.gens), self.ring)
        return self._gb

    def reduce(self, v: dict) -> dict:
        return self.gbasis().reduce(v)

    def contains(self, v: dict) -> bool:
        return not v or not self.gbasis().reduce(v)

    def is_everything(self) -> bool:
        z = self.ring.zero_exp
        gb = self.gbasis()
        comps = {lt[0] for lt in gb.leads if lt[1] == z}
        return len(comps) == self.rank


def syzygies(M: Matrix) -> Matrix:
    """Generators of ker(M: P^ncols -> P^nrows).

    Each column ``c_j`` is augmented by the unit vector ``e_j`` in ``ncols``
    extra components; with the extra components ordered below the original
    ones, the basis elements living entirely in the extra block generate the
    syzygy module.
    """
    r, m = M.nrows, M.ncols
    if m == 0:
        return Matrix(M.ring, 0, [])
    one = M.ring.field(1)
    z = M.ring.zero_exp
    aug = []
    for j, col in enumerate(M.cols):
        v = dict(col)
        v[(r + j, z)] = one
        aug.append(v)
    gb = groebner(aug, M.ring, elim_block=r)
    syz = [vec_shift(v, -r) for v, lt in zip(gb.elements, gb.leads) if lt[0] >= r]
    return Matrix(M.ring, m, syz)


def kernel_mod(A: Matrix, N: Matrix) -> Matrix:
    """Generators of {v in P^ncols(A) : A v in image(N)}."""
    if A.nrows != N.nrows:
        raise ValueError("kernel_mod needs matching targets")
    m = A.ncols
    S = syzygies(A.hstack(N))
    cols = []
    seen = set()
    for c in S.cols:
        v = vec_restrict(c, 0, m)
        if v:
            key = frozenset(v.items())
            if key not in seen:
                seen.add(key)
                cols.append(v)
    return Matrix(A.ring, m, cols)


def prune_generators(ring: PolyRing, rank: int, gens: Sequence[dict], base: Sequence[dict] = ()) -> list[dict]:
    """Greedy removal of generators already in the span of ``base`` and the
    generators kept so far."""
    kept: list[dict] = []
    current = list(base)
    for g in gens:
        if not g:
            continue
        if current and Submodule(ring, rank, current).contains(g):
            continue
        kept.append(g)
        current.append(g)
    return kept
