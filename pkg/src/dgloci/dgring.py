"""The two DG-ring families: Koszul complexes over B and trivial extensions.

Both are represented as complexes of (P/J)-free modules over the ambient
polynomial ring P, so every cohomology computation runs through
:mod:`dgloci.modcomplex`.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import InputError, UnsupportedError
from .modcomplex import Complex, PresentedModule, homology_at
from .polyalg.ideal import Ideal, krull_dimension
from .polyalg.matrix import Matrix
from .polyalg.ring import PolyRing, Polynomial

CANDIDATE_POOL_SIZE = 32


@dataclass(frozen=True, eq=False)
class BaseAlgebra:
    """B = P / J, optionally with declared minimal primes of its spectrum."""

    ring: PolyRing
    defining: Ideal
    declared_primes: tuple[Ideal, ...] | None = None

    def __post_init__(self):
        if self.defining.ring != self.ring:
            raise InputError("defining ideal lives in another ring")
        if self.defining.is_unit():
            raise InputError("the defining ideal contains 1, so B is the zero ring", section="ring")

    @classmethod
    def polynomial(cls, ring: PolyRing) -> BaseAlgebra:
        return cls(ring, Ideal(ring, []))

    def quotient(self, *elements) -> BaseAlgebra:
        return BaseAlgebra(self.ring, self.defining.plus(*elements))

    def __repr__(self):
        return f"BaseAlgebra({self.ring.field.name}{list(self.ring.variables)}/{self.defining})"


@dataclass(frozen=True)
class Koszul:
    elements: tuple[Polynomial, ...] = ()


@dataclass(frozen=True)
class TrivialExt:
    piece_degree: int = -2
    piece_rank: int = 2


class CohomologyTable:
    """Nonzero cohomology modules H^n as P-modules killed by the H^0 ideal."""

    def __init__(self, h0_ideal: Ideal, entries: dict[int, PresentedModule]):
        self.h0_ideal = h0_ideal
        self.ring = h0_ideal.ring
        self.entries = {n: H for n, H in sorted(entries.items()) if not H.is_zero()}

    def __getitem__(self, n: int) -> PresentedModule:
        return self.entries.get(n) or PresentedModule.zero(self.ring)

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    @property
    def degrees(self) -> list[int]:
        return list(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def annihilator(self, n: int) -> Ideal:
        return self[n].annihilator()

    def support_ideal(self, n: int) -> Ideal:
        """Ideal cutting out Supp H^n inside Spec(H^0(A))."""
        return Ideal(self.ring, (self.annihilator(n) + self.h0_ideal).groebner())

    def lengths(self) -> dict[int, object]:
        return {n: H.length() for n, H in self.entries.items()}

    def shifted(self, k: int) -> CohomologyTable:
        """Table of M[k]: degree n holds H^{n+k}."""
        return CohomologyTable(self.h0_ideal, {n - k: H for n, H in self.entries.items()})

    def summary(self) -> dict:
        return {str(n): H.summary() for n, H in self.entries.items()}


def amplitude_bounds(T: CohomologyTable) -> tuple[int, int, int]:
    if T.is_zero():
        raise InputError("zero DG-module: the cohomology table is empty")
    lo, hi = min(T.degrees), max(T.degrees)
    return lo, hi, hi - lo


def koszul_matrix(ring: PolyRing, elements: Sequence[Polynomial], i: int) -> Matrix:
    """Differential from exterior degree i to i-1 (cohomological -i -> -i+1)."""
    c = len(elements)
    src = list(combinations(range(c), i))
    tgt = {S: k for k, S in enumerate(combinations(range(c), i - 1))}
    cols = []
    for S in src:
        v: dict = {}
        for pos, s in enumerate(S):
            sign = -1 if pos % 2 else 1
            row = tgt[S[:pos] + S[pos + 1:]]
            f = elements[s] if sign == 1 else -elements[s]
            for e, a in f.terms.items():
                v[(row, e)] = a
        cols.append(v)
    return Matrix(ring, len(tgt), cols)


class DGRing:
    """A commutative non-positive DG-ring from one of the two families."""

    def __init__(self, base: BaseAlgebra, construction: Koszul | TrivialExt):
        self.base = base
        self.ring = base.ring
        self.construction = construction
        self._lock = threading.RLock()
        self._complex: Complex | None = None
        self._table: CohomologyTable | None = None
        self._dualizing = None
        if isinstance(construction, Koszul):
            els = tuple(self.ring(f) for f in construction.elements)
            self.construction = Koszul(els)
            self.h0_ideal = base.defining.plus(*els)
        elif isinstance(construction, TrivialExt):
            k, r = -construction.piece_degree, construction.piece_rank
            if k <= 0:
                raise InputError(f"piece_degree must be negative, got {construction.piece_degree}", section="dg")
            if r <= 0:
                raise InputError(f"piece_rank must be positive, got {r}", section="dg")
            self.h0_ideal = base.defining
        else:
            raise InputError(f"unknown construction {construction!r}", section="dg")
        self.h0_ideal = Ideal(self.ring, self.h0_ideal.groebner())

    @property
    def kind(self) -> str:
        return "koszul" if isinstance(self.construction, Koszul) else "trivial_ext"

    def is_trivial_ext(self) -> bool:
        return isinstance(self.construction, TrivialExt)

    def h0_base(self) -> BaseAlgebra:
        """H^0(A) as P / h0_ideal, carrying the declared primes."""
        return BaseAlgebra(self.ring, self.h0_ideal, self.base.declared_primes)

    def complex(self) -> Complex:
        if self._complex is None:
            with self._lock:
                if self._complex is None:
                    self._complex = self._build_complex()
        return self._complex

    def _build_complex(self) -> Complex:
        J = self.base.defining
        P = self.ring
        if isinstance(self.construction, TrivialExt):
            k, r = -self.construction.piece_degree, self.construction.piece_rank
            mods = {0: PresentedModule.free(P, 1, J), -k: PresentedModule.free(P, r, J)}
            return Complex(P, mods, {}, check=False)
        els = self.construction.elements
        c = len(els)
        mods, maps = {}, {}
        for i in range(c + 1):
            mods[-i] = PresentedModule.free(P, len(list(combinations(range(c), i))), J)
            if i:
                maps[-i] = koszul_matrix(P, els, i)
        return Complex(P, mods, maps, check=False)

    def cohomology_table(self) -> CohomologyTable:
        if self._table is None:
            with self._lock:
                if self._table is None:
                    self._table = self._compute_table()
        return self._table

    def _compute_table(self) -> CohomologyTable:
        if isinstance(self.construction, TrivialExt):
            k, r = -self.construction.piece_degree, self.construction.piece_rank
            J = self.base.defining
            return CohomologyTable(
                self.h0_ideal,
                {0: PresentedModule.free(self.ring, 1, J), -k: PresentedModule.free(self.ring, r, J)},
            )
        C = self.complex()
        return CohomologyTable(self.h0_ideal, {n: homology_at(C, n) for n in range(C.bottom, C.top + 1)})

    def h0_dimension(self) -> int:
        return krull_dimension(self.h0_ideal)

    def describe(self) -> dict:
        d = {
            "kind": self.kind,
            "field": self.ring.field.name,
            "vars": list(self.ring.variables),
            "ideal": [str(g) for g in self.base.defining.generators],
        }
        if isinstance(self.construction, Koszul):
            d["elements"] = [str(f) for f in self.construction.elements]
        else:
            d["piece_degree"] = self.construction.piece_degree
            d["piece_rank"] = self.construction.piece_rank
        return d

    def __repr__(self):
        if isinstance(self.construction, Koszul):
            els = ", ".join(str(f) for f in self.construction.elements)
            return f"Koszul({self.base}; {els})"
        return f"T({self.base}; degree {self.construction.piece_degree}, rank {self.construction.piece_rank})"


def build_dg(base: BaseAlgebra, construction: Koszul | TrivialExt) -> DGRing:
    return DGRing(base, construction)


def cohomology_table(A: DGRing) -> CohomologyTable:
    return A.cohomology_table()


def is_regular_element(A: DGRing, x) -> bool:
    """x is injective on H^{inf(A)}(A)."""
    T = A.cohomology_table()
    lo, _, _ = amplitude_bounds(T)
    return T[lo].is_regular(A.ring(x))


def dg_quotient(A: DGRing, x) -> DGRing:
    x = A.ring(x)
    if isinstance(A.construction, Koszul):
        return DGRing(A.base, Koszul(A.construction.elements + (x,)))
    if not is_regular_element(A, x):
        raise UnsupportedError(f"A//{x} for a trivial extension needs {x} to be A-regular")
    return DGRing(BaseAlgebra(A.ring, A.base.defining.plus(x)), A.construction)


def candidate_pool(A: DGRing, seed: int = 0, size: int = CANDIDATE_POOL_SIZE) -> list[Polynomial]:
    """Variables first, then deterministic pseudo-random linear forms."""
    P = A.ring
    pool = list(P.gens)
    rng = random.Random(seed)
    p = P.field.characteristic
    seen = {str(f) for f in pool}
    attempts = 0
    while len(pool) < P.nvars + size and attempts < 20 * size:
        attempts += 1
        f = P.zero()
        for v in P.gens:
            c = rng.randrange(1, p) if p else rng.choice([-3, -2, -1, 1, 2, 3])
            if rng.random() < 0.25 and P.nvars > 1:
                c = 0
            f = f + v.scale(c)
        if f and str(f) not in seen:
            seen.add(str(f))
            pool.append(f)
    return pool


def regular_reduction(A: DGRing, candidates=None, seed: int = 0) -> tuple[DGRing, list[Polynomial]]:
    """Greedy A-regular sequence; returns the quotient and the sequence."""
    pool = [A.ring(c) for c in candidates] if candidates is not None else candidate_pool(A, seed)
    seq: list[Polynomial] = []
    cur = A
    dim = cur.h0_dimension()
    while dim > 0:
        for cand in pool:
            if cand in seq:
                continue
            h0 = cur.h0_ideal.plus(cand)
            if h0.is_unit():
                continue
            new_dim = krull_dimension(h0)
            if new_dim >= dim:
                continue
            if is_regular_element(cur, cand):
                seq.append(cand)
                cur = dg_quotient(cur, cand)
                dim = new_dim
                break
        else:
            break
    return cur, seq


def find_max_regular_sequence(A: DGRing, candidates=None, seed: int = 0) -> list[Polynomial]:
    return regular_reduction(A, candidates, seed)[1]
