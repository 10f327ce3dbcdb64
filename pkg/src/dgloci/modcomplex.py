"""Finitely presented modules and bounded complexes over a polynomial ring.

Conventions
-----------
* Cohomological grading: ``d^n`` maps the term in degree ``n`` to degree
  ``n + 1``.  A differential is a :class:`Matrix` with one column per
  generator of the source term.
* ``cone(phi)^n = C^{n+1} (+) D^n`` with differential
  ``[[-d_C, 0], [phi, d_D]]``.
* ``dual_into_ring(F)^n = Hom(F^{-n}, P)`` with differential
  ``(-1)^(n+1) * transpose(d_F^{-n-1})``.
* ``C[k]^n = C^{n+k}`` with differential ``(-1)^k d``.
"""

from __future__ import annotations

import math
import threading
from typing import Mapping, Sequence

from .errors import InputError, ResourceError
from .polyalg.ideal import Ideal, krull_dimension, standard_monomial_count
from .polyalg.matrix import (
    Matrix,
    Submodule,
    block_diag,
    kernel_mod,
    prune_generators,
    syzygies,
    vec_add,
    vec_mul_poly,
    vec_restrict,
    vec_shift,
    vec_to_strings,
)
from .polyalg.ring import PolyRing, Polynomial

INFINITE = math.inf


def _dedupe(vectors):
    out, seen = [], set()
    for v in vectors:
        if not v:
            continue
        k = frozenset(v.items())
        if k not in seen:
            seen.add(k)
            out.append(v)
    return out


class PresentedModule:
    """``P^rank / (columns of relations + base_ideal * P^rank)``."""

    def __init__(self, ring: PolyRing, rank: int, relations=None, base_ideal: Ideal | None = None):
        self.ring = ring
        self.rank = rank
        if relations is None:
            relations = Matrix(ring, rank, [])
        elif not isinstance(relations, Matrix):
            relations = Matrix(ring, rank, list(relations))
        if relations.nrows != rank:
            raise ValueError(f"relations have {relations.nrows} rows, module rank is {rank}")
        self.relations = relations
        self.base_ideal = base_ideal if base_ideal is not None and base_ideal.generators else None
        self._lock = threading.RLock()
        self._sub: Submodule | None = None
        self._ann: Ideal | None = None
        self._length = None

    # constructors -------------------------------------------------------

    @classmethod
    def free(cls, ring: PolyRing, rank: int, base_ideal: Ideal | None = None) -> PresentedModule:
        return cls(ring, rank, None, base_ideal)

    @classmethod
    def cyclic(cls, ideal: Ideal) -> PresentedModule:
        """P / ideal."""
        return cls(ideal.ring, 1, None, ideal)

    @classmethod
    def zero(cls, ring: PolyRing) -> PresentedModule:
        return cls(ring, 0)

    # structure ----------------------------------------------------------

    def full_relations(self) -> list[dict]:
        cols = list(self.relations.cols)
        if self.base_ideal is not None:
            for i in range(self.rank):
                for g in self.base_ideal.generators:
                    cols.append({(i, e): c for e, c in g.terms.items()})
        return _dedupe(cols)

    def relation_matrix(self) -> Matrix:
        return Matrix(self.ring, self.rank, self.full_relations())

    def submodule(self) -> Submodule:
        if self._sub is None:
            with self._lock:
                if self._sub is None:
                    self._sub = Submodule(self.ring, self.rank, self.full_relations())
        return self._sub

    def is_free(self) -> bool:
        return not self.full_relations()

    def is_zero(self) -> bool:
        return self.rank == 0 or self.submodule().is_everything()

    def contains_relation(self, v: dict) -> bool:
        return self.submodule().contains(v)

    def annihilator(self) -> Ideal:
        """Ann(M): the kernel of P -> M^rank, f |-> (f e_1, ..., f e_rank)."""
        if self._ann is None:
            g = self.rank
            rels = self.full_relations()
            if g == 0:
                ann = Ideal(self.ring, [1])
            elif g == 1:
                ann = Ideal(self.ring, [Polynomial(self.ring, {e: c for (_, e), c in v.items()}) for v in rels])
            else:
                one = self.ring.field(1)
                z = self.ring.zero_exp
                stacked = Matrix(self.ring, g * g, [{(j * g + j, z): one for j in range(g)}])
                N = block_diag(self.ring, [Matrix(self.ring, g, rels)] * g)
                K = kernel_mod(stacked, N)
                ann = Ideal(self.ring, [Polynomial(self.ring, {e: c for (_, e), c in v.items()}) for v in K.cols])
            self._ann = Ideal(self.ring, ann.groebner())
        return self._ann

    def length(self):
        """dim_k M, or ``INFINITE``."""
        if self._length is None:
            if self.rank == 0:
                self._length = 0
            else:
                gb = self.submodule().gbasis()
                total = 0
                for i in range(self.rank):
                    leads = [lt[1] for lt in gb.leads if lt[0] == i]
                    n = standard_monomial_count(leads, self.ring.nvars)
                    if n is None:
                        total = INFINITE
                        break
                    total += n
                self._length = total
        return self._length

    def dimension(self) -> int:
        """Krull dimension of the support; -1 for the zero module."""
        return krull_dimension(self.annihilator())

    def staircase(self) -> tuple:
        """Leading terms of the relation module's reduced Groebner basis."""
        return tuple(self.submodule().gbasis().leads)

    # derived modules ----------------------------------------------------

    def quotient_by(self, f) -> PresentedModule:
        """M / f M."""
        f = self.ring(f)
        extra = Matrix.scalar(self.ring, self.rank, f) if self.rank else Matrix(self.ring, 0, [])
        rel = Matrix(self.ring, self.rank, list(self.relations.cols) + list(extra.cols))
        return PresentedModule(self.ring, self.rank, rel, self.base_ideal)

    def multiplication_kernel(self, f) -> PresentedModule:
        """ker(f: M -> M) as a presented module."""
        f = self.ring(f)
        if self.rank == 0:
            return PresentedModule.zero(self.ring)
        N = self.relation_matrix()
        K = kernel_mod(Matrix.scalar(self.ring, self.rank, f), N)
        return submodule_quotient(self.ring, K, N)

    def is_regular(self, f) -> bool:
        """True when multiplication by f is injective on M."""
        f = self.ring(f)
        if self.rank == 0:
            return True
        N = self.relation_matrix()
        K = kernel_mod(Matrix.scalar(self.ring, self.rank, f), N)
        sub = self.submodule()
        return all(sub.contains(v) for v in K.cols)

    def direct_sum(self, *others: PresentedModule) -> PresentedModule:
        mods = (self,) + others
        cols = []
        off = 0
        for m in mods:
            cols.extend(vec_shift(v, off) for v in m.full_relations())
            off += m.rank
        return PresentedModule(self.ring, off, Matrix(self.ring, off, cols))

    def pruned(self) -> PresentedModule:
        """Eliminate generators that a relation expresses with a unit coefficient."""
        return prune_presentation(self.ring, self.rank, self.full_relations())

    def summary(self) -> dict:
        gb = self.submodule().gbasis()
        length = self.length()
        return {
            "rank": self.rank,
            "relations": [vec_to_strings(self.ring, v, self.rank) for v in gb.elements],
            "annihilator": [str(g) for g in self.annihilator().groebner()],
            "length": "infinite" if length == INFINITE else length,
        }

    def __repr__(self):
        return f"PresentedModule(rank={self.rank}, relations={len(self.full_relations())})"


def submodule_quotient(ring: PolyRing, K: Matrix, N: Matrix) -> PresentedModule:
    """(span K + span N) / span N, presented on the columns of K."""
    gens = prune_generators(ring, K.nrows, list(K.cols), base=list(N.cols))
    if not gens:
        return PresentedModule.zero(ring)
    Kp = Matrix(ring, K.nrows, gens)
    rel = kernel_mod(Kp, N)
    return prune_presentation(ring, len(gens), list(rel.cols))


def prune_presentation(ring: PolyRing, rank: int, rels: Sequence[dict]) -> PresentedModule:
    p = ring.field.characteristic
    z = ring.zero_exp
    rels = [dict(v) for v in rels if v]
    alive = list(range(rank))
    while True:
        pick = None
        for r_idx, v in enumerate(rels):
            for (i, e), c in v.items():
                if e == z and all(k != i or ee == z for (k, ee) in v):
                    pick = (r_idx, i, c)
                    break
            if pick:
                break
        if pick is None:
            break
        r_idx, i, c = pick
        r = rels.pop(r_idx)
        inv = ring.field.inv(c)
        new = []
        for s in rels:
            si = Polynomial(ring, {e: a for (k, e), a in s.items() if k == i})
            if si:
                s = vec_add(p, s, vec_mul_poly(ring, r, si.scale(inv)), scale=-1)
            if s:
                new.append(s)
        rels = new
        alive.remove(i)
    pos = {g: k for k, g in enumerate(alive)}
    out = _dedupe({(pos[i], e): c for (i, e), c in v.items()} for v in rels)
    return PresentedModule(ring, len(alive), Matrix(ring, len(alive), out))


# ---------------------------------------------------------------------------
# complexes


class Complex:
    """A bounded complex of presented modules with differentials ``d^n``."""

    def __init__(
        self,
        ring: PolyRing,
        modules: Mapping[int, PresentedModule],
        maps: Mapping[int, Matrix] | None = None,
        check: bool = True,
    ):
        self.ring = ring
        self.modules = {n: m for n, m in modules.items() if m.rank > 0}
        maps = dict(maps or {})
        self.maps: dict[int, Matrix] = {}
        for n, D in maps.items():
            src, tgt = self.rank(n), self.rank(n + 1)
            if D.shape != (tgt, src):
                raise InputError(f"d^{n} has shape {D.shape}, expected {(tgt, src)}")
            if src and tgt and not D.is_zero():
                self.maps[n] = D
        if check:
            self.check()

    @property
    def degrees(self) -> list[int]:
        return sorted(self.modules)

    @property
    def bottom(self) -> int:
        return min(self.modules) if self.modules else 0

    @property
    def top(self) -> int:
        return max(self.modules) if self.modules else 0

    @property
    def width(self) -> int:
        return self.top - self.bottom if self.modules else 0

    def rank(self, n: int) -> int:
        m = self.modules.get(n)
        return m.rank if m else 0

    def module(self, n: int) -> PresentedModule:
        return self.modules.get(n) or PresentedModule.zero(self.ring)

    def d(self, n: int) -> Matrix:
        D = self.maps.get(n)
        if D is None:
            return Matrix.zero(self.ring, self.rank(n + 1), self.rank(n))
        return D

    def is_free(self) -> bool:
        return all(m.is_free() for m in self.modules.values())

    def ranks(self) -> dict[int, int]:
        return {n: m.rank for n, m in sorted(self.modules.items())}

    def check(self):
        for n, D in self.maps.items():
            tgt = self.module(n + 1)
            # relations go to relations
            for v in self.module(n).full_relations():
                w = D.apply(v)
                if w and not tgt.contains_relation(w):
                    raise InputError(f"d^{n} is not well defined on the relations of degree {n}")
            nxt = self.maps.get(n + 1)
            if nxt is None:
                continue
            after = self.module(n + 2)
            for col in (nxt @ D).cols:
                if col and not after.contains_relation(col):
                    raise InputError(f"d^{n + 1} o d^{n} != 0")

    def shift(self, k: int) -> Complex:
        sign = -1 if k % 2 else 1
        mods = {n - k: m for n, m in self.modules.items()}
        maps = {n - k: (D if sign == 1 else -D) for n, D in self.maps.items()}
        return Complex(self.ring, mods, maps, check=False)

    def homology(self, n: int) -> PresentedModule:
        return homology_at(self, n)

    def homology_table(self, degrees=None) -> dict[int, PresentedModule]:
        if degrees is None:
            degrees = range(self.bottom, self.top + 1)
        out = {}
        for n in degrees:
            H = homology_at(self, n)
            if not H.is_zero():
                out[n] = H
        return out

    def __repr__(self):
        return f"Complex(ranks={self.ranks()})"


def FreeComplex(ring: PolyRing, ranks: Mapping[int, int], maps: Mapping[int, Matrix] | None = None, check=True) -> Complex:
    """A complex of free modules P^rank."""
    mods = {n: PresentedModule.free(ring, r) for n, r in ranks.items()}
    return Complex(ring, mods, maps, check=check)


def homology_at(C: Complex, n: int) -> PresentedModule:
    """H^n(C) = ker d^n / im d^{n-1}, pruned."""
    ring = C.ring
    M = C.module(n)
    if M.rank == 0:
        return PresentedModule.zero(ring)
    if C.rank(n + 1):
        K = kernel_mod(C.d(n), C.module(n + 1).relation_matrix())
    else:
        K = Matrix.identity(ring, M.rank)
    if K.ncols == 0:
        return PresentedModule.zero(ring)
    image = list(C.d(n - 1).cols) + M.full_relations()
    N = Matrix(ring, M.rank, _dedupe(image))
    return submodule_quotient(ring, K, N)


class ComplexMap:
    """A degreewise map of complexes ``phi^n: C^n -> D^n``."""

    def __init__(self, source: Complex, target: Complex, mats: Mapping[int, Matrix], check=True):
        self.source = source
        self.target = target
        self.mats = {}
        ring = source.ring
        for n in set(source.modules) | set(target.modules):
            M = mats.get(n)
            if M is None:
                M = Matrix.zero(ring, target.rank(n), source.rank(n))
            if M.shape != (target.rank(n), source.rank(n)):
                raise InputError(f"phi^{n} has shape {M.shape}, expected {(target.rank(n), source.rank(n))}")
            self.mats[n] = M
        if check:
            self.check()

    def at(self, n: int) -> Matrix:
        M = self.mats.get(n)
        if M is None:
            return Matrix.zero(self.source.ring, self.target.rank(n), self.source.rank(n))
        return M

    def check(self):
        C, D = self.source, self.target
        for n in set(C.modules) | set(D.modules):
            lhs = D.d(n) @ self.at(n)
            rhs = self.at(n + 1) @ C.d(n)
            diff = lhs - rhs
            tgt = D.module(n + 1)
            for col in diff.cols:
                if col and not tgt.contains_relation(col):
                    raise InputError(f"map does not commute with the differentials in degree {n}")

    @classmethod
    def multiplication(cls, C: Complex, f) -> ComplexMap:
        f = C.ring(f)
        return cls(C, C, {n: Matrix.scalar(C.ring, C.rank(n), f) for n in C.modules}, check=False)


def _stack(ring: PolyRing, top: Matrix, bottom: Matrix) -> Matrix:
    """Vertical concatenation [top; bottom]."""
    cols = [vec_add(0, a, vec_shift(b, top.nrows)) for a, b in zip(top.cols, bottom.cols)]
    return Matrix(ring, top.nrows + bottom.nrows, cols)


def cone(phi: ComplexMap) -> Complex:
    C, D = phi.source, phi.target
    ring = C.ring
    degs = set(n - 1 for n in C.modules) | set(D.modules)
    mods = {}
    for n in degs:
        a, b = C.module(n + 1), D.module(n)
        if a.rank + b.rank:
            mods[n] = a.direct_sum(b) if a.rank else PresentedModule(ring, b.rank, b.relation_matrix())
    maps = {}
    for n in degs:
        if n + 1 not in degs:
            continue
        # rows: C^{n+2} (+) D^{n+1}; cols: C^{n+1} (+) D^n
        left = _stack(ring, -C.d(n + 1), phi.at(n + 1))
        right = _stack(ring, Matrix.zero(ring, C.rank(n + 2), D.rank(n)), D.d(n))
        maps[n] = left.hstack(right)
    return Complex(ring, mods, maps)


def dual_into_ring(F: Complex) -> Complex:
    if not F.is_free():
        raise InputError("dual_into_ring needs a complex of free modules")
    ring = F.ring
    ranks = {-n: r for n, r in F.ranks().items()}
    maps = {}
    for n in ranks:
        D = F.maps.get(-n - 1)
        if D is not None:
            T = D.transpose()
            maps[n] = T if (n + 1) % 2 == 0 else -T
    return FreeComplex(ring, ranks, maps, check=False)


def cancel_units(F: Complex) -> Complex:
    """Gaussian elimination of unit entries in a free complex (homotopy equivalent)."""
    ring = F.ring
    p = ring.field.characteristic
    z = ring.zero_exp
    ranks = dict(F.ranks())
    maps = {n: D for n, D in F.maps.items()}
    changed = True
    while changed:
        changed = False
        for n in sorted(maps):
            D = maps[n]
            hit = None
            for j, col in enumerate(D.cols):
                for (i, e), c in col.items():
                    if e == z and all(k != i or ee == z for (k, ee) in col):
                        hit = (i, j, c)
                        break
                if hit:
                    break
            if hit is None:
                continue
            i, j, u = hit
            inv = ring.field.inv(u)
            pivot_col = D.cols[j]
            new_cols = []
            for jj, col in enumerate(D.cols):
                if jj == j:
                    continue
                gamma = {e: c for (k, e), c in col.items() if k == i}
                if gamma:
                    g = Polynomial(ring, gamma).scale(inv)
                    col = vec_add(p, col, vec_mul_poly(ring, pivot_col, g), scale=-1)
                new_cols.append({(k - (k > i), e): c for (k, e), c in col.items() if k != i})
            src, tgt = ranks[n], ranks[n + 1]
            maps[n] = Matrix(ring, tgt - 1, new_cols)
            prev = maps.get(n - 1)
            if prev is not None:
                maps[n - 1] = Matrix(
                    ring,
                    src - 1,
                    [{(k - (k > j), e): c for (k, e), c in col.items() if k != j} for col in prev.cols],
                )
            nxt = maps.get(n + 1)
            if nxt is not None:
                maps[n + 1] = Matrix(ring, nxt.nrows, [c for k, c in enumerate(nxt.cols) if k != i])
            ranks[n] = src - 1
            ranks[n + 1] = tgt - 1
            changed = True
            break
    ranks = {n: r for n, r in ranks.items() if r}
    maps = {n: D for n, D in maps.items() if n in ranks and n + 1 in ranks}
    return FreeComplex(ring, ranks, maps, check=False)


def default_window(C: Complex) -> int:
    return C.width + C.ring.nvars + 2


def required_window(C: Complex) -> int:
    """Smallest window certifying RHom_P(C, P) in all its nonzero degrees."""
    return C.width + C.ring.nvars


def _is_base_tensor(C: Complex) -> Ideal | None:
    """The ideal J when every term is (P/J)^r with no other relations and the
    differentials square to zero over P itself."""
    J = None
    for m in C.modules.values():
        if m.relations.ncols or m.base_ideal is None:
            return None
        if J is None:
            J = m.base_ideal
        elif m.base_ideal is not J and m.base_ideal.canonical() != J.canonical():
            return None
    if J is None:
        return None
    for n, D in C.maps.items():
        nxt = C.maps.get(n + 1)
        if nxt is not None and not (nxt @ D).is_zero():
            return None
    return J


def resolve_ideal(J: Ideal, length: int) -> tuple[Complex, bool]:
    """Free resolution of P/J in degrees [-length, 0]; flag says it is complete."""
    ring = J.ring
    gens = [g for g in J.groebner()]
    ranks = {0: 1}
    maps = {}
    if not gens:
        return FreeComplex(ring, ranks, check=False), True
    current = Matrix.from_rows(ring, [gens])
    ranks[-1] = current.ncols
    maps[-1] = current
    complete = False
    for k in range(2, length + 1):
        S = syzygies(current)
        cols = prune_generators(ring, S.nrows, list(S.cols))
        if not cols:
            complete = True
            break
        current = Matrix(ring, S.nrows, cols)
        ranks[-k] = current.ncols
        maps[-k] = current
    else:
        complete = not syzygies(current).cols if length >= 1 else False
    return cancel_units(FreeComplex(ring, ranks, maps, check=False)), complete


def tensor_free(K: Complex, G: Complex) -> Complex:
    """Total complex of K (x)_P G for free complexes."""
    ring = K.ring
    kr, gr = K.ranks(), G.ranks()
    index = {}
    tot_ranks: dict[int, int] = {}
    for p_, r in kr.items():
        for q, s in gr.items():
            n = p_ + q
            index[(p_, q)] = tot_ranks.get(n, 0)
            tot_ranks[n] = tot_ranks.get(n, 0) + r * s
    maps_cols: dict[int, list] = {n: [] for n in tot_ranks}
    for n in sorted(tot_ranks):
        cols: list[dict] = [None] * tot_ranks[n]
        for (p_, q), off in index.items():
            if p_ + q != n:
                continue
            r, s = kr[p_], gr[q]
            dK = K.maps.get(p_)
            dG = G.maps.get(q)
            sign = -1 if p_ % 2 else 1
            for i in range(r):
                for j in range(s):
                    v: dict = {}
                    if dK is not None and (p_ + 1, q) in index:
                        base = index[(p_ + 1, q)]
                        s2 = gr[q]
                        for (ii, e), c in dK.cols[i].items():
                            v[(base + ii * s2 + j, e)] = c
                    if dG is not None and (p_, q + 1) in index:
                        base = index[(p_, q + 1)]
                        s2 = gr[q + 1]
                        for (jj, e), c in dG.cols[j].items():
                            t = (base + i * s2 + jj, e)
                            val = v.get(t, 0) + sign * c
                            if ring.field.characteristic:
                                val %= ring.field.characteristic
                            if val:
                                v[t] = val
                            else:
                                v.pop(t, None)
                    cols[off + i * s + j] = v
        maps_cols[n] = cols
    maps = {}
    for n, cols in maps_cols.items():
        if n + 1 in tot_ranks:
            maps[n] = Matrix(ring, tot_ranks[n + 1], cols)
    return FreeComplex(ring, tot_ranks, maps, check=False)


def free_resolution_of_complex(C: Complex, window: int | None = None, method: str = "auto") -> Complex:
    """A free complex F quasi-isomorphic to C in degrees >= top - window.

    ``method`` is ``"auto"`` (tensor shortcut when the terms are free over a
    common quotient P/J, otherwise the cone construction), ``"cone"`` or
    ``"tensor"``.
    """
    if window is None:
        window = default_window(C)
    if window < 0:
        raise ResourceError("negative resolution window")
    if not C.modules:
        return FreeComplex(C.ring, {})
    if C.is_free():
        return C
    J = _is_base_tensor(C) if method in ("auto", "tensor") else None
    if J is not None:
        length = max(window - C.width + 1, 1)
        lift = FreeComplex(C.ring, C.ranks(), C.maps, check=False)
        G, _ = resolve_ideal(J, length)
        return cancel_units(tensor_free(lift, G))
    if method == "tensor":
        raise InputError("tensor method needs terms of the form (P/J)^r")
    return cancel_units(_resolve_by_cones(C, window))


def _resolve_by_cones(C: Complex, window: int) -> Complex:
    """Build F top-down so that cone(F -> C) is exact at every built degree.

    At degree n the new generators of F^n are the kernel of the cone
    differential on F^{n+1} (+) C^n, minus what C^{n-1} and the relations of
    C^n already hit.
    """
    ring = C.ring
    top, bottom = C.top, C.bottom
    lowest = top - window - 1
    fr: dict[int, int] = {}
    dF: dict[int, Matrix] = {}
    phi: dict[int, Matrix] = {}
    for n in range(top, lowest - 1, -1):
        f1, f2 = fr.get(n + 1, 0), fr.get(n + 2, 0)
        Cn, Cn1 = C.module(n), C.module(n + 1)
        g, g1 = Cn.rank, Cn1.rank
        rows = f2 + g1
        cols = []
        dnext = dF.get(n + 1)
        phinext = phi.get(n + 1)
        for u in range(f1):
            v = {}
            if dnext is not None:
                v = {t: (-c) % ring.field.characteristic if ring.field.characteristic else -c for t, c in dnext.cols[u].items()}
            if phinext is not None:
                v.update(vec_shift(phinext.cols[u], f2))
            cols.append(v)
        dC = C.d(n)
        for k in range(g):
            cols.append(vec_shift(dC.cols[k], f2) if g1 else {})
        Delta = Matrix(ring, rows, cols)
        target_rels = Matrix(ring, rows, [vec_shift(v, f2) for v in Cn1.full_relations()])
        if f1 + g == 0:
            K_cols = []
        elif rows == 0:
            K_cols = list(Matrix.identity(ring, f1 + g).cols)
        else:
            K_cols = list(kernel_mod(Delta, target_rels).cols)
        hit = [vec_shift(v, f1) for v in list(C.d(n - 1).cols) + Cn.full_relations()]
        gens = prune_generators(ring, f1 + g, K_cols, base=hit)
        if not gens:
            if n < bottom:
                break
            continue
        fr[n] = len(gens)
        dF[n] = Matrix(ring, f1, [vec_restrict(v, 0, f1) for v in gens])
        p = ring.field.characteristic
        phi[n] = Matrix(
            ring,
            g,
            [{t: ((-c) % p if p else -c) for t, c in vec_restrict(v, f1, f1 + g).items()} for v in gens],
        )
    maps = {n: D for n, D in dF.items() if n + 1 in fr and (n + 1) in fr}
    # dF[n] maps F^n -> F^{n+1}
    return FreeComplex(ring, fr, {n: D for n, D in maps.items() if D.nrows}, check=False)


def euler_characteristic(table: Mapping[int, PresentedModule]):
    total = 0
    for n, H in table.items():
        length = H.length()
        if length == INFINITE:
            return INFINITE
        total += (-1) ** (n % 2) * length
    return total
