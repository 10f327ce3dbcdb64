"""Buchberger's algorithm for submodules of free modules P^r.

Vectors are dicts mapping a term ``(component, exponent_tuple)`` to a
nonzero coefficient; an ideal is the rank-one case.  The module order is
term-over-position, optionally refined by an elimination block: every term
in a component ``< elim_block`` is larger than every term outside it.
"""

from __future__ import annotations

import heapq
from collections import defaultdict

from .field import DEFAULT_BIT_BOUND
from .ring import PolyRing


class ModuleOrder:
    def __init__(self, ring: PolyRing, elim_block: int = 0):
        self.ring = ring
        self.elim_block = elim_block
        self._mkey = ring.key
        self._keys: dict = {}
        self._neg: dict = {}

    def key(self, t):
        k = self._keys.get(t)
        if k is None:
            i, e = t
            k = (1 if i < self.elim_block else 0,) + self._mkey(e) + (-i,)
            self._keys[t] = k
        return k

    def neg_key(self, t):
        k = self._neg.get(t)
        if k is None:
            k = tuple(-x for x in self.key(t))
            self._neg[t] = k
        return k

    def lead(self, v: dict):
        return max(v, key=self.key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _normalize(p: int, c):
    return c % p if p else c


class GBasis:
    """A (reduced, once finished) Groebner basis with a division routine."""

    def __init__(self, ring: PolyRing, order: ModuleOrder):
        self.ring = ring
        self.order = order
        self.p = ring.field.characteristic
        self.elements: list[dict] = []
        self.leads: list[tuple] = []
        self.by_comp: dict = defaultdict(list)

    def _append(self, v: dict):
        idx = len(self.elements)
        lt = self.order.lead(v)
        self.elements.append(v)
        self.leads.append(lt)
        self.by_comp[lt[0]].append(idx)
        return idx

    def _find_reducer(self, t, skip=None):
        comp, e = t
        leads = self.leads
        for k in self.by_comp.get(comp, ()):
            if k != skip and _divides(leads[k][1], e):
                return k
        return None

    def reduce(self, v: dict, skip=None) -> dict:
        """Full normal form of ``v`` (lead and tail reduction)."""
        p = self.p
        order = self.order
        h = dict(v)
        heap = [(order.neg_key(t), t) for t in h]
        heapq.heapify(heap)
        result = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = h.pop(t, None)
            if c is None:
                continue
            k = self._find_reducer(t, skip)
            if k is None:
                result[t] = c
                continue
            g = self.elements[k]
            gt = self.leads[k]
            shift = tuple(a - b for a, b in zip(t[1], gt[1]))
            q = c  # elements are monic
            for (gi, ge), gc in g.items():
                if (gi, ge) == gt:
                    continue
                nt = (gi, tuple(a + b for a, b in zip(ge, shift)))
                old = h.get(nt)
                val = _normalize(p, (old or 0) - q * gc)
                if val:
                    h[nt] = val
                    if old is None:
                        heapq.heappush(heap, (order.neg_key(nt), nt))
                elif old is not None:
                    del h[nt]
        return result

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def __len__(self):
        return len(self.elements)


def _monic(v: dict, lead, field) -> dict:
    c = v[lead]
    if c == 1:
        return v
    inv = field.inv(c)
    p = field.characteristic
    return {t: _normalize(p, a * inv) for t, a in v.items()}


def groebner(
    vectors,
    ring: PolyRing,
    elim_block: int = 0,
    bit_bound: int = DEFAULT_BIT_BOUND,
) -> GBasis:
    """Reduced Groebner basis of the submodule spanned by ``vectors``.

    Buchberger with the normal selection strategy (smallest lcm first), the
    chain criterion, and, for vectors living in a single component, the
    coprime-leading-monomial criterion.
    """
    field = ring.field
    p = field.characteristic
    order = ModuleOrder(ring, elim_block)
    work = GBasis(ring, order)
    comps = {t[0] for v in vectors for t in v}
    ideal_case = len(comps) <= 1
    pending: set = set()
    heap: list = []

    def insert(h: dict):
        lt = order.lead(h)
        h = _monic(h, lt, field)
        if p == 0:
            for c in h.values():
                field.check_size(c, bit_bound)
        idx = len(work.elements)
        for j in work.by_comp.get(lt[0], ()):
            lj = work.leads[j][1]
            lcm = tuple(max(a, b) for a, b in zip(lj, lt[1]))
            pending.add((j, idx))
            heapq.heappush(heap, (order.key((lt[0], lcm)), j, idx, lcm))
        work._append(h)

    for v in vectors:
        if not v:
            continue
        h = work.reduce(v)
        if h:
            insert(h)

    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        ei, ej = work.leads[i][1], work.leads[j][1]
        comp = work.leads[i][0]
        if ideal_case and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        skip = False
        for k in work.by_comp[comp]:
            if k == i or k == j:
                continue
            if _divides(work.leads[k][1], lcm):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    skip = True
                    break
        if skip:
            continue
        si = tuple(a - b for a, b in zip(lcm, ei))
        sj = tuple(a - b for a, b in zip(lcm, ej))
        s: dict = {}
        for (ti, te), c in work.elements[i].items():
            s[(ti, tuple(a + b for a, b in zip(te, si)))] = c
        for (ti, te), c in work.elements[j].items():
            nt = (ti, tuple(a + b for a, b in zip(te, sj)))
            val = _normalize(p, s.get(nt, 0) - c)
            if val:
                s[nt] = val
            else:
                s.pop(nt, None)
        h = work.reduce(s)
        if h:
            insert(h)

    # minimalize, then tail-reduce
    keep = []
    for k, lt in enumerate(work.leads):
        dominated = False
        for m, lm in enumerate(work.leads):
            if m == k or lm[0] != lt[0]:
                continue
            if _divides(lm[1], lt[1]) and (lm[1] != lt[1] or m < k):
                dominated = True
                break
        if not dominated:
            keep.append(k)
    minimal = GBasis(ring, order)
    for k in keep:
        minimal._append(work.elements[k])
    final = GBasis(ring, order)
    reduced = []
    for idx, v in enumerate(minimal.elements):
        r = minimal.reduce(v, skip=idx)
        # lead term is irreducible by the others, so it survives
        reduced.append(_monic(r, minimal.leads[idx], field))
    reduced.sort(key=lambda v: order.key(order.lead(v)), reverse=True)
    for v in reduced:
        final._append(v)
    return final
