"""Ideals with lazily cached reduced Groebner bases, and derived operations."""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import InputError, RingMismatchError
from .groebner import GBasis, groebner as _groebner
from .ring import PolyRing, Polynomial


def _to_vec(f: Polynomial) -> dict:
    return {(0, e): c for e, c in f.terms.items()}


def _from_vec(ring: PolyRing, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


class Ideal:
    """An ideal of a polynomial ring given by generators.

    The reduced Groebner basis is computed once, on first use, under a lock.
    """

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if g.ring != ring:
                raise RingMismatchError("generator from another ring")
            if g and g not in gens:
                gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: GBasis | None = None
        self._lock = threading.Lock()
        self._radical: dict = {}

    # Groebner basis ----------------------------------------------------

    def gbasis(self) -> GBasis:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = _groebner([_to_vec(g) for g in self.generators], self.ring)
        return self._gb

    def groebner(self) -> list[Polynomial]:
        return [_from_vec(self.ring, v) for v in self.gbasis().elements]

    def leading_monomials(self) -> list[tuple]:
        return [lt[1] for lt in self.gbasis().leads]

    def normal_form(self, f) -> Polynomial:
        f = self.ring(f)
        return _from_vec(self.ring, self.gbasis().reduce(_to_vec(f)))

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        """True when the ideal is the whole ring."""
        gb = self.gbasis()
        return any(not any(lt[1]) for lt in gb.leads)

    def is_zero(self) -> bool:
        return not self.generators

    def contains_ideal(self, other: Ideal) -> bool:
        _check(self, other)
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.ring, self.canonical()))

    def canonical(self) -> tuple[str, ...]:
        """The reduced Groebner basis as strings; equal ideals give equal tuples."""
        return tuple(str(g) for g in self.groebner())

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    # ideal arithmetic ----------------------------------------------------

    def __add__(self, other: Ideal) -> Ideal:
        _check(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: Ideal) -> Ideal:
        _check(self, other)
        return Ideal(self.ring, [a * b for a in self.generators for b in other.generators])

    def plus(self, *polys) -> Ideal:
        return Ideal(self.ring, self.generators + tuple(self.ring(f) for f in polys))

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.groebner())

    def radical_contains(self, f) -> bool:
        return radical_membership(f, self)

    def radical_contains_ideal(self, other: Ideal) -> bool:
        return all(radical_membership(g, self) for g in other.generators)

    def intersect(self, other: Ideal) -> Ideal:
        return intersect(self, other)

    def quotient(self, f) -> Ideal:
        return ideal_quotient(self, f)

    def dimension(self) -> int:
        return krull_dimension(self)

    def in_ring(self, ring: PolyRing) -> Ideal:
        return Ideal(ring, [g.embed(ring) for g in self.generators])


def _check(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def groebner(I: Ideal) -> list[Polynomial]:
    return I.groebner()


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    if f.ring != I.ring:
        raise RingMismatchError(f"ring mismatch: {f.ring} vs {I.ring}")
    return I.normal_form(f)


def radical_membership(f, I: Ideal) -> bool:
    """Rabinowitsch: f in sqrt(I) iff 1 in I + (1 - t*f) over P[t]."""
    f = I.ring(f)
    if f.is_zero():
        return True
    key = str(f)
    hit = I._radical.get(key)
    if hit is not None:
        return hit
    if I.contains(f):
        I._radical[key] = True
        return True
    t = I.ring.fresh_name("t")
    big = I.ring.extend([t], order="grevlex")
    tv = big.var(t)
    gens = [g.embed(big) for g in I.generators]
    gens.append(big.one() - tv * f.embed(big))
    out = Ideal(big, gens).is_unit()
    I._radical[key] = out
    return out


def eliminate(I: Ideal, keep: Sequence[str]) -> Ideal:
    """Generators of I intersected with k[keep], via a block elimination order."""
    ring = I.ring
    keep = list(keep)
    for v in keep:
        ring.index(v)
    drop = [v for v in ring.variables if v not in keep]
    if not drop:
        return Ideal(ring, I.generators)
    elim_ring = PolyRing(ring.field, drop + keep, order=f"elim:{len(drop)}")
    mapping = [elim_ring.index(v) for v in ring.variables]
    J = Ideal(elim_ring, [g.embed(elim_ring, mapping) for g in I.generators])
    nd = len(drop)
    back = [None] * nd + [ring.index(v) for v in keep]
    out = [g.embed(ring, back) for g in J.groebner() if not any(e[:nd] != (0,) * nd for e in g.terms)]
    return Ideal(ring, out)


def intersect(I: Ideal, K: Ideal) -> Ideal:
    """I cap K = (t*I + (1-t)*K) cap P."""
    _check(I, K)
    ring = I.ring
    if not I.generators or not K.generators:
        return Ideal(ring, [])
    t = ring.fresh_name("t")
    big = ring.extend([t], order="grevlex")
    tv = big.var(t)
    gens = [tv * g.embed(big) for g in I.generators]
    gens += [(big.one() - tv) * g.embed(big) for g in K.generators]
    E = eliminate(Ideal(big, gens), list(ring.variables))
    return Ideal(ring, [g.embed(ring, [ring.index(v) if v in ring.variables else None for v in big.variables]) for g in E.generators])


def ideal_quotient(I: Ideal, f) -> Ideal:
    """(I : f) = (I cap (f)) / f."""
    f = I.ring(f)
    if f.is_zero():
        raise InputError("ideal quotient by the zero polynomial")
    meet = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [g.exact_div(f) for g in meet.generators])


def independent_sets(lead_monomials, nvars: int):
    """Largest variable subsets S with no leading monomial supported inside S."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in lead_monomials]
    for size in range(nvars, -1, -1):
        found = []
        for S in combinations(range(nvars), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                found.append(S)
        if found:
            return size, found
    return -1, []


def krull_dimension(I: Ideal) -> int:
    if I.is_unit():
        return -1
    return independent_sets(I.leading_monomials(), I.ring.nvars)[0]


def standard_monomial_count(lead_monomials, nvars: int):
    """Number of monomials outside the monomial ideal, or None when infinite."""
    pure = [None] * nvars
    for e in lead_monomials:
        nz = [i for i, a in enumerate(e) if a]
        if not nz:
            return 0
        if len(nz) == 1:
            i = nz[0]
            pure[i] = e[i] if pure[i] is None else min(pure[i], e[i])
    if any(b is None for b in pure):
        return None
    count = 0
    # enumerate the box below the pure powers
    stack = [()]
    while stack:
        prefix = stack.pop()
        k = len(prefix)
        if k == nvars:
            if not any(_divides(e, prefix) for e in lead_monomials):
                count += 1
            continue
        for a in range(pure[k]):
            stack.append(prefix + (a,))
    return count


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))
