"""Constructible subsets of Spec(P/I0) as finite unions of strata V(I) minus V(U).

Every ideal stored here contains I0, the defining ideal of H^0(A).  A stratum
is empty exactly when U lies in the radical of I; set equality is decided by
double inclusion rather than by a canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .dgring import BaseAlgebra, CohomologyTable
from .errors import InputError, RingMismatchError, UnsupportedError
from .modcomplex import PresentedModule
from .polyalg.ideal import Ideal, intersect, krull_dimension, radical_membership
from .polyalg.ring import Polynomial


def _reduced(I: Ideal) -> Ideal:
    return Ideal(I.ring, I.groebner())


def _product(ring, ideals: Iterable[Ideal]) -> Ideal:
    out = Ideal(ring, [1])
    for J in ideals:
        out = _reduced(Ideal(ring, [a * b for a in out.groebner() for b in J.groebner()]))
    return out


def radical_contains_ideal(I: Ideal, U: Ideal) -> bool:
    return all(radical_membership(u, I) for u in U.generators)


@dataclass(frozen=True, eq=False)
class Stratum:
    """V(closed) minus V(removed); ``removed`` always contains ``closed``."""

    closed: Ideal
    removed: Ideal

    @property
    def key(self):
        return (self.closed.canonical(), self.removed.canonical())

    def is_empty(self) -> bool:
        return radical_contains_ideal(self.closed, self.removed)

    def is_closed(self) -> bool:
        return self.removed.is_unit()

    def contains_prime(self, p: Ideal) -> bool:
        return p.contains_ideal(self.closed) and not p.contains_ideal(self.removed)

    def subset_of(self, other: Stratum) -> bool:
        # S minus T = (I1, U1*I2) union (I1 + U2, U1)
        a = Ideal(self.closed.ring, [u * i for u in self.removed.generators for i in other.closed.generators])
        if not radical_contains_ideal(self.closed, a):
            return False
        return radical_contains_ideal(self.closed + other.removed, self.removed)

    def summary(self) -> dict:
        return {"closed": list(self.closed.canonical()), "removed": list(self.removed.canonical())}


def make_stratum(base_ideal: Ideal, closed: Ideal, removed: Ideal) -> Stratum:
    I = _reduced(base_ideal + closed)
    U = _reduced(removed + I)
    return Stratum(I, U)


class ConstructibleSet:
    """A finite union of strata inside Spec(H^0) = V(I0)."""

    def __init__(self, base: BaseAlgebra, strata: Iterable[Stratum] = (), normalize: bool = True):
        self.base = base
        self.ring = base.ring
        strata = list(strata)
        for s in strata:
            if s.closed.ring != self.ring:
                raise RingMismatchError("stratum from another ring")
        if normalize:
            strata = _normalize(strata)
        self.strata: tuple[Stratum, ...] = tuple(strata)

    # constructors -------------------------------------------------------

    @classmethod
    def whole(cls, base: BaseAlgebra) -> ConstructibleSet:
        return cls.closed_set(base, Ideal(base.ring, []))

    @classmethod
    def empty(cls, base: BaseAlgebra) -> ConstructibleSet:
        return cls(base, [], normalize=False)

    @classmethod
    def closed_set(cls, base: BaseAlgebra, I: Ideal) -> ConstructibleSet:
        return cls(base, [make_stratum(base.defining, I, Ideal(base.ring, [1]))])

    @classmethod
    def open_set(cls, base: BaseAlgebra, I: Ideal) -> ConstructibleSet:
        """The complement D(I) of V(I)."""
        return cls(base, [make_stratum(base.defining, Ideal(base.ring, []), I)])

    @classmethod
    def locally_closed(cls, base: BaseAlgebra, closed: Ideal, removed: Ideal) -> ConstructibleSet:
        return cls(base, [make_stratum(base.defining, closed, removed)])

    # predicates ---------------------------------------------------------

    def is_empty(self) -> bool:
        return all(s.is_empty() for s in self.strata)

    def is_open(self) -> bool:
        """Structural test: every stratum is V(I0) minus something."""
        I0 = _reduced(self.base.defining)
        return all(s.closed == I0 for s in self.strata)

    def open_complement_ideal(self) -> Ideal:
        """For an open set, the ideal I with X = D(I)."""
        if not self.is_open():
            raise ValueError("not an open set")
        out = Ideal(self.ring, list(self.base.defining.generators))
        for s in self.strata:
            out = out + s.removed
        return _reduced(out)

    def contains_prime(self, p: Ideal) -> bool:
        return any(s.contains_prime(p) for s in self.strata)

    def subset_of(self, other: ConstructibleSet) -> bool:
        return difference(self, other).is_empty()

    def same_set(self, other: ConstructibleSet) -> bool:
        return self.subset_of(other) and other.subset_of(self)

    def summary(self) -> list[dict]:
        return [s.summary() for s in self.strata]

    def __repr__(self):
        parts = []
        for s in self.strata:
            c = ", ".join(s.closed.canonical()) or "0"
            if s.is_closed():
                parts.append(f"V({c})")
            else:
                parts.append(f"V({c})\\V({', '.join(s.removed.canonical())})")
        return "{" + " | ".join(parts) + "}" if parts else "{}"


def _normalize(strata: Sequence[Stratum]) -> list[Stratum]:
    seen, uniq = set(), []
    for s in strata:
        if s.key in seen or s.is_empty():
            continue
        seen.add(s.key)
        uniq.append(s)
    uniq.sort(key=lambda s: s.key)
    kept: list[Stratum] = []
    for k, s in enumerate(uniq):
        # drop s when it sits inside a survivor; among equal sets keep the first
        if any(s.subset_of(t) for t in kept):
            continue
        if any(s.subset_of(t) and not t.subset_of(s) for t in uniq[k + 1:]):
            continue
        kept.append(s)
    return kept


def _check(X: ConstructibleSet, Y: ConstructibleSet):
    if X.ring != Y.ring or X.base.defining != Y.base.defining:
        raise RingMismatchError("constructible sets live in different spectra")


def union(X: ConstructibleSet, Y: ConstructibleSet) -> ConstructibleSet:
    _check(X, Y)
    return ConstructibleSet(X.base, X.strata + Y.strata)


def intersection(X: ConstructibleSet, Y: ConstructibleSet) -> ConstructibleSet:
    _check(X, Y)
    out = []
    for s in X.strata:
        for t in Y.strata:
            out.append(make_stratum(X.base.defining, s.closed + t.closed, _product(X.ring, [s.removed, t.removed])))
    return ConstructibleSet(X.base, out)


def complement(X: ConstructibleSet) -> ConstructibleSet:
    """Complement of V(I) minus V(U) is D(I) union V(U); intersect over strata."""
    result = ConstructibleSet.whole(X.base)
    for s in X.strata:
        piece = ConstructibleSet(
            X.base,
            [
                make_stratum(X.base.defining, Ideal(X.ring, []), s.closed),
                make_stratum(X.base.defining, s.removed, Ideal(X.ring, [1])),
            ],
        )
        result = intersection(result, piece)
    return result


def difference(X: ConstructibleSet, Y: ConstructibleSet) -> ConstructibleSet:
    return intersection(X, complement(Y))


def combine(sets: Sequence[ConstructibleSet], op: str) -> ConstructibleSet:
    if not sets:
        raise InputError("combine needs at least one set")
    if op == "complement":
        if len(sets) != 1:
            raise InputError("complement takes exactly one set")
        return complement(sets[0])
    fn = {"union": union, "intersection": intersection}.get(op)
    if fn is None:
        raise InputError(f"unknown set operation {op!r}")
    out = sets[0]
    for Y in sets[1:]:
        out = fn(out, Y)
    return out


def is_empty(X: ConstructibleSet) -> bool:
    return X.is_empty()


def support(M: PresentedModule, base: BaseAlgebra) -> ConstructibleSet:
    return ConstructibleSet.closed_set(base, M.annihilator())


# minimal primes ------------------------------------------------------------


@dataclass(frozen=True)
class MinimalPrimesSource:
    """``mode`` is "auto" (monomial ideals only) or "declared"."""

    mode: str = "auto"
    primes: tuple[Ideal, ...] = ()

    @classmethod
    def declared(cls, primes: Iterable[Ideal]) -> MinimalPrimesSource:
        return cls("declared", tuple(primes))

    @classmethod
    def for_base(cls, base: BaseAlgebra) -> MinimalPrimesSource:
        if base.declared_primes:
            return cls.declared(base.declared_primes)
        return cls()


def monomial_minimal_primes(J: Ideal) -> list[Ideal]:
    """Minimal primes of a monomial ideal: minimal variable covers of the generators."""
    ring = J.ring
    gens = J.groebner()
    if not all(g.is_monomial() for g in gens):
        raise UnsupportedError(
            "minimal primes are computed automatically only for monomial ideals; declare them in [spectrum]"
        )
    supports = [frozenset(i for i, a in enumerate(next(iter(g.terms))) if a) for g in gens]
    covers: list[frozenset] = []
    for size in range(ring.nvars + 1):
        for S in combinations(range(ring.nvars), size):
            s = frozenset(S)
            if any(c <= s for c in covers):
                continue
            if all(sup & s for sup in supports):
                covers.append(s)
    primes = [Ideal(ring, [ring.gens[i] for i in sorted(c)]) for c in covers]
    primes.sort(key=lambda p: p.canonical())
    return [_reduced(p) for p in primes]


def verify_declared_primes(J: Ideal, primes: Sequence[Ideal]) -> list[str]:
    """Violated checks, empty when the declaration is consistent."""
    problems = []
    if not primes:
        return ["no primes declared"]
    for k, p in enumerate(primes):
        if p.is_unit():
            problems.append(f"prime #{k + 1} is the unit ideal")
        elif not p.contains_ideal(J):
            problems.append(f"prime #{k + 1} {p} does not contain the defining ideal")
    if problems:
        return problems
    meet = primes[0]
    for p in primes[1:]:
        meet = intersect(meet, p)
    for g in meet.groebner():
        if not radical_membership(g, J):
            problems.append(f"intersection generator {g} is not in the radical of {J}")
    for a, b in combinations(range(len(primes)), 2):
        if primes[a].contains_ideal(primes[b]) or primes[b].contains_ideal(primes[a]):
            problems.append(f"primes #{a + 1} and #{b + 1} are comparable")
    return problems


def minimal_primes(B: BaseAlgebra, src: MinimalPrimesSource | None = None) -> list[Ideal]:
    src = src or MinimalPrimesSource.for_base(B)
    if src.mode == "declared":
        problems = verify_declared_primes(B.defining, src.primes)
        if problems:
            raise InputError("declared minimal primes rejected: " + "; ".join(problems), section="spectrum")
        return [_reduced(p) for p in src.primes]
    if src.mode != "auto":
        raise InputError(f"unknown minimal-primes mode {src.mode!r}", section="spectrum")
    return monomial_minimal_primes(B.defining)


def is_dense_open(X: ConstructibleSet, primes: Sequence[Ideal]) -> bool:
    if not X.is_open():
        raise ValueError("is_dense_open needs an open set")
    return all(X.contains_prime(p) for p in primes)


def is_irreducible(primes: Sequence[Ideal]) -> bool:
    return len(primes) == 1


def is_equidimensional(primes: Sequence[Ideal]) -> bool:
    return len({krull_dimension(p) for p in primes}) <= 1


def irreducible_cover(B: BaseAlgebra, src: MinimalPrimesSource | None = None, primes=None) -> list[tuple[Polynomial, Ideal]]:
    """Pairs (f_i, p_i) with D(f_i) inside the complement of V(q_i)."""
    if primes is None:
        primes = minimal_primes(B, src)
    ring = B.ring
    if len(primes) == 1:
        return [(ring.one(), primes[0])]
    out = []
    for i, p in enumerate(primes):
        q = None
        for j, pj in enumerate(primes):
            if j != i:
                q = pj if q is None else intersect(q, pj)
        f = next(g for g in q.groebner() if not p.contains(g))
        out.append((f, p))
    return out


def cover_union(B: BaseAlgebra, cover) -> ConstructibleSet:
    return ConstructibleSet(B, [make_stratum(B.defining, Ideal(B.ring, []), Ideal(B.ring, [f])) for f, _ in cover])


# amplitude stratification ----------------------------------------------------


@dataclass(frozen=True)
class AmpStratum:
    region: ConstructibleSet
    inf: int | None
    sup: int | None

    @property
    def amp(self):
        return None if self.inf is None else self.sup - self.inf


def support_patterns(base: BaseAlgebra, anns: dict[int, Ideal]):
    """(pattern, stratum) for every subset of degrees; the stratum holds the
    points lying exactly in the supports indexed by the pattern."""
    degrees = sorted(anns)
    out = []
    for size in range(len(degrees) + 1):
        for S in combinations(degrees, size):
            inside = Ideal(base.ring, [])
            for n in S:
                inside = inside + anns[n]
            removed = _product(base.ring, [anns[n] for n in degrees if n not in S])
            st = make_stratum(base.defining, inside, removed)
            if not st.is_empty():
                out.append((S, st))
    return out


def amp_stratification(T: CohomologyTable, base: BaseAlgebra) -> list[AmpStratum]:
    anns = {n: T.annihilator(n) for n in T.degrees}
    groups: dict = {}
    for S, st in support_patterns(base, anns):
        key = (min(S), max(S)) if S else (None, None)
        groups.setdefault(key, []).append(st)
    out = [AmpStratum(ConstructibleSet(base, sts), k[0], k[1]) for k, sts in groups.items()]
    out.sort(key=lambda a: (a.inf is None, a.inf or 0, a.sup or 0))
    return out
