"""Regular, Cohen-Macaulay and Gorenstein loci of a DG-ring.

Pointwise amplitudes are read off supports: a prime q lies in Supp H^n(M)
exactly when H^n(M)_q is nonzero, so inf and sup at q are determined by which
supports contain q.  Every set returned here lives in Spec(H^0(A)).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .dgring import (
    DGRing,
    amplitude_bounds,
    regular_reduction,
)
from .dualizing import DualizingTable, dualizing_table
from .errors import DGLociError, TheoremViolation, UnsupportedError
from .modcomplex import INFINITE
from .polyalg.ideal import Ideal, krull_dimension
from .polyalg.ring import PolyRing, Polynomial
from .spectrum import (
    ConstructibleSet,
    MinimalPrimesSource,
    _product,
    cover_union,
    intersection,
    irreducible_cover,
    is_dense_open,
    is_equidimensional,
    make_stratum,
    minimal_primes,
    radical_contains_ideal,
    support_patterns,
)

EMPTY_CERTIFIED = "EmptyCertified"
NOT_GORENSTEIN_AT_SAMPLE = "NotGorensteinAtSample"
INCONCLUSIVE = "Inconclusive"


def determinant(rows: Sequence[Sequence[Polynomial]], ring: PolyRing) -> Polynomial:
    """Laplace expansion along the first row; matrices here are tiny."""
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    total = ring.zero()
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * determinant(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_minors(gens: Sequence[Polynomial], ring: PolyRing, size: int) -> list[Polynomial]:
    if size == 0:
        return [ring.one()]
    jac = [[g.derivative(i) for i in range(ring.nvars)] for g in gens]
    out = []
    for rs in combinations(range(len(gens)), size):
        for cs in combinations(range(ring.nvars), size):
            d = determinant([[jac[r][c] for c in cs] for r in rs], ring)
            if d and d not in out:
                out.append(d)
    return out


def _negative_support_ideal(A: DGRing) -> Ideal:
    """Ideal whose vanishing set is the union of Supp H^{-i}(A), i > 0."""
    T = A.cohomology_table()
    return _product(A.ring, [T.annihilator(n) for n in T.degrees if n < 0])


def _primes(A: DGRing, src: MinimalPrimesSource | None):
    base = A.h0_base()
    return minimal_primes(base, src or MinimalPrimesSource.for_base(base))


def regular_locus_h0(A: DGRing, src: MinimalPrimesSource | None = None, primes=None) -> ConstructibleSet:
    """Jacobian criterion on each piece of the irreducible cover of Spec(H^0)."""
    base = A.h0_base()
    ring = A.ring
    I0 = A.h0_ideal
    if primes is None:
        primes = _primes(A, src)
    gens = I0.groebner()
    strata = []
    for f, p in irreducible_cover(base, primes=primes):
        h = ring.nvars - krull_dimension(p)
        # rank of the Jacobian never exceeds h on a piece with one component
        for m in jacobian_minors(gens, ring, h + 1) if h + 1 <= min(len(gens), ring.nvars) else []:
            if not radical_contains_ideal(I0, Ideal(ring, [f * m])):
                raise UnsupportedError(
                    f"the cover piece around {p} is not equidimensional of codimension {h}; check the declared primes"
                )
        minors = jacobian_minors(gens, ring, h)
        removed = Ideal(ring, [f * m for m in minors])
        strata.append(make_stratum(I0, Ideal(ring, []), removed))
    return ConstructibleSet(base, strata)


def reg_locus(A: DGRing, src: MinimalPrimesSource | None = None, primes=None) -> ConstructibleSet:
    """W intersected with Reg(H^0(A)), W the complement of the negative supports."""
    base = A.h0_base()
    W = ConstructibleSet.open_set(base, _negative_support_ideal(A))
    if W.is_empty():
        return W
    return intersection(W, regular_locus_h0(A, src, primes))


@dataclass(frozen=True)
class AmpComparison:
    region: ConstructibleSet
    amp_a: int
    amp_r: int


def pointwise_amplitudes(A: DGRing, R: DualizingTable | None = None) -> list[AmpComparison]:
    """Overlay of the support patterns of H^*(A) and H^*(R)."""
    R = R or dualizing_table(A)
    base = A.h0_base()
    TA, TR = A.cohomology_table(), R.table
    pa = support_patterns(base, {n: TA.annihilator(n) for n in TA.degrees})
    pr = support_patterns(base, {n: TR.annihilator(n) for n in TR.degrees})
    groups: dict = {}
    for SA, sa in pa:
        if not SA:
            continue
        for SR, sr in pr:
            if not SR:
                continue
            st = make_stratum(base.defining, sa.closed + sr.closed, _product(A.ring, [sa.removed, sr.removed]))
            if st.is_empty():
                continue
            key = (max(SA) - min(SA), max(SR) - min(SR))
            groups.setdefault(key, []).append(st)
    out = [AmpComparison(ConstructibleSet(base, sts), k[0], k[1]) for k, sts in sorted(groups.items())]
    for c in out:
        if c.amp_a > c.amp_r:
            raise TheoremViolation(f"pointwise amp(A) = {c.amp_a} > amp(R) = {c.amp_r} on {c.region}")
    return out


def cm_locus_exact(A: DGRing, R: DualizingTable | None = None) -> ConstructibleSet:
    base = A.h0_base()
    strata = []
    for c in pointwise_amplitudes(A, R):
        if c.amp_a == c.amp_r:
            strata.extend(c.region.strata)
    return ConstructibleSet(base, strata)


def cm_dense_open(
    A: DGRing,
    src: MinimalPrimesSource | None = None,
    primes=None,
    R: DualizingTable | None = None,
    exact: ConstructibleSet | None = None,
) -> ConstructibleSet:
    """Union over cover pieces (f, p) of D(f) minus the supports of H^n(R), n > c,
    where c is the top degree whose support contains p."""
    base = A.h0_base()
    ring = A.ring
    if primes is None:
        primes = _primes(A, src)
    R = R or dualizing_table(A)
    TR = R.table
    anns = {n: TR.annihilator(n) for n in TR.degrees}
    strata = []
    for f, p in irreducible_cover(base, primes=primes):
        at_p = [n for n, ann in anns.items() if p.contains_ideal(ann)]
        if not at_p:
            raise TheoremViolation(f"R vanishes at the minimal prime {p}")
        c = max(at_p)
        removed = _product(ring, [Ideal(ring, [f])] + [anns[n] for n in anns if n > c])
        strata.append(make_stratum(A.h0_ideal, Ideal(ring, []), removed))
    U = ConstructibleSet(base, strata)
    if not U.is_open() or not is_dense_open(U, primes):
        raise TheoremViolation(f"generic CM set {U} is not dense open")
    exact = exact if exact is not None else cm_locus_exact(A, R)
    if not U.subset_of(exact):
        raise TheoremViolation(f"generic CM set {U} is not inside the CM locus {exact}")
    return U


def full_support(A: DGRing, n: int) -> bool:
    """Supp H^n(A) = Spec(H^0(A)), i.e. the annihilator lies in the nilradical."""
    return radical_contains_ideal(A.h0_ideal, A.cohomology_table().annihilator(n))


def cm_global_check(
    A: DGRing,
    src: MinimalPrimesSource | None = None,
    R: DualizingTable | None = None,
    exact: ConstructibleSet | None = None,
) -> dict:
    """Global CM criteria, each conclusion tagged with the hypothesis used."""
    R = R or dualizing_table(A)
    lo, _, amp_a = amplitude_bounds(A.cohomology_table())
    amp_r = R.bounds()[2]
    base = A.h0_base()
    try:
        primes = _primes(A, src)
        irreducible = len(primes) == 1
        equidim = is_equidimensional(primes)
        primes_note = None
    except DGLociError as exc:
        irreducible = equidim = None
        primes_note = str(exc)
    bottom_full = full_support(A, lo)
    exact = exact if exact is not None else cm_locus_exact(A, R)
    exact_is_spec = ConstructibleSet.whole(base).subset_of(exact)
    licensed = []
    if amp_a == amp_r:
        if irreducible:
            licensed.append("irreducible-spectrum")
        if bottom_full:
            licensed.append("bottom-cohomology-full-support")
    if amp_a == 0 and amp_r == 0:
        licensed.append("ring-with-amp-R-zero")
    if licensed and not exact_is_spec:
        raise TheoremViolation(f"global CM criteria hold ({licensed}) but the CM locus is not all of Spec")
    amp_forced = bool(equidim) and exact_is_spec
    if amp_forced and amp_a != amp_r:
        raise TheoremViolation(f"equidimensional and CM everywhere, yet amp(A) = {amp_a} != amp(R) = {amp_r}")
    out = {
        "amp_A": amp_a,
        "amp_R": amp_r,
        "amp_equal": amp_a == amp_r,
        "irreducible": irreducible,
        "equidimensional": equidim,
        "bottom_full_support": bottom_full,
        "cm_everywhere": exact_is_spec,
        "cm_licensed_by": licensed,
        "equidimensional_amp_check": "holds" if amp_forced else "not applicable",
    }
    if primes_note:
        out["primes_unavailable"] = primes_note
    return out


# Gorenstein obstructions -------------------------------------------------------


@dataclass(frozen=True)
class ArtinianReduction:
    dg: DGRing
    sequence: tuple[Polynomial, ...]
    complete: bool

    def summary(self) -> dict:
        return {
            "sequence": [str(f) for f in self.sequence],
            "complete": self.complete,
            "h0_ideal": list(self.dg.h0_ideal.canonical()),
        }


def reduce_to_artinian(A: DGRing, candidates=None, seed: int = 0) -> ArtinianReduction:
    Q, seq = regular_reduction(A, candidates, seed)
    complete = Q.h0_dimension() == 0 and Q.cohomology_table()[0].length() != INFINITE
    return ArtinianReduction(Q, tuple(seq), complete)


@dataclass(frozen=True)
class LengthTest:
    status: str
    amp: int
    lengths: dict
    failing: tuple[tuple[int, int], ...]

    def summary(self) -> dict:
        return {
            "status": self.status,
            "amp": self.amp,
            "lengths": {str(n): v for n, v in sorted(self.lengths.items())},
            "failing_pairs": [list(p) for p in self.failing],
        }


def artinian_gor_length_test(A: DGRing) -> LengthTest:
    """len H^{-i} = len H^{-n+i} for 0 <= i <= n; failures are reported once
    per unordered pair as (i, n - i) with i <= n - i."""
    if A.h0_dimension() != 0:
        raise UnsupportedError("the length test needs dim H^0(A) = 0")
    T = A.cohomology_table()
    _, _, n = amplitude_bounds(T)
    lengths = {-i: T[-i].length() for i in range(n + 1)}
    failing = []
    for i in range(n // 2 + 1):
        if lengths[-i] != lengths[-(n - i)]:
            failing.append((i, n - i))
    status = NOT_GORENSTEIN_AT_SAMPLE if failing else INCONCLUSIVE
    return LengthTest(status, n, lengths, tuple(failing))


@dataclass(frozen=True)
class GorCertificate:
    status: str
    evidence: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {"status": self.status, "evidence": self.evidence}


def _sample(A: DGRing, candidates, seed) -> dict:
    red = reduce_to_artinian(A, candidates, seed)
    out = {"reduction": red.summary()}
    if red.complete:
        out["length_test"] = artinian_gor_length_test(red.dg).summary()
    return out


def trivial_ext_gor_certificate(A: DGRing, candidates=None, seed: int = 0) -> GorCertificate:
    if not A.is_trivial_ext():
        raise UnsupportedError("this certificate applies to trivial extensions only")
    k, r = -A.construction.piece_degree, A.construction.piece_rank
    evidence = {"piece_degree": -k, "piece_rank": r}
    evidence.update(_sample(A, candidates, seed))
    test = evidence.get("length_test")
    if r == 1:
        evidence["argument"] = "rank-one piece: the length obstruction vanishes"
        return GorCertificate(INCONCLUSIVE, evidence)
    evidence["argument"] = (
        f"at a Gorenstein point a maximal regular sequence gives an artinian D with "
        f"len H^{-k} = {r}*len D, while Matlis duality forces len H^{-k} = len D >= 1"
    )
    if test is not None:
        lens = test["lengths"]
        if lens[str(-k)] != r * lens["0"] or [0, k] not in test["failing_pairs"]:
            raise TheoremViolation(f"sample reduction of {A!r} does not show the length obstruction: {test}")
    return GorCertificate(EMPTY_CERTIFIED, evidence)


def gor_certificate(A: DGRing, candidates=None, seed: int = 0) -> GorCertificate:
    if A.is_trivial_ext():
        return trivial_ext_gor_certificate(A, candidates, seed)
    lo = amplitude_bounds(A.cohomology_table())[0]
    if not full_support(A, lo):
        return GorCertificate(
            INCONCLUSIVE,
            {"reason": "Supp H^inf(A) is a proper subset, so a global regular sequence need not stay regular locally"},
        )
    evidence = _sample(A, candidates, seed)
    test = evidence.get("length_test")
    if test is None:
        evidence["reason"] = "no complete regular sequence found among the candidates"
        return GorCertificate(INCONCLUSIVE, evidence)
    return GorCertificate(test["status"], evidence)


# report --------------------------------------------------------------------------


@dataclass
class LociReport:
    dg: DGRing
    spectrum: dict
    dualizing: DualizingTable
    reg: ConstructibleSet | None
    reg_note: str | None
    cm_exact: ConstructibleSet
    cm_dense_open: ConstructibleSet | None
    cm_dense_note: str | None
    amplitudes: list
    gor: GorCertificate
    global_cm: dict

    def summary(self) -> dict:
        A = self.dg
        lo, hi, amp = amplitude_bounds(A.cohomology_table())
        return {
            "input": A.describe(),
            "spectrum": self.spectrum,
            "cohomology_A": {"inf": lo, "sup": hi, "amp": amp, "table": A.cohomology_table().summary()},
            "cohomology_R": self.dualizing.summary(),
            "pointwise_amplitudes": [
                {"amp_A": c.amp_a, "amp_R": c.amp_r, "strata": c.region.summary()} for c in self.amplitudes
            ],
            "reg": _set_or_note(self.reg, self.reg_note),
            "cm_exact": self.cm_exact.summary(),
            "cm_dense_open": _set_or_note(self.cm_dense_open, self.cm_dense_note),
            "gor": self.gor.summary(),
            "global_cm": self.global_cm,
        }


def _set_or_note(X, note):
    if X is None:
        return {"unavailable": note}
    return X.summary()


def spectrum_summary(A: DGRing, src: MinimalPrimesSource | None = None) -> dict:
    base = A.h0_base()
    src = src or MinimalPrimesSource.for_base(base)
    out = {"h0_ideal": list(A.h0_ideal.canonical()), "dimension": A.h0_dimension(), "primes_mode": src.mode}
    try:
        primes = minimal_primes(base, src)
    except DGLociError as exc:
        out["minimal_primes"] = None
        out["note"] = str(exc)
        return out
    out["minimal_primes"] = [list(p.canonical()) for p in primes]
    out["cover"] = [{"f": str(f), "prime": list(p.canonical())} for f, p in irreducible_cover(base, primes=primes)]
    if src.mode == "declared":
        out["note"] = "declared primes are checked for radical cover and incomparability, not for primality"
    return out


def full_report(
    A: DGRing,
    src: MinimalPrimesSource | None = None,
    candidates=None,
    seed: int = 0,
    jobs: int = 1,
    window: int | None = None,
) -> LociReport:
    base = A.h0_base()
    src = src or MinimalPrimesSource.for_base(base)
    A.cohomology_table()
    R = dualizing_table(A, window=window)
    try:
        primes = minimal_primes(base, src)
        primes_err = None
    except DGLociError as exc:
        primes, primes_err = None, str(exc)

    def job_reg():
        try:
            return reg_locus(A, src, primes) if primes is not None else _reg_without_primes(A, primes_err), None
        except UnsupportedError as exc:
            return None, str(exc)

    def job_gor():
        return gor_certificate(A, candidates, seed)

    def job_amps():
        return pointwise_amplitudes(A, R)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            f_reg, f_gor, f_amp = pool.submit(job_reg), pool.submit(job_gor), pool.submit(job_amps)
            (reg, reg_note), gor, amps = f_reg.result(), f_gor.result(), f_amp.result()
    else:
        (reg, reg_note), gor, amps = job_reg(), job_gor(), job_amps()

    strata = [s for c in amps if c.amp_a == c.amp_r for s in c.region.strata]
    exact = ConstructibleSet(base, strata)
    if primes is not None:
        dense, dense_note = cm_dense_open(A, src, primes, R, exact), None
    else:
        dense, dense_note = None, primes_err
    global_cm = cm_global_check(A, src, R, exact)

    if reg is not None and not reg.subset_of(exact):
        raise TheoremViolation(f"Reg(A) = {reg} is not inside CM(A) = {exact}")
    if gor.status == EMPTY_CERTIFIED and reg is not None and not reg.is_empty():
        raise TheoremViolation("Gor(A) is certified empty but Reg(A) is not")
    return LociReport(A, spectrum_summary(A, src), R, reg, reg_note, exact, dense, dense_note, amps, gor, global_cm)


def _reg_without_primes(A: DGRing, note):
    """Reg(A) when W is empty needs no primes; otherwise report the gap."""
    W = ConstructibleSet.open_set(A.h0_base(), _negative_support_ideal(A))
    if W.is_empty():
        return W
    raise UnsupportedError(note)


def cover_report(A: DGRing, src: MinimalPrimesSource | None = None) -> dict:
    base = A.h0_base()
    primes = minimal_primes(base, src or MinimalPrimesSource.for_base(base))
    cover = irreducible_cover(base, primes=primes)
    X = cover_union(base, cover)
    return {
        "minimal_primes": [list(p.canonical()) for p in primes],
        "pieces": [{"f": str(f), "prime": list(p.canonical())} for f, p in cover],
        "union": X.summary(),
        "dense": is_dense_open(X, primes),
    }
