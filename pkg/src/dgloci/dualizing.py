"""Cohomology of the dualizing DG-module, normalized as RHom_P(A, P)[d].

P is the ambient polynomial ring, d its number of variables.  Only the
cohomology of R is computed, as modules killed by the H^0 ideal up to radical.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .dgring import CohomologyTable, DGRing, amplitude_bounds
from .errors import ResourceError, TheoremViolation
from .modcomplex import (
    dual_into_ring,
    free_resolution_of_complex,
    homology_at,
    required_window,
)
from .polyalg.ideal import radical_membership


@dataclass(frozen=True)
class DualizingTable:
    source: DGRing
    table: CohomologyTable
    normalization_shift: int

    def bounds(self) -> tuple[int, int, int]:
        return amplitude_bounds(self.table)

    def summary(self) -> dict:
        lo, hi, amp = self.bounds()
        return {
            "shift": self.normalization_shift,
            "inf": lo,
            "sup": hi,
            "amp": amp,
            "cohomology": self.table.summary(),
        }


_cache_lock = threading.Lock()


def dualizing_table(A: DGRing, shift: int | None = None, window: int | None = None, method: str = "auto") -> DualizingTable:
    """Cohomology of R = dual(F)[shift] where F resolves the complex of A.

    With C supported in [a, b], RHom_P(C, P) lives in [-b, -a + nvars], so
    only those degrees are computed.  ``window`` below the certified bound
    raises ResourceError naming the bound.
    """
    d = A.ring.nvars if shift is None else shift
    key = (d, window, method)
    if shift is None and window is None and method == "auto":
        cached = A._dualizing
        if cached is not None:
            return cached
    C = A.complex()
    need = required_window(C)
    if window is not None and window < need:
        raise ResourceError(f"resolution window {window} is too small; degrees of R need window >= {need}")
    F = free_resolution_of_complex(C, window, method=method)
    D = dual_into_ring(F)
    h0 = A.h0_ideal
    lo, hi = -C.top, -C.bottom + A.ring.nvars
    entries = {}
    for n in range(lo, hi + 1):
        H = homology_at(D, n)
        if not H.is_zero():
            # degrees of R = D[d]: R^m = D^{m + d}
            entries[n - d] = H
    table = CohomologyTable(h0, entries)
    out = DualizingTable(A, table, d)
    check_amp(A, out)
    if key == (A.ring.nvars, None, "auto"):
        with _cache_lock:
            A._dualizing = out
    return out


def check_amp(A: DGRing, R: DualizingTable):
    amp_a = amplitude_bounds(A.cohomology_table())[2]
    amp_r = amplitude_bounds(R.table)[2]
    if amp_a > amp_r:
        raise TheoremViolation(f"amp(A) = {amp_a} exceeds amp(R) = {amp_r} for {A!r}")


def check_amp_inequality(A: DGRing) -> tuple[int, int, bool]:
    amp_a = amplitude_bounds(A.cohomology_table())[2]
    amp_r = amplitude_bounds(dualizing_table(A).table)[2]
    return amp_a, amp_r, amp_a <= amp_r


def killed_up_to_radical(R: DualizingTable) -> bool:
    """Every generator of the H^0 ideal lies in sqrt(Ann H^n(R)) for all n."""
    T = R.table
    gens = T.h0_ideal.generators
    return all(radical_membership(g, T.annihilator(n)) for n in T.degrees for g in gens)
