"""Command-line entry point: ``dgloci COMMAND FILE [options]``."""

from __future__ import annotations

import argparse
import sys

from .document import InputDocument, load
from .dgring import amplitude_bounds
from .dualizing import dualizing_table
from .errors import DGLociError, InputError
from .loci import (
    cm_dense_open,
    cm_locus_exact,
    cover_report,
    full_report,
    gor_certificate,
    reg_locus,
)
from .report import emit_report

COMMANDS = ("cohomology", "dualizing", "reg", "cm", "gor", "cover", "report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dgloci", description="Cohomology, dualizing modules and loci of DG-rings.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file")
    ap.add_argument("--order", help="monomial order: grevlex, lex or elim:k")
    ap.add_argument("--window", type=int, help="resolution window for the dualizing module")
    ap.add_argument("--seed", type=int, help="seed for the regular-sequence candidate pool")
    ap.add_argument("--format", choices=("text", "json", "structured"), default="text", help="structured is an alias for json")
    ap.add_argument("--candidates", help="comma-separated candidate elements for regular sequences")
    ap.add_argument("--mode", choices=("exact", "dense-open"), default="exact", help="which CM set `cm` prints")
    ap.add_argument("--jobs", type=int, default=1, help="worker threads for independent report sections")
    return ap


def run_command(doc: InputDocument, cmd: str, mode: str = "exact", jobs: int = 1) -> dict:
    A = doc.dg()
    src = doc.primes_source()
    if cmd == "cohomology":
        T = A.cohomology_table()
        lo, hi, amp = amplitude_bounds(T)
        return {"input": A.describe(), "inf": lo, "sup": hi, "amp": amp, "cohomology": T.summary()}
    if cmd == "dualizing":
        return {"input": A.describe(), "dualizing": dualizing_table(A, window=doc.window).summary()}
    if cmd == "reg":
        return {"input": A.describe(), "reg": reg_locus(A, src).summary()}
    if cmd == "cm":
        R = dualizing_table(A, window=doc.window)
        exact = cm_locus_exact(A, R)
        if mode == "exact":
            return {"input": A.describe(), "cm_exact": exact.summary()}
        return {"input": A.describe(), "cm_dense_open": cm_dense_open(A, src, R=R, exact=exact).summary()}
    if cmd == "gor":
        return {"input": A.describe(), "gor": gor_certificate(A, doc.candidate_polys(), doc.seed).summary()}
    if cmd == "cover":
        return {"input": A.describe(), "cover": cover_report(A, src)}
    if cmd == "report":
        rep = full_report(A, src, doc.candidate_polys(), doc.seed, jobs=jobs, window=doc.window)
        return rep.summary()
    raise InputError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cands = None
        if args.candidates is not None:
            cands = tuple(c.strip() for c in args.candidates.split(",") if c.strip())
        doc = load(args.file)
        doc = doc.with_options(order=args.order, window=args.window, seed=args.seed, candidates=cands)
        if cands is not None:
            doc.candidate_polys()
        result = run_command(doc, args.command, args.mode, max(1, args.jobs))
    except DGLociError as exc:
        print(f"dgloci {args.command}: error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.buffer.write(emit_report(result, args.format))
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
