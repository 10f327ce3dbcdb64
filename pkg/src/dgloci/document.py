"""The input language: bracketed sections of key = value pairs.

    [ring]
    field = "F5"
    vars = ["x", "y"]
    ideal = ["x*y"]
    [dg]
    kind = "trivial_ext"
    piece_degree = -2
    piece_rank = 2
    [spectrum]
    minimal_primes = [["x"], ["y"]]
    [options]
    order = "grevlex"
    window = 6
    seed = 0
    candidates = ["x + y"]

The syntax is a subset of TOML, so ``tomli`` does the lexing; this module
validates the values and maps semantic errors back to line and column.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace

import tomli

from .dgring import BaseAlgebra, DGRing, Koszul, TrivialExt, build_dg
from .errors import InputError
from .polyalg.field import FieldSpec
from .polyalg.ideal import Ideal
from .polyalg.ring import PolyRing
from .spectrum import MinimalPrimesSource

SECTIONS = {
    "ring": {"field", "vars", "ideal"},
    "dg": {"kind", "elements", "piece_degree", "piece_rank"},
    "spectrum": {"minimal_primes"},
    "options": {"order", "window", "seed", "candidates"},
}
KINDS = ("koszul", "trivial_ext")


@dataclass(frozen=True)
class InputDocument:
    field: str
    variables: tuple[str, ...]
    ideal: tuple[str, ...] = ()
    kind: str = "koszul"
    elements: tuple[str, ...] = ()
    piece_degree: int = -2
    piece_rank: int = 2
    minimal_primes: tuple[tuple[str, ...], ...] | None = None
    order: str = "grevlex"
    window: int | None = None
    seed: int = 0
    candidates: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def with_options(self, **kw) -> InputDocument:
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, _cache={}, **kw) if kw else self

    def ring(self) -> PolyRing:
        if "ring" not in self._cache:
            self._cache["ring"] = PolyRing(FieldSpec.parse(self.field), self.variables, self.order)
        return self._cache["ring"]

    def base(self) -> BaseAlgebra:
        P = self.ring()
        primes = None
        if self.minimal_primes is not None:
            primes = tuple(Ideal(P, gens) for gens in self.minimal_primes)
        return BaseAlgebra(P, Ideal(P, self.ideal), primes)

    def dg(self) -> DGRing:
        if "dg" not in self._cache:
            if self.kind == "koszul":
                P = self.ring()
                con = Koszul(tuple(P(e) for e in self.elements))
            else:
                con = TrivialExt(self.piece_degree, self.piece_rank)
            self._cache["dg"] = build_dg(self.base(), con)
        return self._cache["dg"]

    def primes_source(self) -> MinimalPrimesSource:
        return MinimalPrimesSource.for_base(self.dg().h0_base())

    def candidate_polys(self):
        if self.candidates is None:
            return None
        P = self.ring()
        return [P(c) for c in self.candidates]


def _locate(text: str, section: str, key: str | None, needle: str | None = None):
    """(line, column) of ``needle`` inside ``key`` of ``section``, 1-based."""
    lines = text.splitlines()
    current = None
    start = None
    for i, line in enumerate(lines):
        m = re.match(r"\s*\[([^\]]+)\]", line)
        if m:
            current = m.group(1).strip()
            if current == section and key is None:
                return i + 1, 1
            continue
        if current == section and key is not None and re.match(rf"\s*{re.escape(key)}\s*=", line):
            start = i
            break
    if start is None:
        return None, None
    if needle is None:
        return start + 1, lines[start].index(key) + 1
    quoted = json.dumps(needle)
    for i in range(start, len(lines)):
        if i > start and re.match(r"\s*(\[[^\]\"]+\]\s*$|\w+\s*=)", lines[i]):
            break
        col = lines[i].find(quoted)
        if col >= 0:
            return i + 1, col + 2
    return start + 1, lines[start].index(key) + 1


def _fail(text, message, section, key=None, needle=None, offset=None):
    line, col = _locate(text, section, key, needle)
    if col is not None and offset is not None and needle is not None:
        col += offset - 1
    raise InputError(message, line=line, column=col, section=section)


def _string_list(text, sec, key, value, nested=False):
    if not isinstance(value, list):
        _fail(text, f"{key} must be a list", sec, key)
    for v in value:
        if nested:
            _string_list(text, sec, key, v)
        elif not isinstance(v, str):
            _fail(text, f"{key} entries must be strings, got {v!r}", sec, key)
    return value


def parse_input(text: str) -> InputDocument:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise InputError(
            getattr(exc, "msg", str(exc)), line=getattr(exc, "lineno", None), column=getattr(exc, "colno", None)
        ) from None
    for sec, body in data.items():
        if sec not in SECTIONS:
            _fail(text, f"unknown section [{sec}]", sec)
        if not isinstance(body, dict):
            raise InputError(f"{sec} must be a [section]")
        for key in body:
            if key not in SECTIONS[sec]:
                _fail(text, f"unknown key {key!r}", sec, key)
    nlines = len(text.splitlines()) or 1
    for sec in ("ring", "dg"):
        if sec not in data:
            raise InputError(f"missing section [{sec}]", line=nlines, column=1, section=sec)
    ring, dg = data["ring"], data["dg"]
    opts = data.get("options", {})
    for key in ("field", "vars"):
        if key not in ring:
            _fail(text, f"missing key {key!r}", "ring")
    if not isinstance(ring["field"], str):
        _fail(text, "field must be a string such as \"QQ\" or \"F5\"", "ring", "field")
    try:
        fs = FieldSpec.parse(ring["field"])
    except InputError as exc:
        _fail(text, exc.message, "ring", "field")
    variables = _string_list(text, "ring", "vars", ring["vars"])
    order = opts.get("order", "grevlex")
    if not isinstance(order, str):
        _fail(text, "order must be a string", "options", "order")
    try:
        P = PolyRing(fs, variables, order)
    except InputError as exc:
        sec, key = ("options", "order") if "order" in exc.message else ("ring", "vars")
        _fail(text, exc.message, sec, key)

    def polys(sec, key, values):
        for s in values:
            try:
                P(s)
            except InputError as exc:
                _fail(text, exc.message, sec, key, s, exc.column)
        return tuple(values)

    ideal = polys("ring", "ideal", _string_list(text, "ring", "ideal", ring.get("ideal", [])))
    if "kind" not in dg:
        _fail(text, "missing key 'kind'", "dg")
    kind = dg["kind"]
    if kind not in KINDS:
        _fail(text, f"kind must be one of {', '.join(KINDS)}", "dg", "kind")
    elements: tuple = ()
    pdeg, prank = -2, 2
    if kind == "koszul":
        for key in ("piece_degree", "piece_rank"):
            if key in dg:
                _fail(text, f"{key} does not apply to a Koszul complex", "dg", key)
        elements = polys("dg", "elements", _string_list(text, "dg", "elements", dg.get("elements", [])))
    else:
        if "elements" in dg:
            _fail(text, "elements do not apply to a trivial extension", "dg", "elements")
        pdeg, prank = dg.get("piece_degree", -2), dg.get("piece_rank", 2)
        for key, v in (("piece_degree", pdeg), ("piece_rank", prank)):
            if not isinstance(v, int) or isinstance(v, bool):
                _fail(text, f"{key} must be an integer", "dg", key)
        if pdeg >= 0:
            _fail(text, f"piece_degree must be negative, got {pdeg}", "dg", "piece_degree")
        if prank <= 0:
            _fail(text, f"piece_rank must be positive, got {prank}", "dg", "piece_rank")
    primes = None
    if "spectrum" in data and "minimal_primes" in data["spectrum"]:
        raw = _string_list(text, "spectrum", "minimal_primes", data["spectrum"]["minimal_primes"], nested=True)
        primes = tuple(polys("spectrum", "minimal_primes", p) for p in raw)
    window = opts.get("window")
    if window is not None and (not isinstance(window, int) or isinstance(window, bool) or window < 0):
        _fail(text, "window must be a non-negative integer", "options", "window")
    seed = opts.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        _fail(text, "seed must be an integer", "options", "seed")
    cands = None
    if "candidates" in opts:
        cands = polys("options", "candidates", _string_list(text, "options", "candidates", opts["candidates"]))
    doc = InputDocument(
        field=fs.name,
        variables=tuple(variables),
        ideal=ideal,
        kind=kind,
        elements=elements,
        piece_degree=pdeg,
        piece_rank=prank,
        minimal_primes=primes,
        order=order,
        window=window,
        seed=seed,
        candidates=cands,
    )
    try:
        doc.base()
    except InputError as exc:
        _fail(text, exc.message, "ring", "ideal")
    return doc


def _q(s: str) -> str:
    return json.dumps(s)


def _list(xs) -> str:
    return "[" + ", ".join(_q(x) for x in xs) + "]"


def print_document(doc: InputDocument) -> str:
    out = ["[ring]", f"field = {_q(doc.field)}", f"vars = {_list(doc.variables)}", f"ideal = {_list(doc.ideal)}", "[dg]"]
    out.append(f"kind = {_q(doc.kind)}")
    if doc.kind == "koszul":
        out.append(f"elements = {_list(doc.elements)}")
    else:
        out.append(f"piece_degree = {doc.piece_degree}")
        out.append(f"piece_rank = {doc.piece_rank}")
    if doc.minimal_primes is not None:
        out.append("[spectrum]")
        out.append("minimal_primes = [" + ", ".join(_list(p) for p in doc.minimal_primes) + "]")
    out.append("[options]")
    out.append(f"order = {_q(doc.order)}")
    if doc.window is not None:
        out.append(f"window = {doc.window}")
    out.append(f"seed = {doc.seed}")
    if doc.candidates is not None:
        out.append(f"candidates = {_list(doc.candidates)}")
    return "\n".join(out) + "\n"


def load(path) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not valid UTF-8") from None
    return parse_input(text)
