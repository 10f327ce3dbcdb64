"""Polynomial rings, monomial orders and sparse polynomials."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import InputError, RingMismatchError
from .field import FieldSpec

ORDERS = ("grevlex", "lex")


def _grevlex(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def make_order_key(order: str, nvars: int):
    """Return a function mapping exponent tuples to sort keys (larger = bigger).

    Supported tags: ``grevlex``, ``lex`` and ``elim:k`` (grevlex on the first
    ``k`` variables, then grevlex on the rest; an elimination order for the
    first block).
    """
    if order == "grevlex":
        fn = _grevlex
    elif order == "lex":
        def fn(e):
            return e
    elif order.startswith("elim:"):
        k = int(order[5:])
        if not 0 <= k <= nvars:
            raise InputError(f"bad elimination block size {k}")

        def fn(e):
            return _grevlex(e[:k]) + _grevlex(e[k:])
    else:
        raise InputError(f"unknown monomial order {order!r}")
    return lru_cache(maxsize=1 << 16)(fn)


class PolyRing:
    """The ambient ring ``field[variables]`` with a fixed monomial order."""

    def __init__(self, field: FieldSpec, variables: Sequence[str], order: str = "grevlex"):
        variables = tuple(variables)
        if not variables:
            raise InputError("a polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise InputError(f"duplicate variable names in {list(variables)}")
        for v in variables:
            if not v or not (v[0].isalpha() or v[0] == "_") or not all(ch.isalnum() or ch == "_" for ch in v):
                raise InputError(f"invalid variable name {v!r}")
        self.field = field
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self.key = make_order_key(order, self.nvars)
        self._index = {v: i for i, v in enumerate(variables)}
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing({self.field.name}, {list(self.variables)}, {self.order!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    # constructors -----------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def monomial(self, exp, c=1) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def var(self, name: str) -> Polynomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return self.monomial(e)

    @property
    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    def __call__(self, value) -> Polynomial:
        """Coerce a string, int or polynomial into this ring."""
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError(f"{value} lives in {value.ring}, not {self}")
            return value
        if isinstance(value, str):
            from .parsing import parse_polynomial

            return parse_polynomial(self, value)
        return self.const(value)

    def with_order(self, order: str) -> PolyRing:
        return PolyRing(self.field, self.variables, order)

    def fresh_name(self, base: str = "t") -> str:
        name = "_" + base
        while name in self._index:
            name += "_"
        return name

    def extend(self, names: Iterable[str], order: str | None = None) -> PolyRing:
        return PolyRing(self.field, self.variables + tuple(names), order or self.order)


def _clean(_field, terms: dict) -> dict:
    return {e: c for e, c in terms.items() if c}


class Polynomial:
    """Sparse polynomial: a map exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in decreasing monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    @property
    def lead_exp(self) -> tuple:
        key = self.ring.key
        return max(self.terms, key=key)

    @property
    def lead_coeff(self):
        return self.terms[self.lead_exp]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def support_vars(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff))

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, _clean(None, {e: (a * c) % p for e, a in self.terms.items()}))
        return Polynomial(self.ring, _clean(None, {e: a * c for e, a in self.terms.items()}))

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                out[e] = v
        return Polynomial(self.ring, _clean(None, out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, exp, c) -> Polynomial:
        p = self.ring.field.characteristic
        out = {}
        for e, a in self.terms.items():
            v = a * c
            if p:
                v %= p
            if v:
                out[tuple(x + y for x, y in zip(e, exp))] = v
        return Polynomial(self.ring, out)

    def derivative(self, var: int | str) -> Polynomial:
        i = var if isinstance(var, int) else self.ring.index(var)
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = f(c * e[i]) if f.characteristic else c * e[i]
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return Polynomial(self.ring, out)

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Quotient when ``other`` divides ``self`` exactly (multivariate division)."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q = self.ring.zero()
        r = self
        le, lc = other.lead_exp, other.lead_coeff
        inv = self.ring.field.inv(lc)
        while r:
            e = r.lead_exp
            if any(a < b for a, b in zip(e, le)):
                raise ValueError(f"{other} does not divide {self}")
            shift = tuple(a - b for a, b in zip(e, le))
            c = r.terms[e] * inv
            if self.ring.field.characteristic:
                c %= self.ring.field.characteristic
            t = self.ring.monomial(shift, c)
            q = q + t
            r = r - other.mul_term(shift, c)
        return q

    def embed(self, ring: PolyRing, mapping: Sequence[int] | None = None) -> Polynomial:
        """Move into ``ring``; variable i goes to index ``mapping[i]``
        (default: same name)."""
        if mapping is None:
            mapping = [ring.index(v) for v in self.ring.variables]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    if mapping[i] is None:
                        raise ValueError(f"variable {self.ring.variables[i]} has no image")
                    ne[mapping[i]] += a
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return Polynomial(ring, _clean(None, out))

    # comparison / text ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_terms(self.ring, self.sorted_terms())

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def format_monomial(ring: PolyRing, e) -> str:
    parts = []
    for name, a in zip(ring.variables, e):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_terms(ring: PolyRing, terms) -> str:
    if not terms:
        return "0"
    out = []
    for e, c in terms:
        cs = ring.field.to_str(c)
        mono = format_monomial(ring, e)
        if not mono:
            t = cs
        elif cs == "1":
            t = mono
        elif cs == "-1":
            t = "-" + mono
        else:
            t = f"{cs}*{mono}"
        if not out:
            out.append(t)
        elif t.startswith("-"):
            out.append(" - " + t[1:])
        else:
            out.append(" + " + t)
    return "".join(out)
