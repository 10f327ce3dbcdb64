"""Coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError, ResourceError

# numerator/denominator bit bound for rational coefficients
DEFAULT_BIT_BOUND = 1 << 14


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A computable coefficient field.

    ``characteristic == 0`` means QQ (elements are ``Fraction``); a prime
    ``p`` means F_p (elements are ints in ``range(p)``).
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (_is_prime(p) and p < 2**31):
            raise InputError(f"characteristic must be 0 or a prime below 2^31, got {p}")

    @classmethod
    def parse(cls, name: str) -> FieldSpec:
        s = name.strip()
        if s.upper() in ("QQ", "Q"):
            return cls(0)
        if s[:1] in "Ff" and s[1:].isdigit():
            return cls(int(s[1:]))
        if s.upper().startswith("GF") and s[2:].isdigit():
            return cls(int(s[2:]))
        raise InputError(f"unknown field {name!r} (use QQ or Fp for a prime p)")

    @property
    def name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"F{self.characteristic}"

    def __str__(self):
        return self.name

    def __call__(self, value):
        """Coerce an int or Fraction into the field."""
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, p)) % p
        return int(value) % p

    def inv(self, c):
        if self.characteristic:
            return pow(c, -1, self.characteristic)
        return 1 / c

    def one(self):
        return self(1)

    def check_size(self, c, bound: int = DEFAULT_BIT_BOUND):
        if self.characteristic == 0 and (
            c.numerator.bit_length() > bound or c.denominator.bit_length() > bound
        ):
            raise ResourceError(
                f"rational coefficient exceeds the {bound}-bit bound during Groebner computation"
            )

    def to_str(self, c) -> str:
        """Canonical text; F_p elements use the symmetric residue."""
        p = self.characteristic
        if p:
            c = int(c)
            if c > p // 2:
                c -= p
            return str(c)
        return str(c)
