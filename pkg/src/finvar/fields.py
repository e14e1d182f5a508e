"""Exact scalar arithmetic over GF(p) and Q.

Prime-field scalars are plain Python ints in [0, p); rationals are
``fractions.Fraction`` values (always stored in lowest terms with a
positive denominator).  The :class:`Field` object carries the operations
so scalars themselves stay lightweight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FinvarError

MAX_PRIME = 2**31 - 1

Scalar = int | Fraction


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
class Field:
    """Descriptor of the ground field: GF(p) or Q.

    ``p`` is None exactly for the rationals.
    """

    p: int | None

    def __post_init__(self):
        if self.p is not None:
            if self.p >= MAX_PRIME:
                raise FinvarError(f"prime {self.p} does not fit in a machine word")
            if not _is_prime(self.p):
                raise FinvarError(f"{self.p} is not prime")

    @staticmethod
    def gf(p: int) -> Field:
        return Field(p)

    @staticmethod
    def rationals() -> Field:
        return Field(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def zero(self) -> Scalar:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p is not None else Fraction(1)

    def from_int(self, n: int) -> Scalar:
        return n % self.p if self.p is not None else Fraction(n)

    def coerce(self, x: int | Fraction) -> Scalar:
        """Reduce an int or Fraction into the field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FinvarError(f"denominator of {x} not invertible mod {self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return x % self.p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a: Scalar) -> Scalar:
        if self.p is not None:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero in GF(p)")
            return pow(a, -1, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return Fraction(1) / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def pow(self, a: Scalar, e: int) -> Scalar:
        if self.p is not None:
            return pow(a, e, self.p)
        return a**e

    def is_zero(self, a: Scalar) -> bool:
        return (a % self.p == 0) if self.p is not None else a == 0

    def scalar_str(self, a: Scalar) -> str:
        return str(a)

    def to_json(self) -> dict:
        if self.p is not None:
            return {"prime": self.p}
        return {"rationals": True}

    @staticmethod
    def from_json(obj: dict) -> Field:
        if obj.get("rationals"):
            return Field.rationals()
        return Field.gf(int(obj["prime"]))

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p is not None else "Q"
