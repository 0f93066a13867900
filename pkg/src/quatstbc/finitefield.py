"""Small odd-characteristic residue fields F_p and F_p^2 = F_p[t]/(t^2+1).

Only what the residue computations need: exact arithmetic, Euler-criterion
square testing, and full enumeration (the fields here are tiny -- they are
residue fields of desk-scale primes, not cryptographic ones).
"""

from __future__ import annotations

from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class FiniteField:
    """Descriptor of F_q with q = p^f, p an odd prime, f in {1, 2}.

    Degree 2 uses the modulus t^2 + 1, which is irreducible mod p exactly
    when p = 3 (mod 4); that is the only degree-2 case arising here.
    """

    __slots__ = ("p", "f", "q")

    def __init__(self, p: int, f: int = 1):
        if not is_prime(p) or p == 2:
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        if f not in (1, 2):
            raise ValueError("degree must be 1 or 2")
        if f == 2 and p % 4 != 3:
            raise ValueError(f"t^2+1 is reducible mod {p}; no degree-2 field here")
        self.p = p
        self.f = f
        self.q = p**f

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField) and other.p == self.p and other.f == self.f
        )

    def __hash__(self):
        return hash((self.p, self.f))

    def __str__(self) -> str:
        return f"F{self.q}"

    __repr__ = __str__

    def __call__(self, c0: int, c1: int = 0) -> "FqElem":
        return FqElem(self, c0 % self.p, c1 % self.p)

    @property
    def zero(self) -> "FqElem":
        return self(0)

    @property
    def one(self) -> "FqElem":
        return self(1)

    def elements(self):
        if self.f == 1:
            for c0 in range(self.p):
                yield self(c0)
        else:
            for c0 in range(self.p):
                for c1 in range(self.p):
                    yield self(c0, c1)

    def units(self):
        return (x for x in self.elements() if not x.is_zero())

    def squares(self) -> set:
        """The set of nonzero squares, by enumeration."""
        return {x * x for x in self.units()}


class FqElem:
    """c0 + c1*t in F_q (c1 = 0 when the field has degree 1)."""

    __slots__ = ("field", "c0", "c1")

    def __init__(self, field: FiniteField, c0: int, c1: int = 0):
        self.field = field
        self.c0 = c0 % field.p
        self.c1 = c1 % field.p
        if field.f == 1 and self.c1:
            raise ValueError("degree-1 field has no t component")

    def _check(self, other) -> "FqElem":
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FqElem) or other.field != self.field:
            raise ValueError("elements of different finite fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        return FqElem(self.field, self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return FqElem(self.field, self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FqElem(self.field, -self.c0, -self.c1)

    def __mul__(self, other):
        o = self._check(other)
        p = self.field.p
        # (c0 + c1 t)(d0 + d1 t) with t^2 = -1
        return FqElem(
            self.field,
            (self.c0 * o.c0 - self.c1 * o.c1) % p,
            (self.c0 * o.c1 + self.c1 * o.c0) % p,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        p = self.field.p
        n = (self.c0 * self.c0 + self.c1 * self.c1) % p
        if n == 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero")
            # t^2+1 irreducible guarantees n != 0 for nonzero elements
            raise AssertionError("norm vanished on a unit")
        ninv = pow(n, -1, p)
        return FqElem(self.field, self.c0 * ninv, -self.c1 * ninv)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, k: int) -> "FqElem":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def is_square(self) -> bool:
        """Euler criterion: nonzero x is a square iff x^((q-1)/2) = 1."""
        if self.is_zero():
            return True
        return self ** ((self.field.q - 1) // 2) == self.field.one

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.field.p, self.field.f, self.c0, self.c1))

    def __str__(self) -> str:
        if self.field.f == 1 or self.c1 == 0:
            return str(self.c0)
        if self.c0 == 0:
            return "t" if self.c1 == 1 else f"{self.c1}t"
        return f"{self.c0}+{self.c1}t" if self.c1 != 1 else f"{self.c0}+t"

    __repr__ = __str__
