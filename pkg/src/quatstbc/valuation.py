"""Discrete valuations on Q and Q(i), and the formal towers above them.

A prime ideal of Z[i] is represented by :class:`GaussianPrime`, carrying its
splitting behaviour over Q, ramification/inertia data and residue field.
:class:`Place` packages a prime of either base field together with exact
valuation and residue-reduction maps.  :class:`Valuation` stacks optional
formal-variable levels (for rational function fields F(x, y)) on top of a
place; the formal levels carry no completion data, only "valuation = degree
in the variable".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .exactnum import Field, GaussianRational, Scalar
from .finitefield import FiniteField, FqElem, is_prime

INF = math.inf

_GaussInt = tuple[int, int]  # (re, im), plain integers


def _gi_mul(u: _GaussInt, v: _GaussInt) -> _GaussInt:
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _gi_norm(u: _GaussInt) -> int:
    return u[0] * u[0] + u[1] * u[1]


def _as_gauss_over(z: Scalar) -> tuple[_GaussInt, int]:
    """Write a Gaussian rational as (w, d) with w in Z[i], d a positive int."""
    z = GaussianRational.coerce(z)
    d = z.re.denominator * z.im.denominator // gcd(
        z.re.denominator, z.im.denominator
    )
    return (int(z.re * d), int(z.im * d)), d


class GaussianPrime:
    """A prime ideal of Z[i], with canonical generator and residue data.

    Generators are normalized to odd positive real part, which pins down a
    unique associate for every odd prime (the two conjugate primes above a
    split p get the representatives x+iy and x-iy with x odd positive).
    The ramified prime above 2 is stored as 1+i and flagged dyadic; it is
    valid for valuation arithmetic but has no (odd) residue field here.
    """

    __slots__ = ("kind", "x", "y", "p", "e", "f", "residue", "_s")

    def __init__(self, kind: str, x: int, y: int, p: int):
        self.kind = kind  # "split" | "inert" | "ramified"
        self.x = x
        self.y = y
        self.p = p
        if kind == "split":
            self.e, self.f = 1, 1
            self.residue = FiniteField(p, 1)
            # x + iy = 0 in the residue field forces i -> -x / y (mod p)
            self._s = (-x * pow(y, -1, p)) % p
        elif kind == "inert":
            self.e, self.f = 1, 2
            self.residue = FiniteField(p, 2)
            self._s = None
        elif kind == "ramified":
            self.e, self.f = 2, 1
            self.residue = None
            self._s = None
        else:
            raise ValueError(f"unknown prime kind {kind!r}")

    # -- basic data -----------------------------------------------------

    @property
    def gen(self) -> _GaussInt:
        return (self.x, self.y)

    @property
    def ideal_norm(self) -> int:
        """Number of elements of Z[i] / P, i.e. p^f."""
        return self.p**self.f

    @property
    def dyadic(self) -> bool:
        return self.p == 2

    def conjugate(self) -> "GaussianPrime":
        if self.kind != "split":
            return self
        return GaussianPrime("split", self.x, -self.y, self.p)

    def generator(self) -> GaussianRational:
        return GaussianRational(self.x, self.y)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaussianPrime)
            and self.kind == other.kind
            and self.gen == other.gen
        )

    def __hash__(self):
        return hash((self.kind, self.gen))

    def __str__(self) -> str:
        if self.kind == "inert":
            return f"({self.p})"
        im = f"{'+' if self.y >= 0 else '-'}{abs(self.y)}i"
        body = f"({self.x}{im})"
        return body + ("[dyadic]" if self.dyadic else "")

    __repr__ = __str__

    # -- valuation ------------------------------------------------------

    def _divide_once(self, w: _GaussInt) -> _GaussInt | None:
        """w / generator if exact, else None."""
        if self.kind == "inert":
            if w[0] % self.p == 0 and w[1] % self.p == 0:
                return (w[0] // self.p, w[1] // self.p)
            return None
        n = _gi_mul(w, (self.x, -self.y))  # w * conj(gen)
        q = _gi_norm(self.gen)
        if n[0] % q == 0 and n[1] % q == 0:
            return (n[0] // q, n[1] // q)
        return None

    def v_int(self, w: _GaussInt) -> int | float:
        """Valuation of a Gaussian integer (INF for zero)."""
        if w == (0, 0):
            return INF
        k = 0
        nxt = self._divide_once(w)
        while nxt is not None:
            w = nxt
            k += 1
            nxt = self._divide_once(w)
        return k

    def v_rational_int(self, d: int) -> int:
        """Valuation of a nonzero ordinary integer."""
        k = 0
        d = abs(d)
        while d % self.p == 0:
            d //= self.p
            k += 1
        return k * (2 if self.kind == "ramified" else 1)

    # -- residue map ----------------------------------------------------

    def _phi_int(self, w: _GaussInt) -> FqElem:
        if self.kind == "split":
            return self.residue((w[0] + w[1] * self._s) % self.p)
        return self.residue(w[0] % self.p, w[1] % self.p)

    def reduce(self, z: Scalar) -> FqElem:
        """Image of z in the residue field; requires v(z) >= 0."""
        if self.dyadic:
            raise ValueError("no odd residue arithmetic at the dyadic prime (1+i)")
        w, d = _as_gauss_over(z)
        if w == (0, 0):
            return self.residue.zero
        k = 0
        while d % self.p == 0:
            d //= self.p
            k += 1
        if k == 0:
            num = self._phi_int(w)
            den = self.residue(d % self.p)
        elif self.kind == "inert":
            for _ in range(k):
                nxt = self._divide_once(w)
                if nxt is None:
                    raise ValueError(f"{z} is not integral at {self}")
                w = nxt
            num = self._phi_int(w)
            den = self.residue(d % self.p)
        else:
            # split: cancel pi^k against p^k = pi^k * conj(pi)^k
            for _ in range(k):
                nxt = self._divide_once(w)
                if nxt is None:
                    raise ValueError(f"{z} is not integral at {self}")
                w = nxt
            num = self._phi_int(w)
            conj_bar = self._phi_int((self.x, -self.y))  # nonzero: conj prime is coprime
            den = self.residue(d % self.p) * conj_bar**k
        if den.is_zero():
            raise ValueError(f"{z} is not integral at {self}")
        return num / den


def factor_prime_in_Zi(p: int) -> list[GaussianPrime]:
    """Factor the rational prime p in Z[i].

    p = 1 (mod 4) splits into two conjugate primes found from a
    two-squares decomposition p = x^2 + y^2; p = 3 (mod 4) stays inert
    with residue field of p^2 elements; p = 2 ramifies as (1+i)^2 and the
    returned prime is flagged dyadic.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return [GaussianPrime("ramified", 1, 1, 2)]
    if p % 4 == 3:
        return [GaussianPrime("inert", p, 0, p)]
    for x in range(1, isqrt(p) + 1):
        y2 = p - x * x
        y = isqrt(y2)
        if y * y == y2:
            if x % 2 == 0:
                x, y = y, x
            return [
                GaussianPrime("split", x, y, p),
                GaussianPrime("split", x, -y, p),
            ]
    raise AssertionError(f"no two-squares decomposition found for {p}")


def normalize_gaussian_prime(w: GaussianRational) -> GaussianPrime:
    """Recognize a Gaussian integer as a prime element and canonicalize it.

    Accepts any associate; the stored generator has odd positive real part
    (split/inert) so equality of primes is structural.
    """
    if not w.is_gaussian_integer() or w.is_zero():
        raise ValueError(f"{w} is not a nonzero Gaussian integer")
    n = int(w.norm())
    x, y = int(w.re), int(w.im)
    if n == 2:
        return GaussianPrime("ramified", 1, 1, 2)
    if is_prime(n):
        p = n
        # pick the associate with odd positive real part
        for cand in ((x, y), (-x, -y), (-y, x), (y, -x)):
            if cand[0] > 0 and cand[0] % 2 == 1:
                return GaussianPrime("split", cand[0], cand[1], p)
        raise AssertionError("no canonical associate found")
    r = isqrt(n)
    if r * r == n and is_prime(r) and r % 4 == 3:
        # unit multiple of a rational inert prime
        if (x, y) in ((r, 0), (-r, 0), (0, r), (0, -r)):
            return GaussianPrime("inert", r, 0, r)
    raise ValueError(f"{w} is not a prime element of Z[i]")


# ---------------------------------------------------------------------------
# Valuations on the two base fields
# ---------------------------------------------------------------------------


def vp(x: int | Fraction, p: int) -> int | float:
    """The p-adic valuation on Q; vp(0) = infinity."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def v_gaussian(z: Scalar, P: GaussianPrime) -> int | float:
    """The P-adic valuation extended to Q(i) by v(w/d) = v(w) - v(d)."""
    w, d = _as_gauss_over(z)
    if w == (0, 0):
        return INF
    return P.v_int(w) - P.v_rational_int(d)


class Place:
    """A non-archimedean place of Q or Q(i) with exact residue arithmetic."""

    def __init__(self, field: Field, prime: Union[int, GaussianPrime]):
        self.field = field
        if field is Field.Q:
            if not isinstance(prime, int) or not is_prime(prime):
                raise ValueError(f"{prime} is not a rational prime")
        else:
            if not isinstance(prime, GaussianPrime):
                raise ValueError("places of Q(i) are built from a GaussianPrime")
        self.prime = prime

    @classmethod
    def of_rational_prime(cls, p: int) -> "Place":
        return cls(Field.Q, p)

    @classmethod
    def of_gaussian_prime(cls, P: GaussianPrime) -> "Place":
        return cls(Field.QI, P)

    @property
    def dyadic(self) -> bool:
        if self.field is Field.Q:
            return self.prime == 2
        return self.prime.dyadic

    @property
    def residue(self) -> FiniteField:
        if self.dyadic:
            raise ValueError(f"dyadic place {self} has no odd residue field")
        if self.field is Field.Q:
            return FiniteField(self.prime, 1)
        return self.prime.residue

    def uniformizer(self) -> GaussianRational:
        if self.field is Field.Q:
            return GaussianRational(self.prime)
        return self.prime.generator()

    def v(self, z: Scalar) -> int | float:
        z = GaussianRational.coerce(z)
        if self.field is Field.Q:
            if not z.is_rational():
                raise ValueError(f"{z} does not lie in Q")
            return vp(z.re, self.prime)
        return v_gaussian(z, self.prime)

    def reduce(self, z: Scalar) -> FqElem:
        z = GaussianRational.coerce(z)
        if self.field is Field.Q:
            if not z.is_rational():
                raise ValueError(f"{z} does not lie in Q")
            x = z.re
            if x.denominator % self.prime == 0:
                raise ValueError(f"{z} is not integral at {self}")
            fq = self.residue
            return fq(x.numerator % self.prime) / fq(x.denominator % self.prime)
        return self.prime.reduce(z)

    def unit_part(self, z: Scalar) -> GaussianRational:
        """z divided by uniformizer^v(z); a unit at this place."""
        z = GaussianRational.coerce(z)
        k = self.v(z)
        if k == INF:
            raise ValueError("0 has no unit part")
        return z / self.uniformizer() ** int(k)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Place)
            and self.field is other.field
            and self.prime == other.prime
        )

    def __hash__(self):
        return hash((self.field, self.prime))

    def __str__(self) -> str:
        if self.field is Field.Q:
            return f"({self.prime})" + ("[dyadic]" if self.dyadic else "")
        return str(self.prime)

    __repr__ = __str__


def is_nonsquare_mod(b: Scalar, place: Place | GaussianPrime | int) -> bool:
    """True iff b reduces to a non-square in the residue field.

    b must be a unit at the place (valuation 0); a non-unit has no
    meaningful square class there.
    """
    place = _as_place(place)
    if place.v(b) != 0:
        raise ValueError(f"{GaussianRational.coerce(b)} is not a unit at {place}")
    return not place.reduce(b).is_square()


def count_nonsquare_classes(place: Place | GaussianPrime | int) -> int:
    """Number of non-square unit classes in the residue field: (q-1)/2."""
    place = _as_place(place)
    return (place.residue.q - 1) // 2


def _as_place(P) -> Place:
    if isinstance(P, Place):
        return P
    if isinstance(P, GaussianPrime):
        return Place.of_gaussian_prime(P)
    if isinstance(P, int):
        return Place.of_rational_prime(P)
    raise TypeError(f"cannot interpret {P!r} as a place")


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division (desk scale)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def places_with_odd_valuation(z: Scalar, field: Field) -> list[Place]:
    """All places of the base field where z has odd valuation.

    Candidate primes are read off the factorization of the numerator and
    denominator (of the norm, over Q(i)); the dyadic place is included
    when it qualifies so callers can reject it explicitly.
    """
    z = GaussianRational.coerce(z)
    if z.is_zero():
        raise ValueError("0 has no valuation support")
    out = []
    if field is Field.Q:
        if not z.is_rational():
            raise ValueError(f"{z} does not lie in Q")
        primes = set(factor_int(z.re.numerator)) | set(factor_int(z.re.denominator))
        for p in sorted(primes):
            if vp(z.re, p) % 2 == 1:
                out.append(Place.of_rational_prime(p))
        return out
    w, d = _as_gauss_over(z)
    primes = set(factor_int(_gi_norm(w))) | set(factor_int(d))
    for p in sorted(primes):
        for P in factor_prime_in_Zi(p):
            if v_gaussian(z, P) % 2 == 1:
                out.append(Place.of_gaussian_prime(P))
    return out


# ---------------------------------------------------------------------------
# Valuation towers
# ---------------------------------------------------------------------------

Level = Union[Place, str]  # a formal variable name or a number-field place


@dataclass(frozen=True)
class Valuation:
    """An ordered tower of valuation levels, outermost first.

    Formal-variable levels (strings like "x", "y") may only sit above the
    optional number-field place, which must come last.  The tower ("y",
    "x") is the one used for rational function fields F(x, y): residues are
    taken first along y, then along x, finally landing in F itself.
    """

    levels: tuple[Level, ...]
    field: Field

    def __post_init__(self):
        seen_place = False
        names = set()
        for lv in self.levels:
            if isinstance(lv, str):
                if seen_place:
                    raise ValueError("formal levels must sit above the place")
                if lv in names:
                    raise ValueError(f"duplicate formal variable {lv!r}")
                names.add(lv)
            elif isinstance(lv, Place):
                if seen_place:
                    raise ValueError("at most one number-field place per tower")
                seen_place = True
            else:
                raise TypeError(f"bad tower level {lv!r}")

    @classmethod
    def p_adic(cls, place: Place | GaussianPrime | int) -> "Valuation":
        place = _as_place(place)
        return cls((place,), place.field)

    @classmethod
    def formal(cls, *names: str, field: Field) -> "Valuation":
        return cls(tuple(names), field)

    @property
    def head(self) -> Level:
        return self.levels[0]

    def tail(self) -> "Valuation | None":
        if len(self.levels) <= 1:
            return None
        return Valuation(self.levels[1:], self.field)

    def __str__(self) -> str:
        return " > ".join(
            lv if isinstance(lv, str) else str(lv) for lv in self.levels
        )
