"""Exact arithmetic over Q, Q(i) and their quadratic / biquadratic extensions.

Everything in this module is exact: scalars are `fractions.Fraction`
pairs, equality is structural, and no floating point enters except in the
explicit ``to_complex`` renderings.  The two base fields are tagged with
:class:`Field`; elements of both are represented uniformly as
:class:`GaussianRational` (a rational number is a Gaussian rational with
zero imaginary part).
"""

from __future__ import annotations

import cmath
import enum
from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

#: Scalar type of the rational base field.  Fractions are always stored
#: reduced with a positive denominator, which is exactly the invariant the
#: rest of the package relies on for structural equality and hashing.
Rational = Fraction

Scalar = Union[int, Fraction, "GaussianRational"]


class Field(enum.Enum):
    """Tag for the two supported base fields."""

    Q = "Q"
    QI = "Qi"

    def __str__(self) -> str:
        return self.value


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class GaussianRational:
    """An element re + im*i of Q(i), with exact rational components."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    # -- constructors -------------------------------------------------

    @classmethod
    def coerce(cls, x: Scalar) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(_as_fraction(x))

    # -- ring structure ------------------------------------------------

    def __add__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.coerce(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- field-specific structure ---------------------------------------

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """N(z) = z * conj(z) = re^2 + im^2, a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    # -- comparisons / hashing ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"({self.im})i" if self.im.denominator != 1 else _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {_imag_str(abs(self.im)).lstrip('+')}"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * float(self.im)


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    if im.denominator == 1:
        return f"{im}i"
    return f"({im})i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gaussian(re=0, im=0) -> GaussianRational:
    """Shorthand constructor used pervasively in tests."""
    return GaussianRational(re, im)


# ---------------------------------------------------------------------------
# Exact square testing
# ---------------------------------------------------------------------------


def _is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_square_rational(r: int | Fraction) -> bool:
    """True iff r is the square of a rational number.

    A reduced fraction is a square exactly when numerator and denominator
    are both perfect (integer) squares and the value is nonnegative.
    """
    r = _as_fraction(r)
    return _is_square_int(r.numerator) and _is_square_int(r.denominator)


def sqrt_rational(r: int | Fraction) -> Fraction | None:
    """The nonnegative rational square root of r, or None."""
    r = _as_fraction(r)
    if not is_square_rational(r):
        return None
    return Fraction(isqrt(r.numerator), isqrt(r.denominator))


def sqrt_gaussian(z: Scalar) -> GaussianRational | None:
    """An exact w in Q(i) with w^2 = z, or None if no such element exists.

    Write z = u + vi.  Any square root w has N(w)^2 = N(z), so N(z) must be
    a rational square n^2 with n >= 0, and then Re(w)^2 = (u + n)/2.  Both
    conditions are decided exactly; no floating point is involved.  For
    v = 0, u < 0 the root is purely imaginary and the test degenerates to
    -u being a rational square.
    """
    z = GaussianRational.coerce(z)
    if z.is_zero():
        return GaussianRational(0)
    u, v = z.re, z.im
    n = sqrt_rational(z.norm())
    if n is None:
        return None
    if v == 0 and u < 0:
        t = sqrt_rational(-u)
        return None if t is None else GaussianRational(0, t)
    s = sqrt_rational((u + n) / 2)
    if s is None:
        return None
    if v == 0:
        return GaussianRational(s)
    t = v / (2 * s)
    return GaussianRational(s, t)


def is_square_gaussian(z: Scalar) -> bool:
    """True iff z is the square of an element of Q(i)."""
    return sqrt_gaussian(z) is not None


def is_square_in(z: Scalar, field: Field) -> bool:
    """Square test in the tagged base field.

    Over Q the element must be a rational square (an element with nonzero
    imaginary part is rejected outright); over Q(i) the Gaussian test is
    used.  Note the two disagree: -4 is a square in Q(i) but not in Q.
    """
    z = GaussianRational.coerce(z)
    if field is Field.Q:
        if not z.is_rational():
            raise ValueError(f"{z} does not lie in Q")
        return is_square_rational(z.re)
    return is_square_gaussian(z)


def squarefree_part(r: int | Fraction) -> int:
    """The squarefree integer s with r = s * (rational square).

    Used for square-class bookkeeping over Q: stripping squared factors
    keeps residue computations small and makes class representatives
    canonical.  Factorization is by trial division (desk scale).
    """
    r = _as_fraction(r)
    if r == 0:
        raise ValueError("0 has no squarefree part")
    n = r.numerator * r.denominator  # r and n differ by the square denom^2
    sign = -1 if n < 0 else 1
    n = abs(n)
    s = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                s *= d
        d += 1 if d == 2 else 2
    return sign * s * n


# ---------------------------------------------------------------------------
# Quadratic extension F(sqrt(a))
# ---------------------------------------------------------------------------


class QuadExtElem:
    """x0 + x1*sqrt(a) in a quadratic extension of Q or Q(i).

    The radicand is validated on construction: a genuine extension needs a
    nonzero non-square, otherwise the conjugation below is not a field
    automorphism.
    """

    __slots__ = ("field", "a", "x0", "x1")

    def __init__(self, field: Field, a: Scalar, x0: Scalar = 0, x1: Scalar = 0):
        self.field = field
        self.a = GaussianRational.coerce(a)
        validate_radicand(self.a, field)
        self.x0 = GaussianRational.coerce(x0)
        self.x1 = GaussianRational.coerce(x1)

    def _like(self, x0, x1) -> "QuadExtElem":
        out = QuadExtElem.__new__(QuadExtElem)
        out.field = self.field
        out.a = self.a
        out.x0 = GaussianRational.coerce(x0)
        out.x1 = GaussianRational.coerce(x1)
        return out

    def _check(self, other: "QuadExtElem"):
        if not isinstance(other, QuadExtElem):
            raise TypeError("expected a QuadExtElem")
        if other.field is not self.field or other.a != self.a:
            raise ValueError("elements live in different quadratic extensions")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self._like(other, 0)
        self._check(other)
        return self._like(self.x0 + other.x0, self.x1 + other.x1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self._like(other, 0)
        self._check(other)
        return self._like(self.x0 - other.x0, self.x1 - other.x1)

    def __neg__(self):
        return self._like(-self.x0, -self.x1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._like(self.x0 * other, self.x1 * other)
        self._check(other)
        return self._like(
            self.x0 * other.x0 + self.a * self.x1 * other.x1,
            self.x0 * other.x1 + self.x1 * other.x0,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadExtElem":
        """The nontrivial automorphism sqrt(a) -> -sqrt(a)."""
        return self._like(self.x0, -self.x1)

    def norm(self) -> GaussianRational:
        """Relative norm down to the base field: x * conj(x) = x0^2 - a*x1^2."""
        return self.x0 * self.x0 - self.a * self.x1 * self.x1

    def inverse(self) -> "QuadExtElem":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("element has zero relative norm")
        return self._like(self.x0 / n, -self.x1 / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.coerce(other)
            return self._like(self.x0 / o, self.x1 / o)
        self._check(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.x0.is_zero() and self.x1.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self._like(other, 0)
        if not isinstance(other, QuadExtElem):
            return NotImplemented
        return (
            self.field is other.field
            and self.a == other.a
            and self.x0 == other.x0
            and self.x1 == other.x1
        )

    def __hash__(self):
        return hash((self.field, self.a, self.x0, self.x1))

    def __str__(self) -> str:
        return f"{self.x0} + ({self.x1})*sqrt({self.a})"

    __repr__ = __str__

    def to_complex(self) -> complex:
        """Principal-branch numeric rendering (argument halved into (-pi/2, pi/2])."""
        return self.x0.to_complex() + self.x1.to_complex() * cmath.sqrt(
            self.a.to_complex()
        )


def validate_radicand(a: GaussianRational, field: Field) -> None:
    if a.is_zero():
        raise ValueError("radicand must be nonzero")
    if is_square_in(a, field):
        raise ValueError(f"{a} is a square in {field}; not a quadratic extension")


def relative_norm(x: QuadExtElem) -> GaussianRational:
    """Norm from F(sqrt(a)) down to F: x * sigma(x) = x0^2 - a*x1^2."""
    return x.norm()


# ---------------------------------------------------------------------------
# Biquadratic extension F(sqrt(a), sqrt(c))
# ---------------------------------------------------------------------------


class Galois(enum.Enum):
    """The Klein four-group acting on F(sqrt(a), sqrt(c)).

    sigma negates sqrt(a), tau negates sqrt(c); their composition negates
    both.  On the coordinate vector (z0, z1, z2, z3) relative to the basis
    (1, sqrt(a), sqrt(c), sqrt(ac)) each action is a sign pattern.
    """

    ID = "id"
    SIGMA = "sigma"
    TAU = "tau"
    SIGMA_TAU = "sigma_tau"


_GALOIS_SIGNS = {
    Galois.ID: (1, 1, 1, 1),
    Galois.SIGMA: (1, -1, 1, -1),
    Galois.TAU: (1, 1, -1, -1),
    Galois.SIGMA_TAU: (1, -1, -1, 1),
}


class BiquadExtElem:
    """z0 + z1*sqrt(a) + z2*sqrt(c) + z3*sqrt(ac) over Q or Q(i).

    Constructing an element validates that a, c and ac are all non-squares
    in the base field, i.e. that the extension really has degree 4.
    """

    __slots__ = ("field", "a", "c", "z")

    def __init__(self, field: Field, a: Scalar, c: Scalar, coords: Iterable[Scalar]):
        self.field = field
        self.a = GaussianRational.coerce(a)
        self.c = GaussianRational.coerce(c)
        validate_radicand(self.a, field)
        validate_radicand(self.c, field)
        validate_radicand(self.a * self.c, field)
        z = tuple(GaussianRational.coerce(v) for v in coords)
        if len(z) != 4:
            raise ValueError("need exactly 4 coordinates")
        self.z = z

    def _like(self, coords) -> "BiquadExtElem":
        out = BiquadExtElem.__new__(BiquadExtElem)
        out.field = self.field
        out.a = self.a
        out.c = self.c
        out.z = tuple(GaussianRational.coerce(v) for v in coords)
        return out

    def _check(self, other: "BiquadExtElem"):
        if (
            not isinstance(other, BiquadExtElem)
            or other.field is not self.field
            or other.a != self.a
            or other.c != self.c
        ):
            raise ValueError("elements live in different biquadratic extensions")

    @classmethod
    def from_first(cls, x: QuadExtElem, c: Scalar) -> "BiquadExtElem":
        """Embed F(sqrt(a)) via sqrt(a) -> sqrt(a)."""
        return cls(x.field, x.a, c, (x.x0, x.x1, 0, 0))

    @classmethod
    def from_second(cls, x: QuadExtElem, a: Scalar) -> "BiquadExtElem":
        """Embed F(sqrt(c)) via sqrt(c) -> sqrt(c) (radicand of x is c)."""
        return cls(x.field, a, x.a, (x.x0, 0, x.x1, 0))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self._like((other, 0, 0, 0))
        self._check(other)
        return self._like(tuple(u + v for u, v in zip(self.z, other.z)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self._like((other, 0, 0, 0))
        self._check(other)
        return self._like(tuple(u - v for u, v in zip(self.z, other.z)))

    def __neg__(self):
        return self._like(tuple(-v for v in self.z))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.coerce(other)
            return self._like(tuple(v * o for v in self.z))
        self._check(other)
        a, c = self.a, self.c
        y0, y1, y2, y3 = self.z
        w0, w1, w2, w3 = other.z
        return self._like(
            (
                y0 * w0 + a * y1 * w1 + c * y2 * w2 + a * c * y3 * w3,
                y0 * w1 + y1 * w0 + c * (y2 * w3 + y3 * w2),
                y0 * w2 + y2 * w0 + a * (y1 * w3 + y3 * w1),
                y0 * w3 + y3 * w0 + y1 * w2 + y2 * w1,
            )
        )

    __rmul__ = __mul__

    def galois(self, g: Galois) -> "BiquadExtElem":
        signs = _GALOIS_SIGNS[g]
        return self._like(tuple(s * v for s, v in zip(signs, self.z)))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.z)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self._like((other, 0, 0, 0))
        if not isinstance(other, BiquadExtElem):
            return NotImplemented
        return (
            self.field is other.field
            and self.a == other.a
            and self.c == other.c
            and self.z == other.z
        )

    def __hash__(self):
        return hash((self.field, self.a, self.c, self.z))

    def __str__(self) -> str:
        z0, z1, z2, z3 = self.z
        return (
            f"{z0} + ({z1})*sqrt({self.a}) + ({z2})*sqrt({self.c})"
            f" + ({z3})*sqrt({self.a * self.c})"
        )

    __repr__ = __str__

    def to_complex(self, sqrt_a: complex | None = None, sqrt_c: complex | None = None) -> complex:
        """Numeric rendering; roots default to the principal branch.

        The product root is rendered as sqrt_a * sqrt_c so the four basis
        values are multiplicatively consistent whatever branches are chosen.
        """
        ra = cmath.sqrt(self.a.to_complex()) if sqrt_a is None else sqrt_a
        rc = cmath.sqrt(self.c.to_complex()) if sqrt_c is None else sqrt_c
        z0, z1, z2, z3 = (v.to_complex() for v in self.z)
        return z0 + z1 * ra + z2 * rc + z3 * ra * rc


def galois_apply(e: BiquadExtElem, g: Galois) -> BiquadExtElem:
    """Apply an element of the Klein four-group to a biquadratic element."""
    return e.galois(g)
