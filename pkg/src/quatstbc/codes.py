"""Matrix codewords, codebook generation, exact determinants and NVD checks.

The 2x2 codewords realize a quaternion algebra (pi, b) on the right
F(sqrt(pi))-basis {1, j}: the stored matrix is

    [ x0   b*sigma(x1) ]
    [ x1   sigma(x0)   ]

and the emitted (published) presentation is its transpose, selected with
``transposed=True``.  The 4x4 codewords do the same for a biquaternion
algebra (a, x) tensor (b, y) whose second slots are formal transcendental
markers; matrix entries then live in K[x, y] with K = F(sqrt(a), sqrt(b))
and are represented as monomial polynomials (:class:`MPoly`).

Exact determinants come straight out of this representation: for 2x2
codewords det X = N(x0) - b N(x1) equals the quaternion norm, and a 4x4
codeword built from a pair of 2x2 factors is exactly their Kronecker
product, with det(Z2 (x) Z1) = det(Z2)^2 det(Z1)^2.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .exactnum import (
    BiquadExtElem,
    Field,
    Galois,
    GaussianRational,
    QuadExtElem,
    Scalar,
    is_square_in,
)
from .parsing import format_algebra_spec, format_gaussian
from .algebras import (
    BiquaternionAlgebra,
    FormalSlot,
    Quaternion,
    QuaternionAlgebra,
    certify_quaternion_division,
)

DEFAULT_X_ANGLE = 0.5
DEFAULT_Y_ANGLE = 1.3
CODEBOOK_BUDGET = 10**6


# ---------------------------------------------------------------------------
# Monomial polynomials over an exact coefficient domain
# ---------------------------------------------------------------------------


class MPoly:
    """Polynomial in the markers (x, y) with exact coefficients.

    Keys are (deg_x, deg_y); coefficients are any exact values supporting
    +, *, unary -, == and is_zero (Gaussian rationals or extension
    elements).  Zero coefficients are dropped so equality is structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def const(cls, coef) -> "MPoly":
        return cls({(0, 0): coef})

    @classmethod
    def term(cls, coef, dx: int, dy: int) -> "MPoly":
        return cls({(dx, dy): coef})

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return MPoly(out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        return MPoly({k: -v for k, v in self.terms.items()})

    def __mul__(self, other: "MPoly") -> "MPoly":
        out: dict = {}
        for (dx1, dy1), c1 in self.terms.items():
            for (dx2, dy2), c2 in other.terms.items():
                k = (dx1 + dx2, dy1 + dy2)
                prod = c1 * c2
                out[k] = out[k] + prod if k in out else prod
        return MPoly(out)

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly({k: fn(v) for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def eval_complex(self, x_val: complex, y_val: complex, to_complex=None) -> complex:
        total = 0j
        for (dx, dy), c in self.terms.items():
            cv = to_complex(c) if to_complex else c.to_complex()
            total += cv * x_val**dx * y_val**dy
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (dx, dy), c in sorted(self.terms.items()):
            parts = [f"({c})"]
            if dx:
                parts.append("x" if dx == 1 else f"x^{dx}")
            if dy:
                parts.append("y" if dy == 1 else f"y^{dy}")
            bits.append("*".join(parts))
        return " + ".join(bits)

    __repr__ = __str__


def mat_mul(A: Sequence[Sequence[MPoly]], B: Sequence[Sequence[MPoly]]):
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for r in range(n):
        row = []
        for c in range(m):
            acc = A[r][0] * B[0][c]
            for t in range(1, k):
                acc = acc + A[r][t] * B[t][c]
            row.append(acc)
        out.append(row)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_transpose(A):
    return [list(row) for row in zip(*A)]


def mat_kron(A, B):
    na, nb = len(A), len(B)
    out = [[None] * (na * nb) for _ in range(na * nb)]
    for i in range(na):
        for j in range(na):
            for k in range(nb):
                for l in range(nb):
                    out[i * nb + k][j * nb + l] = A[i][j] * B[k][l]
    return out


def mat_det(A) -> MPoly:
    """Determinant by permutation expansion (matrices here are 2x2 or 4x4)."""
    n = len(A)
    total: Optional[MPoly] = None
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # parity by counting inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = A[0][perm[0]]
        for r in range(1, n):
            term = term * A[r][perm[r]]
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# 2x2 codewords
# ---------------------------------------------------------------------------


class Codeword2:
    """A 2x2 codeword of the quaternion code for (pi, b).

    x0, x1 live in K = F(sqrt(pi)); b is exact, or a formal marker when
    the codeword is a factor of a 4x4 construction.  The stored matrix is
    the untransposed representation; pass ``transposed=True`` to
    :meth:`matrix` for the published form.
    """

    __slots__ = ("x0", "x1", "b_slot", "field", "symbols")

    def __init__(
        self,
        x0: QuadExtElem,
        x1: QuadExtElem,
        b_slot,
        symbols: tuple = (),
    ):
        if x0.field is not x1.field or x0.a != x1.a:
            raise ValueError("x0 and x1 must live in the same quadratic extension")
        self.x0 = x0
        self.x1 = x1
        self.b_slot = b_slot if isinstance(b_slot, FormalSlot) else GaussianRational.coerce(b_slot)
        self.field = x0.field
        self.symbols = symbols

    @property
    def pi(self) -> GaussianRational:
        return self.x0.a

    def _b_poly(self, coef: QuadExtElem) -> MPoly:
        if isinstance(self.b_slot, FormalSlot):
            dx, dy = (1, 0) if self.b_slot.name == "x" else (0, 1)
            return MPoly.term(coef, dx, dy)
        return MPoly.const(coef * self.b_slot)

    def matrix(self, transposed: bool = False):
        """2x2 matrix of MPoly entries with K coefficients."""
        m = [
            [MPoly.const(self.x0), self._b_poly(self.x1.conj())],
            [MPoly.const(self.x1), MPoly.const(self.x0.conj())],
        ]
        return mat_transpose(m) if transposed else m

    def det(self):
        """Exact determinant N(x0) - b N(x1).

        A base-field element for exact b; an MPoly in the marker for a
        formal factor.
        """
        n0, n1 = self.x0.norm(), self.x1.norm()
        if isinstance(self.b_slot, FormalSlot):
            dx, dy = (1, 0) if self.b_slot.name == "x" else (0, 1)
            return MPoly({(0, 0): n0, (dx, dy): -n1})
        return n0 - self.b_slot * n1

    def is_zero(self) -> bool:
        return self.x0.is_zero() and self.x1.is_zero()

    def to_complex(self, transposed: bool = False, b_value: complex | None = None) -> np.ndarray:
        """Principal-branch complex rendering."""
        if b_value is None:
            if isinstance(self.b_slot, FormalSlot):
                if self.b_slot.stand_in is None:
                    raise ValueError("formal b slot has no numeric stand-in")
                b_value = complex(self.b_slot.stand_in)
            else:
                b_value = self.b_slot.to_complex()
        x0, x1 = self.x0.to_complex(), self.x1.to_complex()
        x0c, x1c = self.x0.conj().to_complex(), self.x1.conj().to_complex()
        m = np.array([[x0, b_value * x1c], [x1, x0c]], dtype=complex)
        return m.T.copy() if transposed else m

    def __eq__(self, other):
        if not isinstance(other, Codeword2):
            return NotImplemented
        return (
            self.x0 == other.x0
            and self.x1 == other.x1
            and self.b_slot == other.b_slot
        )

    def __hash__(self):
        return hash((self.x0, self.x1, self.b_slot))


def quat_matrix(x0: QuadExtElem, x1: QuadExtElem, A: QuaternionAlgebra) -> Codeword2:
    """Codeword for the element x0 + j x1 of (a, b) with K = F(sqrt(a))."""
    if x0.a != A.a:
        raise ValueError("coordinates must lie in F(sqrt(a)) for the algebra's a")
    return Codeword2(x0, x1, A.b)


def quaternion_to_codeword(q: Quaternion) -> Codeword2:
    """Split q = (q0 + q1 i) + j (q2 - q3 i) into right-K coordinates."""
    A = q.algebra
    q0, q1, q2, q3 = q.coords
    x0 = QuadExtElem(A.field, A.a, q0, q1)
    x1 = QuadExtElem(A.field, A.a, q2, -q3)
    return Codeword2(x0, x1, A.b)


def det_exact(c: Codeword2):
    return c.det()


# ---------------------------------------------------------------------------
# 4x4 codewords
# ---------------------------------------------------------------------------

_GAL = {
    "id": Galois.ID,
    "sigma": Galois.SIGMA,
    "tau": Galois.TAU,
    "sigma_tau": Galois.SIGMA_TAU,
}


class Codeword4:
    """A 4x4 codeword of the biquaternion code for (a, x) tensor (b, y).

    Coordinates z0, z1, z2, z12 live in K = F(sqrt(a), sqrt(b)); matrix
    entries live in K[x, y].  The stored matrix is the untransposed
    representation (basis 1, j1, j2, j1 j2); the published form is its
    transpose.
    """

    __slots__ = ("algebra", "z", "symbols")

    def __init__(
        self,
        algebra: BiquaternionAlgebra,
        z: Sequence[BiquadExtElem],
        symbols: tuple = (),
    ):
        if not algebra.formal:
            raise ValueError("4x4 codewords use the transcendental-pair shape")
        z = tuple(z)
        if len(z) != 4:
            raise ValueError("need z0, z1, z2, z12")
        for e in z:
            if e.a != algebra.a or e.c != algebra.c:
                raise ValueError("coordinates must lie in F(sqrt(a), sqrt(b))")
        self.algebra = algebra
        self.z = z
        self.symbols = symbols

    def matrix(self, transposed: bool = False):
        z0, z1, z2, z12 = self.z
        s = lambda e: e.galois(Galois.SIGMA)
        t = lambda e: e.galois(Galois.TAU)
        st = lambda e: e.galois(Galois.SIGMA_TAU)
        C = MPoly.const
        X = lambda e: MPoly.term(e, 1, 0)  # multiplied by the x marker
        Y = lambda e: MPoly.term(e, 0, 1)
        XY = lambda e: MPoly.term(e, 1, 1)
        m = [
            [C(z0), X(s(z1)), Y(t(z2)), XY(st(z12))],
            [C(z1), C(s(z0)), Y(t(z12)), Y(st(z2))],
            [C(z2), X(s(z12)), C(t(z0)), X(st(z1))],
            [C(z12), C(s(z2)), C(t(z1)), C(st(z0))],
        ]
        return mat_transpose(m) if transposed else m

    def det(self) -> MPoly:
        """Exact determinant, an element of F[x, y].

        The raw expansion yields K-coefficients; Galois invariance forces
        them down into F, which is asserted.
        """
        d = mat_det(self.matrix())

        def to_scalar(e: BiquadExtElem) -> GaussianRational:
            z0, z1, z2, z3 = e.z
            assert z1.is_zero() and z2.is_zero() and z3.is_zero(), (
                "codeword determinant must be Galois-invariant"
            )
            return z0

        return d.map_coeffs(to_scalar)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.z)

    @classmethod
    def from_factors(cls, Z1: Codeword2, Z2: Codeword2, algebra: BiquaternionAlgebra) -> "Codeword4":
        """Build the codeword of the pure tensor with 2x2 factors Z1, Z2.

        Z1 comes from (a, x), Z2 from (b, y).  The coordinate rule is
        z0 = w0 u0, z1 = w0 u1, z2 = w1 u0, z12 = w1 u1, and the resulting
        matrix is exactly kron(matrix(Z2), matrix(Z1)).
        """
        if not (
            isinstance(Z1.b_slot, FormalSlot)
            and Z1.b_slot.name == "x"
            and isinstance(Z2.b_slot, FormalSlot)
            and Z2.b_slot.name == "y"
        ):
            raise ValueError("factors must carry the formal markers x and y")
        if Z1.pi != algebra.a or Z2.pi != algebra.c:
            raise ValueError("factor radicands must match the algebra")
        emb1 = lambda u: BiquadExtElem.from_first(u, algebra.c)
        emb2 = lambda w: BiquadExtElem.from_second(w, algebra.a)
        u0, u1 = emb1(Z1.x0), emb1(Z1.x1)
        w0, w1 = emb2(Z2.x0), emb2(Z2.x1)
        return cls(
            algebra,
            (w0 * u0, w0 * u1, w1 * u0, w1 * u1),
            symbols=Z2.symbols + Z1.symbols,
        )

    def to_complex(self, transposed: bool = False) -> np.ndarray:
        xv, yv = self.algebra.slot_values()
        ra = cmath.sqrt(self.algebra.a.to_complex())
        rb = cmath.sqrt(self.algebra.c.to_complex())
        out = np.empty((4, 4), dtype=complex)
        for r, row in enumerate(self.matrix()):
            for c, poly in enumerate(row):
                out[r, c] = poly.eval_complex(
                    xv, yv, to_complex=lambda e: e.to_complex(ra, rb)
                )
        return out.T.copy() if transposed else out


def biquat_matrix(
    z0: BiquadExtElem,
    z1: BiquadExtElem,
    z2: BiquadExtElem,
    z12: BiquadExtElem,
    B: BiquaternionAlgebra,
) -> Codeword4:
    return Codeword4(B, (z0, z1, z2, z12))


# Right-K-basis coordinates of a 16-coordinate biquaternion.  Writing the
# element over the basis (1, j1, j2, j1 j2) with coefficients in
# K = F(sqrt(a), sqrt(c)) is a signed relabeling of coordinates: each
# tensor basis element is (1 or j1 times 1 or +-sqrt(a)) times
# (1 or j2 times 1 or +-sqrt(c)), and sqrt(a) commutes past j2.
_K_COORD_PATTERN = (
    # (zl, m) <- (xi, eta, sign); m indexes (1, sqrt a, sqrt c, sqrt ac)
    (((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)),  # z0
    (((2, 0), 1), ((3, 0), -1), ((2, 1), 1), ((3, 1), -1)),  # z1
    (((0, 2), 1), ((1, 2), 1), ((0, 3), -1), ((1, 3), -1)),  # z2
    (((2, 2), 1), ((3, 2), -1), ((2, 3), -1), ((3, 3), 1)),  # z12
)


def k_coords(biq) -> tuple:
    """(z0, z1, z2, z12) over K for a 16-coordinate biquaternion."""
    from .algebras import Biquaternion

    if not isinstance(biq, Biquaternion):
        raise TypeError("expected a Biquaternion")
    alg = biq.algebra
    quads = []
    for pattern in _K_COORD_PATTERN:
        coords = [sign * biq.coords[4 * xi + eta] for (xi, eta), sign in pattern]
        quads.append(BiquadExtElem(alg.field, alg.a, alg.c, coords))
    return tuple(quads)


def numeric_k_coords(coords16: Sequence[complex]) -> np.ndarray:
    """Same relabeling for numeric coordinates; rows z_l, columns basis m."""
    out = np.empty((4, 4), dtype=complex)
    for l, pattern in enumerate(_K_COORD_PATTERN):
        for m, ((xi, eta), sign) in enumerate(pattern):
            out[l, m] = sign * coords16[4 * xi + eta]
    return out


_GALOIS_SIGN_ROWS = {
    "id": (1, 1, 1, 1),
    "sigma": (1, -1, 1, -1),
    "tau": (1, 1, -1, -1),
    "sigma_tau": (1, -1, -1, 1),
}


def numeric_codeword_matrix(zq: np.ndarray, B: BiquaternionAlgebra) -> np.ndarray:
    """4x4 complex matrix from numeric K-coordinate rows (z0, z1, z2, z12)."""
    xv, yv = B.slot_values()
    ra = cmath.sqrt(B.a.to_complex())
    rb = cmath.sqrt(B.c.to_complex())
    basis = np.array([1.0, ra, rb, ra * rb])

    def g(l: int, name: str) -> complex:
        signs = np.array(_GALOIS_SIGN_ROWS[name])
        return complex(np.dot(zq[l] * signs, basis))

    z0, z1, z2, z12 = 0, 1, 2, 3
    return np.array(
        [
            [g(z0, "id"), xv * g(z1, "sigma"), yv * g(z2, "tau"), xv * yv * g(z12, "sigma_tau")],
            [g(z1, "id"), g(z0, "sigma"), yv * g(z12, "tau"), yv * g(z2, "sigma_tau")],
            [g(z2, "id"), xv * g(z12, "sigma"), g(z0, "tau"), xv * g(z1, "sigma_tau")],
            [g(z12, "id"), g(z2, "sigma"), g(z1, "tau"), g(z0, "sigma_tau")],
        ]
    )


def promote_factor_matrix(Z: Codeword2, which: int, B: BiquaternionAlgebra):
    """Lift a 2x2 factor matrix into K = F(sqrt(a), sqrt(b)) coefficients."""
    if which == 1:
        embed = lambda u: BiquadExtElem.from_first(u, B.c)
    else:
        embed = lambda w: BiquadExtElem.from_second(w, B.a)
    return [[poly.map_coeffs(embed) for poly in row] for row in Z.matrix()]


def det_bound_float(cw: Codeword4, dps: int = 60) -> tuple[complex, float]:
    """(approximate det value, certified lower bound on its modulus).

    Evaluates the exact determinant polynomial at the unit-circle
    stand-ins with dps-digit arithmetic; the bound subtracts a
    conservative estimate of all rounding error, so bound > 0 certifies a
    nonzero determinant.
    """
    import mpmath

    poly = cw.det()
    xv, yv = cw.algebra.slot_values()
    theta_x = math.atan2(xv.imag, xv.real)
    theta_y = math.atan2(yv.imag, yv.real)
    with mpmath.workdps(dps):
        x = mpmath.exp(1j * mpmath.mpf(theta_x))
        y = mpmath.exp(1j * mpmath.mpf(theta_y))
        total = mpmath.mpc(0)
        coef_mag = 0.0
        for (dx, dy), c in poly.terms.items():
            cm = mpmath.mpc(
                mpmath.mpf(c.re.numerator) / mpmath.mpf(c.re.denominator),
                mpmath.mpf(c.im.numerator) / mpmath.mpf(c.im.denominator),
            )
            total += cm * x**dx * y**dy
            coef_mag = max(coef_mag, float(abs(cm)))
        value = complex(total)
        err = 16 * max(coef_mag, 1.0) * 10.0 ** (8 - dps)
        return value, abs(value) - err


# ---------------------------------------------------------------------------
# Codebook generation
# ---------------------------------------------------------------------------


@dataclass
class CodebookSpec:
    """What to enumerate: an algebra, a symbol alphabet, and normalization."""

    algebra: QuaternionAlgebra
    alphabet: tuple
    normalize: bool = True
    name: str = ""

    def __post_init__(self):
        self.alphabet = tuple(GaussianRational.coerce(s) for s in self.alphabet)
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        if not self.name:
            self.name = format_algebra_spec(self.algebra.spec())

    @property
    def size(self) -> int:
        return len(self.alphabet) ** 4

    def power_factor(self) -> float:
        return power_factor(self.algebra)


def symbol_box(bound: int, field: Field = Field.QI) -> tuple:
    """Integers of the base field with |Re|, |Im| <= bound.

    Over Q(i) that is the Gaussian-integer box; over Q the plain integers
    -bound..bound (codeword symbols live in the ring of integers of the
    base field).
    """
    if field is Field.Q:
        return tuple(GaussianRational(r) for r in range(-bound, bound + 1))
    return tuple(
        GaussianRational(r, i)
        for r in range(-bound, bound + 1)
        for i in range(-bound, bound + 1)
    )


def qam_alphabet(M: int) -> tuple:
    """4-QAM {+-1 +-i} or 16-QAM {+-1, +-3}^2, unnormalized."""
    if M == 4:
        vals = (-1, 1)
    elif M == 16:
        vals = (-3, -1, 1, 3)
    else:
        raise ValueError("supported constellations: 4, 16")
    return tuple(GaussianRational(r, i) for r in vals for i in vals)


def gen_codebook_2x2(spec: CodebookSpec) -> Iterator[Codeword2]:
    """All codewords x0 = alpha + beta sqrt(pi), x1 = gamma + delta sqrt(pi).

    Callers are expected to have certified the algebra (or to force past
    that); enumeration itself is mechanical.  The zero tuple yields the
    zero codeword, which determinant searches skip.
    """
    A = spec.algebra
    for al, be, ga, de in itertools.product(spec.alphabet, repeat=4):
        x0 = QuadExtElem(A.field, A.a, al, be)
        x1 = QuadExtElem(A.field, A.a, ga, de)
        yield Codeword2(x0, x1, A.b, symbols=(al, be, ga, de))


def gen_codebook_4x4(
    B: BiquaternionAlgebra,
    alphabet: Sequence,
    active_coords: Sequence[int] | None = None,
) -> Iterator[Codeword4]:
    """Enumerate z-coordinates over the alphabet, inactive ones pinned to 0.

    active_coords indexes the 16 scalars z_{l,m} (l-major).  Full 16-fold
    enumeration explodes quickly, so the iteration size is budgeted;
    reduced alphabets are the intended desk-scale use.
    """
    alphabet = tuple(GaussianRational.coerce(s) for s in alphabet)
    active = tuple(active_coords) if active_coords is not None else tuple(range(16))
    total = len(alphabet) ** len(active)
    if total > CODEBOOK_BUDGET:
        raise ValueError(
            f"{total} codewords exceed the enumeration budget {CODEBOOK_BUDGET}; "
            "restrict the alphabet or the active coordinates"
        )
    for combo in itertools.product(alphabet, repeat=len(active)):
        coords = [GaussianRational(0)] * 16
        for pos, val in zip(active, combo):
            coords[pos] = val
        z = [
            BiquadExtElem(B.field, B.a, B.c, coords[4 * l : 4 * l + 4])
            for l in range(4)
        ]
        yield Codeword4(B, z, symbols=tuple(combo))


# ---------------------------------------------------------------------------
# Minimum determinant and NVD
# ---------------------------------------------------------------------------


def min_det(codewords: Iterable[Codeword2]) -> Fraction:
    """min |det X|^2 over nonzero codewords, exact.

    For a linear codebook this equals the pairwise difference minimum, so
    enumerating single codewords suffices.
    """
    best: Optional[Fraction] = None
    for cw in codewords:
        if cw.is_zero():
            continue
        d = cw.det()
        if not isinstance(d, GaussianRational):
            raise TypeError("exact minimum determinant needs exact b")
        v = d.norm()
        if best is None or v < best:
            best = v
    if best is None:
        raise ValueError("codebook has no nonzero codeword")
    return best


def min_det_box(A: QuaternionAlgebra, bound: int) -> Fraction:
    """Exhaustive min |det|^2 over the symbol box |Re|,|Im| <= bound.

    det X = N(x0) - b N(x1) depends on (alpha, beta) only through
    n = alpha^2 - pi beta^2, so the search collapses to pairs of attained
    norm values; with pi a non-square, n = 0 happens only at (0, 0), which
    keeps the zero-codeword exclusion exact.
    """
    a, b = A.a, A.b
    if is_square_in(a, A.field):
        raise ValueError("pi must be a non-square (the code needs a field extension)")
    if a.is_gaussian_integer() and b.is_gaussian_integer():
        return _min_det_box_int(
            int(a.re), int(a.im), int(b.re), int(b.im), bound, A.field
        )
    # slow exact path for fractional slots
    vals = set()
    for al, be in itertools.product(symbol_box(bound, A.field), repeat=2):
        vals.add(al * al - a * be * be)
    best: Optional[Fraction] = None
    for n0 in vals:
        for n1 in vals:
            if n0.is_zero() and n1.is_zero():
                continue
            v = (n0 - b * n1).norm()
            if best is None or v < best:
                best = v
    return best


def _min_det_box_int(
    ar: int, ai: int, br: int, bi: int, bound: int, field: Field
) -> Fraction:
    rng = range(-bound, bound + 1)
    imag_rng = rng if field is Field.QI else (0,)
    norms = set()
    for xr in rng:
        for xi in imag_rng:
            sr, si = xr * xr - xi * xi, 2 * xr * xi
            for yr in rng:
                for yi in imag_rng:
                    tr, ti = yr * yr - yi * yi, 2 * yr * yi
                    # s - a*t
                    norms.add((sr - (ar * tr - ai * ti), si - (ar * ti + ai * tr)))
    best = None
    for n0r, n0i in norms:
        for n1r, n1i in norms:
            if n0r == 0 and n0i == 0 and n1r == 0 and n1i == 0:
                continue
            dr = n0r - (br * n1r - bi * n1i)
            di = n0i - (br * n1i + bi * n1r)
            v = dr * dr + di * di
            if best is None or v < best:
                best = v
                if best == 0:
                    return Fraction(0)
    return Fraction(best)


def nvd_check(spec: CodebookSpec, bound: int = 1) -> dict:
    """Analytic NVD floor 1/|b_d|^2 plus a desk-scale exhaustive confirmation.

    b = b_n / b_d with b_n, b_d Gaussian integers; for integral b the
    floor is 1.  The confirmation runs the exact box search and checks the
    floor really holds there.
    """
    b = spec.algebra.b
    denom = b.re.denominator * b.im.denominator // math.gcd(
        b.re.denominator, b.im.denominator
    )
    floor = Fraction(1, denom * denom)
    delta = min_det_box(spec.algebra, bound)
    return {
        "bound": floor,
        "min_det": delta,
        "holds": delta >= floor,
        "symbol_bound": bound,
    }


def power_factor(A: QuaternionAlgebra | BiquaternionAlgebra) -> float:
    """P = (1 + |sqrt(a)|^2)(3 + |b|^2) / 4 for numeric slot values."""
    if isinstance(A, QuaternionAlgebra):
        a_val, b_val = A.a.to_complex(), A.b.to_complex()
    else:
        a_val = A.a.to_complex()
        b_val = A.slot_values()[0]
    return (1 + abs(a_val)) * (3 + abs(b_val) ** 2) / 4


# ---------------------------------------------------------------------------
# Rendered codebooks for simulation and export
# ---------------------------------------------------------------------------


@dataclass
class Codebook:
    """A finite codebook rendered to complex matrices, plus symbol labels."""

    name: str
    matrices: np.ndarray  # (M, n, n) complex
    symbols: np.ndarray  # (M, k) complex information symbols
    meta: dict = dc_field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.matrices.shape[0]

    @property
    def n(self) -> int:
        return self.matrices.shape[1]


def build_quaternion_codebook(
    spec: CodebookSpec,
    transposed: bool = True,
    force: bool = False,
) -> Codebook:
    """Render the (pi, b) codebook to complex matrices (published form).

    Refuses algebras that fail certification unless forced; a forced build
    records the fact in the metadata.
    """
    cert = certify_quaternion_division(spec.algebra)
    warnings = []
    if cert.verdict != "division":
        if not force:
            raise ValueError(
                f"algebra {spec.name} is {cert.verdict}; pass force=True to "
                "generate anyway"
            )
        warnings.append(f"forced: algebra is {cert.verdict}")
    mats, syms = [], []
    scale = 1.0 / math.sqrt(spec.power_factor()) if spec.normalize else 1.0
    for cw in gen_codebook_2x2(spec):
        mats.append(cw.to_complex(transposed=transposed) * scale)
        syms.append([s.to_complex() for s in cw.symbols])
    meta = {
        "algebra": spec.name,
        "presentation": "transposed" if transposed else "left-regular",
        "normalized": spec.normalize,
        "power_factor": spec.power_factor(),
        "certification": cert.verdict,
        "branch": "principal square roots",
        "warnings": warnings,
    }
    return Codebook(spec.name, np.array(mats), np.array(syms), meta)


def golden_codebook(alphabet: Sequence | None = None) -> Codebook:
    """The Golden code, as fixed numeric matrices (cited construction).

    theta the golden ratio, alpha = 1 + i(1 - theta); codewords
    (1/sqrt(5)) [[alpha(a + b theta), alpha(c + d theta)],
                 [i conj_alpha(c + d theta_bar), conj_alpha(a + b theta_bar)]]
    over symbols a, b, c, d.
    """
    if alphabet is None:
        alphabet = qam_alphabet(4)
    theta = (1 + math.sqrt(5)) / 2
    theta_bar = (1 - math.sqrt(5)) / 2
    alpha = 1 + 1j * (1 - theta)
    alpha_bar = 1 + 1j * (1 - theta_bar)
    s5 = math.sqrt(5)
    mats, syms = [], []
    for a, b, c, d in itertools.product(alphabet, repeat=4):
        av, bv, cv, dv = (GaussianRational.coerce(s).to_complex() for s in (a, b, c, d))
        m = (
            np.array(
                [
                    [alpha * (av + bv * theta), alpha * (cv + dv * theta)],
                    [
                        1j * alpha_bar * (cv + dv * theta_bar),
                        alpha_bar * (av + bv * theta_bar),
                    ],
                ]
            )
            / s5
        )
        mats.append(m)
        syms.append([av, bv, cv, dv])
    meta = {"algebra": "golden", "normalized": True, "shaping": "built-in"}
    return Codebook("golden", np.array(mats), np.array(syms), meta)


def br_codebook(alphabet: Sequence | None = None, normalize: bool = True) -> Codebook:
    """The energy-balanced variant of the (i, 1+2i) code.

    sqrt(1+2i) is spread over the antidiagonal instead of sitting as a
    full factor in one corner; determinants are unchanged.
    """
    if alphabet is None:
        alphabet = qam_alphabet(4)
    r_i = cmath.sqrt(1j)
    r_pi = cmath.sqrt(1 + 2j)
    # same P formula with a = i, b = 1+2i
    P = (1 + 1.0) * (3 + 5.0) / 4
    scale = 1.0 / math.sqrt(P) if normalize else 1.0
    mats, syms = [], []
    for al, be, ga, de in itertools.product(alphabet, repeat=4):
        a_, b_, g_, d_ = (
            GaussianRational.coerce(s).to_complex() for s in (al, be, ga, de)
        )
        m = (
            np.array(
                [
                    [a_ + b_ * r_i, r_pi * (g_ + d_ * r_i)],
                    [r_pi * (g_ - d_ * r_i), a_ - b_ * r_i],
                ]
            )
            * scale
        )
        mats.append(m)
        syms.append([a_, b_, g_, d_])
    meta = {
        "algebra": "(i,1+2i)/Qi balanced",
        "normalized": normalize,
        "power_factor": P,
        "branch": "principal square roots",
    }
    return Codebook("br", np.array(mats), np.array(syms), meta)


def build_biquaternion_codebook(
    B: BiquaternionAlgebra,
    alphabet: Sequence,
    active_coords: Sequence[int] | None = None,
    name: str = "",
) -> Codebook:
    """Render a (reduced-alphabet) 4x4 codebook to complex matrices."""
    mats, syms = [], []
    for cw in gen_codebook_4x4(B, alphabet, active_coords):
        mats.append(cw.to_complex(transposed=True))
        syms.append([s.to_complex() for s in cw.symbols])
    meta = {
        "algebra": name or str(B),
        "presentation": "transposed",
        "reduced_alphabet": active_coords is not None,
    }
    return Codebook(name or str(B), np.array(mats), np.array(syms), meta)


# ---------------------------------------------------------------------------
# Export formats
# ---------------------------------------------------------------------------


def codebook_to_json(cb: Codebook) -> str:
    payload = {
        "name": cb.name,
        "n": cb.n,
        "size": cb.size,
        "meta": cb.meta,
        "matrices": [
            [[{"re": z.real, "im": z.imag} for z in row] for row in m]
            for m in cb.matrices.tolist()
        ],
        "symbols": [
            [{"re": z.real, "im": z.imag} for z in row] for row in cb.symbols.tolist()
        ],
    }
    return json.dumps(payload, sort_keys=True)


def codebook_to_binary(cb: Codebook) -> bytes:
    """Row-major complex doubles, codeword-major; shape travels separately."""
    return np.ascontiguousarray(cb.matrices, dtype=np.complex128).tobytes()


def codebook_from_binary(data: bytes, n: int, name: str = "import") -> Codebook:
    flat = np.frombuffer(data, dtype=np.complex128)
    if flat.size % (n * n):
        raise ValueError("byte length is not a multiple of the codeword size")
    mats = flat.reshape(-1, n, n)
    return Codebook(name, mats, np.zeros((mats.shape[0], 0)), {"source": "binary"})
