"""Quaternion and biquaternion algebras, and division-algebra certification.

A quaternion algebra (a,b) over F has basis 1, i, j, k with i^2 = a,
j^2 = b, ij = -ji = k; it is a division algebra exactly when its norm form
<1, -a, -b, ab> is anisotropic over F.  A biquaternion algebra is a tensor
product of two quaternion algebras; its division property is governed the
same way by the six-dimensional Albert form <a, b, -ab, -c, -d, cd>.

Certification here is deliberately one-sided.  The uniformizer criterion
(one slot a prime element of the ring of integers up to units and squares,
the other a unit that is a non-square in the residue field) proves the
division property through a residue-form decomposition at a non-dyadic
place.  When it does not apply the verdict is "not-certified", which
asserts nothing: plenty of division algebras fall outside the criterion.
"not-division" is only ever emitted together with an explicit isotropic
vector for the norm form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactnum import (
    Field,
    GaussianRational,
    Scalar,
    is_square_in,
    sqrt_gaussian,
    sqrt_rational,
)
from .parsing import format_algebra_spec, format_gaussian, parse_algebra_spec, parse_gaussian
from .qform import DiagForm, FormalDomain, FormalEntry, residue_decompose, springer_anisotropic
from .valuation import (
    Place,
    Valuation,
    count_nonsquare_classes,
    is_nonsquare_mod,
    normalize_gaussian_prime,
    places_with_odd_valuation,
)

# ---------------------------------------------------------------------------
# Quaternions
# ---------------------------------------------------------------------------


class QuaternionAlgebra:
    """The algebra (a,b) over Q or Q(i); a and b must be nonzero."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a: Scalar, b: Scalar, field: Field = Field.Q):
        self.a = GaussianRational.coerce(a)
        self.b = GaussianRational.coerce(b)
        self.field = field
        if self.a.is_zero() or self.b.is_zero():
            raise ValueError("structure constants must be nonzero")
        if field is Field.Q and not (self.a.is_rational() and self.b.is_rational()):
            raise ValueError("structure constants must lie in Q")

    def quat(self, q0=0, q1=0, q2=0, q3=0) -> "Quaternion":
        return Quaternion(self, (q0, q1, q2, q3))

    @property
    def one(self) -> "Quaternion":
        return self.quat(1)

    def basis(self):
        """(1, i, j, k) as elements."""
        return tuple(
            self.quat(*(1 if m == n else 0 for m in range(4))) for n in range(4)
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuaternionAlgebra)
            and self.field is other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def spec(self) -> dict:
        return {"kind": "quaternion", "a": self.a, "b": self.b, "field": self.field}

    def __str__(self) -> str:
        return format_algebra_spec(self.spec())

    __repr__ = __str__


def _basis_mul(m: int, n: int, a, b):
    """Product of basis elements: returns (coefficient, basis index).

    Index order 1, i, j, k.  Coefficients may be ints or field values;
    callers multiply them into coordinates.
    """
    if m == 0:
        return 1, n
    if n == 0:
        return 1, m
    table = {
        (1, 1): (a, 0),
        (1, 2): (1, 3),
        (1, 3): (a, 2),
        (2, 1): (-1, 3),
        (2, 2): (b, 0),
        (2, 3): (-1 * b, 1),
        (3, 1): (-1 * a, 2),
        (3, 2): (b, 1),
        (3, 3): (-1 * a * b, 0),
    }
    return table[(m, n)]


class Quaternion:
    """q0 + q1 i + q2 j + q3 k with coordinates in the base field."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuaternionAlgebra, coords: Sequence[Scalar]):
        self.algebra = algebra
        c = tuple(GaussianRational.coerce(v) for v in coords)
        if len(c) != 4:
            raise ValueError("need 4 coordinates")
        self.coords = c

    def _check(self, other: "Quaternion"):
        if not isinstance(other, Quaternion) or other.algebra != self.algebra:
            raise ValueError("quaternions from different algebras")

    def __add__(self, other):
        self._check(other)
        return Quaternion(
            self.algebra, tuple(u + v for u, v in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        return Quaternion(
            self.algebra, tuple(u - v for u, v in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return Quaternion(self.algebra, tuple(-v for v in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.coerce(other)
            return Quaternion(self.algebra, tuple(v * o for v in self.coords))
        self._check(other)
        a, b = self.algebra.a, self.algebra.b
        out = [GaussianRational(0)] * 4
        for m in range(4):
            qm = self.coords[m]
            if qm.is_zero():
                continue
            for n in range(4):
                rn = other.coords[n]
                if rn.is_zero():
                    continue
                coef, idx = _basis_mul(m, n, a, b)
                out[idx] = out[idx] + qm * rn * coef
        return Quaternion(self.algebra, out)

    __rmul__ = __mul__

    def conjugate(self) -> "Quaternion":
        q0, q1, q2, q3 = self.coords
        return Quaternion(self.algebra, (q0, -q1, -q2, -q3))

    def norm(self) -> GaussianRational:
        """N(q) = q * conj(q) = q0^2 - a q1^2 - b q2^2 + ab q3^2."""
        a, b = self.algebra.a, self.algebra.b
        q0, q1, q2, q3 = self.coords
        return q0 * q0 - a * q1 * q1 - b * q2 * q2 + a * b * q3 * q3

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError(
                "zero norm: the element is a zero divisor (algebra not division "
                "or element is 0)"
            )
        return self.conjugate() * (GaussianRational(1) / n)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.coords)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.algebra.quat(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __str__(self):
        names = ("", "i", "j", "k")
        parts = [f"({v}){n}" if n else f"({v})" for v, n in zip(self.coords, names)]
        return " + ".join(parts)

    __repr__ = __str__


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def conjugate(q: Quaternion) -> Quaternion:
    return q.conjugate()


def quat_norm(q: Quaternion) -> GaussianRational:
    return q.norm()


def quat_inverse(q: Quaternion) -> Quaternion:
    return q.inverse()


def norm_form(A: QuaternionAlgebra) -> DiagForm:
    """The norm form <1, -a, -b, ab> of (a,b)."""
    return DiagForm([GaussianRational(1), -A.a, -A.b, A.a * A.b], A.field)


# ---------------------------------------------------------------------------
# Biquaternions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormalSlot:
    """A transcendental structure constant, optionally with a numeric stand-in.

    The stand-in (a unit-circle complex number by convention) only feeds
    floating renderings; certification never touches it.
    """

    name: str
    stand_in: Optional[complex] = None

    def __str__(self):
        return self.name


Slot = Union[GaussianRational, FormalSlot]


def _coerce_slot(v) -> Slot:
    if isinstance(v, FormalSlot):
        return v
    if isinstance(v, str):
        return FormalSlot(v)
    return GaussianRational.coerce(v)


class BiquaternionAlgebra:
    """(a, b-slot) tensor (c, d-slot) over a common base field.

    a and c are always exact; the b and d slots may each be an exact
    element or a formal transcendental marker (named x or y).
    """

    __slots__ = ("a", "b_slot", "c", "d_slot", "field")

    def __init__(self, a: Scalar, b_slot, c: Scalar, d_slot, field: Field = Field.Q):
        self.a = GaussianRational.coerce(a)
        self.c = GaussianRational.coerce(c)
        self.b_slot = _coerce_slot(b_slot)
        self.d_slot = _coerce_slot(d_slot)
        self.field = field
        if self.a.is_zero() or self.c.is_zero():
            raise ValueError("structure constants must be nonzero")
        for s in (self.b_slot, self.d_slot):
            if isinstance(s, GaussianRational) and s.is_zero():
                raise ValueError("structure constants must be nonzero")
        names = [s.name for s in (self.b_slot, self.d_slot) if isinstance(s, FormalSlot)]
        if len(set(names)) != len(names):
            raise ValueError("formal markers must be distinct")
        for n in names:
            if n not in ("x", "y"):
                raise ValueError("formal markers are named x and y")

    @property
    def formal(self) -> bool:
        return isinstance(self.b_slot, FormalSlot) or isinstance(self.d_slot, FormalSlot)

    @classmethod
    def transcendental_pair(
        cls,
        a: Scalar,
        b: Scalar,
        field: Field,
        x_stand_in: Optional[complex] = None,
        y_stand_in: Optional[complex] = None,
    ) -> "BiquaternionAlgebra":
        """(a, x) tensor (b, y) over F(x, y) -- the certifiable shape."""
        return cls(
            a,
            FormalSlot("x", x_stand_in),
            b,
            FormalSlot("y", y_stand_in),
            field,
        )

    def slot_values(self) -> tuple:
        """Numeric (b, d) values; requires stand-ins for formal slots."""
        out = []
        for s in (self.b_slot, self.d_slot):
            if isinstance(s, FormalSlot):
                if s.stand_in is None:
                    raise ValueError(
                        f"formal slot {s.name} has no numeric stand-in"
                    )
                out.append(complex(s.stand_in))
            else:
                out.append(s.to_complex())
        return tuple(out)

    def biquat(self, coords) -> "Biquaternion":
        return Biquaternion(self, coords)

    def basis_elem(self, xi: int, eta: int) -> "Biquaternion":
        coords = [0] * 16
        coords[4 * xi + eta] = 1
        return Biquaternion(self, coords)

    def __eq__(self, other):
        return (
            isinstance(other, BiquaternionAlgebra)
            and self.field is other.field
            and (self.a, self.b_slot, self.c, self.d_slot)
            == (other.a, other.b_slot, other.c, other.d_slot)
        )

    def __hash__(self):
        return hash((self.field, self.a, self.b_slot, self.c, self.d_slot))

    def spec(self) -> dict:
        if self.formal:
            return {
                "kind": "biquaternion",
                "a": self.a,
                "b": self.c,
                "vars": ("x", "y"),
                "field": self.field,
            }
        raise ValueError("only transcendental-pair algebras have a spec string")

    def __str__(self):
        def s(v):
            return str(v) if isinstance(v, FormalSlot) else format_gaussian(v)

        return (
            f"({format_gaussian(self.a)},{s(self.b_slot)})"
            f"(x)({format_gaussian(self.c)},{s(self.d_slot)})/{self.field}"
        )

    __repr__ = __str__


class Biquaternion:
    """Sum of coefficients over the 16 basis tensors xi (x) eta.

    Coordinates are exact base-field elements; index layout is 4*xi + eta
    with xi, eta running over (1, i, j, k) of the respective factors.
    """

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: BiquaternionAlgebra, coords):
        self.algebra = algebra
        c = tuple(GaussianRational.coerce(v) for v in coords)
        if len(c) != 16:
            raise ValueError("need 16 coordinates")
        self.coords = c

    def _check(self, other):
        if not isinstance(other, Biquaternion) or other.algebra != self.algebra:
            raise ValueError("biquaternions from different algebras")

    def __add__(self, other):
        self._check(other)
        return Biquaternion(
            self.algebra, tuple(u + v for u, v in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        return Biquaternion(
            self.algebra, tuple(u - v for u, v in zip(self.coords, other.coords))
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.coerce(other)
            return Biquaternion(self.algebra, tuple(v * o for v in self.coords))
        return biquat_mul(self, other)

    __rmul__ = __mul__

    def is_zero(self):
        return all(v.is_zero() for v in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Biquaternion):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra, self.coords))


def biquat_mul(u: Biquaternion, v: Biquaternion):
    """Product in the tensor algebra: (xi1 (x) eta1)(xi2 (x) eta2) factorwise.

    For an algebra with exact slots the result is an exact
    :class:`Biquaternion`.  With formal slots the product only exists once
    numeric stand-ins are bound, and then a tuple of 16 complex
    coordinates is returned.
    """
    u._check(v)
    alg = u.algebra
    if not alg.formal:
        a, b = alg.a, alg.b_slot
        c, d = alg.c, alg.d_slot
        out = [GaussianRational(0)] * 16
        for m in range(16):
            um = u.coords[m]
            if um.is_zero():
                continue
            xi1, eta1 = divmod(m, 4)
            for n in range(16):
                vn = v.coords[n]
                if vn.is_zero():
                    continue
                xi2, eta2 = divmod(n, 4)
                c1, xi = _basis_mul(xi1, xi2, a, b)
                c2, eta = _basis_mul(eta1, eta2, c, d)
                k = 4 * xi + eta
                out[k] = out[k] + um * vn * c1 * c2
        return Biquaternion(alg, out)
    bv, dv = alg.slot_values()  # raises if a formal slot has no stand-in
    av, cv = alg.a.to_complex(), alg.c.to_complex()
    out_c = [0j] * 16
    uc = [z.to_complex() for z in u.coords]
    vc = [z.to_complex() for z in v.coords]
    for m in range(16):
        if uc[m] == 0:
            continue
        xi1, eta1 = divmod(m, 4)
        for n in range(16):
            if vc[n] == 0:
                continue
            xi2, eta2 = divmod(n, 4)
            c1, xi = _basis_mul(xi1, xi2, av, bv)
            c2, eta = _basis_mul(eta1, eta2, cv, dv)
            out_c[4 * xi + eta] += uc[m] * vc[n] * c1 * c2
    return tuple(out_c)


def albert_form(B: BiquaternionAlgebra) -> DiagForm:
    """The Albert form <a, b, -ab, -c, -d, cd>, formal slots kept formal."""
    if not B.formal:
        b = B.b_slot
        d = B.d_slot
        return DiagForm(
            [B.a, b, -B.a * b, -B.c, -d, B.c * d],
            B.field,
        )
    variables = tuple(
        s.name for s in (B.b_slot, B.d_slot) if isinstance(s, FormalSlot)
    )
    dom = FormalDomain(B.field, variables)
    nvars = len(variables)

    def entry(coef, name=None) -> FormalEntry:
        degs = [0] * nvars
        if name is not None:
            degs[variables.index(name)] = 1
        return FormalEntry(GaussianRational.coerce(coef), tuple(degs))

    def slot_entry(slot, coef=1):
        if isinstance(slot, FormalSlot):
            return entry(coef, slot.name)
        return entry(GaussianRational.coerce(coef) * slot)

    return DiagForm(
        [
            entry(B.a),
            slot_entry(B.b_slot),
            slot_entry(B.b_slot, -B.a),
            entry(-B.c),
            slot_entry(B.d_slot, -1),
            slot_entry(B.d_slot, B.c),
        ],
        dom,
    )


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------

_UNITS = {
    Field.Q: (GaussianRational(1), GaussianRational(-1)),
    Field.QI: (
        GaussianRational(1),
        GaussianRational(-1),
        GaussianRational(0, 1),
        GaussianRational(0, -1),
    ),
}


@dataclass
class DivisionCertificate:
    """Outcome of a certification run, replayable from its own data.

    verdict "division" carries the residue-form trail that proves the
    claim; "not-division" carries an explicit isotropic vector for the
    norm form; "not-certified" carries the reasons each route failed and
    asserts nothing about the algebra.
    """

    verdict: str
    kind: str  # "quaternion" | "biquaternion"
    algebra_spec: str
    detail: dict = dc_field(default_factory=dict)

    def to_json(self, indent: int | None = 2) -> str:
        payload = {
            "kind": self.kind,
            "algebra": self.algebra_spec,
            "verdict": self.verdict,
            "detail": self.detail,
        }
        return json.dumps(payload, indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DivisionCertificate":
        payload = json.loads(text)
        return cls(
            verdict=payload["verdict"],
            kind=payload["kind"],
            algebra_spec=payload["algebra"],
            detail=payload.get("detail", {}),
        )

    def verify(self) -> bool:
        """Replay the certificate's claim from the recorded data alone."""
        desc = parse_algebra_spec(self.algebra_spec)
        if self.kind == "quaternion":
            A = QuaternionAlgebra(desc["a"], desc["b"], desc["field"])
            if self.verdict == "not-division":
                vec = [parse_gaussian(t) for t in self.detail["isotropic_vector"]]
                if all(v.is_zero() for v in vec):
                    return False
                return norm_form(A).evaluate(vec).is_zero()
            place = None
            if self.detail.get("place"):
                place = _place_from_string(self.detail["place"], desc["field"])
            fresh = certify_quaternion_division(A, place)
            if fresh.verdict != self.verdict:
                return False
            if self.verdict == "division":
                keys = ("place", "arrangement", "phi1", "phi2")
                return all(self.detail.get(k) == fresh.detail.get(k) for k in keys)
            return True
        B = BiquaternionAlgebra.transcendental_pair(desc["a"], desc["b"], desc["field"])
        fresh = certify_biquaternion_division(B)
        if fresh.verdict != self.verdict:
            return False
        if self.verdict == "division":
            return self.detail.get("chain") == fresh.detail.get("chain")
        return True


def _place_from_string(text: str, field: Field) -> Place:
    body = text.strip()
    if body.endswith("[dyadic]"):
        body = body[: -len("[dyadic]")]
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"cannot parse place {text!r}")
    gen = parse_gaussian(body[1:-1])
    if field is Field.Q:
        if not gen.is_rational() or gen.re.denominator != 1:
            raise ValueError(f"{text!r} is not a rational prime")
        return Place.of_rational_prime(int(gen.re))
    return Place.of_gaussian_prime(normalize_gaussian_prime(gen))


def _field_sqrt(z: GaussianRational, field: Field) -> GaussianRational | None:
    if field is Field.Q:
        r = sqrt_rational(z.re) if z.is_rational() else None
        return None if r is None else GaussianRational(r)
    return sqrt_gaussian(z)


def _detect_isotropic(A: QuaternionAlgebra):
    """Cheap split detection: a, b or -ab a square gives an explicit vector."""
    a, b = A.a, A.b
    w = _field_sqrt(a, A.field)
    if w is not None:
        return [w, GaussianRational(1), GaussianRational(0), GaussianRational(0)]
    w = _field_sqrt(b, A.field)
    if w is not None:
        return [w, GaussianRational(0), GaussianRational(1), GaussianRational(0)]
    w = _field_sqrt(-a * b, A.field)
    if w is not None:
        return [w, GaussianRational(0), GaussianRational(0), GaussianRational(1)]
    return None


def _unit_square_class(u: GaussianRational, field: Field):
    """If u = unit * square, return the unit; else None."""
    for eps in _UNITS[field]:
        if is_square_in(u / eps, field):
            return eps
    return None


def certify_quaternion_division(
    A: QuaternionAlgebra, place: Place | None = None
) -> DivisionCertificate:
    """Try to certify (a,b) as a division algebra at a non-dyadic place.

    The certifiable class: one slot is, up to units and squares, a prime
    element generating the place, and the other slot is a unit there whose
    residue is a non-square.  Both slot orders are tried (the algebra with
    swapped slots is isomorphic).  If no place is given, candidates are
    read off the odd-valuation support of the slots.

    The verdict is one-sided: "not-certified" does not mean the algebra is
    split.  A square slot (a, b, or -ab) short-circuits to "not-division"
    with an isotropic vector of the norm form as witness.
    """
    spec_str = format_algebra_spec(A.spec())
    vec = _detect_isotropic(A)
    if vec is not None:
        nf = norm_form(A)
        assert nf.evaluate(vec).is_zero()
        return DivisionCertificate(
            "not-division",
            "quaternion",
            spec_str,
            {
                "isotropic_vector": [format_gaussian(v) for v in vec],
                "norm_form": str(nf),
                "reason": "a slot (a, b or -ab) is a square; the norm form is isotropic",
            },
        )

    if place is not None:
        if place.dyadic:
            raise ValueError(
                f"place {place} is dyadic; the residue criterion needs odd "
                "residue characteristic"
            )
        candidates = [place]
    else:
        candidates = [
            P
            for slot in (A.a, A.b)
            for P in places_with_odd_valuation(slot, A.field)
            if not P.dyadic
        ]
        # de-duplicate, preserving order
        seen = set()
        candidates = [P for P in candidates if not (P in seen or seen.add(P))]

    reasons = []
    arrangements = (("(a,b)", A.a, A.b), ("(b,a)", A.b, A.a))
    for P in candidates:
        for label, pi_slot, unit_slot in arrangements:
            why = _try_uniformizer_route(A, P, label, pi_slot, unit_slot, spec_str)
            if isinstance(why, DivisionCertificate):
                return why
            reasons.append(why)
    if not candidates:
        reasons.append(
            "no non-dyadic place with odd valuation on either slot"
        )
    return DivisionCertificate(
        "not-certified",
        "quaternion",
        spec_str,
        {"reasons": reasons, "norm_form": str(norm_form(A))},
    )


def _try_uniformizer_route(
    A: QuaternionAlgebra,
    P: Place,
    label: str,
    pi_slot: GaussianRational,
    unit_slot: GaussianRational,
    spec_str: str,
):
    """One (place, arrangement) attempt; a certificate on success, reason text on failure."""
    v_pi = P.v(pi_slot)
    if v_pi % 2 == 0:
        return f"{P} {label}: uniformizer slot has even valuation {int(v_pi)}"
    unit_part = pi_slot / P.uniformizer() ** int(v_pi)
    eps = _unit_square_class(unit_part, A.field)
    if eps is None:
        return (
            f"{P} {label}: slot {format_gaussian(pi_slot)} is not a prime "
            "element times a unit and a square"
        )
    if P.v(unit_slot) != 0:
        return f"{P} {label}: second slot is not a unit at the place"
    if not is_nonsquare_mod(unit_slot, P):
        return (
            f"{P} {label}: residue of {format_gaussian(unit_slot)} is a square "
            f"mod {P}"
        )
    certified = QuaternionAlgebra(pi_slot, unit_slot, A.field)
    nf = norm_form(certified)
    split = residue_decompose(nf, P)
    anisotropic = springer_anisotropic(nf, P)
    assert anisotropic, "residue trail must replay"
    detail = {
        "criterion": "prime-uniformizer",
        "place": str(P),
        "arrangement": label,
        "uniformizer": format_gaussian(P.uniformizer()),
        "unit_adjustment": format_gaussian(eps),
        "norm_form": str(nf),
        "phi1": str(split.phi1),
        "phi2": str(split.phi2),
        "nonsquare_unit": {
            "element": format_gaussian(unit_slot),
            "residue": str(P.reduce(unit_slot)),
            "nonsquare_classes": count_nonsquare_classes(P),
        },
    }
    if label == "(b,a)":
        detail["note"] = "certified via the isomorphic slot-swapped algebra"
    return DivisionCertificate("division", "quaternion", spec_str, detail)


def certify_biquaternion_division(B: BiquaternionAlgebra) -> DivisionCertificate:
    """Certify (a,x) tensor (b,y) over F(x,y) as a division algebra.

    Requires the transcendental-pair shape (both non-square slots formal).
    The Albert form <a, x, -ax, -b, -y, by> is split along y and then x;
    all four residue forms are binary, and their anisotropy over F reduces
    to: none of a, b, ab is a square in F.  That chain is replayed
    symbolically and recorded.
    """
    if not (
        isinstance(B.b_slot, FormalSlot) and isinstance(B.d_slot, FormalSlot)
    ):
        raise ValueError(
            "certification needs the transcendental shape (a,x)(x)(b,y); "
            "for exact slots decide via the Albert form instead"
        )
    a, b = B.a, B.c
    spec_str = format_algebra_spec(B.spec())
    phi = albert_form(B)
    checks = {
        "a": is_square_in(a, B.field),
        "b": is_square_in(b, B.field),
        "ab": is_square_in(a * b, B.field),
    }
    if not any(checks.values()):
        x_name, y_name = B.b_slot.name, B.d_slot.name
        tower = Valuation((y_name, x_name), B.field)
        assert springer_anisotropic(phi, tower), "symbolic chain must replay"
        split_y = residue_decompose(phi, Valuation((y_name,), B.field))
        split_x = residue_decompose(split_y.phi1, Valuation((x_name,), B.field))
        detail = {
            "criterion": "transcendental-pair",
            "albert_form": str(phi),
            "chain": [
                {
                    "level": y_name,
                    "phi1": str(split_y.phi1),
                    "phi2": str(split_y.phi2),
                },
                {
                    "level": x_name,
                    "psi1": str(split_x.phi1),
                    "psi2": str(split_x.phi2),
                },
            ],
            "nonsquare_checks": {
                "a": format_gaussian(a),
                "b": format_gaussian(b),
                "ab": format_gaussian(a * b),
            },
            "coordinate_field": (
                f"{B.field}(sqrt({format_gaussian(a)}), sqrt({format_gaussian(b)}))"
            ),
        }
        return DivisionCertificate("division", "biquaternion", spec_str, detail)

    # Some square spoils the chain; record which, with an Albert-isotropic
    # vector as supporting evidence (ordering: <a, x, -ax, -b, -y, by>).
    evidence = {}
    if checks["a"]:
        w = _field_sqrt(a, B.field)
        evidence["albert_isotropic_vector"] = _fmt_vec([0, w, 1, 0, 0, 0])
    elif checks["b"]:
        w = _field_sqrt(b, B.field)
        evidence["albert_isotropic_vector"] = _fmt_vec([0, 0, 0, 0, w, 1])
    else:
        w = _field_sqrt(a * b, B.field)
        evidence["albert_isotropic_vector"] = _fmt_vec([w / a, 0, 0, 1, 0, 0])
    return DivisionCertificate(
        "not-certified",
        "biquaternion",
        spec_str,
        {
            "reasons": [
                f"{name} is a square in {B.field}"
                for name, bad in checks.items()
                if bad
            ],
            "albert_form": str(phi),
            **evidence,
        },
    )


def _fmt_vec(vals) -> list[str]:
    return [format_gaussian(GaussianRational.coerce(v)) for v in vals]
