"""Diagonal quadratic forms, residue decomposition and isotropy decisions.

A form <a1, ..., an> lives over one of three entry domains: a base number
field (entries are exact Gaussian rationals), a residue field (entries are
finite-field elements), or a rational function field F(x, y) (entries are
monomials with an exact coefficient).  Residue decomposition along a
valuation level splits a form into its first and second residue forms;
iterating this is the whole certification engine of the package.

The finite-field isotropy decision is the classical one: a nonsingular
binary form <u1, u2> is isotropic iff -u1*u2 is a square, and any
nonsingular form in >= 3 variables over a finite field is isotropic.  Two
independent enumeration oracles are provided for cross-checking: a literal
vector sweep (bounded to q^n <= 10^6) and an exact attainable-value-set
computation with no size restriction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exactnum import (
    Field,
    GaussianRational,
    Scalar,
    is_square_in,
    squarefree_part,
)
from .finitefield import FiniteField, FqElem
from .valuation import INF, Place, Valuation, _as_place


@dataclass(frozen=True)
class FormalDomain:
    """Rational function field F(vars...) as an entry domain for forms."""

    field: Field
    variables: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.field}({','.join(self.variables)})"


@dataclass(frozen=True)
class FormalEntry:
    """coef * prod(var^deg) -- a monomial entry of a formal diagonal form."""

    coef: GaussianRational
    degs: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.coef.is_zero()

    def render(self, variables: tuple[str, ...]) -> str:
        parts = [] if self.coef == 1 and any(self.degs) else [str(self.coef)]
        if self.coef == -1 and any(self.degs):
            parts = ["-"]
        for var, d in zip(variables, self.degs):
            if d == 1:
                parts.append(var)
            elif d > 1:
                parts.append(f"{var}^{d}")
        if parts == ["-"]:
            return "-" + "*".join(p for p in parts[1:]) if len(parts) > 1 else "-1"
        joined = "*".join(p for p in parts if p != "-")
        return ("-" + joined) if parts and parts[0] == "-" else joined


Base = Union[Field, FiniteField, FormalDomain]
Entry = Union[GaussianRational, FqElem, FormalEntry]


class DiagForm:
    """A diagonal quadratic form <a1, ..., an> over a tagged base domain."""

    __slots__ = ("entries", "base")

    def __init__(self, entries: Iterable, base: Base):
        self.base = base
        coerced = []
        for a in entries:
            a = self._coerce_entry(a)
            if _entry_is_zero(a):
                raise ValueError("diagonal forms must have nonzero entries")
            coerced.append(a)
        self.entries = tuple(coerced)

    def _coerce_entry(self, a) -> Entry:
        if isinstance(self.base, Field):
            return GaussianRational.coerce(a)
        if isinstance(self.base, FiniteField):
            if isinstance(a, int):
                return self.base(a)
            if not isinstance(a, FqElem) or a.field != self.base:
                raise ValueError(f"{a!r} is not an element of {self.base}")
            return a
        if isinstance(a, FormalEntry):
            if len(a.degs) != len(self.base.variables):
                raise ValueError("monomial degree vector does not match domain")
            return a
        return FormalEntry(
            GaussianRational.coerce(a), (0,) * len(self.base.variables)
        )

    @property
    def dim(self) -> int:
        return len(self.entries)

    def evaluate(self, vec: Sequence) -> Entry:
        """sum a_i * v_i^2; vector entries live in the same domain."""
        if isinstance(self.base, FormalDomain):
            raise TypeError("formal forms are symbolic; bind the variables first")
        if len(vec) != self.dim:
            raise ValueError(f"expected a vector of length {self.dim}")
        if isinstance(self.base, FiniteField):
            total = self.base.zero
        else:
            total = GaussianRational(0)
        for a, v in zip(self.entries, vec):
            if isinstance(self.base, Field):
                v = GaussianRational.coerce(v)
            total = total + a * v * v
        return total

    def permuted(self, order: Sequence[int]) -> "DiagForm":
        return DiagForm((self.entries[k] for k in order), self.base)

    def normalized(self) -> "DiagForm":
        """Square-class normalization over Q: strip squared integer factors."""
        if self.base is not Field.Q:
            return self
        return DiagForm(
            (GaussianRational(squarefree_part(a.re)) for a in self.entries),
            self.base,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiagForm)
            and self.base == other.base
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.base if not isinstance(self.base, Field) else self.base.value, self.entries))

    def __str__(self) -> str:
        if isinstance(self.base, FormalDomain):
            inner = ",".join(e.render(self.base.variables) for e in self.entries)
        else:
            inner = ",".join(str(e) for e in self.entries)
        return f"⟨{inner}⟩"

    __repr__ = __str__


def _entry_is_zero(a: Entry) -> bool:
    return a.is_zero()


def orth_sum(f: DiagForm, g: DiagForm) -> DiagForm:
    """Orthogonal sum: concatenation of the diagonal entries."""
    if f.base != g.base:
        raise ValueError("orthogonal sum needs a common base domain")
    return DiagForm(f.entries + g.entries, f.base)


def scale(c, f: DiagForm) -> DiagForm:
    """The form <c*a1, ..., c*an>; c must be nonzero."""
    if isinstance(f.base, FormalDomain) and not isinstance(c, FormalEntry):
        c = FormalEntry(
            GaussianRational.coerce(c), (0,) * len(f.base.variables)
        )
    if isinstance(c, FormalEntry):
        if c.is_zero():
            raise ValueError("cannot scale a form by zero")
        return DiagForm(
            (
                FormalEntry(c.coef * e.coef, tuple(x + y for x, y in zip(c.degs, e.degs)))
                for e in f.entries
            ),
            f.base,
        )
    if isinstance(f.base, FiniteField):
        c = f.base(c) if isinstance(c, int) else c
    else:
        c = GaussianRational.coerce(c)
    if c.is_zero():
        raise ValueError("cannot scale a form by zero")
    return DiagForm((c * e for e in f.entries), f.base)


# ---------------------------------------------------------------------------
# Isotropy over finite fields
# ---------------------------------------------------------------------------


def is_isotropic_finite(f: DiagForm) -> bool:
    """Exact isotropy decision for a nonsingular form over a finite field.

    dim 0 and dim 1 forms are anisotropic; <u1, u2> is isotropic iff
    -u1*u2 is a square; any nonsingular form of dim >= 3 over a finite
    field is isotropic (Chevalley-Warning).
    """
    if not isinstance(f.base, FiniteField):
        raise TypeError("finite-field isotropy needs a residue form")
    if f.dim <= 1:
        return False
    if f.dim == 2:
        u1, u2 = f.entries
        return (-(u1 * u2)).is_square()
    return True


def isotropic_by_enumeration(f: DiagForm, limit: int = 10**6) -> bool:
    """Literal sweep over all q^n vectors; refuses beyond the limit."""
    if not isinstance(f.base, FiniteField):
        raise TypeError("enumeration oracle needs a residue form")
    fq = f.base
    if fq.q**f.dim > limit:
        raise ValueError(f"q^n = {fq.q ** f.dim} exceeds the enumeration budget")
    if f.dim == 0:
        return False
    for vec in itertools.product(list(fq.elements()), repeat=f.dim):
        if all(v.is_zero() for v in vec):
            continue
        if f.evaluate(vec).is_zero():
            return True
    return False


def isotropic_by_value_sets(f: DiagForm) -> bool:
    """Exact isotropy via attainable-value sets, without size limits.

    Tracks the set of values Sum a_i x_i^2 reachable with at least one
    nonzero coordinate; equivalent to the full q^n sweep but polynomial in
    q and n.
    """
    if not isinstance(f.base, FiniteField):
        raise TypeError("value-set oracle needs a residue form")
    fq = f.base
    all_vals: set = {fq.zero}
    nonzero_vals: set = set()
    for a in f.entries:
        w_full = {a * x * x for x in fq.elements()}
        w_nz = {a * x * x for x in fq.units()}
        nonzero_vals = {v + w for v in nonzero_vals for w in w_full} | {
            v + w for v in all_vals for w in w_nz
        }
        all_vals = {v + w for v in all_vals for w in w_full}
    return fq.zero in nonzero_vals


# ---------------------------------------------------------------------------
# Residue decomposition and Springer's criterion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueSplit:
    """f = phi1 + <pi> phi2 with unit entries reduced into the residue domain."""

    phi1: DiagForm
    phi2: DiagForm
    uniformizer: object  # GaussianRational for a place, variable name for a formal level

    def __str__(self) -> str:
        return f"phi1={self.phi1}  phi2={self.phi2}  pi={self.uniformizer}"


def residue_decompose(f: DiagForm, val: Valuation | Place | int) -> ResidueSplit:
    """Split f along the outermost level of the valuation.

    Entries with even valuation contribute their unit part to the first
    residue form, odd ones to the second (entries are defined up to
    squares, so valuations reduce mod 2).  Dyadic places are rejected:
    the residue criterion is only valid in odd residue characteristic.
    """
    val = _as_valuation(val)
    level = val.head
    if isinstance(level, str):
        return _decompose_formal(f, level)
    return _decompose_place(f, level)


def _as_valuation(val) -> Valuation:
    if isinstance(val, Valuation):
        return val
    place = _as_place(val)
    return Valuation.p_adic(place)


def _decompose_place(f: DiagForm, place: Place) -> ResidueSplit:
    if not isinstance(f.base, Field):
        raise TypeError("place-level decomposition needs a number-field form")
    if place.field is not f.base:
        raise ValueError(f"place {place} does not live on {f.base}")
    if place.dyadic:
        raise ValueError(
            f"place {place} is dyadic (residue characteristic 2); "
            "the residue criterion does not apply"
        )
    fq = place.residue
    phi1: list[FqElem] = []
    phi2: list[FqElem] = []
    for a in f.entries:
        k = place.v(a)
        u = place.reduce(place.unit_part(a))
        (phi1 if int(k) % 2 == 0 else phi2).append(u)
    return ResidueSplit(
        DiagForm(phi1, fq), DiagForm(phi2, fq), place.uniformizer()
    )


def _decompose_formal(f: DiagForm, var: str) -> ResidueSplit:
    if not isinstance(f.base, FormalDomain):
        raise TypeError(f"form over {f.base} has no formal level {var!r}")
    if var not in f.base.variables:
        raise ValueError(f"{var!r} is not a variable of {f.base}")
    idx = f.base.variables.index(var)
    rest = tuple(v for v in f.base.variables if v != var)
    if rest:
        base: Base = FormalDomain(f.base.field, rest)

        def drop(e: FormalEntry) -> FormalEntry:
            degs = tuple(d for j, d in enumerate(e.degs) if j != idx)
            return FormalEntry(e.coef, degs)

    else:
        base = f.base.field

        def drop(e: FormalEntry) -> GaussianRational:
            return e.coef

    phi1, phi2 = [], []
    for e in f.entries:
        (phi1 if e.degs[idx] % 2 == 0 else phi2).append(drop(e))
    return ResidueSplit(DiagForm(phi1, base), DiagForm(phi2, base), var)


def anisotropic_over_base(f: DiagForm) -> bool:
    """Anisotropy decision at the bottom of a tower.

    Residue forms over finite fields are decided exactly.  Forms that land
    back in Q or Q(i) (bottoms of purely formal towers) are decided for
    dim <= 2 by exact square-class tests; higher dimensions over a number
    field have no decision procedure here.
    """
    if isinstance(f.base, FiniteField):
        return not is_isotropic_finite(f)
    if isinstance(f.base, Field):
        if f.dim <= 1:
            return True
        if f.dim == 2:
            u1, u2 = f.entries
            return not is_square_in(-(u1 * u2), f.base)
        raise ValueError(
            f"cannot decide anisotropy of a dim-{f.dim} form over {f.base}; "
            "the valuation tower is too shallow"
        )
    raise TypeError("formal forms need further decomposition")


def springer_anisotropic(f: DiagForm, val: Valuation | Place | int) -> bool:
    """Anisotropy over the completion, decided via residue forms.

    Decomposes f along every level of the tower and requires both residue
    forms to be anisotropic at each stage.  A True answer certifies that f
    is anisotropic over the completed field, hence over the base field
    itself; False means the completion-level criterion failed (the form is
    isotropic over the completion).
    """
    val = _as_valuation(val)
    split = residue_decompose(f, val)
    tail = val.tail()
    out = True
    for phi in (split.phi1, split.phi2):
        if tail is None:
            out = out and anisotropic_over_base(phi)
        else:
            out = out and springer_anisotropic(phi, tail)
    return out
