"""Mini-grammar for algebra specs, field elements and primes.

Elements of Q(i) are written like ``3``, ``-1/2``, ``i``, ``2i``, ``1+2i``,
``1/2-3/4i``.  Quaternion algebras are ``(a,b)/Q`` or ``(a,b)/Qi``;
biquaternion algebras in the transcendental shape are
``(a=1+2i,b=7;x,y)/Qi(x,y)`` (or positionally ``(2,3;x,y)/Q(x,y)``).
Parsing and printing round-trip on canonical forms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactnum import Field, GaussianRational

_TERM = re.compile(
    r"""(?P<sign>[+-]?)\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)?\s*(?P<imag>i)
          | (?P<real>\d+(?:/\d+)?)
        )\s*""",
    re.VERBOSE,
)


class SpecParseError(ValueError):
    """Raised for anything the mini-grammar cannot read."""


def parse_gaussian(text: str) -> GaussianRational:
    """Parse an element of Q(i) from the grammar above."""
    s = text.strip().replace(" ", "")
    if not s:
        raise SpecParseError("empty element")
    re_part = Fraction(0)
    im_part = Fraction(0)
    pos = 0
    seen = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise SpecParseError(f"cannot parse element {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("imag"):
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            im_part += sign * coef
        else:
            re_part += sign * Fraction(m.group("real"))
        pos = m.end()
        seen += 1
        if seen > 2:
            raise SpecParseError(f"too many terms in element {text!r}")
    return GaussianRational(re_part, im_part)


def format_gaussian(z: GaussianRational) -> str:
    """Canonical rendering accepted back by :func:`parse_gaussian`."""
    re_s = str(z.re)
    if z.im == 0:
        return re_s
    if z.im == 1:
        im_s = "i"
    elif z.im == -1:
        im_s = "-i"
    else:
        im_s = f"{z.im}i"
    if z.re == 0:
        return im_s
    return f"{re_s}{'+' if z.im > 0 else ''}{im_s}"


_FIELD_NAMES = {"Q": Field.Q, "Qi": Field.QI, "QI": Field.QI, "Q(i)": Field.QI}


def parse_field(text: str) -> Field:
    try:
        return _FIELD_NAMES[text.strip()]
    except KeyError:
        raise SpecParseError(f"unknown base field {text!r}") from None


def format_field(field: Field) -> str:
    return "Q" if field is Field.Q else "Qi"


def split_algebra_spec(text: str):
    """Split '(...)/(field...)' into the inner slot text and field text."""
    s = text.strip()
    m = re.fullmatch(r"\((?P<inner>[^()]*)\)\s*/\s*(?P<field>\w+(?:\([^()]*\))?)", s)
    if not m:
        raise SpecParseError(f"cannot parse algebra spec {text!r}")
    return m.group("inner"), m.group("field")


def parse_algebra_spec(text: str):
    """Parse an algebra spec; returns a dict describing it.

    Quaternion:    {"kind": "quaternion", "a": ..., "b": ..., "field": ...}
    Biquaternion:  {"kind": "biquaternion", "a": ..., "b": ...,
                    "vars": ("x", "y"), "field": ...}
    """
    inner, field_text = split_algebra_spec(text)
    if ";" in inner:
        slots, var_text = inner.split(";")
        names = tuple(v.strip() for v in var_text.split(","))
        if names != ("x", "y"):
            raise SpecParseError("transcendental slots must be named x,y")
        fm = re.fullmatch(r"(\w+)\(\s*x\s*,\s*y\s*\)", field_text.strip())
        if not fm:
            raise SpecParseError(
                f"biquaternion specs need a field like Qi(x,y), got {field_text!r}"
            )
        field = parse_field(fm.group(1))
        parts = [p.strip() for p in slots.split(",")]
        if len(parts) != 2:
            raise SpecParseError("expected two structure constants before ';'")
        vals = {}
        for idx, part in enumerate(parts):
            m = re.fullmatch(r"(?:(?P<name>[ab])\s*=\s*)?(?P<val>.+)", part)
            name = m.group("name") or ("a" if idx == 0 else "b")
            vals[name] = parse_gaussian(m.group("val"))
        if set(vals) != {"a", "b"}:
            raise SpecParseError("need both a= and b= slots")
        return {
            "kind": "biquaternion",
            "a": vals["a"],
            "b": vals["b"],
            "vars": names,
            "field": field,
        }
    field = parse_field(field_text)
    parts = [p.strip() for p in inner.split(",")]
    if len(parts) != 2:
        raise SpecParseError(f"expected (a,b), got {text!r}")
    return {
        "kind": "quaternion",
        "a": parse_gaussian(parts[0]),
        "b": parse_gaussian(parts[1]),
        "field": field,
    }


def format_algebra_spec(desc: dict) -> str:
    if desc["kind"] == "quaternion":
        return (
            f"({format_gaussian(desc['a'])},{format_gaussian(desc['b'])})"
            f"/{format_field(desc['field'])}"
        )
    return (
        f"(a={format_gaussian(desc['a'])},b={format_gaussian(desc['b'])};x,y)"
        f"/{format_field(desc['field'])}(x,y)"
    )
