"""Text grammar for fields, elements, points and matrices.

field    := "Q" | "d=<int>" | "poly=<c0>,<c1>,...,<cn>"     (low degree first, monic)
element  := polynomial in w with rational coefficients, e.g. "3/2", "1+2*w", "w^2-1"
point    := "x,y" (H2) | "x1,x2,y" (H3)
matrix   := "a,b,c,d" with complex entries such as "1", "-0.5", "2+3I", "1j"
"""

from __future__ import annotations

import re
from fractions import Fraction
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from .errors import SpecSyntaxError
from .hyperbolic.geometry import MoebiusMap, PointH2, PointH3
from .numfield import QQ, NumberField, make_monogenic, make_quadratic

FIELD_GRAMMAR = "Q | d=<int> | poly=<c0>,<c1>,...,<cn>"
ELEMENT_GRAMMAR = "polynomial in w with rational coefficients, e.g. 1+2*w, -3/2, w^2"

_W = sympy.Symbol("w")
_ELEMENT_CHARS = re.compile(r"^[0-9w+\-*/^() ]+$")


def parse_field(spec: str) -> NumberField:
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    try:
        if s.startswith("d="):
            return make_quadratic(int(s[2:]))
        if s.startswith("poly="):
            return make_monogenic([int(c) for c in s[5:].split(",")])
    except ValueError as exc:
        if type(exc) is not ValueError:
            raise
        raise SpecSyntaxError(f"bad field spec {spec!r}; expected {FIELD_GRAMMAR}") from None
    raise SpecSyntaxError(f"bad field spec {spec!r}; expected {FIELD_GRAMMAR}")


def parse_element(K: NumberField, text: str):
    s = str(text).strip()
    if not s or not _ELEMENT_CHARS.match(s):
        raise SpecSyntaxError(f"bad element {text!r}; expected {ELEMENT_GRAMMAR}")
    try:
        expr = parse_expr(
            s.replace("^", "**"),
            local_dict={"w": _W},
            transformations=standard_transformations,
            evaluate=True,
        )
        poly = sympy.Poly(expr, _W, domain="QQ")
    except (SyntaxError, TokenError, ArithmeticError, TypeError, ValueError, sympy.SympifyError, sympy.PolynomialError, sympy.polys.polyerrors.CoercionFailed):
        raise SpecSyntaxError(f"bad element {text!r}; expected {ELEMENT_GRAMMAR}") from None
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    if K.degree == 1 and len(coeffs) > 1:
        raise SpecSyntaxError(f"element {text!r} uses w, but the field is Q")
    return K(coeffs)


def parse_element_list(K: NumberField, text: str, length: int):
    parts = [p for p in str(text).split(",")]
    if len(parts) != length:
        raise SpecSyntaxError(f"expected {length} comma-separated elements, got {len(parts)} in {text!r}")
    return [parse_element(K, p) for p in parts]


def _floats(text: str):
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise SpecSyntaxError(f"bad point {text!r}; expected x,y or x1,x2,y") from None


def parse_point(text: str):
    vals = _floats(text)
    if len(vals) == 2:
        return PointH2(vals[0], vals[1])
    if len(vals) == 3:
        return PointH3(complex(vals[0], vals[1]), vals[2])
    raise SpecSyntaxError(f"bad point {text!r}; expected x,y or x1,x2,y")


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("*", "").replace("I", "j").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise SpecSyntaxError(f"bad complex number {text!r}; expected e.g. 2, -0.5, 1+2I") from None


def parse_complex_list(text: str):
    return [parse_complex(t) for t in text.split(",")]


def parse_matrix(text: str) -> MoebiusMap:
    vals = parse_complex_list(text)
    if len(vals) != 4:
        raise SpecSyntaxError(f"bad matrix {text!r}; expected a,b,c,d")
    try:
        return MoebiusMap(*vals)
    except ValueError as exc:
        raise SpecSyntaxError(f"bad matrix {text!r}: {exc}") from None
