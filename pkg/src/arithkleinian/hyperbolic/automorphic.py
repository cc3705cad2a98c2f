"""Multiplier systems, symmetric powers, slash operators and Fourier-Bessel terms."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..numfield import QuadraticField
from .bessel import bessel_k
from .geometry import MoebiusMap, PointH2, PointH3, h2_act, h3_act_components


def multiplier_h2(g: MoebiusMap, z: PointH2) -> complex:
    return g.c * z.z + g.d


def multiplier_h3(g: MoebiusMap, z: PointH3) -> np.ndarray:
    r = g.c * z.x + g.d
    s = g.c * z.y
    return np.array([[r, -s], [s.conjugate(), r.conjugate()]], dtype=complex)


@dataclass(frozen=True)
class SymPower:
    k: int
    matrix: np.ndarray = field(repr=False)


def sym_power(k: int, M) -> SymPower:
    """Matrix of M on homogeneous degree-k polynomials.

    Basis X^k, X^(k-1) Y, ..., Y^k.  Row i holds the coefficients of
    (a X + b Y)^(k-i) (c X + d Y)^i, so sym_power(1, M) is M itself and
    M -> sym_power(k, M) is multiplicative.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    M = np.asarray(M, dtype=complex)
    first = np.array([M[0, 0], M[0, 1]])
    second = np.array([M[1, 0], M[1, 1]])
    out = np.zeros((k + 1, k + 1), dtype=complex)
    for i in range(k + 1):
        row = np.array([1.0 + 0j])
        for _ in range(k - i):
            row = np.convolve(row, first)
        for _ in range(i):
            row = np.convolve(row, second)
        out[i] = row
    return SymPower(k, out)


def weight2_matrix(g: MoebiusMap, z: PointH3) -> np.ndarray:
    """The explicit 3x3 weight-two slash matrix, with r = cx + d and s = cy.

    Equals det(J) * sym_power(2, J^-1) for J = multiplier_h3(g, z); that is,
    sym_power(2, .) applied to the inverse of J rescaled to determinant one.
    """
    r = g.c * z.x + g.d
    s = g.c * z.y
    rb, sb = r.conjugate(), s.conjugate()
    m = np.array(
        [
            [rb * rb, 2 * rb * s, s * s],
            [-rb * sb, abs(r) ** 2 - abs(s) ** 2, r * s],
            [sb * sb, -2 * r * sb, r * r],
        ],
        dtype=complex,
    )
    return m / (abs(r) ** 2 + abs(s) ** 2)


def slash_h2(F: Callable[[PointH2], complex], k: int, g: MoebiusMap):
    """z -> J(g, z)^-k F(g z)."""

    def sliced(z: PointH2):
        return multiplier_h2(g, z) ** (-k) * F(h2_act(g, z))

    return sliced


def slash_h3(F: Callable[[PointH3], np.ndarray], k: int, g: MoebiusMap):
    """z -> sym_power(k, J(g, z)^-1) F(g z)."""

    def sliced(z: PointH3):
        J = multiplier_h3(g, z)
        return sym_power(k, np.linalg.inv(J)).matrix @ np.asarray(F(h3_act_components(g, z)))

    return sliced


def slash(F, k: int, g: MoebiusMap, space: str = "H3"):
    if space.upper() == "H2":
        return slash_h2(F, k, g)
    if space.upper() == "H3":
        return slash_h3(F, k, g)
    raise ValueError(f"unknown space {space!r}; expected H2 or H3")


# -- Fourier-Bessel expansions at the cusp of an imaginary quadratic field ---


def psi(w: complex) -> complex:
    """exp(2 pi i (w + conj w)), the additive character used by the expansion."""
    return cmath.exp(2j * math.pi * (2 * w.real))


def bessel_vector(t: float) -> np.ndarray:
    k1 = bessel_k(1, t)
    return np.array([-0.5j * k1, bessel_k(0, t), 0.5j * k1], dtype=complex)


def _embed_integral(K: QuadraticField, alpha) -> complex:
    u, v = alpha
    return complex(u) + complex(v) * K.omega()


def fourier_bessel_term(alpha, c: complex, z: PointH3, K: QuadraticField) -> np.ndarray:
    """c y^2 bessel_vector(4 pi |alpha| y / sqrt|D|) psi(alpha x / sqrt D).

    alpha is an integral element given by coordinates (u, v) on {1, w}.
    """
    if not (isinstance(K, QuadraticField) and K.is_imaginary):
        raise ValueError("Fourier-Bessel expansions need an imaginary quadratic field")
    u, v = alpha
    if u == 0 and v == 0:
        raise ValueError("alpha must be nonzero")
    if c == 0:
        return np.zeros(3, dtype=complex)
    D = K.discriminant
    a = _embed_integral(K, alpha)
    sqrt_D = 1j * math.sqrt(-D)
    t = 4 * math.pi * abs(a) * z.y / math.sqrt(-D)
    return complex(c) * z.y**2 * bessel_vector(t) * psi(a * z.x / sqrt_D)


@dataclass
class CuspExpansion:
    field: QuadraticField
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        for key in self.coefficients:
            if tuple(key) == (0, 0):
                raise ValueError("the constant term alpha = 0 is not part of the expansion")

    def support_radius(self) -> float:
        if not self.coefficients:
            return 0.0
        return max(abs(_embed_integral(self.field, a)) for a in self.coefficients)


@dataclass(frozen=True)
class ExpansionValue:
    value: np.ndarray
    tail_estimate: float


def evaluate_cusp_expansion(E: CuspExpansion, z: PointH3) -> ExpansionValue:
    """Sum of the stored terms plus a rough size of the first omitted shell.

    The tail estimate is max|c| y^2 K0(t) times the number of lattice points
    on the next shell, with t the Bessel argument just outside the support.
    """
    total = np.zeros(3, dtype=complex)
    for alpha in sorted(E.coefficients):
        total = total + fourier_bessel_term(alpha, E.coefficients[alpha], z, E.field)
    if not E.coefficients:
        return ExpansionValue(total, 0.0)
    D = -E.field.discriminant
    R = E.support_radius()
    t_next = 4 * math.pi * (R + 1.0) * z.y / math.sqrt(D)
    cmax = max(abs(c) for c in E.coefficients.values())
    shell = 2 * math.pi * (R + 1.0)
    return ExpansionValue(total, cmax * z.y**2 * bessel_k(0, t_next) * shell)
