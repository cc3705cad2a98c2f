"""Upper half-plane and upper half-space models, and the SL2 actions on them."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidPointError
from ..quatalg import HAMILTONIANS, QuaternionElement


@dataclass(frozen=True)
class PointH2:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise InvalidPointError(f"point of H2 needs y > 0, got {self.y}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class PointH3:
    x: complex
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise InvalidPointError(f"point of H3 needs y > 0, got {self.y}")
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", float(self.y))

    @property
    def x1(self):
        return self.x.real

    @property
    def x2(self):
        return self.x.imag


class MoebiusMap:
    """A matrix (a b; c d) scaled to determinant one."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        det = complex(a) * complex(d) - complex(b) * complex(c)
        if det == 0:
            raise ValueError("singular matrix")
        if det.imag == 0 and det.real > 0:
            s = math.sqrt(det.real)
        else:
            s = cmath.sqrt(det)
        self.a = complex(a) / s
        self.b = complex(b) / s
        self.c = complex(c) / s
        self.d = complex(d) / s

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def is_real(self) -> bool:
        return all(abs(t.imag) <= 1e-14 * (1 + abs(t)) for t in (self.a, self.b, self.c, self.d))

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap.from_matrix(self.matrix @ other.matrix)

    def __neg__(self):
        m = object.__new__(MoebiusMap)
        m.a, m.b, m.c, m.d = -self.a, -self.b, -self.c, -self.d
        return m

    def inverse(self):
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __repr__(self):
        return f"MoebiusMap({self.a}, {self.b}, {self.c}, {self.d})"


IDENTITY = MoebiusMap(1, 0, 0, 1)


def h2_distance(P: PointH2, Q: PointH2) -> float:
    # 2 asinh(|P-Q| / (2 sqrt(y y'))) equals arcosh(1 + |P-Q|^2/(2 y y')) and stays accurate near 0
    chord = math.hypot(P.x - Q.x, P.y - Q.y)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(P.y * Q.y)))


def h3_distance(P: PointH3, Q: PointH3) -> float:
    dx = P.x - Q.x
    chord = math.sqrt(dx.real**2 + dx.imag**2 + (P.y - Q.y) ** 2)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(P.y * Q.y)))


def cosh_h2_distance(P: PointH2, Q: PointH2) -> float:
    return 1.0 + ((P.x - Q.x) ** 2 + (P.y - Q.y) ** 2) / (2.0 * P.y * Q.y)


def cosh_h3_distance(P: PointH3, Q: PointH3) -> float:
    dx = P.x - Q.x
    return 1.0 + (dx.real**2 + dx.imag**2 + (P.y - Q.y) ** 2) / (2.0 * P.y * Q.y)


def h2_act(g: MoebiusMap, z: PointH2) -> PointH2:
    if not g.is_real:
        raise ValueError("H2 action needs a real matrix")
    a, b, c, d = g.a.real, g.b.real, g.c.real, g.d.real
    x, y = z.x, z.y
    den = (c * x + d) ** 2 + c * c * y * y
    return PointH2(((a * x + b) * (c * x + d) + a * c * y * y) / den, y / den)


def h3_act_components(g: MoebiusMap, z: PointH3) -> PointH3:
    a, b, c, d = g.a, g.b, g.c, g.d
    x, y = z.x, z.y
    r = c * x + d
    den = abs(r) ** 2 + abs(c) ** 2 * y * y
    return PointH3(((a * x + b) * r.conjugate() + a * c.conjugate() * y * y) / den, y / den)


def _as_hamiltonian(w: complex, y: float = 0.0) -> QuaternionElement:
    return HAMILTONIANS(w.real, w.imag, y, 0.0)


def h3_act_quaternion(g: MoebiusMap, z: PointH3) -> PointH3:
    """(a z + b)(c z + d)^-1 computed inside the Hamiltonians, z = x + y j."""
    q = _as_hamiltonian(z.x, z.y)
    num = _as_hamiltonian(g.a) * q + _as_hamiltonian(g.b)
    den = _as_hamiltonian(g.c) * q + _as_hamiltonian(g.d)
    w = num * den.inverse()
    return PointH3(complex(w.coords[0], w.coords[1]), w.coords[2])


def hamilton_embed(q) -> np.ndarray:
    """x + y j  ->  [[x, -y], [conj(y), conj(x)]] for complex x, y.

    Accepts a Hamiltonian quaternion or a pair (x, y) of complex numbers.
    """
    if isinstance(q, QuaternionElement):
        q0, q1, q2, q3 = (float(t) for t in q.coords)
        x, y = complex(q0, q1), complex(q2, q3)
    else:
        x, y = complex(q[0]), complex(q[1])
    return np.array([[x, -y], [y.conjugate(), x.conjugate()]], dtype=complex)


def point_h3_as_matrix(z: PointH3) -> np.ndarray:
    return hamilton_embed((z.x, z.y))
