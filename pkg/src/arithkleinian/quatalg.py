"""Quaternion algebras (a, b / K): arithmetic, local invariants, ramification.

Over a number field the coordinates are exact ``FieldElement`` values.  An
algebra built with ``field=None`` works over plain Python numbers; this is how
the Hamiltonians over the reals are represented for the geometry kernels.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .errors import MixedAlgebraError, SearchExhaustedError, UnsupportedPlaceError
from .numfield import QQ, FieldElement, NumberField, PrimeIdeal, is_squarefree


class QuaternionAlgebra:
    """The algebra with basis 1, i, j, ij and relations i^2 = a, j^2 = b, ij = -ji."""

    def __init__(self, a, b, field: NumberField | None = QQ):
        if field is not None:
            a, b = field(a), field(b)
        if a == 0 or b == 0:
            raise ValueError("quaternion algebra parameters must be nonzero")
        self.field = field
        self.a = a
        self.b = b

    def __eq__(self, other):
        return (
            isinstance(other, QuaternionAlgebra)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __repr__(self):
        where = "R" if self.field is None else self.field.spec()
        return f"QuaternionAlgebra(({self.a}, {self.b}) / {where})"

    def __call__(self, *coords) -> "QuaternionElement":
        if len(coords) == 1:
            coords = tuple(coords[0]) if not _is_scalar(coords[0]) else (coords[0], 0, 0, 0)
        if len(coords) != 4:
            raise ValueError("a quaternion has four coordinates")
        if self.field is not None:
            coords = tuple(self.field(c) for c in coords)
        return QuaternionElement(self, coords)

    @property
    def one(self):
        return self(1, 0, 0, 0)

    @property
    def i(self):
        return self(0, 1, 0, 0)

    @property
    def j(self):
        return self(0, 0, 1, 0)

    @property
    def k(self):
        return self(0, 0, 0, 1)

    def swapped(self):
        return QuaternionAlgebra(self.b, self.a, self.field)


def _is_scalar(x):
    return isinstance(x, (int, float, complex, Fraction, FieldElement))


class QuaternionElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuaternionAlgebra, coords):
        self.algebra = algebra
        self.coords = tuple(coords)

    def _check(self, other):
        if not isinstance(other, QuaternionElement):
            return self.algebra(other)
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise MixedAlgebraError("quaternions from different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        return QuaternionElement(self.algebra, [x + y for x, y in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return QuaternionElement(self.algebra, [x - y for x, y in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return QuaternionElement(self.algebra, [-x for x in self.coords])

    def __mul__(self, other):
        if not isinstance(other, QuaternionElement):
            if _is_scalar(other):
                return QuaternionElement(self.algebra, [x * other for x in self.coords])
            return NotImplemented
        other = self._check(other)
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = other.coords
        ab = a * b
        return QuaternionElement(
            self.algebra,
            (
                x0 * y0 + a * x1 * y1 + b * x2 * y2 - ab * x3 * y3,
                x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
                x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
                x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
            ),
        )

    def __rmul__(self, other):
        if _is_scalar(other):
            return QuaternionElement(self.algebra, [other * x for x in self.coords])
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, QuaternionElement):
            return self.algebra == other.algebra and self.coords == other.coords
        if _is_scalar(other):
            return self.coords[0] == other and all(x == 0 for x in self.coords[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Quaternion{self.coords}"

    def conjugate(self):
        x0, x1, x2, x3 = self.coords
        return QuaternionElement(self.algebra, (x0, -x1, -x2, -x3))

    def reduced_norm(self):
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def reduced_trace(self):
        return 2 * self.coords[0]

    def inverse(self):
        n = self.reduced_norm()
        if n == 0:
            raise ZeroDivisionError("quaternion of reduced norm zero is not invertible")
        inv = 1 / n
        return self.conjugate() * inv


def multiply(u: QuaternionElement, v: QuaternionElement) -> QuaternionElement:
    if u.algebra != v.algebra:
        raise MixedAlgebraError("quaternions from different algebras")
    return u * v


def reduced_norm(u):
    return u.reduced_norm()


def reduced_trace(u):
    return u.reduced_trace()


def conjugate(u):
    return u.conjugate()


# -- matrix embedding into M_2(K(sqrt a)) ------------------------------------


class SplittingRing:
    """K[t]/(t^2 - a); a field when a is not a square in K."""

    def __init__(self, field: NumberField, a):
        self.field = field
        self.a = field(a)

    def __call__(self, p, q=0):
        return SplitElement(self, self.field(p), self.field(q))

    def __eq__(self, other):
        return isinstance(other, SplittingRing) and (self.field, self.a) == (other.field, other.a)

    def __hash__(self):
        return hash((self.field, self.a))


class SplitElement:
    """p + q sqrt(a)."""

    __slots__ = ("ring", "p", "q")

    def __init__(self, ring, p, q):
        self.ring, self.p, self.q = ring, p, q

    def _c(self, other):
        if isinstance(other, SplitElement):
            return other
        return self.ring(other)

    def __add__(self, other):
        o = self._c(other)
        return SplitElement(self.ring, self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._c(other)
        return SplitElement(self.ring, self.p - o.p, self.q - o.q)

    def __neg__(self):
        return SplitElement(self.ring, -self.p, -self.q)

    def __mul__(self, other):
        o = self._c(other)
        a = self.ring.a
        return SplitElement(self.ring, self.p * o.p + a * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._c(other)
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"({self.p}) + ({self.q})*sqrt({self.ring.a})"


def matrix_embedding(u: QuaternionElement, algebra: QuaternionAlgebra | None = None):
    """Image of u in M_2 under i -> diag(s, -s), j -> [[0, b], [1, 0]], s^2 = a.

    When a is a square in K, s is taken in K and the entries are field
    elements; otherwise they live in K(sqrt a).
    """
    algebra = algebra or u.algebra
    if u.algebra != algebra:
        raise MixedAlgebraError("element does not belong to the given algebra")
    K = algebra.field
    if K is None:
        raise ValueError("matrix embedding requires an exact base field")
    x0, x1, x2, x3 = u.coords
    b = algebra.b
    s = K.sqrt(algebra.a)
    if s is not None:
        return ((x0 + x1 * s, b * (x2 + x3 * s)), (x2 - x3 * s, x0 - x1 * s))
    L = SplittingRing(K, algebra.a)
    return ((L(x0, x1), L(b * x2, b * x3)), (L(x2, -x3), L(x0, -x1)))


def mat_mul(A, B):
    return tuple(
        tuple(A[r][0] * B[0][c] + A[r][1] * B[1][c] for c in range(2)) for r in range(2)
    )


def mat_det(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_trace(A):
    return A[0][0] + A[1][1]


# -- places and local symbols ------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A real embedding (by index, roots ascending) or a finite prime."""

    kind: str
    index: int = 0
    prime: PrimeIdeal | None = None
    over_q: bool = False

    @property
    def is_real(self):
        return self.kind == "real"

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def label(self):
        if self.is_real:
            return "inf" if self.over_q else f"real{self.index}"
        return self.prime.label

    @property
    def residue_characteristic(self):
        return self.prime.p if self.is_finite else None

    def sort_key(self):
        if self.is_real:
            return (1, self.index, "")
        return (0, self.prime.p, self.prime.label)

    def __repr__(self):
        return f"Place({self.label})"


def real_place(K: NumberField, index: int = 0) -> Place:
    if not 0 <= index < K.signature[0]:
        raise ValueError(f"field has no real embedding with index {index}")
    return Place("real", index=index, over_q=(K.degree == 1))


def finite_place(P: PrimeIdeal) -> Place:
    return Place("finite", prime=P, over_q=(P.field.degree == 1))


def rational_place(v) -> Place:
    """Place of Q from a prime number or from 'inf'."""
    if v in ("inf", "oo", "∞", math.inf) or (isinstance(v, float) and math.isinf(v)):
        return real_place(QQ)
    return finite_place(QQ.primes_above(int(v))[0])


@dataclass(frozen=True)
class RamificationSet:
    places: tuple

    def __post_init__(self):
        if len(self.places) % 2:
            raise AssertionError("ramification sets have even cardinality")

    def __len__(self):
        return len(self.places)

    def __iter__(self):
        return iter(self.places)

    def __bool__(self):
        return bool(self.places)

    def __contains__(self, item):
        return item in self.places

    @property
    def finite(self):
        return [v for v in self.places if v.is_finite]

    @property
    def infinite(self):
        return [v for v in self.places if v.is_real]

    def labels(self):
        return [v.label for v in self.places]

    def as_dict(self):
        return {
            "finite": [v.label for v in self.finite],
            "infinite": [v.label for v in self.infinite],
        }


def _split_rational(x: Fraction, p: int):
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, num * den  # unit part times a square


def hilbert_symbol_q(a, b, p) -> int:
    """Hilbert symbol (a, b)_p over Q; p a prime or 'inf'."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero entries")
    if p in ("inf", math.inf):
        return -1 if (a < 0 and b < 0) else 1
    alpha, u = _split_rational(a, p)
    beta, v = _split_rational(b, p)
    if p == 2:
        def eps(t):
            return ((t - 1) // 2) % 2

        def omega(t):
            return ((t * t - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta % 2 and p % 4 == 3) else 1

    def leg(t):
        return 1 if pow(t % p, (p - 1) // 2, p) == 1 else -1

    if beta % 2:
        s *= leg(u)
    if alpha % 2:
        s *= leg(v)
    return s


def _integral_square_class(x: FieldElement) -> FieldElement:
    # multiply by the square of the coordinate denominator
    m = x.denominator()
    return x * (m * m)


def tame_symbol(a: FieldElement, b: FieldElement, P: PrimeIdeal) -> int:
    """Hilbert symbol at a prime of odd residue characteristic."""
    if P.p == 2:
        raise UnsupportedPlaceError(f"place {P.label} has residue characteristic 2", [P.label])
    a, b = _integral_square_class(a), _integral_square_class(b)
    alpha, ua = P.split_valuation(a)
    beta, ub = P.split_valuation(b)
    s = 1
    if alpha * beta % 2:
        s = P.quadratic_character(P.field(-1))
    if beta % 2:
        s *= P.quadratic_character(ua)
    if alpha % 2:
        s *= P.quadratic_character(ub)
    return s


def hilbert_symbol(algebra: QuaternionAlgebra, place: Place) -> int:
    """+1 if the algebra splits at the place, -1 if it is a division algebra there."""
    K = algebra.field
    if K is None:
        raise UnsupportedPlaceError("local symbols need an exact base field")
    a, b = algebra.a, algebra.b
    if place.is_real:
        sa = K.real_embedding_sign(a, place.index)
        sb = K.real_embedding_sign(b, place.index)
        return -1 if (sa < 0 and sb < 0) else 1
    P = place.prime
    if P.field != K:
        raise MixedAlgebraError("place belongs to a different field")
    if K.degree == 1:
        return hilbert_symbol_q(a.coeffs[0], b.coeffs[0], P.p)
    if P.p == 2:
        raise UnsupportedPlaceError(
            f"wild symbol at {P.label} is not implemented; decided only by parity", [P.label]
        )
    return tame_symbol(a, b, P)


def _candidate_primes(algebra):
    primes = {2}
    for x in (algebra.a, algebra.b):
        n = x.norm()
        for m in (n.numerator, n.denominator):
            primes.update(factorint(abs(m)).keys())
        primes.update(factorint(x.denominator()).keys())
    return sorted(primes)


def ramification_set(algebra: QuaternionAlgebra) -> RamificationSet:
    K = algebra.field
    if K is None:
        raise UnsupportedPlaceError("ramification needs an exact base field")
    if K.is_square(algebra.a) or K.is_square(algebra.b):
        return RamificationSet(())
    ramified = []
    undecided = []
    for idx in range(K.signature[0]):
        v = real_place(K, idx)
        if hilbert_symbol(algebra, v) == -1:
            ramified.append(v)
    for p in _candidate_primes(algebra):
        for P in K.primes_above(p):
            v = finite_place(P)
            try:
                s = hilbert_symbol(algebra, v)
            except UnsupportedPlaceError:
                undecided.append(v)
                continue
            if s == -1:
                ramified.append(v)
    if len(undecided) > 1:
        labels = [v.label for v in undecided]
        raise UnsupportedPlaceError(
            f"cannot decide the symbols at {', '.join(labels)} (two or more dyadic places)",
            labels,
        )
    if undecided and len(ramified) % 2:
        ramified.append(undecided[0])
    return RamificationSet(tuple(sorted(ramified, key=Place.sort_key)))


def discriminant_ideal(algebra: QuaternionAlgebra):
    """Finite ramified primes and the product of their norms."""
    finite = [v.prime for v in ramification_set(algebra).finite]
    return finite, math.prod(P.norm for P in finite)


def is_division(algebra: QuaternionAlgebra) -> bool:
    return bool(ramification_set(algebra))


DEFAULT_SEARCH_BOUND = 60


def _normalize_rational_places(S):
    primes = set()
    infinite = False
    for v in S:
        if isinstance(v, Place):
            if v.is_real:
                infinite = True
            else:
                primes.add(v.prime.p)
        elif v in ("inf", "oo", "∞") or (isinstance(v, float) and math.isinf(v)):
            infinite = True
        else:
            primes.add(int(v))
    return primes, infinite


def realize_ramification_set(S, search_bound: int = DEFAULT_SEARCH_BOUND):
    """Integers (a, b) with S((a, b)/Q) = S, by bounded search over |a|, |b|."""
    primes, infinite = _normalize_rational_places(S)
    if (len(primes) + infinite) % 2:
        raise ValueError("a ramification set has even cardinality")
    if not primes and not infinite:
        return (1, 1)
    target = frozenset(primes)
    odd = {p for p in primes if p != 2}
    values = [n for m in range(1, search_bound + 1) for n in (-m, m) if is_squarefree(n)]
    by_size = sorted(
        ((a, b) for a in values for b in values if abs(a) <= abs(b)),
        key=lambda t: (max(abs(t[0]), abs(t[1])), abs(t[0]) + abs(t[1]), t[0] > 0, t[1] > 0),
    )
    for a, b in by_size:
        if infinite != (a < 0 and b < 0):
            continue
        if any((a * b) % p for p in odd):
            continue
        ram = {
            p for p in set(factorint(abs(2 * a * b))) if hilbert_symbol_q(a, b, p) == -1
        }
        if ram == target:
            return (a, b)
    raise SearchExhaustedError(
        f"no (a, b) with |a|, |b| <= {search_bound} realizes {sorted(target)}"
        + (" + inf" if infinite else "")
    )


HAMILTONIANS = QuaternionAlgebra(-1.0, -1.0, field=None)
