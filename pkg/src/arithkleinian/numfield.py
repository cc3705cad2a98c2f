"""Exact arithmetic in number fields whose ring of integers is Z[theta].

Two constructions are supported.  ``QuadraticField(d)`` uses the integral
basis {1, w} with w = (D + sqrt(D))/2, D the field discriminant, so Z[w] is
always the full ring of integers.  ``MonogenicField(coeffs)`` takes a monic
irreducible integer polynomial with squarefree discriminant, which forces
Z[theta] to be maximal.  In both cases the factorisation of the defining
polynomial modulo p describes the primes above p (Kummer-Dedekind), and
elements are stored as exact rational coordinates on the power basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce

import numpy as np
from sympy import Poly, Symbol, factorint
from sympy import discriminant as _sympy_discriminant
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from .errors import (
    MixedAlgebraError,
    NotSquarefreeError,
    ReducibleError,
    UnsupportedFieldError,
)

_X = Symbol("x")


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(k == 1 for k in factorint(abs(n)).values())


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D/p) for a rational prime p."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return np.nonzero(sieve)[0].astype(np.int64)


# -- polynomials over Q, coefficient lists with constant term first ---------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _prem(a, b):
    a = [Fraction(c) for c in _trim(a)]
    b = _trim(b)
    lb = Fraction(b[-1])
    while len(a) >= len(b):
        q = a[-1] / lb
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a = _trim(a)
    return a


def _deriv(a):
    return [i * c for i, c in enumerate(a)][1:]


def _sturm_sequence(f):
    seq = [[Fraction(c) for c in f], [Fraction(c) for c in _deriv(f)]]
    while True:
        r = _prem(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append([-c for c in r])


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sign(x):
    return (x > 0) - (x < 0)


def _variations_at(seq, x):
    return _variations([_sign(_peval(p, x)) for p in seq])


def _variations_at_infinity(seq, positive):
    out = []
    for p in seq:
        s = _sign(p[-1])
        if not positive and (len(p) - 1) % 2:
            s = -s
        out.append(s)
    return _variations(out)


def count_real_roots(f) -> int:
    """Number of distinct real roots of f, by Sturm's theorem (exact)."""
    if len(_trim(f)) <= 1:
        return 0
    seq = _sturm_sequence(_trim(f))
    return _variations_at_infinity(seq, False) - _variations_at_infinity(seq, True)


def isolate_real_roots(f):
    """Disjoint rational intervals (lo, hi], each holding one real root of f.

    f must be squarefree without rational roots (degree >= 2 irreducible).
    Intervals are returned in increasing order.
    """
    f = [Fraction(c) for c in _trim(f)]
    seq = _sturm_sequence(f)
    bound = 1 + max(abs(c / f[-1]) for c in f[:-1])
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _variations_at(seq, lo) - _variations_at(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


# -- polynomials over F_p, int lists with constant term first ---------------


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_trim([c % p for c in out])


def _fp_rem(a, f, p):
    a = [c % p for c in a]
    _fp_trim(a)
    n = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) > n:
        q = a[-1] * inv % p
        shift = len(a) - len(f)
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - q * c) % p
        _fp_trim(a)
    return a


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _fp_powmod(a, e, f, p):
    result = [1]
    base = _fp_rem(a, f, p)
    while e:
        if e & 1:
            result = _fp_rem(_fp_mul(result, base, p), f, p)
        e >>= 1
        if e:
            base = _fp_rem(_fp_mul(base, base, p), f, p)
    return result


def _fp_div(a, b, p):
    a = [c % p for c in a]
    _fp_trim(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
        _fp_trim(a)
    return q


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def distinct_degree_profile(f, p):
    """Degrees of the irreducible factors of a squarefree monic f mod p."""
    f = [c % p for c in f]
    degrees = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _fp_powmod(h, p, f, p)
        g = _fp_gcd(f, _fp_sub(h, [0, 1], p), p)
        k = len(g) - 1
        if k > 0:
            degrees.extend([d] * (k // d))
            f = _fp_div(f, g, p)
            h = _fp_rem(h, f, p)
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees)


def factor_mod_p(f, p):
    """Monic irreducible factors of f mod p as [(factor, multiplicity)].

    Factors are int lists with constant term first, sorted by (degree, coeffs).
    """
    _, facs = gf_factor([int(c) % p for c in reversed(f)], p, ZZ)
    out = [(tuple(int(c) for c in reversed(g)), int(k)) for g, k in facs]
    return sorted(out, key=lambda t: (len(t[0]), t[0][::-1]))


# -- elements ----------------------------------------------------------------


class FieldElement:
    """Element of a number field, exact rational coordinates on 1, theta, ..."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedAlgebraError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, (x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, (-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, (x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, (x * other for x in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in a number field")
        n = self.field.degree
        M = self.field.mult_matrix(self)
        e0 = [Fraction(1)] + [Fraction(0)] * (n - 1)
        return FieldElement(self.field, _solve(M, e0))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElement(self.field, (x / other for x in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"{self.field.element_str(self)}"

    def is_rational(self):
        return not any(self.coeffs[1:])

    def norm(self) -> Fraction:
        return _det(self.field.mult_matrix(self))

    def trace(self) -> Fraction:
        M = self.field.mult_matrix(self)
        return sum(M[i][i] for i in range(len(M)))

    def denominator(self) -> int:
        return reduce(math.lcm, (c.denominator for c in self.coeffs), 1)

    def to_complex(self, root: complex) -> complex:
        return complex(_peval([float(c) for c in self.coeffs], root))


def _solve(M, rhs):
    """Exact Gaussian elimination for a square nonsingular system."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def _det(M):
    n = len(M)
    A = [list(row) for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        pv = A[col][col]
        det *= pv
        for r in range(col + 1, n):
            if A[r][col] != 0:
                f = A[r][col] / pv
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return det


# -- prime ideals ------------------------------------------------------------


@dataclass(frozen=True)
class PrimeIdeal:
    """The prime (p, g(theta)) of a field with Z[theta] maximal."""

    field: "NumberField" = dc_field(repr=False, compare=True)
    p: int
    residue_degree: int
    ramification_index: int
    residue_poly: tuple
    label: str = dc_field(compare=False)

    @property
    def norm(self) -> int:
        return self.p**self.residue_degree

    @property
    def e(self):
        return self.ramification_index

    @property
    def f(self):
        return self.residue_degree

    @cached_property
    def _anti_uniformizer(self):
        # tau in O_K with v_P(tau) = e - 1 and v_Q(tau) >= e_Q for the other Q | p,
        # so tau/p has valuation -1 at P and is integral at every other prime over p.
        p = self.p
        tau = [1]
        for g, k in factor_mod_p(self.field.min_poly, p):
            if g == self.residue_poly:
                k -= 1
            for _ in range(k):
                tau = _fp_mul(tau, list(g), p)
        return self.field(tau or [0])

    def split_valuation(self, x: FieldElement):
        """(v, u) with x = u * (tau/p)^(-v) where u is an integral P-unit.

        x must be nonzero with integral coordinates.
        """
        if not x:
            raise ValueError("valuation of zero")
        p = self.p
        tau = self._anti_uniformizer
        v = 0
        while True:
            y = x * tau
            if all(c.numerator % p == 0 for c in y.coeffs):
                x = y / p
                v += 1
            else:
                return v, x

    def valuation(self, x) -> int:
        x = self.field(x)
        m = x.denominator()
        v, _ = self.split_valuation(x * m)
        vp = 0
        while m % self.p == 0:
            m //= self.p
            vp += 1
        return v - self.ramification_index * vp

    def residue(self, x: FieldElement):
        """Image of a p-integral element in F_p[t]/(g), as an int list."""
        p = self.p
        coeffs = []
        for c in x.coeffs:
            if c.denominator % p == 0:
                raise ValueError("element is not p-integral")
            coeffs.append(c.numerator * pow(c.denominator, -1, p) % p)
        return _fp_rem(coeffs, list(self.residue_poly), p)

    def quadratic_character(self, x: FieldElement) -> int:
        """Legendre symbol of a P-unit in the residue field of odd order."""
        q = self.norm
        r = _fp_powmod(self.residue(x), (q - 1) // 2, list(self.residue_poly), self.p)
        if r == [1]:
            return 1
        if r == [self.p - 1]:
            return -1
        raise ValueError("element is not a unit at this prime")

    def __repr__(self):
        return f"PrimeIdeal({self.label}, norm={self.norm}, e={self.e}, f={self.f})"


# -- fields ------------------------------------------------------------------


class NumberField:
    """Q(theta) for a monic integer polynomial with Z[theta] the maximal order."""

    def __init__(self, min_poly):
        self.min_poly = tuple(int(c) for c in min_poly)
        self.degree = len(self.min_poly) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(("NumberField", self.min_poly))

    def __call__(self, x) -> FieldElement:
        n = self.degree
        if isinstance(x, FieldElement):
            if x.field != self:
                raise MixedAlgebraError("element belongs to a different field")
            return x
        if isinstance(x, (int, Fraction)) or hasattr(x, "__index__"):
            return FieldElement(self, [Fraction(x)] + [Fraction(0)] * (n - 1))
        coeffs = [Fraction(c) for c in x]
        if len(coeffs) > n:
            coeffs = _prem(coeffs, self.min_poly) if len(_trim(coeffs)) > n else coeffs[:n]
        return FieldElement(self, coeffs + [Fraction(0)] * (n - len(coeffs)))

    @property
    def one(self):
        return self(1)

    @property
    def zero(self):
        return self(0)

    @property
    def gen(self):
        return self([0, 1])

    def _mul_coeffs(self, a, b):
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        f = self.min_poly
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j in range(n + 1):
                    prod[k - n + j] -= c * f[j]
        return prod[:n]

    def mult_matrix(self, x: FieldElement):
        """Matrix of multiplication by x; column j is x * theta^j."""
        n = self.degree
        cols = []
        cur = list(x.coeffs)
        basis_shift = [Fraction(0)] * n
        for j in range(n):
            cols.append(cur)
            if j < n - 1:
                basis_shift = [Fraction(0)] * n
                basis_shift[1] = Fraction(1)
                cur = self._mul_coeffs(cur, basis_shift)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    @cached_property
    def poly_disc(self) -> int:
        if self.degree == 1:
            return 1
        return int(_sympy_discriminant(Poly(list(reversed(self.min_poly)), _X)))

    @property
    def discriminant(self) -> int:
        return self.poly_disc

    @cached_property
    def signature(self):
        r = count_real_roots(self.min_poly) if self.degree > 1 else 1
        return (r, (self.degree - r) // 2)

    @property
    def is_totally_real(self):
        return self.signature[1] == 0

    @cached_property
    def _real_root_intervals(self):
        if self.degree == 1:
            root = Fraction(-self.min_poly[0])
            return [(root, root)]
        return isolate_real_roots(self.min_poly)

    def real_embedding_sign(self, x, index: int) -> int:
        """Exact sign of x under the index-th real embedding (roots ascending)."""
        x = self(x)
        lo, hi = self._real_root_intervals[index]
        a = _trim(x.coeffs)
        if len(a) <= 1:
            return _sign(a[0]) if a else 0
        if lo == hi:
            return _sign(_peval(a, lo))
        f = self.min_poly
        seq = _sturm_sequence(a)
        flo = _sign(_peval(f, lo))
        while _peval(a, lo) == 0 or _variations_at(seq, lo) != _variations_at(seq, hi):
            mid = (lo + hi) / 2
            if _sign(_peval(f, mid)) == flo:
                lo = mid
            else:
                hi = mid
        return _sign(_peval(a, hi))

    @cached_property
    def numeric_roots(self):
        """Real roots ascending, then one root of each conjugate pair (Im > 0)."""
        if self.degree == 1:
            return [complex(-self.min_poly[0])]
        roots = np.roots([float(c) for c in reversed(self.min_poly)])
        real = []
        for lo, hi in self._real_root_intervals:
            while hi - lo > Fraction(1, 10**18):
                mid = (lo + hi) / 2
                if _sign(_peval(self.min_poly, mid)) == _sign(_peval(self.min_poly, lo)):
                    lo = mid
                else:
                    hi = mid
            real.append(complex(float((lo + hi) / 2)))
        cplx = sorted((complex(z) for z in roots if z.imag > 1e-9), key=lambda z: (z.real, z.imag))
        return real + cplx

    def complex_embedding(self, x, index: int = 0) -> complex:
        r, _ = self.signature
        return self(x).to_complex(self.numeric_roots[r + index])

    def all_numeric_roots(self):
        r, _ = self.signature
        out = list(self.numeric_roots[:r])
        for z in self.numeric_roots[r:]:
            out.extend([z, z.conjugate()])
        return out

    def sqrt(self, x):
        """A square root of x in the field, or None when x is not a square."""
        x = self(x)
        if not x:
            return self.zero
        n = self.degree
        roots = self.all_numeric_roots()
        vals = [x.to_complex(z) for z in roots]
        V = np.array([[z**j for j in range(n)] for z in roots])
        import itertools

        for signs in itertools.product((1, -1), repeat=n):
            target = np.array([s * np.sqrt(complex(v)) for s, v in zip(signs, vals)])
            try:
                c = np.linalg.solve(V, target)
            except np.linalg.LinAlgError:
                continue
            if np.max(np.abs(c.imag)) > 1e-6:
                continue
            cand = self([Fraction(float(t)).limit_denominator(10**6) for t in c.real])
            if cand * cand == x:
                return cand
        return None

    def is_square(self, x) -> bool:
        return self.sqrt(x) is not None

    # -- primes --

    @lru_cache(maxsize=4096)
    def primes_above(self, p: int):
        facs = factor_mod_p(self.min_poly, p)
        out = []
        labels = self._prime_labels(p, facs)
        for (g, k), label in zip(facs, labels):
            out.append(PrimeIdeal(self, p, len(g) - 1, k, g, label))
        return tuple(out)

    def _prime_labels(self, p, facs):
        if len(facs) == 1:
            return [f"p{p}"]
        return [f"p{p}_{i}" for i in range(len(facs))]

    def splitting_type(self, p: int):
        """Sorted list of (e, f) over the primes above p."""
        if self.poly_disc % p:
            return [(1, f) for f in distinct_degree_profile(list(self.min_poly), p)]
        return sorted((P.e, P.f) for P in self.primes_above(p))

    def element_str(self, x):
        terms = []
        for i, c in enumerate(x.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "w" if i == 1 else f"w^{i}"
                terms.append(mon if c == 1 else f"-{mon}" if c == -1 else f"{c}*{mon}")
        return "+".join(terms).replace("+-", "-") if terms else "0"

    def spec(self):
        return "poly=" + ",".join(str(c) for c in self.min_poly)

    def __repr__(self):
        return f"NumberField({self.spec()})"


class RationalField(NumberField):
    """Q, presented as Q(theta) with theta = 0."""

    def __init__(self):
        super().__init__((0, 1))

    def _prime_labels(self, p, facs):
        return [str(p)]

    def splitting_type(self, p):
        return [(1, 1)]

    def spec(self):
        return "Q"

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()


class QuadraticField(NumberField):
    """Q(sqrt d) presented on the integral basis {1, w}, w = (D + sqrt D)/2."""

    def __init__(self, d: int):
        d = int(d)
        if d in (0, 1):
            raise NotSquarefreeError(f"d = {d} does not define a quadratic field")
        if not is_squarefree(d):
            raise NotSquarefreeError(f"d = {d} is not squarefree")
        self.d = d
        D = d if d % 4 == 1 else 4 * d
        self._disc = D
        # w^2 - D w + (D^2 - D)/4 = 0
        super().__init__(((D * D - D) // 4, -D, 1))

    @property
    def discriminant(self):
        return self._disc

    @cached_property
    def signature(self):
        return (0, 1) if self.d < 0 else (2, 0)

    @property
    def is_imaginary(self):
        return self.d < 0

    def sqrt_d(self):
        # sqrt(D) = 2w - D, and sqrt(d) = sqrt(D)/2 when D = 4d
        s = self([-self._disc, 2])
        return s if self._disc == self.d else s / 2

    def conjugate(self, x):
        u, v = self(x).coeffs
        return self([u + v * self._disc, -v])

    @cached_property
    def numeric_roots(self):
        D = self._disc
        if D < 0:
            return [complex(D / 2, math.sqrt(-D) / 2)]
        s = math.sqrt(D)
        return [complex((D - s) / 2), complex((D + s) / 2)]

    def omega(self) -> complex:
        """w under the embedding with sqrt(D) = i sqrt|D| (imaginary case)."""
        return self.numeric_roots[-1]

    def splitting_type(self, p: int):
        k = kronecker(self._disc, p)
        if k == 1:
            return [(1, 1), (1, 1)]
        if k == -1:
            return [(1, 2)]
        return [(2, 1)]

    def _prime_labels(self, p, facs):
        if len(facs) == 2:
            return [f"p{p}", f"p{p}bar"]
        return [f"p{p}"]

    def class_number(self) -> int:
        if self.d > 0:
            raise UnsupportedFieldError("class numbers of real quadratic fields are not supported")
        return len(reduced_forms(self._disc))

    def spec(self):
        return f"d={self.d}"

    def __repr__(self):
        return f"QuadraticField({self.d})"


class MonogenicField(NumberField):
    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 3:
            raise ReducibleError("defining polynomial must have degree >= 2")
        if coeffs[-1] != 1:
            raise ReducibleError("defining polynomial must be monic")
        if not Poly(list(reversed(coeffs)), _X).is_irreducible:
            raise ReducibleError(f"polynomial {coeffs} is reducible over Q")
        super().__init__(coeffs)
        if not is_squarefree(self.poly_disc):
            raise NotSquarefreeError(
                f"polynomial discriminant {self.poly_disc} is not squarefree (unsupported)"
            )

    def __repr__(self):
        return f"MonogenicField({list(self.min_poly)})"


def make_quadratic(d: int) -> QuadraticField:
    return QuadraticField(d)


def make_monogenic(coeffs) -> MonogenicField:
    return MonogenicField(coeffs)


def splitting_type(K: NumberField, p: int):
    return K.splitting_type(p)


# -- class numbers -----------------------------------------------------------


def reduced_forms(D: int):
    """Reduced primitive positive definite forms (a, b, c) of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def class_number(K: QuadraticField) -> int:
    if not isinstance(K, QuadraticField):
        raise UnsupportedFieldError("class numbers are implemented for imaginary quadratic fields")
    return K.class_number()


# -- ideal counts ------------------------------------------------------------


def _local_series(split, kmax, divide_by_rational=False):
    """Coefficients of prod_P 1/(1 - x^f_P), optionally times (1 - x), up to x^kmax."""
    c = [1] + [0] * kmax
    for _, f in split:
        for k in range(f, kmax + 1):
            c[k] += c[k - f]
    if divide_by_rational:
        c = [c[0]] + [c[k] - c[k - 1] for k in range(1, kmax + 1)]
    return c


def _multiplicative_sieve(K, N, divide_by_rational):
    out = np.ones(N + 1, dtype=np.int64)
    out[0] = 0
    for p in primes_up_to(N):
        p = int(p)
        kmax = 0
        pk = 1
        while pk * p <= N:
            pk *= p
            kmax += 1
        local = _local_series(K.splitting_type(p), kmax, divide_by_rational)
        if kmax == 1:
            if local[1] != 1:
                out[p::p] *= local[1]
            continue
        pk = 1
        for k in range(1, kmax + 1):
            pk *= p
            if local[k] == 1:
                continue
            idx = np.arange(pk, N + 1, pk)
            idx = idx[idx % (pk * p) != 0]
            out[idx] *= local[k]
    return out


def ideal_counts(K: NumberField, N: int) -> "IdealCountSequence":
    if N < 1:
        raise ValueError("bound must be positive")
    return IdealCountSequence(N, _multiplicative_sieve(K, N, False)[1:])


def quotient_coefficients(K: NumberField, N: int) -> np.ndarray:
    """Dirichlet coefficients b_1..b_N of zeta_K(s)/zeta(s), i.e. mu * a."""
    return _multiplicative_sieve(K, N, True)[1:]


@dataclass(frozen=True)
class IdealCountSequence:
    bound: int
    counts: np.ndarray = dc_field(repr=False)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.bound:
            raise IndexError(n)
        return int(self.counts[n - 1])

    def as_list(self):
        return [int(c) for c in self.counts]
