"""Certified values of zeta_K(2) and the covolume formulas built from it.

Main path: zeta_K(2) = zeta(2) * L with L = sum b_n / n^2 and b = mu * a the
Dirichlet coefficients of zeta_K(s)/zeta(s).

* zeta(2) is the partial sum to N plus the midpoint of the tail enclosure
  1/(N+1) < sum_{n>N} 1/n^2 < 1/N, error at most 1/(2N(N+1)).
* For quadratic K, b_n is the Kronecker character of the discriminant and
  Abel summation with |partial sums| <= |D|/2 bounds the L tail by |D|/N^2.
* Otherwise |b_n| <= d_k(n), k = degree - 1, and the tail is bounded with
  sum_{n<=x} d_k(n) <= x (1 + log x)^(k-1) (see ``divisor_tail_bound``).

``method="direct"`` sums a_n / n^2 with a_n <= d_deg(n) instead; it needs far
more terms and serves as an independent cross-check, as does the Euler
product in ``euler_product_zeta2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotArithmeticSetupError, NotSquarefreeError, PrecisionError
from .numfield import (
    NumberField,
    QuadraticField,
    RationalField,
    ideal_counts,
    is_squarefree,
    primes_up_to,
    quotient_coefficients,
)

ZETA2 = math.pi**2 / 6
DEFAULT_EPS = 1e-7
DEFAULT_EPS_HIGHER_DEGREE = 1e-4
DEFAULT_MAX_TERMS = 10**6
WEEKS_VOLUME = 0.9427073


@dataclass(frozen=True)
class ZetaResult:
    value: float
    error_bound: float
    terms_used: int
    method: str = "quotient"

    def as_dict(self):
        return {"value": self.value, "error_bound": self.error_bound, "terms_used": self.terms_used}


def divisor_tail_bound(k: int, N: int) -> float:
    """Upper bound for sum_{n>N} d_k(n)/n^2.

    From sum_{n<=x} d_k(n) <= x (1 + log x)^m, m = k - 1, partial summation
    gives 2/N * sum_{j=0}^{m} m!/(m-j)! (1 + log N)^(m-j).
    """
    if k <= 0:
        return 0.0
    if k == 1:
        return 1.0 / N
    m = k - 1
    L = 1.0 + math.log(N)
    return 2.0 / N * sum(math.factorial(m) / math.factorial(m - j) * L ** (m - j) for j in range(m + 1))


def _zeta2_partial(N: int) -> tuple[float, float]:
    n = np.arange(1, N + 1, dtype=np.float64)
    head = math.fsum(1.0 / (n * n))
    return head + 0.5 * (1.0 / (N + 1) + 1.0 / N), 0.5 / (N * (N + 1))


def _quotient_tail(K: NumberField, N: int) -> float:
    if K.degree == 1:
        return 0.0
    if isinstance(K, QuadraticField):
        return min(abs(K.discriminant) / N**2, 1.0 / N)
    return divisor_tail_bound(K.degree - 1, N)


def _quotient_bound(K: NumberField, N: int) -> float:
    # |Z L_N - zeta(2) L| <= |Z - zeta(2)| |L| + |Z| |L_N - L|, with |L| <= zeta(2)^(deg-1)
    err_z = 0.5 / (N * (N + 1))
    err_l = _quotient_tail(K, N)
    return err_z * ZETA2 ** (K.degree - 1) + (ZETA2 + err_z) * err_l


def _direct_bound(K: NumberField, N: int) -> float:
    if K.degree == 1:
        return 0.5 / (N * (N + 1))
    return divisor_tail_bound(K.degree, N)


def _smallest_n(bound, eps: float, max_terms: int) -> int:
    if bound(max_terms) > eps:
        achieved = bound(max_terms)
        raise PrecisionError(
            f"eps = {eps:g} needs more than {max_terms} terms; best bound is {achieved:.3e}",
            achieved_bound=achieved,
            terms=max_terms,
        )
    lo, hi = 1, max_terms
    while lo < hi:
        mid = (lo + hi) // 2
        if bound(mid) <= eps:
            hi = mid
        else:
            lo = mid + 1
    return lo


def default_eps(K: NumberField) -> float:
    return DEFAULT_EPS if K.degree <= 2 else DEFAULT_EPS_HIGHER_DEGREE


def dedekind_zeta2(
    K: NumberField,
    eps: float | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
    method: str = "quotient",
    terms: int | None = None,
) -> ZetaResult:
    """zeta_K(2) with a certified error bound <= eps.

    Passing ``terms`` fixes the truncation point instead of solving for eps.
    """
    if eps is None:
        eps = default_eps(K)
    if not eps > 0:
        raise ValueError("eps must be positive")
    if method == "quotient":
        bound = lambda N: _quotient_bound(K, N)
    elif method == "direct":
        bound = lambda N: _direct_bound(K, N)
    else:
        raise ValueError(f"unknown method {method!r}")
    N = int(terms) if terms is not None else _smallest_n(bound, eps, max_terms)
    n = np.arange(1, N + 1, dtype=np.float64)
    inv_sq = 1.0 / (n * n)
    if method == "quotient":
        Z, _ = _zeta2_partial(N)
        b = quotient_coefficients(K, N).astype(np.float64)
        value = Z * math.fsum(b * inv_sq)
    elif K.degree == 1:
        value, _ = _zeta2_partial(N)
    else:
        a = ideal_counts(K, N).counts.astype(np.float64)
        value = math.fsum(a * inv_sq)
    return ZetaResult(value, bound(N), N, method)


def _local_factor(K: NumberField, p: int) -> float:
    f = 1.0
    for _, res_deg in K.splitting_type(p):
        f /= 1.0 - float(p) ** (-2 * res_deg)
    return f


def euler_product_zeta2(K: NumberField, prime_bound: int = 10**4) -> ZetaResult:
    """Product of local factors over p <= prime_bound.

    The omitted primes contribute a factor in [1, exp(deg/P)], since
    -log(1 - x) <= x/(1 - x) and sum_{n>P} 1/(n^2 - 1) <= 1/P.
    """
    ps = primes_up_to(prime_bound)
    logs = [math.log(_local_factor(K, int(p))) for p in ps]
    partial = math.exp(math.fsum(logs))
    rel = math.expm1(K.degree / prime_bound)
    # report the midpoint of [partial, partial * (1 + rel)]
    return ZetaResult(partial * (1 + rel / 2), partial * rel / 2, len(ps), "euler")


# -- covolumes ---------------------------------------------------------------


@dataclass(frozen=True)
class VolumeResult:
    value: float
    error_bound: float
    field: str
    ramified_norms: tuple = ()
    real_places: int = 0
    zeta: ZetaResult | None = field(default=None, compare=False)

    def as_dict(self):
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "field": self.field,
            "ramified_norms": list(self.ramified_norms),
            "real_places": self.real_places,
            "terms_used": self.zeta.terms_used if self.zeta else None,
        }


def _covolume_formula(K: NumberField, norms, r: int, eps, max_terms) -> VolumeResult:
    factor = math.prod(N - 1 for N in norms) * abs(K.discriminant) ** 1.5 / (2 * math.pi) ** (2 * r + 2)
    zeta_eps = None if eps is None else eps / factor
    z = dedekind_zeta2(K, eps=zeta_eps, max_terms=max_terms)
    return VolumeResult(factor * z.value, factor * z.error_bound, K.spec(), tuple(norms), r, z)


def bianchi_volume(d: int, eps: float | None = None, max_terms: int = DEFAULT_MAX_TERMS) -> VolumeResult:
    """Covolume of SL2 over the integers of Q(sqrt d), d < 0 squarefree.

    eps is the absolute error target on the volume; by default the zeta value
    is computed to 1e-7.
    """
    d = int(d)
    if d >= 0 or not is_squarefree(d):
        raise NotSquarefreeError(f"d must be negative squarefree, got {d}")
    return _covolume_formula(QuadraticField(d), (), 0, eps, max_terms)


def check_kleinian_admissible(K: NumberField, algebra) -> None:
    """Raise NotArithmeticSetupError naming the first violated condition."""
    if algebra.field is not K and algebra.field != K:
        raise NotArithmeticSetupError("the algebra is defined over a different field")
    r1, r2 = K.signature
    if r2 != 1:
        raise NotArithmeticSetupError(
            f"the field must have exactly one complex place, it has {r2}"
        )
    from .quatalg import ramification_set

    S = ramification_set(algebra)
    if len(S.infinite) != r1:
        missing = r1 - len(S.infinite)
        raise NotArithmeticSetupError(
            f"the algebra must ramify at all {r1} real places; {missing} are split"
        )


def arithmetic_covolume(
    K: NumberField, algebra, eps: float | None = None, max_terms: int = DEFAULT_MAX_TERMS
) -> VolumeResult:
    """Covolume for the norm-one group of a maximal order.

    prod_{P finite ramified} (NP - 1) |D_K|^(3/2) / (2 pi)^(2r+2) zeta_K(2).
    """
    from .quatalg import ramification_set

    check_kleinian_admissible(K, algebra)
    S = ramification_set(algebra)
    norms = tuple(sorted(v.prime.norm for v in S.finite))
    return _covolume_formula(K, norms, K.signature[0], eps, max_terms)


@dataclass(frozen=True)
class CoveringIndex:
    index: int
    residue: float


def covering_index(volume: float, target: float = WEEKS_VOLUME, max_index: int = 12) -> CoveringIndex:
    """Nearest integer m to target/volume, with relative residue |target/volume - m|/m."""
    if volume <= 0:
        raise ValueError("volume must be positive")
    ratio = target / volume
    m = max(1, round(ratio))
    if m > max_index:
        raise ValueError(f"ratio {ratio:.4f} exceeds the index cap {max_index}")
    return CoveringIndex(m, abs(ratio - m) / m)
