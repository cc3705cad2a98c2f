"""Modified Bessel functions of the second kind, orders 0 and 1.

Two regimes, split at ``SWITCH = 8``:

* ``y <= 8``: the ascending series (log term times I_nu plus the harmonic
  sum).  The two parts cancel to roughly ``I_nu(y) / K_nu(y)``, about 3e6 at
  y = 8, so above y = 2 the series is summed in a private 40-digit mpmath
  context; below that binary64 with fsum is enough.
* ``y > 8``: the large-argument regime.  The Hankel expansion
  sqrt(pi/2y) e^-y (1 + (4nu^2-1)/8y + ...) diverges and bottoms out near
  1e-8 relative at y = 8, so the tail of the Tricomi U function it
  represents is evaluated with Steed's continued fraction, which converges
  to machine precision for y >= 2.  ``hankel_asymptotic`` keeps the plain
  truncated expansion for reference checks.

Both branches are accurate on [6, 10], which is used to cross-check the seam.
"""

import math

import mpmath

SWITCH = 8.0
FLOAT_SERIES_MAX = 2.0
EULER_GAMMA = 0.57721566490153286060651209008240243

_ctx = mpmath.MPContext()
_ctx.dps = 40


def _series_float(nu, y):
    q = y * y / 4
    log_term = math.log(y / 2)
    term, main, tail, k = 1.0, [], [], 0
    if nu == 0:
        harmonic = 0.0
        while term > 1e-18:
            main.append(term)
            tail.append(term * harmonic)
            k += 1
            harmonic += 1.0 / k
            term *= q / (k * k)
        return -(log_term + EULER_GAMMA) * math.fsum(main) + math.fsum(tail)
    psi = 1.0 - 2 * EULER_GAMMA
    while term > 1e-18:
        main.append(term)
        tail.append(term * psi)
        k += 1
        psi += 1.0 / k + 1.0 / (k + 1)
        term *= q / (k * (k + 1))
    return 1 / y + log_term * (y / 2) * math.fsum(main) - (y / 4) * math.fsum(tail)


def _series(nu, y):
    if y <= FLOAT_SERIES_MAX:
        return _series_float(nu, y)
    ctx = _ctx
    x = ctx.mpf(y)
    q = x * x / 4
    log_term = ctx.log(x / 2)
    if nu == 0:
        # K0 = -(log(x/2) + gamma) I0 + sum q^k/(k!)^2 H_k
        term = ctx.mpf(1)
        i0 = ctx.mpf(0)
        tail = ctx.mpf(0)
        harmonic = ctx.mpf(0)
        k = 0
        while True:
            i0 += term
            tail += term * harmonic
            k += 1
            harmonic += ctx.mpf(1) / k
            term = term * q / (k * k)
            if term < ctx.mpf(10) ** (-45) * i0:
                break
        return float(-(log_term + ctx.euler) * i0 + tail)
    # K1 = 1/x + log(x/2) I1 - (x/4) sum (psi(k+1) + psi(k+2)) q^k / (k!(k+1)!)
    term = ctx.mpf(1)
    i1 = ctx.mpf(0)
    tail = ctx.mpf(0)
    psi1 = -ctx.euler
    psi2 = 1 - ctx.euler
    k = 0
    while True:
        i1 += term
        tail += term * (psi1 + psi2)
        k += 1
        psi1 += ctx.mpf(1) / k
        psi2 += ctx.mpf(1) / (k + 1)
        term = term * q / (k * (k + 1))
        if term < ctx.mpf(10) ** (-45) * i1:
            break
    return float(1 / x + log_term * (x / 2) * i1 - (x / 4) * tail)


def _steed(y):
    """(K0(y), K1(y)) from Steed's continued fraction, y >= 2."""
    b = 2.0 * (1.0 + y)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 10000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    else:
        raise ArithmeticError("continued fraction for K did not converge")
    h *= a1
    k0 = math.sqrt(math.pi / (2.0 * y)) * math.exp(-y) / s
    k1 = k0 * (y + 0.5 - h) / y
    return k0, k1


def bessel_k_series(nu: int, y: float) -> float:
    if nu not in (0, 1):
        raise ValueError("only orders 0 and 1 are implemented")
    if y <= 0:
        raise ValueError("argument must be positive")
    return _series(nu, y)


def bessel_k_large(nu: int, y: float) -> float:
    if nu not in (0, 1):
        raise ValueError("only orders 0 and 1 are implemented")
    if y < 2:
        raise ValueError("large-argument branch needs y >= 2")
    return _steed(y)[nu]


def hankel_asymptotic(nu: int, y: float, terms: int | None = None) -> float:
    """Truncated Hankel expansion; stops at the smallest term when terms is None."""
    mu = 4 * nu * nu
    t = 1.0
    total = 1.0
    k = 0
    while terms is None or k < terms:
        k += 1
        nxt = t * (mu - (2 * k - 1) ** 2) / (k * 8.0 * y)
        if terms is None and abs(nxt) >= abs(t):
            break
        t = nxt
        total += t
    return math.sqrt(math.pi / (2 * y)) * math.exp(-y) * total


def bessel_k(nu: int, y: float) -> float:
    """K_nu(y) for nu in {0, 1} and y > 0."""
    if nu not in (0, 1):
        raise ValueError("only orders 0 and 1 are implemented")
    y = float(y)
    if not y > 0:
        raise ValueError("bessel_K needs y > 0")
    if y <= SWITCH:
        return _series(nu, y)
    return _steed(y)[nu]
