"""Integer-order Bessel and Hankel functions of complex argument.

Values come from the AMOS routines wrapped by ``scipy.special``; this
module adds the parity handling, overflow guards, and the log-derivative
``J_n'(z)/J_n(z)`` that the T-matrix needs for strongly absorbing media,
where ``J_n`` itself leaves the floating-point range.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import DomainError, OverflowRiskError, PoleError

MAX_ORDER = 5000
_LOG_MAX = math.log(np.finfo(float).max)
# Above this modulus AMOS loses half its digits; switch to a continued fraction.
_AMOS_RATIO_LIMIT = 2.0e4
POLE_TOL = 1e-13


def _check_order(n):
    if int(n) != n:
        raise DomainError(f"order must be an integer, got {n!r}")
    n = int(n)
    if abs(n) > MAX_ORDER:
        raise DomainError(f"|n| = {abs(n)} exceeds supported maximum {MAX_ORDER}")
    return n


def _check_arg(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"argument must be finite, got {z!r}")
    return z


def bessel_j(n: int, z) -> complex:
    """Bessel function of the first kind J_n(z).

    Parameters
    ----------
    n : int
        Integer order, ``|n| <= 5000``.
    z : complex
        Finite argument.

    Returns
    -------
    complex

    Raises
    ------
    OverflowRiskError
        If ``|J_n(z)|`` would exceed the double range (large ``|Im z|``).
        Use :func:`bessel_j_scaled` or :func:`log_derivative_j` instead.
    """
    n = _check_order(n)
    z = _check_arg(z)
    scaled = complex(sp.jve(n, z))
    if scaled == 0:
        return complex(sp.jv(n, z))
    if math.log(abs(scaled)) + abs(z.imag) > _LOG_MAX:
        raise OverflowRiskError(
            f"|J_{n}({z})| overflows double precision; use a scaled or ratio form"
        )
    return complex(sp.jv(n, z))


def bessel_j_scaled(n: int, z) -> complex:
    """Exponentially scaled ``J_n(z) * exp(-|Im z|)``."""
    n = _check_order(n)
    return complex(sp.jve(n, _check_arg(z)))


def hankel1(n: int, z) -> complex:
    """Hankel function of the first kind H^(1)_n(z) = J_n(z) + i Y_n(z).

    Raises
    ------
    DomainError
        At ``z = 0`` where ``Y_n`` is singular.
    OverflowRiskError
        If the value is not representable (small ``|z|`` with large order,
        or large negative ``Im z``).
    """
    n = _check_order(n)
    z = _check_arg(z)
    if z == 0:
        raise DomainError("H^(1)_n is singular at z = 0")
    scaled = complex(sp.hankel1e(n, z))  # H * exp(-i z)
    if not cmath.isfinite(scaled) or (
        scaled != 0 and math.log(abs(scaled)) - z.imag > _LOG_MAX
    ):
        raise OverflowRiskError(f"|H^(1)_{n}({z})| overflows double precision")
    return complex(sp.hankel1(n, z))


def bessel_j_prime(n: int, z) -> complex:
    """Derivative J_n'(z) = (J_{n-1}(z) - J_{n+1}(z)) / 2."""
    return 0.5 * (bessel_j(n - 1, z) - bessel_j(n + 1, z))


def hankel1_prime(n: int, z) -> complex:
    """Derivative H^(1)'_n(z) = (H_{n-1}(z) - H_{n+1}(z)) / 2."""
    return 0.5 * (hankel1(n - 1, z) - hankel1(n + 1, z))


def _ratio_cf(m: int, z: complex, max_iter: int) -> complex:
    """J_m(z)/J_{m-1}(z) for m >= 1 by modified Lentz on the recurrence CF."""
    tiny = 1e-300
    f = tiny
    c = f
    d = 0.0
    for j in range(max_iter):
        b = 2.0 * (m + j) / z
        a = 1.0 if j == 0 else -1.0
        d = b + a * d
        if d == 0:
            d = tiny
        c = b + a / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return f
    raise ArithmeticError(f"continued fraction for J_{m}/J_{m-1} did not converge")


def log_derivative_j(n: int, z) -> complex:
    """Logarithmic derivative J_n'(z)/J_n(z), safe where J_n overflows.

    For ``|z| <= 2e4`` the ratio of exponentially scaled AMOS values is used
    (the common scale factor cancels). Beyond, the ratio J_1/J_0 or
    J_m/J_{m-1} comes from the continued fraction of the three-term
    recurrence. The value is even in ``n`` and obeys
    ``L(conj z) = conj L(z)``.

    Raises
    ------
    PoleError
        If ``z`` lies within 1e-13 of a zero of ``J_n`` (estimated by the
        Newton step ``|J_n/J_n'|``).
    """
    n = _check_order(n)
    z = _check_arg(z)
    m = abs(n)
    if z == 0:
        if m == 0:
            return 0j
        raise PoleError(f"J_{n} vanishes at z = 0")
    flip = z.imag < 0
    w = z.conjugate() if flip else z
    if abs(w) <= _AMOS_RATIO_LIMIT:
        a = complex(sp.jve(m - 1, w))
        b = complex(sp.jve(m, w))
        c = complex(sp.jve(m + 1, w))
        if b == 0:
            raise PoleError(f"J_{n}({z}) underflowed or is zero")
        val = 0.5 * (a - c) / b
    else:
        rho1 = _ratio_cf(max(m, 1), w, max_iter=int(10 * abs(w)) + 10000)
        if m == 0:
            val = -rho1
        else:
            if rho1 == 0:
                raise PoleError(f"J_{n - 1}/J_{n} ratio degenerate at {z}")
            val = 1.0 / rho1 - m / w
    if not cmath.isfinite(val) or abs(val) * POLE_TOL > 1.0:
        raise PoleError(f"z = {z} is within {POLE_TOL} of a zero of J_{n}")
    return val.conjugate() if flip else val


@dataclass(frozen=True)
class BesselEval:
    """J_n, J_n', H^(1)_n and H^(1)'_n at one (n, z), with consistency residuals."""

    order: int
    argument: complex
    value_j: complex
    value_jprime: complex
    value_h1: complex
    value_h1prime: complex
    wronskian_residual: float

    def recurrence_residual(self, j_minus: complex, j_plus: complex) -> float:
        """Relative residual of J_{n-1} + J_{n+1} = (2n/z) J_n given neighbours."""
        lhs = j_minus + j_plus
        rhs = 2.0 * self.order / self.argument * self.value_j
        scale = max(abs(lhs), abs(rhs), abs(j_minus), abs(j_plus))
        return abs(lhs - rhs) / scale if scale else 0.0


def wronskian_residual(j, jp, h, hp, z) -> float:
    """Relative deviation of J H' - J' H from 2i/(pi z)."""
    ref = 2j / (math.pi * z)
    return abs(j * hp - jp * h - ref) / abs(ref)


def bessel_pair(n: int, z) -> BesselEval:
    """Evaluate J_n, J_n', H^(1)_n, H^(1)'_n together and record the Wronskian residual."""
    n = _check_order(n)
    z = _check_arg(z)
    h = hankel1(n, z)
    hp = hankel1_prime(n, z)
    j = bessel_j(n, z)
    jp = bessel_j_prime(n, z)
    return BesselEval(n, z, j, jp, h, hp, wronskian_residual(j, jp, h, hp, z))
