"""Pure numpy implementation of the multipole/angle kernel.

Vectorized over the angular nodes, looping over the multipole order.
The compiled module ``_kernels`` implements the same recurrences node by
node; both return identical quantities.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as sp

# Interior arguments larger than n_top + AMOS_GAP are seeded from AMOS at the
# top order instead of by Miller's algorithm from far above |z|.
AMOS_GAP = 100.0


def miller_start(order_max: float) -> int:
    """Start order for downward recurrence that is exact to double precision below order_max."""
    return int(order_max + 15 + math.sqrt(160.0 * max(order_max, 1.0)))


def _sqrt_upper(w):
    s = np.sqrt(w.astype(complex))
    flip = (s.imag < 0) | ((s.imag == 0) & (s.real < 0))
    return np.where(flip, -s, s)


def _downward_ratios(z, n_top, n_start, seed=None, seed_mask=None):
    """ratio[n] = J_n(z)/J_{n-1}(z) for n = 1..n_top (row 0 unused)."""
    out = np.empty((n_top + 1, z.size), dtype=complex)
    out[0] = np.nan
    r = np.zeros(z.size, dtype=complex)
    inv_z = 1.0 / z
    with np.errstate(all="ignore"):
        for n in range(n_start, n_top, -1):
            r = 1.0 / (2.0 * n * inv_z - r)
        for n in range(n_top, 0, -1):
            r = 1.0 / (2.0 * n * inv_z - r)
            if n == n_top and seed is not None:
                r = np.where(seed_mask, seed, r)
            out[n] = r
    return out


def _interior_ratios(z, n_top):
    az = np.abs(z)
    amos = az > n_top + AMOS_GAP
    low = az[~amos]
    top = max(float(n_top), float(low.max()) if low.size else 0.0)
    seed = None
    if np.any(amos):
        with np.errstate(all="ignore"):
            seed = sp.jve(n_top, z) / sp.jve(n_top - 1, z)
    return _downward_ratios(z, n_top, miller_start(top), seed, amos)


def _compensated_s_loss(t):
    """|1 + 2t|^2 - 1 evaluated with a two-sum so tiny T keeps full precision."""
    a2 = 2.0 * t.real
    hi = 1.0 + a2
    bb = hi - 1.0
    lo = (1.0 - (hi - bb)) + (a2 - bb)
    return (hi - 1.0) * (hi + 1.0) + 2.0 * hi * lo + lo * lo + 4.0 * t.imag * t.imag


def mode_orders(eps_r, eps_z, mu, kR, cos_t, sin_t, wts, n_top):
    """Angle-integrated absorption per multipole order.

    Parameters
    ----------
    eps_r, eps_z, mu : complex
    kR : float
        Vacuum size parameter omega R / c.
    cos_t, sin_t, wts : ndarray
        Angular nodes (k_z = k sin theta) and weights; the weights already
        include every Jacobian and symmetry factor.
    n_top : int
        Highest order evaluated (n >= 0; negative orders are folded in).

    Returns
    -------
    c_n, c_m, s_n, s_m : ndarray, shape (n_top + 1,)
        -(Re T^PP + |T^PP|^2 + |T^P'P|^2) summed over nodes, from the T
        form (c) and from the S-matrix form (s, divided by 4). Orders
        n > 0 carry a factor 2 for -n.
    worst : float
        Most negative single-node contribution seen (passivity probe).
    node_n, node_m : ndarray, shape (nodes,)
        Unweighted T-form totals over all orders at each node.
    """
    eps_r, eps_z, mu = complex(eps_r), complex(eps_z), complex(mu)
    cos_t = np.asarray(cos_t, dtype=float)
    sin_t = np.asarray(sin_t, dtype=float)
    wts = np.asarray(wts, dtype=float)
    x = kR * cos_t
    z_m = kR * _sqrt_upper(eps_r * mu - sin_t**2)
    z_n = np.sqrt(eps_z / eps_r + 0j) * z_m
    root = np.sqrt(eps_z * mu + 0j)
    N = int(n_top)

    r_x = _downward_ratios(x.astype(complex), N, miller_start(N)).real
    rho_m = _interior_ratios(z_m, N)
    rho_n = _interior_ratios(z_n, N) if eps_z != eps_r else rho_m

    j0 = sp.j0(x)
    h0 = j0 + 1j * sp.y0(x)
    h1 = sp.j1(x) + 1j * sp.y1(x)
    s = h0 / h1  # H_{n-1}/H_n at n = 1
    inv_h = 1.0 / h0
    u = j0 * inv_h  # J_n/H_n
    inv_x = 1.0 / x
    ikt = sin_t / root
    erm = eps_r * mu
    # x^2 K / n, using x^2 - (q_M R)^2 = (kR)^2 (1 - eps_r mu)
    kap = ikt * (kR * kR * (1.0 - erm)) / z_m**2
    # n^2 (1/(eps_z mu) - K^2 x^4/n^2) = n^2 cp, proportional to cos^2
    cp = cos_t**2 * (erm * erm - sin_t**2) / (erm - sin_t**2) ** 2 / (eps_z * mu)
    u_prev = u

    c_n = np.zeros(N + 1)
    c_m = np.zeros(N + 1)
    s_n = np.zeros(N + 1)
    s_m = np.zeros(N + 1)
    worst = 0.0
    node_n = np.zeros(x.size)
    node_m = np.zeros(x.size)
    with np.errstate(under="ignore"):
        for n in range(N + 1):
            if n == 0:
                d_m = -rho_m[1] / z_m
                d_n = -rho_n[1] / z_n
            else:
                if n > 1:
                    s = 1.0 / (2.0 * (n - 1) * inv_x - s)
                u_prev = u
                inv_h = inv_h * s
                u = u_prev * r_x[n] * s
                d_m = (1.0 / rho_m[n] - n / z_m) / z_m
                d_n = (1.0 / rho_n[n] - n / z_n) / z_n
            # everything below is scaled by x^2; the leading n^2/(eps_z mu)
            # parts of Delta1 Delta2 and K^2 cancel analytically into cp
            a_h = -x / s if n == 0 else x * s
            ej4 = -u * r_x[1] * x if n == 0 else x * u_prev * s - n * u
            A = x * x * d_n
            B = x * x * d_m
            al = A - a_h / eps_z
            be = B - a_h / mu
            d1 = n / eps_z + al
            d2 = n / mu + be
            K = n * kap
            k2 = K * K
            den = n * n * cp + n * (al / mu + be / eps_z) + al * be
            t_mm = -(d1 * (B * u - ej4 / mu) - k2 * u) / den
            t_nn = -(d2 * (A * u - ej4 / eps_z) - k2 * u) / den
            t_x = (2j / math.pi) / root * K * inv_h * inv_h / den
            ax2 = t_x.real**2 + t_x.imag**2
            a_n = -(t_nn.real + t_nn.real**2 + t_nn.imag**2 + ax2)
            a_m = -(t_mm.real + t_mm.real**2 + t_mm.imag**2 + ax2)
            b_n = -0.25 * (_compensated_s_loss(t_nn) + 4.0 * ax2)
            b_m = -0.25 * (_compensated_s_loss(t_mm) + 4.0 * ax2)
            mult = 1.0 if n == 0 else 2.0
            c_n[n] = mult * np.dot(wts, a_n)
            c_m[n] = mult * np.dot(wts, a_m)
            s_n[n] = mult * np.dot(wts, b_n)
            s_m[n] = mult * np.dot(wts, b_m)
            node_n += mult * a_n
            node_m += mult * a_m
            worst = min(worst, float(a_n.min()), float(a_m.min()))
    return c_n, c_m, s_n, s_m, worst, node_n, node_m
