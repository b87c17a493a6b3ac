# cython: language_level=3
"""Compiled multipole/angle kernel.

Node-by-node version of :mod:`cylrad._kernels_py` with the same
recurrences and the same return values.
"""
import numpy as np

from libc.math cimport sqrt
from scipy.special.cython_special cimport j0, j1, y0, y1, jve

cdef double AMOS_GAP = 100.0
cdef double PI = 3.141592653589793


cdef inline double abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline int miller_start(double order_max) nogil:
    if order_max < 1.0:
        order_max = 1.0
    return <int>(order_max + 15.0 + sqrt(160.0 * order_max))


cdef void real_ratios(double x, int n_top, double[::1] out) noexcept nogil:
    cdef double r = 0.0
    cdef double inv_x = 1.0 / x
    cdef int n
    cdef int n_start = miller_start(n_top)
    for n in range(n_start, n_top, -1):
        r = 1.0 / (2.0 * n * inv_x - r)
    for n in range(n_top, 0, -1):
        r = 1.0 / (2.0 * n * inv_x - r)
        out[n] = r


cdef void complex_ratios(double complex z, int n_top, double complex[::1] out) noexcept:
    cdef double complex r = 0.0
    cdef double complex inv_z = 1.0 / z
    cdef double az = sqrt(abs2(z))
    cdef int n, n_start
    if az > n_top + AMOS_GAP:
        r = jve(<double>n_top, z) / jve(<double>(n_top - 1), z)
        out[n_top] = r
        for n in range(n_top - 1, 0, -1):
            r = 1.0 / (2.0 * n * inv_z - r)
            out[n] = r
        return
    n_start = miller_start(n_top if n_top > az else az)
    for n in range(n_start, n_top, -1):
        r = 1.0 / (2.0 * n * inv_z - r)
    for n in range(n_top, 0, -1):
        r = 1.0 / (2.0 * n * inv_z - r)
        out[n] = r


cdef inline double s_loss(double complex t) nogil:
    # |1 + 2t|^2 - 1 with a two-sum on 1 + 2 Re t
    cdef double a2 = 2.0 * t.real
    cdef double hi = 1.0 + a2
    cdef double bb = hi - 1.0
    cdef double lo = (1.0 - (hi - bb)) + (a2 - bb)
    return (hi - 1.0) * (hi + 1.0) + 2.0 * hi * lo + lo * lo + 4.0 * t.imag * t.imag


def mode_orders(eps_r, eps_z, mu, double kR, cos_t, sin_t, wts, int n_top):
    """See :func:`cylrad._kernels_py.mode_orders`."""
    cdef double complex er = complex(eps_r)
    cdef double complex ez = complex(eps_z)
    cdef double complex m_u = complex(mu)
    cdef const double[::1] ct = np.ascontiguousarray(cos_t, dtype=float)
    cdef const double[::1] st = np.ascontiguousarray(sin_t, dtype=float)
    cdef const double[::1] wt = np.ascontiguousarray(wts, dtype=float)
    cdef int nodes = ct.shape[0]
    cdef int N = n_top

    zm_arr = kR * np.sqrt(er * m_u - np.asarray(st) ** 2 + 0j)
    flip = (zm_arr.imag < 0) | ((zm_arr.imag == 0) & (zm_arr.real < 0))
    zm_arr = np.where(flip, -zm_arr, zm_arr)
    zn_arr = np.sqrt(ez / er + 0j) * zm_arr
    cdef double complex[::1] zms = np.ascontiguousarray(zm_arr)
    cdef double complex[::1] zns = np.ascontiguousarray(zn_arr)
    cdef double complex root = complex(np.sqrt(ez * m_u + 0j))
    cdef bint same = (ez == er)

    c_n_arr = np.zeros(N + 1)
    c_m_arr = np.zeros(N + 1)
    s_n_arr = np.zeros(N + 1)
    s_m_arr = np.zeros(N + 1)
    cdef double[::1] c_n = c_n_arr
    cdef double[::1] c_m = c_m_arr
    cdef double[::1] s_n = s_n_arr
    cdef double[::1] s_m = s_m_arr
    node_n_arr = np.zeros(nodes)
    node_m_arr = np.zeros(nodes)
    cdef double[::1] node_n = node_n_arr
    cdef double[::1] node_m = node_m_arr
    cdef double[::1] r_x = np.empty(N + 1)
    cdef double complex[::1] rho_m = np.empty(N + 1, dtype=complex)
    cdef double complex[::1] rho_n = np.empty(N + 1, dtype=complex)

    cdef int i, n
    cdef double x, inv_x, w, mult, jz, worst = 0.0
    cdef double complex z_m, z_n, h0, h1, s, inv_h, u, u_prev, d_m, d_n
    cdef double complex K, d1, d2, k2, t_mm, t_nn, t_x, ikt
    cdef double ax2, a_n, a_m, b_n, b_m
    cdef double complex two_i_pi = 2j / PI
    cdef double complex inv_ez = 1.0 / ez
    cdef double complex inv_mu = 1.0 / m_u
    cdef double complex inv_zm, inv_zn, inv_den, pref
    cdef double complex erm = er * m_u
    # (kR)^2 (1 - eps_r mu) = x^2 - (q_M R)^2
    cdef double complex kdiff = kR * kR * (1.0 - erm)
    cdef double complex kap, cp, a_h, ej4, A, B, al, be
    cdef double s2

    for i in range(nodes):
        x = kR * ct[i]
        inv_x = 1.0 / x
        z_m = zms[i]
        z_n = zns[i]
        w = wt[i]
        ikt = st[i] / root
        inv_zm = 1.0 / z_m
        inv_zn = 1.0 / z_n
        pref = two_i_pi / root
        s2 = st[i] * st[i]
        # x^2 K / n and the cos^2-proportional remainder of the cancellation
        kap = ikt * kdiff * inv_zm * inv_zm
        cp = ct[i] * ct[i] * (erm * erm - s2) / ((erm - s2) * (erm - s2)) * inv_ez * inv_mu
        u_prev = 0.0
        real_ratios(x, N, r_x)
        complex_ratios(z_m, N, rho_m)
        if not same:
            complex_ratios(z_n, N, rho_n)
        jz = j0(x)
        h0 = jz + 1j * y0(x)
        h1 = j1(x) + 1j * y1(x)
        s = h0 / h1
        inv_h = 1.0 / h0
        u = jz * inv_h
        for n in range(N + 1):
            if n == 0:
                d_m = -rho_m[1] * inv_zm
                if same:
                    d_n = d_m
                else:
                    d_n = -rho_n[1] * inv_zn
                mult = 1.0
            else:
                if n > 1:
                    s = 1.0 / (2.0 * (n - 1) * inv_x - s)
                u_prev = u
                inv_h = inv_h * s
                u = u_prev * r_x[n] * s
                d_m = (1.0 / rho_m[n] - n * inv_zm) * inv_zm
                if same:
                    d_n = d_m
                else:
                    d_n = (1.0 / rho_n[n] - n * inv_zn) * inv_zn
                mult = 2.0
            # scaled by x^2; the leading n^2/(eps_z mu) parts of
            # Delta1 Delta2 and K^2 cancel analytically into cp
            if n == 0:
                a_h = -x / s
                ej4 = -u * r_x[1] * x
            else:
                a_h = x * s
                ej4 = x * u_prev * s - n * u
            A = x * x * d_n
            B = x * x * d_m
            al = A - a_h * inv_ez
            be = B - a_h * inv_mu
            d1 = n * inv_ez + al
            d2 = n * inv_mu + be
            K = n * kap
            k2 = K * K
            inv_den = 1.0 / (n * n * cp + n * (al * inv_mu + be * inv_ez) + al * be)
            t_mm = -(d1 * (B * u - ej4 * inv_mu) - k2 * u) * inv_den
            t_nn = -(d2 * (A * u - ej4 * inv_ez) - k2 * u) * inv_den
            t_x = pref * K * inv_h * inv_h * inv_den
            ax2 = abs2(t_x)
            a_n = -(t_nn.real + abs2(t_nn) + ax2)
            a_m = -(t_mm.real + abs2(t_mm) + ax2)
            b_n = -0.25 * (s_loss(t_nn) + 4.0 * ax2)
            b_m = -0.25 * (s_loss(t_mm) + 4.0 * ax2)
            c_n[n] += mult * w * a_n
            c_m[n] += mult * w * a_m
            s_n[n] += mult * w * b_n
            s_m[n] += mult * w * b_m
            node_n[i] += mult * a_n
            node_m[i] += mult * a_m
            if a_n < worst:
                worst = a_n
            if a_m < worst:
                worst = a_m
    return c_n_arr, c_m_arr, s_n_arr, s_m_arr, worst, node_n_arr, node_m_arr
