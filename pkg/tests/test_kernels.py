import math

import mpmath as mp
import numpy as np
import pytest

from cylrad import kernels
from cylrad._kernels_py import miller_start
from cylrad.quadrature import angle_rule
from cylrad.tmatrix import ModeIndex, t_block_uniaxial

OMEGA = 1.0e15
K = OMEGA / 299792458.0

CASES = [
    (6.0 + 0.1j, 6.0 + 0.1j, 0.01, 6),
    (-72.0 + 12j, -72.0 + 12j, 0.5, 8),
    (-7600 + 2000j, -7600 + 2000j, 3.0, 14),
    (29 + 140j, -300 + 290j, 5.0, 20),
    (2.0 + 1e-3j, -5.0 + 0.5j, 12.0, 40),
]


def _scalar_orders(er, ez, kR, cos_t, sin_t, n_top, route=t_block_uniaxial):
    c_n = np.zeros(n_top + 1)
    c_m = np.zeros(n_top + 1)
    R = kR / K
    for c, s in zip(cos_t, sin_t):
        for n in range(n_top + 1):
            blk = route(er, ez, 1.0, R, ModeIndex(n, s * K, OMEGA))
            mult = 1 if n == 0 else 2
            c_n[n] -= mult * blk.absorption("N")
            c_m[n] -= mult * blk.absorption("M")
    return c_n, c_m


@pytest.mark.parametrize("er, ez, kR, n_top", CASES)
def test_python_kernel_matches_scalar_route(er, ez, kR, n_top):
    rule = angle_rule(8)
    ones = np.ones(rule.size)
    out = kernels.mode_orders(er, ez, 1.0, kR, rule.cos_t, rule.sin_t, ones, n_top, backend="python")
    ref_n, ref_m = _scalar_orders(er, ez, kR, rule.cos_t, rule.sin_t, n_top)
    scale = np.abs(ref_n).sum() + np.abs(ref_m).sum()
    assert np.max(np.abs(out[0] - ref_n)) < 1e-10 * scale
    assert np.max(np.abs(out[1] - ref_m)) < 1e-10 * scale


@pytest.mark.skipif(not kernels.compiled_available(), reason="compiled kernel not built")
@pytest.mark.parametrize("er, ez, kR, n_top", CASES)
def test_compiled_matches_python(er, ez, kR, n_top):
    rule = angle_rule(32)
    args = (er, ez, 1.0, kR, rule.cos_t, rule.sin_t, rule.weights, n_top)
    a = kernels.mode_orders(*args, backend="python")
    b = kernels.mode_orders(*args, backend="compiled")
    for x, y in zip(a[:4], b[:4]):
        assert np.allclose(x, y, rtol=1e-11, atol=1e-14 * np.abs(x).sum())
    assert np.allclose(a[5], b[5], rtol=1e-11, atol=1e-14 * np.abs(a[5]).sum())


def _mp_iso_node(eps, kR, cos_t, n):
    # isotropic product form in 50-digit arithmetic; returns -(absorption) for (N, M)
    with mp.workdps(50):
        c = mp.mpf(cos_t)
        kt = mp.sqrt(1 - c * c)
        eps = mp.mpc(eps.real, eps.imag)
        x = kR * c
        eta = kR * mp.sqrt(eps - kt**2)
        if mp.im(eta) < 0:
            eta = -eta
        a = mp.besselj(n, x)
        ap = (mp.besselj(n - 1, x) - mp.besselj(n + 1, x)) / 2
        y = mp.bessely(n, x)
        yp = (mp.bessely(n - 1, x) - mp.bessely(n + 1, x)) / 2
        h, hp = a + 1j * y, ap + 1j * yp
        b = mp.besselj(n, eta)
        bp = (mp.besselj(n - 1, eta) - mp.besselj(n + 1, eta)) / 2
        G = n * kt * (x * x - eta * eta) * b / (eta * x)
        e_h = eps * x * h * bp - eta * b * hp
        m_h = x * h * bp - eta * b * hp
        e_a = eps * x * a * bp - eta * b * ap
        m_a = x * a * bp - eta * b * ap
        D = e_h * m_h - G * G * h * h
        tmm = -(e_h * m_a - G * G * a * h) / D
        tnn = -(m_h * e_a - G * G * a * h) / D
        tx = 2j / mp.pi * n * kt * (x * x - eta * eta) * b * b / (x * x * D)
        return [float(-(mp.re(t) + abs(t) ** 2 + abs(tx) ** 2)) for t in (tnn, tmm)]


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_near_grazing_against_extended_precision(backend):
    if backend == "compiled" and not kernels.compiled_available():
        pytest.skip("compiled kernel not built")
    # cos(theta) from 1e-2 down to 1e-5, where structural cancellation is severe
    gap = np.array([1e-2, 1e-3, 1e-4, 3e-5, 1e-5])
    cos_t = gap
    sin_t = np.sqrt(1 - gap * gap)
    er = ez = -1.2e4 + 4e3j
    kR = 5.0
    n_top = 16
    out = kernels.mode_orders(er, ez, 1.0, kR, cos_t, sin_t, np.ones(5), n_top, backend=backend)
    for i, (c, s) in enumerate(zip(cos_t, sin_t)):
        ref_n = ref_m = 0.0
        for n in range(n_top + 1):
            v_n, v_m = _mp_iso_node(er, kR, c, n)
            ref_n += (1 if n == 0 else 2) * v_n
            ref_m += (1 if n == 0 else 2) * v_m
        assert abs(out[5][i] - ref_n) < 1e-10 * abs(ref_n)
        assert abs(out[6][i] - ref_m) < 1e-10 * abs(ref_m)


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_t_and_s_forms_agree(backend):
    if backend == "compiled" and not kernels.compiled_available():
        pytest.skip("compiled kernel not built")
    rule = angle_rule(32)
    for er, ez, kR, n_top in CASES:
        c_n, c_m, s_n, s_m, worst, *_ = kernels.mode_orders(
            er, ez, 1.0, kR, rule.cos_t, rule.sin_t, rule.weights, n_top, backend=backend)
        assert np.allclose(c_n.sum(), s_n.sum(), rtol=1e-10)
        assert np.allclose(c_m.sum(), s_m.sum(), rtol=1e-10)
        assert worst >= -1e-15


def test_backend_selection():
    assert kernels.BACKEND in ("compiled", "python")
    assert kernels.get_backend("python").mode_orders is not None
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_miller_start_grows():
    assert miller_start(10) > 10
    assert miller_start(1000) - 1000 > miller_start(10) - 10
    assert math.isfinite(miller_start(0))
