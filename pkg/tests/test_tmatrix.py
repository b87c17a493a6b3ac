import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sp

from cylrad.errors import DomainError
from cylrad.selfcheck import random_lossy_tuples
from cylrad.tmatrix import (
    ModeIndex,
    boundary_matrix,
    sqrt_upper,
    t_block_isotropic,
    t_block_oracle,
    t_block_uniaxial,
    t_conductor_limit,
    t_smallR,
    wave_vectors,
)

OMEGA = 1.0e15
K = OMEGA / 299792458.0


def _rel(a, b):
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    return np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300))


def _bh(n, m, x):
    # normal-incidence cylinder coefficients, independent textbook form
    j, jp = sp.jv(n, m * x), sp.jvp(n, m * x)
    a, ap = sp.jv(n, x), sp.jvp(n, x)
    h, hp = sp.hankel1(n, x), sp.h1vp(n, x)
    b_n = (j * ap - m * jp * a) / (j * hp - m * jp * h)
    a_n = (m * j * ap - jp * a) / (m * j * hp - jp * h)
    return a_n, b_n


@pytest.mark.parametrize("eps", [4.0 + 0.2j, -30 + 5j, 12 + 40j])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_normal_incidence_matches_textbook(eps, n):
    x = 1.7
    R = x / K
    blk = t_block_uniaxial(eps, eps, 1.0, R, ModeIndex(n, 0.0, OMEGA))
    a_n, b_n = _bh(n, np.sqrt(eps), x)
    assert np.allclose(blk.t_nn, -b_n, rtol=1e-10)
    assert np.allclose(blk.t_mm, -a_n, rtol=1e-10)
    assert abs(blk.t_mn) < 1e-14


def test_oracle_equivalence_sample():
    for er, ez, R, mode in random_lossy_tuples(100, seed=99):
        a = t_block_uniaxial(er, ez, 1.0, R, mode)
        b = t_block_oracle(er, ez, 1.0, R, mode)
        assert _rel(a.elements(), b.elements()) < 1e-8


def test_isotropic_reduction_sample():
    for er, _, R, mode in random_lossy_tuples(100, seed=3, uniaxial=False):
        a = t_block_uniaxial(er, er, 1.0, R, mode)
        b = t_block_isotropic(er, 1.0, R, mode)
        assert _rel(a.elements(), b.elements()) < 1e-10


def test_order_symmetry():
    R = 2.0 / K
    p = t_block_uniaxial(-5 + 2j, 3 + 1j, 1.0, R, ModeIndex(3, 0.4 * K, OMEGA))
    m = t_block_uniaxial(-5 + 2j, 3 + 1j, 1.0, R, ModeIndex(-3, 0.4 * K, OMEGA))
    assert np.allclose([p.t_mm, p.t_nn], [m.t_mm, m.t_nn], rtol=1e-13)
    assert np.allclose(p.t_mn, -m.t_mn, rtol=1e-13)
    z = t_block_uniaxial(-5 + 2j, 3 + 1j, 1.0, R, ModeIndex(3, -0.4 * K, OMEGA))
    assert np.allclose(z.t_mn, -p.t_mn, rtol=1e-13)


@settings(max_examples=150, deadline=None)
@given(
    er_re=st.floats(-50, 50), er_im=st.floats(1e-3, 50),
    ez_re=st.floats(-50, 50), ez_im=st.floats(1e-3, 50),
    kR=st.floats(0.05, 20), kt=st.floats(-0.95, 0.95), n=st.integers(-6, 6),
)
def test_passivity_property(er_re, er_im, ez_re, ez_im, kR, kt, n):
    blk = t_block_uniaxial(complex(er_re, er_im), complex(ez_re, ez_im), 1.0, kR / K,
                           ModeIndex(n, kt * K, OMEGA))
    assert blk.absorption("M") <= 1e-12
    assert blk.absorption("N") <= 1e-12
    s = blk.s_matrix()
    # S is subunitary: I - S^H S is positive semidefinite
    ev = np.linalg.eigvalsh(np.eye(2) - s.conj().T @ s)
    assert ev.min() > -1e-10


def test_lossless_is_unitary():
    blk = t_block_uniaxial(4.0, 2.5, 1.0, 1.3 / K, ModeIndex(2, 0.3 * K, OMEGA))
    s = blk.s_matrix()
    assert np.allclose(s.conj().T @ s, np.eye(2), atol=1e-12)


@pytest.mark.parametrize("n", [0, 1, -1])
def test_small_radius_expansion(n):
    eps = 6.0 + 1.5j
    R = 1e-3 / K
    mode = ModeIndex(n, 0.3 * K, OMEGA)
    full = t_block_isotropic(eps, 1.0, R, mode)
    small = t_smallR(eps, 1.0, mode, R)
    assert np.allclose(full.t_nn, small.t_nn, rtol=1e-3)
    if n != 0:
        assert np.allclose(full.t_mn, small.t_mn, rtol=1e-3)
        assert np.allclose(full.t_mm, small.t_mm, rtol=1e-3)


def test_small_radius_magnetic_term():
    # with mu != 1 the n = 0 M element is of order (kR)^2 too
    R = 1e-3 / K
    mode = ModeIndex(0, 0.2 * K, OMEGA)
    full = t_block_uniaxial(2.0 + 0.1j, 2.0 + 0.1j, 1.5 + 0.2j, R, mode)
    small = t_smallR(2.0 + 0.1j, 1.5 + 0.2j, mode, R)
    assert np.allclose(full.t_mm, small.t_mm, rtol=1e-3)


def test_conductor_limit_element():
    # skin depth << R << wavelength
    eps = -1e9 + 4e9j
    mode = ModeIndex(0, 0.5 * K, OMEGA)
    for kR in (1e-2, 1e-3):
        full = t_block_isotropic(eps, 1.0, kR / K, mode)
        assert np.allclose(full.t_nn, t_conductor_limit(eps, mode, kR / K), rtol=1e-3)


def test_wave_vectors_branch():
    wv = wave_vectors(-10 + 1j, 3 + 0.5j, 1.0, ModeIndex(1, 0.5 * K, OMEGA))
    assert wv.q_M.imag >= 0
    assert np.allclose(wv.q, K * math.sqrt(0.75))
    assert sqrt_upper(-4) == 2j


def test_boundary_matrix_shape():
    M = boundary_matrix(3 + 1j, 5 + 2j, 1.0, 1.0 / K, ModeIndex(1, 0.2 * K, OMEGA))
    assert np.asarray(M[0] if isinstance(M, tuple) else M).shape[-2:] == (4, 4)


@pytest.mark.parametrize("bad", [dict(R=0.0), dict(kt=1.0), dict(kt=-1.2)])
def test_domain_errors(bad):
    R = bad.get("R", 1.0 / K)
    kt = bad.get("kt", 0.1)
    with pytest.raises(DomainError):
        t_block_uniaxial(2 + 1j, 2 + 1j, 1.0, R, ModeIndex(0, kt * K, OMEGA))
