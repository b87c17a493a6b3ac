"""Thermal emission of a half-space (plate), isotropic or uniaxial.

The uniaxial plate has its optic axis in the surface plane. It is the
large-radius limit of the uniaxial cylinder, with ``eps_z`` along the
optic axis and ``eps_r`` across it.

Geometry: vacuum fills z > 0, the optic axis is x, and the plane of
incidence makes the angle ``phi`` with the optic axis. Reflection
coefficients ``r_QP`` give the reflected Q amplitude for unit incident P
amplitude. The s unit vector is ``(-sin phi, cos phi, 0)`` and ``p = s x k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C, HBAR, KB_EV, bose, ev_to_rad_s, stefan_boltzmann_flux
from .errors import BranchDegeneracyError, ConvergenceError, DomainError, OutOfWindowError
from .materials import MaterialSpec
from .quadrature import adaptive_log_simpson, periodic_nodes

CONDITION_LIMIT = 1e13


@dataclass(frozen=True)
class FresnelPair:
    """Reflection matrix ``[[r_ss, r_sp], [r_ps, r_pp]]`` (rows: reflected)."""

    r_ss: complex
    r_pp: complex
    r_sp: complex
    r_ps: complex

    def emissivity(self, pol: str):
        """``1 - |r_QQ|^2 - |r_Q'Q|^2`` for incident polarization ``pol``."""
        if pol == "s":
            return 1.0 - np.abs(self.r_ss) ** 2 - np.abs(self.r_ps) ** 2
        if pol == "p":
            return 1.0 - np.abs(self.r_pp) ** 2 - np.abs(self.r_sp) ** 2
        raise ValueError("pol must be 's' or 'p'")


@dataclass(frozen=True)
class PlateResult:
    """Power per area (W/m^2) with its M/N split and ``i_plate = (S_N - S_M)/S``."""

    s_total: float
    s_m: float
    s_n: float
    i_plate: float
    normalized: float
    rel_error: float


def _sqrt_upper(w):
    s = np.sqrt(np.asarray(w, dtype=complex))
    return np.where((s.imag < 0) | ((s.imag == 0) & (s.real < 0)), -s, s)


def _kappa(omega_ev, k_perp):
    k = ev_to_rad_s(omega_ev) / C
    kap = np.asarray(k_perp, dtype=float) / k
    if np.any(kap < 0) or np.any(kap >= 1):
        raise DomainError("k_perp must lie in [0, omega/c)")
    return kap


def fresnel_isotropic(eps, mu, omega_ev, k_perp) -> FresnelPair:
    """Standard half-space coefficients; ``r_sp = r_ps = 0``."""
    kap = _kappa(omega_ev, k_perp)
    return _fresnel_isotropic_kappa(complex(eps), complex(mu), kap)


def _fresnel_isotropic_kappa(eps, mu, kap):
    b = np.sqrt(1.0 - kap**2)
    g = _sqrt_upper(eps * mu - kap**2)
    r_s = (mu * b - g) / (mu * b + g)
    r_p = (eps * b - g) / (eps * b + g)
    zero = np.zeros_like(r_s)
    return FresnelPair(r_s, r_p, zero, zero)


def fresnel_uniaxial(eps_r, eps_z, mu, omega_ev, k_perp, phi) -> FresnelPair:
    """Reflection of a uniaxial half-space with the optic axis in the surface.

    Matches tangential E and H with one ordinary and one extraordinary
    transmitted wave (both on the decaying branch). Broadcasts over
    ``k_perp`` and ``phi``.

    Raises
    ------
    BranchDegeneracyError
        The 4x4 matching system is numerically rank deficient.
    """
    kap = _kappa(omega_ev, k_perp)
    return _fresnel_uniaxial_kappa(complex(eps_r), complex(eps_z), complex(mu), kap, phi)


def _fresnel_uniaxial_kappa(eps_r, eps_z, mu, kap, phi):
    kap, phi = np.broadcast_arrays(np.asarray(kap, dtype=float), np.asarray(phi, dtype=float))
    shape = kap.shape
    kap = kap.ravel()
    phi = phi.ravel()
    cp, sp = np.cos(phi), np.sin(phi)
    beta = np.sqrt(1.0 - kap**2)
    zero = np.zeros_like(kap)
    axis = np.array([1.0, 0.0, 0.0])
    s = np.stack([-sp, cp, zero], -1)
    k_in = np.stack([kap * cp, kap * sp, -beta], -1)
    k_out = np.stack([kap * cp, kap * sp, beta], -1)
    g_o = _sqrt_upper(eps_r * mu - kap**2)
    g_e = _sqrt_upper(eps_z * mu - (eps_z / eps_r) * kap**2 * cp**2 - kap**2 * sp**2)
    k_o = np.stack([kap * cp, kap * sp, -g_o], -1)
    k_e = np.stack([kap * cp, kap * sp, -g_e], -1)
    e_o = np.cross(k_o, axis)
    h_o = np.cross(k_o, e_o) / mu
    e_e = mu * eps_r * axis[None, :] - (k_e @ axis)[:, None] * k_e
    h_e = np.cross(k_e, e_e) / mu
    p_out = np.cross(s, k_out)
    p_in = np.cross(s, k_in)
    # unknowns (r_s, r_p, t_o, t_e); rows E_x, E_y, H_x, H_y
    A = np.empty((kap.size, 4, 4), dtype=complex)
    A[:, 0:2, 0] = -s[:, :2]
    A[:, 0:2, 1] = -p_out[:, :2]
    A[:, 0:2, 2] = e_o[:, :2]
    A[:, 0:2, 3] = e_e[:, :2]
    A[:, 2:4, 0] = -np.cross(k_out, s)[:, :2]
    A[:, 2:4, 1] = -s[:, :2]
    A[:, 2:4, 2] = h_o[:, :2]
    A[:, 2:4, 3] = h_e[:, :2]
    # equilibrate columns so the condition number reflects true degeneracy
    A = A / np.linalg.norm(A, axis=1, keepdims=True)
    cond = np.linalg.cond(A)
    if np.any(~np.isfinite(cond)) or np.any(cond > CONDITION_LIMIT):
        raise BranchDegeneracyError(
            f"ordinary/extraordinary matching system is singular (cond = {np.max(cond):.3g})")
    col_scale = np.linalg.norm(np.concatenate([s[:, :2], np.cross(k_out, s)[:, :2]], -1), axis=1)
    rhs_s = np.concatenate([s[:, :2], np.cross(k_in, s)[:, :2]], -1)
    rhs_p = np.concatenate([p_in[:, :2], s[:, :2]], -1)
    sol = np.linalg.solve(A, np.stack([rhs_s, rhs_p], -1))
    # undo the equilibration of the two reflection columns
    p_scale = np.linalg.norm(np.concatenate([p_out[:, :2], s[:, :2]], -1), axis=1)
    r_ss = sol[:, 0, 0] / col_scale
    r_ps = sol[:, 1, 0] / p_scale
    r_sp = sol[:, 0, 1] / col_scale
    r_pp = sol[:, 1, 1] / p_scale
    return FresnelPair(*(v.reshape(shape) for v in (r_ss, r_pp, r_sp, r_ps)))


@dataclass(frozen=True)
class PlateTolerances:
    theta_nodes: int = 32
    phi_nodes: int = 64
    angle_rtol: float = 1e-8
    max_nodes: int = 1024
    omega_rtol: float = 1e-6
    x_lo: float = 0.02
    x_hi: float = 40.0
    base_points: int = 201
    max_rounds: int = 14


def _angular(eps_r, eps_z, mu, isotropic, n_theta, n_phi):
    v, w = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.25 * math.pi * (v + 1.0)
    w_t = 0.25 * math.pi * w * np.sin(theta) * np.cos(theta)
    kap = np.sin(theta)
    if isotropic:
        r = _fresnel_isotropic_kappa(eps_r, mu, kap)
        e_s = r.emissivity("s")
        e_p = r.emissivity("p")
        # int_0^{2 pi} cos^2 = int sin^2 = pi
        m = math.pi * np.sum(w_t * (e_s + e_p))
        return m, m
    # the integrand is even about phi = 0 and phi = pi/2: a quarter period suffices
    phi, w_p = periodic_nodes(n_phi // 4, 0.5 * math.pi)
    r = _fresnel_uniaxial_kappa(eps_r, eps_z, mu, kap[:, None], phi[None, :])
    e_s = r.emissivity("s")
    e_p = r.emissivity("p")
    c2 = np.cos(phi) ** 2
    s2 = np.sin(phi) ** 2
    W = 4.0 * w_t[:, None] * w_p[None, :]
    m = np.sum(W * (e_s * c2 + e_p * s2))
    n = np.sum(W * (e_s * s2 + e_p * c2))
    return float(m), float(n)


def plate_angular(eps_r, eps_z, mu=1.0, tol: PlateTolerances = PlateTolerances()):
    """``(a_M, a_N)``: emissivity-weighted integrals of ``sin cos d theta d phi``.

    Both equal ``pi`` for a black body. Node counts double until the
    relative change is below ``angle_rtol``.
    """
    eps_r, eps_z, mu = complex(eps_r), complex(eps_z), complex(mu)
    iso = eps_r == eps_z
    nt, nphi = tol.theta_nodes, tol.phi_nodes
    prev = np.array(_angular(eps_r, eps_z, mu, iso, nt, nphi))
    while nt <= tol.max_nodes:
        nt *= 2
        nphi = nphi if iso else 2 * nphi
        cur = np.array(_angular(eps_r, eps_z, mu, iso, nt, nphi))
        scale = abs(cur.sum())
        if scale == 0 or np.max(np.abs(cur - prev)) <= tol.angle_rtol * scale:
            return float(cur[0]), float(cur[1])
        prev = cur
    raise ConvergenceError("plate angular quadrature did not converge", estimate=prev)


def plate_emissivity(material: MaterialSpec, T: float, tol: PlateTolerances = PlateTolerances(),
                     allow_extrapolation: bool = False, band=None) -> PlateResult:
    """Power per area of a plate, split into the cylinder's M and N parts.

    ``S_M = hbar/(8 pi^3 c^2) int w^3 n(w) int sin cos d theta d phi
    [e_s cos^2 phi + e_p sin^2 phi]`` and ``S_N`` with ``cos^2`` and
    ``sin^2`` exchanged, so that ``S_M + S_N = S``. ``band`` (eV) overrides
    the default thermal band ``[x_lo, x_hi] k_B T``.
    """
    if not (T > 0):
        raise DomainError("temperature must be positive")
    kT = KB_EV * T
    lo, hi = band if band is not None else (tol.x_lo * kT, tol.x_hi * kT)
    w_lo, w_hi = material.window
    if not allow_extrapolation and (lo < w_lo or hi > w_hi):
        raise OutOfWindowError(
            f"material {material.name!r} is valid on [{w_lo:g}, {w_hi:g}] eV but the band "
            f"is [{lo:.4g}, {hi:.4g}] eV (enable extrapolation to proceed)")
    mu = complex(material.mu)

    def integrand(y):
        out = np.empty((y.size, 2))
        for i, w_ev in enumerate(np.exp(y)):
            er, ez = material.eps_pair(w_ev, allow_extrapolation)
            m, n = plate_angular(er, ez, mu, tol)
            w = ev_to_rad_s(w_ev)
            out[i] = np.array([m, n]) * w**4 * float(bose(w_ev, T))
        return out

    q = adaptive_log_simpson(integrand, math.log(lo), math.log(hi), tol.base_points,
                             tol.omega_rtol, tol.max_rounds)
    scale = HBAR / (8.0 * math.pi**3 * C**2)
    s_m, s_n = scale * float(q.value[0]), scale * float(q.value[1])
    s = s_m + s_n
    return PlateResult(s, s_m, s_n, (s_n - s_m) / s if s else 0.0,
                       s / stefan_boltzmann_flux(T), q.rel_error)
