"""Physical constants (CODATA, via scipy.constants) and unit helpers.

Public frequencies are photon energies in eV; integrators work in rad/s.
"""
import math

import numpy as np
from scipy import constants as _sc

C = _sc.c
HBAR = _sc.hbar
KB = _sc.k
EPS0 = _sc.epsilon_0
EV = _sc.e

HBAR_EVS = HBAR / EV  # eV s
KB_EV = KB / EV  # eV / K
HBARC_EVM = HBAR_EVS * C  # eV m

SIGMA_SB = math.pi**2 * KB**4 / (60.0 * HBAR**3 * C**2)
EULER_GAMMA = 0.5772156649015329


def ev_to_rad_s(omega_ev):
    return omega_ev / HBAR_EVS


def rad_s_to_ev(omega):
    return omega * HBAR_EVS


def ev_to_wavenumber(omega_ev):
    """Vacuum wavenumber k = omega/c in 1/m for a photon energy in eV."""
    return omega_ev / HBARC_EVM


def ev_to_wavelength_um(omega_ev):
    return 2.0 * math.pi * HBARC_EVM / omega_ev * 1e6


def wavelength_um_to_ev(lam_um):
    return 2.0 * math.pi * HBARC_EVM / (lam_um * 1e-6)


def thermal_wavelength(T):
    """lambda_T = hbar c / (k_B T) in metres."""
    return HBAR * C / (KB * T)


def bose(omega_ev, T):
    """Bose-Einstein occupation 1/(exp(hbar omega / k_B T) - 1); zero at T = 0."""
    omega_ev = np.asarray(omega_ev, dtype=float)
    if T <= 0:
        return np.zeros_like(omega_ev)
    return 1.0 / np.expm1(omega_ev / (KB_EV * T))


def stefan_boltzmann_flux(T):
    """Black-body power per area sigma T^4 in W/m^2."""
    return SIGMA_SB * T**4
