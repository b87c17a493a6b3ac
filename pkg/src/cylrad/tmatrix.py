"""2x2 polarization-coupled T-matrix of an infinite uniaxial cylinder.

The optic axis coincides with the cylinder axis z. Inside, ordinary (M)
and extraordinary (N) waves have transverse wavenumbers

    q_M = sqrt(eps_r mu k^2 - k_z^2),   q_N = sqrt(eps_z / eps_r) q_M,

and outside q = sqrt(k^2 - k_z^2). Four routes to the same block live here:

* :func:`t_block_uniaxial` -- closed form written with Bessel
  log-derivatives, the production formula;
* :func:`t_block_oracle` -- direct solution of the 4x4 boundary-value system;
* :func:`t_block_isotropic` -- textbook isotropic cylinder in product form;
* :func:`t_smallR` and :func:`t_conductor_limit` -- asymptotic expansions.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .constants import C, EULER_GAMMA, ev_to_rad_s
from .errors import DenominatorDegeneracyError, DomainError, SingularMatrixError
from .specfun import bessel_j, bessel_j_prime, hankel1, log_derivative_j

DEGENERACY_TOL = 1e-14
CONDITION_LIMIT = 1e14


def sqrt_upper(w: complex) -> complex:
    """Square root on the branch Im >= 0 (Re >= 0 when Im = 0)."""
    s = cmath.sqrt(complex(w))
    if s.imag < 0 or (s.imag == 0 and s.real < 0):
        s = -s
    return s


@dataclass(frozen=True)
class ModeIndex:
    """Cylindrical partial wave: order ``n``, axial wavenumber ``k_z`` (1/m), ``omega`` (rad/s)."""

    n: int
    k_z: float
    omega: float

    @property
    def k(self) -> float:
        return self.omega / C

    @property
    def kz_tilde(self) -> float:
        return self.k_z / self.k

    @classmethod
    def from_angle(cls, n: int, theta: float, omega_ev: float) -> "ModeIndex":
        """Mode with k_z = (omega/c) sin(theta) at photon energy ``omega_ev``."""
        w = ev_to_rad_s(omega_ev)
        return cls(int(n), (w / C) * math.sin(theta), w)


@dataclass(frozen=True)
class WaveVectors:
    q: float
    q_M: complex
    q_N: complex


def wave_vectors(eps_r, eps_z, mu, mode: ModeIndex) -> WaveVectors:
    k = mode.k
    if not (mode.omega > 0):
        raise DomainError("omega must be positive")
    if abs(mode.k_z) >= k:
        raise DomainError("|k_z| must be below omega/c (propagating sector, q > 0)")
    q = math.sqrt(k * k - mode.k_z**2)
    q_m = sqrt_upper(complex(eps_r) * complex(mu) * k * k - mode.k_z**2)
    q_n = cmath.sqrt(complex(eps_z) / complex(eps_r)) * q_m
    return WaveVectors(q, q_m, q_n)


@dataclass(frozen=True)
class TMatrixBlock:
    """T-matrix elements at one (n, k_z, omega) and radius."""

    t_mm: complex
    t_nn: complex
    t_mn: complex
    t_nm: complex
    mode: ModeIndex
    radius: float

    def as_matrix(self) -> np.ndarray:
        """2x2 array in the (M, N) basis, rows = outgoing polarization."""
        return np.array([[self.t_mm, self.t_mn], [self.t_nm, self.t_nn]], dtype=complex)

    def s_matrix(self) -> np.ndarray:
        return np.eye(2) + 2.0 * self.as_matrix()

    def absorption(self, pol: str) -> float:
        """Re T^PP + |T^PP|^2 + |T^{P'P}|^2, non-positive for passive media."""
        if pol == "M":
            return self.t_mm.real + abs(self.t_mm) ** 2 + abs(self.t_nm) ** 2
        if pol == "N":
            return self.t_nn.real + abs(self.t_nn) ** 2 + abs(self.t_mn) ** 2
        raise ValueError("pol must be 'M' or 'N'")

    def elements(self):
        return (self.t_mm, self.t_nn, self.t_mn, self.t_nm)


def _check_radius(R):
    if not (R > 0):
        raise DomainError("radius must be positive")


def t_block_uniaxial(eps_r, eps_z, mu, R, mode: ModeIndex) -> TMatrixBlock:
    """Closed-form T-matrix block of a uniaxial cylinder.

    Interior Bessel functions enter only through
    ``D(z) = J_n'(z) / (z J_n(z))``, so conductor arguments with huge
    ``Im z`` never overflow. With ``D_h = H_n'(x)/(x H_n(x))``:

        Delta1 = D(q_N R) - D_h/eps_z,     Delta2 = D(q_M R) - D_h/mu,
        Delta3 = D(q_N R) - D(x)/eps_z,    Delta4 = D(q_M R) - D(x)/mu,
        K      = n k_z/(k sqrt(eps_z mu)) (1/(q_M R)^2 - 1/x^2),

        T^MM = -(J/H)(Delta1 Delta4 - K^2)/(Delta1 Delta2 - K^2),
        T^NN = -(J/H)(Delta2 Delta3 - K^2)/(Delta1 Delta2 - K^2),
        T^MN = T^NM = 2i K / (pi sqrt(eps_z mu) x^2 H^2 (Delta1 Delta2 - K^2)),

    where ``x = qR`` and J, H are evaluated at x. The products with
    ``D(x)`` are expanded so that no division by ``J_n(x)`` occurs, and the
    denominator is assembled with its ``cos^2`` factor explicit so grazing
    angles keep full relative precision.

    Raises
    ------
    DomainError
        Non-propagating ``k_z`` or a vanishing interior wavenumber.
    PoleError
        ``q_M R`` or ``q_N R`` at a zero of ``J_n``.
    DenominatorDegeneracyError
        ``Delta1 Delta2 - K^2`` cancels to roundoff.
    """
    _check_radius(R)
    n = int(mode.n)
    eps_r, eps_z, mu = complex(eps_r), complex(eps_z), complex(mu)
    wv = wave_vectors(eps_r, eps_z, mu, mode)
    x = wv.q * R
    z_m = wv.q_M * R
    z_n = wv.q_N * R
    if z_m == 0 or z_n == 0:
        raise DomainError("interior transverse wavenumber vanishes")
    kt = mode.kz_tilde

    # Work with x^2-scaled quantities. The n^2/(eps_z mu) leading parts of
    # Delta1 Delta2 and K^2 cancel exactly, leaving a cos^2(theta) term
    # that is formed directly instead of by subtraction.
    A = x * x * log_derivative_j(n, z_n) / z_n
    B = x * x * log_derivative_j(n, z_m) / z_m
    h = hankel1(n, x)
    u = bessel_j(n, x) / h
    ej4 = x * bessel_j_prime(n, x) / h
    a_h = x * hankel1(n - 1, x) / h  # x H_n'/H_n + n
    erm = eps_r * mu
    st2 = kt * kt
    ct2 = (wv.q / mode.k) ** 2
    root = cmath.sqrt(eps_z * mu)
    K = n * kt / root * (mode.k * R) ** 2 * (1.0 - erm) / z_m**2
    cp = ct2 * (erm * erm - st2) / (erm - st2) ** 2 / (eps_z * mu)
    al = A - a_h / eps_z
    be = B - a_h / mu
    d1 = n / eps_z + al
    d2 = n / mu + be
    k2 = K * K
    terms = (n * n * cp, n * (al / mu + be / eps_z), al * be)
    den = sum(terms)
    if den == 0 or abs(den) <= DEGENERACY_TOL * sum(abs(t) for t in terms):
        raise DenominatorDegeneracyError(
            f"Delta1*Delta2 - K^2 = {den} cancels (|Delta1 Delta2| = {abs(d1 * d2)})"
        )
    t_mm = -(d1 * (B * u - ej4 / mu) - k2 * u) / den
    t_nn = -(d2 * (A * u - ej4 / eps_z) - k2 * u) / den
    t_x = 2j / (math.pi * root) * K / (h * h) / den
    return TMatrixBlock(t_mm, t_nn, t_x, t_x, mode, R)


def _jve_prime(n, z):
    return 0.5 * (sp.jve(n - 1, z) - sp.jve(n + 1, z))


def boundary_matrix(eps_r, eps_z, mu, R, mode: ModeIndex):
    """4x4 matching matrix and the two right-hand sides.

    Unknowns are ``(A^{M.}, T^{M.}, A^{N.}, T^{N.})``; rows impose
    continuity of H_z, E_phi, E_z and H_phi. Interior columns use
    exponentially scaled Bessel functions, which rescales the A
    coefficients but leaves the T entries unchanged.
    """
    eps_r, eps_z, mu = complex(eps_r), complex(eps_z), complex(mu)
    wv = wave_vectors(eps_r, eps_z, mu, mode)
    n = int(mode.n)
    k = mode.k
    kz = mode.k_z
    q, q_m, q_n = wv.q, wv.q_M, wv.q_N
    x, z_m, z_n = q * R, q_m * R, q_n * R
    if z_m == 0 or z_n == 0:
        raise DomainError("interior transverse wavenumber vanishes")
    J = complex(sp.jv(n, x))
    Jp = complex(sp.jvp(n, x))
    H = complex(sp.hankel1(n, x))
    Hp = complex(sp.h1vp(n, x))
    if not all(cmath.isfinite(v) for v in (J, Jp, H, Hp)):
        raise SingularMatrixError("exterior Bessel values are not representable")
    Jm = complex(sp.jve(n, z_m))
    Jmp = complex(_jve_prime(n, z_m))
    Jn = complex(sp.jve(n, z_n))
    Jnp = complex(_jve_prime(n, z_n))
    a = n * kz / k
    M = np.array(
        [
            [q_m / (mu * k) * Jm, -q / k * H, 0.0, 0.0],
            [Jmp, -Hp, a / z_n * Jn, -a / x * H],
            [0.0, 0.0, eps_r / eps_z * q_n / k * Jn, -q / k * H],
            [a / (mu * z_m) * Jm, -a / x * H, eps_r * Jnp, -Hp],
        ],
        dtype=complex,
    )
    b_m = np.array([q / k * J, Jp, 0.0, a / x * J], dtype=complex)
    b_n = np.array([0.0, a / x * J, q / k * J, Jp], dtype=complex)
    return M, b_m, b_n


def t_block_oracle(eps_r, eps_z, mu, R, mode: ModeIndex, return_amplitudes: bool = False):
    """T-matrix block from a pivoted direct solve of the boundary-value system.

    The matrix is equilibrated (row and column scaling) before LU
    factorization; the condition number of the equilibrated matrix is
    checked against 1e14.

    Raises
    ------
    SingularMatrixError
        Condition number above 1e14 (true resonance or invalid branch).
    """
    _check_radius(R)
    M, b_m, b_n = boundary_matrix(eps_r, eps_z, mu, R, mode)
    col = np.max(np.abs(M), axis=0)
    col[col == 0] = 1.0
    Ms = M / col
    row = np.max(np.abs(Ms), axis=1)
    row[row == 0] = 1.0
    Ms = Ms / row[:, None]
    cond = np.linalg.cond(Ms)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularMatrixError(f"boundary matrix condition {cond:.3e} above limit", cond)
    rhs = np.stack([b_m, b_n], axis=1) / row[:, None]
    sol = np.linalg.solve(Ms, rhs) / col[:, None]
    v_m, v_n = sol[:, 0], sol[:, 1]
    block = TMatrixBlock(complex(v_m[1]), complex(v_n[3]), complex(v_n[1]), complex(v_m[3]), mode, R)
    if return_amplitudes:
        return block, v_m, v_n
    return block


def t_block_isotropic(eps, mu, R, mode: ModeIndex) -> TMatrixBlock:
    """Isotropic cylinder block in the classic product form.

    With a = J_n(x), h = H_n(x), b = J_n(eta), eta = q' R,
    q' = sqrt(eps mu k^2 - k_z^2) and
    G = n k_z/k (x^2 - eta^2) b / (eta x):

        D = (eps x h b' - eta b h')(mu x h b' - eta b h') - G^2 h^2,
        T^NN = -[(mu x h b' - eta b h')(eps x a b' - eta b a') - G^2 a h] / D,
        T^MM = -[(eps x h b' - eta b h')(mu x a b' - eta b a') - G^2 a h] / D,
        T^NM = T^MN = (2i/pi) n (k_z/k) (x^2 - eta^2) b^2 / (x^2 D).

    Interior values are exponentially scaled; every term is quadratic in
    them so the scale cancels.
    """
    _check_radius(R)
    eps, mu = complex(eps), complex(mu)
    k = mode.k
    if abs(mode.k_z) >= k:
        raise DomainError("|k_z| must be below omega/c")
    n = int(mode.n)
    kt = mode.kz_tilde
    x = math.sqrt(k * k - mode.k_z**2) * R
    eta = sqrt_upper(eps * mu * k * k - mode.k_z**2) * R
    if eta == 0:
        raise DomainError("interior transverse wavenumber vanishes")
    a = complex(sp.jv(n, x))
    ap = complex(sp.jvp(n, x))
    h = complex(sp.hankel1(n, x))
    hp = complex(sp.h1vp(n, x))
    b = complex(sp.jve(n, eta))
    bp = complex(_jve_prime(n, eta))
    G = n * kt * (x * x - eta * eta) * b / (eta * x)
    e_h = eps * x * h * bp - eta * b * hp
    m_h = mu * x * h * bp - eta * b * hp
    e_a = eps * x * a * bp - eta * b * ap
    m_a = mu * x * a * bp - eta * b * ap
    D = e_h * m_h - G * G * h * h
    t_nn = -(m_h * e_a - G * G * a * h) / D
    t_mm = -(e_h * m_a - G * G * a * h) / D
    t_x = 2j / math.pi * n * kt * (x * x - eta * eta) * b * b / (x * x * D)
    return TMatrixBlock(t_mm, t_nn, t_x, t_x, mode, R)


def t_smallR(eps, mu, mode: ModeIndex, R) -> TMatrixBlock:
    """Leading (omega R/c)^2 expansion of an isotropic block for |n| <= 1.

    Valid for R much smaller than the skin depth and c/omega; the
    polynomials are evaluated regardless.
    """
    _check_radius(R)
    n = int(mode.n)
    if abs(n) > 1:
        raise DomainError("small-radius expansion is provided for |n| <= 1 only")
    eps, mu = complex(eps), complex(mu)
    kt = mode.kz_tilde
    x2 = (mode.k * R) ** 2
    if n == 0:
        t_nn = -1j * math.pi / 4 * (eps - 1) * (kt * kt - 1) * x2
        t_mm = -1j * math.pi / 4 * (mu - 1) * (kt * kt - 1) * x2
        return TMatrixBlock(t_mm, t_nn, 0j, 0j, mode, R)
    den = (eps + 1) * (mu + 1)
    t_nn = 1j * math.pi / 4 * (kt * kt * (mu + 1) * (eps - 1) + (mu - 1) * (eps + 1)) / den * x2
    t_mm = 1j * math.pi / 4 * (kt * kt * (mu - 1) * (eps + 1) + (mu + 1) * (eps - 1)) / den * x2
    t_x = n * 1j * math.pi / 2 * (eps * mu - 1) * kt / den * x2
    return TMatrixBlock(t_mm, t_nn, t_x, t_x, mode, R)


def t_conductor_limit(eps, mode: ModeIndex, R) -> complex:
    """Leading T^NN_0 for a good conductor with skin depth << R << c/omega.

    T = -pi / (pi + 2i gamma_E + 2/((1 - kt^2)(2i + sqrt(eps) k R))
               + 2i log(sqrt(1 - kt^2) k R / 2)).
    """
    _check_radius(R)
    kt = mode.kz_tilde
    kr = mode.k * R
    c2 = 1.0 - kt * kt
    if c2 <= 0:
        raise DomainError("|k_z| must be below omega/c")
    se = cmath.sqrt(complex(eps))
    den = (math.pi + 2j * EULER_GAMMA + 2.0 / (c2 * (2j + se * kr))
           + 2j * cmath.log(math.sqrt(c2) * kr / 2.0))
    return -math.pi / den
