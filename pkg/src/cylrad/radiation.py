"""Heat radiation of a long cylinder: mode sums, spectra, totals and asymptotic laws.

Power per length and per angular frequency, for polarization P,

    h_P(omega) = -(hbar omega / pi^2) [n(T_c) - n(T_env)]
                 sum_n int_{-k}^{k} dk_z (Re T^PP + |T^PP|^2 + |T^{P'P}|^2),

with ``k = omega/c``. The k_z integral is written as ``k_z = k sin(theta)`` and
folded onto ``theta`` in (0, pi/2); orders ``n`` and ``-n`` are folded too.
The same quantity is also accumulated from the S-matrix form
``(|S|^2 - 1)/4`` so every evaluation carries its own consistency check.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constants import (
    C, EULER_GAMMA, HBAR, KB, KB_EV, bose, ev_to_rad_s, ev_to_wavelength_um,
    stefan_boltzmann_flux, thermal_wavelength,
)
from .errors import ConvergenceError, DomainError, OutOfWindowError, RegimeError, TruncationError
from .materials import MaterialSpec
from .quadrature import adaptive_log_simpson, angle_rule, graded_panel_rule

DEFAULT_N_CAP = 512


@dataclass(frozen=True)
class Tolerances:
    """Numerical controls for the cylinder integrators.

    Attributes
    ----------
    theta_nodes : int
        Angular nodes of the starting mesh (``theta_nodes / panel_order``
        panels); panels are bisected adaptively until ``theta_rtol``.
    truncation : float
        The last three multipole orders must each be below this fraction
        of the running total.
    n_cap : int or None
        Hard cap on the multipole order. ``None`` uses
        ``max(512, 2 * seed)`` where ``seed ~ kR + 4 (kR)^(1/3)``.
    x_lo, x_hi : float
        Frequency band in units of ``k_B T_max / hbar``.
    """

    theta_nodes: int = 32
    panel_order: int = 16
    theta_rtol: float = 1e-8
    max_theta_nodes: int = 1 << 16
    truncation: float = 1e-8
    n_cap: int | None = None
    omega_rtol: float = 1e-6
    x_lo: float = 0.02
    x_hi: float = 40.0
    base_points: int = 201
    max_rounds: int = 14


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class ThermalOccupation:
    """Bose-Einstein occupation at angular frequency ``omega`` (rad/s) and ``T`` (K)."""

    omega: float
    T: float

    @property
    def value(self) -> float:
        if self.T <= 0:
            return 0.0
        return 1.0 / math.expm1(HBAR * self.omega / (KB * self.T))


@dataclass(frozen=True)
class ModeSum:
    """Spectral densities at one frequency.

    ``h_n`` and ``h_m`` are in W s/m (power per length per rad/s).
    ``dual_residual`` is the relative gap between the T-matrix and
    S-matrix evaluations of the same sums. ``theta_error`` is nonzero only
    for a non-strict evaluation whose angular sums stalled at the node cap.
    """

    omega_ev: float
    h_n: float
    h_m: float
    h_n_dual: float
    h_m_dual: float
    n_max: int
    theta_nodes: int
    worst_node: float
    theta_error: float = 0.0

    @property
    def dual_residual(self) -> float:
        out = 0.0
        for a, b in ((self.h_n, self.h_n_dual), (self.h_m, self.h_m_dual)):
            if a != b:
                out = max(out, abs(a - b) / max(abs(a), abs(b)))
        return out


@dataclass(frozen=True)
class EmissionSpectrum:
    """Spectral power per length, N and M polarized, with ``i_omega = (h_n - h_m)/(h_n + h_m)``."""

    omega_grid: np.ndarray
    h_n: np.ndarray
    h_m: np.ndarray
    i_omega: np.ndarray
    n_max: np.ndarray
    dual_residual: np.ndarray

    @property
    def h_total(self) -> np.ndarray:
        return self.h_n + self.h_m

    @property
    def lambda_um(self) -> np.ndarray:
        return ev_to_wavelength_um(self.omega_grid)


@dataclass(frozen=True)
class RadiationResult:
    """Frequency-integrated power per length (W/m) and derived quantities."""

    h_total: float
    h_npol: float
    h_mpol: float
    i_total: float
    normalized: float
    mode_truncation: int
    quadrature_report: dict = field(default_factory=dict)


def truncation_seed(kR: float) -> int:
    """Initial multipole order: exterior size parameter plus a boundary-layer margin."""
    return int(math.ceil(kR + 4.0 * kR ** (1.0 / 3.0) + 2.0))


def _tail_ok(orders, tol):
    total = float(np.sum(orders))
    if total == 0.0:
        return True
    return bool(np.all(np.abs(orders[-3:]) <= tol * abs(total)))


def _panel_pass(eps_r, eps_z, mu, kR, edges, order, n_top, backend):
    rule = graded_panel_rule(edges, order)
    wts = 2.0 * rule.cos_t * rule.weights
    out = kernels.mode_orders(eps_r, eps_z, mu, kR, rule.cos_t, rule.sin_t, wts, n_top,
                              backend=backend)
    node_n, node_m = out[5], out[6]
    if not (np.all(np.isfinite(node_n)) and np.all(np.isfinite(node_m))):
        raise ConvergenceError(
            f"non-finite mode sum at kR = {kR:.6g}, eps = ({eps_r}, {eps_z})")
    per_panel = (wts * np.stack([node_n, node_m])).reshape(2, len(edges), order).sum(axis=2)
    return out, per_panel.T  # (panels, 2)


def adaptive_angle_mesh(eps_r, eps_z, mu, kR, n_top, tol: Tolerances = DEFAULT_TOLERANCES,
                        backend=None, strict: bool = True):
    """Refine panels in the graded angle variable until the sums converge.

    Each panel's Gauss-Legendre value is compared with the sum over its two
    halves; a panel is kept once the difference is within its share of
    ``theta_rtol`` times the total. Returns the final panel edges and the
    relative error estimate. With ``strict=False`` hitting the node cap
    returns the current mesh instead of raising; the caller owns the error.
    """
    order = tol.panel_order
    n0 = max(1, tol.theta_nodes // order)
    edges = [(i / n0, (i + 1) / n0) for i in range(n0)]
    _, vals = _panel_pass(eps_r, eps_z, mu, kR, edges, order, n_top, backend)
    final = []  # (edges, value, error)
    used = len(edges) * order
    while edges:
        kids = [e for lo, hi in edges for e in ((lo, 0.5 * (lo + hi)), (0.5 * (lo + hi), hi))]
        used += len(kids) * order
        _, kv = _panel_pass(eps_r, eps_z, mu, kR, kids, order, n_top, backend)
        pair = kv[0::2] + kv[1::2]
        err = np.abs(pair - vals).sum(axis=1)
        total = np.abs(sum(v for _, v, _ in final) + pair.sum(axis=0)).sum() if final \
            else np.abs(pair.sum(axis=0)).sum()
        nxt_edges, nxt_vals, nxt_errs = [], [], []
        # once the summed error meets the target, stop; per-panel budgets shrink
        # with panel width and would otherwise chase roundoff
        done = err.sum() + sum(e for _, _, e in final) <= tol.theta_rtol * total
        for j, (lo, hi) in enumerate(edges):
            if done or err[j] <= tol.theta_rtol * total * (hi - lo) or total == 0.0:
                final.append((kids[2 * j], kv[2 * j], 0.5 * err[j]))
                final.append((kids[2 * j + 1], kv[2 * j + 1], 0.5 * err[j]))
            else:
                nxt_edges.extend(kids[2 * j:2 * j + 2])
                nxt_vals.extend(kv[2 * j:2 * j + 2])
                nxt_errs.extend((0.5 * err[j], 0.5 * err[j]))
        edges, vals = nxt_edges, np.array(nxt_vals)
        if edges and used + 2 * len(edges) * order > tol.max_theta_nodes:
            if not strict:
                final.extend(zip(edges, vals, nxt_errs))
                break
            achieved = float(err.sum() / total) if total else math.inf
            raise ConvergenceError(
                f"angular quadrature exceeded {tol.max_theta_nodes} nodes with relative "
                f"error {achieved:.3g} > {tol.theta_rtol:g} (kR = {kR:.6g})",
                estimate=total, achieved=achieved)
    final.sort()
    total = np.abs(sum(v for _, v, _ in final)).sum()
    rel = float(sum(e for _, _, e in final) / total) if total else 0.0
    return [e for e, _, _ in final], rel


def angular_mode_sum(eps_r, eps_z, mu, kR, tol: Tolerances = DEFAULT_TOLERANCES, backend=None,
                     strict: bool = True):
    """Dimensionless angular/multipole sums for one frequency.

    Returns ``(g_n, g_m, gs_n, gs_m, n_max, nodes, worst, theta_error)`` where
    ``g_P = sum_n int_0^{pi/2} 2 cos(theta) d theta (-(Re T + |T|^2 + |T'|^2))``
    so that ``int dk_z (...)`` equals ``-k g_P``; ``gs`` are the same sums
    from the S-matrix form.

    Raises
    ------
    TruncationError
        Multipole tail still above tolerance at the order cap.
    ConvergenceError
        Angular sums not converged within ``max_theta_nodes`` (only when
        ``strict``; otherwise the estimate is returned as ``theta_error``).
    """
    seed = truncation_seed(kR)
    cap = tol.n_cap if tol.n_cap is not None else max(DEFAULT_N_CAP, 2 * seed)
    n_top = max(3, min(seed + 3, cap))
    while True:
        edges, rel = adaptive_angle_mesh(eps_r, eps_z, mu, kR, n_top, tol, backend, strict)
        out, _ = _panel_pass(eps_r, eps_z, mu, kR, edges, tol.panel_order, n_top, backend)
        c_n, c_m, s_n, s_m, worst = out[:5]
        both = c_n + c_m
        if _tail_ok(both, tol.truncation):
            break
        if n_top >= cap:
            tail = float(np.max(np.abs(both[-3:])) / max(abs(np.sum(both)), 1e-300))
            raise TruncationError(
                f"multipole tail {tail:.3g} above {tol.truncation:g} at the cap n = {cap} "
                f"(kR = {kR:.6g})", n_max=cap, tail=tail)
        n_top = min(2 * n_top, cap)
    return (float(np.sum(c_n)), float(np.sum(c_m)), float(np.sum(s_n)), float(np.sum(s_m)),
            n_top, len(edges) * tol.panel_order, worst, rel if rel > tol.theta_rtol else 0.0)


def _check_temperatures(T_c, T_env):
    if T_c < 0 or T_env < 0:
        raise DomainError("temperatures must be non-negative")


def _check_radius(R):
    if not (R > 0):
        raise DomainError("radius must be positive")


def mode_sum(material: MaterialSpec, R: float, omega_ev: float, T_c: float, T_env: float = 0.0,
             tol: Tolerances = DEFAULT_TOLERANCES, allow_extrapolation: bool = False,
             backend=None, eps_offset: complex = 0.0, strict: bool = True) -> ModeSum:
    """N- and M-polarized spectral power per length at one frequency.

    Parameters
    ----------
    material : MaterialSpec
    R : float
        Radius in metres.
    omega_ev : float
        Photon energy in eV.
    T_c, T_env : float
        Cylinder and environment temperatures in K.
    eps_offset : complex
        Added to both permittivities; a fault-injection hook for self-tests.
    strict : bool
        Raise if the angular sums miss ``theta_rtol`` at the node cap. When
        false the shortfall is returned in ``theta_error`` instead.

    Returns
    -------
    ModeSum
        Zero densities for lossless materials, which do not radiate.
    """
    _check_radius(R)
    _check_temperatures(T_c, T_env)
    if not (omega_ev > 0):
        raise DomainError("omega must be positive")
    er, ez = material.eps_pair(omega_ev, allow_extrapolation)
    er, ez = complex(er) + eps_offset, complex(ez) + eps_offset
    mu = complex(material.mu)
    if material.is_lossless(er, ez):
        return ModeSum(omega_ev, 0.0, 0.0, 0.0, 0.0, 0, 0, 0.0)
    w = ev_to_rad_s(omega_ev)
    k = w / C
    g_n, g_m, gs_n, gs_m, n_top, nodes, worst, rel = angular_mode_sum(er, ez, mu, k * R, tol,
                                                                      backend, strict)
    occ = float(bose(omega_ev, T_c) - bose(omega_ev, T_env))
    pref = HBAR * w * k / math.pi**2 * occ
    return ModeSum(omega_ev, pref * g_n, pref * g_m, pref * gs_n, pref * gs_m, n_top, nodes, worst,
                   rel)


def _ratio(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    s = a + b
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(s != 0, (a - b) / np.where(s != 0, s, 1.0), 0.0)


def _point_task(args):
    material, R, omega_ev, T_c, T_env, tol, allow, backend, offset, *strict = args
    return mode_sum(material, R, omega_ev, T_c, T_env, tol, allow, backend, offset, *strict)


def resolve_workers(workers=None) -> int:
    """Worker count from the argument or ``CYLRAD_WORKERS`` (default 1)."""
    if workers is None:
        workers = int(os.environ.get("CYLRAD_WORKERS", "1") or 1)
    return max(1, int(workers))


def _evaluate(tasks, workers):
    # results come back in submission order, so reductions are deterministic
    if workers <= 1 or len(tasks) < 2:
        return [_point_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_point_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def spectral_emissivity(material: MaterialSpec, R: float, T: float, omega_grid,
                        tol: Tolerances = DEFAULT_TOLERANCES, allow_extrapolation: bool = False,
                        workers=None, backend=None, eps_offset: complex = 0.0) -> EmissionSpectrum:
    """Spectral densities on ``omega_grid`` (eV) for ``T_env = 0``."""
    grid = np.atleast_1d(np.asarray(omega_grid, dtype=float))
    tasks = [(material, R, float(w), T, 0.0, tol, allow_extrapolation, backend, eps_offset)
             for w in grid]
    res = _evaluate(tasks, resolve_workers(workers))
    h_n = np.array([r.h_n for r in res])
    h_m = np.array([r.h_m for r in res])
    return EmissionSpectrum(
        grid, h_n, h_m, _ratio(h_n, h_m),
        np.array([r.n_max for r in res]), np.array([r.dual_residual for r in res]),
    )


def frequency_band(T_max: float, tol: Tolerances = DEFAULT_TOLERANCES):
    """Photon-energy band (eV) integrated for a temperature ``T_max``."""
    kT = KB_EV * T_max
    return tol.x_lo * kT, tol.x_hi * kT


def _check_window(material, band, allow_extrapolation):
    lo, hi = material.window
    if not allow_extrapolation and (band[0] < lo or band[1] > hi):
        raise OutOfWindowError(
            f"material {material.name!r} is valid on [{lo:g}, {hi:g}] eV but the thermal band "
            f"is [{band[0]:.4g}, {band[1]:.4g}] eV (enable extrapolation to proceed)")


def total_radiation(material: MaterialSpec, R: float, T_c: float, T_env: float = 0.0,
                    tol: Tolerances = DEFAULT_TOLERANCES, allow_extrapolation: bool = False,
                    workers=None, backend=None) -> RadiationResult:
    """Frequency-integrated power per length.

    The integral runs over ``hbar omega / k_B T_max`` in ``[x_lo, x_hi]``
    with adaptive Simpson refinement in ``ln omega``. ``normalized`` is
    ``h_total / (2 pi R sigma T_c^4)``.

    Raises
    ------
    OutOfWindowError
        The thermal band leaves the material's fitted window.
    ConvergenceError, TruncationError
        From the quadratures, with the achieved estimate attached. A
        frequency whose angular sums stall at the node cap is accepted only
        if its error, weighted by the whole band, stays below ``omega_rtol``
        of the total. Deep in the Wien tail of a nearly lossless body the
        whispering-gallery resonances are too narrow to resolve but carry
        no weight.
    """
    _check_radius(R)
    _check_temperatures(T_c, T_env)
    T_max = max(T_c, T_env)
    if T_max <= 0:
        raise DomainError("at least one temperature must be positive")
    band = frequency_band(T_max, tol)
    _check_window(material, band, allow_extrapolation)
    n_workers = resolve_workers(workers)
    diag = {"n_max": 0, "theta_nodes": 0, "dual": 0.0, "worst": 0.0, "theta_err": 0.0}

    def integrand(y):
        tasks = [(material, R, float(w), T_c, T_env, tol, allow_extrapolation, backend, 0.0, False)
                 for w in np.exp(y)]
        out = np.empty((len(tasks), 2))
        for i, r in enumerate(_evaluate(tasks, n_workers)):
            w = ev_to_rad_s(r.omega_ev)
            out[i] = (r.h_n * w, r.h_m * w)  # d omega = omega d ln omega
            diag["n_max"] = max(diag["n_max"], r.n_max)
            diag["theta_nodes"] = max(diag["theta_nodes"], r.theta_nodes)
            diag["dual"] = max(diag["dual"], r.dual_residual)
            diag["worst"] = min(diag["worst"], r.worst_node)
            diag["theta_err"] = max(diag["theta_err"], r.theta_error * np.abs(out[i]).sum())
        return out

    q = adaptive_log_simpson(integrand, math.log(band[0]), math.log(band[1]),
                             tol.base_points, tol.omega_rtol, tol.max_rounds)
    h_n, h_m = float(q.value[0]), float(q.value[1])
    h = h_n + h_m
    # Simpson weights are positive and sum to the band length, so this bounds
    # what unconverged angular sums can contribute to the total
    theta_bound = diag["theta_err"] * math.log(band[1] / band[0])
    if theta_bound > tol.omega_rtol * abs(h):
        achieved = theta_bound / abs(h) if h else math.inf
        raise ConvergenceError(
            f"angular quadrature missed {tol.theta_rtol:g} at frequencies that matter; "
            f"bound on the total {achieved:.3g} > {tol.omega_rtol:g}",
            estimate=h, achieved=achieved)
    sb = stefan_boltzmann_flux(T_c) * 2.0 * math.pi * R
    return RadiationResult(
        h_total=h, h_npol=h_n, h_mpol=h_m,
        i_total=float(_ratio(h_n, h_m)),
        normalized=h / sb if sb > 0 else math.nan,
        mode_truncation=diag["n_max"],
        quadrature_report={
            "omega_rel_error": q.rel_error,
            "omega_evaluations": q.evaluations,
            "omega_rounds": q.rounds,
            "max_theta_nodes": diag["theta_nodes"],
            "max_dual_residual": diag["dual"],
            "worst_node": diag["worst"],
            "theta_error_bound": theta_bound / abs(h) if h else 0.0,
            "band_ev": band,
        },
    )


# ----------------------------------------------------------------------------
# asymptotic laws (all per unit area A = 2 pi R L)


def _thermal_integral(func, T, tol: Tolerances):
    """int d omega func(omega_ev, omega) over the thermal band; func is vectorized."""
    lo, hi = frequency_band(T, tol)

    def f(y):
        w_ev = np.exp(y)
        w = ev_to_rad_s(w_ev)
        v = np.atleast_2d(np.asarray(func(w_ev, w), dtype=float))
        return (v * w).T

    q = adaptive_log_simpson(f, math.log(lo), math.log(hi), tol.base_points, tol.omega_rtol,
                             tol.max_rounds)
    return q.value


def _require_isotropic(material):
    if not material.is_isotropic:
        raise DomainError("this asymptotic law is derived for isotropic materials")


def smallR_dielectric(material: MaterialSpec, R: float, T: float,
                      tol: Tolerances = DEFAULT_TOLERANCES, allow_extrapolation: bool = False):
    """Thin-cylinder laws ``R << {delta, lambda_T}``, per unit area.

    ``H_N/A = hbar R/(6 pi^2 c^3) int w^4 n(w) Im[(eps^2 + 2 eps - 1)/(eps + 1)] dw``
    and ``H_M/A = hbar R/(2 pi^2 c^3) int w^4 n(w) Im[(eps - 1)/(eps + 1)] dw``.

    Returns
    -------
    (h_n_per_area, h_m_per_area) in W/m^2.
    """
    _check_radius(R)
    _require_isotropic(material)
    band = frequency_band(T, tol)
    _check_window(material, band, allow_extrapolation)

    def weights(w_ev, w):
        e = np.asarray(material.eps_pair(w_ev, allow_extrapolation)[0], dtype=complex)
        base = w**4 * bose(w_ev, T)
        return np.stack([base * np.imag((e * e + 2 * e - 1) / (e + 1)) / 6.0,
                         base * np.imag((e - 1) / (e + 1)) / 2.0])

    v = _thermal_integral(weights, T, tol)
    scale = HBAR * R / (math.pi**2 * C**3)
    return float(scale * v[0]), float(scale * v[1])


def lowT_dielectric(eps0: float, lambda_in: float, R: float, T: float):
    """Low-temperature limit for ``eps = eps0 + i lambda_in omega/c``, per unit area.

    Returns ``(h_n_per_area, h_m_per_area, I)`` with both powers scaling as T^6
    and ``I = (eps0^2 + 2 eps0 - 3)/(eps0^2 + 2 eps0 + 9)``.
    """
    if not (eps0 > 0) or not (lambda_in > 0):
        raise DomainError("eps0 and lambda_in must be positive")
    _check_radius(R)
    base = HBAR * C**2 * lambda_in * R / thermal_wavelength(T) ** 6
    a = 1.0 / (eps0 + 1.0) ** 2
    h_n = 4.0 * math.pi**4 / 189.0 * base * (1.0 + 2.0 * a)
    h_m = 8.0 * math.pi**4 / 63.0 * base * a
    return h_n, h_m, degree_of_polarization_lowT(eps0)


def degree_of_polarization_lowT(eps0: float) -> float:
    return (eps0**2 + 2 * eps0 - 3) / (eps0**2 + 2 * eps0 + 9)


def conductor_theta_integral(eps, x, nodes: int = 64, rtol: float = 1e-10, max_nodes: int = 1 << 14):
    """``int_0^{pi/2} cos^3 / |cos^2 (2 gamma_E - i pi) x - 2i/sqrt(eps) + 2 cos^2 x ln(cos x / 2)|^2``."""
    b = -2j / np.sqrt(complex(eps))
    prev = None
    while nodes <= max_nodes:
        r = angle_rule(nodes)
        c = r.cos_t
        c2x = c * c * x
        den = c2x * (2 * EULER_GAMMA - 1j * math.pi) + b + 2 * c2x * np.log(c * x / 2)
        val = float(np.sum(r.weights * c**3 / np.abs(den) ** 2))
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val
        prev = val
        nodes *= 2
    raise ConvergenceError("conductor angular integral did not converge", estimate=prev)


def conductor_asymptotic(material: MaterialSpec, R: float, T: float,
                         tol: Tolerances = DEFAULT_TOLERANCES, allow_extrapolation: bool = False):
    """Conductor law for ``lambda_T >> R >> delta``, per unit area (fully N-polarized).

    ``H/A = (2 hbar / pi^2 c^2) int w^3 n(w) Re[1/sqrt(eps)] J(eps, wR/c) dw``
    with ``J`` from :func:`conductor_theta_integral`.
    """
    _check_radius(R)
    _require_isotropic(material)
    band = frequency_band(T, tol)
    _check_window(material, band, allow_extrapolation)

    def integrand(w_ev, w):
        e = np.asarray(material.eps_pair(w_ev, allow_extrapolation)[0], dtype=complex)
        x = w * R / C
        th = np.array([conductor_theta_integral(ei, xi) for ei, xi in zip(e, x)])
        return w**3 * bose(w_ev, T) * np.real(1 / np.sqrt(e)) * th

    v = _thermal_integral(integrand, T, tol)
    return float(2.0 * HBAR / (math.pi**2 * C**2) * v[0])


def rytov_approx(material: MaterialSpec, R: float, T: float,
                 tol: Tolerances = DEFAULT_TOLERANCES, allow_extrapolation: bool = False):
    """Rough closed-angle conductor estimate, per unit area.

    ``H/A = int hbar w^{3/2} n Re[1/sqrt(eps)] |eps|^{1/4} / (2 pi^2 c^{1/2} |R ln(wR/2c)|^{3/2}) dw``

    Raises
    ------
    RegimeError
        If ``omega R / 2c`` reaches 1 inside the band, where the logarithm
        vanishes and the integrand diverges.
    """
    _check_radius(R)
    _require_isotropic(material)
    band = frequency_band(T, tol)
    _check_window(material, band, allow_extrapolation)
    if ev_to_rad_s(band[1]) * R / (2 * C) >= 1.0:
        raise RegimeError(
            "ln(omega R / 2c) changes sign inside the thermal band; the estimate diverges")

    def integrand(w_ev, w):
        e = np.asarray(material.eps_pair(w_ev, allow_extrapolation)[0], dtype=complex)
        return (w**1.5 * bose(w_ev, T) * np.real(1 / np.sqrt(e)) * np.abs(e) ** 0.25
                / np.abs(R * np.log(w * R / (2 * C))) ** 1.5)

    v = _thermal_integral(integrand, T, tol)
    return float(HBAR / (2 * math.pi**2 * math.sqrt(C)) * v[0])


def pollimit(eps) -> float:
    """Long-wavelength spectral polarization of a thin isotropic dielectric cylinder."""
    e = complex(eps)
    a = abs(e) ** 2 + 2 * e.real
    return (a - 3) / (a + 9)


def polarization_condition(eps, threshold: float = 10.0) -> bool:
    """Whether ``((Re eps + 1)^2 + (Im eps)^2) / Im eps`` exceeds ``threshold``.

    Above it the N polarization dominates the thin-cylinder emission.
    Real ``eps`` (infinite ratio) returns True.
    """
    e = complex(eps)
    if e.imag == 0:
        return True
    return ((e.real + 1) ** 2 + e.imag**2) / e.imag > threshold


def plate_limit_check(material: MaterialSpec, T: float, **kwargs):
    """Large-radius asymptote per unit area, delegated to :func:`cylrad.plate.plate_emissivity`."""
    from .plate import plate_emissivity

    return plate_emissivity(material, T, **kwargs)
