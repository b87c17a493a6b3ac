"""Dispersive permittivity models, tabulated data, and material specs.

All public frequencies are photon energies in eV. Every model is an
immutable dataclass with an ``eps(omega_ev)`` method that accepts scalars
or numpy arrays.
"""
from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass

import numpy as np

from .constants import C, EPS0, HBARC_EVM, ev_to_rad_s
from .errors import (
    DomainError,
    MonotonicityError,
    NegativeImaginaryError,
    OutOfWindowError,
    ParseError,
)


def _as_omega(omega_ev):
    w = np.asarray(omega_ev, dtype=float)
    if np.any(~(w > 0)) or np.any(~np.isfinite(w)):
        raise DomainError("permittivity is only defined for finite omega > 0")
    return w


def _ret(x, scalar):
    return complex(x) if scalar else x


@dataclass(frozen=True)
class DrudeModel:
    """Free-electron permittivity eps_inf - w_p^2 / (w (w + i w_tau)).

    Parameters
    ----------
    eps_inf : float
    omega_p : float
        Plasma frequency in eV.
    omega_tau : float
        Damping rate in eV.
    """

    eps_inf: float
    omega_p: float
    omega_tau: float
    window: tuple = (0.0, math.inf)

    def __post_init__(self):
        if not (self.omega_p > 0 and self.omega_tau > 0):
            raise DomainError("Drude parameters omega_p and omega_tau must be positive")

    def eps(self, omega_ev):
        w = _as_omega(omega_ev)
        e = self.eps_inf - self.omega_p**2 / (w * (w + 1j * self.omega_tau))
        return _ret(e, w.ndim == 0)


@dataclass(frozen=True)
class LorentzModel:
    """Single polar-phonon resonance eps_inf (w^2 - w_LO^2 + i w g)/(w^2 - w_TO^2 + i w g)."""

    eps_inf: float
    omega_lo: float
    omega_to: float
    gamma: float
    window: tuple = (0.0, math.inf)

    def __post_init__(self):
        if not (self.omega_lo > self.omega_to > 0 and self.gamma > 0):
            raise DomainError("Lorentz model needs omega_lo > omega_to > 0 and gamma > 0")

    def eps(self, omega_ev):
        w = _as_omega(omega_ev)
        g = 1j * w * self.gamma
        e = self.eps_inf * (w**2 - self.omega_lo**2 + g) / (w**2 - self.omega_to**2 + g)
        return _ret(e, w.ndim == 0)


@dataclass(frozen=True)
class TungstenModel:
    """Tungsten: three Lorentz terms in wavelength plus two Drude-like conductivity terms.

    Wavelengths are stored in micrometres, conductivities in 1e6 S/m.
    The printed form uses the exp(+i w t) sign convention (Im eps < 0);
    the complex conjugate is returned so that passive media have
    Im eps > 0 like every other model here.
    """

    K_0p: tuple
    lambda_sp: tuple
    delta_p: tuple
    sigma_q: tuple
    lambda_rq: tuple
    temperature_tag: float
    window: tuple = (0.0, math.inf)

    def __post_init__(self):
        vals = list(self.K_0p) + list(self.lambda_sp) + list(self.delta_p)
        vals += list(self.sigma_q) + list(self.lambda_rq)
        if any(v < 0 for v in vals):
            raise DomainError("tungsten parameters must be non-negative")

    def eps(self, omega_ev):
        w = _as_omega(omega_ev)
        lam = 2.0 * math.pi * HBARC_EVM / w  # m
        e = np.ones_like(lam, dtype=complex)
        for K, ls, d in zip(self.K_0p, self.lambda_sp, self.delta_p):
            ls = ls * 1e-6
            e = e + K * lam**2 / (lam**2 - ls**2 + 1j * d * ls * lam)
        pref = lam**2 / (2.0 * math.pi * C * EPS0)
        for s, lr in zip(self.sigma_q, self.lambda_rq):
            e = e - pref * (s * 1e6) / (lr * 1e-6 - 1j * lam)
        return _ret(np.conj(e), w.ndim == 0)


@dataclass(frozen=True)
class GraphiteAxisModel:
    """One principal axis of graphite: Drude term plus Gaussian-damped oscillators.

    eps = 1 - f_0 w_p^2/(w (w + i G_0)) - sum_j f_j w_p^2/((w^2 - w_j^2) + i w G'_j)
    with G'_j = G_j exp(-alpha_j ((w - c_j)/G_j)^2). Each oscillator is a tuple
    ``(f_j, alpha_j, omega_tj, Gamma_j)``. The damping centre ``c_j`` defaults
    to ``omega_tj``; ``damping_centers`` overrides it per oscillator.
    """

    omega_p: float
    gamma_0: float
    f_0: float
    oscillators: tuple
    window: tuple = (0.0, math.inf)
    damping_centers: tuple | None = None

    def __post_init__(self):
        for f, _a, _w, g in self.oscillators:
            if f < 0 or g <= 0:
                raise DomainError("graphite oscillators need f_j >= 0 and Gamma_j > 0")
        if self.damping_centers is not None and len(self.damping_centers) != len(self.oscillators):
            raise DomainError("damping_centers needs one entry per oscillator")

    def eps(self, omega_ev):
        w = _as_omega(omega_ev)
        wp2 = self.omega_p**2
        e = 1.0 - self.f_0 * wp2 / (w * (w + 1j * self.gamma_0))
        centers = self.damping_centers or [osc[2] for osc in self.oscillators]
        for (f, a, wt, g), wc in zip(self.oscillators, centers):
            gp = g * np.exp(-a * ((w - wc) / g) ** 2)
            e = e - f * wp2 / ((w**2 - wt**2) + 1j * w * gp)
        return _ret(e, w.ndim == 0)


@dataclass(frozen=True)
class LowFrequencyModel:
    """Dielectric below its lowest resonance: eps = eps0 + i lambda_in omega / c."""

    eps0: float
    lambda_in: float  # m
    window: tuple = (0.0, math.inf)

    def eps(self, omega_ev):
        w = _as_omega(omega_ev)
        e = self.eps0 + 1j * self.lambda_in * ev_to_rad_s(w) / C
        return _ret(e, w.ndim == 0)


@dataclass(frozen=True)
class ConstantModel:
    """Frequency-independent permittivity (test and surrogate material)."""

    value: complex
    window: tuple = (0.0, math.inf)

    def eps(self, omega_ev):
        w = _as_omega(omega_ev)
        e = np.full(w.shape, complex(self.value))
        return _ret(e, w.ndim == 0)


@dataclass(frozen=True)
class AverageModel:
    """Arithmetic mean of two models, e.g. the isotropic surrogate (eps_z + eps_r)/2."""

    first: object
    second: object

    @property
    def window(self):
        return (max(self.first.window[0], self.second.window[0]),
                min(self.first.window[1], self.second.window[1]))

    def eps(self, omega_ev):
        return 0.5 * (self.first.eps(omega_ev) + self.second.eps(omega_ev))


@dataclass(frozen=True)
class TabulatedModel:
    """Linearly interpolated samples (energy eV, Re eps, Im eps); no extrapolation."""

    energies: tuple
    re_eps: tuple
    im_eps: tuple

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        if e.size < 2:
            raise ParseError("tabulated data needs at least two samples")
        if np.any(np.diff(e) <= 0):
            raise MonotonicityError("tabulated energies must be strictly ascending")
        if np.any(np.asarray(self.im_eps) < 0):
            raise NegativeImaginaryError("tabulated Im(eps) must be non-negative")

    @property
    def window(self):
        return (self.energies[0], self.energies[-1])

    def eps(self, omega_ev):
        w = _as_omega(omega_ev)
        lo, hi = self.window
        if np.any(w < lo) or np.any(w > hi):
            raise OutOfWindowError(
                f"query outside tabulated range [{lo}, {hi}] eV (no extrapolation)"
            )
        re = np.interp(w, self.energies, self.re_eps)
        im = np.interp(w, self.energies, self.im_eps)
        return _ret(re + 1j * im, w.ndim == 0)


def permittivity(model, omega_ev, allow_extrapolation: bool = False):
    """Evaluate eps(omega) of a dispersion model.

    Parameters
    ----------
    model
        Any model object from this module.
    omega_ev : float or ndarray
        Photon energy in eV, strictly positive.
    allow_extrapolation : bool
        Permit analytic models to be evaluated outside their stated
        fitting window. Tabulated data never extrapolates.

    Raises
    ------
    OutOfWindowError
        Query outside the validity window.
    """
    w = _as_omega(omega_ev)
    if isinstance(model, TabulatedModel):
        return model.eps(omega_ev)
    lo, hi = model.window
    if not allow_extrapolation and (np.any(w < lo) or np.any(w > hi)):
        raise OutOfWindowError(
            f"{type(model).__name__} is fitted on [{lo}, {hi}] eV; "
            f"query spans [{w.min()}, {w.max()}] eV (pass allow_extrapolation to override)"
        )
    return model.eps(omega_ev)


def skin_depth(model, omega_ev, allow_extrapolation: bool = False) -> float:
    """Skin depth c / (Im sqrt(eps) omega) in metres.

    Returns ``math.inf`` for a lossless medium (Im sqrt(eps) = 0).
    """
    e = permittivity(model, omega_ev, allow_extrapolation)
    return skin_depth_from_eps(e, omega_ev)


def skin_depth_from_eps(eps, omega_ev) -> float:
    im = np.sqrt(complex(eps)).imag
    if im <= 0:
        return math.inf
    return C / (im * ev_to_rad_s(float(omega_ev)))


def _parse_rows(text: str):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p for p in line.replace(",", " ").split() if p]
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 3 columns, got {len(parts)}: {raw!r}")
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-numeric value in {raw!r}") from exc
        if not all(math.isfinite(v) for v in vals):
            raise ParseError(f"line {lineno}: non-finite value in {raw!r}")
        rows.append(vals)
    return rows


def load_tabulated(source) -> TabulatedModel:
    """Read ``energy_eV re_eps im_eps`` rows from a path, text, or byte stream.

    Columns may be separated by whitespace or commas; lines starting with
    ``#`` are comments. Rows must already be in strictly ascending energy.

    Raises
    ------
    ParseError, MonotonicityError, NegativeImaginaryError
    """
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    else:
        raise ParseError(f"cannot read tabulated data from {source!r}")
    rows = _parse_rows(text)
    if len(rows) < 2:
        raise ParseError("tabulated data needs at least two samples")
    e, re, im = zip(*rows)
    return TabulatedModel(tuple(e), tuple(re), tuple(im))


@dataclass(frozen=True)
class MaterialSpec:
    """Uniaxial material: radial (transverse) and axial permittivities plus mu.

    For isotropic media ``axial`` is the same object as ``radial``.
    ``band`` optionally names the photon-energy range (eV) that the
    parameterization was intended for; it is informational.
    """

    radial: object
    axial: object = None
    mu: complex = 1.0
    name: str = "custom"
    band: tuple | None = None

    def __post_init__(self):
        if self.axial is None:
            object.__setattr__(self, "axial", self.radial)

    @property
    def is_isotropic(self) -> bool:
        return self.axial is self.radial

    @property
    def window(self):
        return (max(self.radial.window[0], self.axial.window[0]),
                min(self.radial.window[1], self.axial.window[1]))

    def eps_pair(self, omega_ev, allow_extrapolation: bool = False):
        """Return (eps_r, eps_z) at omega."""
        er = permittivity(self.radial, omega_ev, allow_extrapolation)
        if self.is_isotropic:
            return er, er
        return er, permittivity(self.axial, omega_ev, allow_extrapolation)

    def is_lossless(self, eps_r, eps_z) -> bool:
        return (np.imag(eps_r) == 0 and np.imag(eps_z) == 0
                and np.imag(complex(self.mu)) == 0)


GOLD_DRUDE = DrudeModel(eps_inf=1.0, omega_p=9.03, omega_tau=2.67e-2)
SIC = LorentzModel(eps_inf=6.7, omega_lo=0.12, omega_to=0.098, gamma=5.88e-4)

TUNGSTEN_298 = TungstenModel(
    K_0p=(12.0, 14.4, 12.9),
    lambda_sp=(1.26, 0.6, 0.3),
    delta_p=(0.6, 0.8, 0.6),
    sigma_q=(17.5, 0.21),
    lambda_rq=(45.5, 3.7),
    temperature_tag=298.0,
)
TUNGSTEN_2400 = TungstenModel(
    K_0p=(),
    lambda_sp=(),
    delta_p=(),
    sigma_q=(1.19, 0.25),
    lambda_rq=(3.66, 0.36),
    temperature_tag=2400.0,
)


def _oscillators(f, alpha, omega_t, gamma):
    return tuple(zip(f, alpha, omega_t, gamma))


GRAPHITE_IN_LAYER = GraphiteAxisModel(
    omega_p=19.0,
    gamma_0=0.091,
    f_0=0.016,
    oscillators=_oscillators(
        (0.134, 0.072, 0.307, 0.380, 0.065, 0.553, 1.381),
        (24.708, 0.524, 0.217, 0.518, 0.286, 0.248, 15.101),
        (2.358, 5.149, 13.785, 10.947, 16.988, 24.038, 36.252),
        (9.806, 472.7, 4.651, 1.797, 2.418, 21.395, 37.025),
    ),
    window=(2.0, 40.0),
)
GRAPHITE_INTER_LAYER = GraphiteAxisModel(
    omega_p=27.0,
    gamma_0=6.365,
    f_0=0.014,
    oscillators=_oscillators(
        (0.073, 0.056, 0.069, 0.005, 0.262, 0.460, 0.200),
        (0.505, 7.079, 0.362, 7.426, 0.000382, 1.387, 28.963),
        (0.275, 3.508, 4.451, 13.591, 14.226, 15.550, 32.011),
        (4.102, 7.328, 1.414, 0.046, 1.862, 11.922, 39.091),
    ),
    window=(0.12, 40.0),
)

# Photon-energy band used for room-temperature graphite emission (extrapolated).
GRAPHITE_THERMAL_BAND = (0.004, 0.2)


def builtin_materials() -> dict:
    """Named materials available from the CLI."""
    return {
        "gold-drude": MaterialSpec(GOLD_DRUDE, name="gold-drude"),
        "sic": MaterialSpec(SIC, name="sic"),
        "tungsten-298": MaterialSpec(TUNGSTEN_298, name="tungsten-298"),
        "tungsten-2400": MaterialSpec(TUNGSTEN_2400, name="tungsten-2400"),
        "graphite-uniaxial": MaterialSpec(
            GRAPHITE_INTER_LAYER, GRAPHITE_IN_LAYER,
            name="graphite-uniaxial", band=GRAPHITE_THERMAL_BAND,
        ),
        "graphite-isotropic-average": MaterialSpec(
            AverageModel(GRAPHITE_IN_LAYER, GRAPHITE_INTER_LAYER),
            name="graphite-isotropic-average", band=GRAPHITE_THERMAL_BAND,
        ),
    }


def get_material(name: str) -> MaterialSpec:
    mats = builtin_materials()
    try:
        return mats[name]
    except KeyError:
        raise KeyError(f"unknown material {name!r}; choose from {sorted(mats)}") from None


def isotropic(model, mu: complex = 1.0, name: str = "custom") -> MaterialSpec:
    return MaterialSpec(model, model, mu=mu, name=name)


def constant_material(eps, mu: complex = 1.0, eps_z=None) -> MaterialSpec:
    """Frequency-independent material; pass ``eps_z`` for a uniaxial one."""
    r = ConstantModel(complex(eps))
    if eps_z is None:
        return MaterialSpec(r, r, mu=mu, name=f"constant({eps})")
    return MaterialSpec(r, ConstantModel(complex(eps_z)), mu=mu, name=f"constant({eps},{eps_z})")
