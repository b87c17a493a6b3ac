"""Thermal radiation of long cylinders of isotropic and uniaxial materials.

The package is organized bottom-up:

* :mod:`cylrad.specfun` -- Bessel/Hankel functions and log-derivatives;
* :mod:`cylrad.materials` -- dielectric models and tabulated data;
* :mod:`cylrad.tmatrix` -- the 2x2 cylinder T-matrix and its cross-checks;
* :mod:`cylrad.plate` -- uniaxial half-space reflection and plate emission;
* :mod:`cylrad.radiation` -- spectral and total radiation, asymptotic laws;
* :mod:`cylrad.cli` -- command-line front end.
"""
from .kernels import BACKEND
from .materials import MaterialSpec, constant_material, get_material, isotropic, load_tabulated
from .plate import fresnel_isotropic, fresnel_uniaxial, plate_emissivity
from .radiation import (
    EmissionSpectrum,
    RadiationResult,
    Tolerances,
    conductor_asymptotic,
    lowT_dielectric,
    mode_sum,
    polarization_condition,
    pollimit,
    rytov_approx,
    smallR_dielectric,
    spectral_emissivity,
    total_radiation,
)
from .tmatrix import ModeIndex, t_block_isotropic, t_block_oracle, t_block_uniaxial

__all__ = [
    "BACKEND", "MaterialSpec", "constant_material", "get_material", "isotropic", "load_tabulated",
    "fresnel_isotropic", "fresnel_uniaxial", "plate_emissivity", "EmissionSpectrum",
    "RadiationResult", "Tolerances", "conductor_asymptotic", "lowT_dielectric", "mode_sum",
    "polarization_condition", "pollimit", "rytov_approx", "smallR_dielectric",
    "spectral_emissivity", "total_radiation", "ModeIndex", "t_block_isotropic",
    "t_block_oracle", "t_block_uniaxial",
]

__version__ = "0.1.0"
