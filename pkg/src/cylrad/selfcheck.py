"""Embedded invariant suite behind ``cylrad selfcheck``.

Every check draws from a fixed random stream, so two runs of the same
build print byte-identical reports.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .materials import constant_material, get_material
from .radiation import mode_sum
from .specfun import bessel_j, bessel_j_prime, hankel1, hankel1_prime, wronskian_residual
from .tmatrix import ModeIndex, t_block_isotropic, t_block_oracle, t_block_uniaxial


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    limit: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.name:<22s} max_residual={self.residual:.3e} limit={self.limit:.1e}"


def random_lossy_tuples(count: int, seed: int = 2024, uniaxial: bool = True):
    """Random ``(eps_r, eps_z, R, mode)`` tuples for T-matrix cross-checks.

    Permittivities span dielectrics and conductors with Im eps in
    [1e-3, 30]; size parameters ``kR`` span [0.05, 30] and the exterior
    argument ``qR`` stays above 1e-2.
    """
    rng = np.random.default_rng(seed)
    omega = 1.0e15  # rad/s; only kR matters
    k = omega / 2.99792458e8
    out = []
    while len(out) < count:
        er = complex(rng.uniform(-30, 30), 10 ** rng.uniform(-3, 1.5))
        ez = complex(rng.uniform(-30, 30), 10 ** rng.uniform(-3, 1.5)) if uniaxial else er
        kR = 10 ** rng.uniform(np.log10(0.05), np.log10(30))
        kt = rng.uniform(-0.95, 0.95)
        n = int(rng.integers(-8, 9))
        R = kR / k
        if kR * np.sqrt(1 - kt * kt) < 1e-2:
            continue
        out.append((er, ez, R, ModeIndex(n, kt * k, omega)))
    return out


def _rel(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def check_oracle(count: int = 60, eps_offset: complex = 0.0, limit: float = 1e-8) -> CheckResult:
    worst = 0.0
    for er, ez, R, mode in random_lossy_tuples(count):
        closed = t_block_uniaxial(er + eps_offset, ez + eps_offset, 1.0, R, mode)
        ref = t_block_oracle(er, ez, 1.0, R, mode)
        worst = max(worst, _rel(closed.elements(), ref.elements()))
    return CheckResult("oracle-equivalence", worst <= limit, worst, limit)


def check_isotropic(count: int = 60, eps_offset: complex = 0.0, limit: float = 1e-10) -> CheckResult:
    worst = 0.0
    for er, _, R, mode in random_lossy_tuples(count, seed=7, uniaxial=False):
        a = t_block_uniaxial(er + eps_offset, er + eps_offset, 1.0, R, mode)
        b = t_block_isotropic(er, 1.0, R, mode)
        worst = max(worst, _rel(a.elements(), b.elements()))
    return CheckResult("isotropic-reduction", worst <= limit, worst, limit)


def check_wronskian(count: int = 60, limit: float = 1e-9) -> CheckResult:
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(0, 30))
        z = complex(10 ** rng.uniform(-1, 2), rng.uniform(-5, 5))
        worst = max(worst, wronskian_residual(
            bessel_j(n, z), bessel_j_prime(n, z), hankel1(n, z), hankel1_prime(n, z), z))
    return CheckResult("wronskian", worst <= limit, worst, limit)


def check_dual(eps_offset: complex = 0.0, limit: float = 1e-10) -> CheckResult:
    cases = [
        (get_material("gold-drude"), 1e-7, 0.05),
        (get_material("sic"), 1e-6, 0.11),
        (constant_material(3 + 0.5j, eps_z=-20 + 4j), 2e-6, 0.3),
    ]
    worst = 0.0
    for mat, R, w in cases:
        r = mode_sum(mat, R, w, 300.0, eps_offset=eps_offset)
        worst = max(worst, r.dual_residual)
    return CheckResult("dual-formula", worst <= limit, worst, limit)


def run_selfcheck(eps_offset: complex = 0.0):
    """Run all checks; ``eps_offset`` perturbs the closed-form T-matrix only."""
    return [
        check_oracle(eps_offset=eps_offset),
        check_wronskian(),
        check_dual(),
        check_isotropic(eps_offset=eps_offset),
    ]
