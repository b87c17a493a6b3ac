"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""
import io
import math
import time

import numpy as np
import pytest

from cylrad.cli import RunConfig, run
from cylrad.constants import stefan_boltzmann_flux, wavelength_um_to_ev
from cylrad.materials import GRAPHITE_THERMAL_BAND, LowFrequencyModel, constant_material, get_material, isotropic
from cylrad.plate import fresnel_uniaxial, plate_emissivity
from cylrad.radiation import (
    conductor_asymptotic,
    degree_of_polarization_lowT,
    lowT_dielectric,
    mode_sum,
    pollimit,
    smallR_dielectric,
    spectral_emissivity,
    total_radiation,
)
from cylrad.selfcheck import check_isotropic, check_oracle, check_wronskian, random_lossy_tuples
from cylrad.tmatrix import t_block_uniaxial


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        return ok
    return emit


def test_criterion_01_oracle_equivalence(report):
    t0 = time.perf_counter()
    res = check_oracle(count=1000, limit=1e-8)
    dt = time.perf_counter() - t0
    ok = res.passed and dt < 30
    report(1, ok, f"max rel error {res.residual:.3e} <= 1e-8 over 1000 tuples, {dt:.2f} s")
    assert ok


def test_criterion_02_isotropic_reduction(report):
    res = check_isotropic(count=1000, limit=1e-10)
    report(2, res.passed, f"max rel error {res.residual:.3e} <= 1e-10 over 1000 tuples")
    assert res.passed


def test_criterion_03_small_radius_law(report):
    t0 = time.perf_counter()
    sic = get_material("sic")
    R = 1e-8
    full = total_radiation(sic, R, 300.0)
    h_n, h_m = smallR_dielectric(sic, R, 300.0)
    area = 2 * math.pi * R
    dev_n = abs(full.h_npol / area / h_n - 1)
    dev_m = abs(full.h_mpol / area / h_m - 1)
    dt = time.perf_counter() - t0
    ok = dev_n < 0.01 and dev_m < 0.01 and dt < 120
    report(3, ok, f"SiC 300 K R=10 nm deviation N {dev_n:.2e}, M {dev_m:.2e} (< 1%), {dt:.1f} s")
    assert ok


def test_criterion_04_t6_scaling(report):
    a = lowT_dielectric(3.0, 1e-7, 5e-9, 10.0)
    b = lowT_dielectric(3.0, 1e-7, 5e-9, 20.0)
    closed = (b[0] + b[1]) / (a[0] + a[1])
    m = isotropic(LowFrequencyModel(3.0, 1e-7))
    full = total_radiation(m, 5e-9, 20.0).h_total / total_radiation(m, 5e-9, 10.0).h_total
    ok = closed == 64.0 and abs(full / 64.0 - 1) < 0.03
    report(4, ok, f"closed-form ratio {closed!r}, full numerics ratio {full:.5f} (64 within 3%)")
    assert ok


def test_criterion_05_degree_of_polarization(report):
    grid = np.geomspace(1e-3, 1e3, 400)
    vals = np.array([degree_of_polarization_lowT(e) for e in grid])
    i3 = degree_of_polarization_lowT(3.0)
    i1 = degree_of_polarization_lowT(1.0)
    mono = bool(np.all(np.diff(vals) > 0))
    ok = i3 == 0.5 and i1 == 0.0 and mono
    report(5, ok, f"I(3) = {i3!r}, I(1) = {i1!r}, monotone on 400-point grid: {mono}")
    assert ok


def _longest_window(radii, dev, limit):
    best = 0.0
    start = None
    for R, d in zip(radii, dev):
        if d <= limit:
            start = R if start is None else start
            best = max(best, math.log10(R / start))
        else:
            start = None
    return best


def test_criterion_06_conductor_regime(report):
    gold = get_material("gold-drude")
    radii = np.geomspace(1e-7, 1e-5, 17)
    dev30 = []
    for R in radii:
        full = total_radiation(gold, R, 30.0).h_npol / (2 * math.pi * R)
        dev30.append(abs(conductor_asymptotic(gold, R, 30.0) / full - 1))
    span = _longest_window(radii, dev30, 0.15)
    dev300 = []
    for R in np.geomspace(1e-8, 1e-5, 13):
        full = total_radiation(gold, R, 300.0).h_npol / (2 * math.pi * R)
        dev300.append(abs(conductor_asymptotic(gold, R, 300.0) / full - 1))
    best300 = min(dev300)
    ok = span >= 1.0 and best300 <= 0.5
    report(6, ok, f"30 K: within 15% over {span:.2f} decades (need >= 1); "
                  f"300 K best deviation {best300:.3f} (<= 0.5)")
    assert ok


def test_criterion_07_conductor_peak(report):
    gold = get_material("gold-drude")
    radii = np.geomspace(1e-9, 1e-4, 31)
    res = [total_radiation(gold, R, 300.0) for R in radii]
    norm = np.array([r.normalized for r in res])
    pol = np.array([r.i_total for r in res])
    k = int(np.argmax(norm))
    interior = 0 < k < len(radii) - 1
    rising = bool(np.all(np.diff(norm[: k + 1]) > 0))
    falling = bool(np.all(np.diff(norm[k:]) < 0))
    single = interior and rising and falling
    thin = pol[radii <= 1e-7 * (1 + 1e-12)]
    ok = single and norm[k] > 10 and bool(np.all(thin > 0.99))
    report(7, ok, f"single interior maximum {single} at R = {radii[k]:.3g} m, peak {norm[k]:.3f} "
                  f"(need > 10); min I for R <= 100 nm {thin.min():.4f} (need > 0.99)")
    assert ok


def test_criterion_08_dual_formula_identity(report):
    worst = 0.0
    count = 0
    cases = [
        (get_material("sic"), 1e-8, 300.0, np.geomspace(0.006, 1.0, 25), False),
        (get_material("gold-drude"), 1e-7, 300.0, np.geomspace(0.006, 1.0, 25), False),
        (get_material("gold-drude"), 5e-5, 300.0, np.geomspace(0.006, 1.0, 9), False),
        (get_material("tungsten-298"), 5e-6, 298.0, wavelength_um_to_ev(np.geomspace(1, 300, 25)), False),
        (get_material("graphite-uniaxial"), 5e-6, 300.0, np.geomspace(*GRAPHITE_THERMAL_BAND, 25), True),
        (isotropic(LowFrequencyModel(3.0, 1e-7)), 5e-9, 10.0, np.geomspace(2e-5, 0.03, 25), False),
    ]
    for mat, R, T, grid, ext in cases:
        s = spectral_emissivity(mat, R, T, grid, allow_extrapolation=ext)
        worst = max(worst, float(np.max(s.dual_residual)))
        count += grid.size
    r = total_radiation(get_material("gold-drude"), 1e-6, 300.0)
    worst = max(worst, r.quadrature_report["max_dual_residual"])
    count += r.quadrature_report["omega_evaluations"]
    ok = worst <= 1e-10
    report(8, ok, f"max relative T/S-form gap {worst:.3e} <= 1e-10 over {count} spectral evaluations")
    assert ok


def test_criterion_09_uniaxial_plate(report):
    t0 = time.perf_counter()
    g = get_material("graphite-uniaxial")
    res = plate_emissivity(g, 300.0, allow_extrapolation=True, band=g.band)
    dt = time.perf_counter() - t0
    ok = abs(res.i_plate + 0.297) <= 0.02 and dt < 60
    report(9, ok, f"graphite plate I = {res.i_plate:.4f} (target -0.297 +- 0.02), {dt:.1f} s")
    assert ok


def test_criterion_10_spectral_polarization(report):
    w = get_material("tungsten-298")
    far = spectral_emissivity(w, 5e-6, 298.0, wavelength_um_to_ev(np.array([300.0])))
    i_far = float(far.i_omega[0])
    lam = np.geomspace(5, 30, 61)
    s = spectral_emissivity(w, 5e-6, 298.0, wavelength_um_to_ev(lam))
    flips = int(np.sum(np.signbit(s.i_omega[1:]) != np.signbit(s.i_omega[:-1])))
    gaps = []
    for eps in (3 + 0.5j, 10 + 2j, 1.5 + 0.01j, -3 + 1j):
        lw = spectral_emissivity(constant_material(eps), 1e-8, 300.0,
                                 wavelength_um_to_ev(np.array([3000.0])))
        gaps.append(abs(lw.i_omega[0] - pollimit(eps)))
    ok = abs(i_far - 1) <= 0.02 and flips == 1 and max(gaps) <= 1e-3
    report(10, ok, f"I_omega(300 um) = {i_far:.4f} (need within 0.02 of 1); sign changes in "
                   f"[5, 30] um: {flips}; long-wavelength gap to closed form {max(gaps):.2e}")
    assert ok


def _csv(workers):
    out = io.StringIO()
    cfg = RunConfig("spectrum", material="gold-drude", radius=2e-6, temperature=300.0,
                    omega=(0.01, 0.3, 8), workers=workers)
    cfg.validate()
    run(cfg, out)
    return out.getvalue()


def test_criterion_11_property_suite(report):
    worst_passive = -math.inf
    worst_s = -math.inf
    for er, ez, R, mode in random_lossy_tuples(1000, seed=17):
        blk = t_block_uniaxial(er, ez, 1.0, R, mode)
        worst_passive = max(worst_passive, blk.absorption("M"), blk.absorption("N"))
        s = blk.s_matrix()
        worst_s = max(worst_s, float(np.max(np.linalg.svd(s, compute_uv=False))) - 1)
    rng = np.random.default_rng(4)
    kap = rng.uniform(0, 0.99, 200)
    phi = rng.uniform(0, 2 * np.pi, 200)
    r = fresnel_uniaxial(29 + 140j, -300 + 290j, 1.0, 0.1, kap * 0.1 / 1.973269804e-7, phi)
    refl = np.stack([[r.r_ss, r.r_sp], [r.r_ps, r.r_pp]]).transpose(2, 0, 1)
    worst_s = max(worst_s, float(np.max(np.linalg.svd(refl, compute_uv=False))) - 1)
    wr = check_wronskian(count=500, limit=1e-9)
    gold = get_material("gold-drude")
    a = mode_sum(gold, 3e-7, 0.08, 300.0, 77.0)
    b = mode_sum(gold, 3e-7, 0.08, 77.0, 300.0)
    anti = max(abs(a.h_n + b.h_n) / abs(a.h_n), abs(a.h_m + b.h_m) / abs(a.h_m))
    same = _csv(1) == _csv(2) == _csv(1)
    ok = worst_passive <= 1e-12 and worst_s <= 1e-12 and wr.passed and anti < 1e-13 and same
    report(11, ok, f"max absorption term {worst_passive:.2e} (<= 0), max singular value - 1 "
                   f"{worst_s:.2e}, Wronskian {wr.residual:.2e}, antisymmetry {anti:.1e}, "
                   f"CSV identical across worker counts: {same}")
    assert ok
    assert stefan_boltzmann_flux(300.0) > 0
