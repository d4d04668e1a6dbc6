"""Acceptance suite: one printed PASS/FAIL line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the summary lines.
"""
import math
import time

import numpy as np

from paraell.interpolation import param_scale_identity, sobolev_scale_identity
from paraell.problems import bilaplace_dirichlet, helmholtz_dirichlet, helmholtz_robin
from paraell.rofunc import Oscillating, Power, PowerLog, matuszewska
from paraell.spaces import Spectrum, TorusGrid, equivalence_band, equivalence_ratio
from paraell.strip import (
    StripGeometry,
    estimate_scan,
    find_resonance,
    fredholm_probe,
    nodes,
    sample_modes,
    solve,
)
from paraell.symbols import (
    Angle,
    check_parameter_ellipticity,
    lopatinskii_matrix,
    root_split,
    symbol_A0,
    symbol_B0,
    tau_polynomial_A,
)

# (family, s0, s1) with s0 < lower index <= upper index < s1
FAMILIES = [
    (Power(2), 1, 3),
    (Power(0.5), 0.25, 1),
    (PowerLog(2, 1), 1, 3),
    (PowerLog(1, 1), 0.5, 2),
    (Oscillating(2, 0.3), 1, 3),
]


def report(n, ok, detail):
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_criterion_01_interpolation_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    g = TorusGrid.square(32)
    worst = 0.0
    for alpha, s0, s1 in FAMILIES:
        for _ in range(20):
            worst = max(worst, sobolev_scale_identity(Spectrum.random(g, rng), alpha, s0, s1)["relerr"])
    dt = time.perf_counter() - t0
    report(1, worst <= 1e-12 and dt < 5, f"max relerr={worst:.3g} time={dt:.2f}s")


def test_criterion_02_parameter_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(102)
    g = TorusGrid.square(32)
    worst = 0.0
    for alpha, s0, s1 in FAMILIES:
        for _ in range(5):
            u = Spectrum.random(g, rng)
            for p in (1, 10, 100, 1000):
                worst = max(worst, param_scale_identity(u, alpha, s0, s1, p)["relerr"])
    dt = time.perf_counter() - t0
    report(2, worst <= 1e-12 and dt < 5, f"max relerr={worst:.3g} time={dt:.2f}s")


def test_criterion_03_equivalence_band():
    t0 = time.perf_counter()
    rng = np.random.default_rng(103)
    g = TorusGrid.square(32)
    ps = [1, 10, 100, 1000]
    ok = True
    lines = []
    for alpha in (Power(0.5), Power(1), PowerLog(1, 1)):
        lo, hi = equivalence_band(alpha, g, ps)
        r = [equivalence_ratio(Spectrum.random(g, rng), alpha, p) for _ in range(50) for p in ps]
        ok &= lo <= min(r) and max(r) <= hi
        lines.append(f"{alpha.label}:[{min(r):.3f},{max(r):.3f}]c[{lo:.3f},{hi:.3f}]")
    dt = time.perf_counter() - t0
    report(3, ok and dt < 10, " ".join(lines) + f" time={dt:.2f}s")


def test_criterion_04_matuszewska():
    t0 = time.perf_counter()
    err = 0.0
    for s in (-2, 0, 0.5, 3):
        a, b = matuszewska(Power(s))
        err = max(err, abs(a - s), abs(b - s))
    osc = matuszewska(Oscillating(1, 0.3))
    osc_err = max(abs(osc.sigma0 - 0.7), abs(osc.sigma1 - 1.3))
    shift = 0.0
    for phi in (PowerLog(1, 1), Oscillating(1, 0.3)):
        base = matuszewska(phi)
        for s in (-1.0, 2.0):
            moved = matuszewska(phi.times_power(s))
            shift = max(shift, abs(moved.sigma0 - base.sigma0 - s), abs(moved.sigma1 - base.sigma1 - s))
    dt = time.perf_counter() - t0
    ok = err <= 1e-6 and osc_err <= 0.05 and shift <= 1e-6 and dt < 5
    report(4, ok, f"power err={err:.2g} oscillating=({osc.sigma0:.4f},{osc.sigma1:.4f}) shift err={shift:.2g}")


def test_criterion_05_verdicts():
    t0 = time.perf_counter()
    robin = check_parameter_ellipticity(helmholtz_robin(), Angle.ray(math.pi / 2))
    robin_real = check_parameter_ellipticity(helmholtz_robin(), Angle(-0.2, 0.2))
    dirichlet = check_parameter_ellipticity(helmholtz_dirichlet(), Angle.ray(math.pi / 2))
    dt = time.perf_counter() - t0
    ok = (
        robin.verdict
        and robin.min_symbol_modulus >= 0.9
        and not robin_real.verdict
        and robin_real.min_symbol_modulus < 1e-6
        and dirichlet.verdict
        and abs(dirichlet.min_lopatinskii_sigma - 1) <= 1e-9
        and dt < 10
    )
    report(5, ok, f"robin(pi/2) margin={robin.min_symbol_modulus:.3g} robin(real) margin="
                  f"{robin_real.min_symbol_modulus:.2g} dirichlet sigma={dirichlet.min_lopatinskii_sigma:.12f}")


def test_criterion_06_root_split():
    rng = np.random.default_rng(106)
    bad = 0
    worst = 0.0
    for p in (helmholtz_dirichlet(), helmholtz_robin(), bilaplace_dirichlet()):
        for _ in range(1000):
            xi_t = rng.uniform(-5, 5)
            lam = 1j * rng.uniform(0, 5)
            if abs(xi_t) + abs(lam) < 1e-3:
                continue
            x = (rng.uniform(0, 2 * np.pi), 0.0)
            poly = tau_polynomial_A(p, x, (xi_t, 0.0), (0.0, 1.0), lam)
            sp = root_split(poly)
            if len(sp.tau_plus) != p.q or len(sp.tau_minus) != p.q:
                bad += 1
            worst = max(worst, sp.residual)
    report(6, bad == 0 and worst < 1e-8, f"uneven splits={bad} max residual={worst:.2g}")


def _plateau(phi):
    p = helmholtz_dirichlet()
    g = StripGeometry(32, 64)
    lams = [4, 8, 16, 32, 64]
    up = estimate_scan(p, phi, Angle.ray(math.pi / 2), lams, g)
    real = estimate_scan(p, phi, Angle.ray(0.0), [4, 64], g)
    smin, smax = np.array(up.sigma_min()), np.array(up.sigma_max())
    r_min, r_max = smin.max() / smin.min(), smax.max() / smax.min()
    drop = real.sigma_min()[1] / real.sigma_min()[0]
    return r_min, r_max, drop


def test_criterion_07_plateau():
    t0 = time.perf_counter()
    ok = True
    parts = []
    for phi in (Power(0), PowerLog(0, 1)):
        r_min, r_max, drop = _plateau(phi)
        ok &= r_min <= 3 and r_max <= 3 and drop <= 0.1
        parts.append(f"{phi.label}: ratios=({r_min:.3f},{r_max:.3f}) drop={drop:.2g}")
    dt = time.perf_counter() - t0
    report(7, ok and dt < 60, "; ".join(parts) + f" time={dt:.1f}s")


def test_criterion_08_fredholm():
    t0 = time.perf_counter()
    p = helmholtz_dirichlet()
    g = StripGeometry(8, 32)
    res = find_resonance(p, 1, g, math.sqrt(1 + math.pi**2))
    lams = [2j, 4j, 1 + 1j, 0.5, 2.0, 5j, 3 + 2j, 10j, 7.0, res]
    probes = [fredholm_probe(p, lam, g) for lam in lams]
    ok = all(d["dimKer"] == d["dimCoker"] for d in probes) and probes[-1]["dimKer"] >= 1
    dt = time.perf_counter() - t0
    dims = [(d["dimKer"], d["dimCoker"]) for d in probes]
    report(8, ok and dt < 20, f"resonance={res.real:.8f}{res.imag:+.1e}j dims={dims}")


def test_criterion_09_homogeneity():
    rng = np.random.default_rng(109)
    worst = 0.0
    probs = [helmholtz_dirichlet(), helmholtz_robin(), bilaplace_dirichlet()]
    for i in range(100):
        p = probs[i % 3]
        x = (rng.uniform(0, 2 * np.pi), rng.uniform(0, 1))
        xi = rng.standard_normal(2)
        lam = complex(*rng.standard_normal(2))
        t = rng.uniform(0.1, 10)
        a = symbol_A0(p, x, t * xi, t * lam)
        worst = max(worst, abs(a - t ** (2 * p.q) * symbol_A0(p, x, xi, lam)) / abs(a))
        for j, op in enumerate(p.component("bottom").ops):
            b = symbol_B0(p, j, x, t * xi, t * lam, "bottom")
            ref = t**op.m * symbol_B0(p, j, x, xi, lam, "bottom")
            if abs(ref) > 1e-12:
                worst = max(worst, abs(b - ref) / abs(ref))
        # Lopatinskii determinant scaling on the elliptic ray
        xi_t = rng.uniform(-3, 3)
        lam_i = 1j * rng.uniform(0.2, 3)
        x0 = (x[0], 0.0)
        d1 = np.linalg.det(lopatinskii_matrix(p, x0, (xi_t, 0.0), (0.0, 1.0), lam_i, "bottom").C)
        d2 = np.linalg.det(lopatinskii_matrix(p, x0, (t * xi_t, 0.0), (0.0, 1.0), t * lam_i, "bottom").C)
        ms = sum(op.m for op in p.component("bottom").ops)
        expo = ms - p.q * (p.q - 1) / 2
        worst = max(worst, abs(d2 - t**expo * d1) / abs(d2))
    report(9, worst <= 1e-10, f"max relerr={worst:.2g}")


def _manufactured(N, u, f, lam=2j):
    p = helmholtz_dirichlet()
    g = StripGeometry(4, N)
    xi, _ = nodes(N)
    xu, _ = nodes(N + 2)
    G = np.concatenate([sample_modes(u, g, [0.0]), sample_modes(u, g, [1.0])], axis=1)
    sol = solve(p, lam, sample_modes(f, g, xi), G, g)
    exact = sample_modes(u, g, xu)
    return np.linalg.norm(sol.modes - exact) / np.linalg.norm(exact)


def test_criterion_10_manufactured():
    lam = 2j
    u = lambda x1, x2: np.exp(-1j * x1) * x2**2
    f = lambda x1, x2: np.exp(-1j * x1) * (2 - x2**2 + lam**2 * x2**2)
    e_poly = _manufactured(64, u, f)
    w = 90.0
    u2 = lambda x1, x2: np.exp(-1j * x1) * np.sin(w * x2)
    f2 = lambda x1, x2: np.exp(-1j * x1) * (lam**2 - 1 - w * w) * np.sin(w * x2)
    e64, e128 = _manufactured(64, u2, f2), _manufactured(128, u2, f2)
    ok = e_poly < 1e-6 and e64 < 1e-6 and e128 < e64
    report(10, ok, f"polynomial N=64 relerr={e_poly:.2g}; oscillatory N=64 {e64:.2g} -> N=128 {e128:.2g}")
