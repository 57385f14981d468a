"""Oracle and regression checks behind ``twobridge verify``.

Each check returns (name, passed, detail).  The list is meant to finish in
about a minute at 256 bits; the full-grid regressions live in the test suite.
"""
from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from .invariants import chern_simons, cyclic_cover, lens_cs, longitude_L, longitude_L_from_block, volume
from .reference import SPOT_K, SPOT_N, TABLE1, TABLE2
from .rmpoly import cone_m, rm_c2n4, symmetry_center, trace_ratio_normalized
from .solver import PrecisionConfig, cone_geometry, geometric_root, roots_at


def check_oracle():
    bad = [n for n in (1, 2, 3, 4, 5, -1, -2, -3, -4, -5) if trace_ratio_normalized(n) != rm_c2n4(n)]
    return "recursion equals trace oracle (|n| <= 5)", not bad, "exact" if not bad else f"mismatch at n={bad}"


def check_alpha0(cfg, n_values):
    worst, where = 0.0, None
    for n in n_values:
        err = abs(float(cone_geometry(n, cfg).alpha0 - mpmath.mpf(TABLE1[n][0])))
        if err >= worst:
            worst, where = err, n
    return f"alpha0 regression ({len(n_values)} rows, tol 1e-8)", worst <= 1e-8, f"max |d| = {worst:.2e} at n={where}"


def check_lens():
    bad = [n for n in range(-50, 51) if n and lens_cs(n) != Fraction(7 * n + 3, 8 * n + 1) % 1]
    ok = not bad and lens_cs(2) == 0
    return "lens constant (|n| <= 50)", ok, "exact" if ok else f"mismatch at n={bad}"


def check_reciprocal():
    bad = []
    for n in [m for m in range(-8, 9) if m]:
        P = rm_c2n4(n)
        if P.reciprocal_m().shift_m(2 * symmetry_center(n)) != P:
            bad.append(n)
    return "M <-> 1/M coefficient symmetry (|n| <= 8)", not bad, "exact" if not bad else f"fails at n={bad}"


def check_conjugate_roots(cfg):
    worst = mpmath.mpf(0)
    with cfg.workprec():
        for n in (1, -1, 2, 3):
            roots = roots_at(n, mpmath.mpf("1.7"), cfg)
            for r in roots:
                worst = max(worst, min(abs(mpmath.conj(r) - s) for s in roots))
    return "conjugate-root symmetry", worst < mpmath.mpf(2) ** (-cfg.mantissa_bits // 2), f"max gap {mpmath.nstr(worst, 3)}"


def check_longitude(cfg, samples=20, seed=7):
    rng = random.Random(seed)
    worst = mpmath.mpf(0)
    with cfg.workprec():
        for _ in range(samples):
            n = rng.choice([m for m in range(-4, 5) if m])
            x = mpmath.mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
            alpha = mpmath.mpf(rng.uniform(0.1, 3.1))
            a, b = longitude_L(x, alpha), longitude_L_from_block(n, x, alpha)
            worst = max(worst, abs(a - b) / abs(a))
    tol = mpmath.mpf(2) ** -128
    return f"longitude closed form vs block word ({samples} samples)", worst < tol, f"max rel {mpmath.nstr(worst, 3)}"


def check_schlafli(cfg, n=1, angles=("1.0", "1.8", "2.3"), h="1e-4", panels=400):
    worst = 0.0
    with cfg.workprec():
        h = mpmath.mpf(h)
        for a in angles:
            a = mpmath.mpf(a)
            fd = (volume(n, a + h, panels, cfg) - volume(n, a - h, panels, cfg)) / (2 * h)
            x = geometric_root(n, a, cfg)
            l_alpha = 2 * mpmath.log(abs(longitude_L(x, a)))
            worst = max(worst, abs(float(fd + l_alpha / 2)))
    return f"Schlafli finite difference (n={n})", worst < 1e-6, f"max |dV/da + l/2| = {worst:.2e}"


def check_spot_set(cfg, panels=100):
    worst = 0.0
    for n in SPOT_N:
        for k in SPOT_K:
            res = cyclic_cover(n, k, panels, cfg)
            cs_ref, cover_ref = (mpmath.mpf(v) for v in TABLE2[n][k])
            worst = max(worst, abs(float(res.orbifold_cs.value - cs_ref)))
            d = abs(float(res.cs.value - cover_ref))
            worst = max(worst, min(d, 1 - d))
    return "orbifold and cover cs spot set (tol 1e-4)", worst <= 1e-4, f"max |d| = {worst:.2e}"


def check_amphichiral(cfg, panels=100):
    worst = max(float(chern_simons(2, k, panels, cfg).value) for k in range(3, 11))
    return "cs(X_4(2pi/k)) = 0 for k in 3..10", worst < 1e-6, f"max {worst:.2e}"


def run_checks(cfg: PrecisionConfig, n_values=None):
    n_values = list(n_values) if n_values else sorted(TABLE1, key=lambda n: (n < 0, abs(n)))
    n_values = [n for n in n_values if n in TABLE1]
    return [
        check_oracle(),
        check_lens(),
        check_reciprocal(),
        check_conjugate_roots(cfg),
        check_longitude(cfg),
        check_alpha0(cfg, n_values),
        check_schlafli(cfg),
        check_spot_set(cfg),
        check_amphichiral(cfg),
    ]
