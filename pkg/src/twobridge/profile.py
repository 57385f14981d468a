"""Branch and integrand samples along an alpha grid, for external plotting."""
from __future__ import annotations

import mpmath

from .invariants import branch_samples, decimal, volume
from .solver import EUCLIDEAN, HYPERBOLIC, SPHERICAL, PrecisionConfig, cone_geometry


def _merged_nodes(T, panels, extra):
    """Uniform t-grid on [0, T] with the requested sample points spliced in."""
    base = {T * k / panels for k in range(panels + 1)}
    return sorted(base | set(extra))


def profile_rows(n: int, a_from, a_to, points: int, panels: int, cfg: PrecisionConfig) -> list[dict]:
    """One row per alpha in linspace(a_from, a_to, points).

    ``beta`` is the unwrapped argument of L: the hyperbolic one below alpha0
    and that of the first spherical root above it.
    """
    geo = cone_geometry(n, cfg)
    bits = cfg.mantissa_bits
    with cfg.workprec():
        a0, a1 = mpmath.mpf(a_from), mpmath.mpf(a_to)
        grid = [a0 + (a1 - a0) * i / (points - 1) for i in range(points)]
        regimes = [geo.regime(a) for a in grid]
        samples = {}
        hyp = [a for a, r in zip(grid, regimes) if r == HYPERBOLIC]
        if hyp:
            ts = {a: mpmath.sqrt(geo.alpha0 - a) for a in hyp}
            nodes = _merged_nodes(max(ts.values()), panels, ts.values())
            xs, logs, args = branch_samples(n, -1, nodes, cfg)
            at = dict(zip(nodes, zip(xs, logs, args)))
            samples.update({a: at[ts[a]] for a in hyp})
        sph = [a for a, r in zip(grid, regimes) if r == SPHERICAL]
        if sph:
            T = mpmath.sqrt(mpmath.pi - geo.alpha0)
            ts = {a: mpmath.sqrt(a - geo.alpha0) for a in sph}
            nodes = _merged_nodes(T, panels, ts.values())
            xs, logs, args = branch_samples(n, 1, nodes, cfg, which=1)
            at = dict(zip(nodes, zip(xs, logs, args)))
            samples.update({a: at[ts[a]] for a in sph})
        rows = []
        for a, regime in zip(grid, regimes):
            if regime == EUCLIDEAN:
                x, logL, beta = mpmath.mpc(geo.x0), mpmath.mpf(0), None
                beta = _euclidean_beta(n, cfg)
            else:
                x, logL, beta = samples[a]
            vol = volume(n, a, panels, cfg) if regime == HYPERBOLIC else mpmath.mpf(0)
            rows.append({
                "alpha": decimal(a, bits),
                "re_x": decimal(x.real, bits),
                "im_x": decimal(x.imag, bits),
                "log_abs_L": decimal(logL, bits),
                "l_alpha": decimal(2 * abs(logL), bits),
                "vol_partial": decimal(vol, bits),
                "beta": decimal(beta, bits),
                "regime": regime,
            })
    return rows


def _euclidean_beta(n, cfg):
    from .invariants import TABLE2_PANELS, _spherical_part

    return _spherical_part(n, TABLE2_PANELS, cfg)[1]
