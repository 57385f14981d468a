"""Roots of P_2n(x, e^{i alpha/2}), the geometric branch, and alpha_0.

The geometric component passes through two real anchor roots at alpha = pi.
Continuing that pair downward, the two real roots collide at alpha_0 and
become a complex-conjugate pair; below alpha_0 the root with Im x <= 0 is
the hyperbolic branch.  Near alpha_0 both sides are square-root branches,
so all tracking is done in t with alpha = alpha_0 +- t^2, where x(t) is
analytic.
"""
from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from . import gmp
from .errors import GeometryError, InvalidKnotError, RegimeError, SolverFailure
from .rmpoly import RealFormEvaluator, RMEvaluator, cone_m, expected_degree, rm_c2n4, symmetry_center

HYPERBOLIC, EUCLIDEAN, SPHERICAL = "hyperbolic", "euclidean", "spherical"


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision and tolerances; defaults derive from mantissa_bits."""

    mantissa_bits: int = 256
    root_residual_tol: float | None = None
    collision_tol: float | None = None

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be >= 64")
        if self.root_residual_tol is None:
            object.__setattr__(self, "root_residual_tol", 2.0 ** (-self.mantissa_bits / 2))
        if self.collision_tol is None:
            object.__setattr__(self, "collision_tol", 2.0 ** (-self.mantissa_bits / 4))
        if not 0 < self.root_residual_tol < 1 or not 0 < self.collision_tol < 1:
            raise ValueError("tolerances must lie in (0, 1)")

    def workprec(self):
        return mpmath.workprec(self.mantissa_bits)

    @property
    def eps(self):
        """Newton stopping threshold, a few bits above the working epsilon."""
        return mpmath.mpf(2) ** (8 - self.mantissa_bits)


DEFAULT = PrecisionConfig()


def _check_n(n):
    if n == 0:
        raise InvalidKnotError("n must be nonzero")


# ---------------------------------------------------------------------------
# all roots at once


def _relative_residual(coeffs, z):
    val = mpmath.polyval(coeffs[::-1], z)
    scale = sum(abs(c) * abs(z) ** j for j, c in enumerate(coeffs))
    return abs(val) / scale if scale else abs(val)


def aberth(coeffs, cfg: PrecisionConfig = DEFAULT, start=None, max_iter=200, seed=0):
    """Simultaneous Aberth-Ehrlich iteration for the roots of sum c_j x^j.

    ``coeffs`` are ascending.  Initial guesses come from a double-precision
    companion solve unless ``start`` is given; restarts perturb randomly.
    """
    deg = len(coeffs) - 1
    lead = coeffs[-1]
    c = [ci / lead for ci in coeffs]
    dc = [j * c[j] for j in range(1, deg + 1)]
    rng = random.Random(seed)
    stop = mpmath.mpf(2) ** (16 - mpmath.mp.prec)
    worst = None
    for attempt in range(4):
        if start is not None and attempt == 0:
            z = [mpmath.mpc(s) for s in start]
        else:
            try:
                z0 = np.roots(np.array([complex(ci) for ci in reversed(c)]))
                if len(z0) != deg or not np.all(np.isfinite(z0)):
                    raise np.linalg.LinAlgError
            except np.linalg.LinAlgError:
                z0 = [np.exp(2j * np.pi * (k + 0.25) / deg) for k in range(deg)]
            z = [mpmath.mpc(complex(zi)) for zi in z0]
            if attempt > 1:
                z = [zi * (1 + mpmath.mpf(rng.uniform(-1e-3, 1e-3))) + mpmath.mpc(0, rng.uniform(-1e-3, 1e-3))
                     for zi in z]
        prev = None
        for _ in range(max_iter):
            biggest = 0
            for i in range(deg):
                zi = z[i]
                p = dp = 0
                for j in range(deg, -1, -1):
                    if j < deg:
                        dp = dp * zi + dc[j]
                    p = p * zi + c[j]
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mpmath.mpf(1)
                s = mpmath.fsum(1 / (zi - z[j]) for j in range(deg) if j != i and z[j] != zi)
                w = ratio / (1 - ratio * s)
                z[i] = zi - w
                biggest = max(biggest, abs(w) / (1 + abs(z[i])))
            if biggest < stop:
                break
            # rounding noise floor reached: corrections stopped shrinking
            if prev is not None and biggest < stop**0.5 and biggest > prev / 2:
                break
            prev = biggest
        worst = max(_relative_residual(coeffs, zi) for zi in z)
        if worst < stop ** 0.5:
            return z
    raise SolverFailure(f"Aberth iteration did not converge (worst residual {mpmath.nstr(worst, 5)})",
                        residual=worst)


def roots_at(n: int, alpha, cfg: PrecisionConfig = DEFAULT) -> list:
    """All roots of P_2n(., e^{i alpha/2}), with multiplicity."""
    _check_n(n)
    with cfg.workprec():
        alpha = mpmath.mpf(alpha)
        if not 0 < alpha <= mpmath.pi:
            raise RegimeError(f"alpha must lie in (0, pi], got {alpha}")
        with mpmath.workprec(cfg.mantissa_bits + 32 + 4 * abs(n)):
            coeffs = RMEvaluator(n, cone_m(alpha)).coefficients()
            if len(coeffs) - 1 != expected_degree(n):
                raise ArithmeticError(f"P_2n for n={n} has degree {len(coeffs) - 1}, expected {expected_degree(n)}")
            z = aberth(coeffs, cfg)
            worst = max(_relative_residual(coeffs, zi) for zi in z)
        if worst > cfg.root_residual_tol:
            raise SolverFailure(f"root residual {mpmath.nstr(worst, 5)} above tolerance", residual=worst)
        return sorted((+zi for zi in z), key=lambda v: (float(v.real), float(v.imag)))


def anchor_roots(n: int):
    """The real roots at alpha = pi through which the geometric component passes."""
    _check_n(n)
    p = 8 * n + 1
    x1 = 2 - 2 * mpmath.cos(mpmath.pi * (-2 * n + 1) / p)
    x2 = 2 - 2 * mpmath.cos(mpmath.pi * (-2 * n - 1) / p)
    return x1, x2


# ---------------------------------------------------------------------------
# Newton and path tracking


def newton(ev, x, cfg: PrecisionConfig = DEFAULT, max_iter=30, real=False):
    """Polish a root of ``ev``; returns (x, first_correction) or raises SolverFailure.

    Works for mpmath and gmpy2 numbers alike (thresholds are floats).
    """
    eps = 2.0 ** (8 - cfg.mantissa_bits)
    half = 2.0 ** ((8 - cfg.mantissa_bits) / 2)
    first = None
    for _ in range(max_iter):
        v, d = ev.value_and_derivative(x)
        if d == 0:
            raise SolverFailure("vanishing derivative during Newton iteration")
        dx = v / d
        if real:
            dx = dx.real
        x = x - dx
        if first is None:
            first = abs(dx)
        size = abs(dx) / (1 + abs(x))
        if size <= eps:
            return x, first
        if size <= half:
            # quadratic convergence: one more step reaches eps
            v, d = ev.value_and_derivative(x)
            dx = v / d
            return (x - (dx.real if real else dx)), first
    raise SolverFailure("Newton iteration did not converge", residual=float(abs(ev(x))))


def _hermite(t0, x0, d0, t1, x1, d1, t):
    """Cubic Hermite through (t0, x0, x0') and (t1, x1, x1'), evaluated at t."""
    h = t1 - t0
    s = (t - t0) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * x0 + h10 * h * d0 + h01 * x1 + h11 * h * d1


def _tangent(n, alpha0, direction, t, x):
    """dx/dt on the branch alpha = alpha0 + direction t^2 (implicit differentiation)."""
    _, rx, ra = RealFormEvaluator(n, alpha0 + direction * t * t).derivatives(x)
    return -ra * 2 * direction * t / rx


def track_t(n, alpha0, direction, t_nodes, x0, slope, cfg: PrecisionConfig = DEFAULT, max_halvings=40):
    """Track a root along alpha = alpha0 + direction * t^2 through ``t_nodes``.

    ``t_nodes`` is increasing and starts at 0 where the root is ``x0`` with
    dx/dt = ``slope``.  The predictor is the cubic Hermite extrapolant of
    the last two accepted points and their tangents; a step is halved
    whenever Newton needs a correction that is large compared with the
    predicted move.  The loop runs on gmpy2; inputs and outputs are mpmath
    numbers.
    """
    tol = cfg.root_residual_tol
    with gmp.context(cfg.mantissa_bits):
        alpha0, slope = gmp.to_gmp(alpha0), gmp.to_gmp(slope)
        nodes = [gmp.to_gmp(t) for t in t_nodes]
        last = (nodes[0], gmp.to_gmp(x0), slope)
        prev = None
        out = [last[1]]
        for target in nodes[1:]:
            t_cur = last[0]
            h = target - t_cur
            halvings = 0
            while t_cur < target:
                t_next = min(t_cur + h, target)
                if prev is None:
                    guess = last[1] + last[2] * (t_next - last[0])
                else:
                    guess = _hermite(*prev, *last, t_next)
                move = abs(guess - last[1])
                ev = RealFormEvaluator(n, alpha0 + direction * t_next * t_next)
                try:
                    x, corr = newton(ev, guess, cfg, max_iter=12)
                    ok = corr <= 0.25 * move + tol
                except SolverFailure:
                    ok = False
                if not ok:
                    halvings += 1
                    if halvings > max_halvings:
                        raise SolverFailure(f"step underflow while tracking n={n} near t={float(t_cur):.10g}")
                    h /= 2
                    continue
                prev, last = last, (t_next, x, _tangent(n, alpha0, direction, t_next, x))
                t_cur = t_next
            out.append(last[1])
        return [gmp.to_mp(x) for x in out]


# ---------------------------------------------------------------------------
# alpha_0 and the double root


@dataclass(frozen=True)
class ConeGeometry:
    """Transition data of one knot C(2n,4).

    ``x0`` is the real double root at alpha0; near it the spherical pair is
    x0 +- slope_spherical * t (alpha = alpha0 + t^2, ``+`` gives the branch
    through the first anchor) and the hyperbolic branch is
    x0 + slope_hyperbolic * t (alpha = alpha0 - t^2) with Im <= 0.
    """

    n: int
    alpha0: object
    x0: object
    slope_spherical: object
    slope_hyperbolic: object
    bracket: tuple
    bits: int
    derivative_at_double_root: object = None

    def regime(self, alpha) -> str:
        if abs(alpha - self.alpha0) <= mpmath.mpf(2) ** (-self.bits // 2):
            return EUCLIDEAN
        return HYPERBOLIC if alpha < self.alpha0 else SPHERICAL

    def to_json(self, tol=None) -> dict:
        return {
            "n": self.n,
            "alpha0": mpmath.nstr(self.alpha0, _digits(self.bits), strip_zeros=False),
            "bits": self.bits,
            "tol": mpmath.nstr(mpmath.mpf(tol if tol is not None else 2.0 ** (-self.bits / 4)), 6),
        }


def _digits(bits: int) -> int:
    return max(int(bits / 3.32), 15)


def _real_system(P, c, x, alpha):
    """R = M^-c P and derivatives; all real for real x on |M| = 1."""
    M = cone_m(alpha)
    ev = lambda nx, na: P.evaluate(x, M, x_derivs=nx, alpha_derivs=na, shift=-c).real
    return ev(0, 0), ev(1, 0), ev(2, 0), ev(0, 1), ev(1, 1)


def _march_pair(n, cfg: PrecisionConfig, h0=mpmath.mpf("0.01")):
    """Follow the anchor pair down from pi until it stops being real and separated.

    Bisection-style step halving on the predicate "Newton from the previous
    pair converges to two real roots whose separation dominates the move".
    Returns (alpha_ok, pair_ok, alpha_bad) with alpha_ok - alpha_bad tiny;
    the predicate is conservative, so alpha0 lies just below alpha_ok.
    """
    lower = 2 * mpmath.pi / 3
    alpha = mpmath.pi
    pair = list(anchor_roots(n))
    ev = RealFormEvaluator(n, alpha)
    pair = [newton(ev, p, cfg, real=True)[0] for p in pair]
    h = h0
    stop = mpmath.mpf("1e-7")
    while h > stop:
        trial = alpha - h
        if trial < lower - h0:
            raise GeometryError(f"no collision of the geometric pair found in [2pi/3, pi) for n={n}")
        ev = RealFormEvaluator(n, trial)
        try:
            new = [newton(ev, p, cfg, max_iter=25, real=True)[0] for p in pair]
            good = abs(new[0] - new[1]) > 3 * max(abs(new[0] - pair[0]), abs(new[1] - pair[1]))
        except SolverFailure:
            good = False
        if good:
            alpha, pair = trial, new
        else:
            h /= 2
    return alpha, pair, alpha - h


def _polish_double_root(n, alpha, x, cfg: PrecisionConfig):
    """2-D Newton on R = R_x = 0 in the real unknowns (x, alpha)."""
    P, c = rm_c2n4(n), symmetry_center(n)
    eps = cfg.eps
    # expanded coefficients cancel heavily; guard bits keep the noise floor below eps
    with mpmath.workprec(cfg.mantissa_bits + 64 + 4 * abs(n)):
        return _newton_2d(P, c, mpmath.mpf(x), mpmath.mpf(alpha), eps)


def _newton_2d(P, c, x, alpha, eps):
    for _ in range(60):
        R, Rx, Rxx, Ra, Rxa = _real_system(P, c, x, alpha)
        det = Rx * Rxa - Ra * Rxx
        if det == 0:
            raise SolverFailure("singular Jacobian while locating alpha0")
        dx = (R * Rxa - Ra * Rx) / det
        da = (Rx * Rx - Rxx * R) / det
        x, alpha = x - dx, alpha - da
        if abs(dx) + abs(da) <= eps:
            break
    else:
        raise SolverFailure("double-root Newton did not converge")
    return x, alpha


def cone_geometry(n: int, cfg: PrecisionConfig = DEFAULT) -> ConeGeometry:
    """Locate alpha_0 and the local expansions of the geometric branches (cached)."""
    _check_n(n)
    return _cone_geometry(n, cfg)


@lru_cache(maxsize=None)
def _cone_geometry(n: int, cfg: PrecisionConfig) -> ConeGeometry:
    with cfg.workprec():
        a_ok, pair, a_bad = _march_pair(n, cfg)
        mid = (pair[0] + pair[1]) / 2
        x0, alpha0 = _polish_double_root(n, a_ok, mid, cfg)
        # the march stops conservatively just above the collision
        if not 0 <= a_ok - alpha0 < mpmath.mpf("1e-4"):
            raise GeometryError(f"double-root refinement left the bracket for n={n}")
        if not 2 * mpmath.pi / 3 <= alpha0 < mpmath.pi:
            raise GeometryError(f"alpha0={alpha0} outside [2pi/3, pi) for n={n}")
        P, c = rm_c2n4(n), symmetry_center(n)
        _, Rx, Rxx, Ra, _ = _real_system(P, c, x0, alpha0)
        c2_sph = -2 * Ra / Rxx
        if c2_sph <= 0:
            raise GeometryError(f"pair does not split into real roots above alpha0 for n={n}")
        s = mpmath.sqrt(c2_sph)
        # orient so that +s leads to the first anchor
        if pair[0] < x0:
            s = -s
        hyp = mpmath.mpc(0, -mpmath.sqrt(c2_sph))
        return ConeGeometry(n=n, alpha0=alpha0, x0=x0, slope_spherical=s, slope_hyperbolic=hyp,
                            bracket=(a_bad, a_ok), bits=cfg.mantissa_bits,
                            derivative_at_double_root=abs(P.evaluate(x0, cone_m(alpha0), x_derivs=1)))


def find_alpha0(n: int, cfg: PrecisionConfig = DEFAULT):
    """Collision angle of the two geometric spherical branches."""
    return cone_geometry(n, cfg).alpha0


def discriminant_alpha0(n: int, guess, cfg: PrecisionConfig = DEFAULT):
    """Independent alpha_0: the zero of the exact x-discriminant of P_2n near ``guess``.

    Uses an exact integer resultant, so it is only practical for small |n|.
    """
    import sympy

    P = rm_c2n4(n)
    lo, _ = P.m_range()
    x, m = sympy.symbols("x M")
    expr = sum(sympy.Integer(cf) * m ** (k - lo) * x**j
               for j, lc in enumerate(P.coeffs) for k, cf in lc.items())
    disc = sympy.Poly(sympy.discriminant(sympy.Poly(expr, x), x), m)
    terms = [(int(mon[0]), int(cf)) for mon, cf in disc.terms()]
    center = mpmath.mpf(min(k for k, _ in terms) + max(k for k, _ in terms)) / 2
    with cfg.workprec():
        def real_disc(alpha):
            M = cone_m(alpha)
            return mpmath.fsum(cf * M ** (k - center) for k, cf in terms).real
        return mpmath.findroot(real_disc, mpmath.mpf(guess))


# ---------------------------------------------------------------------------
# branches


@dataclass
class GeometricBranch:
    """Samples (alpha, x) of one tracked root with their regime labels."""

    n: int
    alphas: list = field(default_factory=list)
    xs: list = field(default_factory=list)
    regimes: list = field(default_factory=list)
    collision: object = None

    def __len__(self):
        return len(self.alphas)

    def to_csv(self, digits: int = 20) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "re_x", "im_x", "regime"])
        for a, x, r in zip(self.alphas, self.xs, self.regimes):
            x = mpmath.mpc(x)
            w.writerow([mpmath.nstr(a, digits), mpmath.nstr(x.real, digits), mpmath.nstr(x.imag, digits), r])
        return buf.getvalue()


def _t_of(alpha, geo: ConeGeometry):
    return mpmath.sqrt(abs(mpmath.mpf(alpha) - geo.alpha0))


def spherical_track(n, t_nodes, which: int, cfg: PrecisionConfig = DEFAULT):
    """Spherical root ``which`` (1 or 2) at alpha = alpha0 + t^2 for each t node."""
    geo = cone_geometry(n, cfg)
    sign = 1 if which == 1 else -1
    with cfg.workprec():
        xs = track_t(n, geo.alpha0, 1, t_nodes, geo.x0, sign * geo.slope_spherical, cfg)
        return [mpmath.mpc(x) for x in xs]


def hyperbolic_track(n, t_nodes, cfg: PrecisionConfig = DEFAULT):
    """Hyperbolic (Im x <= 0) root at alpha = alpha0 - t^2 for each t node."""
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        return track_t(n, geo.alpha0, -1, t_nodes, mpmath.mpc(geo.x0), geo.slope_hyperbolic, cfg)


def spherical_pair(n: int, alpha, cfg: PrecisionConfig = DEFAULT):
    """The two real geometric roots at alpha in (alpha0, pi], anchor-ordered."""
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        alpha = mpmath.mpf(alpha)
        if alpha <= geo.alpha0 or alpha > mpmath.pi:
            raise RegimeError(f"spherical pair needs alpha0 < alpha <= pi (alpha0={mpmath.nstr(geo.alpha0, 12)})")
        t = _t_of(alpha, geo)
        nodes = _graded_nodes(t)
        x1 = spherical_track(n, nodes, 1, cfg)[-1]
        x2 = spherical_track(n, nodes, 2, cfg)[-1]
        return x1.real, x2.real


def _graded_nodes(t, count=24):
    """Nodes 0 < ... < t, uniform in t (already the natural parameter)."""
    return [t * k / count for k in range(count + 1)]


def geometric_root(n: int, alpha, cfg: PrecisionConfig = DEFAULT, which: int = 1):
    """x on the geometric branch at alpha: hyperbolic root below alpha0, spherical root ``which`` above."""
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        alpha = mpmath.mpf(alpha)
        if alpha == geo.alpha0:
            return mpmath.mpc(geo.x0)
        nodes = _graded_nodes(_t_of(alpha, geo))
        if alpha < geo.alpha0:
            return hyperbolic_track(n, nodes, cfg)[-1]
        return spherical_track(n, nodes, which, cfg)[-1]


def continue_branch(n: int, alpha_from, alpha_to, steps: int, cfg: PrecisionConfig = DEFAULT,
                    which: int = 1) -> GeometricBranch:
    """Geometric branch sampled on ``steps`` equal alpha-steps from alpha_from to alpha_to.

    The path starts on spherical root ``which`` when alpha_from > alpha0.
    Crossing alpha0 it passes through the double root and continues on the
    Im x <= 0 root.  The collision point is reported in ``collision``.
    """
    _check_n(n)
    geo = cone_geometry(n, cfg)
    branch = GeometricBranch(n=n)
    with cfg.workprec():
        a0, a1 = mpmath.mpf(alpha_from), mpmath.mpf(alpha_to)
        for a in (a0, a1):
            if not 0 <= a <= mpmath.pi:
                raise RegimeError(f"continuation must stay within [0, pi], got {a}")
        grid = [a0] if steps == 0 or a0 == a1 else [a0 + (a1 - a0) * k / steps for k in range(steps + 1)]
        sph = sorted((a for a in grid if a > geo.alpha0), key=lambda a: a)
        hyp = sorted((a for a in grid if a < geo.alpha0), key=lambda a: -a)
        values = {}
        if sph:
            nodes = [mpmath.mpf(0)] + [_t_of(a, geo) for a in sph]
            for a, x in zip(sph, spherical_track(n, nodes, which, cfg)[1:]):
                values[a] = x
        if hyp:
            nodes = [mpmath.mpf(0)] + [_t_of(a, geo) for a in hyp]
            for a, x in zip(hyp, hyperbolic_track(n, nodes, cfg)[1:]):
                values[a] = x
        for a in grid:
            branch.alphas.append(a)
            branch.xs.append(values.get(a, mpmath.mpc(geo.x0)))
            branch.regimes.append(geo.regime(a))
        if min(a0, a1) <= geo.alpha0 <= max(a0, a1):
            branch.collision = (geo.alpha0, geo.x0)
    return branch


def alpha0_cache_entry(n: int, cfg: PrecisionConfig = DEFAULT) -> dict:
    return cone_geometry(n, cfg).to_json(cfg.collision_tol)


def dumps_alpha0(n: int, cfg: PrecisionConfig = DEFAULT) -> str:
    return json.dumps(alpha0_cache_entry(n, cfg))
