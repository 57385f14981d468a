"""Longitude holonomy, volume and Chern-Simons invariants of X_2n(alpha).

The geometric branch is parameterised by t with alpha = alpha0 - t^2 on the
hyperbolic side and alpha = alpha0 + t^2 on the spherical side.  In t the
root x is analytic through the Euclidean point, so plain composite Simpson
in t keeps its fourth-order convergence; every alpha-integral below is
computed as the t-integral of f(alpha(t)) * 2t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
import mpmath

from . import gmp
from .errors import GeometryError, RegimeError, SingularLongitudeError
from .knots import C2N4_BLOCK, GroupWord
from .rmpoly import cone_m, mat_mul, mat_word, parabolic_matrices
from .solver import (
    DEFAULT,
    PrecisionConfig,
    _check_n,
    _digits,
    cone_geometry,
    hyperbolic_track,
    spherical_track,
)

# Simpson subintervals per segment
TABLE1_PANELS = 10_000
TABLE2_PANELS = 100
# adjacent-node argument jumps beyond this force a finer grid
UNWRAP_LIMIT = math.pi / 2
MAX_REFINEMENTS = 4


# ---------------------------------------------------------------------------
# longitude


@dataclass(frozen=True)
class LongitudeHolonomy:
    """L = rho(l)_11, the complex length gamma (Re >= 0) and l_alpha = Re gamma."""

    L: object
    gamma: object
    l_real: object

    @classmethod
    def from_L(cls, L) -> "LongitudeHolonomy":
        # rho(l) is upper triangular with diagonal (L, 1/L): tr = L + 1/L
        gamma = 2 * mpmath.log(L)
        if gamma.real < 0:
            gamma = -gamma
        gamma = mpmath.mpc(gamma.real, mpmath.fmod(gamma.imag, 4 * mpmath.pi))
        return cls(L=L, gamma=gamma, l_real=abs(gamma.real))

    @property
    def trace(self):
        return self.L + 1 / self.L


def _singular_tol():
    return mpmath.mpf(2) ** (-mpmath.mp.prec // 2)


def longitude_L(x, alpha):
    """L = -M^-2 (M^-4 - M^-2 + (2M^-2 + M^2 - 1)x + x^2) / (M^4 - M^2 + (M^-2 + 2M^2 - 1)x + x^2)."""
    M = cone_m(alpha)
    Mi2, M2 = M**-2, M**2
    num = Mi2 * Mi2 - Mi2 + (2 * Mi2 + M2 - 1) * x + x * x
    den = M2 * M2 - M2 + (Mi2 + 2 * M2 - 1) * x + x * x
    if abs(den) <= _singular_tol() * (1 + abs(x) ** 2):
        raise SingularLongitudeError(f"longitude denominator vanishes at x={mpmath.nstr(x, 10)}")
    return -Mi2 * num / den


def longitude_L_from_block(n: int, x, alpha):
    """L = -u~21 / u21 from rho(w) = U^n and its M -> 1/M twin."""
    _check_n(n)
    M = cone_m(alpha)
    word = C2N4_BLOCK**n
    S, T, _ = parabolic_matrices(x, M)
    St, Tt, _ = parabolic_matrices(x, 1 / M)
    u21 = mat_word(word, S, T)[2]
    ut21 = mat_word(word, St, Tt)[2]
    if abs(u21) <= _singular_tol() * (1 + abs(ut21)):
        raise SingularLongitudeError("u21 vanishes; the block-word identity does not determine L here")
    return -ut21 / u21


def longitude_holonomy(x, alpha) -> LongitudeHolonomy:
    return LongitudeHolonomy.from_L(longitude_L(x, alpha))


def longitude_matrix(word: GroupWord, x, alpha):
    """rho(w w*) for the word w, with w* the reversed word."""
    S, T, _ = parabolic_matrices(x, cone_m(alpha))
    return mat_mul(mat_word(word, S, T), mat_word(word.reversed(), S, T))


def complex_length(word: GroupWord, x, alpha):
    """gamma with tr(rho(w w*)) = 2 cosh(gamma/2), Re gamma >= 0, Im reduced mod 4 pi.

    Traces of exactly +-2 are parabolic: gamma is 0 or 2 pi i.
    """
    m = longitude_matrix(word, x, alpha)
    tr = m[0] + m[3]
    gamma = 2 * mpmath.acosh(tr / 2)
    if gamma.real < 0:
        gamma = -gamma
    return mpmath.mpc(gamma.real, mpmath.fmod(mpmath.mpc(gamma).imag, 4 * mpmath.pi))


def real_length(x, alpha):
    """l_alpha = 2 |log|L|| on the geometric branch."""
    return 2 * abs(mpmath.log(abs(longitude_L(x, alpha))))


# ---------------------------------------------------------------------------
# quadrature on the t-parameterised branch


def simpson(values, h):
    """Composite Simpson on an even number of subintervals, summed in index order."""
    N = len(values) - 1
    if N < 2 or N % 2:
        raise ValueError(f"Simpson needs an even number of subintervals, got {N}")
    odd = 0
    even = 0
    for i in range(1, N, 2):
        odd += values[i]
    for i in range(2, N, 2):
        even += values[i]
    return h * (values[0] + values[-1] + 4 * odd + 2 * even) / 3


def _check_panels(panels: int) -> int:
    panels = int(panels)
    if panels < 2 or panels % 2:
        raise ValueError(f"panels must be a positive even number, got {panels}")
    return panels


def _uniform(T, panels):
    return [T * k / panels for k in range(panels + 1)]


class _UnwrapFailure(Exception):
    pass


def _longitude_samples(alpha0, direction, t_nodes, xs):
    """log|L| and unwrapped arg L along alpha0 + direction t^2 (gmpy2 inner loop).

    Arguments are unwrapped from the first node, which receives its
    principal value.
    """
    logs, args = [], []
    prev = None
    theta = None
    for t, x in zip(t_nodes, xs):
        alpha = alpha0 + direction * t * t
        M = gmpy2.exp(gmpy2.mpc(0, alpha / 2))
        M2 = M * M
        Mi2 = 1 / M2
        num = Mi2 * Mi2 - Mi2 + (2 * Mi2 + M2 - 1) * x + x * x
        den = M2 * M2 - M2 + (Mi2 + 2 * M2 - 1) * x + x * x
        if den == 0:
            raise SingularLongitudeError("longitude denominator vanishes on the branch")
        L = -Mi2 * num / den
        if prev is None:
            theta = gmpy2.phase(L)
        else:
            step = gmpy2.phase(L / prev)
            if abs(step) > UNWRAP_LIMIT:
                raise _UnwrapFailure()
            theta += step
        prev = L
        logs.append(gmpy2.log(abs(L)))
        args.append(theta)
    return logs, args


@dataclass(frozen=True)
class _Segment:
    """Integrals over one branch segment together with endpoint data."""

    log_integral: object  # int log|L| d alpha
    arg_integral: object  # int theta d alpha (theta unwrapped from the first node)
    arg_start: object
    arg_end: object
    panels: int


def _segment(n, direction, T, panels, cfg, which=1, reverse=False):
    """Integrate log|L| and arg L over t in [0, T] on one branch.

    ``reverse`` unwraps the argument from t = T back to t = 0 (anchoring at
    alpha = pi for the spherical pair).  The grid is doubled when adjacent
    samples jump by more than UNWRAP_LIMIT.
    """
    geo = cone_geometry(n, cfg)
    for _ in range(MAX_REFINEMENTS + 1):
        with cfg.workprec():
            nodes = _uniform(T, panels)
            if direction < 0:
                xs = hyperbolic_track(n, nodes, cfg)
            else:
                xs = spherical_track(n, nodes, which, cfg)
        with gmp.context(cfg.mantissa_bits):
            gnodes = [gmp.to_gmp(t) for t in nodes]
            gxs = [gmp.to_gmpc(x) for x in xs]
            a0 = gmp.to_gmp(geo.alpha0)
            if reverse:
                gnodes, gxs = gnodes[::-1], gxs[::-1]
            try:
                logs, args = _longitude_samples(a0, direction, gnodes, gxs)
            except _UnwrapFailure:
                panels *= 2
                continue
            if reverse:
                gnodes, logs, args = gnodes[::-1], logs[::-1], args[::-1]
            h = gmp.to_gmp(T) / panels
            log_int = simpson([2 * t * v for t, v in zip(gnodes, logs)], h)
            arg_int = simpson([2 * t * v for t, v in zip(gnodes, args)], h)
            return _Segment(gmp.to_mp(log_int), gmp.to_mp(arg_int),
                            gmp.to_mp(args[0]), gmp.to_mp(args[-1]), panels)
    raise GeometryError(f"argument of L could not be unwrapped for n={n} even with {panels} panels")


def branch_samples(n, direction, t_nodes, cfg: PrecisionConfig = DEFAULT, which=1):
    """(x, log|L|, arg L) at alpha0 + direction t^2 for increasing ``t_nodes`` from 0.

    Hyperbolic arguments (direction -1) are unwrapped from alpha0 and shifted
    to start at the spherical anchor; spherical ones are unwrapped back from
    the last node, which should be alpha = pi.
    """
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        if direction < 0:
            xs = hyperbolic_track(n, t_nodes, cfg)
        else:
            xs = spherical_track(n, t_nodes, which, cfg)
    with gmp.context(cfg.mantissa_bits):
        gnodes = [gmp.to_gmp(t) for t in t_nodes]
        gxs = [gmp.to_gmpc(x) for x in xs]
        a0 = gmp.to_gmp(geo.alpha0)
        try:
            if direction < 0:
                logs, args = _longitude_samples(a0, -1, gnodes, gxs)
            else:
                logs, args = _longitude_samples(a0, 1, gnodes[::-1], gxs[::-1])
                logs, args = logs[::-1], args[::-1]
        except _UnwrapFailure:
            raise GeometryError("argument of L jumps between adjacent nodes; use a finer grid") from None
        logs = [gmp.to_mp(v) for v in logs]
        args = [gmp.to_mp(v) for v in args]
    if direction < 0:
        _, anchor, _ = _spherical_part(n, TABLE2_PANELS, cfg)
    with cfg.workprec():
        if direction < 0:
            args = [a - args[0] + anchor for a in args]
        return [mpmath.mpc(x) for x in xs], logs, args


# ---------------------------------------------------------------------------
# volume


def volume(n: int, alpha, panels: int = TABLE1_PANELS, cfg: PrecisionConfig = DEFAULT):
    """Vol X_2n(alpha) = int_alpha^alpha0 log|L| d alpha on the hyperbolic branch."""
    _check_n(n)
    panels = _check_panels(panels)
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        alpha = mpmath.mpf(alpha)
        if alpha < 0:
            raise RegimeError(f"cone angle must be nonnegative, got {alpha}")
        gap = geo.alpha0 - alpha
        if abs(gap) <= mpmath.mpf(2) ** (-cfg.mantissa_bits // 2):
            return mpmath.mpf(0)
        if gap < 0:
            raise RegimeError(
                f"X_{2 * n}({mpmath.nstr(alpha, 10)}) is not hyperbolic: alpha0 = {mpmath.nstr(geo.alpha0, 12)}")
        return _hyperbolic(n, alpha, panels, cfg).log_integral


@lru_cache(maxsize=256)
def _hyperbolic_cached(n, alpha_key, panels, cfg):
    with cfg.workprec():
        alpha = mpmath.mpf(alpha_key)
        T = mpmath.sqrt(cone_geometry(n, cfg).alpha0 - alpha)
    return _segment(n, -1, T, panels, cfg)


def _hyperbolic(n, alpha, panels, cfg):
    # key on the exact binary value so equal angles share one track
    return _hyperbolic_cached(n, mpmath.mpf(alpha)._mpf_, panels, cfg)


def volume_derivative(n: int, alpha, cfg: PrecisionConfig = DEFAULT):
    """dVol/dalpha from the Schlafli formula: -l_alpha / 2 = -log|L|."""
    from .solver import geometric_root

    with cfg.workprec():
        x = geometric_root(n, alpha, cfg)
        return -mpmath.log(abs(longitude_L(x, alpha)))


# ---------------------------------------------------------------------------
# Chern-Simons


def lens_cs(n: int) -> Fraction:
    """cs(L(8n+1, 6n+1)) = (7n+3)/(8n+1) mod 1 as an exact rational."""
    _check_n(n)
    return Fraction(7 * n + 3, 8 * n + 1) % 1


def orbifold_modulus(k: int) -> Fraction:
    """1/k for even k, 1/(2k) for odd k."""
    return Fraction(1, k) if k % 2 == 0 else Fraction(1, 2 * k)


# Table 1 values are reported modulo 1/2, the ambiguity of the integration constant
COMPLETE_MODULUS = Fraction(1, 2)


@dataclass(frozen=True)
class InvariantResult:
    """A Chern-Simons value in [0, modulus) with the grid and precision used."""

    value: object
    modulus: Fraction
    grid: tuple
    bits: int
    raw: object = None

    def __post_init__(self):
        if not 0 <= self.value < mpmath.mpf(self.modulus.numerator) / self.modulus.denominator:
            raise ValueError(f"value {self.value} not reduced modulo {self.modulus}")

    def __float__(self):
        return float(self.value)


# distances to 0 (mod the modulus) below this are quadrature noise, not data
SNAP_RESOLUTION = 2.0**-40


def reduce_mod(value, modulus: Fraction, bits: int):
    """Representative in [0, modulus).

    Values within max(2^-40, 2^(-bits/2)) of 0 or of the modulus are
    returned as 0, so an invariant that vanishes does not print as
    modulus minus roundoff.
    """
    m = mpmath.mpf(modulus.numerator) / modulus.denominator
    r = value - mpmath.floor(value / m) * m
    snap = max(mpmath.mpf(SNAP_RESOLUTION), mpmath.mpf(2) ** (-bits // 2))
    if r < snap or m - r <= snap:
        r = mpmath.mpf(0)
    return r


@lru_cache(maxsize=None)
def _spherical_part(n, panels, cfg):
    """int_alpha0^pi (theta_1 + theta_2) and the hyperbolic anchor (theta_1 + theta_2)/2 at alpha0."""
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        T = mpmath.sqrt(mpmath.pi - geo.alpha0)
    s1 = _segment(n, 1, T, panels, cfg, which=1, reverse=True)
    s2 = _segment(n, 1, T, panels, cfg, which=2, reverse=True)
    with cfg.workprec():
        return s1.arg_integral + s2.arg_integral, (s1.arg_start + s2.arg_start) / 2, max(s1.panels, s2.panels)


def _cs_raw(n, alpha_low, panels, cfg):
    """Unreduced cs: lens/2 + (1/4pi^2)[int 2 theta_h + int (theta_1 + theta_2)]."""
    sph, anchor, sph_panels = _spherical_part(n, panels, cfg)
    hyp = _hyperbolic(n, alpha_low, panels, cfg)
    with cfg.workprec():
        span = cone_geometry(n, cfg).alpha0 - mpmath.mpf(alpha_low)
        # shift theta_h so it starts from the spherical anchor at alpha0
        hyp_int = hyp.arg_integral + (anchor - hyp.arg_start) * span
        lens = lens_cs(n)
        raw = mpmath.mpf(lens.numerator) / lens.denominator / 2 + (2 * hyp_int + sph) / (4 * mpmath.pi**2)
    return raw, (hyp.panels, sph_panels), hyp


def chern_simons(n: int, k: int, panels: int = TABLE2_PANELS, cfg: PrecisionConfig = DEFAULT) -> InvariantResult:
    """cs(X_2n(2pi/k)) reduced mod 1/k (k even) or 1/(2k) (k odd)."""
    _check_n(n)
    panels = _check_panels(panels)
    k = _check_k(n, k, cfg)
    with cfg.workprec():
        alpha = 2 * mpmath.pi / k
    raw, grid, _ = _cs_raw(n, alpha, panels, cfg)
    modulus = orbifold_modulus(k)
    with cfg.workprec():
        return InvariantResult(reduce_mod(raw, modulus, cfg.mantissa_bits), modulus, grid, cfg.mantissa_bits, raw)


def chern_simons_complete(n: int, panels: int = TABLE1_PANELS, cfg: PrecisionConfig = DEFAULT) -> InvariantResult:
    """cs of the complete structure (lower endpoint alpha = 0), reported mod 1/2."""
    _check_n(n)
    panels = _check_panels(panels)
    raw, grid, _ = _cs_raw(n, 0, panels, cfg)
    with cfg.workprec():
        return InvariantResult(reduce_mod(raw, COMPLETE_MODULUS, cfg.mantissa_bits), COMPLETE_MODULUS,
                               grid, cfg.mantissa_bits, raw)


def _check_k(n, k, cfg):
    if isinstance(k, bool) or int(k) != k or k < 3:
        raise ValueError(f"k must be an integer >= 3, got {k}")
    k = int(k)
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        if 2 * mpmath.pi / k >= geo.alpha0:
            raise RegimeError(f"X_{2 * n}(2pi/{k}) is not hyperbolic (alpha0 = {mpmath.nstr(geo.alpha0, 12)})")
    return k


@dataclass(frozen=True)
class CoverResult:
    """Volume and Chern-Simons invariant of the k-fold cyclic branched cover."""

    n: int
    k: int
    volume: object
    cs: InvariantResult
    orbifold_volume: object
    orbifold_cs: InvariantResult


def cyclic_cover(n: int, k: int, panels: int = TABLE2_PANELS, cfg: PrecisionConfig = DEFAULT) -> CoverResult:
    """(k Vol X_2n(2pi/k), k cs X_2n(2pi/k) mod 1)."""
    orb = chern_simons(n, k, panels, cfg)
    with cfg.workprec():
        vol = volume(n, 2 * mpmath.pi / k, panels, cfg)
        scaled = k * orb.value
        cs = InvariantResult(reduce_mod(scaled, Fraction(1), cfg.mantissa_bits), Fraction(1), orb.grid,
                             cfg.mantissa_bits, scaled)
        return CoverResult(n=n, k=k, volume=k * vol, cs=cs, orbifold_volume=vol, orbifold_cs=orb)


# ---------------------------------------------------------------------------
# serialisation


def decimal(value, bits: int) -> str:
    """Fixed-point decimal string with bits/3.32 significant digits."""
    with mpmath.workprec(bits + 16):
        return mpmath.nstr(mpmath.mpf(value), _digits(bits), strip_zeros=False, min_fixed=-mpmath.inf,
                           max_fixed=mpmath.inf)


def result_json(n: int, k, vol, cs: InvariantResult, cfg: PrecisionConfig = DEFAULT) -> dict:
    from . import __version__

    bits = cfg.mantissa_bits
    with cfg.workprec():
        return {
            "n": n,
            "k": k,
            "alpha0": decimal(cone_geometry(n, cfg).alpha0, bits),
            "vol": decimal(vol, bits),
            "cs": decimal(cs.value, bits),
            "cs_modulus": f"{cs.modulus.numerator}/{cs.modulus.denominator}",
            "bits": bits,
            "panels": list(cs.grid),
            "version": __version__,
        }
