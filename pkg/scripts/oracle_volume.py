"""Independent volume oracle: re-solve all roots at Gauss-Legendre nodes.

Roots come from the simultaneous solver on expanded coefficients (no path
tracker, no real-form evaluator).  The geometric root is followed node to
node by nearest-root matching in t, where alpha = alpha0 - t^2.  Prints
values that the test suite freezes.
"""
import argparse

import mpmath

from twobridge.invariants import longitude_L
from twobridge.solver import PrecisionConfig, cone_geometry, roots_at


def oracle_volume(n, alpha, degree, cfg):
    geo = cone_geometry(n, cfg)
    with cfg.workprec():
        T = mpmath.sqrt(geo.alpha0 - mpmath.mpf(alpha))
        nodes, weights = zip(*sorted(_gauss_legendre(degree)))
        prev = mpmath.mpc(geo.x0)
        total = mpmath.mpf(0)
        last_t = mpmath.mpf(0)
        for u, w in zip(nodes, weights):
            t = T * (u + 1) / 2
            # predict along the local square-root expansion for the first node
            guess = prev + geo.slope_hyperbolic * (t - last_t) if last_t == 0 else prev
            roots = [r for r in roots_at(n, geo.alpha0 - t * t, cfg) if r.imag <= 0]
            x = min(roots, key=lambda r: abs(r - guess))
            total += w * 2 * t * mpmath.log(abs(longitude_L(x, geo.alpha0 - t * t)))
            prev, last_t = x, t
        return total * T / 2


def _gauss_legendre(degree):
    pts = mpmath.calculus.quadrature.GaussLegendre(mpmath.mp)
    # degree m gives 3 * 2^(m-1) nodes on [-1, 1]
    return pts.calc_nodes(degree, mpmath.mp.prec)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bits", type=int, default=128)
    ap.add_argument("--degree", type=int, default=6)
    args = ap.parse_args()
    cfg = PrecisionConfig(mantissa_bits=args.bits)
    for n, label, alpha in [(1, "0", 0), (1, "2pi/3", 2 * mpmath.pi / 3), (-1, "2pi/3", 2 * mpmath.pi / 3),
                            (2, "2pi/3", 2 * mpmath.pi / 3), (3, "pi/2", mpmath.pi / 2)]:
        for deg in (args.degree, args.degree + 1):
            v = oracle_volume(n, alpha, deg, cfg)
            print(f"n={n:3d} alpha={label:6s} degree={deg} vol={mpmath.nstr(v, 25)}")


if __name__ == "__main__":
    main()
