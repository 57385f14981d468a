"""Exact conversions between mpmath and gmpy2 numbers.

The path tracker runs its inner loop on gmpy2 (MPFR/MPC), which is about an
order of magnitude faster than mpmath at the same precision.
"""
import gmpy2
import mpmath
from mpmath.libmp import from_man_exp

_MPFR = type(gmpy2.mpfr(0))
_MPC = type(gmpy2.mpc(0))


def context(bits: int):
    return gmpy2.context(gmpy2.get_context(), precision=bits)


def to_gmp(v):
    """Convert to the active gmpy2 context without passing through mpmath rounding.

    ``mpmath.mpf(x)`` would round to mpmath's ambient precision, which is
    usually 53 bits outside a ``workprec`` block, so mpf parts are read
    directly.
    """
    if isinstance(v, (_MPFR, _MPC)):
        return v
    if isinstance(v, (mpmath.mpc, complex)):
        return gmpy2.mpc(to_gmp(v.real), to_gmp(v.imag))
    if isinstance(v, (int, float)):
        return gmpy2.mpfr(v)
    if not isinstance(v, mpmath.mpf):
        return gmpy2.mpfr(str(v))
    sign, man, exp, _ = v._mpf_
    if not man:
        if exp:
            raise ValueError(f"cannot convert non-finite value {v}")
        return gmpy2.mpfr(0)
    return gmpy2.mul_2exp(gmpy2.mpfr(-man if sign else man), exp)


def to_gmpc(v):
    """Like :func:`to_gmp` but always complex."""
    v = to_gmp(v)
    return v if isinstance(v, _MPC) else gmpy2.mpc(v)


def to_mp(v):
    """Exact conversion back to mpmath (no rounding to mpmath's ambient precision)."""
    if isinstance(v, _MPC):
        return mpmath.mp.make_mpc((to_mp(v.real)._mpf_, to_mp(v.imag)._mpf_))
    if v == 0:
        return mpmath.mpf(0)
    man, exp = v.as_mantissa_exp()
    return mpmath.mp.make_mpf(from_man_exp(int(man), int(exp)))
