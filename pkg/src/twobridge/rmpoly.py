"""Representation polynomials P_2n of C(2n,4).

Three independent routes to the same object:

* ``rm_c2n4``: the two-sided recursion P_2n = Q P_2(n-1) - M^12 P_2(n-2)
  from the printed initial conditions (exact).
* ``trace_ratio_c2n4``: tr(S U^n c) / tr(Sc) computed symbolically from the
  parabolic-coordinate matrices S, T (exact, radical free).
* ``RMEvaluator``: a fast numeric evaluator of the recursion at fixed M,
  used by the root solver and the integrators.

``rm_general_value`` evaluates the trace ratio for an arbitrary two-bridge
slope in the (alpha, d) coordinates, with ``coordinate_bridge`` relating
those to (M, x).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import gmpy2
import mpmath

from .errors import DegenerateParameterError, InvalidIndexError
from .knots import GroupWord, Slope, schubert_word
from .laurent import BivarPoly, LaurentInt

_GMP_REAL = type(gmpy2.mpfr(0))


def _L(*pairs) -> LaurentInt:
    """LaurentInt from (exponent, coefficient) pairs."""
    return LaurentInt(pairs)


# Q = M^6 x^4 + (3M^8 - 2M^6 + 3M^4) x^3 + (3M^10 - 4M^8 + 6M^6 - 4M^4 + 3M^2) x^2
#   + (M^12 - 2M^10 + 3M^8 - 4M^6 + 3M^4 - 2M^2 + 1) x + 2M^6
_Q = BivarPoly([
    _L((6, 2)),
    _L((12, 1), (10, -2), (8, 3), (6, -4), (4, 3), (2, -2), (0, 1)),
    _L((10, 3), (8, -4), (6, 6), (4, -4), (2, 3)),
    _L((8, 3), (6, -2), (4, 3)),
    _L((6, 1)),
])

_P2 = BivarPoly([
    _L((6, 1)),
    _L((12, 1), (10, -1), (8, 2), (6, -2), (4, 2), (2, -1), (0, 1)),
    _L((10, 3), (8, -2), (6, 5), (4, -2), (2, 3)),
    _L((8, 3), (6, -1), (4, 3)),
    _L((6, 1)),
])

_PM2 = BivarPoly([
    _L((4, 1)),
    -_L((8, 1), (6, -1), (4, 2), (2, -1), (0, 1)),
    -_L((6, 2), (4, -1), (2, 2)),
    _L((4, -1)),
])

_P0_POS = BivarPoly([1])
_P0_NEG = BivarPoly([_L((-2, 1))])
_M12 = _L((12, 1))


def q_poly() -> BivarPoly:
    """The quartic Q(x, M) driving the recursion (Q = M^6 tr U)."""
    return _Q


def initial_conditions(sign: int) -> tuple[BivarPoly, BivarPoly]:
    """(P_0, P_{+-2}) for the branch of the recursion with the given sign."""
    return (_P0_POS, _P2) if sign > 0 else (_P0_NEG, _PM2)


@lru_cache(maxsize=None)
def rm_c2n4(n: int) -> BivarPoly:
    """The representation polynomial P_2n(x, M) of C(2n,4), exactly."""
    if n == 0:
        raise InvalidIndexError("P_0 is an initial condition, not a family member")
    sign = 1 if n > 0 else -1
    prev, cur = initial_conditions(sign)
    for _ in range(abs(n) - 1):
        prev, cur = cur, _Q * cur - prev * _M12
    return cur


def expected_degree(n: int) -> int:
    return 4 * n if n > 0 else -(4 * n + 1)


def symmetry_center(n: int) -> int:
    """c with M^(2c) P_2n(x, 1/M) = P_2n(x, M); so M^-c P_2n is real for |M| = 1, x real."""
    if n == 0:
        raise InvalidIndexError("n must be nonzero")
    return 6 * n if n > 0 else -6 * n - 2


def normalizing_power(n: int) -> int:
    """Power of M turning the trace ratio into P_2n: 6n for n > 0, -6n - 2 for n < 0.

    Equal to ``symmetry_center``: the ratio itself is M^-c P_2n.
    """
    return symmetry_center(n)


# ---------------------------------------------------------------------------
# exact 2x2 matrices over Z[M, 1/M][x]


@dataclass(frozen=True)
class SymMatrix2:
    """2x2 matrix with ``BivarPoly`` entries.

    S and T have determinant 1, so every word in them (and their inverses)
    stays polynomial; only the final trace ratio carries a denominator.
    """

    e11: BivarPoly
    e12: BivarPoly
    e21: BivarPoly
    e22: BivarPoly

    def __mul__(self, o: "SymMatrix2") -> "SymMatrix2":
        return SymMatrix2(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    def det(self) -> BivarPoly:
        return self.e11 * self.e22 - self.e12 * self.e21

    def trace(self) -> BivarPoly:
        return self.e11 + self.e22

    def inverse(self) -> "SymMatrix2":
        if self.det() != BivarPoly([1]):
            raise ArithmeticError("only determinant-one matrices are inverted exactly")
        return SymMatrix2(self.e22, -self.e12, -self.e21, self.e11)

    def reciprocal_m(self) -> "SymMatrix2":
        return SymMatrix2(*(e.reciprocal_m() for e in (self.e11, self.e12, self.e21, self.e22)))

    @classmethod
    def identity(cls) -> "SymMatrix2":
        one, zero = BivarPoly([1]), BivarPoly()
        return cls(one, zero, zero, one)

    def __pow__(self, k: int) -> "SymMatrix2":
        base = self if k >= 0 else self.inverse()
        result = SymMatrix2.identity()
        for _ in range(abs(k)):
            result = result * base
        return result


def parabolic_generators() -> tuple[SymMatrix2, SymMatrix2]:
    """S = [[M, 1], [0, 1/M]],  T = [[M, 0], [2 - M^2 - M^-2 - x, 1/M]]."""
    m, minv = BivarPoly([_L((1, 1))]), BivarPoly([_L((-1, 1))])
    lower = BivarPoly([_L((0, 2), (2, -1), (-2, -1)), -1])
    S = SymMatrix2(m, BivarPoly([1]), BivarPoly(), minv)
    T = SymMatrix2(m, BivarPoly(), lower, minv)
    return S, T


def word_matrix(word: GroupWord) -> SymMatrix2:
    S, T = parabolic_generators()
    gens = {("s", 1): S, ("s", -1): S.inverse(), ("t", 1): T, ("t", -1): T.inverse()}
    out = SymMatrix2.identity()
    for letter in word:
        out = out * gens[letter]
    return out


@lru_cache(maxsize=None)
def u_matrix() -> SymMatrix2:
    """U = T S^-1 T S^-1 T^-1 S T^-1 S, the image of one C(2n,4) block."""
    return word_matrix(GroupWord.parse("t s^-1 t s^-1 t^-1 s t^-1 s"))


def radicand() -> BivarPoly:
    """r^2 = -1 + 2M^2 - M^4 - M^2 x; c carries sqrt(r^2) and tr(Sc) = r / M."""
    return BivarPoly([_L((0, -1), (2, 2), (4, -1)), _L((2, -1))])


@dataclass(frozen=True)
class BivarRatio:
    """A rational function num / den in Z[M, 1/M](x)."""

    num: BivarPoly
    den: BivarPoly

    def exact(self) -> BivarPoly:
        """The quotient as a polynomial; raises if den does not divide num."""
        return self.num.exact_div(self.den)

    def scaled(self, k: int) -> "BivarRatio":
        """Multiply by M^k."""
        return BivarRatio(self.num.shift_m(k), self.den)

    def evaluate(self, x, M):
        return self.num(x, M) / self.den(x, M)


def trace_ratio_of(A: SymMatrix2) -> BivarRatio:
    """tr(A c) / tr(S c) without forming the square root.

    With c = [[0, -M/r], [r/M, 0]] and tr(Sc) = r/M:
    tr(Ac)/tr(Sc) = A12 - A21 M^2 / r^2.
    """
    r2 = radicand()
    num = A.e12 * r2 - A.e21 * BivarPoly([_L((2, 1))])
    return BivarRatio(num, r2)


def trace_ratio_c2n4(n: int) -> BivarRatio:
    """tr(S U^n c)/tr(Sc) computed symbolically (any integer n)."""
    S, _ = parabolic_generators()
    return trace_ratio_of(S * u_matrix() ** n)


def trace_ratio_normalized(n: int) -> BivarPoly:
    """M^(6n) (n > 0) or M^(-6n-2) (n < 0) times the trace ratio, exactly."""
    return trace_ratio_c2n4(n).scaled(normalizing_power(n)).exact()


# ---------------------------------------------------------------------------
# numeric evaluation


class RMEvaluator:
    """Numeric P_2n(., M) at a fixed M, evaluated through the recursion.

    Costs O(|n|) multiplications per point instead of O(|n|^2) for the
    expanded coefficients.
    """

    def __init__(self, n: int, M):
        if n == 0:
            raise InvalidIndexError("n must be nonzero")
        self.n = n
        self.M = M
        self.m12 = M**12
        p0, p1 = initial_conditions(1 if n > 0 else -1)
        self.q = _Q.coeffs_at(M)
        self.p0 = p0.coeffs_at(M)[0]
        self.p1 = p1.coeffs_at(M)

    @staticmethod
    def _horner(cs, x):
        v, d = 0, 0
        for c in reversed(cs):
            d = d * x + v
            v = v * x + c
        return v, d

    def __call__(self, x):
        return self.value_and_derivative(x)[0]

    def value_and_derivative(self, x):
        q, dq = self._horner(self.q, x)
        a, da = self.p0, 0
        b, db = self._horner(self.p1, x)
        m12 = self.m12
        for _ in range(abs(self.n) - 1):
            a, b, da, db = b, q * b - m12 * a, db, dq * b + q * db - m12 * da
        return b, db

    def coefficients(self) -> list:
        """Ascending x-coefficients of P_2n at this M."""
        a, b = [self.p0], list(self.p1)
        q = self.q
        for _ in range(abs(self.n) - 1):
            nxt = [0] * (len(b) + len(q) - 1)
            for i, qi in enumerate(q):
                for j, bj in enumerate(b):
                    nxt[i + j] += qi * bj
            for j, aj in enumerate(a):
                nxt[j] -= self.m12 * aj
            a, b = b, nxt
        return b


class RealFormEvaluator:
    """R_2n = M^-c P_2n at M = e^{i alpha/2}, evaluated in real arithmetic.

    Dividing by the symmetry center turns the recursion into
    R_2n = tr(U) R_2(n-1) - R_2(n-2) with tr(U) = M^-6 Q, and every
    x-coefficient becomes a real cosine sum.  R_2n has the same roots as
    P_2n and is real for real x.  ``alpha`` may be an mpmath or a gmpy2
    real; arithmetic then stays in that library.
    """

    def __init__(self, n: int, alpha):
        if n == 0:
            raise InvalidIndexError("n must be nonzero")
        self.n = n
        if isinstance(alpha, _GMP_REAL):
            c1, s1, one = gmpy2.cos(alpha / 2), gmpy2.sin(alpha / 2), gmpy2.mpfr(1)
        else:
            alpha = mpmath.mpf(alpha)
            c1, s1, one = mpmath.cos(alpha / 2), mpmath.sin(alpha / 2), mpmath.mpf(1)
        self.alpha = alpha
        cos, sin = [one, c1], [0 * one, s1]
        for _ in range(2, 13):
            cos.append(2 * c1 * cos[-1] - cos[-2])
            sin.append(2 * c1 * sin[-1] - sin[-2])
        self._cos, self._sin = cos, sin
        _, p1 = initial_conditions(1 if n > 0 else -1)
        self._shifts = (-6, -(6 if n > 0 else 4))
        self.q = self._real_coeffs(_Q, self._shifts[0])
        self.p1 = self._real_coeffs(p1, self._shifts[1])

    def _real_coeffs(self, poly: BivarPoly, shift: int) -> list:
        cos = self._cos
        return [sum(c * cos[abs(k + shift)] for k, c in lc.items()) for lc in poly.coeffs]

    def _alpha_coeffs(self, poly: BivarPoly, shift: int) -> list:
        # d/dalpha cos(j alpha / 2) = -(j/2) sin(j alpha / 2)
        sin = self._sin
        return [sum(-c * abs(k + shift) * sin[abs(k + shift)] for k, c in lc.items()) / 2 for lc in poly.coeffs]

    def derivatives(self, x):
        """(R, dR/dx, dR/dalpha) at x."""
        _, p1 = initial_conditions(1 if self.n > 0 else -1)
        qa_c = self._alpha_coeffs(_Q, self._shifts[0])
        pa_c = self._alpha_coeffs(p1, self._shifts[1])
        q, dq = self._horner(self.q, x)
        qa, _ = self._horner(qa_c, x)
        a, da, aa = 1, 0, 0
        b, db = self._horner(self.p1, x)
        ba, _ = self._horner(pa_c, x)
        for _ in range(abs(self.n) - 1):
            a, b, da, db, aa, ba = b, q * b - a, db, dq * b + q * db - da, ba, qa * b + q * ba - aa
        return b, db, ba

    @staticmethod
    def _horner(cs, x):
        v, d = 0, 0
        for c in reversed(cs):
            d = d * x + v
            v = v * x + c
        return v, d

    def __call__(self, x):
        return self.value_and_derivative(x)[0]

    def value_and_derivative(self, x):
        q, dq = self._horner(self.q, x)
        a, da = 1, 0
        b, db = self._horner(self.p1, x)
        for _ in range(abs(self.n) - 1):
            a, b, da, db = b, q * b - a, db, dq * b + q * db - da
        return b, db


def cone_m(alpha):
    """M = exp(i alpha / 2)."""
    return mpmath.expj(mpmath.mpf(alpha) / 2)


# -- 2x2 numeric helpers (tuples are much lighter than mpmath.matrix) --------

def mat_mul(a, b):
    return (
        a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3],
    )


def mat_inv(a):
    det = a[0] * a[3] - a[1] * a[2]
    return (a[3] / det, -a[1] / det, -a[2] / det, a[0] / det)


def mat_word(word: GroupWord, S, T):
    gens = {("s", 1): S, ("s", -1): mat_inv(S), ("t", 1): T, ("t", -1): mat_inv(T)}
    out = (1, 0, 0, 1)
    for letter in word:
        out = mat_mul(out, gens[letter])
    return out


def parabolic_matrices(x, M):
    """Numeric S, T, c in the (M, x) coordinates."""
    S = (M, 1, 0, 1 / M)
    T = (M, 0, 2 - M**2 - M**-2 - x, 1 / M)
    r = mpmath.sqrt(-1 + 2 * M**2 - M**4 - M**2 * x)
    c = (0, -M / r, r / M, 0)
    return S, T, c


def trace_ratio_numeric(word: GroupWord, x, M):
    """tr(SWc)/tr(Sc) numerically in (M, x) coordinates."""
    S, T, _ = parabolic_matrices(x, M)
    A = mat_mul(S, mat_word(word, S, T))
    r2 = -1 + 2 * M**2 - M**4 - M**2 * x
    return A[1] - A[2] * M**2 / r2


# ---------------------------------------------------------------------------
# general slopes in (alpha, d) coordinates


@dataclass(frozen=True)
class GeneralRepParams:
    """Cone angle alpha in (0, pi] and complex axis distance d."""

    alpha: object
    d: object

    def __post_init__(self):
        if not 0 < self.alpha <= mpmath.pi:
            raise ValueError(f"alpha must lie in (0, pi], got {self.alpha}")

    @property
    def A(self):
        return mpmath.cot(mpmath.mpf(self.alpha) / 2)

    @property
    def V(self):
        return mpmath.cosh(self.d)


def general_matrices(params: GeneralRepParams):
    """S, T with cos(alpha/2) diagonals and i e^{+-d/2} sin(alpha/2) off-diagonals."""
    h = mpmath.mpf(params.alpha) / 2
    co, si = mpmath.cos(h), mpmath.sin(h)
    ep, em = mpmath.exp(mpmath.mpc(params.d) / 2), mpmath.exp(-mpmath.mpc(params.d) / 2)
    j = mpmath.mpc(0, 1)
    S = (co, j * ep * si, j * em * si, co)
    T = (co, j * em * si, j * ep * si, co)
    return S, T


GENERAL_C = (0, -1, 1, 0)


def rm_general_value(slope: Slope | GroupWord, params: GeneralRepParams, tol=None):
    """tr(SWc)/tr(Sc) for the Schubert word of ``slope`` (raw, unnormalized).

    Vanishes exactly when (alpha, d) defines a representation.  A
    ``GroupWord`` may be passed instead of a slope.
    """
    word = slope if isinstance(slope, GroupWord) else schubert_word(slope)
    S, T = general_matrices(params)
    sc = mat_mul(S, GENERAL_C)
    den = sc[0] + sc[3]
    if tol is None:
        tol = mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    if abs(den) <= tol:
        raise DegenerateParameterError("tr(Sc) vanishes: reducible representation")
    swc = mat_mul(mat_mul(S, mat_word(word, S, T)), GENERAL_C)
    return (swc[0] + swc[3]) / den


def coordinate_bridge(alpha, d):
    """x = 2 - tr(ST) = 2 sin^2(alpha/2) (1 + cosh d)."""
    return 2 * mpmath.sin(mpmath.mpf(alpha) / 2) ** 2 * (1 + mpmath.cosh(d))


def inverse_bridge(alpha, x):
    """cosh d recovered from x: V = x / (2 sin^2(alpha/2)) - 1."""
    return x / (2 * mpmath.sin(mpmath.mpf(alpha) / 2) ** 2) - 1
