"""Exact polynomial arithmetic in Z[M, M^-1][x].

``LaurentInt`` is an integer Laurent polynomial in M; ``BivarPoly`` is a
polynomial in x whose coefficients are ``LaurentInt``.  Both are immutable
and hashable, and all arithmetic uses Python integers (no rounding).
"""
from __future__ import annotations

import json
from collections.abc import Iterable, Mapping

import mpmath

# Guard against runaway exponents; |n| <= 50 stays well below this.
MAX_EXPONENT = 2**31 - 1


class LaurentInt:
    """Integer Laurent polynomial sum c_k M^k with no stored zero terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for k, c in items:
            k, c = int(k), int(c)
            if abs(k) > MAX_EXPONENT:
                raise OverflowError(f"M exponent {k} exceeds the supported range")
            acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentInt":
        return cls({k: c})

    @classmethod
    def constant(cls, c: int) -> "LaurentInt":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True for +-M^k, the units of Z[M, M^-1]."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentInt.constant(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            mono = "" if k == 0 else ("M" if k == 1 else f"M^{k}")
            if mono:
                coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            else:
                coef = str(c)
            parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __neg__(self):
        return LaurentInt({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentInt.constant(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentInt(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentInt.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentInt({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentInt):
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentInt(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentInt":
        """Multiply by M^k."""
        return LaurentInt({e + k: c for e, c in self._terms.items()})

    def reciprocal(self) -> "LaurentInt":
        """Substitute M -> 1/M."""
        return LaurentInt({-e: c for e, c in self._terms.items()})

    def unit_inverse(self) -> "LaurentInt":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self!r} is not a unit of Z[M, 1/M]")
        (k, c), = self._terms.items()
        return LaurentInt({-k: c})

    def __call__(self, M):
        return self.evaluate(M)

    def evaluate(self, M, alpha_derivs: int = 0, shift: int = 0):
        """Evaluate sum c_k M^(k+shift), optionally differentiated in alpha.

        With M = exp(i alpha / 2), d/dalpha M^k = (i k / 2) M^k.
        """
        total = 0
        for k, c in self._terms.items():
            e = k + shift
            term = c * M**e
            if alpha_derivs:
                term *= (mpmath.mpc(0, e) / 2) ** alpha_derivs
            total += term
        return total


class BivarPoly:
    """Polynomial in x with ``LaurentInt`` coefficients; index = power of x."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Iterable[LaurentInt | int] = ()):
        cs = [c if isinstance(c, LaurentInt) else LaurentInt.constant(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls([0, 1])

    @classmethod
    def from_laurent(cls, c: LaurentInt) -> "BivarPoly":
        return cls([c])

    @classmethod
    def from_dict(cls, data: Mapping[tuple[int, int], int]) -> "BivarPoly":
        """Build from ``{(x_power, m_exp): coeff}``."""
        deg = max((j for j, _ in data), default=-1)
        rows: list[dict[int, int]] = [dict() for _ in range(deg + 1)]
        for (j, k), c in data.items():
            rows[j][k] = rows[j].get(k, 0) + c
        return cls(LaurentInt(r) for r in rows)

    @property
    def coeffs(self) -> tuple[LaurentInt, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def leading(self) -> LaurentInt:
        return self._coeffs[-1] if self._coeffs else LaurentInt()

    def __getitem__(self, j: int) -> LaurentInt:
        return self._coeffs[j] if 0 <= j < len(self._coeffs) else LaurentInt()

    def __eq__(self, other):
        if isinstance(other, (int, LaurentInt)):
            other = BivarPoly([other])
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._coeffs)
        return self._hash

    def __repr__(self):
        if not self._coeffs:
            return "BivarPoly(0)"
        parts = [f"({c!r})*x^{j}" for j, c in enumerate(self._coeffs) if not c.is_zero()]
        return "BivarPoly(" + " + ".join(parts) + ")"

    @staticmethod
    def _lift(other):
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, (int, LaurentInt)):
            return BivarPoly([other])
        return NotImplemented

    def __neg__(self):
        return BivarPoly(-c for c in self._coeffs)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self._coeffs), len(other._coeffs))
        return BivarPoly(self[j] + other[j] for j in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentInt)):
            return BivarPoly(c * other for c in self._coeffs)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return BivarPoly()
        # accumulate in flat dicts; much faster than LaurentInt objects per product
        rows: list[dict[int, int]] = [dict() for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self._coeffs):
            a_items = list(a.items())
            for j, b in enumerate(other._coeffs):
                row = rows[i + j]
                for kb, cb in b.items():
                    for ka, ca in a_items:
                        row[ka + kb] = row.get(ka + kb, 0) + ca * cb
        return BivarPoly(LaurentInt(r) for r in rows)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BivarPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = BivarPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift_m(self, k: int) -> "BivarPoly":
        """Multiply by M^k."""
        return BivarPoly(c.shift(k) for c in self._coeffs)

    def reciprocal_m(self) -> "BivarPoly":
        """Substitute M -> 1/M."""
        return BivarPoly(c.reciprocal() for c in self._coeffs)

    def m_range(self) -> tuple[int, int]:
        nz = [c for c in self._coeffs if not c.is_zero()]
        return min(c.min_exp() for c in nz), max(c.max_exp() for c in nz)

    def divmod(self, divisor: "BivarPoly") -> tuple["BivarPoly", "BivarPoly"]:
        """Division in x; the divisor's leading coefficient must be a unit +-M^k."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        inv = divisor.leading().unit_inverse()
        rem = list(self._coeffs)
        dq = divisor.degree
        quot = [LaurentInt()] * max(len(rem) - dq, 0)
        for j in range(len(rem) - 1, dq - 1, -1):
            c = rem[j] * inv
            if c.is_zero():
                continue
            quot[j - dq] = c
            for i, d in enumerate(divisor._coeffs):
                rem[j - dq + i] = rem[j - dq + i] - c * d
        return BivarPoly(quot), BivarPoly(rem[:dq] if dq else [])

    def exact_div(self, divisor: "BivarPoly") -> "BivarPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative_x(self) -> "BivarPoly":
        return BivarPoly(c * j for j, c in enumerate(self._coeffs) if j)

    def coeffs_at(self, M) -> list:
        """x-coefficients (ascending) evaluated at a numeric M."""
        return [c.evaluate(M) for c in self._coeffs]

    def evaluate(self, x, M, x_derivs: int = 0, alpha_derivs: int = 0, shift: int = 0):
        """Evaluate M^shift * d^a/dalpha^a d^b/dx^b P at (x, M = e^{i alpha/2})."""
        total = 0
        for j in range(len(self._coeffs) - 1, x_derivs - 1, -1):
            fall = 1
            for r in range(x_derivs):
                fall *= j - r
            c = self._coeffs[j].evaluate(M, alpha_derivs, shift) * fall
            total = total * x + c
        return total

    def __call__(self, x, M):
        return self.evaluate(x, M)

    def to_json(self) -> dict:
        return {
            "x_deg": self.degree,
            "coeffs": [[[k, str(c)] for k, c in lc.items()] for lc in self._coeffs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Mapping) -> "BivarPoly":
        poly = cls(LaurentInt((int(k), int(c)) for k, c in row) for row in data["coeffs"])
        if poly.degree != data["x_deg"]:
            raise ValueError(f"x_deg {data['x_deg']} does not match {poly.degree} coefficient rows")
        return poly

    @classmethod
    def loads(cls, text: str) -> "BivarPoly":
        return cls.from_json(json.loads(text))
