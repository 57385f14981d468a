"""Two-bridge knots: slopes, Schubert words and the C(2n,4) relator word.

Everything here is exact integer arithmetic; no floating point is involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidKnotError

GENERATORS = ("s", "t")


@dataclass(frozen=True)
class Slope:
    """The slope q/p of a two-bridge knot K_{q/p}.

    ``p`` is odd and > 1, ``gcd(p, q) = 1`` and ``-p < q < p``.  An even
    ``q`` is accepted (e.g. 2/9); :meth:`odd_representative` gives the
    congruent odd numerator used to build the Schubert word.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise InvalidKnotError(f"slope entries must be integers, got {p!r}, {q!r}")
        if p <= 1 or p % 2 == 0:
            raise InvalidKnotError(f"p must be odd and > 1, got {p}")
        if not -p < q < p:
            raise InvalidKnotError(f"q must satisfy -p < q < p, got q={q}, p={p}")
        if gcd(p, q) != 1:
            raise InvalidKnotError(f"gcd(p, q) must be 1, got gcd({p}, {q}) = {gcd(p, q)}")

    @classmethod
    def from_fraction(cls, num: int, den: int) -> "Slope":
        """Normalize num/den so that the denominator is positive and in range."""
        if den == 0:
            raise InvalidKnotError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        num, den = num // g, den // g
        # bring q into (-p, p) keeping its parity odd when possible
        q = num % (2 * den)
        if q >= den:
            q -= 2 * den
        return cls(den, q)

    def odd_representative(self) -> int:
        """The odd integer congruent to q mod p inside (-p, p)."""
        if self.q % 2:
            return self.q
        return self.q - self.p if self.q > 0 else self.q + self.p

    def __str__(self):
        return f"{self.q}/{self.p}"


@dataclass(frozen=True)
class GroupWord:
    """A word in the generators s, t stored as ``((gen, exp), ...)``.

    Words are kept unreduced; call :meth:`free_reduce` explicitly.
    """

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for gen, exp in self.letters:
            if gen not in GENERATORS or exp not in (1, -1):
                raise ValueError(f"bad letter {(gen, exp)!r}")

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse ``"t s^-1 t"`` or the compact ``"tStS"`` (capital = inverse)."""
        letters = []
        tokens = text.split() if " " in text.strip() else list(text.strip())
        for tok in tokens:
            if tok.endswith("^-1"):
                letters.append((tok[:-3], -1))
            elif tok in ("S", "T"):
                letters.append((tok.lower(), -1))
            elif tok:
                letters.append((tok, 1))
        return cls(tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "GroupWord":
        if k < 0:
            return self.inverse() ** (-k)
        return GroupWord(self.letters * k)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def reversed(self) -> "GroupWord":
        """The word read backwards (w* in l = w w*), exponents unchanged."""
        return GroupWord(tuple(reversed(self.letters)))

    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.letters)

    def free_reduce(self) -> "GroupWord":
        out: list[tuple[str, int]] = []
        for g, e in self.letters:
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        return GroupWord(tuple(out))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)


@dataclass(frozen=True)
class ConwayKnot2n4:
    """The two-bridge knot C(2n, 4): n right-handed horizontal full twists."""

    n: int

    def __post_init__(self):
        if self.n == 0:
            raise InvalidKnotError("C(0,4) is not in the family; n must be nonzero")

    @property
    def slope(self) -> Slope:
        return slope_of_c2n4(self.n)

    @property
    def word(self) -> GroupWord:
        return c2n4_word(self.n)


def slope_of_c2n4(n: int) -> Slope:
    """Slope (6n+1)/(8n+1) of C(2n,4) with signs normalized so that p > 1."""
    if n == 0:
        raise InvalidKnotError("C(0,4) is not in the family; n must be nonzero")
    return Slope.from_fraction(6 * n + 1, 8 * n + 1)


def schubert_epsilons(slope: Slope) -> tuple[int, ...]:
    p, q = slope.p, slope.odd_representative()
    return tuple(-1 if (j * q // p) % 2 else 1 for j in range(1, p))


def schubert_word(slope: Slope) -> GroupWord:
    """w = t^e1 s^e2 ... t^e_{p-2} s^e_{p-1} with e_j = (-1)^floor(jq/p)."""
    eps = schubert_epsilons(slope)
    return GroupWord(tuple((GENERATORS[(j + 1) % 2], e) for j, e in enumerate(eps)))


C2N4_BLOCK = GroupWord.parse("t s^-1 t s^-1 t^-1 s t^-1 s")


def c2n4_word(n: int) -> GroupWord:
    """(t s^-1 t s^-1 t^-1 s t^-1 s)^n; negative n gives the inverse block."""
    if n == 0:
        raise InvalidKnotError("C(0,4) is not in the family; n must be nonzero")
    return C2N4_BLOCK ** n


def knots_equivalent(a: Slope, b: Slope) -> bool:
    """Schubert's criterion: p = p' and q' = q^{+-1} mod p."""
    if a.p != b.p:
        return False
    p = a.p
    return (a.q - b.q) % p == 0 or (a.q * b.q - 1) % p == 0
