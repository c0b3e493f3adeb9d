"""Parameter sets (v, m, k, lambda) and the arithmetic of their character
value pairs (a, b)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import divisors, factorize


@dataclass(frozen=True, order=True)
class ParamSet:
    v: int
    m: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        if min(self.v, self.m, self.k, self.lam) < 1:
            raise ValueError(f"parameters must be positive: {self.astuple()}")
        if self.k * self.k * (self.m - 1) != self.lam * (self.v - 1):
            raise ValueError(f"{self.astuple()} violates k^2 (m-1) = lambda (v-1)")

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.m, self.k, self.lam)

    @property
    def near_complete(self) -> bool:
        return self.v == self.k * self.m + 1

    @property
    def nontrivial_candidate(self) -> bool:
        return self.k > 1 and self.v > self.k * self.m

    def __str__(self) -> str:
        return "({},{},{},{})".format(*self.astuple())


def parse_params(text: str) -> ParamSet:
    parts = text.replace("(", "").replace(")", "").split(",")
    if len(parts) != 4:
        raise ValueError(f"expected v,m,k,lambda, got {text!r}")
    return ParamSet(*(int(p) for p in parts))


def _divisors_of_product(k: int, m: int) -> list[int]:
    """Divisors of k^2 (m - 1) built from cached factorisations."""
    exps: dict[int, int] = {}
    for p, e in factorize(k):
        exps[p] = exps.get(p, 0) + 2 * e
    if m > 2:
        for p, e in factorize(m - 1):
            exps[p] = exps.get(p, 0) + e
    divs = [1]
    for p, e in exps.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    divs.sort()
    return divs


def enumerate_params(v_max: int, m_min: int = 2, m_max: int | None = None) -> list[ParamSet]:
    """Every (v, m, k, lambda) with k >= 2, v > km, v <= v_max and k^2 (m-1) = lambda (v-1).

    Sorted by (v, m, k, lambda).
    """
    if v_max < 5:
        raise ValueError("v_max must be at least 5")
    m_min = max(m_min, 2)
    if m_max is None:
        m_max = (v_max - 1) // 2
    out: list[ParamSet] = []
    for m in range(m_min, m_max + 1):
        k = 2
        while k * m < v_max:
            prod_ = k * k * (m - 1)
            for d in _divisors_of_product(k, m):
                # d = v - 1 must satisfy v > km
                if d < k * m:
                    continue
                if d + 1 > v_max:
                    break
                out.append(ParamSet(d + 1, m, k, prod_ // d))
            k += 1
    out.sort()
    return out


@dataclass(frozen=True, order=True)
class ABPair:
    a: int
    b: int

    def __iter__(self):
        return iter((self.a, self.b))

    def __str__(self) -> str:
        return f"({self.a},{self.b})"

    def abs_sq_D(self, lam: int) -> Fraction:
        """|chi(D)|^2 for a character carrying this pair."""
        a, b = self.a, self.b
        return Fraction(4 * a * a * lam, b * b - a * a)

    def abs_sq_plus(self, lam: int) -> Fraction:
        a, b = self.a, self.b
        return Fraction((b + a) * lam, b - a)

    def abs_sq_minus(self, lam: int) -> Fraction:
        a, b = self.a, self.b
        return Fraction((b - a) * lam, b + a)


def ab_pair_admissible(m: int, lam: int, a: int, b: int) -> bool:
    """The divisibility conditions every realised pair must satisfy."""
    if not (0 < a < b) or gcd(a, b) != 1:
        return False
    if (m - 2) % b:
        return False
    if (b * m - a * (m - 2)) % (2 * b):
        return False
    if ((b + a) * lam) % (b - a) or ((b - a) * lam) % (b + a):
        return False
    d = b * b - a * a
    if (4 * lam) % d:
        return False
    if (a + b) % 2 and lam % d:
        return False
    return True


def feasible_ab_pairs(m: int, lam: int) -> list[ABPair]:
    """All (a, b) compatible with m and lambda, sorted; m must exceed 2."""
    if m <= 2:
        raise ValueError("(a, b) pairs are only defined for m > 2")
    return [
        ABPair(a, b)
        for b in divisors(m - 2)
        if b >= 2
        for a in range(1, b)
        if ab_pair_admissible(m, lam, a, b)
    ]


def scvp_counts(P: ParamSet, ab: ABPair) -> tuple[Fraction, Fraction, Fraction]:
    """Sizes of G^0, G^+, G^- forced by the simple character value property."""
    v, m, k, lam = P.astuple()
    a, b = ab
    if m <= 2:
        raise ValueError("SCVP counts need m > 2")
    d = b * b - a * a
    g0 = (v - 1) * (1 - Fraction(d * (v - k * m) * m, 4 * a * a * k * (m - 1)))
    denom = 8 * a * a * b * k * (m - 1)
    gplus = Fraction((v - 1) * (v - k * m) * d * ((b - a) * m + 2 * a), denom)
    gminus = Fraction((v - 1) * (v - k * m) * d * ((b + a) * m - 2 * a), denom)
    return g0, gplus, gminus


def scvp_admissible(P: ParamSet, ab: ABPair) -> bool:
    counts = scvp_counts(P, ab)
    return all(c.denominator == 1 and c >= 0 for c in counts) and counts[1] + counts[2] > 0
