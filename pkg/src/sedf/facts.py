"""Literature facts the classifier relies on but does not re-derive."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from sympy import isprime

from .params import ParamSet

FACTS_VERSION = "2017.11-1"


@dataclass(frozen=True)
class Fact:
    kind: str  # "sedf" or "pds"
    params: str  # literal tuple or pattern id
    exists: bool
    citation: str
    witness: str | None = None


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _sedf_k2plus1(P: ParamSet) -> bool:
    return P.m == 2 and P.lam == 1 and P.v == P.k * P.k + 1


def _sedf_16t2(P: ParamSet) -> bool:
    v = P.v
    return (
        P.m == 2 and (v - 1) % 16 == 0 and _is_square((v - 1) // 16) and isprime(v)
        and P.k * 4 == v - 1 and P.lam * 16 == v - 1
    )


def _sedf_108t2(P: ParamSet) -> bool:
    v = P.v
    return (
        P.m == 2 and (v - 1) % 108 == 0 and _is_square((v - 1) // 108) and isprime(v)
        and P.k * 6 == v - 1 and P.lam * 36 == v - 1
    )


def _paley_prime(params: tuple[int, int, int, int]) -> bool:
    v, k, lam, mu = params
    return isprime(v) and v % 4 == 1 and (k, lam, mu) == ((v - 1) // 2, (v - 5) // 4, (v - 1) // 4)


_PATTERNS = {
    "sedf:(k^2+1,2,k,1)": _sedf_k2plus1,
    "sedf:(p,2,(p-1)/4,(p-1)/16),p=16t^2+1 prime": _sedf_16t2,
    "sedf:(p,2,(p-1)/6,(p-1)/36),p=108t^2+1 prime": _sedf_108t2,
    "pds:Paley,v prime,v=1 mod 4": _paley_prime,
}


@dataclass(frozen=True)
class KnownFactsTable:
    version: str
    entries: tuple[Fact, ...]

    def _match(self, fact: Fact, obj) -> bool:
        if fact.params in _PATTERNS:
            return _PATTERNS[fact.params](obj)
        return fact.params == str(tuple(obj.astuple() if isinstance(obj, ParamSet) else obj)).replace(" ", "")

    def sedf_fact(self, P: ParamSet) -> Fact | None:
        for f in self.entries:
            if f.kind == "sedf" and self._match(f, P):
                return f
        return None

    def pds_fact(self, params: tuple[int, int, int, int]) -> Fact | None:
        for f in self.entries:
            if f.kind == "pds" and self._match(f, params):
                return f
        return None


DEFAULT_FACTS = KnownFactsTable(
    version=FACTS_VERSION,
    entries=(
        Fact("sedf", "sedf:(k^2+1,2,k,1)", True,
             "Paterson-Stinson, Example 2.2: (k^2+1,2,k,1)-SEDF in Z_{k^2+1}", "k2plus1"),
        Fact("sedf", "sedf:(p,2,(p-1)/4,(p-1)/16),p=16t^2+1 prime", True,
             "Bao-Ji-Wei-Zhang, Theorem 4.3: cyclotomic construction in Z_p"),
        Fact("sedf", "sedf:(p,2,(p-1)/6,(p-1)/36),p=108t^2+1 prime", True,
             "Bao-Ji-Wei-Zhang, Theorem 4.6: cyclotomic construction in Z_p"),
        Fact("pds", "pds:Paley,v prime,v=1 mod 4", True,
             "Paley: nonzero squares of GF(v) form a regular Paley-type PDS", "paley"),
        Fact("pds", "(9,4,1,2)", True, "Paley: nonzero squares of GF(9) in Z_3^2"),
        Fact("pds", "(25,12,5,6)", True, "Paley: nonzero squares of GF(25) in Z_5^2"),
        Fact("pds", "(49,24,11,12)", True, "Paley: nonzero squares of GF(49) in Z_7^2"),
        Fact("pds", "(243,22,1,2)", True,
             "Berlekamp-van Lint-Seidel; Calderbank-Kantor Section 10: ternary Golay code PDS in Z_3^5"),
        Fact("pds", "(45,22,10,11)", False,
             "Ma 1994, Corollary 6.3: no nontrivial regular (45,22,10,11)-PDS in an abelian group"),
    ),
)
