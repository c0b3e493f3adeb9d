"""Finite abelian groups written as products of prime-power cyclic groups.

Elements are residue tuples; the group law is componentwise addition.  A
group is described by a short string, e.g. ``"3^5"`` (five copies of Z_3),
``"9x3"`` or ``"243"`` (the cyclic group of order 243).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import lcm, prod
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import CycInt, factorize, is_prime_power

#: Largest group order for which elements are ever enumerated.
DEFAULT_ELEMENT_CAP = 10**6

# Subtraction tables are cached only for small groups.
_TABLE_LIMIT = 1024

Element = tuple[int, ...]


class GroupSpecError(ValueError):
    pass


def _prime_of(q: int) -> int:
    return factorize(q)[0][0]


def _canonical_factors(factors: Iterable[int]) -> tuple[int, ...]:
    # primes ascending, larger cyclic factors first within a prime
    return tuple(sorted(factors, key=lambda q: (_prime_of(q), -q)))


@dataclass(frozen=True)
class GroupSpec:
    """Z_{q_1} x ... x Z_{q_r} with every q_i a prime power."""

    factors: tuple[int, ...]
    element_cap: int = field(default=DEFAULT_ELEMENT_CAP, compare=False, repr=False)

    def __post_init__(self) -> None:
        facs = tuple(int(q) for q in self.factors)
        for q in facs:
            if not is_prime_power(q):
                raise GroupSpecError(f"factor {q} is not a prime power >= 2")
        object.__setattr__(self, "factors", _canonical_factors(facs))

    # -- invariants -------------------------------------------------------

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return lcm(*self.factors) if self.factors else 1

    @property
    def rank(self) -> int:
        return len(self.factors)

    def sylow_order(self, p: int) -> int:
        return prod(q for q in self.factors if q % p == 0)

    def sylow_exponent(self, p: int) -> int:
        return max((q for q in self.factors if q % p == 0), default=1)

    def primes(self) -> list[int]:
        return sorted({_prime_of(q) for q in self.factors})

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        i = 0
        facs = self.factors
        while i < len(facs):
            j = i
            while j < len(facs) and facs[j] == facs[i]:
                j += 1
            run = j - i
            q = facs[i]
            if run > 1 and len(factorize(q)) == 1 and factorize(q)[0][1] == 1:
                parts.append(f"{q}^{run}")
            else:
                parts.extend([str(q)] * run)
            i = j
        return "x".join(parts)

    # -- elements ---------------------------------------------------------

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def validate(self, g: Sequence[int]) -> Element:
        g = tuple(int(c) for c in g)
        if len(g) != self.rank:
            raise GroupSpecError(f"element {g} has {len(g)} coordinates, group {self} needs {self.rank}")
        for c, q in zip(g, self.factors):
            if not 0 <= c < q:
                raise GroupSpecError(f"coordinate {c} out of range for factor Z_{q} in {g}")
        return g

    def add(self, g: Element, h: Element) -> Element:
        return tuple((a + b) % q for a, b, q in zip(g, h, self.factors))

    def sub(self, g: Element, h: Element) -> Element:
        return tuple((a - b) % q for a, b, q in zip(g, h, self.factors))

    def neg(self, g: Element) -> Element:
        return tuple((-a) % q for a, q in zip(g, self.factors))

    def _check_cap(self) -> None:
        if self.order > self.element_cap:
            raise GroupSpecError(
                f"group of order {self.order} exceeds the element enumeration cap {self.element_cap}"
            )

    def elements(self) -> list[Element]:
        """All elements, in increasing mixed-radix code order."""
        self._check_cap()
        return list(product(*(range(q) for q in self.factors)))

    # -- mixed-radix encoding ---------------------------------------------

    @cached_property
    def strides(self) -> np.ndarray:
        # coordinate 0 varies slowest, so code order is lexicographic on tuples
        s = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            s[i] = s[i + 1] * self.factors[i + 1]
        return s

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    def encode(self, g: Sequence[int]) -> int:
        return int(np.dot(np.asarray(g, dtype=np.int64), self.strides)) if self.rank else 0

    def decode(self, code: int) -> Element:
        return tuple(int(c) for c in (code // self.strides) % self.moduli) if self.rank else ()

    def encode_array(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, self.rank)
        return coords @ self.strides

    def decode_array(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64).reshape(-1)
        return (codes[:, None] // self.strides[None, :]) % self.moduli[None, :]

    @cached_property
    def _sub_table(self) -> np.ndarray | None:
        if self.order > _TABLE_LIMIT:
            return None
        coords = self.decode_array(np.arange(self.order))
        diff = (coords[:, None, :] - coords[None, :, :]) % self.moduli
        return (diff @ self.strides).astype(np.int64)

    def difference_codes(self, a_codes: np.ndarray, b_codes: np.ndarray) -> np.ndarray:
        """Codes of a - b for every a in ``a_codes``, b in ``b_codes`` (flattened)."""
        a_codes = np.asarray(a_codes, dtype=np.int64)
        b_codes = np.asarray(b_codes, dtype=np.int64)
        table = self._sub_table
        if table is not None:
            return table[np.ix_(a_codes, b_codes)].ravel()
        ca = self.decode_array(a_codes)
        cb = self.decode_array(b_codes)
        out = []
        step = max(1, 2_000_000 // max(1, len(b_codes) * max(self.rank, 1)))
        for start in range(0, len(ca), step):
            diff = (ca[start : start + step, None, :] - cb[None, :, :]) % self.moduli
            out.append((diff @ self.strides).ravel())
        return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)

    def difference_counts(self, a_codes, b_codes) -> np.ndarray:
        """Multiplicity of each group element (by code) in {a - b}."""
        return np.bincount(self.difference_codes(a_codes, b_codes), minlength=self.order)

    # -- characters -------------------------------------------------------

    def pairing_weights(self, h: Sequence[int]) -> np.ndarray:
        e = self.exponent
        return np.array([(e // q) * c for c, q in zip(h, self.factors)], dtype=np.int64)

    def character_exponent(self, h: Sequence[int], g: Sequence[int]) -> int:
        """t with chi_h(g) = zeta_e**t."""
        e = self.exponent
        return sum((e // q) * a * b for a, b, q in zip(h, g, self.factors)) % e


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``term ("x" term)*`` with ``term := int ("^" int)?``.

    ``p^e`` (p prime) means e copies of Z_p; a bare integer is a cyclic
    factor and must be a prime power.  ``"1"`` is the trivial group.

    >>> parse_group_spec("3^5").factors
    (3, 3, 3, 3, 3)
    >>> parse_group_spec("4x2").order
    8
    """
    s = text.strip().replace(" ", "").replace("X", "x").replace("×", "x")
    if s == "1":
        return GroupSpec(())
    if not re.fullmatch(r"\d+(\^\d+)?(x\d+(\^\d+)?)*", s):
        raise GroupSpecError(f"malformed group spec {text!r}")
    factors: list[int] = []
    for term in s.split("x"):
        if "^" in term:
            base, exp = (int(t) for t in term.split("^"))
            if not (is_prime_power(base) and factorize(base)[0][1] == 1):
                raise GroupSpecError(f"in {term!r}: base {base} of a power term must be prime")
            if exp < 1:
                raise GroupSpecError(f"in {term!r}: exponent must be positive")
            factors.extend([base] * exp)
        else:
            q = int(term)
            if not is_prime_power(q):
                raise GroupSpecError(f"factor {q} is not a prime power")
            factors.append(q)
    return GroupSpec(tuple(factors))


def _partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n, parts non-increasing, in reverse-lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def enumerate_abelian_groups(v: int) -> list[GroupSpec]:
    """One GroupSpec per isomorphism class of abelian groups of order v."""
    if v < 1:
        raise ValueError(f"group order must be positive, got {v}")
    per_prime = [
        [tuple(p**part for part in lam) for lam in _partitions(e)] for p, e in factorize(v)
    ] if v > 1 else []
    return [GroupSpec(tuple(q for block in choice for q in block)) for choice in product(*per_prime)]


def is_subgroup(G: GroupSpec, S: Iterable[Sequence[int]]) -> bool:
    """True iff the nonempty subset S is closed under the group law and inverses."""
    codes = np.unique(np.array([G.encode(g) for g in S], dtype=np.int64))
    if len(codes) == 0:
        raise ValueError("subset must be nonempty")
    if G.order % len(codes):
        return False
    # a nonempty finite subset closed under subtraction is a subgroup
    diffs = np.unique(G.difference_codes(codes, codes))
    return len(diffs) == len(codes) and bool(np.all(diffs == codes))


def character_sum(G: GroupSpec, h: Sequence[int], S: Iterable[Sequence[int]]) -> CycInt:
    """sum_{g in S} chi_h(g) in Z[zeta_e], e = exp(G)."""
    e = G.exponent
    counts = [0] * e
    for g in S:
        counts[G.character_exponent(h, g)] += 1
    return CycInt.from_exponent_counts(e, counts)


def character_sums(G: GroupSpec, S_codes: Sequence[int], indices: Sequence[Sequence[int]] | None = None) -> list[CycInt]:
    """chi_h(S) for every character index h (default: all of G, in code order)."""
    e = G.exponent
    if indices is None:
        H = G.decode_array(np.arange(G.order)) if G.rank else np.zeros((1, 0), dtype=np.int64)
    else:
        H = np.asarray(indices, dtype=np.int64).reshape(-1, G.rank)
    S = G.decode_array(np.asarray(S_codes, dtype=np.int64)) if len(S_codes) else np.zeros((0, G.rank), dtype=np.int64)
    weights = H * (e // G.moduli)[None, :]
    exps = (weights @ S.T) % e if G.rank else np.zeros((len(H), len(S)), dtype=np.int64)
    out = []
    for row in exps:
        counts = np.bincount(row, minlength=e) if len(row) else np.zeros(e, dtype=np.int64)
        out.append(CycInt.from_exponent_counts(e, counts.tolist()))
    return out
