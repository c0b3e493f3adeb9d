"""Explicit SEDF and PDS constructions.

The near-complete (243, 11, 22, 20) family comes from the point orbits of a
cyclic subgroup of M11 acting on PG(4, 3).  Every generator here is checked by
the verifiers in :mod:`sedf.designs` before anything downstream trusts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cyclotomic import factorize, is_prime_power
from .designs import DifferenceFamily, verify_pds
from .groups import GroupSpec


class ConstructionError(AssertionError):
    """A built-in sanity identity failed; the embedded constants are wrong."""


@dataclass(frozen=True)
class MatrixGF:
    p: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not (is_prime_power(self.p) and factorize(self.p)[0][1] == 1):
            raise ValueError(f"modulus {self.p} is not prime")
        rows = tuple(tuple(int(c) % self.p for c in row) for row in self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, p: int, d: int) -> MatrixGF:
        return cls(p, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def d(self) -> int:
        return len(self.entries)

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def scale(self, c: int) -> MatrixGF:
        return MatrixGF(self.p, tuple(tuple(c * x for x in row) for row in self.entries))

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        return mat_mul(self, other)


def _check_compatible(A: MatrixGF, B: MatrixGF) -> None:
    if A.p != B.p:
        raise ValueError(f"matrices over different fields: {A.p} vs {B.p}")
    if A.d != B.d:
        raise ValueError(f"shape mismatch: {A.d}x{A.d} vs {B.d}x{B.d}")


def mat_mul(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    _check_compatible(A, B)
    prod_ = (A.array() @ B.array()) % A.p
    return MatrixGF(A.p, tuple(map(tuple, prod_.tolist())))


def mat_pow(A: MatrixGF, n: int) -> MatrixGF:
    if n < 0:
        raise ValueError("negative powers are not supported")
    result = MatrixGF.identity(A.p, A.d)
    base = A
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def proj_equal(A: MatrixGF, B: MatrixGF) -> bool:
    """Equality in PGL: A = cB for a nonzero scalar c."""
    _check_compatible(A, B)
    return any(A == B.scale(c) for c in range(1, A.p))


@dataclass(frozen=True)
class ProjPoint:
    """A point of PG(d-1, p), stored with first nonzero coordinate 1."""

    p: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        x = tuple(int(c) % self.p for c in self.coords)
        lead = next((c for c in x if c), 0)
        if not lead:
            raise ValueError("the zero vector is not a projective point")
        inv = pow(lead, -1, self.p)
        object.__setattr__(self, "coords", tuple(c * inv % self.p for c in x))

    def times(self, A: MatrixGF) -> ProjPoint:
        """Row vector times matrix."""
        return ProjPoint(self.p, tuple(((np.array(self.coords) @ A.array()) % self.p).tolist()))

    def vectors(self) -> list[tuple[int, ...]]:
        """All nonzero vectors on this point: c * x for c = 1, ..., p - 1."""
        return [tuple(c * x % self.p for x in self.coords) for c in range(1, self.p)]


def orbit_of_point(x: ProjPoint, A: MatrixGF) -> list[ProjPoint]:
    """The orbit of x under <A>, in the order x, xA, xA^2, ..."""
    out = [x]
    seen = {x}
    y = x.times(A)
    while y not in seen:
        seen.add(y)
        out.append(y)
        y = y.times(A)
    if y != x:
        raise ValueError("matrix is not invertible on this orbit")
    return out


# Generators of M11 inside PGL(5, 3) and a generator S of the centralizer of XY.
M11_X = MatrixGF(3, (
    (0, 2, 1, 0, 0),
    (2, 1, 1, 2, 2),
    (0, 1, 1, 2, 2),
    (1, 0, 2, 2, 1),
    (1, 2, 2, 2, 0),
))
M11_Y = MatrixGF(3, (
    (0, 0, 2, 0, 2),
    (1, 1, 2, 2, 0),
    (2, 2, 2, 2, 2),
    (1, 2, 1, 1, 0),
    (2, 2, 0, 2, 1),
))
M11_S = MatrixGF(3, (
    (1, 2, 2, 1, 2),
    (1, 2, 0, 1, 2),
    (0, 2, 2, 1, 2),
    (0, 0, 0, 0, 2),
    (1, 1, 1, 0, 1),
))


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ConstructionError(what)


def m11_orbits() -> list[list[ProjPoint]]:
    """O_1, ..., O_11: the <W>-orbits of <e_1 S^(j-1)>, with W = XY."""
    X, Y, S = M11_X, M11_Y, M11_S
    I = MatrixGF.identity(3, 5)
    W = X @ Y
    _require(proj_equal(mat_pow(X, 2), I), "X^2 != I in PGL(5,3)")
    _require(proj_equal(mat_pow(Y, 4), I), "Y^4 != I in PGL(5,3)")
    _require(proj_equal(mat_pow(W, 11), I), "(XY)^11 != I in PGL(5,3)")
    _require(proj_equal(mat_pow(S, 11), W), "S^11 != XY in PGL(5,3)")
    _require(proj_equal(S @ W, W @ S), "S does not commute with XY")

    e1 = ProjPoint(3, (1, 0, 0, 0, 0))
    orbits = []
    start = e1
    for _ in range(11):
        orb = orbit_of_point(start, W)
        _require(len(orb) == 11, f"orbit of size {len(orb)}, expected 11")
        orbits.append(orb)
        start = start.times(S)
    points = {pt for orb in orbits for pt in orb}
    _require(len(points) == 121, "orbits do not partition the 121 points of PG(4,3)")
    return orbits


def construct_m11_sedf() -> DifferenceFamily:
    """The near-complete (243, 11, 22, 20)-SEDF in Z_3^5."""
    G = GroupSpec((3,) * 5)
    sets = tuple(
        tuple(sorted(vec for pt in orb for vec in pt.vectors())) for orb in m11_orbits()
    )
    F = DifferenceFamily(G, sets, 20)
    for B in sets:
        rep = verify_pds(G, B, (243, 22, 1, 2))
        _require(rep.passed and rep.regular and rep.nontrivial, "an orbit set is not a regular (243,22,1,2)-PDS")
    return F


def construct_k2plus1(k: int) -> DifferenceFamily:
    """A (k^2+1, 2, k, 1)-SEDF in the cyclic group of order k^2 + 1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    v = k * k + 1
    G = GroupSpec(factorize_cyclic(v))
    D1 = [i for i in range(k)]
    D2 = [k * i for i in range(1, k + 1)]
    return DifferenceFamily(G, (tuple(cyclic_element(G, a) for a in D1), tuple(cyclic_element(G, a) for a in D2)), 1)


def factorize_cyclic(n: int) -> tuple[int, ...]:
    """Prime-power factors of Z_n."""
    return tuple(p**e for p, e in factorize(n)) if n > 1 else ()


def cyclic_element(G: GroupSpec, a: int) -> tuple[int, ...]:
    """The image of the integer a in Z_n written as a product of prime-power cyclic groups."""
    return tuple(a % q for q in G.factors)


def construct_paley_pds(p: int) -> list[int]:
    """Nonzero squares mod a prime p = 1 (mod 4), sorted."""
    if not (p > 2 and factorize(p) == ((p, 1),)):
        raise ValueError(f"{p} is not an odd prime")
    if p % 4 != 1:
        raise ValueError(f"{p} is not 1 mod 4")
    return sorted({x * x % p for x in range(1, p)})


def sedf_from_pds(G: GroupSpec, D1: Sequence[Sequence[int]]) -> DifferenceFamily:
    """{D1, G minus (D1 and the identity)} from a Paley-type PDS D1."""
    v = G.order
    if v % 4 != 1:
        raise ValueError(f"group order {v} is not 1 mod 4")
    params = (v, (v - 1) // 2, (v - 5) // 4, (v - 1) // 4)
    D1 = [G.validate(x) for x in D1]
    if G.identity in D1:
        raise ValueError("the PDS must not contain the identity")
    rep = verify_pds(G, D1, params)
    if not rep.passed:
        raise ValueError(f"subset is not a {params}-PDS")
    members = set(D1)
    D2 = [g for g in G.elements() if g != G.identity and g not in members]
    return DifferenceFamily(G, (tuple(sorted(D1)), tuple(D2)), (v - 1) // 4)


def paley_sedf(p: int) -> DifferenceFamily:
    G = GroupSpec((p,))
    return sedf_from_pds(G, [(x,) for x in construct_paley_pds(p)])


__all__ = [
    "ConstructionError", "MatrixGF", "ProjPoint", "mat_mul", "mat_pow", "proj_equal",
    "orbit_of_point", "m11_orbits", "construct_m11_sedf", "construct_k2plus1",
    "construct_paley_pds", "sedf_from_pds", "paley_sedf",
]
