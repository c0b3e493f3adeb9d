"""Exact arithmetic in Z[zeta_n] and the elementary number theory used by
the nonexistence filters.

Elements of Z[zeta_n] are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1)
after reduction modulo the n-th cyclotomic polynomial, so equality of two
:class:`CycInt` values of the same order is equality of coefficient tuples.

>>> z3 = CycInt.root(3)
>>> (1 + z3) * (1 + z3 * z3)
CycInt(3, (1, 0))
>>> z3.conjugate()
CycInt(3, (-1, -1))
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint as _sympy_factorint


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n`` as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"cannot factorise {n}")
    return tuple(sorted(_sympy_factorint(n).items()))


def prime_power_parts(n: int) -> dict[int, int]:
    """Map each prime p | n to p**e where p**e || n."""
    return {p: p**e for p, e in factorize(n)}


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorize(n)) == 1


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n``."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def nt_valuation(q: int, u: int) -> int:
    """Exponent f with q**f || u."""
    if u == 0:
        raise ValueError("valuation of 0 is undefined")
    if q < 2:
        raise ValueError(f"invalid prime {q}")
    u = abs(u)
    f = 0
    while u % q == 0:
        u //= q
        f += 1
    return f


@lru_cache(maxsize=1 << 16)
def nt_order(q: int, n: int) -> int:
    """Multiplicative order of q modulo n."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if gcd(q, n) != 1:
        raise ValueError(f"{q} is not a unit modulo {n}")
    if n == 1:
        return 1
    order = totient(n)
    for r, _ in factorize(order) if order > 1 else ():
        while order % r == 0 and pow(q, order // r, n) == 1:
            order //= r
    return order


def nt_is_primitive_root(q: int, n: int) -> bool:
    """True iff q generates the unit group modulo n (False if it is not cyclic)."""
    if gcd(q, n) != 1:
        return False
    return nt_order(q, n) == totient(n)


def coprime_part(n: int, q: int) -> int:
    """Largest divisor of n not divisible by the prime q."""
    while n % q == 0:
        n //= q
    return n


def nt_is_self_conjugate(q: int, n: int) -> bool:
    """True iff q**j == -1 modulo the q-free part of n for some j."""
    nq = coprime_part(n, q)
    if nq <= 2:
        # -1 == 1 modulo 1 and 2
        return True
    order = nt_order(q, nq)
    # -1 is the only element of order 2 inside the cyclic group <q>
    return order % 2 == 0 and pow(q, order // 2, nq) == nq - 1


# ---------------------------------------------------------------------------
# integer polynomials and cyclotomic polynomials
# ---------------------------------------------------------------------------


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients listed from degree 0 upwards."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Exact division by a monic polynomial."""
        d = divisor.coeffs
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = len(d) - 1
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                quot[i - dd] = c
                for j in range(dd + 1):
                    rem[i - dd + j] -= c * d[j]
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dd]))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """Phi_n, by dividing x^n - 1 by Phi_d for every proper divisor d of n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    poly = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    for d in divisors(n)[:-1]:
        poly, rem = poly.divmod_monic(cyclotomic_polynomial(d))
        if rem.coeffs:
            raise ArithmeticError(f"inexact division computing Phi_{n}")
    return poly


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row t holds the coefficients of x^t mod Phi_n, for 0 <= t < n."""
    phi = cyclotomic_polynomial(n).coeffs
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x, then eliminate x^deg using the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def reduction_table(n: int) -> np.ndarray:
    """Integer matrix R (n x phi(n)) with R[t] = x^t mod Phi_n."""
    return np.array(_reduction_rows(n), dtype=np.int64).reshape(n, -1)


# ---------------------------------------------------------------------------
# CycInt
# ---------------------------------------------------------------------------


class CycInt:
    """An element of Z[zeta_n] in reduced power-basis form."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[int]):
        if n < 1:
            raise ValueError(f"root-of-unity order must be positive, got {n}")
        rows = _reduction_rows(n)
        width = len(rows[0])
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > width:
            coeffs = _reduce_exponent_vector(n, coeffs)
        else:
            coeffs = coeffs + [0] * (width - len(coeffs))
        self.n = n
        self.coeffs = tuple(coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int, value: int) -> CycInt:
        return cls(n, (value,))

    @classmethod
    def root(cls, n: int, power: int = 1) -> CycInt:
        """zeta_n ** power."""
        counts = [0] * n
        counts[power % n] = 1
        return cls.from_exponent_counts(n, counts)

    @classmethod
    def from_exponent_counts(cls, n: int, counts: Sequence[int]) -> CycInt:
        """sum_t counts[t] * zeta_n**t for a length-n count vector."""
        if len(counts) != n:
            raise ValueError(f"expected {n} exponent counts, got {len(counts)}")
        obj = cls.__new__(cls)
        obj.n = n
        obj.coeffs = tuple(_reduce_exponent_vector(n, counts))
        return obj

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.n != self.n:
                raise ValueError(f"mismatched orders: Z[zeta_{self.n}] vs Z[zeta_{other.n}]")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.from_int(self.n, int(other))
        return NotImplemented

    def __add__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycInt(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.n, [-a for a in self.coeffs])

    def __sub__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycInt(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other) -> CycInt:
        return (-self) + other

    def __mul__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def conjugate(self) -> CycInt:
        return conjugate(self)

    # -- predicates -------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi / self.n)
        return complex(sum(c * z**i for i, c in enumerate(self.coeffs)))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt({self.n}, {self.coeffs})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.n}" if i == 1 else f"z{self.n}^{i}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _reduce_exponent_vector(n: int, vec: Sequence[int]) -> list[int]:
    """Reduce sum_t vec[t] x^t (any length) modulo Phi_n."""
    rows = _reduction_rows(n)
    width = len(rows[0])
    out = [0] * width
    for t, c in enumerate(vec):
        if c:
            c = int(c)
            row = rows[t % n]
            for j in range(width):
                if row[j]:
                    out[j] += c * row[j]
    return out


def multiply(x: CycInt, y: CycInt) -> CycInt:
    if x.n != y.n:
        raise ValueError(f"mismatched orders: Z[zeta_{x.n}] vs Z[zeta_{y.n}]")
    n = x.n
    acc = [0] * n
    for i, a in enumerate(x.coeffs):
        if a:
            for j, b in enumerate(y.coeffs):
                if b:
                    acc[(i + j) % n] += a * b
    return CycInt.from_exponent_counts(n, acc)


def conjugate(x: CycInt) -> CycInt:
    """Image of x under zeta_n -> zeta_n^{-1}."""
    n = x.n
    acc = [0] * n
    for i, a in enumerate(x.coeffs):
        acc[(-i) % n] += a
    return CycInt.from_exponent_counts(n, acc)


def absolute_square(x: CycInt) -> CycInt:
    return multiply(x, conjugate(x))
