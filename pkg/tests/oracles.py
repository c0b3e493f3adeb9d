"""Independent reference computations used to cross-check the package.

Nothing here imports from ``sedf``: each routine takes a different route to
the same quantity (brute force loops, sympy, floating point FFTs).
"""

from __future__ import annotations

from collections import Counter
from itertools import product

import numpy as np
import sympy


def brute_params(v_max: int, m_min: int = 2, m_max: int | None = None) -> list[tuple[int, int, int, int]]:
    """Direct quadruple search for k^2 (m-1) = lambda (v-1) with k >= 2, v > km."""
    out = []
    for v in range(2, v_max + 1):
        for m in range(m_min, (m_max or v) + 1):
            for k in range(2, v):
                if k * m >= v:
                    break
                num = k * k * (m - 1)
                if num % (v - 1) == 0:
                    out.append((v, m, k, num // (v - 1)))
    return sorted(out)


def add(g, h, moduli):
    return tuple((a + b) % q for a, b, q in zip(g, h, moduli))


def sub(g, h, moduli):
    return tuple((a - b) % q for a, b, q in zip(g, h, moduli))


def all_elements(moduli):
    return list(product(*(range(q) for q in moduli)))


def is_sedf(moduli, sets, lam) -> bool:
    """Count external differences with a Counter, one set at a time."""
    identity = tuple(0 for _ in moduli)
    for j, Dj in enumerate(sets):
        others = [y for i, s in enumerate(sets) if i != j for y in s]
        c = Counter(sub(x, y, moduli) for x in Dj for y in others)
        for g in all_elements(moduli):
            want = 0 if g == identity else lam
            if c.get(g, 0) != want:
                return False
    return True


def is_pds(moduli, D, v, k, lam, mu) -> bool:
    identity = tuple(0 for _ in moduli)
    members = set(D)
    c = Counter(sub(x, y, moduli) for x in D for y in D)
    for g in all_elements(moduli):
        want = k if g == identity else (lam if g in members else mu)
        if c.get(g, 0) != want:
            return False
    return True


def fft_character_sums(moduli, S) -> np.ndarray:
    """chi_h(S) for every h, as a complex array indexed like the group.

    Uses the identity chi_h(S) = sum_g 1_S(g) exp(2 pi i <h, g>) = conj(FFT(1_S))[h].
    """
    ind = np.zeros(tuple(moduli))
    for g in S:
        ind[tuple(g)] += 1
    return np.conj(np.fft.fftn(ind))


def sympy_cyclotomic(n: int) -> list[int]:
    x = sympy.Symbol("x")
    return [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]


def sympy_primitive_root(q: int, n: int) -> bool:
    return sympy.gcd(q, n) == 1 and sympy.n_order(q, n) == sympy.totient(n)


def self_conjugate_by_search(q: int, n: int) -> bool:
    """Search all powers of q mod the q-free part of n for -1."""
    while n % q == 0:
        n //= q
    if n <= 2:
        return True
    x = q % n
    for _ in range(n):
        if x == n - 1:
            return True
        x = x * q % n
    return False


def partition_count(n: int) -> int:
    return int(sympy.partition(n))


def abelian_group_count(v: int) -> int:
    count = 1
    for _, e in sympy.factorint(v).items():
        count *= partition_count(e)
    return count


def scvp_counts_from_sums(v, m, k, lam, a, b):
    """|G^0|, |G^+|, |G^-| from the two linear constraints they satisfy.

    |G^+| + |G^-| = v - 1 - |G^0| and the ratio of |G^+| to |G^-| is
    ((b-a)m + 2a) : ((b+a)m - 2a); |G^0| from the closed form.
    """
    R = sympy.Rational
    g0 = (v - 1) - R((v - 1) * (v - k * m) * (b * b - a * a) * m, 4 * a * a * k * (m - 1))
    rest = (v - 1) - g0
    wp, wm = (b - a) * m + 2 * a, (b + a) * m - 2 * a
    return g0, rest * R(wp, wp + wm), rest * R(wm, wp + wm)
