"""Exhaustive backtracking search for SEDFs in a small abelian group.

Used as an oracle for the filters on tiny parameter sets.  Families are
reported up to translation and reordering of the sets.
"""

from __future__ import annotations

import numpy as np

from .designs import DifferenceFamily
from .groups import GroupSpec


class SearchBudgetExceeded(RuntimeError):
    pass


def _canonical(G: GroupSpec, sets: list[list[int]], add: np.ndarray) -> tuple[tuple[int, ...], ...]:
    best = None
    for t in range(G.order):
        cand = tuple(sorted(tuple(sorted(int(add[x, t]) for x in s)) for s in sets))
        if best is None or cand < best:
            best = cand
    return best


def exhaustive_sedf_search(
    G: GroupSpec, m: int, k: int, lam: int, budget: int = 10**7
) -> list[DifferenceFamily]:
    """Every (v, m, k, lambda)-SEDF in G, one per translation class.

    WLOG the sets are listed by increasing least element and the first one
    contains the identity.  ``budget`` caps the number of search nodes.
    """
    v = G.order
    if m < 2 or k < 1 or lam < 1:
        raise ValueError("need m >= 2, k >= 1, lambda >= 1")
    if k * k * (m - 1) != lam * (v - 1) or k * m > v:
        return []
    G._check_cap()
    sub = G._sub_table
    if sub is None:
        codes = np.arange(v)
        sub = G.difference_codes(codes, codes).reshape(v, v)
    # add[x, t] = x + t
    neg = sub[0]
    add = sub[:, neg]

    owner = np.full(v, -1, dtype=np.int64)
    sets: list[list[int]] = [[] for _ in range(m)]
    cnt = np.zeros((m, v), dtype=np.int64)
    nodes = 0
    found: dict[tuple, None] = {}

    def place(x: int, j: int) -> bool:
        """Add x to set j, updating counts; False (and rolled back) on overflow."""
        ok = True
        for i in range(m):
            if i == j or not sets[i]:
                continue
            ys = np.array(sets[i], dtype=np.int64)
            np.add.at(cnt[j], sub[x, ys], 1)
            np.add.at(cnt[i], sub[ys, x], 1)
            if cnt[j].max() > lam or cnt[i].max() > lam:
                ok = False
        sets[j].append(x)
        owner[x] = j
        if not ok:
            unplace(x, j)
        return ok

    def unplace(x: int, j: int) -> None:
        sets[j].pop()
        owner[x] = -1
        for i in range(m):
            if i == j or not sets[i]:
                continue
            ys = np.array(sets[i], dtype=np.int64)
            np.add.at(cnt[j], sub[x, ys], -1)
            np.add.at(cnt[i], sub[ys, x], -1)

    def rec(j: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"search exceeded {budget} nodes")
        if j == m:
            expected = np.full(v, lam)
            expected[0] = 0
            if all(np.array_equal(cnt[i], expected) for i in range(m)):
                found.setdefault(_canonical(G, sets, add), None)
            return
        s = sets[j]
        if len(s) == k:
            rec(j + 1)
            return
        if not s:
            # least element of set j exceeds the least element of set j-1
            lo = 0 if j == 0 else sets[j - 1][0] + 1
            hi = 1 if j == 0 else v
        else:
            lo, hi = s[-1] + 1, v
        for x in range(lo, hi):
            if owner[x] >= 0:
                continue
            if place(x, j):
                rec(j)
                unplace(x, j)

    rec(0)
    out = []
    for key in sorted(found):
        fam = tuple(tuple(G.decode(c) for c in s) for s in key)
        out.append(DifferenceFamily(G, fam, lam))
    return out
