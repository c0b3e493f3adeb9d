"""Difference families: EDF/SEDF/PDS verification and character spectra.

All checks count differences exactly over dense arrays indexed by the
mixed-radix element code, so nothing here depends on hashing order or
floating point (apart from the sign test used for m = 2 spectra, see
:func:`spectrum`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from .cyclotomic import CycInt, absolute_square
from .groups import Element, GroupSpec, character_sums, is_subgroup


class MalformedFamilyError(ValueError):
    """Structural problem with a family: overlap, unequal sizes, bad elements."""


class NotAnSEDFError(ValueError):
    pass


class SpectrumInconsistency(ArithmeticError):
    """Character values contradict the integrality forced on an SEDF with m > 2."""


@dataclass(frozen=True)
class DifferenceFamily:
    """m pairwise disjoint k-subsets of an abelian group, with a declared lambda."""

    group: GroupSpec
    sets: tuple[tuple[Element, ...], ...]
    lam: int

    def __post_init__(self) -> None:
        G = self.group
        sets = tuple(tuple(G.validate(g) for g in s) for s in self.sets)
        if len(sets) < 2:
            raise MalformedFamilyError(f"a family needs m >= 2 sets, got {len(sets)}")
        sizes = {len(s) for s in sets}
        if len(sizes) != 1:
            raise MalformedFamilyError(f"sets have unequal sizes {sorted(sizes)}")
        seen: dict[Element, int] = {}
        for j, s in enumerate(sets):
            if len(set(s)) != len(s):
                raise MalformedFamilyError(f"set {j + 1} contains a repeated element")
            for g in s:
                if g in seen:
                    raise MalformedFamilyError(f"element {g} lies in sets {seen[g] + 1} and {j + 1}")
                seen[g] = j
        if self.lam < 1:
            raise MalformedFamilyError(f"lambda must be positive, got {self.lam}")
        object.__setattr__(self, "sets", sets)

    @property
    def v(self) -> int:
        return self.group.order

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def k(self) -> int:
        return len(self.sets[0])

    @property
    def declared(self) -> tuple[int, int, int, int]:
        return (self.v, self.m, self.k, self.lam)

    def union(self) -> list[Element]:
        return [g for s in self.sets for g in s]

    @property
    def near_complete(self) -> bool:
        return self.v == self.k * self.m + 1 and self.group.identity not in self.union()

    def codes(self, j: int) -> np.ndarray:
        return np.array([self.group.encode(g) for g in self.sets[j]], dtype=np.int64)

    def translate(self, g: Element) -> DifferenceFamily:
        G = self.group
        return DifferenceFamily(G, tuple(tuple(G.add(x, g) for x in s) for s in self.sets), self.lam)


@dataclass
class VerificationReport:
    kind: str
    passed: bool
    failing_index: int | None = None
    deviations: dict[Element, int] = field(default_factory=dict)
    near_complete: bool | None = None
    contains_identity: bool | None = None
    nontrivial_sets: list[bool] | None = None
    regular: bool | None = None
    nontrivial: bool | None = None

    def core(self) -> tuple:
        """The translation-invariant part of the verdict."""
        return (self.kind, self.passed, self.failing_index, tuple(sorted(self.deviations.items())))

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "passed": self.passed,
            "failing_index": self.failing_index,
            "deviations": [{"element": list(g), "excess": c} for g, c in sorted(self.deviations.items())],
        }
        for key in ("near_complete", "contains_identity", "nontrivial_sets", "regular", "nontrivial"):
            val = getattr(self, key)
            if val is not None:
                d[key] = val
        return d


def _deviation_map(G: GroupSpec, counts: np.ndarray, expected: np.ndarray) -> dict[Element, int]:
    bad = np.nonzero(counts != expected)[0]
    return {G.decode(int(c)): int(counts[c] - expected[c]) for c in bad}


def _set_nontrivial(G: GroupSpec, s: Sequence[Element]) -> bool:
    """Neither s + {1} nor G minus s is a subgroup."""
    ident = G.identity
    with_id = set(s) | {ident}
    if is_subgroup(G, with_id):
        return False
    members = set(s)
    if len(members) == G.order:
        return False
    complement = [g for g in G.elements() if g not in members]
    return not is_subgroup(G, complement)


def _external_counts(F: DifferenceFamily, j: int) -> np.ndarray:
    G = F.group
    others = np.concatenate([F.codes(i) for i in range(F.m) if i != j])
    return G.difference_counts(F.codes(j), others)


def _family_flags(F: DifferenceFamily, report: VerificationReport) -> VerificationReport:
    ident = F.group.identity
    report.contains_identity = ident in F.union()
    report.near_complete = F.near_complete
    report.nontrivial_sets = [_set_nontrivial(F.group, s) for s in F.sets]
    return report


def verify_sedf(F: DifferenceFamily, flags: bool = True) -> VerificationReport:
    """Check D_j * sum_{i != j} D_i^(-1) = lambda (G - 1) for every j."""
    G = F.group
    expected = np.full(G.order, F.lam, dtype=np.int64)
    expected[0] = 0
    report = VerificationReport(kind="sedf", passed=True)
    for j in range(F.m):
        counts = _external_counts(F, j)
        if not np.array_equal(counts, expected):
            report.passed = False
            report.failing_index = j
            report.deviations = _deviation_map(G, counts, expected)
            break
    return _family_flags(F, report) if flags else report


def verify_edf(F: DifferenceFamily, flags: bool = True) -> VerificationReport:
    """Check sum over ordered pairs i != j of D_j D_i^(-1) = lambda (G - 1).

    Here ``F.lam`` is the EDF parameter; an SEDF with parameter lambda is
    an EDF with parameter m * lambda.
    """
    G = F.group
    total = np.zeros(G.order, dtype=np.int64)
    for j in range(F.m):
        total += _external_counts(F, j)
    expected = np.full(G.order, F.lam, dtype=np.int64)
    expected[0] = 0
    report = VerificationReport(kind="edf", passed=bool(np.array_equal(total, expected)))
    if not report.passed:
        report.deviations = _deviation_map(G, total, expected)
    return _family_flags(F, report) if flags else report


def verify_pds(
    G: GroupSpec, D: Sequence[Sequence[int]], params: tuple[int, int, int, int]
) -> VerificationReport:
    """Check D D^(-1) = (k - mu) 1 + lambda D + mu (G - D) for an identity-free D."""
    v, k, lam, mu = params
    D = [G.validate(g) for g in D]
    if G.identity in D:
        raise MalformedFamilyError("a partial difference set here may not contain the identity")
    if len(set(D)) != len(D):
        raise MalformedFamilyError("repeated element in partial difference set")
    if v != G.order:
        raise ValueError(f"declared v={v} but the group has order {G.order}")
    if len(D) != k:
        raise ValueError(f"declared k={k} but |D|={len(D)}")
    codes = np.array([G.encode(g) for g in D], dtype=np.int64)
    counts = G.difference_counts(codes, codes)
    expected = np.full(G.order, mu, dtype=np.int64)
    expected[codes] = lam
    expected[0] = k
    report = VerificationReport(kind="pds", passed=bool(np.array_equal(counts, expected)))
    if not report.passed:
        report.deviations = _deviation_map(G, counts, expected)
    members = set(D)
    report.regular = all(G.neg(g) in members for g in D)
    report.nontrivial = _set_nontrivial(G, D)
    return report


def near_complete_equivalence(F: DifferenceFamily) -> bool:
    """Cross-check: the near-complete SEDF test agrees with the PDS test on every set.

    Always True for a correct implementation; a False return indicates a bug.
    """
    if not F.near_complete:
        raise ValueError("family is not near-complete")
    if F.k < 2:
        raise ValueError("near-complete equivalence needs k > 1")
    v, m, k, lam = F.declared
    sedf_side = verify_sedf(F, flags=False).passed
    pds_side = True
    for s in F.sets:
        r = verify_pds(F.group, s, (v, k, k - lam - 1, k - lam))
        if not (r.passed and r.regular and r.nontrivial):
            pds_side = False
            break
    return sedf_side == pds_side


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


@dataclass
class CharacterEntry:
    index: Element
    chi_D: CycInt
    abs_sq_D: int | None
    in_G0: bool
    ab: tuple[int, int] | None = None
    set_abs_sq: list = field(default_factory=list)
    ell_plus: int | None = None
    ell_minus: int | None = None


@dataclass
class SpectrumReport:
    entries: list[CharacterEntry]
    g0_count: int
    gn_count: int
    inconsistencies: list[str] = field(default_factory=list)

    def ab_pairs(self) -> set[tuple[int, int]]:
        return {e.ab for e in self.entries if e.ab is not None}

    def to_dict(self) -> dict:
        rows = []
        for e in self.entries:
            rows.append(
                {
                    "index": list(e.index),
                    "chi_D": str(e.chi_D),
                    "abs_sq_D": e.abs_sq_D,
                    "in_G0": e.in_G0,
                    "ab": list(e.ab) if e.ab else None,
                    "set_abs_sq": [x if isinstance(x, int) else str(x) for x in e.set_abs_sq],
                    "ell_plus": e.ell_plus,
                    "ell_minus": e.ell_minus,
                }
            )
        return {
            "g0_count": self.g0_count,
            "gn_count": self.gn_count,
            "ab_pairs": sorted(list(p) for p in self.ab_pairs()),
            "inconsistencies": self.inconsistencies,
            "characters": rows,
        }


def _exact_sqrt(q: Fraction) -> Fraction | None:
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _real_sign(x: CycInt) -> int:
    # x is a nonzero real algebraic integer; used only to split alpha+ / alpha- when m = 2
    val = x.to_complex().real
    if abs(val) < 1e-9:
        raise ArithmeticError(f"cannot resolve the sign of {x}")
    return 1 if val > 0 else -1


def spectrum(F: DifferenceFamily, require_sedf: bool = True) -> SpectrumReport:
    """Character values of D and of each D_j over all nonprincipal characters."""
    if require_sedf and not verify_sedf(F, flags=False).passed:
        raise NotAnSEDFError(f"family with declared parameters {F.declared} is not an SEDF")
    G = F.group
    v, m, k, lam = F.declared
    set_codes = [F.codes(j) for j in range(m)]
    per_set = [character_sums(G, c) for c in set_codes]
    entries: list[CharacterEntry] = []
    issues: list[str] = []
    for code in range(1, G.order):
        h = G.decode(code)
        chis = [per_set[j][code] for j in range(m)]
        chi_D = chis[0]
        for c in chis[1:]:
            chi_D = chi_D + c
        sq = absolute_square(chi_D)
        sq_int = sq.to_int() if sq.is_rational() else None
        entry = CharacterEntry(index=h, chi_D=chi_D, abs_sq_D=sq_int, in_G0=chi_D.is_zero())
        set_sq = [absolute_square(c) for c in chis]
        entry.set_abs_sq = [s.to_int() if s.is_rational() else s for s in set_sq]
        if entry.in_G0:
            if any(s != lam for s in set_sq):
                issues.append(f"chi_{h}: chi(D) = 0 but some |chi(D_j)|^2 != lambda")
            entries.append(entry)
            continue
        if sq_int is not None:
            ratio = Fraction(sq_int + 4 * lam, sq_int)
            root = _exact_sqrt(ratio)
            if root is not None:
                entry.ab = (root.denominator, root.numerator)
            elif m > 2:
                raise SpectrumInconsistency(f"chi_{h}: 1 + 4*lambda/|chi(D)|^2 = {ratio} is not a rational square")
        elif m > 2:
            raise SpectrumInconsistency(f"chi_{h}: |chi(D)|^2 = {sq} is irrational")
        signs = []
        for s in set_sq:
            diff = s - lam
            if diff.is_zero():
                issues.append(f"chi_{h}: |chi(D_j)|^2 = lambda although chi(D) != 0")
                signs.append(0)
            elif diff.is_rational():
                signs.append(1 if diff.to_int() > 0 else -1)
            else:
                signs.append(_real_sign(diff))
        entry.ell_plus = signs.count(1)
        entry.ell_minus = signs.count(-1)
        if entry.ab is not None and m > 2:
            a, b = entry.ab
            # chi(D_j) = ((a + b) / 2a) chi(D) or ((a - b) / 2a) chi(D)
            for c, sgn in zip(chis, signs):
                target = (a + b) if sgn > 0 else (a - b)
                if c * (2 * a) != chi_D * target:
                    issues.append(f"chi_{h}: chi(D_j) is not alpha * chi(D)")
                    break
            if Fraction(entry.ell_plus * (a + b) + entry.ell_minus * (a - b), 2 * a) != 1:
                issues.append(f"chi_{h}: ell+ alpha+ + ell- alpha- != 1")
        entries.append(entry)
    g0 = sum(e.in_G0 for e in entries)
    gn = len(entries) - g0
    if gn == 0:
        issues.append("G^N is empty: no nonprincipal character is nonzero on D")
    return SpectrumReport(entries=entries, g0_count=g0, gn_count=gn, inconsistencies=issues)
