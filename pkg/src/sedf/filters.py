"""Nonexistence filters for SEDF parameter sets and the range classifier.

Every filter is a pure function of a :class:`ParamSet` (plus the current set
of surviving (a, b) pairs for m > 2).  :func:`filter_classify` runs the
filters of a preset in the fixed order of :data:`FILTER_ORDER` and reports
the first one that rules the parameters out.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd
from typing import Callable

from .cyclotomic import (
    factorize,
    nt_is_primitive_root,
    nt_is_self_conjugate,
    nt_valuation,
)
from .facts import DEFAULT_FACTS, KnownFactsTable
from .groups import GroupSpec, enumerate_abelian_groups
from .params import ABPair, ParamSet, enumerate_params, feasible_ab_pairs, scvp_admissible, scvp_counts

log_ = logging.getLogger(__name__)


class Status(str, enum.Enum):
    TRIVIAL = "TRIVIAL"
    EXISTS = "EXISTS"
    NONEXISTENT = "NONEXISTENT"
    OPEN = "OPEN"
    OPEN_NEAR_COMPLETE_PDS_REDUCED = "OPEN_NEAR_COMPLETE_PDS_REDUCED"


@dataclass(frozen=True)
class Reason:
    filter_id: str
    citation: str


@dataclass(frozen=True)
class Verdict:
    params: ParamSet
    status: Status
    reasons: tuple[Reason, ...] = ()
    witness: str | None = None

    @property
    def filter_id(self) -> str:
        return self.reasons[0].filter_id if self.reasons else ""

    @property
    def citation(self) -> str:
        return self.reasons[0].citation if self.reasons else ""

    def filter_ids(self) -> list[str]:
        return [r.filter_id for r in self.reasons]


FILTER_ORDER = (
    "F-triv", "F-P4", "F-AB", "F-SCVP", "F-SYL", "F-PP", "F-PP-SCVP",
    "F-EXP", "F-2P", "F-M2KP", "F-NC", "F-FACTS",
)


@dataclass(frozen=True)
class Preset:
    name: str
    filters: frozenset[str]
    p4_items: frozenset[int] = frozenset(range(1, 7))
    derived_bounds: bool = False


PRESETS = {
    # the combination used for the m > 2 open list: only item (4) of the
    # classical nonexistence list, plus the character-theoretic filters
    "paper-remark": Preset(
        "paper-remark",
        frozenset({"F-triv", "F-P4", "F-AB", "F-SCVP", "F-SYL", "F-PP", "F-PP-SCVP", "F-EXP"}),
        p4_items=frozenset({4}),
    ),
    "m2": Preset(
        "m2",
        frozenset({"F-triv", "F-P4", "F-EXP", "F-2P", "F-M2KP", "F-NC", "F-FACTS"}),
    ),
    "full": Preset("full", frozenset(FILTER_ORDER)),
}


def get_preset(preset: str | Preset) -> Preset:
    if isinstance(preset, Preset):
        return preset
    try:
        return PRESETS[preset]
    except KeyError:
        raise ValueError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}") from None


# -- shared arithmetic --------------------------------------------------------


def _primes(n: int) -> list[int]:
    return [p for p, _ in factorize(n)] if n > 1 else []


def _pp(n: int) -> dict[int, int]:
    return dict(factorize(n)) if n > 1 else {}


def _sylow_branch1(P: ParamSet, p: int) -> bool:
    """|G_p| divides km and k^2 + (|G_p|-1) lambda = |G_p| r1 with r1 >= k."""
    v, m, k, lam = P.astuple()
    Gp = p ** nt_valuation(p, v)
    if (k * m) % Gp:
        return False
    x = k * k + (Gp - 1) * lam
    return x % Gp == 0 and x // Gp >= k


def _sylow_branch2(P: ParamSet, p: int, ab: ABPair) -> bool:
    _, m, k, lam = P.astuple()

    def solvable(u: int, ell: Fraction, lower: int | None) -> bool:
        x = u * u + (p - 1) * ell
        if x.denominator != 1 or x.numerator % p:
            return False
        return lower is None or x.numerator // p >= lower

    return (
        solvable(k * m, ab.abs_sq_D(lam), k * m)
        and solvable(k, ab.abs_sq_minus(lam), k)
        and solvable(k, ab.abs_sq_plus(lam), None)
    )


def _value_set(P: ParamSet, ab: ABPair, unique: bool) -> list[int]:
    lam = P.lam
    values = [ab.abs_sq_D(lam), ab.abs_sq_plus(lam), ab.abs_sq_minus(lam)]
    if unique:
        g0 = scvp_counts(P, ab)[0]
        if scvp_admissible(P, ab) and g0 > 0:
            values.append(Fraction(lam))
    return [int(u) for u in values]


def _pp_violation(P: ParamSet, ab: ABPair, unique: bool) -> str | None:
    """A primitive-root prime appearing to an odd power in some value, if any."""
    v = P.v
    for u in _value_set(P, ab, unique):
        for q in _primes(u):
            if nt_is_primitive_root(q, v):
                f = nt_valuation(q, u)
                if f % 2:
                    return f"q={q} is a primitive root mod {v} and {q}^{f} || {u}"
    return None


def exp_bound_hits(P: ParamSet) -> list[tuple[int, int, int, int, Fraction]]:
    """All (p, d, q, f, bound) with p^d || v, q^f || lambda, q a primitive root
    mod p^d; every group then needs exp(G_p) <= bound = v / q^ceil(f/2)."""
    out = []
    for p, d in factorize(P.v):
        for q, f in _pp(P.lam).items():
            if q != p and nt_is_primitive_root(q, p**d):
                out.append((p, d, q, f, Fraction(P.v, q ** ((f + 1) // 2))))
    return out


def _exp_equality_excludes(P: ParamSet, p: int, d: int, q: int, f: int) -> bool:
    # bound met with equality: v = p * q^c and p || v.  The projection onto
    # Z_p of the set forced to vanish mod q^c is then either constant (so p
    # divides its size) or a union of cosets of G_q (so some nonprincipal
    # character sum over it vanishes).  Both are impossible when p divides
    # neither k nor (m - 1) k.
    c = (f + 1) // 2
    return d == 1 and P.v == p * q**c and P.k % p != 0 and ((P.m - 1) * P.k) % p != 0


def _largest_power_at_most(p: int, bound: Fraction) -> int:
    e = 1
    while e * p <= bound:
        e *= p
    return e


def two_prime_excludes(P: ParamSet) -> str | None:
    v, m, k, lam = P.astuple()
    fk = _pp(k)
    if m != 2 or len(fk) != 2 or any(e != 1 for e in fk.values()):
        return None
    p1, p2 = sorted(fk)
    fv = factorize(v)
    if v == p1 * p2 * p2 + 1 and lam == p1:
        for p, d in fv:
            if nt_is_primitive_root(p1, p**d) and p2 * p2 + 1 <= p:
                return f"k={p1}*{p2}, v={p1}*{p2}^2+1, {p1} primitive root mod {p}^{d}, {p2}^2+1 <= {p}"
    if v == p1 * p1 * p2 + 1 and lam == p2:
        for p, d in fv:
            if nt_is_primitive_root(p2, p**d) and p1 * p1 + 1 <= p:
                return f"k={p1}*{p2}, v={p1}^2*{p2}+1, {p2} primitive root mod {p}^{d}, {p1}^2+1 <= {p}"
    if v == p2 * p2 + 1 and lam == p1 * p1:
        for p, d in fv:
            if nt_is_primitive_root(p1, p**d) and v < p1 * p:
                return f"k={p1}*{p2}, v={p2}^2+1, {p1} primitive root mod {p}^{d}, v < {p1}*{p}"
            if nt_is_primitive_root(p1, p) and v == p1 * p:
                return f"k={p1}*{p2}, v={p2}^2+1={p1}*{p}, {p1} primitive root mod {p}"
    return None


def _is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == ((n, 1),)


# -- the classifier -------------------------------------------------------------


@dataclass
class _State:
    P: ParamSet
    preset: Preset
    facts: KnownFactsTable
    collect_all: bool
    pairs: list[ABPair] | None = None
    reasons: list[Reason] = field(default_factory=list)
    scvp_fired: bool = False

    def fire(self, fid: str, citation: str) -> bool:
        self.reasons.append(Reason(fid, citation))
        return not self.collect_all

    def prune(self, fid: str, keep: Callable[[ABPair], str | None]) -> bool:
        """Drop pairs for which ``keep`` reports a violation; fire if none survive."""
        kept, dropped = [], []
        for ab in self.pairs:
            why = keep(ab)
            (dropped if why else kept).append((ab, why))
        if kept:
            self.pairs = [ab for ab, _ in kept]
            return False
        detail = "; ".join(f"{ab}: {why}" for ab, why in dropped)
        stop = self.fire(fid, f"every feasible (a,b) pair is excluded ({detail})")
        # in collect mode the pairs are kept so later filters still run
        return stop

    def check_scvp(self) -> bool:
        if self.pairs is None or len(self.pairs) != 1 or "F-SCVP" not in self.preset.filters:
            return False
        if self.scvp_fired:
            return False
        ab = self.pairs[0]
        if scvp_admissible(self.P, ab):
            return False
        g0, gp, gm = scvp_counts(self.P, ab)
        self.scvp_fired = True
        return self.fire(
            "F-SCVP",
            f"unique pair {ab} forces |G^0|={g0}, |G^+|={gp}, |G^-|={gm}, not admissible",
        )


def _existence(P: ParamSet, preset: Preset, facts: KnownFactsTable) -> Verdict | None:
    fact = facts.sedf_fact(P)
    if fact is not None and fact.exists:
        return Verdict(P, Status.EXISTS, (Reason("F-FACTS", fact.citation),), fact.witness and _witness(fact.witness, P))
    if P.m == 2 and P.near_complete and P.v % 4 == 1:
        pds = (P.v, P.k, (P.v - 5) // 4, (P.v - 1) // 4)
        pf = facts.pds_fact(pds)
        if pf is not None and pf.exists:
            cit = f"near-complete with m=2 is equivalent to a {pds}-PDS; {pf.citation}"
            return Verdict(P, Status.EXISTS, (Reason("F-FACTS", cit),), pf.witness and _witness(pf.witness, P))
    return None


def _witness(kind: str, P: ParamSet) -> str:
    if kind == "k2plus1":
        return f"construct k2plus1 --k {P.k}"
    if kind == "paley":
        return f"construct paley --p {P.v}"
    return f"construct {kind}"


def filter_classify(
    P: ParamSet,
    preset: str | Preset = "full",
    facts: KnownFactsTable = DEFAULT_FACTS,
    collect_all: bool = False,
) -> Verdict:
    """Classify one parameter set.

    With ``collect_all`` every active filter is evaluated and all reasons are
    returned; a pruning filter that would leave no (a, b) pair records its
    reason without removing the pairs, so later filters see the full set.
    """
    pre = get_preset(preset)
    if P.k == 1:
        return Verdict(P, Status.TRIVIAL, (Reason("F-triv", "k = 1: the m singletons of G"),))
    if "F-FACTS" in pre.filters:
        found = _existence(P, pre, facts)
        if found is not None:
            return found
    if "F-NC" in pre.filters and P.m > 2 and P.near_complete and P.astuple() == (243, 11, 22, 20):
        return Verdict(P, Status.EXISTS, (Reason("F-NC", "near-complete SEDF from the M11 orbits on PG(4,3)"),),
                       "construct m11")

    st = _State(P, pre, facts, collect_all)
    v, m, k, lam = P.astuple()
    on = pre.filters.__contains__

    def done() -> bool:
        return bool(st.reasons) and not collect_all

    if on("F-triv") and gcd(k, v - 1) == 1 and st.fire("F-triv", f"gcd(k, v-1) = gcd({k},{v - 1}) = 1 forces k = 1"):
        return _finish(st)

    if on("F-P4"):
        for item, why in _p4_hits(P, pre.p4_items):
            if st.fire("F-P4", f"classical bound ({item}): {why}"):
                return _finish(st)

    if m > 2 and (on("F-AB") or on("F-SCVP") or on("F-SYL") or on("F-PP") or on("F-PP-SCVP")):
        st.pairs = feasible_ab_pairs(m, lam)
        if pre.derived_bounds:
            st.pairs = [ab for ab in st.pairs if ab.abs_sq_plus(lam) <= k * k] or st.pairs
        if on("F-AB") and not st.pairs:
            if st.fire("F-AB", f"no (a,b) pair is compatible with m={m}, lambda={lam}"):
                return _finish(st)
        if st.pairs and st.check_scvp():
            return _finish(st)
        fv = factorize(v)
        prime_power = len(fv) == 1
        if on("F-SYL") and st.pairs:
            if prime_power:
                p = fv[0][0]
                if st.prune("F-SYL", lambda ab: None if _sylow_branch2(P, p, ab) else f"Sylow conditions fail at p={p}"):
                    return _finish(st)
            else:
                for p, _ in fv:
                    if not _sylow_branch1(P, p) and not any(_sylow_branch2(P, p, ab) for ab in st.pairs):
                        if st.fire("F-SYL", f"Sylow conditions fail at p={p} for every pair {_fmt_pairs(st.pairs)}"):
                            return _finish(st)
                        break
            if st.check_scvp():
                return _finish(st)
        if on("F-PP") and st.pairs and prime_power:
            unique = len(st.pairs) == 1
            if st.prune("F-PP", lambda ab: _pp_violation(P, ab, unique)):
                return _finish(st)
            if st.check_scvp():
                return _finish(st)
        if on("F-PP-SCVP") and prime_power and st.pairs and len(st.pairs) == 1:
            p = fv[0][0]
            a, b = st.pairs[0]
            if p % 2 and nt_is_self_conjugate(2, v) and not (a % 2 and b % 2):
                if st.fire("F-PP-SCVP", f"v={p}^{fv[0][1]}, unique pair ({a},{b}), 2 self-conjugate mod v, but a and b are not both odd"):
                    return _finish(st)

    if on("F-EXP"):
        for p, d, q, f, bound in exp_bound_hits(P):
            if bound < p:
                if st.fire("F-EXP", f"exp(G_{p}) <= v/{q}^{ceil(f / 2)} = {bound} < {p} ({q} primitive root mod {p}^{d}, {q}^{f} || lambda)"):
                    return _finish(st)
                break
            if bound == p and _exp_equality_excludes(P, p, d, q, f):
                if st.fire("F-EXP", f"v = {p}*{q}^{ceil(f / 2)} with {q} primitive root mod {p} and {p} dividing neither k nor (m-1)k"):
                    return _finish(st)
                break

    if on("F-2P"):
        why = two_prime_excludes(P)
        if why and st.fire("F-2P", f"two-prime theorem: {why}"):
            return _finish(st)

    if on("F-M2KP"):
        if m == 2 and lam > 1 and _is_prime(k):
            if st.fire("F-M2KP", f"m=2 with k={k} prime forces lambda=1, here lambda={lam}"):
                return _finish(st)
        elif lam == 1 and m > 2:
            if st.fire("F-M2KP", "lambda=1 nontrivial SEDF exist only for m=2, v=k^2+1 (Paterson-Stinson, Theorem 2.3)"):
                return _finish(st)

    if on("F-NC") and P.near_complete and m > 2:
        if st.fire("F-NC", "near-complete with m>2 exists only for (243,11,22,20)"):
            return _finish(st)

    if on("F-FACTS") and P.near_complete and m == 2 and v % 4 == 1:
        pds = (v, k, (v - 5) // 4, (v - 1) // 4)
        pf = facts.pds_fact(pds)
        if pf is not None and not pf.exists:
            if st.fire("F-FACTS", f"near-complete with m=2 needs a {pds}-PDS; {pf.citation}"):
                return _finish(st)

    return _finish(st)


def _finish(st: _State) -> Verdict:
    P = st.P
    if st.reasons:
        return Verdict(P, Status.NONEXISTENT, tuple(st.reasons))
    if "F-NC" in st.preset.filters and P.m == 2 and P.near_complete:
        pds = (P.v, P.k, (P.v - 5) // 4, (P.v - 1) // 4)
        return Verdict(P, Status.OPEN_NEAR_COMPLETE_PDS_REDUCED,
                       (Reason("F-NC", f"equivalent to existence of a regular {pds}-PDS"),))
    return Verdict(P, Status.OPEN)


def _fmt_pairs(pairs: list[ABPair]) -> str:
    return "{" + ",".join(str(ab) for ab in pairs) + "}"


def _p4_hits(P: ParamSet, items: frozenset[int]):
    v, m, k, lam = P.astuple()
    if m > 2:
        if 1 in items and m in (3, 4):
            yield 1, f"m={m}"
        if 2 in items and _is_prime(v):
            yield 2, f"m>2 and v={v} prime"
        if 3 in items and lam == 2:
            yield 3, "m>2 and lambda=2"
        if 4 in items and lam > 1 and Fraction(lam * (k - 1) * (m - 2), (lam - 1) * k * (m - 1)) > 1:
            yield 4, f"lambda(k-1)(m-2)/((lambda-1)k(m-1)) = {Fraction(lam * (k - 1) * (m - 2), (lam - 1) * k * (m - 1))} > 1"
        if 5 in items:
            for p in _primes(v):
                if gcd(k * m, p) == 1 and (m - 2) % p:
                    yield 5, f"p={p} divides v, gcd(km,p)=1 and m != 2 mod p"
                    break
    if 6 in items and lam >= k:
        yield 6, f"lambda={lam} >= k={k}"


# -- range classification -----------------------------------------------------


@dataclass
class Classification:
    preset: str
    v_max: int
    m_min: int
    m_max: int | None
    include_near_complete: bool
    verdicts: list[Verdict]

    def summary(self) -> dict[str, int]:
        counts = {s.value: 0 for s in Status}
        for vd in self.verdicts:
            counts[vd.status.value] += 1
        return counts

    def with_status(self, status: Status) -> list[ParamSet]:
        return [vd.params for vd in self.verdicts if vd.status == status]


def _classify_chunk(args) -> list[Verdict]:
    chunk, preset, facts = args
    return [filter_classify(P, preset, facts) for P in chunk]


def classify_range(
    v_max: int,
    m_min: int = 2,
    m_max: int | None = None,
    preset: str | Preset = "full",
    facts: KnownFactsTable = DEFAULT_FACTS,
    include_near_complete: bool = False,
    jobs: int = 1,
) -> Classification:
    pre = get_preset(preset)
    params = [
        P for P in enumerate_params(v_max, m_min, m_max)
        if include_near_complete or not P.near_complete
    ]
    log_.info("classifying %d parameter sets with preset %s", len(params), pre.name)
    if jobs > 1 and len(params) > 1:
        size = max(1, len(params) // (jobs * 8))
        chunks = [params[i : i + size] for i in range(0, len(params), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map preserves input order, so the merge is deterministic
            verdicts = [vd for part in pool.map(_classify_chunk, [(c, pre, facts) for c in chunks]) for vd in part]
    else:
        verdicts = [filter_classify(P, pre, facts) for P in params]
    return Classification(pre.name, v_max, m_min, m_max, include_near_complete, verdicts)


# -- per-group constraints -----------------------------------------------------


@dataclass
class GroupConstraint:
    group: GroupSpec
    allowed: bool
    exponent_bounds: dict[int, int]  # prime -> largest allowed exp(G_p)
    reasons: list[str]


@dataclass
class GroupConstraintsReport:
    params: ParamSet
    pairs: list[ABPair]
    scvp: tuple[Fraction, Fraction, Fraction] | None
    groups: list[GroupConstraint]

    def allowed_groups(self) -> list[GroupSpec]:
        return [g.group for g in self.groups if g.allowed]


def surviving_pairs(P: ParamSet) -> list[ABPair]:
    """Feasible (a, b) pairs left after the Sylow and prime-power pruning."""
    if P.m <= 2:
        return []
    pairs = feasible_ab_pairs(P.m, P.lam)
    fv = factorize(P.v)
    if len(fv) == 1 and pairs:
        p = fv[0][0]
        pairs = [ab for ab in pairs if _sylow_branch2(P, p, ab)]
        unique = len(pairs) == 1
        pairs = [ab for ab in pairs if _pp_violation(P, ab, unique) is None]
    return pairs


def group_constraints(P: ParamSet) -> GroupConstraintsReport:
    """Exponent bounds on each abelian group of order v that could hold an SEDF."""
    v, m, k, lam = P.astuple()
    hits = exp_bound_hits(P)
    pairs = surviving_pairs(P)
    scvp = scvp_counts(P, pairs[0]) if len(pairs) == 1 else None
    usable = scvp is not None and scvp_admissible(P, pairs[0])

    per_prime: dict[int, tuple[int, list[str]]] = {}
    excluded_all: list[str] = []
    for p, d, q, f, bound in hits:
        if bound == p and _exp_equality_excludes(P, p, d, q, f):
            excluded_all.append(f"v = {p}*{q}^{ceil(f / 2)}: no group")
            continue
        cap = _largest_power_at_most(p, bound)
        if p in per_prime and per_prime[p][0] <= cap:
            continue
        per_prime[p] = (cap, [f"exp(G_{p}) <= v/{q}^{ceil(f / 2)} = {bound}"])

    out = []
    for G in enumerate_abelian_groups(v):
        bounds: dict[int, int] = {}
        reasons: list[str] = list(excluded_all)
        allowed = not excluded_all
        for p, (cap, why) in per_prime.items():
            bounds[p] = cap
            if G.sylow_exponent(p) > cap:
                allowed = False
                reasons.extend(why)
        if usable:
            for p, cap, why in _second_exponent_bounds(P, pairs[0], scvp[0], G):
                if cap < bounds.get(p, v + 1):
                    bounds[p] = cap
                if G.sylow_exponent(p) > cap:
                    allowed = False
                    reasons.append(why)
        out.append(GroupConstraint(G, allowed, dict(sorted(bounds.items())), reasons))
    return GroupConstraintsReport(P, pairs, scvp, out)


def _second_exponent_bounds(P: ParamSet, ab: ABPair, g0: Fraction, G: GroupSpec):
    """The bound with U trivial, for every prime p self-conjugate mod exp(G)."""
    v, lam = P.v, P.lam
    gp, gm = scvp_counts(P, ab)[1:]
    for p, s in factorize(v):
        if not nt_is_self_conjugate(p, G.exponent):
            continue
        Gp = p**s
        # branch 1: p^(2d) divides |chi(D)|^2 for every nonprincipal chi
        val_D = nt_valuation(p, int(ab.abs_sq_D(lam)))
        d1 = val_D // 2
        if d1 >= 1:
            bound = max(Fraction(p ** (s - d1)), Fraction(p * g0 * Gp, (p - 1) * v))
            yield p, _largest_power_at_most(p, bound), (
                f"|chi(D)|^2 divisible by {p}^{2 * d1}, |G^0|={g0}: exp(G_{p}) <= max{{{p ** (s - d1)}, {Fraction(p * g0 * Gp, (p - 1) * v)}}}"
            )
        # branch 2: p^(2d) divides |chi(D_1)|^2 for every nonprincipal chi
        values = []
        if g0 > 0:
            values.append(lam)
        if gp > 0 or gm > 0:
            values += [int(ab.abs_sq_plus(lam)), int(ab.abs_sq_minus(lam))]
        if values:
            d2 = min(nt_valuation(p, u) for u in values) // 2
            if d2 >= 1:
                yield p, p ** (s - d2), (
                    f"|chi(D_1)|^2 in {sorted(set(values))} divisible by {p}^{2 * d2}: exp(G_{p}) <= {p ** (s - d2)}"
                )
