"""Brute-force destabilizer search over invariant subobject profiles.

Independent of the criteria, this module enumerates every admissible
graded subobject profile of an isomorphism tower and maximizes slope.
Admissibility means: contiguous support starting at grade 0, positive
ranks bounded by the component ranks, a rank-chain constraint, and at each
grade the largest degree the component's attestation allows (slope
maximization never benefits from a smaller degree, which collapses the
search to a finite one).  The whole system is excluded, mirroring the
proper-subsheaf quantifier.

Two rank-chain modes are provided.  The monotone mode requires
rank(F_i) <= rank(F_{i-1}), which is immediate from the embedding
F_i -> F_{i-1} tensor Omega when the cotangent rank d is 1 but is an
extra assertion for d > 1; the conservative mode only requires
rank(F_i) <= d * rank(F_{i-1}).  The monotone mode is the default; the
conservative mode exists to hunt for discrepancies, and any system where
the conservative search finds a violating profile that the monotone search
misses should be treated as a finding, never silently resolved.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

from .hodge_system import (
    Answer,
    HodgeSystem,
    Isomorphisms,
    Verdict,
    total_slope,
)
from .profiles import SubsystemProfile, certificate_json  # noqa: F401  (re-export)
from .slope_core import SubsheafMode, max_subsheaf_degree

PROV_ORACLE = "oracle"
PROV_DECLARED = "declared invariant profile"
PROV_DECLARED_FULL = "declared profile equals the whole system"
PROV_DECLARED_SLACK = "declared profile does not destabilize"

DEFAULT_PROFILE_BUDGET = 10_000_000


class BudgetExceededError(ValueError):
    """The profile space is larger than the configured search budget."""


class ConstraintMode(Enum):
    """Rank-chain constraint imposed on enumerated profiles."""

    # values are the CLI/document tokens (--mode paper|conservative)
    MONOTONE = "paper"
    CONSERVATIVE = "conservative"


def profile_space_size(sys: HodgeSystem) -> int:
    """Upper bound on the number of rank assignments: prod(rank(E_i) + 1)."""
    size = 1
    for comp in sys.components:
        size *= comp.rank + 1
    return size


def _degree_bounds(
    sys: HodgeSystem, subsheaf_mode: SubsheafMode, budget: int
) -> list[list[int]]:
    """Validate oracle preconditions and tabulate degree bounds per grade and rank."""
    if not isinstance(sys.theta, Isomorphisms):
        raise ValueError("oracle requires isomorphism structure")
    size = profile_space_size(sys)
    if size > budget:
        raise BudgetExceededError(
            f"budget exceeded: {size} rank assignments, budget is {budget}"
        )
    bounds = []
    for i, comp in enumerate(sys.components):
        flag = comp.semistable if subsheaf_mode is SubsheafMode.SEMISTABLE else comp.stable
        if flag is not True:
            raise ValueError(
                f"flag precondition violated: component {i} is not flagged {subsheaf_mode.value}"
            )
        bounds.append([0] + [max_subsheaf_degree(r, comp, subsheaf_mode) for r in range(1, comp.rank + 1)])
    return bounds


def _profiles(
    sys: HodgeSystem,
    bounds: list[list[int]],
    mode: ConstraintMode,
    first_rank: Optional[int] = None,
) -> Iterator[SubsystemProfile]:
    ranks = [c.rank for c in sys.components]
    d = sys.context.dim
    n = sys.n
    monotone = mode is ConstraintMode.MONOTONE

    def extend(grade: int, top: int, acc: tuple[tuple[int, int], ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if grade > top:
            yield acc
            return
        if grade == 0:
            lo, hi = 1, ranks[0]
            if first_rank is not None:
                if first_rank > ranks[0]:
                    return
                lo = hi = first_rank
        else:
            prev = acc[-1][0]
            cap = prev if monotone else d * prev
            lo, hi = 1, min(ranks[grade], cap)
        for rk in range(lo, hi + 1):
            yield from extend(grade + 1, top, acc + ((rk, bounds[grade][rk]),))

    for top in range(n + 1):
        for entries in extend(0, top, ()):
            if top == n and all(entries[i][0] == ranks[i] for i in range(n + 1)):
                continue  # the whole system is not a proper subobject
            yield SubsystemProfile(entries)


def enumerate_profiles(
    sys: HodgeSystem,
    mode: ConstraintMode = ConstraintMode.MONOTONE,
    subsheaf_mode: SubsheafMode = SubsheafMode.SEMISTABLE,
    budget: int = DEFAULT_PROFILE_BUDGET,
) -> Iterator[SubsystemProfile]:
    """Stream every admissible proper profile in a fixed deterministic
    order (by support length, then rank vector lexicographically)."""
    bounds = _degree_bounds(sys, subsheaf_mode, budget)
    return _profiles(sys, bounds, mode)


def _better(cand: SubsystemProfile, best: SubsystemProfile) -> bool:
    """Strict total order: larger slope wins, ties go to the
    lexicographically smallest entry list."""
    lhs = cand.degree * best.rank
    rhs = best.degree * cand.rank
    if lhs != rhs:
        return lhs > rhs
    return cand.entries < best.entries


def _scan(profiles: Iterator[SubsystemProfile]) -> Optional[SubsystemProfile]:
    best: Optional[SubsystemProfile] = None
    for p in profiles:
        if best is None or _better(p, best):
            best = p
    return best


def max_slope_profile(
    sys: HodgeSystem,
    mode: ConstraintMode = ConstraintMode.MONOTONE,
    subsheaf_mode: SubsheafMode = SubsheafMode.SEMISTABLE,
    budget: int = DEFAULT_PROFILE_BUDGET,
    parallel: bool = False,
    max_workers: Optional[int] = None,
) -> Optional[tuple[SubsystemProfile, Fraction]]:
    """The enumerated profile of maximal slope, or None when no proper
    profile exists.

    With ``parallel`` the search is partitioned over the base-grade rank
    (disjoint subtrees); the tie-break is a total order, so the merged
    result is independent of scheduling.
    """
    bounds = _degree_bounds(sys, subsheaf_mode, budget)
    if not parallel:
        best = _scan(_profiles(sys, bounds, mode))
    else:
        base_rank = sys.components[0].rank
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            locals_ = list(
                executor.map(
                    lambda r0: _scan(_profiles(sys, bounds, mode, first_rank=r0)),
                    range(1, base_rank + 1),
                )
            )
        best = None
        for candidate in locals_:
            if candidate is not None and (best is None or _better(candidate, best)):
                best = candidate
    if best is None:
        return None
    return best, best.slope


def verdict_from_search(
    sys: HodgeSystem,
    mode: ConstraintMode = ConstraintMode.MONOTONE,
    subsheaf_mode: SubsheafMode = SubsheafMode.SEMISTABLE,
    budget: int = DEFAULT_PROFILE_BUDGET,
    parallel: bool = False,
) -> Verdict:
    """Ground-truth verdict within the enumerated profile class.

    Under semistable bounds: a profile above the total slope refutes
    semistability; one meeting it refutes stability; otherwise both hold
    within the class.  Under stable bounds the stability side uses the
    strict bounds, while the semistability side is still judged against
    the semistable bounds (both attestations are available, since stable
    components are semistable).
    """
    mu = total_slope(sys)
    if subsheaf_mode is SubsheafMode.STABLE:
        return _verdict_stable_bounds(sys, mode, budget, parallel, mu)
    best = max_slope_profile(sys, mode, SubsheafMode.SEMISTABLE, budget, parallel)
    if best is None:
        return Verdict(Answer.YES, Answer.YES, provenance=PROV_ORACLE)
    profile, s = best
    if s > mu:
        return Verdict(Answer.NO, Answer.NO, profile, PROV_ORACLE)
    if s == mu:
        return Verdict(Answer.YES, Answer.NO, profile, PROV_ORACLE)
    return Verdict(Answer.YES, Answer.YES, provenance=PROV_ORACLE)


def _verdict_stable_bounds(
    sys: HodgeSystem, mode: ConstraintMode, budget: int, parallel: bool, mu: Fraction
) -> Verdict:
    best_ss = max_slope_profile(sys, mode, SubsheafMode.SEMISTABLE, budget, parallel)
    if best_ss is not None and best_ss[1] > mu:
        # would contradict the semistability criterion; surface it loudly
        return Verdict(Answer.NO, Answer.NO, best_ss[0], PROV_ORACLE)
    best_st = max_slope_profile(sys, mode, SubsheafMode.STABLE, budget, parallel)
    if best_st is None:
        return Verdict(Answer.YES, Answer.YES, provenance=PROV_ORACLE)
    profile, s = best_st
    if s >= mu:
        return Verdict(Answer.YES, Answer.NO, profile, PROV_ORACLE)
    return Verdict(Answer.YES, Answer.YES, provenance=PROV_ORACLE)


def check_declared(sys: HodgeSystem, profile: SubsystemProfile) -> Verdict:
    """Judge one declared invariant profile against the total slope.

    The profile must be entrywise plausible: ranks dominated by the
    component ranks and, wherever a component carries a semistable
    attestation, degree within the subsheaf bound.  A strictly larger
    slope refutes semistability; an equal slope refutes stability unless
    the profile is the whole system; anything else is inconclusive.
    """
    components = sys.components
    if profile.support_top > sys.n:
        raise ValueError("rank domination violated: profile support exceeds the component range")
    for i, (rk, dg) in enumerate(profile.entries):
        comp = components[i]
        if rk > comp.rank:
            raise ValueError(f"rank domination violated at grade {i}: {rk} > {comp.rank}")
        if comp.semistable is True and dg > max_subsheaf_degree(rk, comp, SubsheafMode.SEMISTABLE):
            raise ValueError(
                f"degree at grade {i} exceeds the semistable subsheaf bound"
            )
    mu = total_slope(sys)
    s = profile.slope
    if s > mu:
        return Verdict(Answer.NO, Answer.NO, profile, PROV_DECLARED)
    if s == mu:
        full = profile.support_top == sys.n and profile.entries == tuple(
            (c.rank, c.degree) for c in components
        )
        if full:
            return Verdict(provenance=PROV_DECLARED_FULL)
        return Verdict(Answer.UNKNOWN, Answer.NO, profile, PROV_DECLARED)
    return Verdict(provenance=PROV_DECLARED_SLACK)
