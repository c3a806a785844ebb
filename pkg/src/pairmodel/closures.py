"""Component closures, shift membership, precedence, and generated closures.

V_k(X) collects components of members of X to depth k; W_k(X) adds every
successor shift of those.  Membership in W_k(X) is decided per orbit and
returns a witness (u, r) with shift_term(u, r) == t.  The precedence u < w
holds when some shift of u is a proper component of w; it is the order the
extension machinery recurses along.  cl_set generates a closure from a seed
set under pairing, windowed chain nodes, and windowed combs, stage by stage.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .rho import rho, rho_value, rho_plus, cmp_to_rho
from .terms import (
    FamilySet,
    Term,
    RNode,
    apply_a,
    closure_family,
    mk_pair,
    mk_r,
    orbit_key,
    r_headed_shift,
    shift_term,
    subterm_closure,
    term_sort_key,
)

DEPTH_GUARD = 64
CL_MEMBER_GUARD = 100_000
CL_WORK_GUARD = 4_000_000


class ClosureGuardError(Exception):
    """The requested closure would be too large to materialize."""


def _roots(X) -> list:
    if isinstance(X, Term):
        return [X]
    return list(X)


def v_set(X, k: int, guard: int = DEPTH_GUARD) -> FamilySet:
    """Components of X to depth k, as a family set (exact, no 2^k blowup)."""
    if k > guard:
        raise ClosureGuardError(f"depth {k} exceeds the guard {guard}")
    return closure_family(_roots(X), k)


def v_count(X, k: int, guard: int = DEPTH_GUARD) -> int:
    return v_set(X, k, guard).count()


def w_member(t: Term, X, k: int, guard: int = DEPTH_GUARD) -> Optional[tuple[Term, int]]:
    """A witness (u, r) with u in V_k(X) and shift_term(u, r) == t, or None.

    Orbits make this finite: t is a shift of u exactly when their orbit
    bases coincide, and a chain family contributes at most one base.
    """
    fam = v_set(X, k, guard)
    tb, ts = orbit_key(t)
    for u in sorted(fam.concrete, key=term_sort_key):
        ub, us = orbit_key(u)
        if ub is tb:
            return (u, ts - us)
    head = r_headed_shift(tb)
    if head is not None:
        j, body, s = head
        for sp in fam.spines:
            if sp.body is body and j <= sp.hi and (sp.lo is None or j >= sp.lo):
                # shift_term(tb, s) == r(j, body), so r(j, body) reaches t
                # by shifting ts - s.
                return (mk_r(j, body), ts - s)
    return None


def prec(u: Term, w: Term) -> bool:
    """Strict precedence: some shift of u is a component of w below the top."""
    fam = subterm_closure(w, None)
    ub = orbit_key(u).base
    for c in fam.concrete:
        if c is not w and orbit_key(c).base is ub:
            return True
    head = r_headed_shift(ub)
    if head is not None:
        j, body, _ = head
        for sp in fam.spines:
            if sp.body is body and j <= sp.hi:
                return True
    return False


def longest_prec_chain(terms: Iterable[Term]) -> int:
    """Length of the longest strictly increasing precedence chain among the
    given terms (1 for a nonempty antichain, 0 for no terms)."""
    items = sorted(set(terms), key=term_sort_key)
    below = {t: [u for u in items if u is not t and prec(u, t)] for t in items}
    memo: dict = {}

    def height(t) -> int:
        got = memo.get(t)
        if got is not None:
            return got
        memo[t] = 1
        best = 1
        for u in below[t]:
            h = height(u) + 1
            if h > best:
                best = h
        memo[t] = best
        return best

    return max((height(t) for t in items), default=0)


def cl_set(
    Y: Iterable[Term],
    stages: int,
    r_levels: Iterable[int] = (),
    a_arities: Iterable[int] = (),
    member_guard: int = CL_MEMBER_GUARD,
    work_guard: int = CL_WORK_GUARD,
) -> frozenset:
    """Terms reachable from Y in at most the given number of generator
    stages, where one stage closes under pairing, chain nodes at the listed
    levels, and combs at the listed arities."""
    levels = sorted(set(r_levels))
    arities = sorted(set(a_arities))
    for a in arities:
        if a < 2:
            raise ValueError("comb arities start at 2")
    S: set = set(Y)
    for _ in range(stages):
        work = len(S) * len(S) + len(S) * (len(levels) + len(arities))
        if work > work_guard:
            raise ClosureGuardError(f"stage work {work} exceeds the guard {work_guard}")
        new: set = set()
        for left in S:
            for right in S:
                new.add(mk_pair(left, right))
        for t in S:
            for m in levels:
                new.add(mk_r(m, t))
            for a in arities:
                new.add(apply_a(a, t))
        S |= new
        if len(S) > member_guard:
            raise ClosureGuardError(f"{len(S)} members exceed the guard {member_guard}")
    return frozenset(S)


def cl_count(Y, stages, r_levels=(), a_arities=(), **kw) -> int:
    return len(cl_set(Y, stages, r_levels, a_arities, **kw))
