"""Canonical tree terms over indexed leaves, pairing, and chain nodes.

Terms are hash-consed: construction goes through mk_leaf / mk_pair / mk_r,
every structurally equal term is the same object, and equality is identity.
The one rewrite rule is applied eagerly by mk_pair, so the constructors only
ever hand out normal forms:

    p(r(m, a), a)  ->  r(m+1, a)

A chain node r(m, a) unfolds one step to p(r(m-1, a), a); the successor shift
acts on the right component through that unfolding.  Leaves d(n, m) carry an
index n (a natural number or an oversized rho threshold) and a level m (any
integer); shifting by r moves every level on the rightmost path by r.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .rho import RhoInt, MAX_RHO_BITS, rho_plus

Index = Union[int, RhoInt]

# Plain-int leaf indices stay strictly below every RhoInt value (oversized
# rho thresholds exceed 2^MAX_RHO_BITS - 2^63), keeping index equality and
# hashing across the two representations trivially consistent.
MAX_INDEX_BITS = MAX_RHO_BITS - 64

# Materialization cap for left-comb images; beyond this the term would not
# be worth printing anyway.
MAX_A_ARITY = 1_000_000


class Term:
    """Base class for interned terms.  Structural equality is identity."""

    __slots__ = ()


class Leaf(Term):
    __slots__ = ("index", "level", "size")

    def __init__(self, index: Index, level: int):
        self.index = index
        self.level = level
        self.size = 1

    def __repr__(self):
        return term_to_text(self)


class Pair(Term):
    __slots__ = ("left", "right", "size")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self.size = 1 + left.size + right.size

    def __repr__(self):
        return term_to_text(self)


class RNode(Term):
    __slots__ = ("level", "body", "size")

    def __init__(self, level: int, body: Term):
        self.level = level
        self.body = body
        self.size = 1 + body.size

    def __repr__(self):
        return term_to_text(self)


# Interned instances, keyed by constructor and fields.  Child terms are
# already interned, so their default identity hash is the right key hash.
# dict.get / dict.setdefault are single bytecode-level operations, which is
# all the serialization concurrent construction needs.
_TABLE: dict = {}


def _intern(key, build):
    t = _TABLE.get(key)
    if t is None:
        t = _TABLE.setdefault(key, build())
    return t


def mk_leaf(index: Index, level: int) -> Leaf:
    if isinstance(index, RhoInt):
        pass
    elif isinstance(index, int):
        if index < 0:
            raise ValueError("leaf index must be a natural number")
        if index.bit_length() > MAX_INDEX_BITS:
            raise ValueError("leaf index too large; use a rho threshold")
    else:
        raise TypeError(f"bad index: {index!r}")
    if not isinstance(level, int):
        raise TypeError(f"bad level: {level!r}")
    return _intern(("d", index, level), lambda: Leaf(index, level))


def mk_pair(left: Term, right: Term) -> Term:
    if isinstance(left, RNode) and left.body is right:
        return mk_r(left.level + 1, right)
    return _intern(("p", left, right), lambda: Pair(left, right))


def mk_r(level: int, body: Term) -> RNode:
    if not isinstance(level, int):
        raise TypeError(f"bad level: {level!r}")
    return _intern(("r", level, body), lambda: RNode(level, body))


def apply_a(n: int, t: Term) -> Term:
    """The left comb of arity n: a_1(t) = t, a_n(t) = p(a_{n-1}(t), t)."""
    if n < 1:
        raise ValueError("comb arity must be at least 1")
    if n > MAX_A_ARITY:
        raise ValueError("comb arity too large to materialize")
    out = t
    for _ in range(n - 1):
        out = mk_pair(out, t)
    return out


def children(t: Term) -> Optional[tuple[Term, Term]]:
    """Immediate components: none for a leaf, the one-step unfolding for a
    chain node."""
    if isinstance(t, Pair):
        return (t.left, t.right)
    if isinstance(t, RNode):
        return (mk_r(t.level - 1, t.body), t.body)
    return None


def chi(t: Term) -> int:
    """Level of the rightmost leaf; the shift coordinate of t's orbit."""
    while True:
        if isinstance(t, Pair):
            t = t.right
        elif isinstance(t, RNode):
            t = t.body
        else:
            return t.level


def shift_term(t: Term, r: int) -> Term:
    """The r-fold successor shift; exact inverse pairs for r and -r."""
    if r == 0:
        return t
    if isinstance(t, Leaf):
        return mk_leaf(t.index, t.level + r)
    if isinstance(t, Pair):
        return mk_pair(t.left, shift_term(t.right, r))
    # r(m, a) = p(r(m-1, a), a); the shift lands on the unfolded right copy.
    return mk_pair(mk_r(t.level - 1, t.body), shift_term(t.body, r))


def succ_t(t: Term) -> Term:
    return shift_term(t, 1)


def pred_t(t: Term) -> Term:
    return shift_term(t, -1)


class OrbitKey(NamedTuple):
    base: Term
    shift: int


def orbit_key(t: Term) -> OrbitKey:
    """Canonical (base, shift) with chi(base) = 0 and shift(base, shift) = t.

    Two terms have equal bases exactly when one is a successor shift of the
    other, so the base identifies the shift orbit.
    """
    s = chi(t)
    return OrbitKey(shift_term(t, -s), s)


def r_headed_shift(t: Term) -> Optional[tuple[int, Term, int]]:
    """If some shift of t is a chain node, return (j, body, s) with
    shift_term(t, s) == r(j, body); else None.

    At most one such chain head exists per orbit: the fold fires the moment
    the shifted right copy realigns with the body.
    """
    if isinstance(t, RNode):
        return (t.level, t.body, 0)
    if isinstance(t, Pair) and isinstance(t.left, RNode):
        b = t.left.body
        r = chi(t.right) - chi(b)
        if r != 0 and shift_term(b, r) is t.right:
            return (t.left.level + 1, b, -r)
    return None


def leaf_indices(t: Term) -> frozenset:
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Leaf):
            out.add(u.index)
        elif isinstance(u, Pair):
            stack.append(u.left)
            stack.append(u.right)
        else:
            stack.append(u.body)
    return frozenset(out)


def r_levels_of(t: Term) -> frozenset:
    """Levels of the chain nodes written in t (not their unfoldings)."""
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Pair):
            stack.append(u.left)
            stack.append(u.right)
        elif isinstance(u, RNode):
            out.add(u.level)
            stack.append(u.body)
    return frozenset(out)


def a_arities_of(t: Term) -> frozenset:
    """Arities d >= 2 such that some subterm of t is the comb a_d(u)."""
    out = set()
    stack = [t]
    seen = set()
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        if isinstance(u, Pair):
            d = 1
            cur = u
            while isinstance(cur, Pair) and cur.right is u.right:
                d += 1
                cur = cur.left
            if cur is u.right and d >= 2:
                out.add(d)
            stack.append(u.left)
            stack.append(u.right)
        elif isinstance(u, RNode):
            stack.append(u.body)
    return frozenset(out)


class Spine(NamedTuple):
    """A chain family {r(j, body) : lo <= j <= hi}; lo None means unbounded
    below."""

    body: Term
    hi: int
    lo: Optional[int]


@dataclass(frozen=True)
class FamilySet:
    """A set of terms given as finitely many concrete members plus finitely
    many chain families.  Construction normalizes (make_family_set), so
    equal sets compare equal."""

    concrete: frozenset
    spines: tuple

    def __contains__(self, t: Term) -> bool:
        if t in self.concrete:
            return True
        if isinstance(t, RNode):
            for sp in self.spines:
                if sp.body is t.body and t.level <= sp.hi and (
                    sp.lo is None or t.level >= sp.lo
                ):
                    return True
        return False

    def is_bounded(self) -> bool:
        return all(sp.lo is not None for sp in self.spines)

    def count(self) -> int:
        if not self.is_bounded():
            raise ValueError("family set is unbounded below")
        return len(self.concrete) + sum(sp.hi - sp.lo + 1 for sp in self.spines)

    def members(self) -> list:
        if not self.is_bounded():
            raise ValueError("family set is unbounded below")
        out = list(self.concrete)
        for sp in self.spines:
            out.extend(mk_r(j, sp.body) for j in range(sp.lo, sp.hi + 1))
        return out


def make_family_set(concrete: Iterable[Term], spines: Iterable[Spine]) -> FamilySet:
    by_body: dict = {}
    for sp in spines:
        by_body.setdefault(sp.body, []).append(sp)
    merged: list[Spine] = []
    for body, sps in by_body.items():
        # Unbounded ranges first (lo None reads as -infinity), then by lo.
        sps.sort(key=lambda sp: (sp.lo is not None, sp.lo if sp.lo is not None else 0, sp.hi))
        acc: list[Spine] = []
        for sp in sps:
            if acc and (sp.lo is None or sp.lo <= acc[-1].hi + 1):
                prev = acc[-1]
                lo = None if (prev.lo is None or sp.lo is None) else min(prev.lo, sp.lo)
                acc[-1] = Spine(body, max(prev.hi, sp.hi), lo)
            else:
                acc.append(sp)
        merged.extend(acc)
    out_spines = tuple(sorted(merged, key=lambda sp: (term_to_text(sp.body), sp.hi)))
    kept = []
    for t in concrete:
        if isinstance(t, RNode):
            covered = any(
                sp.body is t.body and t.level <= sp.hi and (sp.lo is None or t.level >= sp.lo)
                for sp in out_spines
            )
            if covered:
                continue
        kept.append(t)
    return FamilySet(frozenset(kept), out_spines)


def closure_family(roots: Iterable[Term], depth: Optional[int]) -> FamilySet:
    """Component closure of the given terms, to the given depth (None for the
    full closure, which is finite only up to chain families unbounded below)."""
    if depth is None:
        concrete: set = set()
        spines: list[Spine] = []
        stack = list(roots)
        while stack:
            u = stack.pop()
            if u in concrete:
                continue
            concrete.add(u)
            if isinstance(u, Pair):
                stack.append(u.left)
                stack.append(u.right)
            elif isinstance(u, RNode):
                spines.append(Spine(u.body, u.level - 1, None))
                stack.append(u.body)
        return make_family_set(concrete, spines)

    if depth < 0:
        raise ValueError("depth must be a natural number")
    dist: dict = {}
    queue = deque((t, 0) for t in roots)
    while queue:
        u, d = queue.popleft()
        seen = dist.get(u)
        if seen is not None and seen <= d:
            continue
        dist[u] = d
        if d == depth:
            continue
        kids = children(u)
        if kids is not None:
            queue.append((kids[0], d + 1))
            queue.append((kids[1], d + 1))
    members = set(dist)
    concrete = set()
    runs: dict = {}
    for u in members:
        if isinstance(u, RNode) and mk_r(u.level + 1, u.body) in members:
            runs.setdefault(u.body, set()).add(u.level)
        else:
            concrete.add(u)
    spines = []
    for body, levels in runs.items():
        for j in sorted(levels):
            if j - 1 in levels:
                continue
            hi = j
            while hi + 1 in levels:
                hi += 1
            spines.append(Spine(body, hi, j))
    return make_family_set(concrete, spines)


def subterm_closure(t: Term, depth: Optional[int] = None) -> FamilySet:
    return closure_family([t], depth)


def index_to_text(index: Index) -> str:
    return repr(index) if isinstance(index, RhoInt) else str(index)


def term_to_text(t: Term) -> str:
    parts: list[str] = []
    stack: list = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, str):
            parts.append(u)
        elif isinstance(u, Leaf):
            parts.append(f"d({index_to_text(u.index)},{u.level})")
        elif isinstance(u, Pair):
            parts.append("p(")
            stack.extend([")", u.right, ",", u.left])
        else:
            parts.append(f"r({u.level},")
            stack.extend([")", u.body])
    return "".join(parts)


def term_sort_key(t: Term) -> str:
    return term_to_text(t)


class TermSyntaxError(ValueError):
    """Malformed term text; carries the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise TermSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise TermSyntaxError("expected a natural number", start)
        return int(self.text[start:self.pos])

    def integer(self) -> int:
        self.skip_ws()
        if self.peek() == "-":
            self.pos += 1
            return -self.nat()
        return self.nat()

    def index(self) -> Index:
        self.skip_ws()
        if self.text.startswith("rho", self.pos):
            self.pos += 3
            self.expect("(")
            n = self.nat()
            self.expect(",")
            k = self.nat()
            self.expect(")")
            offset = 0
            if self.peek() in "+-":
                sign = -1 if self.peek() == "-" else 1
                self.pos += 1
                offset = sign * self.nat()
            return rho_plus(n, k, offset)
        if self.peek() == "-":
            raise TermSyntaxError("index must be a natural number", self.pos)
        return self.nat()

    def term(self) -> Term:
        self.skip_ws()
        head = self.peek()
        start = self.pos
        if head == "d":
            self.pos += 1
            self.expect("(")
            n = self.index()
            self.expect(",")
            m = self.integer()
            self.expect(")")
            return mk_leaf(n, m)
        if head == "p":
            self.pos += 1
            self.expect("(")
            left = self.term()
            self.expect(",")
            right = self.term()
            self.expect(")")
            return mk_pair(left, right)
        if head == "r":
            self.pos += 1
            self.expect("(")
            m = self.integer()
            self.expect(",")
            body = self.term()
            self.expect(")")
            return mk_r(m, body)
        raise TermSyntaxError("expected a term (d, p, or r)", start)


def parse_term(text: str) -> Term:
    """Parse term text; whitespace insignificant, output renormalized."""
    p = _Parser(text)
    t = p.term()
    p.skip_ws()
    if p.pos != len(text):
        raise TermSyntaxError("trailing input after term", p.pos)
    return t


def random_term(rng, max_size: int = 12, max_index: int = 4,
                levels: tuple[int, int] = (-3, 3)) -> Term:
    """A random normal-form term, deterministic under a seeded Random."""
    lo, hi = levels
    roll = rng.random()
    if max_size >= 3 and 0.4 <= roll < 0.75:
        lbud = rng.randint(1, max_size - 2)
        left = random_term(rng, lbud, max_index, levels)
        right = random_term(rng, max_size - 1 - lbud, max_index, levels)
        return mk_pair(left, right)
    if max_size >= 2 and roll >= 0.75:
        body = random_term(rng, max_size - 1, max_index, levels)
        return mk_r(rng.randint(lo, hi), body)
    return mk_leaf(rng.randint(0, max_index), rng.randint(lo, hi))
