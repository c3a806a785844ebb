"""Per-orbit partial maps, their verification, and extension operators.

A GoodMap stores finitely many entries base -> image between orbit bases
(shift coordinate 0 on both sides) and completes structurally everywhere
else: index-0 leaves are fixed pointwise, pairs and chain nodes map
componentwise, and whole orbits follow their base.  Completion is therefore
shift-equivariant by construction; what verification has to establish is
that the explicit entries are consistent with it, injective, and graph-
preserving in both directions over the touched part of the universe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .closures import v_set, w_member
from .terms import (
    Leaf,
    Pair,
    RNode,
    Term,
    chi,
    leaf_indices,
    mk_leaf,
    mk_pair,
    mk_r,
    orbit_key,
    parse_term,
    r_headed_shift,
    shift_term,
    subterm_closure,
    succ_t,
    term_sort_key,
    term_to_text,
)


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: str

    def to_json(self) -> dict:
        return {"clause": self.clause, "witness": self.witness}


@dataclass(frozen=True)
class Report:
    ok: bool
    violations: tuple

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def make_report(violations: list) -> Report:
    return Report(not violations, tuple(violations))


def _complete(t: Term, entries: dict) -> Optional[Term]:
    b, s = orbit_key(t)
    img = _complete_base(b, entries)
    return None if img is None else shift_term(img, s)


def _complete_base(b: Term, entries: dict) -> Optional[Term]:
    hit = entries.get(b)
    if hit is not None:
        return hit
    if isinstance(b, Leaf):
        return b if b.index == 0 else None
    if isinstance(b, RNode):
        body = _complete(b.body, entries)
        return None if body is None else mk_r(b.level, body)
    # A base whose orbit passes through a chain node must follow the chain,
    # not the unfolded pair, or completion would descend forever.
    head = r_headed_shift(b)
    if head is not None:
        j, body, s = head
        fb = _complete(body, entries)
        return None if fb is None else shift_term(mk_r(j, fb), -s)
    left = _complete(b.left, entries)
    right = _complete(b.right, entries)
    if left is None or right is None:
        return None
    return mk_pair(left, right)


class GoodMap:
    """An immutable per-orbit partial map; use empty() and with_entry()."""

    __slots__ = ("entries", "inverse", "used_indices", "touched")

    def __init__(self, entries: dict, inverse: dict, used_indices: frozenset,
                 touched: frozenset):
        self.entries = entries
        self.inverse = inverse
        self.used_indices = used_indices
        self.touched = touched

    @classmethod
    def empty(cls) -> "GoodMap":
        return cls({}, {}, frozenset(), frozenset())

    def with_entry(self, base: Term, image: Term) -> "GoodMap":
        # Deliberately permissive: verify_good is the place where bad entries
        # (wrong shift coordinate, moved zero-family leaves) get reported.
        old = self.entries.get(base)
        if old is not None:
            if old is image:
                return self
            raise ValueError(f"orbit of {term_to_text(base)} is already mapped")
        entries = dict(self.entries)
        inverse = dict(self.inverse)
        entries[base] = image
        inverse[image] = base
        used = self.used_indices | leaf_indices(base) | leaf_indices(image)
        return GoodMap(entries, inverse, used, self.touched | {base})

    def touch(self, t: Term) -> "GoodMap":
        if t in self.touched:
            return self
        return GoodMap(self.entries, self.inverse, self.used_indices,
                       self.touched | {t})

    def apply(self, t: Term) -> Optional[Term]:
        return _complete(t, self.entries)

    def apply_inverse(self, t: Term) -> Optional[Term]:
        return _complete(t, self.inverse)

    def inverted(self) -> "GoodMap":
        touched = set()
        for t in self.touched:
            img = self.apply(t)
            if img is not None:
                touched.add(img)
        return GoodMap(dict(self.inverse), dict(self.entries),
                       self.used_indices, frozenset(touched))


def fresh_index(used: Iterable) -> int:
    """Least positive index not present in used."""
    i = 1
    while True:
        hit = False
        for u in used:
            if u == i:
                hit = True
                break
        if not hit:
            return i
        i += 1


def verify_good(F: GoodMap) -> Report:
    """Check the entry table itself: orbit-normal form, the fixed index-0
    family, injectivity, and inverse consistency."""
    viols: list[Violation] = []
    items = sorted(F.entries.items(), key=lambda kv: term_sort_key(kv[0]))
    for base, image in items:
        if chi(base) != 0:
            viols.append(Violation(
                "orbit-normal",
                f"{term_to_text(base)} -> {term_to_text(image)}"))
        if chi(image) != chi(base):
            viols.append(Violation(
                "chi-preserved",
                f"{term_to_text(base)} -> {term_to_text(image)}: "
                f"{chi(base)} != {chi(image)}"))
        base_zero = isinstance(base, Leaf) and base.index == 0
        image_zero = isinstance(image, Leaf) and image.index == 0
        if (base_zero or image_zero) and base is not image:
            viols.append(Violation(
                "zero-family",
                f"{term_to_text(base)} -> {term_to_text(image)}"))
    by_image: dict = {}
    for base, image in items:
        prev = by_image.get(image)
        if prev is not None:
            viols.append(Violation(
                "injective",
                f"{term_to_text(prev)} and {term_to_text(base)} "
                f"-> {term_to_text(image)}"))
        else:
            by_image[image] = base
    if F.inverse != {img: b for b, img in F.entries.items()}:
        viols.append(Violation("inverse-consistent", "entry tables disagree"))
    return make_report(viols)


def _embedding_half(F: GoodMap, language: str, prefix: str) -> list:
    viols: list[Violation] = []
    D: set = set()
    for t in F.touched:
        D |= subterm_closure(t, None).concrete
    images: dict = {}
    for t in sorted(D, key=term_sort_key):
        img = F.apply(t)
        if img is None:
            viols.append(Violation(prefix + "domain-incomplete", term_to_text(t)))
            continue
        images[t] = img
    by_image: dict = {}
    for t in sorted(images, key=term_sort_key):
        img = images[t]
        prev = by_image.get(img)
        if prev is not None:
            viols.append(Violation(
                prefix + "injective",
                f"{term_to_text(prev)} and {term_to_text(t)}"))
        else:
            by_image[img] = t
        back = F.apply_inverse(img)
        if back is not t:
            viols.append(Violation(prefix + "inverse", term_to_text(t)))
    for t in sorted(images, key=term_sort_key):
        img = images[t]
        if isinstance(t, Leaf):
            if t.index == 0 and img is not t:
                viols.append(Violation(prefix + "zero-family", term_to_text(t)))
        elif isinstance(t, Pair):
            fl, fr = F.apply(t.left), F.apply(t.right)
            if fl is None or fr is None or mk_pair(fl, fr) is not img:
                viols.append(Violation(prefix + "pairing-graph", term_to_text(t)))
        else:
            fb = F.apply(t.body)
            if not (isinstance(img, RNode) and img.level == t.level
                    and fb is not None and img.body is fb):
                viols.append(Violation(prefix + "chain-graph", term_to_text(t)))
        if language == "full":
            fs = F.apply(succ_t(t))
            if fs is not succ_t(img):
                viols.append(Violation(prefix + "successor-graph", term_to_text(t)))
    return viols


def verify_embedding(F: GoodMap, language: str = "full") -> Report:
    """Check graph preservation over the touched fragment, both directions.

    language "full" includes the successor graph; "minusS" drops it (the
    signature the game's atomic checks range over).
    """
    if language not in ("full", "minusS"):
        raise ValueError(f"unknown language {language!r}")
    viols = _embedding_half(F, language, "")
    viols.extend(_embedding_half(F.inverted(), language, "co-"))
    return make_report(viols)


def extend_point(F: GoodMap, X, k: int, a: Term) -> GoodMap:
    """Extend F so that a is mapped: generator-leaf orbits of a that have no
    entry yet receive fresh-index leaves (ascending index order), then a's
    own orbit is entered explicitly.

    When a is already a shift of a mapped part of V_k(X), this only records
    the touch."""
    if w_member(a, X, k) is not None and F.apply(a) is not None:
        return F.touch(a)
    G = F
    if G.apply(a) is None:
        missing = sorted(
            i for i in leaf_indices(a)
            if i != 0 and mk_leaf(i, 0) not in G.entries
        )
        for i in missing:
            q = fresh_index(G.used_indices)
            G = G.with_entry(mk_leaf(i, 0), mk_leaf(q, 0))
    base = orbit_key(a).base
    img = G.apply(base)
    if img is None:
        raise ValueError(f"cannot complete an image for {term_to_text(a)}")
    if base not in G.entries:
        G = G.with_entry(base, img)
    return G.touch(a)


class ClosureDomainError(Exception):
    """Query outside the windowed generated closure the extension covers."""


class ClosureExtension:
    """The lift of a fragment to the closure generated over W_k(X), lazily:
    query(t) ranks t by generator stages and completes its image."""

    def __init__(self, F: GoodMap, X, k: int, stages: int,
                 r_levels: Iterable[int] = (), a_arities: Iterable[int] = ()):
        self.fragment = F
        self.X = _as_terms(X)
        self.k = k
        self.stages = stages
        self.r_levels = frozenset(r_levels)
        self.a_arities = frozenset(a_arities)
        self._fam = v_set(self.X, k)
        self._base_orbits: dict = {}
        for u in sorted(self._fam.concrete, key=term_sort_key):
            b = orbit_key(u).base
            self._base_orbits.setdefault(b, u)
        self._rank_memo: dict = {}

    def _in_w(self, t: Term) -> bool:
        b = orbit_key(t).base
        if b in self._base_orbits:
            return True
        head = r_headed_shift(b)
        if head is not None:
            j, body, _ = head
            for sp in self._fam.spines:
                if sp.body is body and j <= sp.hi and (sp.lo is None or j >= sp.lo):
                    return True
        return False

    def rank(self, t: Term) -> Optional[int]:
        """Least number of generator stages needed to build t over the shift
        closure of V_k(X) and the index-0 leaves, or None past the budget."""
        return self._rank(t, self.stages)

    def _rank(self, t: Term, budget: int) -> Optional[int]:
        key = (t, budget)
        if key in self._rank_memo:
            return self._rank_memo[key]
        out: Optional[int] = None
        if (isinstance(t, Leaf) and t.index == 0) or self._in_w(t):
            out = 0
        elif budget > 0:
            if isinstance(t, Pair):
                lr = self._rank(t.left, budget - 1)
                rr = self._rank(t.right, budget - 1)
                if lr is not None and rr is not None:
                    out = 1 + max(lr, rr)
                d = 1
                cur = t
                while isinstance(cur, Pair) and cur.right is t.right:
                    d += 1
                    cur = cur.left
                if cur is t.right and d in self.a_arities:
                    ur = self._rank(t.right, budget - 1)
                    if ur is not None and (out is None or 1 + ur < out):
                        out = 1 + ur
            elif isinstance(t, RNode):
                if t.level in self.r_levels:
                    br = self._rank(t.body, budget - 1)
                    if br is not None:
                        out = 1 + br
                # pairing two members can fold straight into this node
                lr = self._rank(mk_r(t.level - 1, t.body), budget - 1)
                if lr is not None:
                    rr = self._rank(t.body, budget - 1)
                    if rr is not None and (out is None or 1 + max(lr, rr) < out):
                        out = 1 + max(lr, rr)
        self._rank_memo[key] = out
        return out

    def query(self, t: Term) -> Term:
        r = self.rank(t)
        if r is None or r > self.stages:
            raise ClosureDomainError(
                f"{term_to_text(t)} is not reachable in {self.stages} stages")
        img = self.fragment.apply(t)
        if img is None:
            raise ClosureDomainError(
                f"the fragment does not cover {term_to_text(t)}")
        return img


def _as_terms(X) -> tuple:
    if isinstance(X, Term):
        return (X,)
    return tuple(X)


def extend_nth_closure(F: GoodMap, X, k: int, stages: int,
                       r_levels: Iterable[int] = (),
                       a_arities: Iterable[int] = ()) -> ClosureExtension:
    return ClosureExtension(F, X, k, stages, r_levels, a_arities)


def goodmap_to_json(F: GoodMap) -> list:
    return [
        {"base": term_to_text(b), "image": term_to_text(F.entries[b])}
        for b in sorted(F.entries, key=term_sort_key)
    ]


def goodmap_from_json(doc) -> GoodMap:
    if not isinstance(doc, list):
        raise ValueError("fragment document must be a list")
    G = GoodMap.empty()
    for row in doc:
        if not isinstance(row, dict) or set(row) != {"base", "image"}:
            raise ValueError("fragment rows are {base, image} objects")
        G = G.with_entry(parse_term(row["base"]), parse_term(row["image"]))
    return G
