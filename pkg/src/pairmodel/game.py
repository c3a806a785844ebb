"""An n-round back-and-forth game between two copies of the universe.

Each round the challenger picks a side and an element there; the responder
answers on the other side.  The responder's strategy is structural: it keeps
a per-orbit fragment, seeded with the identity on the anchor's leaf orbits
and the pre-played pair a0 -> b0, and extends it with fresh-index leaves as
new orbits appear.  The responder wins a finished game when the played pairs
(anchor, a0/b0, the rounds, and 0) satisfy the same unnested atomic
formulas on both sides: equality, the successor graph, the addition graph,
the multiplication graph, and being zero.

Challenges follow the radius schedule: against a standard anchor the pair
a0, b0 is d(1,0) against d(rho_n(n+1)+1, 0), far beyond the index window an
n-round challenger can pin down; against a nonstandard anchor both indices
are chosen fresh for the anchor's leaves.  Indices past the bit guard stay
symbolic (RhoInt), so these games are playable at every n.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from typing import Callable, Iterable, NamedTuple, Optional

from .embeddings import (
    GoodMap,
    Report,
    Violation,
    extend_point,
    fresh_index,
    goodmap_to_json,
    make_report,
    verify_embedding,
    verify_good,
)
from .model import (
    Element,
    NonStd,
    Std,
    ZERO,
    add,
    element_to_text,
    mul,
    parse_element,
    succ,
)
from .rho import cmp_to_rho, rho_plus
from .terms import (
    Leaf,
    Pair,
    Term,
    TermSyntaxError,
    leaf_indices,
    mk_leaf,
    mk_pair,
    mk_r,
)

# Depth used for the fragment's component window when extending; replies are
# decided by the per-orbit completion, so this only gates a fast path.
FRAGMENT_DEPTH = 8


def a_set_member(n: int, t: Term) -> bool:
    """Membership in the level-0 leaf window {d(j, 0) : 1 <= j <= rho_n(n+1)}."""
    if not isinstance(t, Leaf) or t.level != 0:
        return False
    if isinstance(t.index, int) and t.index < 1:
        return False
    return cmp_to_rho(t.index, n, n + 1) <= 0


def tau(t: Term, i, p) -> Term:
    """Transpose the leaf indices i and p everywhere in t."""
    bad = (isinstance(i, int) and i < 1) or (isinstance(p, int) and p < 1)
    if bad:
        raise ValueError("transposed indices must be positive")
    if i == p:
        raise ValueError("transposed indices must differ")

    def go(u: Term) -> Term:
        if isinstance(u, Leaf):
            idx = u.index
            if idx == i:
                idx = p
            elif idx == p:
                idx = i
            return mk_leaf(idx, u.level)
        if isinstance(u, Pair):
            return mk_pair(go(u.left), go(u.right))
        return mk_r(u.level, go(u.body))

    return go(t)


class Challenge(NamedTuple):
    a0: Term
    b0: Term
    fragment: GoodMap
    anchors: tuple


def choose_challenge(w: Element, n: int) -> Challenge:
    """The pre-played pair and seed fragment for an n-round game anchored at w."""
    if n < 0:
        raise ValueError("round count must be a natural number")
    if isinstance(w, Std):
        a0 = mk_leaf(1, 0)
        b0 = mk_leaf(rho_plus(n, n + 1, 1), 0)
        F = GoodMap.empty().with_entry(a0, b0)
        return Challenge(a0, b0, F, (a0,))
    wt = w.term
    taken = leaf_indices(wt)
    q = fresh_index(taken)
    if cmp_to_rho(q, n, n + 1) > 0:
        # every window index occurs in the anchor; no discriminating pair
        raise ValueError("anchor leaves exhaust the index window")
    off = 1
    while any(u == rho_plus(n, n + 1, off) for u in taken):
        off += 1
    a0 = mk_leaf(q, 0)
    b0 = mk_leaf(rho_plus(n, n + 1, off), 0)
    F = GoodMap.empty()
    for i in sorted(i for i in taken if i != 0):
        F = F.with_entry(mk_leaf(i, 0), mk_leaf(i, 0))
    F = F.with_entry(a0, b0).touch(wt)
    return Challenge(a0, b0, F, (wt, a0))


@dataclass(frozen=True)
class GameState:
    n: int
    w: Element
    a0: Term
    b0: Term
    anchors: tuple
    fragment: GoodMap
    rounds: tuple

    @property
    def done(self) -> bool:
        return len(self.rounds) == self.n


def new_game(n: int, w: Element) -> GameState:
    ch = choose_challenge(w, n)
    return GameState(n, w, ch.a0, ch.b0, ch.anchors, ch.fragment, ())


def played_pairs(state: GameState) -> list:
    """The element pairs the atomic checks range over, in play order."""
    pairs = [(state.w, state.w), (NonStd(state.a0), NonStd(state.b0))]
    for rd in state.rounds:
        move, reply = rd["move_el"], rd["reply_el"]
        if rd["side"] == "left":
            pairs.append((move, reply))
        else:
            pairs.append((reply, move))
    pairs.append((ZERO, ZERO))
    return pairs


def win_check(pairs: list) -> Report:
    """Atomic agreement of the played pairs: equality, successor, addition,
    multiplication, and zero, as biconditionals across the two sides."""
    viols: list[Violation] = []
    lefts = [p[0] for p in pairs]
    rights = [p[1] for p in pairs]
    k = len(pairs)

    def txt(i: int) -> str:
        return element_to_text(lefts[i])

    for i in range(k):
        if (lefts[i] == ZERO) != (rights[i] == ZERO):
            viols.append(Violation("zero", f"pair {i}: {txt(i)}"))
        for j in range(k):
            if (lefts[i] == lefts[j]) != (rights[i] == rights[j]):
                viols.append(Violation(
                    "equality", f"pairs {i},{j}: {txt(i)} vs {txt(j)}"))
            if (succ(lefts[i]) == lefts[j]) != (succ(rights[i]) == rights[j]):
                viols.append(Violation(
                    "successor-graph", f"pairs {i},{j}: S({txt(i)}) vs {txt(j)}"))
            for t in range(k):
                if (add(lefts[i], lefts[j]) == lefts[t]) != (
                        add(rights[i], rights[j]) == rights[t]):
                    viols.append(Violation(
                        "addition-graph",
                        f"pairs {i},{j},{t}: {txt(i)}+{txt(j)} vs {txt(t)}"))
                if (mul(lefts[i], lefts[j]) == lefts[t]) != (
                        mul(rights[i], rights[j]) == rights[t]):
                    viols.append(Violation(
                        "multiplication-graph",
                        f"pairs {i},{j},{t}: {txt(i)}*{txt(j)} vs {txt(t)}"))
    return make_report(viols)


def _fragment_report(F: GoodMap) -> Report:
    good = verify_good(F)
    emb = verify_embedding(F, "full")
    return make_report(list(good.violations) + list(emb.violations))


def respond(state: GameState, side: str, element: Element) -> tuple:
    """Answer a challenger move; returns (reply, new state)."""
    if state.done:
        raise ValueError("game already has all its rounds")
    if side not in ("left", "right"):
        raise ValueError(f"unknown side {side!r}")
    F = state.fragment
    if isinstance(element, Std):
        reply: Element = element
        G = F
    elif side == "left":
        G = extend_point(F, state.anchors, FRAGMENT_DEPTH, element.term)
        img = G.apply(element.term)
        reply = NonStd(img)
    else:
        inv = F.inverted()
        image_anchors = tuple(
            x for x in (F.apply(t) for t in state.anchors) if x is not None)
        ginv = extend_point(inv, image_anchors, FRAGMENT_DEPTH, element.term)
        img = ginv.apply(element.term)
        reply = NonStd(img)
        G = ginv.inverted()
    rd = {
        "side": side,
        "move_el": element,
        "reply_el": reply,
        "report": _fragment_report(G),
        "fragment_map": G,
    }
    new_state = replace(state, fragment=G, rounds=state.rounds + (rd,))
    return reply, new_state


def default_pool(state: GameState) -> list:
    """Six elements exercising each operation around the challenge."""
    a0e = NonStd(state.a0)
    b0e = NonStd(state.b0)
    anchor = state.w if isinstance(state.w, NonStd) else a0e
    pool = [ZERO, Std(3), a0e, b0e, add(anchor, a0e), mul(anchor, a0e)]
    out: list[Element] = []
    for e in pool:
        if e not in out:
            out.append(e)
    return out


class RandomAgent:
    """Challenger picking uniform side and pool element from a seeded RNG."""

    def __init__(self, rng, pool: Optional[list] = None):
        self.rng = rng
        self.pool = pool

    def __call__(self, state: GameState) -> tuple:
        pool = self.pool if self.pool is not None else default_pool(state)
        side = self.rng.choice(["left", "right"])
        return side, self.rng.choice(pool)


class ScriptedAgent:
    def __init__(self, moves: Iterable[tuple]):
        self.moves = list(moves)
        self.at = 0

    def __call__(self, state: GameState) -> tuple:
        if self.at >= len(self.moves):
            raise ValueError(f"script ended after {self.at} moves")
        mv = self.moves[self.at]
        self.at += 1
        return mv


def run_game(n: int, w: Element, agent: Callable) -> dict:
    state = new_game(n, w)
    while not state.done:
        side, element = agent(state)
        _, state = respond(state, side, element)
    return build_transcript(state)


def run_exhaustive(n: int, w: Element, pool: Optional[list] = None):
    """Every length-n challenger line over (side, pool element); transcripts
    in lexicographic play order."""
    state0 = new_game(n, w)
    base_pool = pool if pool is not None else default_pool(state0)
    options = [(side, e) for side in ("left", "right") for e in base_pool]
    for line in itertools.product(options, repeat=n):
        yield run_game(n, w, ScriptedAgent(line))


def build_transcript(state: GameState) -> dict:
    rounds = []
    for rd in state.rounds:
        rounds.append({
            "side": rd["side"],
            "move": element_to_text(rd["move_el"]),
            "reply": element_to_text(rd["reply_el"]),
            "fragmentReport": rd["report"].to_json(),
            "fragment": goodmap_to_json(rd["fragment_map"]),
        })
    verdict = win_check(played_pairs(state)).to_json() if state.done else None
    return {
        "n": state.n,
        "w": element_to_text(state.w),
        "a0": element_to_text(NonStd(state.a0)),
        "b0": element_to_text(NonStd(state.b0)),
        "rounds": rounds,
        "fragment": goodmap_to_json(state.fragment),
        "verdict": verdict,
    }


def canonical_json(doc) -> str:
    """The one serialization transcripts ever use; byte-stable."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


class TranscriptSchemaError(ValueError):
    pass


def _schema_element(doc: dict, key: str) -> Element:
    val = doc.get(key)
    if not isinstance(val, str):
        raise TranscriptSchemaError(f"{key} must be element text")
    try:
        return parse_element(val)
    except (TermSyntaxError, ValueError) as e:
        raise TranscriptSchemaError(f"bad {key}: {e}") from e


def replay_transcript(doc) -> dict:
    """Recompute the verdict of a finished transcript from its played pairs
    alone; returns {"verdict": ..., "matches": ...}."""
    if not isinstance(doc, dict):
        raise TranscriptSchemaError("transcript must be an object")
    required = {"n", "w", "a0", "b0", "rounds", "verdict"}
    missing = required - set(doc)
    if missing:
        raise TranscriptSchemaError(f"missing keys: {sorted(missing)}")
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise TranscriptSchemaError("n must be a natural number")
    w = _schema_element(doc, "w")
    a0 = _schema_element(doc, "a0")
    b0 = _schema_element(doc, "b0")
    if not isinstance(a0, NonStd) or not isinstance(b0, NonStd):
        raise TranscriptSchemaError("a0 and b0 must be terms")
    rounds = doc["rounds"]
    if not isinstance(rounds, list) or len(rounds) != n:
        raise TranscriptSchemaError(f"a finished transcript has exactly n={n} rounds")
    pairs = [(w, w), (a0, b0)]
    for i, rd in enumerate(rounds):
        if not isinstance(rd, dict):
            raise TranscriptSchemaError(f"round {i} must be an object")
        side = rd.get("side")
        if side not in ("left", "right"):
            raise TranscriptSchemaError(f"round {i}: bad side {side!r}")
        move = _schema_element(rd, "move")
        reply = _schema_element(rd, "reply")
        pairs.append((move, reply) if side == "left" else (reply, move))
    pairs.append((ZERO, ZERO))
    recorded = doc["verdict"]
    if not isinstance(recorded, dict) or set(recorded) != {"ok", "violations"}:
        raise TranscriptSchemaError("verdict must be a finished {ok, violations}")
    recomputed = win_check(pairs).to_json()
    return {"verdict": recomputed, "matches": recomputed == recorded}
