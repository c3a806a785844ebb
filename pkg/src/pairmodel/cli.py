"""Command line surface: axiom and lemma spot checks, the radius schedule,
closures, and the game in autoplay, interactive, replay, and serve modes.

Every command prints canonical JSON or fixed-format text, so identical
invocations are byte-identical; randomized commands take an explicit seed.
Exit codes: 0 success, 1 a checked property failed or a replay diverged,
2 malformed input or a resource guard."""

from __future__ import annotations

import json
import random
import sys

import click

from .closures import ClosureGuardError, prec, v_set
from .embeddings import (
    GoodMap,
    extend_point,
    verify_embedding,
    verify_good,
)
from .game import (
    RandomAgent,
    ScriptedAgent,
    TranscriptSchemaError,
    a_set_member,
    build_transcript,
    canonical_json,
    choose_challenge,
    default_pool,
    new_game,
    replay_transcript,
    respond,
    run_exhaustive,
    run_game,
    tau,
)
from .model import (
    AXIOM_ARITY,
    NonStd,
    Std,
    add,
    check_axiom,
    element_to_text,
    mul,
    pairing_pi,
    parse_element,
    random_element,
)
from .rho import RhoOverflowError, rho
from .terms import (
    Leaf,
    TermSyntaxError,
    chi,
    leaf_indices,
    mk_leaf,
    mk_pair,
    mk_r,
    orbit_key,
    parse_term,
    pred_t,
    random_term,
    shift_term,
    succ_t,
    term_sort_key,
    term_to_text,
)


def _echo_json(doc) -> None:
    click.echo(canonical_json(doc), nl=False)


def _parse_term_arg(text: str):
    try:
        return parse_term(text)
    except TermSyntaxError as e:
        raise click.UsageError(f"bad term {text!r}: {e}")


def _parse_element_arg(text: str):
    try:
        return parse_element(text)
    except (TermSyntaxError, ValueError) as e:
        raise click.UsageError(f"bad element {text!r}: {e}")


@click.group()
def main() -> None:
    """Tree-term arithmetic, closures, and the back-and-forth game."""


@main.command("verify-axioms")
@click.option("--samples", default=200, show_default=True)
@click.option("--max-size", default=10, show_default=True)
@click.option("--seed", default=0, show_default=True)
def verify_axioms(samples: int, max_size: int, seed: int) -> None:
    """Spot-check every axiom on sampled elements of both sorts."""
    rng = random.Random(seed)
    report = []
    failed = False
    for axiom in sorted(AXIOM_ARITY):
        arity = AXIOM_ARITY[axiom]
        failures = []
        for _ in range(samples):
            sample = tuple(
                random_element(rng, max_size=max_size) for _ in range(arity))
            if not check_axiom(axiom, sample):
                failures.append([element_to_text(x) for x in sample])
        report.append({
            "axiom": axiom,
            "instances": samples,
            "failures": failures,
        })
        failed = failed or bool(failures)
    _echo_json(report)
    sys.exit(1 if failed else 0)


def _lemma_orbit_partition(rng, samples, max_size):
    failures = []
    for _ in range(samples):
        t = random_term(rng, max_size)
        u = random_term(rng, max_size)
        same_base = orbit_key(t).base is orbit_key(u).base
        related = any(shift_term(t, r) is u for r in range(-6, 7))
        if same_base != related and abs(chi(t) - chi(u)) <= 6:
            failures.append([term_to_text(t), term_to_text(u)])
    return failures


def _lemma_shift_inverse(rng, samples, max_size):
    failures = []
    for _ in range(samples):
        t = random_term(rng, max_size)
        if pred_t(succ_t(t)) is not t or succ_t(pred_t(t)) is not t:
            failures.append([term_to_text(t)])
    return failures


def _lemma_no_shift_fixpoint(rng, samples, max_size):
    failures = []
    for _ in range(samples):
        t = random_term(rng, max_size)
        if any(shift_term(t, r) is t for r in range(1, 7)):
            failures.append([term_to_text(t)])
    return failures


def _lemma_sum_acyclic(rng, samples, max_size):
    failures = []
    for _ in range(samples):
        xs = [NonStd(random_term(rng, max_size)) for _ in range(3)]
        sums = [add(xs[0], xs[1]), add(add(xs[0], xs[1]), xs[2]),
                add(xs[0], add(xs[1], xs[2]))]
        for s in sums:
            if any(s == x for x in xs):
                failures.append([element_to_text(s)])
    return failures


def _lemma_pairing_injective(rng, samples, max_size):
    failures = []
    seen = {}
    for _ in range(samples):
        x = random_element(rng, max_size=max_size, std_cap=6)
        y = random_element(rng, max_size=max_size, std_cap=6)
        key = pairing_pi(x, y)
        got = seen.get(element_to_text(key))
        if got is not None and got != (x, y):
            failures.append([element_to_text(x), element_to_text(y)])
        seen[element_to_text(key)] = (x, y)
    return failures


def _lemma_product_families(rng, samples, max_size):
    failures = []
    for _ in range(samples):
        n = rng.randint(0, 5)
        v = random_term(rng, max_size)
        u = random_term(rng, max_size)
        left = mul(Std(n), NonStd(v))
        ok = (isinstance(left, NonStd) and isinstance(left.term, Leaf)
              and left.term.index == 0 and left.term.level == n * chi(v))
        both = mul(NonStd(u), NonStd(v))
        ok = ok and both == NonStd(mk_r(chi(v), u))
        if not ok:
            failures.append([str(n), term_to_text(v), term_to_text(u)])
    return failures


def _lemma_transposition(rng, samples, max_size):
    failures = []
    for _ in range(samples):
        t = random_term(rng, max_size, max_index=5)
        u = random_term(rng, max_size, max_index=5)
        i, p = rng.sample(range(1, 7), 2)
        if tau(tau(t, i, p), i, p) is not t:
            failures.append([term_to_text(t), f"swap {i},{p}"])
            continue
        lhs = tau(add(NonStd(t), NonStd(u)).term, i, p)
        rhs = add(NonStd(tau(t, i, p)), NonStd(tau(u, i, p))).term
        if lhs is not rhs:
            failures.append([term_to_text(t), term_to_text(u), f"add swap {i},{p}"])
        lhs = tau(mul(NonStd(t), NonStd(u)).term, i, p)
        rhs = mul(NonStd(tau(t, i, p)), NonStd(tau(u, i, p))).term
        if lhs is not rhs:
            failures.append([term_to_text(t), term_to_text(u), f"mul swap {i},{p}"])
    return failures


def _lemma_precedence(rng, samples, max_size):
    failures = []
    for _ in range(samples):
        u = random_term(rng, max_size)
        w = random_term(rng, max_size)
        if prec(u, u):
            failures.append([term_to_text(u), "reflexive"])
        if prec(u, w) and prec(w, u):
            failures.append([term_to_text(u), term_to_text(w), "2-cycle"])
        if not prec(u, mk_pair(u, w)) or not prec(w, mk_pair(u, w)):
            failures.append([term_to_text(u), term_to_text(w), "component"])
    return failures


def _lemma_extension_sound(rng, samples, max_size):
    failures = []
    for _ in range(max(1, samples // 10)):
        w = random_term(rng, max_size)
        F = GoodMap.empty()
        for i in sorted(i for i in leaf_indices(w) if i != 0):
            F = F.with_entry(mk_leaf(i, 0), mk_leaf(i, 0))
        F = F.touch(w)
        for _ in range(3):
            a = random_term(rng, max_size)
            F = extend_point(F, (w,), 8, a)
        if not verify_good(F).ok or not verify_embedding(F, "full").ok:
            failures.append([term_to_text(w)])
    return failures


def _lemma_challenge_window(rng, samples, max_size):
    failures = []
    for n in range(0, 3):
        ch = choose_challenge(Std(rng.randint(0, 9)), n)
        if not a_set_member(n, ch.a0) or a_set_member(n, ch.b0):
            failures.append([str(n)])
    return failures


_LEMMAS = [
    ("orbit-partition", _lemma_orbit_partition),
    ("shift-inverse", _lemma_shift_inverse),
    ("no-shift-fixpoint", _lemma_no_shift_fixpoint),
    ("sum-acyclic", _lemma_sum_acyclic),
    ("pairing-injective", _lemma_pairing_injective),
    ("product-families", _lemma_product_families),
    ("transposition", _lemma_transposition),
    ("precedence", _lemma_precedence),
    ("extension-sound", _lemma_extension_sound),
    ("challenge-window", _lemma_challenge_window),
]


@main.command("verify-lemmas")
@click.option("--samples", default=120, show_default=True)
@click.option("--max-size", default=8, show_default=True)
@click.option("--seed", default=0, show_default=True)
def verify_lemmas(samples: int, max_size: int, seed: int) -> None:
    """Spot-check the structural facts the game's strategy leans on."""
    report = []
    failed = False
    for name, fn in _LEMMAS:
        rng = random.Random(f"{seed}:{name}")
        failures = fn(rng, samples, max_size)
        report.append({
            "lemma": name,
            "instances": samples,
            "failures": failures,
        })
        failed = failed or bool(failures)
    _echo_json(report)
    sys.exit(1 if failed else 0)


@main.command("rho")
@click.argument("n", type=int)
@click.argument("k", type=int)
def rho_cmd(n: int, k: int) -> None:
    """Print rho_n(k) exactly."""
    if n < 0 or k < 0:
        raise click.UsageError("rho takes natural arguments")
    try:
        click.echo(str(rho(n, k)))
    except RhoOverflowError as e:
        click.echo(str(e), err=True)
        sys.exit(2)


@main.command("closure")
@click.option("--base", "bases", multiple=True, required=True,
              help="Term text; repeat for several roots.")
@click.option("--depth", default=2, show_default=True)
def closure_cmd(bases, depth: int) -> None:
    """Print the component closure of the given terms to the given depth."""
    roots = [_parse_term_arg(b) for b in bases]
    try:
        fam = v_set(roots, depth)
    except ClosureGuardError as e:
        click.echo(str(e), err=True)
        sys.exit(2)
    for t in sorted(fam.concrete, key=term_sort_key):
        click.echo(term_to_text(t))
    for sp in fam.spines:
        if sp.lo is None:
            click.echo(f"spine({term_to_text(sp.body)},{sp.hi})")
        else:
            click.echo(f"spine({term_to_text(sp.body)},{sp.hi},{sp.lo})")
    click.echo(f"count: {fam.count()}")


def _parse_pool(text: str) -> list:
    return [_parse_element_arg(part) for part in text.split(";") if part.strip()]


@main.command("autoplay")
@click.option("--n", default=2, show_default=True)
@click.option("--w", "anchor", default="5", show_default=True,
              help="Anchor element (decimal or term text).")
@click.option("--agent", type=click.Choice(["random", "exhaustive"]),
              default="random", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--pool", default=None,
              help="Semicolon-separated move pool; defaults to six probes.")
def autoplay(n: int, anchor: str, agent: str, seed: int, pool) -> None:
    """Play complete games without a human challenger."""
    if n < 0:
        raise click.UsageError("n must be a natural number")
    w = _parse_element_arg(anchor)
    moves = _parse_pool(pool) if pool is not None else None
    if moves is not None and not moves:
        raise click.UsageError("the move pool is empty")
    if agent == "random":
        doc = run_game(n, w, RandomAgent(random.Random(seed), moves))
        _echo_json(doc)
        sys.exit(0 if doc["verdict"]["ok"] else 1)
    docs = list(run_exhaustive(n, w, moves))
    _echo_json(docs)
    sys.exit(0 if all(d["verdict"]["ok"] for d in docs) else 1)


@main.command("play")
@click.option("--n", default=2, show_default=True)
@click.option("--w", "anchor", default="5", show_default=True)
def play(n: int, anchor: str) -> None:
    """Play challenger from stdin: lines "left ELEMENT" or "right ELEMENT"."""
    if n < 0:
        raise click.UsageError("n must be a natural number")
    w = _parse_element_arg(anchor)
    state = new_game(n, w)
    _echo_json({
        "n": n,
        "w": element_to_text(w),
        "a0": term_to_text(state.a0),
        "b0": term_to_text(state.b0),
    })
    while not state.done:
        line = sys.stdin.readline()
        if not line:
            click.echo("game incomplete: challenger input ended", err=True)
            sys.exit(2)
        text = line.strip()
        if not text:
            continue
        side = "left"
        body = text
        head, _, rest = text.partition(" ")
        if head in ("left", "right"):
            side, body = head, rest
        element = _parse_element_arg(body)
        reply, state = respond(state, side, element)
        _echo_json({
            "round": len(state.rounds) - 1,
            "side": side,
            "reply": element_to_text(reply),
        })
    _echo_json(build_transcript(state))
    sys.exit(0 if win_ok(state) else 1)


def win_ok(state) -> bool:
    doc = build_transcript(state)
    return bool(doc["verdict"] and doc["verdict"]["ok"])


@main.command("replay")
@click.argument("source", type=click.Path(allow_dash=True))
def replay(source: str) -> None:
    """Re-check a finished transcript; exit 0 only if the verdict matches."""
    try:
        if source == "-":
            raw = sys.stdin.read()
        else:
            with open(source, "r", encoding="utf-8") as fh:
                raw = fh.read()
    except OSError as e:
        click.echo(str(e), err=True)
        sys.exit(2)
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        click.echo(f"not JSON: {e}", err=True)
        sys.exit(2)
    try:
        out = replay_transcript(doc)
    except TranscriptSchemaError as e:
        click.echo(f"bad transcript: {e}", err=True)
        sys.exit(2)
    _echo_json(out)
    sys.exit(0 if out["matches"] else 1)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8077, show_default=True)
@click.option("--max-n", default=4, show_default=True)
def serve(host: str, port: int, max_n: int) -> None:
    """Serve the game over HTTP."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(max_n=max_n), host=host, port=port)


if __name__ == "__main__":
    main()
