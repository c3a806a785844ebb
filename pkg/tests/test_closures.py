"""Depth closures, shift-closure membership, precedence, and staged closures."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from pairmodel.closures import (
    ClosureGuardError,
    cl_count,
    cl_set,
    longest_prec_chain,
    prec,
    v_count,
    v_set,
    w_member,
)
from pairmodel.terms import (
    Spine,
    mk_leaf,
    mk_pair,
    mk_r,
    pred_t,
    random_term,
    shift_term,
    subterm_closure,
    succ_t,
)

from support import all_terms, longest_chain_edges


def seeded_terms(max_size=5, max_index=3, levels=(-2, 2)):
    return st.builds(
        lambda seed: random_term(random.Random(seed), max_size, max_index, levels),
        st.integers(0, 2**48),
    )


# --- v_set ------------------------------------------------------------------

def test_v_set_of_a_leaf_is_closed():
    a = mk_leaf(1, 0)
    fam = v_set([a], 5)
    assert fam.concrete == frozenset({a}) and fam.spines == ()


def test_v_set_one_step_children():
    u, v = mk_leaf(1, 0), mk_leaf(2, 1)
    t = mk_pair(u, v)
    assert v_set([t], 1).concrete == frozenset({t, u, v})


def test_v_set_chain_node_depth_two():
    a = mk_leaf(1, 0)
    fam = v_set([mk_r(2, a)], 2)
    assert fam.count() == 4
    assert fam.spines == (Spine(a, 1, 0),)


def test_v_set_accepts_a_single_term():
    a = mk_leaf(1, 0)
    assert v_set(mk_pair(a, a), 1).count() == 2


def test_v_count_monotone_in_depth():
    rng = random.Random(5)
    for _ in range(40):
        t = random_term(rng, 6)
        counts = [v_count([t], k) for k in range(0, 5)]
        assert counts == sorted(counts)


def test_v_set_guard():
    a = mk_leaf(1, 0)
    with pytest.raises(ClosureGuardError):
        v_set([mk_r(2, a)], 100)
    # raising the guard lets the chain unfold 100 levels deep
    assert v_set([mk_r(2, a)], 100, guard=128).count() == 102


# --- w_member ---------------------------------------------------------------

def brute_w_witness(t, X, k, radius=8):
    """Oracle: enumerate every shift within the radius of every depth-expanded
    V_k member."""
    for u in v_set(X, k).members():
        for r in range(-radius, radius + 1):
            if shift_term(u, r) is t:
                return u, r
    return None


def test_w_member_spec_cases():
    w = mk_pair(mk_leaf(1, 0), mk_leaf(2, 0))
    assert w_member(succ_t(w), [w], 0) == (w, 1)
    assert w_member(mk_pair(w, w), [w], 0) is None
    a, b = mk_leaf(1, 0), mk_leaf(2, 3)
    assert w_member(pred_t(a), [mk_pair(a, b)], 1) == (a, -1)


def test_w_member_agrees_with_brute_force():
    rng = random.Random(23)
    for _ in range(150):
        X = [random_term(rng, 5) for _ in range(rng.randint(1, 2))]
        k = rng.randint(0, 3)
        fam = v_set(X, k)
        probes = []
        for u in fam.members():
            probes.append(shift_term(u, rng.randint(-8, 8)))
        # decoys that leave the shift closure
        probes.append(mk_pair(X[0], X[0]))
        probes.append(mk_leaf(97, 0))
        for t in probes:
            got = w_member(t, X, k)
            want = brute_w_witness(t, X, k)
            if want is None:
                assert got is None
            else:
                assert got is not None
                u, r = got
                assert shift_term(u, r) is t
                assert u in fam


def test_w_member_matches_spines_symbolically():
    a = mk_leaf(1, 0)
    X = [mk_r(5, a)]
    # depth 2 expands the chain down to level 3
    t = shift_term(mk_r(3, a), 9)
    got = w_member(t, X, 2)
    assert got is not None
    u, r = got
    assert shift_term(u, r) is t
    assert w_member(shift_term(mk_r(2, a), 4), X, 2) is None


# --- prec -------------------------------------------------------------------

def test_prec_spec_cases():
    u = mk_leaf(1, 0)
    b = mk_leaf(2, 1)
    w = mk_pair(u, b)
    assert prec(u, w)
    assert prec(b, w)
    assert not prec(w, w)
    assert not prec(w, succ_t(w))
    a = mk_leaf(1, 0)
    assert prec(mk_r(3, a), mk_r(5, a))
    assert not prec(mk_r(5, a), mk_r(3, a))


def test_prec_sees_shifted_components():
    u = mk_leaf(1, 0)
    w = mk_pair(shift_term(u, 7), mk_leaf(2, 0))
    assert prec(u, w)
    assert prec(shift_term(u, -3), w)


@settings(max_examples=150, deadline=None)
@given(seeded_terms(), seeded_terms())
def test_prec_irreflexive_and_acyclic_on_pairs(u, w):
    assert not prec(u, u)
    assert not (prec(u, w) and prec(w, u))


def test_prec_transitive_on_sampled_triples():
    rng = random.Random(31)
    checked = 0
    for _ in range(4000):
        w = random_term(rng, 7)
        fam = subterm_closure(w, 3)
        ms = [t for t in fam.members()]
        if len(ms) < 3:
            continue
        a, b, c = rng.sample(ms, 3)
        if prec(a, b) and prec(b, c):
            checked += 1
            assert prec(a, c), (a, b, c)
    assert checked > 50


def test_longest_prec_chain_matches_exhaustive_search():
    rng = random.Random(47)
    for _ in range(60):
        X = [random_term(rng, 5) for _ in range(rng.randint(1, 2))]
        ms = v_set(X, rng.randint(0, 3)).members()
        # package convention counts nodes; the search counts edges
        assert longest_prec_chain(ms) == longest_chain_edges(ms, prec) + (1 if ms else 0)


def test_longest_prec_chain_examples():
    a = mk_leaf(1, 0)
    chain = [mk_r(j, a) for j in range(0, 4)]
    assert longest_prec_chain(chain + [a]) == 5
    assert longest_prec_chain([]) == 0
    assert longest_prec_chain([a]) == 1


# --- cl_set -----------------------------------------------------------------

def test_cl_set_stage_zero_is_the_base():
    w = mk_pair(mk_leaf(1, 0), mk_leaf(2, 0))
    assert cl_set([w], 0) == frozenset({w})


def test_cl_set_one_stage_with_window():
    w = mk_pair(mk_leaf(1, 0), mk_leaf(2, 0))
    got = cl_set([w], 1, r_levels=[0], a_arities=[2])
    assert got == frozenset({w, mk_pair(w, w), mk_r(0, w)})


def test_cl_set_two_stages_reaches_mixed_composites():
    u = mk_leaf(1, 0)
    got = cl_set([u], 2, r_levels=[0], a_arities=[2])
    assert mk_pair(u, mk_r(0, u)) in got
    assert mk_r(0, mk_r(0, u)) in got
    assert cl_count([u], 2, r_levels=[0], a_arities=[2]) == len(got)


def test_cl_set_rejects_bad_arities_and_guards():
    u = mk_leaf(1, 0)
    with pytest.raises(ValueError):
        cl_set([u], 1, a_arities=[1])
    with pytest.raises(ClosureGuardError):
        cl_set([u], 3, member_guard=10)
    with pytest.raises(ClosureGuardError):
        cl_set([mk_leaf(i, 0) for i in range(30)], 2, work_guard=100)
