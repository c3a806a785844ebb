"""Tree-term arithmetic with closures, partial embeddings, and a
back-and-forth game over them."""

from .rho import MAX_RHO_BITS, RhoInt, RhoOverflowError, cmp_to_rho, rho, rho_plus, rho_value
from .terms import (
    FamilySet,
    Leaf,
    OrbitKey,
    Pair,
    RNode,
    Spine,
    Term,
    TermSyntaxError,
    apply_a,
    children,
    chi,
    leaf_indices,
    mk_leaf,
    mk_pair,
    mk_r,
    orbit_key,
    parse_term,
    pred_t,
    shift_term,
    subterm_closure,
    succ_t,
    term_to_text,
)
from .model import (
    AXIOM_ARITY,
    Element,
    NonStd,
    Std,
    ZERO,
    add,
    check_axiom,
    element_to_text,
    g_pair,
    iter_pi,
    mul,
    pairing_pi,
    parse_element,
    pred,
    succ,
)
from .closures import (
    ClosureGuardError,
    cl_count,
    cl_set,
    longest_prec_chain,
    prec,
    v_count,
    v_set,
    w_member,
)
from .embeddings import (
    ClosureDomainError,
    ClosureExtension,
    GoodMap,
    Report,
    Violation,
    extend_nth_closure,
    extend_point,
    fresh_index,
    goodmap_from_json,
    goodmap_to_json,
    verify_embedding,
    verify_good,
)
from .game import (
    Challenge,
    GameState,
    RandomAgent,
    ScriptedAgent,
    TranscriptSchemaError,
    a_set_member,
    build_transcript,
    canonical_json,
    choose_challenge,
    default_pool,
    new_game,
    played_pairs,
    replay_transcript,
    respond,
    run_exhaustive,
    run_game,
    tau,
    win_check,
)
