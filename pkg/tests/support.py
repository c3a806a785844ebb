"""Shared enumeration helpers for the test suite.

Everything here is deliberately independent of the closure and game modules:
the exhaustive enumerators recurse on syntax-node budgets only, so they can
serve as oracle-side universes.
"""

from pairmodel.terms import mk_leaf, mk_pair, mk_r, term_sort_key


def all_terms(max_nodes, max_index=2, levels=(-2, 2)):
    """Every normal-form term of at most max_nodes syntax nodes, with leaf
    indices in [0, max_index] and levels inside the closed window.

    mk_pair may fold an enumerated pair into a chain node of smaller size;
    the final union dedupes those, so the result is exactly the set of
    normal forms within the budget."""
    lo, hi = levels
    lvls = range(lo, hi + 1)
    by_size = {1: {mk_leaf(i, m) for i in range(max_index + 1) for m in lvls}}
    for c in range(2, max_nodes + 1):
        bucket = set()
        for m in lvls:
            for t in by_size[c - 1]:
                bucket.add(mk_r(m, t))
        for cl in range(1, c - 1):
            cr = c - 1 - cl
            for left in by_size[cl]:
                for right in by_size[cr]:
                    bucket.add(mk_pair(left, right))
        by_size[c] = bucket
    out = set()
    for c in range(1, max_nodes + 1):
        out |= by_size[c]
    return sorted(out, key=term_sort_key)


def longest_chain_edges(nodes, lt):
    """Edge count of the longest strict lt-chain over the given nodes,
    by exhaustive depth-first search.  Raises if lt has a cycle (which
    would mean unbounded chains)."""
    nodes = list(nodes)
    succs = {a: [b for b in nodes if b is not a and lt(a, b)] for a in nodes}
    state = {}  # node -> "open" | computed edge count

    def walk(a):
        got = state.get(a)
        if got == "open":
            raise AssertionError("cycle in the strict order")
        if got is not None:
            return got
        state[a] = "open"
        best = 0
        for b in succs[a]:
            d = 1 + walk(b)
            if d > best:
                best = d
        state[a] = best
        return best

    return max((walk(a) for a in nodes), default=0)
