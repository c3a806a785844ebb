"""A two-sorted arithmetic universe: naturals plus nonstandard tree terms.

Elements are either Std(n), an ordinary natural, or NonStd(t), a term from
the tree algebra.  Successor, addition, and multiplication extend the
standard operations; addition of two nonstandard elements is pairing, and a
mixed sum shifts the nonstandard side.  Multiplication sends mixed products
to leaves and combs, and a nonstandard product to a chain node whose level
records the right factor's shift coordinate.  The pairing polynomial
pi(x, y) = (x + y)^2 + x is evaluated with these operations, so it is
injective across both sorts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import (
    Term,
    apply_a,
    chi,
    mk_leaf,
    mk_pair,
    mk_r,
    parse_term,
    pred_t,
    random_term,
    shift_term,
    succ_t,
    term_to_text,
)


@dataclass(frozen=True)
class Std:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("standard elements are naturals")


@dataclass(frozen=True)
class NonStd:
    term: Term


Element = Union[Std, NonStd]

ZERO = Std(0)


def succ(x: Element) -> Element:
    if isinstance(x, Std):
        return Std(x.value + 1)
    return NonStd(succ_t(x.term))


def pred(x: Element) -> Element:
    """Predecessor; 0 is its own predecessor, nonstandard shifts are exact."""
    if isinstance(x, Std):
        return Std(x.value - 1) if x.value > 0 else ZERO
    return NonStd(pred_t(x.term))


def add(x: Element, y: Element) -> Element:
    if isinstance(x, Std) and isinstance(y, Std):
        return Std(x.value + y.value)
    if isinstance(x, NonStd) and isinstance(y, NonStd):
        return NonStd(mk_pair(x.term, y.term))
    if isinstance(x, NonStd):
        return NonStd(shift_term(x.term, y.value))
    return NonStd(shift_term(y.term, x.value))


def mul(x: Element, y: Element) -> Element:
    if isinstance(x, Std) and isinstance(y, Std):
        return Std(x.value * y.value)
    if isinstance(x, Std):
        # Standard-by-nonstandard lands in the index-0 leaf family; the
        # level tracks the factor count times the shift coordinate.
        return NonStd(mk_leaf(0, x.value * chi(y.term)))
    if isinstance(y, Std):
        if y.value == 0:
            return ZERO
        return NonStd(apply_a(y.value, x.term))
    return NonStd(mk_r(chi(y.term), x.term))


def pairing_pi(x: Element, y: Element) -> Element:
    s = add(x, y)
    return add(mul(s, s), x)


def g_pair(x: Element, y: Element) -> Element:
    return succ(pairing_pi(x, y))


def iter_pi(values: list) -> Element:
    """Left-nested pairing of one or more elements."""
    if not values:
        raise ValueError("iter_pi needs at least one element")
    acc = values[0]
    for v in values[1:]:
        acc = pairing_pi(acc, v)
    return acc


AXIOM_ARITY = {
    "Q1": 2,
    "Q2": 1,
    "Q3": 1,
    "Q4": 1,
    "Q5": 2,
    "Q6": 1,
    "Q7": 2,
    "Theta": 4,
}


def check_axiom(axiom_id: str, sample: tuple) -> bool:
    """Evaluate one axiom instance at the sampled elements."""
    arity = AXIOM_ARITY.get(axiom_id)
    if arity is None:
        raise ValueError(f"unknown axiom {axiom_id!r}")
    if len(sample) != arity:
        raise ValueError(f"{axiom_id} takes {arity} elements, got {len(sample)}")
    if axiom_id == "Q1":
        x, y = sample
        return x == y or succ(x) != succ(y)
    if axiom_id == "Q2":
        (x,) = sample
        return succ(x) != ZERO
    if axiom_id == "Q3":
        (x,) = sample
        return x == ZERO or succ(pred(x)) == x
    if axiom_id == "Q4":
        (x,) = sample
        return add(x, ZERO) == x
    if axiom_id == "Q5":
        x, y = sample
        return add(x, succ(y)) == succ(add(x, y))
    if axiom_id == "Q6":
        (x,) = sample
        return mul(x, ZERO) == ZERO
    if axiom_id == "Q7":
        x, y = sample
        return mul(x, succ(y)) == add(mul(x, y), x)
    x, y, z, w = sample
    return pairing_pi(x, y) != pairing_pi(z, w) or (x == z and y == w)


def element_to_text(x: Element) -> str:
    if isinstance(x, Std):
        return str(x.value)
    return term_to_text(x.term)


def parse_element(text: str) -> Element:
    """Decimal literals are standard; everything else is term text."""
    s = text.strip()
    if not s:
        raise ValueError("empty element text")
    if s.isdigit():
        return Std(int(s))
    return NonStd(parse_term(s))


def random_element(rng, max_size: int = 10, std_cap: int = 20,
                   p_std: float = 0.5) -> Element:
    if rng.random() < p_std:
        return Std(rng.randint(0, std_cap))
    return NonStd(random_term(rng, max_size))
