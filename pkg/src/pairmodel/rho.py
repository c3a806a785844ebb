"""The radius schedule rho and exact integers of the form rho_n(k) + j.

rho_n is doubly exponential: already rho_1(3) needs more than 10^10 bits, and
rho_2(3) more than 10^12, so values are materialized as plain ints only while
they fit under a bit guard.  Larger values are kept symbolically as RhoInt,
with comparison and equality still exact: a rho stage either fits, or it
dominates every plain comparand long before materialization would be needed.
"""

from __future__ import annotations

# Values with more bits than this stay symbolic.  The guard is part of the
# canonical form: rho_plus() normalizes to a plain int exactly when the value
# fits, so a given (n, k, offset) always produces the same representation.
MAX_RHO_BITS = 1_000_000

# Offsets large enough to bridge the gap between two distinct oversized rho
# values would break the comparison ladder; 2^63 is far below every margin.
_MAX_OFFSET = 2**63


class RhoOverflowError(Exception):
    """Raised when an exact materialized value is requested but cannot fit."""


def _stages(n: int, k: int):
    """Yield rho_n(1), ..., rho_n(k) as exact ints, or stop with None when the
    next value would exceed the bit guard (stages only grow from there)."""
    v = 0
    for _ in range(k):
        # The next stage is 2(n+2)(v+1) * 2^(v+2), so its bit length is at
        # least v + 3; refuse before allocating.
        if v + 2 > MAX_RHO_BITS:
            yield None
            return
        v = 2 * (n + 2) * (v + 1) << (v + 2)
        if v.bit_length() > MAX_RHO_BITS:
            yield None
            return
        yield v


def rho_value(n: int, k: int) -> int | None:
    """Exact value of rho_n(k), or None when it exceeds the bit guard."""
    if n < 0 or k < 0:
        raise ValueError("rho takes natural arguments")
    v: int | None = 0
    for v in _stages(n, k):
        if v is None:
            return None
    return v


def rho(n: int, k: int) -> int:
    """Exact value of ``rho_n(k)``; raises RhoOverflowError past the guard."""
    v = rho_value(n, k)
    if v is None:
        raise RhoOverflowError(
            f"rho({n},{k}) exceeds {MAX_RHO_BITS} bits and cannot be materialized"
        )
    return v


def cmp_to_rho(x, n: int, k: int) -> int:
    """Sign of ``x - rho_n(k)``, exact, without materializing oversized stages."""
    if isinstance(x, RhoInt):
        return -rho_plus_cmp(n, k, 0, x.n, x.k, x.offset)
    if x < 0:
        return -1
    v = 0
    for _ in range(k):
        # One more stage is still to be applied; it is >= 2^(v+2) > x once
        # v reaches x's bit length, and stages are strictly increasing.
        if v >= max(x.bit_length(), 1):
            return -1
        v = 2 * (n + 2) * (v + 1) << (v + 2)
    return -1 if x < v else (0 if x == v else 1)


def _cmp_oversized(n1: int, k1: int, n2: int, k2: int) -> int:
    """Sign of rho_n1(k1) - rho_n2(k2) when neither fits under the guard.

    Distinct rho stage values that reach the guard are multiples of enormous
    powers of two, so whenever the exponents below differ at all they differ
    by far more than any mantissa can compensate; exponent dominance is exact.
    """
    if n1 == n2:
        return (k1 > k2) - (k1 < k2)
    if k1 == k2:
        # Strictly monotone in n at every stage k >= 1.
        return (n1 > n2) - (n1 < n2)
    if n1 < n2 and k1 < k2:
        return -1
    if n1 > n2 and k1 > k2:
        return 1
    # Crossed orders: compare via the exponents rho(k-1).
    u = rho_value(n1, k1 - 1)
    v = rho_value(n2, k2 - 1)
    if u is not None and v is not None:
        m1, m2 = 2 * (n1 + 2) * (u + 1), 2 * (n2 + 2) * (v + 1)
        if u >= v:
            lhs, rhs = m1 << (u - v), m2
        else:
            lhs, rhs = m1, m2 << (v - u)
        return (lhs > rhs) - (lhs < rhs)
    if u is None and v is not None:
        return 1
    if v is None and u is not None:
        return -1
    return _cmp_oversized(n1, k1 - 1, n2, k2 - 1)


def rho_plus_cmp(n1: int, k1: int, j1: int, n2: int, k2: int, j2: int) -> int:
    """Sign of (rho_n1(k1) + j1) - (rho_n2(k2) + j2), both oversized."""
    if (n1, k1) == (n2, k2):
        return (j1 > j2) - (j1 < j2)
    # Distinct oversized thresholds differ by far more than |j1| + |j2|.
    return _cmp_oversized(n1, k1, n2, k2)


class RhoInt:
    """An exact integer rho_n(k) + offset too large to write out in decimal.

    Instances exist only for (n, k) past the bit guard; rho_plus() returns a
    plain int otherwise, so equality with any representable int is decidable
    (always false) and equality between RhoInts is triple equality.
    """

    __slots__ = ("n", "k", "offset")

    def __init__(self, n: int, k: int, offset: int = 0):
        if abs(offset) >= _MAX_OFFSET:
            raise ValueError("offset out of range")
        self.n = n
        self.k = k
        self.offset = offset

    def _cmp(self, other) -> int:
        if isinstance(other, RhoInt):
            return rho_plus_cmp(self.n, self.k, self.offset, other.n, other.k, other.offset)
        if isinstance(other, int):
            return -cmp_to_rho(other - self.offset, self.n, self.k)
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c == 0 if c is not NotImplemented else NotImplemented

    def __ne__(self, other):
        c = self._cmp(other)
        return c != 0 if c is not NotImplemented else NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return c < 0 if c is not NotImplemented else NotImplemented

    def __le__(self, other):
        c = self._cmp(other)
        return c <= 0 if c is not NotImplemented else NotImplemented

    def __gt__(self, other):
        c = self._cmp(other)
        return c > 0 if c is not NotImplemented else NotImplemented

    def __ge__(self, other):
        c = self._cmp(other)
        return c >= 0 if c is not NotImplemented else NotImplemented

    def __hash__(self):
        # Never value-equal to a representable int (see class docstring), so
        # hashing the triple is consistent with __eq__.
        return hash((RhoInt, self.n, self.k, self.offset))

    def __add__(self, other: int):
        if isinstance(other, int):
            return rho_plus(self.n, self.k, self.offset + other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: int):
        if isinstance(other, int):
            return rho_plus(self.n, self.k, self.offset - other)
        return NotImplemented

    def __int__(self):
        raise RhoOverflowError(
            f"{self} exceeds {MAX_RHO_BITS} bits and cannot be materialized"
        )

    def __repr__(self):
        if self.offset == 0:
            return f"rho({self.n},{self.k})"
        sign = "+" if self.offset > 0 else "-"
        return f"rho({self.n},{self.k}){sign}{abs(self.offset)}"


def rho_plus(n: int, k: int, offset: int = 0):
    """Exact rho_n(k) + offset: a plain int when it fits, else a RhoInt."""
    v = rho_value(n, k)
    if v is not None:
        return v + offset
    return RhoInt(n, k, offset)
