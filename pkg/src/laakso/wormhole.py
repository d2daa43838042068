"""Identification levels and the branching sequence behind them.

The heights at which adjacent cells of the attractor get glued are the
values N/D_k, where D_k is the product of the first k entries of a sequence
m with m_i in {n, n+1} tracking s**i, and N runs over 1..D_k-1 avoiding the
multiples of m_k.  Everything here works on numerators over D_k; level sets
are never enumerated unless a caller explicitly iterates a range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

from .errors import InfeasibleSequence, NoLevelFound
from .numeric import ScaleFactor


def _ceil(fr: Fraction) -> int:
    return -(-fr.numerator // fr.denominator)


def _floor(fr: Fraction) -> int:
    return fr.numerator // fr.denominator


def _strip(value: int, factor: int) -> int:
    """Remove from value every prime factor it shares with factor."""
    g = gcd(value, factor)
    while g > 1:
        value //= g
        g = gcd(value, factor)
    return value


class MSequence:
    """Lazily extended choice of m_i in {n, n+1} with memoized products.

    Entries are produced by a deterministic greedy rule: among the choices
    that keep the two-sided product bound satisfied, take the one whose
    product D_i stays log-closest to s**i, preferring n on a tie.  A user
    supplied override prefix is validated entry by entry instead of chosen.
    Extension must be serialized by the caller; materialized entries are
    safe to read concurrently.
    """

    def __init__(self, scale: ScaleFactor, override=()):
        self.scale = scale
        self.n = scale.floor_s()
        self.override = tuple(int(v) for v in override)
        self._m: list[int] = []
        self._products: list[int] = [1]  # _products[i] = D_i
        for _ in self.override:
            self._extend()

    def entry(self, i: int) -> int:
        """m_i (1-based)."""
        if i < 1:
            raise ValueError("entries are indexed from 1")
        while len(self._m) < i:
            self._extend()
        return self._m[i - 1]

    def D(self, k: int) -> int:
        """Product of the first k entries; D(0) = 1."""
        if k < 0:
            raise ValueError("k must be >= 0")
        while len(self._m) < k:
            self._extend()
        return self._products[k]

    def sandwich_holds(self, i: int) -> bool:
        """Re-assert the two-sided bound (n/(n+1))/D_i <= s**-i <= ((n+1)/n)/D_i."""
        self.entry(i)
        return self._feasible(i, self._products[i])

    def _feasible(self, i: int, product: int) -> bool:
        n = self.n
        low = Fraction(n, (n + 1) * product)
        high = Fraction(n + 1, n * product)
        return (
            self.scale.compare_spower(i, low) >= 0
            and self.scale.compare_spower(i, high) <= 0
        )

    def _prefers_n(self, i: int, previous: int) -> bool:
        # log-distance tie test: n is at least as close iff s**(2i) <= D**2 n(n+1)
        n = self.n
        bound = Fraction(1, previous * previous * n * (n + 1))
        return self.scale.compare_spower(2 * i, bound) >= 0

    def _extend(self):
        i = len(self._m) + 1
        n = self.n
        previous = self._products[-1]
        if i <= len(self.override):
            choice = self.override[i - 1]
            if choice not in (n, n + 1):
                raise InfeasibleSequence(i, f"override entry {choice} not in {{{n}, {n + 1}}}")
            if not self._feasible(i, previous * choice):
                raise InfeasibleSequence(i, f"override entry {choice} violates the product bounds")
        else:
            feasible = [m for m in (n, n + 1) if self._feasible(i, previous * m)]
            if not feasible:
                raise InfeasibleSequence(i, "no admissible entry (scale handling bug)")
            if len(feasible) == 2:
                choice = n if self._prefers_n(i, previous) else n + 1
            else:
                choice = feasible[0]
        self._m.append(choice)
        self._products.append(previous * choice)


@dataclass(frozen=True)
class WormholeLevel:
    """A single identification height: value = numerator / D_order.

    The mixed-radix digits (most significant first, radices m_1..m_k) and
    the numerator describe the same value; the last digit is never zero,
    which keeps level sets of different orders disjoint.
    """

    order: int
    numerator: int
    value: Fraction
    digits: tuple[int, ...]

    def __str__(self):
        return f"{self.value} (order {self.order})"


def level_from_numerator(ms: MSequence, k: int, numerator: int) -> WormholeLevel:
    if k < 1:
        raise ValueError("order must be >= 1")
    den = ms.D(k)
    if not 1 <= numerator <= den - 1:
        raise ValueError(f"numerator {numerator} outside 1..{den - 1}")
    if numerator % ms.entry(k) == 0:
        raise ValueError(f"numerator {numerator} is a multiple of m_{k}")
    digits = []
    rem = numerator
    for j in range(1, k + 1):
        weight = den // ms.D(j)
        digits.append(rem // weight)
        rem %= weight
    return WormholeLevel(k, numerator, Fraction(numerator, den), tuple(digits))


def omega_value(ms: MSequence, digits) -> WormholeLevel:
    """The level with the given mixed-radix digits (last digit nonzero)."""
    digits = tuple(int(d) for d in digits)
    if not digits:
        raise ValueError("at least one digit required")
    k = len(digits)
    for j, d in enumerate(digits, start=1):
        if not 0 <= d < ms.entry(j):
            raise ValueError(f"digit {d} at position {j} outside 0..{ms.entry(j) - 1}")
    if digits[-1] == 0:
        raise ValueError("last digit must be nonzero")
    den = ms.D(k)
    numerator = sum(d * (den // ms.D(j)) for j, d in enumerate(digits, start=1))
    return WormholeLevel(k, numerator, Fraction(numerator, den), digits)


def classify_height(ms: MSequence, y) -> Optional[WormholeLevel]:
    """Decode a height into its unique level, or None.

    A height is a level of order k exactly when y*D_k is an integer for the
    minimal such k (the minimality forces the non-multiple condition).  The
    search is cut off early when the reduced denominator contains a prime
    that no future entry can supply.
    """
    y = Fraction(y)
    if not 0 < y < 1:
        return None
    q = y.denominator
    n = ms.n
    if _strip(q, n * (n + 1)) != 1:
        return None
    k = 0
    while True:
        k += 1
        den = ms.D(k)
        if den % q == 0:
            return level_from_numerator(ms, k, int(y * den))
        if ms.scale.is_integer and k >= len(ms.override):
            # the greedy tail is the constant n here, so the residual part of
            # the denominator must divide a power of n
            if _strip(q // gcd(q, den), n) != 1:
                return None
        if k > 100_000:  # unreachable; guards against a termination bug
            raise RuntimeError(f"level decoding did not settle for {y}")


def first_in_interval(ms: MSequence, k: int, lo, hi) -> Optional[WormholeLevel]:
    """Least order-k level inside [lo, hi], by numerator arithmetic."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        return None
    den = ms.D(k)
    numerator = max(1, _ceil(lo * den))
    if numerator % ms.entry(k) == 0:
        numerator += 1
    if numerator > den - 1 or Fraction(numerator, den) > hi:
        return None
    return level_from_numerator(ms, k, numerator)


def last_in_interval(ms: MSequence, k: int, lo, hi) -> Optional[WormholeLevel]:
    """Greatest order-k level inside [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        return None
    den = ms.D(k)
    numerator = min(den - 1, _floor(hi * den))
    if numerator % ms.entry(k) == 0:
        numerator -= 1
    if numerator < 1 or Fraction(numerator, den) < lo:
        return None
    return level_from_numerator(ms, k, numerator)


def nearest(ms: MSequence, k: int, y, mode: str = "either") -> WormholeLevel:
    """The order-k level closest to y, restricted by mode.

    ``below``/``above`` are non-strict; an exact tie in ``either`` mode
    returns the lower level.
    """
    y = Fraction(y)
    below = last_in_interval(ms, k, Fraction(0), y)
    above = first_in_interval(ms, k, y, Fraction(1))
    if mode == "below":
        if below is None:
            raise NoLevelFound(f"no order-{k} level at or below {y}")
        return below
    if mode == "above":
        if above is None:
            raise NoLevelFound(f"no order-{k} level at or above {y}")
        return above
    if mode != "either":
        raise ValueError(f"unknown mode {mode!r}")
    if below is None and above is None:
        raise NoLevelFound(f"no order-{k} levels exist")  # cannot happen: J_k is nonempty
    if below is None:
        return above
    if above is None:
        return below
    return below if y - below.value <= above.value - y else above


def nested_between(ms: MSequence, w1: WormholeLevel, w2: WormholeLevel, order: int) -> WormholeLevel:
    """A level of the given higher order strictly between two distinct levels.

    Both inputs are multiples of 1/D_K for K = max(order(w1), order(w2)), so
    stepping one unit of 1/D_K down from the larger value and adding 1/D_order
    lands strictly inside the gap; the resulting numerator is 1 mod m_order,
    hence a valid level.
    """
    if w1.value == w2.value:
        raise ValueError("levels must be distinct")
    big = max(w1.order, w2.order)
    if order <= big:
        raise ValueError(f"target order must exceed {big}")
    upper = max(w1, w2, key=lambda w: w.value)
    lower = min(w1, w2, key=lambda w: w.value)
    grid = ms.D(big)
    steps = int(upper.value * grid)  # integral: D(big) is a multiple of both denominators
    numerator = (steps - 1) * (ms.D(order) // grid) + 1
    level = level_from_numerator(ms, order, numerator)
    assert lower.value < level.value < upper.value
    return level


def levels_in_range(ms: MSequence, k: int, lo, hi) -> Iterator[WormholeLevel]:
    """All order-k levels inside [lo, hi], ascending."""
    lo, hi = Fraction(lo), Fraction(hi)
    level = first_in_interval(ms, k, lo, hi)
    den = ms.D(k)
    m_k = ms.entry(k)
    while level is not None:
        yield level
        numerator = level.numerator + 1
        if numerator % m_k == 0:
            numerator += 1
        if numerator > den - 1 or Fraction(numerator, den) > hi:
            return
        level = level_from_numerator(ms, k, numerator)
