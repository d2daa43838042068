"""Paths, minimal height intervals, exact distances and geodesics.

A path is stored combinatorially: vertical segments alternating with
zero-length jumps through identification levels.  When the two endpoint
addresses differ at infinitely many digits the jump heights accumulate; the
representation then truncates after a configurable number of jumps and a
tail record carries the exact (or certified-interval) limit height, with
the finitely many moves beyond the accumulation kept in a post list.

The distance between two points is 2(b-a) - |h(y)-h(x)| for the minimal
height interval [a, b]: the shortest interval containing both endpoint
heights and at least one level of every order at which the addresses
differ.  Orders beyond the first two witnessed ones never enlarge the
interval, because between two distinct levels there is a level of every
higher order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Union

from .fractal import Address, DifferenceOrders, difference_orders
from .numeric import Interval
from .space import Point, Space
from .wormhole import (
    MSequence,
    WormholeLevel,
    classify_height,
    first_in_interval,
    last_in_interval,
    nearest,
)

UPWARD, DOWNWARD, INVERSION = "upward", "downward", "inversion"
MONOTONE_UP, MONOTONE_DOWN, OSCILLATING = "monotone-up", "monotone-down", "oscillating"

NEAREST, INCREASING = "nearest", "increasing"
_STRATEGIES = {NEAREST: NEAREST, INCREASING: INCREASING, "increasing-order": INCREASING}


@dataclass(frozen=True)
class Segment:
    """A vertical run at a fixed address."""

    address: Address
    h_start: Fraction
    h_end: Fraction

    @property
    def length(self) -> Fraction:
        return abs(self.h_end - self.h_start)

    @property
    def direction(self) -> int:
        return (self.h_end > self.h_start) - (self.h_end < self.h_start)


@dataclass(frozen=True)
class Jump:
    """A zero-length passage through an identification level."""

    level: WormholeLevel
    from_address: Address
    to_address: Address
    kind: str = UPWARD

    @property
    def height(self) -> Fraction:
        return self.level.value


@dataclass(frozen=True)
class Tail:
    """Accumulation record for the truncated infinite part of a path."""

    omega: Union[Fraction, Interval]
    truncated_at: int


@dataclass(frozen=True)
class PathRep:
    """Combinatorial path: items, an optional tail, and post-tail moves.

    ``items`` alternate segments and jumps (zero-length segments are
    omitted, so a jump may sit first or last).  ``post`` holds the moves
    that happen beyond the accumulation height - normally just the final
    approach segment, but a coarse-order jump can land there too.
    """

    start: Point
    end: Point
    items: tuple
    tail: Optional[Tail] = None
    post: tuple = ()

    def segments(self):
        return tuple(e for e in self.items + self.post if isinstance(e, Segment))

    def jumps(self):
        return tuple(e for e in self.items + self.post if isinstance(e, Jump))


@dataclass(frozen=True)
class MinimalInterval:
    """[a, b] with one witnessing level per processed required order."""

    a: Fraction
    b: Fraction
    witnesses: tuple[tuple[int, WormholeLevel], ...]

    @property
    def width(self) -> Fraction:
        return self.b - self.a

    def witness_map(self) -> dict[int, WormholeLevel]:
        return dict(self.witnesses)


# ---------------------------------------------------------------------------
# minimal interval and distance


def minimal_interval(space: Space, x: Point, y: Point) -> MinimalInterval:
    """The shortest height interval supporting a path between x and y.

    Scans the required orders ascending.  An order already witnessed inside
    the current interval costs nothing; an unsatisfied order extends the
    interval either down or up to the nearest level, and both extensions
    are kept as branches.  After two orders every branch holds witnesses of
    two distinct orders, and the nesting property supplies every higher
    required order in between, so at most the first two orders matter.
    The best branch wins: minimal width, then smaller b.
    """
    if x == y:
        raise ValueError("minimal interval undefined for equal points")
    ms = space.mseq
    lo0, hi0 = sorted((x.height, y.height))
    orders = difference_orders(x.address, y.address).first(2)
    candidates: list[tuple[Fraction, Fraction, dict]] = [(lo0, hi0, {})]
    for order in orders:
        grown: list[tuple[Fraction, Fraction, dict]] = []
        for a, b, witnesses in candidates:
            inside = first_in_interval(ms, order, a, b)
            if inside is not None:
                grown.append((a, b, {**witnesses, order: inside}))
                continue
            below = last_in_interval(ms, order, Fraction(0), a)
            if below is not None:
                grown.append((below.value, b, {**witnesses, order: below}))
            above = first_in_interval(ms, order, b, Fraction(1))
            if above is not None:
                grown.append((a, above.value, {**witnesses, order: above}))
        candidates = grown
    assert candidates, "a required order had no level on either side"
    a, b, witnesses = min(candidates, key=lambda t: (t[1] - t[0], t[1]))
    return MinimalInterval(a, b, tuple(sorted(witnesses.items())))


def distance(space: Space, x: Point, y: Point) -> Fraction:
    """Exact geodesic distance: 2(b-a) - |h(y)-h(x)| over the minimal interval."""
    if x == y:
        return Fraction(0)
    interval = minimal_interval(space, x, y)
    return 2 * interval.width - abs(y.height - x.height)


# ---------------------------------------------------------------------------
# level selection for monotone sweeps


def _order_tail_sum(ms: MSequence, diffs: DifferenceOrders, beyond: int) -> Optional[Fraction]:
    """Exact sum of 1/D_n over the difference orders n > beyond.

    Available only when the branching sequence is eventually the constant n
    (an integer scale past any override), where each periodic block of
    orders contributes a geometric series.
    """
    if not ms.scale.is_integer:
        return None
    step = ms.n
    floor = max(beyond, len(ms.override), diffs.start - 1)
    total = Fraction(0)
    for order in diffs:
        if order > floor:
            break
        if order > beyond:
            total += Fraction(1, ms.D(order))
    period = diffs.period
    ratio = Fraction(step ** period, step ** period - 1)
    for offset in diffs.offsets:
        first = diffs.start + offset
        if first <= floor:
            first += ((floor - first) // period + 1) * period
        total += Fraction(1, ms.D(first)) * ratio
    return total


def _sweep_levels(space: Space, lo: Fraction, hi: Fraction, diffs: DifferenceOrders,
                  anchors: dict[int, WormholeLevel], depth: int):
    """Pick one level inside [lo, hi] per required order, sorted by height.

    Orders are taken ascending; each either continues the rising chain
    (least level at or above the current height) or, when the chain has
    outrun it, drops in below as a straggler.  Returns the levels below the
    accumulation, the accumulation height (None when the set is finite),
    and the levels at or above it.
    """
    ms = space.mseq
    placed: list[WormholeLevel] = list(anchors.values())
    current = lo
    if diffs.is_finite:
        for order in diffs:
            if order in anchors:
                continue
            level = first_in_interval(ms, order, current, hi)
            if level is None:
                level = last_in_interval(ms, order, lo, current)
                assert level is not None, "minimal interval misses a required order"
            else:
                current = level.value
            placed.append(level)
        placed.sort(key=lambda w: w.value)
        return placed, None, []
    orders = iter(diffs)
    count = 0
    omega: Union[Fraction, Interval, None] = None
    while omega is None:
        order = next(orders)
        if order in anchors:
            continue
        level = first_in_interval(ms, order, current, hi)
        if level is None:
            level = last_in_interval(ms, order, lo, current)
            assert level is not None, "minimal interval misses a required order"
        else:
            current = level.value
        placed.append(level)
        count += 1
        if count < depth:
            continue
        if current == hi:
            # the chain reached the ceiling: every later order drops in just
            # below it, so the heights accumulate at hi itself
            omega = hi
            break
        rest = _order_tail_sum(ms, diffs, beyond=order)
        if rest is None:
            omega = Interval(current, min(hi, current + Fraction(1, ms.D(order))))
        elif current + rest <= hi:
            omega = current + rest
        elif count > depth + 512:
            raise RuntimeError("sweep did not stabilise")  # unreachable
    placed.sort(key=lambda w: w.value)
    if isinstance(omega, Interval):
        # materialized chain levels sit at or below the enclosure's floor
        pre = [w for w in placed if w.value <= omega.lo]
        post = [w for w in placed if w.value > omega.lo]
    else:
        pre = [w for w in placed if w.value < omega]
        post = [w for w in placed if w.value >= omega]
    return pre, omega, post


# ---------------------------------------------------------------------------
# path assembly


def _moves_directions(path: PathRep) -> list:
    """Vertical direction at every element, None for jumps."""
    sequence: list = list(path.items)
    if path.tail is not None:
        before = path.start.height
        for element in path.items:
            before = element.h_end if isinstance(element, Segment) else element.height
        omega = path.tail.omega
        target = omega.lo if isinstance(omega, Interval) else omega
        sequence.append((target > before) - (target < before))
        sequence.extend(path.post)
    directions = []
    for element in sequence:
        if isinstance(element, Segment):
            directions.append(element.direction or None)
        elif isinstance(element, Jump):
            directions.append(None)
        else:
            directions.append(element or None)
    return directions


def _with_kinds(path: PathRep) -> PathRep:
    """Recompute every jump kind from its surrounding vertical directions."""
    directions = _moves_directions(path)
    elements = list(path.items)
    if path.tail is not None:
        elements.append(None)  # placeholder aligned with the tail direction
        elements.extend(path.post)

    def neighbour(idx: int, step: int) -> Optional[int]:
        j = idx + step
        while 0 <= j < len(directions):
            if directions[j] is not None:
                return directions[j]
            j += step
        return None

    rebuilt = []
    for idx, element in enumerate(elements):
        if not isinstance(element, Jump):
            rebuilt.append(element)
            continue
        into = neighbour(idx, -1)
        out = neighbour(idx, +1)
        into = into if into is not None else out
        out = out if out is not None else into
        if into == out == 1:
            kind = UPWARD
        elif into == out == -1:
            kind = DOWNWARD
        elif into is None:
            kind = UPWARD  # isolated jump: no vertical motion at all
        else:
            kind = INVERSION
        rebuilt.append(replace(element, kind=kind))
    if path.tail is None:
        return replace(path, items=tuple(rebuilt))
    split = len(path.items)
    return replace(path, items=tuple(rebuilt[:split]), post=tuple(rebuilt[split + 1:]))


def _reversed_path(path: PathRep) -> PathRep:
    def flip(element):
        if isinstance(element, Segment):
            return Segment(element.address, element.h_end, element.h_start)
        return Jump(element.level, element.to_address, element.from_address, element.kind)

    rev_items = tuple(flip(e) for e in reversed(path.items))
    rev_post = tuple(flip(e) for e in reversed(path.post))
    if path.tail is None:
        flipped = PathRep(path.end, path.start, rev_post + rev_items)
    else:
        tail = Tail(path.tail.omega, sum(isinstance(e, Jump) for e in rev_post))
        flipped = PathRep(path.end, path.start, rev_post, tail, rev_items)
    return _with_kinds(flipped) if flipped.jumps() else flipped


def _append_segment(moves: list, address: Address, h_from: Fraction, h_to: Fraction):
    if h_from != h_to:
        moves.append(Segment(address, h_from, h_to))


def geodesic_path(space: Space, x: Point, y: Point, depth: int = 8) -> PathRep:
    """A shortest path realizing the minimal interval.

    Built from the lower endpoint: descend to a, sweep monotonically up to
    b taking one jump per required order, descend to the other endpoint;
    degenerate legs are omitted.  The result makes at most two inversions
    and its length equals the distance exactly whenever the limit height is
    exact (always so for an integer scale).
    """
    if x == y:
        return PathRep(x, y, (Segment(x.address, x.height, x.height),))
    interval = minimal_interval(space, x, y)
    low, high = (x, y) if x.height <= y.height else (y, x)
    flip = low is not x
    diffs = difference_orders(low.address, high.address)
    if not diffs:
        path = PathRep(low, high, (Segment(low.address, low.height, high.height),))
        return _reversed_path(path) if flip else path

    anchors: dict[int, WormholeLevel] = {}
    for order, witness in interval.witnesses:
        boundary_low = witness.value == interval.a and interval.a < low.height
        boundary_high = witness.value == interval.b and interval.b > high.height
        if boundary_low or boundary_high:
            anchors[order] = witness
    pre, omega, post_levels = _sweep_levels(
        space, interval.a, interval.b, diffs, anchors, depth
    )

    items: list = []
    address = low.address
    h = low.height
    if interval.a < h:
        items.append(Segment(address, h, interval.a))
        h = interval.a
    for level in pre:
        _append_segment(items, address, h, level.value)
        h = level.value
        switched = address.switch(level.order)
        items.append(Jump(level, address, switched))
        address = switched

    tail = None
    post_items: list = []
    if omega is None:
        _append_segment(items, address, h, interval.b)
        h = interval.b
        _append_segment(items, address, h, high.height)
        assert address == high.address
    else:
        tail = Tail(omega, sum(isinstance(e, Jump) for e in items))
        address = high.address
        for level in post_levels:
            address = address.switch(level.order)  # undo the post flips: limit address
        if isinstance(omega, Fraction):
            h = omega
            for level in post_levels:
                _append_segment(post_items, address, h, level.value)
                h = level.value
                switched = address.switch(level.order)
                post_items.append(Jump(level, address, switched))
                address = switched
            _append_segment(post_items, address, h, high.height)
        else:
            # certified-interval tail: only the run from the limit to the
            # first post move stays implicit, everything after it is exact
            h = None
            for level in post_levels:
                if h is not None:
                    _append_segment(post_items, address, h, level.value)
                h = level.value
                switched = address.switch(level.order)
                post_items.append(Jump(level, address, switched))
                address = switched
            if h is not None:
                _append_segment(post_items, address, h, high.height)
        assert address == high.address
    path = PathRep(low, high, tuple(items), tail, tuple(post_items))
    path = _with_kinds(path)
    return _reversed_path(path) if flip else path


# ---------------------------------------------------------------------------
# the constructive connection algorithm


def _pick_level(ms: MSequence, order: int, height: Fraction, strategy: str, upward: bool) -> WormholeLevel:
    if strategy == NEAREST:
        below = last_in_interval(ms, order, Fraction(0), height)
        above = first_in_interval(ms, order, height, Fraction(1))
        if below is None:
            return above
        if above is None:
            return below
        # an exact tie follows the worked construction and goes above
        return below if height - below.value < above.value - height else above
    level = (
        first_in_interval(ms, order, height, Fraction(1))
        if upward
        else last_in_interval(ms, order, Fraction(0), height)
    )
    if level is None:
        return nearest(ms, order, height, "either")
    return level


def connect(space: Space, x: Point, y: Point, strategy: str = NEAREST, depth: int = 8) -> PathRep:
    """A (not necessarily shortest) path built by the step-by-step algorithm.

    ``nearest`` jumps, for each differing digit in increasing position,
    through the level of that order closest to the current height (ties go
    up).  ``increasing`` keeps the sweep monotone towards the target height
    whenever a level is available on that side.
    """
    try:
        strategy = _STRATEGIES[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}") from None
    if x == y:
        return PathRep(x, y, (Segment(x.address, x.height, x.height),))
    ms = space.mseq
    start_address, end_address = x.address, y.address
    # start and end from the identification-compatible preimages
    level = classify_height(ms, x.height)
    if level is not None and start_address.digit(level.order) != end_address.digit(level.order):
        start_address = start_address.switch(level.order)
    level = classify_height(ms, y.height)
    if level is not None and end_address.digit(level.order) != start_address.digit(level.order):
        end_address = end_address.switch(level.order)
    diffs = difference_orders(start_address, end_address)
    if not diffs:
        return PathRep(x, y, (Segment(start_address, x.height, y.height),))

    upward = y.height >= x.height
    items: list = []
    address = start_address
    h = x.height
    if diffs.is_finite:
        for order in diffs:
            level = _pick_level(ms, order, h, strategy, upward)
            _append_segment(items, address, h, level.value)
            h = level.value
            switched = address.switch(order)
            items.append(Jump(level, address, switched))
            address = switched
        _append_segment(items, address, h, y.height)
        assert address == end_address
        return _with_kinds(PathRep(x, y, tuple(items)))

    orders = iter(diffs)
    count = 0
    omega: Union[Fraction, Interval, None] = None
    last_order = 0
    while omega is None:
        order = next(orders)
        last_order = order
        level = _pick_level(ms, order, h, strategy, upward)
        _append_segment(items, address, h, level.value)
        h = level.value
        switched = address.switch(order)
        items.append(Jump(level, address, switched))
        address = switched
        count += 1
        if count < depth:
            continue
        rest = _order_tail_sum(ms, diffs, beyond=last_order)
        if rest is not None:
            # every remaining step moves one grid unit towards the limit:
            # upward for the nearest rule (ties go up) and for rising sweeps
            omega = h + rest if (strategy == NEAREST or upward) else h - rest
        else:
            step = Fraction(1, ms.D(last_order))
            if strategy == NEAREST or upward:
                omega = Interval(h, min(Fraction(1), h + step))
            else:
                omega = Interval(max(Fraction(0), h - step), h)
    tail = Tail(omega, count)
    post: tuple = ()
    if isinstance(omega, Fraction) and omega != y.height:
        post = (Segment(end_address, omega, y.height),)
    return _with_kinds(PathRep(x, y, tuple(items), tail, post))


# ---------------------------------------------------------------------------
# measurements over paths


def _absdiff(a, b):
    return abs(a - b)


def path_length(path: PathRep) -> Union[Fraction, Interval]:
    """Total vertical extent: the sum of |h-end - h-start| over all moves.

    The truncated part contributes |omega - h| for the height h at the
    truncation point (the tail is always height-monotone by construction),
    and any residual approach to the endpoint is added the same way.  The
    result is an exact Fraction whenever the limit height is exact.
    """
    total: Union[Fraction, Interval] = Fraction(0)
    current: Union[Fraction, Interval] = path.start.height

    def walk(elements):
        nonlocal total, current
        for element in elements:
            if isinstance(element, Segment):
                total += _absdiff(element.h_start, current)  # zero on well-formed paths
                total += element.length
                current = element.h_end
            else:
                total += _absdiff(element.height, current)
                current = element.height

    walk(path.items)
    if path.tail is not None:
        total += _absdiff(path.tail.omega, current)
        current = path.tail.omega
    walk(path.post)
    total += _absdiff(path.end.height, current)
    if isinstance(total, Interval) and total.lo == total.hi:
        return total.lo
    return total


def classify(path: PathRep) -> tuple[str, tuple[str, ...]]:
    """Overall monotonicity label plus the per-jump kinds."""
    kinds = tuple(j.kind for j in path.jumps())
    directions = {d for d in _moves_directions(path) if d is not None}
    if INVERSION in kinds or directions == {1, -1}:
        label = OSCILLATING
    elif -1 in directions:
        label = MONOTONE_DOWN
    else:
        label = MONOTONE_UP
    return label, kinds


def validate(path: PathRep, space: Space) -> None:
    """Assert the chaining invariants; used by the test suite."""
    current_h: Union[Fraction, None] = path.start.height
    address = None
    for element in path.items + (("tail",) if path.tail else ()) + path.post:
        if isinstance(element, str):
            # the tail hides infinitely many moves: the next explicit element
            # resumes at the truncation side of the accumulation, so neither
            # the height nor the address is constrained across it
            current_h = None
            address = None
            continue
        if isinstance(element, Segment):
            if current_h is not None:
                assert element.h_start == current_h, "segment does not chain"
            if address is not None:
                assert element.address == address, "segment address does not chain"
            current_h = element.h_end
            address = element.address
        else:
            if current_h is not None:
                assert element.height == current_h, "jump height does not chain"
            assert element.to_address == element.from_address.switch(element.level.order)
            lvl = classify_height(space.mseq, element.height)
            assert lvl is not None and lvl.order == element.level.order
            if address is not None:
                assert element.from_address == address
            address = element.to_address
    if path.tail is None and path.items:
        assert current_h == path.end.height
