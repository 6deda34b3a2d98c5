"""Segment representations: two linear orders whose prefix intersections
reproduce a geometry's closed sets.

A representation is an unordered pair of chains over the same elements.  Laid
out on a line, every element becomes a segment straddling a common origin:
its negative endpoint is its rank in the left chain, its positive endpoint
its rank in the right chain.  An element then belongs to the closure of a set
exactly when its segment sits inside the hull of the set's segments, i.e.
when it is below the set's maximum in both chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import GroundSetTooLarge, SegrepError, canonical_key, iter_bits, mask_of
from .geometry import ConvexGeometry


class Infeasible(SegrepError):
    """No segment representation could be constructed.

    Legitimate only when the geometry genuinely is not representable;
    ``stage`` says where construction stopped and ``witness`` carries the
    offending subset or extreme-point data.
    """

    def __init__(self, stage: str, witness):
        self.stage = stage
        self.witness = witness
        super().__init__(f"no segment representation: {stage}")


class DuplicateEndpoint(SegrepError):
    """Interval input with coinciding endpoints cannot be normalized."""


@dataclass(frozen=True)
class SegmentRepresentation:
    """Unordered pair of chains, stored bottom-to-top.

    The pair is canonicalized on construction (the lexicographically smaller
    chain becomes ``left``), so equality and hashing treat ``(L, R)`` and
    ``(R, L)`` as the same representation.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]
    _lrank: dict = field(init=False, repr=False, compare=False)
    _rrank: dict = field(init=False, repr=False, compare=False)
    _lpref: tuple = field(init=False, repr=False, compare=False)
    _rpref: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        if sorted(left) != sorted(right):
            raise ValueError("chains must order the same elements")
        if len(set(left)) != len(left):
            raise ValueError("chains must be permutations")
        if right < left:
            left, right = right, left
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "_lrank", {e: i + 1 for i, e in enumerate(left)})
        object.__setattr__(self, "_rrank", {e: i + 1 for i, e in enumerate(right)})
        object.__setattr__(self, "_lpref", _prefix_masks(left))
        object.__setattr__(self, "_rpref", _prefix_masks(right))

    @property
    def n(self) -> int:
        return len(self.left)

    @property
    def elements(self) -> int:
        return self._lpref[-1]

    def left_rank(self, element: int) -> int:
        return self._lrank[element]

    def right_rank(self, element: int) -> int:
        return self._rrank[element]


def _prefix_masks(chain: Sequence[int]) -> tuple[int, ...]:
    prefixes = [0]
    acc = 0
    for e in chain:
        acc |= 1 << e
        prefixes.append(acc)
    return tuple(prefixes)


def segment_closure(rep: SegmentRepresentation, seed: int) -> int:
    """Elements whose segments lie inside the hull of the seed's segments.

    Equals the intersection of the two chain prefixes reaching up to the
    seed's maxima; the empty seed closes to the empty set.
    """
    if seed == 0:
        return 0
    if seed & ~rep.elements:
        raise ValueError("seed is not a subset of the represented elements")
    max_l = max(rep._lrank[e] for e in iter_bits(seed))
    max_r = max(rep._rrank[e] for e in iter_bits(seed))
    return rep._lpref[max_l] & rep._rpref[max_r]


def verify_representation(
    geom: ConvexGeometry,
    rep: SegmentRepresentation,
    exhaustive: bool = False,
    max_n: int = 12,
) -> tuple[bool, Optional[int]]:
    """Check that segment closure agrees with the geometry's closure.

    The fast path compares all seeds of size <= 2; when both operators are
    generated by pairs (which the two-extreme-points property guarantees for
    the geometry, and the prefix model satisfies always), that agreement
    extends to every subset.  ``exhaustive=True`` checks every subset
    outright, guarded at ``max_n`` elements.  Representations over a proper
    subset of the ground set are checked against the restriction.

    Returns ``(True, None)`` or ``(False, seed)`` for the canonically least
    disagreeing seed.
    """
    domain = rep.elements
    if exhaustive:
        if domain.bit_count() > max_n:
            raise GroundSetTooLarge("verify_representation", domain.bit_count(), max_n)
        members = list(iter_bits(domain))
        seeds = sorted(
            (mask_of(chosen) for chosen in _powerset(members)), key=canonical_key
        )
    else:
        members = list(iter_bits(domain))
        seeds = [0]
        seeds.extend(1 << e for e in members)
        seeds.extend(
            (1 << members[i]) | (1 << members[j])
            for i in range(len(members))
            for j in range(i + 1, len(members))
        )
    for seed in seeds:
        if segment_closure(rep, seed) != geom.closure(seed) & domain:
            return (False, seed)
    return (True, None)


def _powerset(members):
    out = [[]]
    for e in members:
        out.extend(part + [e] for part in list(out))
    return out


def build_representation(
    geom: ConvexGeometry, strategy: str = "paper"
) -> SegmentRepresentation:
    """Construct a verified segment representation, or raise Infeasible.

    Peel an extreme point ``a`` (at most two exist when construction can
    succeed), represent the rest recursively, then re-enter ``a`` at the top
    of the left chain and just above its own closure in the right chain.
    The recursive representation may need some of its interchangeable blocks
    flipped for that position to exist, so insertion searches the block
    orientations; every accepted candidate is verified against the
    restriction before being returned, and the final result is verified
    against the full geometry.

    ``strategy="paper"`` pins the insertion position from the peeled point's
    closure; ``strategy="backtrack"`` tries every right-chain position and
    exists for differential testing.  Peeling prefers the lexicographically
    least extreme point and retries with the other before giving up.
    """
    if strategy not in ("paper", "backtrack"):
        raise ValueError("strategy must be 'paper' or 'backtrack'")
    rep = _peel(geom, geom.ground.full, strategy, {})
    ok, seed = verify_representation(geom, rep)
    if not ok:
        raise Infeasible("final-verification", seed)
    return rep


def _peel(
    geom: ConvexGeometry, subset: int, strategy: str, memo: dict
) -> SegmentRepresentation:
    if subset in memo:
        result = memo[subset]
        if isinstance(result, Infeasible):
            raise result
        return result
    try:
        result = _peel_uncached(geom, subset, strategy, memo)
    except Infeasible as err:
        memo[subset] = err
        raise
    memo[subset] = result
    return result


def _peel_uncached(
    geom: ConvexGeometry, subset: int, strategy: str, memo: dict
) -> SegmentRepresentation:
    count = subset.bit_count()
    if count == 0:
        return SegmentRepresentation((), ())
    if count == 1:
        e = next(iter_bits(subset))
        return SegmentRepresentation((e,), (e,))
    extreme = geom.extreme_points(subset)
    k = extreme.bit_count()
    if k == 0:
        raise Infeasible("no-extreme-point", subset)
    if k > 2:
        raise Infeasible("extreme-count", (subset, extreme))
    if k == 1:
        a = next(iter_bits(extreme))
        sub = _peel(geom, subset & ~(1 << a), strategy, memo)
        rep = SegmentRepresentation(sub.left + (a,), sub.right + (a,))
        ok, _ = verify_representation(geom, rep)
        if not ok:
            raise Infeasible("single-extreme-extension", subset)
        return rep
    first, second = iter_bits(extreme)
    for a, b in ((first, second), (second, first)):
        rep = _insert(geom, subset, a, b, strategy, memo)
        if rep is not None:
            return rep
    raise Infeasible("insertion", (subset, extreme))


def _insert(
    geom: ConvexGeometry, subset: int, a: int, b: int, strategy: str, memo: dict
) -> Optional[SegmentRepresentation]:
    from .uniqueness import block_orientations

    try:
        sub = _peel(geom, subset & ~(1 << a), strategy, memo)
    except Infeasible:
        return None
    below_a = (geom.closure(1 << a) & subset) & ~(1 << a)
    cut = below_a.bit_count()
    for left, right in block_orientations(sub):
        if strategy == "paper":
            if right[-1] != b:
                continue
            if mask_of(right[:cut]) != below_a:
                continue
            positions = (cut,)
        else:
            positions = tuple(range(len(right) + 1))
        for pos in positions:
            candidate = SegmentRepresentation(
                left + (a,), right[:pos] + (a,) + right[pos:]
            )
            ok, _ = verify_representation(geom, candidate)
            if ok:
                return candidate
    return None


@dataclass(frozen=True)
class BruteForceResult:
    """Exhaustive-search outcome: the decision plus every valid representation."""

    cdim2: bool
    representations: tuple[SegmentRepresentation, ...]


def brute_force_cdim2(geom: ConvexGeometry, max_n: int = 8) -> BruteForceResult:
    """Search all chain pairs for representations; independent of the
    polynomial decision path.

    A chain can take part in a valid pair only if all of its prefixes are
    closed (each prefix is itself a member of the joined family), so the scan
    enumerates the maximal chains of the closed-set family instead of all
    n! orders, then keeps the pairs whose prefix intersections reproduce the
    family exactly.  A family larger than (n+1)^2 cannot be a join of two
    chains at all and short-circuits to "no".
    """
    n = geom.n
    if n > max_n:
        raise GroundSetTooLarge("brute_force_cdim2", n, max_n)
    family = set(geom.closed_sets().sets)
    if len(family) > (n + 1) ** 2:
        return BruteForceResult(False, ())

    full = geom.ground.full
    chains: list[tuple[int, ...]] = []

    def grow(current: int, order: list[int]):
        if current == full:
            chains.append(tuple(order))
            return
        for x in iter_bits(full & ~current):
            nxt = current | (1 << x)
            if nxt in family:
                order.append(x)
                grow(nxt, order)
                order.pop()

    if 0 in family:
        grow(0, [])
    prefix_sets = [_prefix_masks(chain) for chain in chains]

    found: set[SegmentRepresentation] = set()
    for i in range(len(chains)):
        for j in range(i, len(chains)):
            joined = {u & v for u in prefix_sets[i] for v in prefix_sets[j]}
            if joined == family:
                found.add(SegmentRepresentation(chains[i], chains[j]))
    reps = tuple(sorted(found, key=lambda r: (r.left, r.right)))
    return BruteForceResult(bool(reps), reps)


def segment_layout(rep: SegmentRepresentation) -> tuple[tuple[int, int, int], ...]:
    """Interval endpoints per element: ``(element, -left_rank, +right_rank)``.

    The top of the left chain gets the most negative endpoint; every interval
    straddles the origin and all 2n endpoints are distinct.
    """
    return tuple(
        (e, -rep.left_rank(e), rep.right_rank(e))
        for e in sorted(rep._lrank)
    )


def normalize_layout(intervals: Sequence[tuple[float, float]]) -> SegmentRepresentation:
    """Read a representation off arbitrary segments on a line.

    When the segments do not already share a common point, the right
    endpoints are first shifted by a uniform constant so they do (the shift
    preserves containment of left and of right endpoints separately, hence
    the induced closure).  The chains are then the elements by descending
    left endpoint and ascending right endpoint.  All 2n endpoints must be
    distinct and each interval non-degenerate.
    """
    starts = [float(a) for a, _ in intervals]
    ends = [float(b) for _, b in intervals]
    for a, b in zip(starts, ends):
        if not a < b:
            raise DuplicateEndpoint(f"degenerate interval [{a}, {b}]")
    endpoints = starts + ends
    if len(set(endpoints)) != len(endpoints):
        raise DuplicateEndpoint("segments must not share endpoints")
    if intervals and min(ends) < max(starts):
        shift = (max(starts) - min(ends)) + 1.0
        ends = [b + shift for b in ends]
    order = range(len(starts))
    left = tuple(sorted(order, key=lambda e: -starts[e]))
    right = tuple(sorted(order, key=lambda e: ends[e]))
    return SegmentRepresentation(left, right)
