"""Block structure of a representation and the census of all representations.

Scanning both chains bottom-up, every position where the two cumulative
element sets coincide is a seam; the seams cut the chains into blocks
occupying the same positions with the same members.  A block whose two
sub-chains differ can be flipped between the chains without changing the
geometry, so with ``s`` flippable blocks there are ``2^(s-1)`` distinct
representations (the all-blocks flip is the chain swap, which is the
identity on unordered pairs).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .core import SegrepError, iter_bits, mask_of
from .geometry import ConvexGeometry
from .representation import SegmentRepresentation, verify_representation


class TooManyBlocks(SegrepError):
    """Enumeration would produce more representations than the guard allows."""


class NotApplicable(SegrepError):
    """Chain reconstruction met a subset whose extreme points cannot be
    assigned to one chain, or found more than one consistent outcome."""

    def __init__(self, witness: int, outcomes: int):
        self.witness = witness
        self.outcomes = outcomes
        super().__init__(
            f"reconstruction is ambiguous ({outcomes} consistent outcomes)"
        )


@dataclass(frozen=True)
class Block:
    """A maximal position range filled by the same elements in both chains."""

    start: int  # 1-based chain position
    end: int
    members: int
    left_sub: tuple[int, ...]
    right_sub: tuple[int, ...]

    @property
    def switchable(self) -> bool:
        return self.left_sub != self.right_sub


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]

    @property
    def switchable_count(self) -> int:
        return sum(1 for b in self.blocks if b.switchable)

    def describe(self, ground) -> str:
        lines = []
        for i, b in enumerate(self.blocks, start=1):
            flag = "yes" if b.switchable else "no"
            lines.append(
                f"block {i}: positions [{b.start}..{b.end}], "
                f"members {ground.format_set(b.members)}, switchable {flag}"
            )
        return "\n".join(lines)


def block_decomposition(rep: SegmentRepresentation) -> BlockDecomposition:
    """Finest partition into position ranges with matching cumulative sets."""
    blocks = []
    acc_l = acc_r = 0
    start = 1
    left_sub: list[int] = []
    right_sub: list[int] = []
    for pos in range(1, rep.n + 1):
        l, r = rep.left[pos - 1], rep.right[pos - 1]
        acc_l |= 1 << l
        acc_r |= 1 << r
        left_sub.append(l)
        right_sub.append(r)
        if acc_l == acc_r:
            blocks.append(
                Block(start, pos, mask_of(left_sub), tuple(left_sub), tuple(right_sub))
            )
            start = pos + 1
            left_sub, right_sub = [], []
    return BlockDecomposition(tuple(blocks))


def block_orientations(
    rep: SegmentRepresentation,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ordered chain pairs reachable by flipping switchable blocks.

    Yields 2^s pairs (rigid blocks contribute one orientation); the unordered
    collapse of the output is the full set of representations of the same
    geometry.
    """
    decomposition = block_decomposition(rep)
    choices = []
    for b in decomposition.blocks:
        if b.switchable:
            choices.append(((b.left_sub, b.right_sub), (b.right_sub, b.left_sub)))
        else:
            choices.append(((b.left_sub, b.right_sub),))
    for picks in product(*choices):
        left: tuple[int, ...] = ()
        right: tuple[int, ...] = ()
        for l_sub, r_sub in picks:
            left += l_sub
            right += r_sub
        yield left, right


def count_representations(rep: SegmentRepresentation) -> int:
    """Number of distinct representations of the represented geometry."""
    s = block_decomposition(rep).switchable_count
    return 1 if s <= 1 else 2 ** (s - 1)


@dataclass(frozen=True)
class UniquenessReport:
    unique: bool
    decomposition: BlockDecomposition
    switchable_block: Optional[Block]
    ending_segments_distinct: Optional[bool]
    rigid_rest: bool

    def describe(self, ground) -> str:
        lines = [self.decomposition.describe(ground)]
        if self.unique:
            if self.switchable_block is None:
                lines.append("unique: yes (both chains identical)")
            else:
                lines.append(
                    "unique: yes (single switchable block "
                    f"{ground.format_set(self.switchable_block.members)}, "
                    f"top segments distinct: {self.ending_segments_distinct}, "
                    "all other blocks rigid)"
                )
        else:
            lines.append("unique: no")
        return "\n".join(lines)


def is_unique(rep: SegmentRepresentation) -> UniquenessReport:
    """Uniqueness holds exactly when at most one block is switchable.

    For a single switchable block the report also records whether its two
    sub-chains have distinct top-k segments for 1 <= k <= len-2 (the
    condition that forces the block's own representation), and confirms that
    the remaining blocks carry identical sub-chains.
    """
    decomposition = block_decomposition(rep)
    switchable = [b for b in decomposition.blocks if b.switchable]
    rigid_rest = all(
        b.left_sub == b.right_sub for b in decomposition.blocks if b not in switchable
    )
    if not switchable:
        return UniquenessReport(True, decomposition, None, None, rigid_rest)
    if len(switchable) == 1:
        block = switchable[0]
        distinct = _ending_segments_distinct(block.left_sub, block.right_sub)
        return UniquenessReport(True, decomposition, block, distinct, rigid_rest)
    return UniquenessReport(False, decomposition, None, None, rigid_rest)


def _ending_segments_distinct(left: tuple[int, ...], right: tuple[int, ...]) -> bool:
    for k in range(1, max(len(left) - 2, 0) + 1):
        if set(left[-k:]) == set(right[-k:]):
            return False
    return True


def enumerate_representations(
    rep: SegmentRepresentation, max_blocks: int = 20
) -> tuple[SegmentRepresentation, ...]:
    """All representations reachable by block flips, canonical and sorted."""
    s = block_decomposition(rep).switchable_count
    if s > max_blocks:
        raise TooManyBlocks(
            f"{s} switchable blocks exceed the guard of {max_blocks}; "
            "raise 'max_blocks' to override"
        )
    found = {SegmentRepresentation(left, right) for left, right in block_orientations(rep)}
    return tuple(sorted(found, key=lambda r: (r.left, r.right)))


def reconstruct_by_peeling(geom: ConvexGeometry) -> SegmentRepresentation:
    """Rebuild the chain pair purely from extreme points of shrinking subsets.

    The top elements of both chains are recovered alternately: dropping the
    known top-k of one chain exposes, among the extreme points of the
    remainder, the other chain's surviving maximum (already known) plus one
    new element, which must be this chain's next entry.  When the known tops
    of the other chain are all among the dropped elements and two candidates
    remain, the assignment is ambiguous; both are pursued and the geometry is
    reconstructible only if exactly one verified outcome survives.  The
    initial two-way choice is the chain swap and is collapsed by canonical
    form, not counted as ambiguity.
    """
    n = geom.n
    full = geom.ground.full
    if n == 0:
        return SegmentRepresentation((), ())
    outcomes: set[SegmentRepresentation] = set()
    first_split: list[int] = []

    def extend(det_l: tuple[int, ...], det_r: tuple[int, ...]):
        if len(det_l) == n and len(det_r) == n:
            candidate = SegmentRepresentation(
                tuple(reversed(det_l)), tuple(reversed(det_r))
            )
            ok, _ = verify_representation(geom, candidate)
            if ok:
                outcomes.add(candidate)
            return
        on_left = len(det_l) <= len(det_r) and len(det_l) < n
        det_side, det_other = (det_l, det_r) if on_left else (det_r, det_l)
        remainder = full & ~mask_of(det_side)
        extreme = geom.extreme_points(remainder)
        k = extreme.bit_count()
        if k == 0 or k > 2:
            raise NotApplicable(remainder, 0)
        survivor = next((e for e in det_other if (remainder >> e) & 1), None)
        if survivor is not None:
            if not (extreme >> survivor) & 1:
                return  # inconsistent branch
            rest = extreme & ~(1 << survivor)
            new = next(iter_bits(rest)) if rest else survivor
            candidates = [new]
        elif k == 1:
            candidates = [next(iter_bits(extreme))]
        else:
            candidates = list(iter_bits(extreme))
            if det_l or det_r:
                if not first_split:
                    first_split.append(remainder)
        for new in candidates:
            if on_left:
                extend(det_l + (new,), det_r)
            else:
                extend(det_l, det_r + (new,))

    extend((), ())
    if len(outcomes) == 1:
        return next(iter(outcomes))
    raise NotApplicable(first_split[0] if first_split else full, len(outcomes))
