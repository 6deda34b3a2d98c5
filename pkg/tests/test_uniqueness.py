"""Block structure, representation counting, and chain reconstruction."""

import pytest

from segrep import (
    GroundSet,
    Implication,
    ImplicationBasis,
    NotApplicable,
    SegmentRepresentation,
    block_decomposition,
    brute_force_cdim2,
    build_representation,
    count_representations,
    decide_cdim2,
    enumerate_representations,
    is_unique,
    iter_bits,
    reconstruct_by_peeling,
    validate_geometry,
    verify_representation,
)
from segrep.fixtures import load_fixture


@pytest.fixture(scope="module")
def switch():
    return load_fixture("switch")


@pytest.fixture(scope="module")
def switch_rep(switch):
    return build_representation(switch.geometry)


class TestBlockDecomposition:
    def test_switch_blocks(self, switch, switch_rep):
        gs = switch.geometry.ground
        dec = block_decomposition(switch_rep)
        members = [b.members for b in dec.blocks]
        assert members == [gs.mask("123"), gs.mask("c"), gs.mask("ab")]
        assert [b.switchable for b in dec.blocks] == [True, False, True]
        assert dec.switchable_count == 2
        assert (dec.blocks[0].start, dec.blocks[0].end) == (1, 3)
        assert (dec.blocks[2].start, dec.blocks[2].end) == (5, 6)

    def test_un_single_block(self):
        fixture = load_fixture("un")
        rep = build_representation(fixture.geometry)
        dec = block_decomposition(rep)
        assert len(dec.blocks) == 1
        assert dec.blocks[0].members == fixture.geometry.ground.full
        assert dec.switchable_count == 1

    def test_identical_chains_all_singletons(self):
        rep = SegmentRepresentation((2, 0, 1), (2, 0, 1))
        dec = block_decomposition(rep)
        assert len(dec.blocks) == 3
        assert dec.switchable_count == 0

    def test_blocks_partition_positions(self, switch_rep):
        dec = block_decomposition(switch_rep)
        positions = [p for b in dec.blocks for p in range(b.start, b.end + 1)]
        assert positions == list(range(1, switch_rep.n + 1))

    def test_blocks_are_irreducible(self, switch_rep):
        # a block re-read as its own representation decomposes into itself
        for block in block_decomposition(switch_rep).blocks:
            sub = SegmentRepresentation(block.left_sub, block.right_sub)
            assert len(block_decomposition(sub).blocks) == 1

    def test_cross_block_implications(self, switch):
        rep = build_representation(switch.geometry)
        blocks = block_decomposition(rep).blocks
        geom = switch.geometry
        for high in range(len(blocks)):
            for low in range(high):
                for u in iter_bits(blocks[high].members):
                    closed = geom.closure(1 << u)
                    assert blocks[low].members & ~closed == 0


class TestCountAndUnique:
    def test_switch_counts_two(self, switch_rep):
        assert count_representations(switch_rep) == 2

    def test_unique_counts_one(self):
        rep = build_representation(load_fixture("unique").geometry)
        assert count_representations(rep) == 1
        report = is_unique(rep)
        assert report.unique
        assert report.switchable_block.members == (1 << 5) - 1
        assert report.ending_segments_distinct

    def test_identical_chains_count_one(self):
        assert count_representations(SegmentRepresentation((0, 1), (0, 1))) == 1

    def test_switch_not_unique(self, switch_rep):
        assert not is_unique(switch_rep).unique

    def test_seven_element_example(self):
        fixture = load_fixture("seven")
        gs = fixture.geometry.ground
        rep = build_representation(fixture.geometry)
        report = is_unique(rep)
        assert report.unique
        assert report.switchable_block.members == gs.mask("abcd")
        assert report.ending_segments_distinct
        assert report.rigid_rest

    def test_count_matches_oracle(self, pool_small):
        for geom in pool_small[:300]:
            result = brute_force_cdim2(geom)
            if not result.representations:
                continue
            rep = build_representation(geom)
            assert count_representations(rep) == len(result.representations)


class TestEnumerate:
    def test_switch_yields_both_oracle_representations(self, switch):
        rep = build_representation(switch.geometry)
        enumerated = enumerate_representations(rep)
        oracle = brute_force_cdim2(switch.geometry).representations
        assert set(enumerated) == set(oracle)
        assert len(enumerated) == 2
        for candidate in enumerated:
            assert verify_representation(switch.geometry, candidate)[0]

    def test_singletons(self):
        rep = build_representation(load_fixture("un").geometry)
        assert enumerate_representations(rep) == (rep,)
        chain = SegmentRepresentation((0, 1, 2), (0, 1, 2))
        assert enumerate_representations(chain) == (chain,)

    def test_matches_oracle_on_random_pool(self, pool_small):
        for geom in pool_small[:200]:
            result = brute_force_cdim2(geom)
            if not result.representations:
                continue
            rep = build_representation(geom)
            enumerated = enumerate_representations(rep)
            assert set(enumerated) == set(result.representations)
            assert len(set(enumerated)) == len(enumerated)


class TestReconstruct:
    def test_unique_fixture_full_walkthrough(self):
        fixture = load_fixture("unique")
        geom = fixture.geometry
        gs = geom.ground
        rep = reconstruct_by_peeling(geom)
        assert rep == build_representation(geom)
        full = gs.full
        # the intermediate extreme-point reads that force the chains
        assert geom.extreme_points(full) == gs.mask("45")
        assert geom.extreme_points(full & ~gs.mask("5")) == gs.mask("14")
        assert geom.extreme_points(full & ~gs.mask("4")) == gs.mask("5")
        assert geom.extreme_points(full & ~gs.mask("15")) == gs.mask("34")
        assert geom.extreme_points(full & ~gs.mask("45")) == gs.mask("13")
        assert geom.extreme_points(full & ~gs.mask("513")) == gs.mask("24")
        assert geom.extreme_points(full & ~gs.mask("354")) == gs.mask("1")

    def test_switch_is_ambiguous(self, switch):
        with pytest.raises(NotApplicable) as err:
            reconstruct_by_peeling(switch.geometry)
        assert err.value.witness == switch.geometry.ground.mask("123")
        assert err.value.outcomes == 2

    def test_forced_two_element_chain(self):
        gs = GroundSet(("a", "b"))
        geom = validate_geometry(
            ImplicationBasis(gs, (Implication(gs.mask("a"), gs.mask("b")),)))
        rep = reconstruct_by_peeling(geom)
        assert rep.left == rep.right == (gs.index("b"), gs.index("a"))

    def test_agrees_with_builder_exactly_when_unique(self, pool_small):
        for geom in pool_small[:200]:
            if not decide_cdim2(geom).cdim2:
                continue
            rep = build_representation(geom)
            unique = count_representations(rep) == 1
            try:
                assert reconstruct_by_peeling(geom) == rep and unique
            except NotApplicable:
                assert not unique


class TestDistinctEndingSegments:
    def test_forces_a_single_representation(self, pool_small):
        # whenever every top-k pair of ending segments differs as sets
        # (k up to n-2), the oracle finds exactly one representation
        checked = 0
        for geom in pool_small[:400]:
            result = brute_force_cdim2(geom)
            if not result.representations:
                continue
            rep = result.representations[0]
            n = rep.n
            distinct = all(
                set(rep.left[-k:]) != set(rep.right[-k:])
                for k in range(1, max(n - 2, 0) + 1))
            if distinct and n >= 2:
                checked += 1
                assert len(result.representations) == 1
        assert checked > 10
