"""Chains of block averages and the exact cancellation identity.

Every evaluation has two routes: the per-block factorization and the brute
enumeration of all picks.  The identity tests lean on the factorized form
(the enumerated one is the oracle and is compared against it directly).
"""

from fractions import Fraction

import pytest

from schreier_kit.averaging import (
    BlockAverage,
    CanonicalBlocks,
    ChainError,
    DeltaChain,
    SeededBlocks,
    block_average,
    build_chain,
    cancellation_value,
    evaluate,
    evaluate_enumerated,
    self_pairing,
    union_functional,
)
from schreier_kit.finset import EMPTY, FinSet, interval


class TestBlockGenerators:
    def test_canonical_starts_are_the_next_power_of_two(self):
        g = CanonicalBlocks()
        assert g.next_start(2, 0, 3) == 4
        assert g.next_start(2, 7, 5) == 8
        assert g.next_start(3, 15, 9) == 16
        assert g.next_start(1, 0, 1) == 2
        assert g.describe() == "canonical"

    def test_seeded_starts_stay_in_the_spread_window(self):
        g = SeededBlocks(7)
        for level in range(1, 4):
            for lo in (3, 9, 20):
                p = g.next_start(2, lo, 2, level=level)
                assert lo + 1 <= p <= lo + g.spread
        assert g.describe() == "seeded(7)"

    def test_seeded_draws_are_reproducible(self):
        a = build_chain(3, FinSet((4, 6)), SeededBlocks(7))
        b = build_chain(3, FinSet((4, 6)), SeededBlocks(7))
        assert a == b
        other = build_chain(3, FinSet((4, 6)), SeededBlocks(8))
        assert other.blocks != a.blocks


class TestChains:
    def test_canonical_chain_blocks(self):
        c = build_chain(2, FinSet((3, 5)))
        assert c.blocks == (interval(4, 7), interval(8, 15))
        assert c.union() == interval(4, 15)
        assert c.depth == 2

    def test_prefix_slices_support_and_blocks_together(self):
        c = build_chain(2, FinSet((3, 5)))
        p = c.prefix(1)
        assert p.support == FinSet((3,))
        assert p.blocks == (interval(4, 7),)
        assert c.prefix(0).depth == 0
        with pytest.raises(ChainError, match="no prefix"):
            c.prefix(3)

    def test_extension_rules(self):
        c = build_chain(2, FinSet((3, 5)))
        with pytest.raises(ChainError, match="does not extend"):
            c.extend(4)
        with pytest.raises(ChainError, match="chains of length <= 2"):
            c.extend(9)
        d = c.prefix(1).extend(6)
        assert d.support == FinSet((3, 6))
        assert d.blocks[1] == interval(8, 15)

    @pytest.mark.parametrize("args,message", [
        ((0, EMPTY, ()), "level must be >= 1"),
        ((1, FinSet((2, 3)), (interval(4, 7), interval(8, 15))),
         "longer than level"),
        ((2, FinSet((3,)), (interval(2, 3),)), "start above the level"),
        ((2, FinSet((3,)), (FinSet((4, 5, 6)),)), "not a maximal schreier"),
        ((2, FinSet((3, 5)), (interval(8, 15), interval(4, 7))),
         "increase strictly"),
        ((2, FinSet((3, 5)), (interval(4, 7),)), "one block per"),
    ])
    def test_invalid_chains_are_rejected(self, args, message):
        with pytest.raises(ChainError, match=message):
            DeltaChain(*args)


class TestAverages:
    def test_weights_and_index_counts(self):
        v = block_average(build_chain(2, FinSet((3, 5))))
        assert v.index_count == 4 * 8
        assert v.weight == Fraction(1, 32)
        picks = list(v.indices())
        assert len(picks) == 32
        assert picks[0] == FinSet((4, 8))
        assert all(len(u) == 2 for u in picks)

    def test_explicit_map_sums_to_one(self):
        v = block_average(build_chain(2, FinSet((3, 5))))
        table = v.explicit()
        assert sum(table.values()) == 1
        assert set(table) == set(v.indices())

    def test_explicit_map_is_guarded(self):
        huge = BlockAverage(3, (interval(512, 1023),) * 3)
        with pytest.raises(ValueError, match="explicit-map limit"):
            huge.explicit()
        f = union_functional(build_chain(3, FinSet((4,))))
        with pytest.raises(ValueError, match="enumeration limit"):
            evaluate_enumerated(f, huge)


class TestEvaluation:
    def test_empty_chain_gives_the_constant_one(self):
        f = union_functional(build_chain(2, EMPTY))
        assert f.decomposition is None and f.blocks == ()
        v = block_average(build_chain(2, FinSet((3,))))
        assert evaluate(f, v) == 1
        assert evaluate_enumerated(f, v) == 1

    def test_half_overlap_gives_one_half(self):
        # functional pinned to {4,5}, average picking from [4,7]
        f_chain = build_chain(2, FinSet((3, 5)))
        f = union_functional(f_chain)
        assert evaluate(f, block_average(f_chain.prefix(1))) == 0

        from schreier_kit.kernel import decompose
        from schreier_kit.averaging import UnionFunctional
        t = FinSet((4, 5))
        g = UnionFunctional(2, t, decompose(t))
        v = BlockAverage(2, (interval(4, 7),))
        assert evaluate(g, v) == Fraction(1, 2)
        assert evaluate_enumerated(g, v) == Fraction(1, 2)

    def test_factorized_equals_enumerated_on_canonical_chains(self):
        for n in (1, 2, 3):
            c = build_chain(n, FinSet(tuple(range(n + 1, 2 * n + 1))))
            f = union_functional(c)
            for j in range(c.depth + 1):
                v = block_average(c.prefix(j))
                assert evaluate(f, v) == evaluate_enumerated(f, v), (n, j)

    def test_self_pairing_depends_only_on_depth_parity(self):
        assert self_pairing(build_chain(2, EMPTY)) == 1
        assert self_pairing(build_chain(2, FinSet((3,)))) == 0
        assert self_pairing(build_chain(2, FinSet((3, 5)))) == 1
        assert self_pairing(build_chain(3, FinSet((4, 6, 8)))) == 0


class TestCancellation:
    def test_golden_values(self):
        assert cancellation_value(build_chain(1, EMPTY), 3) == 1
        assert cancellation_value(build_chain(2, FinSet((3,))), 5) == -1
        assert cancellation_value(build_chain(3, FinSet((4, 6))), 9) == 1

    def test_sign_alternates_with_depth(self):
        c = build_chain(4, EMPTY)
        m = 1
        for k in range(4):
            assert cancellation_value(c, m + 1) == Fraction(-1) ** k
            c = c.extend(m + 1)
            m = c.support.max

    def test_seeded_generators_satisfy_the_identity_too(self):
        base = build_chain(2, FinSet((3,)), SeededBlocks(11))
        for seed in range(5):
            assert cancellation_value(base, 7, SeededBlocks(seed)) == -1

    def test_functional_recovers_chain_blocks(self):
        c = build_chain(2, FinSet((3, 5)))
        f = union_functional(c)
        assert f.blocks == c.blocks
        assert f.support == c.union()
        assert f.level == 2
