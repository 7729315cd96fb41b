"""Hereditary families: the expression language, membership, derivatives,
and symbolic ranks.

Membership has two independent routes: the structural fast path used by
`member` and the exhaustive composition search.  Enumeration likewise has a
pruned generator and a brute powerset filter.  The agreement tests here pin
the two sides of each pair against one another on full truncations.
"""

import pytest

from schreier_kit import family
from schreier_kit.family import (
    AP,
    All,
    Cube,
    DegenerateIndexError,
    Explicit,
    FamilySyntaxError,
    From,
    NotAMemberError,
    Powers,
    Product,
    Restrict,
    SCHREIER,
    SCHREIER_SQUARE,
    Schreier,
    base_family,
    derivative,
    effective_index,
    enumerate_members,
    enumerate_members_naive,
    extension_admissible,
    format_family,
    format_index,
    index_elements_between,
    is_maximal,
    iterated_derivative,
    member,
    member_by_composition_search,
    parse_family,
    parse_index,
    product_family,
    rank,
    rank_is_rule_derived,
    restricted,
    tail_threshold,
)
from schreier_kit.finset import EMPTY, FinSet
from schreier_kit.ordinal import Ordinal


def sets(expr, bound):
    return [str(s) for s in enumerate_members(expr, bound)]


class TestExpressionLanguage:
    CANONICAL = [
        "schreier",
        "S2",
        "cube(2,3)",
        "prod(schreier, cube(3,3))",
        "prod(cube(2,2), cube(3,3))",
        "restrict(schreier, powers(2))",
        "restrict(S2, from(4))",
        "restrict(schreier, ap(3,2))",
        "restrict(schreier, {2,5,9})",
        "restrict(restrict(schreier, powers(2)), from(3))",
    ]

    def test_canonical_strings_roundtrip(self):
        for text in self.CANONICAL:
            assert format_family(parse_family(text)) == text

    def test_whitespace_and_sugar(self):
        assert format_family(parse_family(" prod( schreier ,cube(3,3) ) ")) == \
            "prod(schreier, cube(3,3))"
        assert parse_family("S2") == SCHREIER_SQUARE
        assert format_family(Product(SCHREIER, SCHREIER)) == "S2"
        assert format_family(parse_family("prod(schreier, schreier)")) == "S2"

    def test_index_literals_are_normalized(self):
        assert format_index(parse_index("{2,1,1}")) == "{1,2}"
        assert format_index(parse_index("all")) == "all"

    @pytest.mark.parametrize("text,offset,message", [
        ("schreir", 1, "expected a family expression"),
        ("powers(1)", 1, "expected a family expression"),
        ("cube(0,2)", 6, "cube"),
        ("prod(schreier)", 14, "expected ','"),
        ("restrict(schreier,)", 19, "expected an index set"),
        ("cube(2,2)x", 10, "trailing"),
    ])
    def test_family_syntax_errors(self, text, offset, message):
        with pytest.raises(FamilySyntaxError) as exc:
            parse_family(text)
        assert exc.value.offset == offset
        assert message in str(exc.value)

    @pytest.mark.parametrize("text,offset,message", [
        ("powers(1)", 8, "powers base must be >= 2"),
        ("from(0)", 6, "from() needs a start >= 1"),
        ("ap(0,2)", 4, "ap() needs a start >= 1"),
        ("ap(2,0)", 6, "ap() needs a step >= 1"),
        ("{1,2", 5, "expected '}'"),
    ])
    def test_index_syntax_errors(self, text, offset, message):
        with pytest.raises(FamilySyntaxError) as exc:
            parse_index(text)
        assert exc.value.offset == offset
        assert message in str(exc.value)


class TestIndexSets:
    def test_elements_between(self):
        # the window is the half-open (lo, hi]
        assert index_elements_between(All(), 3, 6) == [4, 5, 6]
        assert index_elements_between(From(5), 3, 7) == [5, 6, 7]
        assert index_elements_between(Powers(2), 1, 16) == [2, 4, 8, 16]
        assert index_elements_between(AP(3, 2), 4, 11) == [5, 7, 9, 11]
        assert index_elements_between(Explicit((2, 5, 9)), 2, 9) == [5, 9]

    def test_effective_index_folds_restrictions(self):
        expr = restricted(SCHREIER, Powers(2))
        assert format_index(effective_index(expr)) == "powers(2)"
        assert format_index(effective_index(SCHREIER)) == "all"


SCHREIER_AT_4 = ["∅", "{1}", "{2}", "{3}", "{4}", "{2,3}", "{2,4}", "{3,4}"]


class TestMembership:
    def test_schreier_examples(self):
        assert member(SCHREIER, EMPTY)
        assert member(SCHREIER, FinSet((2, 3)))
        assert member(SCHREIER, FinSet((3, 7, 9)))
        assert not member(SCHREIER, FinSet((1, 2)))
        assert not member(SCHREIER, FinSet((2, 3, 4)))

    def test_cube_examples(self):
        c = Cube(2, 2)
        assert member(c, FinSet((3, 9)))
        assert not member(c, FinSet((1,)))       # below the floor
        assert not member(c, FinSet((2, 3, 4)))  # too long

    def test_square_examples(self):
        assert member(SCHREIER_SQUARE, FinSet((2, 3, 5, 8, 9)))
        assert member(SCHREIER_SQUARE, FinSet((2, 3, 4)))
        assert not member(SCHREIER_SQUARE, FinSet((1, 2)))

    def test_restriction_intersects_with_the_index(self):
        r = restricted(SCHREIER, Powers(2))
        assert member(r, FinSet((2, 4)))
        assert not member(r, FinSet((2, 3)))

    def test_fast_path_agrees_with_composition_search(self):
        targets = [SCHREIER_SQUARE, product_family(2),
                   Product(Cube(2, 2), Cube(3, 3))]
        for expr in targets:
            for mask in range(1 << 8):
                s = FinSet(tuple(m for m in range(1, 9) if mask >> (m - 1) & 1))
                assert member(expr, s) == member_by_composition_search(expr, s), \
                    f"{format_family(expr)} disagrees at {s}"


class TestEnumeration:
    def test_schreier_at_4(self):
        assert sets(SCHREIER, 4) == SCHREIER_AT_4

    def test_cube_at_4(self):
        assert sets(Cube(2, 2), 4) == \
            ["∅", "{2}", "{3}", "{4}", "{2,3}", "{2,4}", "{3,4}"]

    def test_restricted_powers_at_8(self):
        assert sets(restricted(SCHREIER, Powers(2)), 8) == \
            ["∅", "{1}", "{2}", "{4}", "{8}", "{2,4}", "{2,8}", "{4,8}"]

    def test_frozen_counts(self):
        assert len(enumerate_members(SCHREIER, 12)) == 377
        assert len(enumerate_members(SCHREIER_SQUARE, 8)) == 128
        assert len(enumerate_members(SCHREIER_SQUARE, 10)) == 489
        assert len(enumerate_members(SCHREIER_SQUARE, 12)) == 1825

    def test_pruned_enumeration_matches_powerset_filter(self):
        targets = [
            (SCHREIER, 7),
            (SCHREIER_SQUARE, 7),
            (Cube(2, 3), 7),
            (restricted(SCHREIER, AP(2, 3)), 10),
            (product_family(2), 8),
        ]
        for expr, bound in targets:
            assert enumerate_members(expr, bound) == \
                enumerate_members_naive(expr, bound), format_family(expr)

    def test_hereditary_downward_closure(self):
        for expr in [SCHREIER, SCHREIER_SQUARE, product_family(2),
                     restricted(SCHREIER, Powers(2))]:
            for s in enumerate_members(expr, 8):
                for drop in s:
                    sub = FinSet(tuple(m for m in s if m != drop))
                    assert member(expr, sub), \
                        f"{format_family(expr)}: {s} minus {drop}"


class TestMaximality:
    def test_schreier_maximal_sets_at_4(self):
        flags = {str(s): is_maximal(SCHREIER, s)
                 for s in enumerate_members(SCHREIER, 4)}
        assert flags == {"∅": False, "{1}": True, "{2}": False, "{3}": False,
                         "{4}": False, "{2,3}": True, "{2,4}": True,
                         "{3,4}": False}

    def test_maximality_needs_membership(self):
        with pytest.raises(NotAMemberError, match="not a member"):
            is_maximal(SCHREIER, FinSet((1, 2)))


class TestDerivatives:
    def test_schreier_derivative_keeps_extendable_sets(self):
        assert sets(derivative(SCHREIER), 4) == ["∅", "{2}", "{3}", "{4}", "{3,4}"]

    def test_cube_derivatives_shrink_by_one_size(self):
        c = Cube(2, 2)
        assert len(sets(iterated_derivative(c, 0), 6)) == 16
        assert sets(iterated_derivative(c, 1), 6) == \
            ["∅", "{2}", "{3}", "{4}", "{5}", "{6}"]
        assert sets(iterated_derivative(c, 2), 6) == ["∅"]
        assert sets(iterated_derivative(c, 3), 6) == []

    def test_annihilation_step_count(self):
        for n in range(1, 4):
            c = Cube(n, n)
            assert member(iterated_derivative(c, n), EMPTY)
            assert not member(iterated_derivative(c, n + 1), EMPTY)


class TestTailBehavior:
    def test_thresholds(self):
        assert tail_threshold(SCHREIER, EMPTY) == 1
        assert tail_threshold(SCHREIER, FinSet((2, 3))) == 1
        g2 = product_family(2)
        assert tail_threshold(g2, EMPTY) == 2
        assert tail_threshold(g2, FinSet((4, 5, 6, 7))) == 2

    def test_admissibility_is_uniform_beyond_the_threshold(self):
        s = FinSet((3, 5))
        floor = max(tail_threshold(SCHREIER, s), s.max)
        probes = [extension_admissible(SCHREIER, s, m)
                  for m in range(floor + 1, floor + 10)]
        assert probes == [True] * 9

        full = FinSet((2, 3))  # already at capacity: no tail ever works
        assert all(not extension_admissible(SCHREIER, full, m)
                   for m in range(4, 13))


class TestRank:
    def test_base_ranks(self):
        assert str(rank(SCHREIER)) == "w+1"
        for n in range(1, 7):
            assert rank(Cube(n, n)) == Ordinal.nat(n + 1)

    def test_product_ranks(self):
        assert str(rank(SCHREIER_SQUARE)) == "w^2+1"
        assert str(rank(product_family(1))) == "w+1"
        for n in range(2, 7):
            assert str(rank(product_family(n))) == f"w*{n}+1"

    def test_restriction_passes_rank_through_infinite_indices(self):
        assert rank(restricted(SCHREIER, Powers(2))) == rank(SCHREIER)
        assert rank(restricted(SCHREIER_SQUARE, AP(3, 2))) == rank(SCHREIER_SQUARE)

    def test_finite_indices_are_degenerate(self):
        with pytest.raises(DegenerateIndexError, match="infinite index"):
            rank(restricted(SCHREIER, Explicit((2, 5, 9))))

    def test_derived_families_have_no_symbolic_rank(self):
        with pytest.raises(TypeError):
            rank(derivative(SCHREIER))

    def test_rule_derived_flag(self):
        assert not rank_is_rule_derived(SCHREIER)
        assert not rank_is_rule_derived(SCHREIER_SQUARE)
        assert not rank_is_rule_derived(product_family(3))
        odd = Product(Cube(2, 2), Cube(3, 3))
        assert rank_is_rule_derived(odd)
        assert rank(odd) == Ordinal.nat(7)


class TestConstructorHelpers:
    def test_level_families(self):
        assert base_family(2) == Cube(2, 2)
        assert base_family("w") == Schreier()
        assert product_family(3) == Product(SCHREIER, Cube(3, 3))
        assert product_family("w") == SCHREIER_SQUARE
