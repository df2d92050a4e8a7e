from fractions import Fraction

import pytest

from pbwstar.assoc import SymElement, SymMonomial, b_p_oracle, parse_sym_element
from pbwstar.bipart import Part, b_p_formula, rename_sym, special_bipartitions
from pbwstar.chw import w
from pbwstar.freelie import LieMonomial, xgen, xgens, ygen, ygens

x1, x2 = xgens(2)
y1, y2 = ygens(2)


def sym(*gens):
    return SymMonomial.of_generators(gens)


class TestPart:
    def test_valid_shapes(self):
        Part(frozenset({1, 2}), frozenset({1}))
        Part(frozenset({1}), frozenset())
        Part(frozenset(), frozenset({4}))

    @pytest.mark.parametrize(
        "s,t",
        [
            (frozenset(), frozenset()),
            (frozenset({1, 2}), frozenset()),
            (frozenset(), frozenset({1, 2})),
        ],
    )
    def test_invalid_shapes(self, s, t):
        with pytest.raises(ValueError):
            Part(s, t)

    def test_value_delegates(self):
        assert Part(frozenset({1}), frozenset({1})).value() == w({1}, {1})

    def test_str(self):
        assert str(Part(frozenset({2, 1}), frozenset({3}))) == "({1,2},{3})"


class TestSpecialBipartitions:
    def test_degree_two_counts(self):
        assert len(list(special_bipartitions(1, 1, 1))) == 1
        assert len(list(special_bipartitions(1, 1, 2))) == 1
        assert list(special_bipartitions(1, 1, 3)) == []

    def test_two_one_counts(self):
        assert len(list(special_bipartitions(2, 1, 1))) == 1
        assert len(list(special_bipartitions(2, 1, 2))) == 2
        assert len(list(special_bipartitions(2, 1, 3))) == 1

    def test_maximal_size_is_all_singletons(self):
        (pi,) = special_bipartitions(2, 2, 4)
        assert pi == frozenset(
            {
                Part(frozenset({1}), frozenset()),
                Part(frozenset({2}), frozenset()),
                Part(frozenset(), frozenset({1})),
                Part(frozenset(), frozenset({2})),
            }
        )

    def test_parts_disjoint_and_covering(self):
        for size in range(1, 5):
            for pi in special_bipartitions(2, 2, size):
                xs = [i for part in pi for i in part.S]
                ys = [j for part in pi for j in part.T]
                assert sorted(xs) == [1, 2]
                assert sorted(ys) == [1, 2]
                assert len(pi) == size

    def test_requires_nonempty_sides(self):
        with pytest.raises(ValueError):
            list(special_bipartitions(0, 1, 1))


class TestBpFormula:
    def test_top_component_is_plain_product(self):
        got = b_p_formula(sym(x1, x2), sym(y1), 0)
        assert got == SymElement.from_monomial(sym(x1, x2, y1))

    def test_first_correction_distributes_brackets(self):
        got = b_p_formula(sym(x1, x2), sym(y1), 1)
        assert got == parse_sym_element("1/2·x1·[x2,y1] + 1/2·x2·[x1,y1]")

    def test_bottom_component_is_single_block(self):
        got = b_p_formula(sym(x1, x2), sym(y1), 2)
        assert got == SymElement.from_lie(w({1, 2}, {1}))

    def test_beyond_bottom_is_zero(self):
        assert b_p_formula(sym(x1), sym(y1), 2) == SymElement.zero()

    def test_matches_straightening_oracle(self):
        # two independent routes to the same homogeneous components
        cases = [
            (sym(x1), sym(y1)),
            (sym(x1, x2), sym(y1)),
            (sym(x1), sym(y1, y2)),
            (sym(x1, x2), sym(y1, y2)),
        ]
        for xm, ym in cases:
            for p in range(xm.size + ym.size):
                assert b_p_formula(xm, ym, p) == b_p_oracle(xm, ym, p)

    def test_swapped_letters_follow_positions(self):
        assert b_p_formula(sym(y1), sym(x1), 1) == parse_sym_element("-1/2·[x1,y1]")

    def test_arbitrary_letter_names(self):
        assert b_p_formula(sym(xgen(2)), sym(ygen(3)), 1) == parse_sym_element(
            "1/2·[x2,y3]"
        )

    def test_rejects_shared_letters(self):
        with pytest.raises(ValueError):
            b_p_formula(sym(x1), sym(x1), 0)

    def test_rejects_repeated_letters(self):
        with pytest.raises(ValueError):
            b_p_formula(sym(x1, x1), sym(y1), 0)

    def test_rejects_bracket_factors(self):
        br = SymMonomial(
            (LieMonomial.bracket_of(LieMonomial.leaf(x1), LieMonomial.leaf(y1)),)
        )
        with pytest.raises(ValueError):
            b_p_formula(br, sym(y2), 0)

    def test_rejects_empty_side(self):
        with pytest.raises(ValueError):
            b_p_formula(SymMonomial.unit(), sym(y1), 0)

    def test_rejects_negative_p(self):
        with pytest.raises(ValueError):
            b_p_formula(sym(x1), sym(y1), -1)


class TestRenameSym:
    def test_renames_inside_brackets(self):
        el = parse_sym_element("x1·[x2,y1]")
        got = rename_sym(el, {xgen(1): xgen(4), xgen(2): xgen(5), ygen(1): ygen(2)})
        assert got == parse_sym_element("x4·[x5,y2]")

    def test_renormalizes_after_swap(self):
        # mapping that reverses a bracket's canonical order
        el = parse_sym_element("[x1,y1]")
        got = rename_sym(el, {xgen(1): ygen(1), ygen(1): xgen(1)})
        assert got == parse_sym_element("-[x1,y1]")
