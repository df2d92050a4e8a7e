from fractions import Fraction

import pytest

from pbwstar.assoc import MultilinearTag, ch_log, lie_project
from pbwstar.chw import (
    ChainTerm,
    PivotSide,
    chain_sum,
    enumerate_chains,
    rename,
    w,
)
from pbwstar.freelie import (
    LieElement,
    MultiIndex,
    X_SIDE,
    Y_SIDE,
    parse_element,
    xgen,
    ygen,
)


def full_tag_value(n, m):
    tag = MultilinearTag(frozenset(range(1, n + 1)), frozenset(range(1, m + 1)))
    hit = ch_log(n, m).get(tag)
    # a missing tag means every word of that support cancelled
    return LieElement.zero() if hit is None else lie_project(hit)


class TestEnumerateChains:
    def test_needs_both_sides(self):
        with pytest.raises(ValueError):
            list(enumerate_chains(1, 0, PivotSide.Y))
        with pytest.raises(ValueError):
            list(enumerate_chains(0, 1, PivotSide.X))

    def test_degree_two_y_family(self):
        chains = list(enumerate_chains(1, 1, PivotSide.Y))
        assert len(chains) == 2
        assert sorted(c.p for c in chains) == [1, 2]
        for c in chains:
            assert c.pivot == 1
            assert c.evaluate() == parse_element("[x1,y1]")

    def test_degree_two_x_family(self):
        chains = list(enumerate_chains(1, 1, PivotSide.X))
        assert chains == [
            ChainTerm(
                pivot_side=PivotSide.X,
                p=2,
                alphas=(MultiIndex((), X_SIDE),),
                betas=(MultiIndex((1,), Y_SIDE),),
                pivot=1,
            )
        ]
        assert chains[0].evaluate() == parse_element("-[x1,y1]")

    def test_chains_partition_all_letters(self):
        for side in (PivotSide.X, PivotSide.Y):
            for c in enumerate_chains(2, 2, side):
                xs = [g.index for g in c.letters() if g.side == X_SIDE]
                ys = [g.index for g in c.letters() if g.side == Y_SIDE]
                if side is PivotSide.X:
                    xs.append(c.pivot)
                else:
                    ys.append(c.pivot)
                assert sorted(xs) == [1, 2]
                assert sorted(ys) == [1, 2]

    def test_interior_pairs_nonempty(self):
        for c in enumerate_chains(2, 2, PivotSide.Y):
            for i in range(c.p - 1):
                assert len(c.alphas[i].entries) + len(c.betas[i].entries) >= 1


class TestChainTerm:
    def test_block_count_validation(self):
        with pytest.raises(ValueError):
            ChainTerm(PivotSide.Y, 1, (), (), 1)
        with pytest.raises(ValueError):
            ChainTerm(PivotSide.X, 2, (MultiIndex((1,), X_SIDE),) * 2, (), 1)

    def test_weight_divides_by_block_factorials(self):
        term = ChainTerm(
            PivotSide.Y,
            2,
            (MultiIndex((1, 2), X_SIDE), MultiIndex((), X_SIDE)),
            (MultiIndex((1,), Y_SIDE),),
            2,
        )
        assert term.weight == Fraction(-1, 4)

    def test_letters_order(self):
        term = ChainTerm(
            PivotSide.Y,
            2,
            (MultiIndex((2, 1), X_SIDE), MultiIndex((3,), X_SIDE)),
            (MultiIndex((1,), Y_SIDE),),
            2,
        )
        assert term.letters() == (xgen(2), xgen(1), ygen(1), xgen(3))


class TestW:
    def test_bare_generators(self):
        assert w({1}, set()) == parse_element("x1")
        assert w(set(), {3}) == parse_element("y3")

    def test_degree_two(self):
        assert w({1}, {1}) == parse_element("1/2·[x1,y1]")

    def test_pivot_families_split_evenly_in_degree_two(self):
        half = parse_element("1/2·[x1,y1]")
        assert chain_sum(1, 1, PivotSide.Y) == half
        assert chain_sum(1, 1, PivotSide.X) == half

    def test_two_one(self):
        assert w({1, 2}, {1}) == parse_element(
            "1/12·[x1,[x2,y1]] - 1/12·[[x1,y1],x2]"
        )

    def test_one_two(self):
        assert w({1}, {1, 2}) == parse_element(
            "1/12·[x1,[y1,y2]] + 1/6·[[x1,y2],y1]"
        )

    @pytest.mark.parametrize("a,b", [(set(), set()), ({1, 2}, set()), (set(), {1, 2})])
    def test_undefined_shapes(self, a, b):
        with pytest.raises(ValueError):
            w(a, b)

    def test_rejects_repeats_and_bad_indices(self):
        with pytest.raises(ValueError):
            w([1, 1], [2])
        with pytest.raises(ValueError):
            w({0}, {1})

    def test_relabels_to_requested_indices(self):
        assert w({2}, {5}) == parse_element("1/2·[x2,y5]")
        assert w({3, 7}, {2}) == rename(
            w({1, 2}, {1}),
            {xgen(1): xgen(3), xgen(2): xgen(7), ygen(1): ygen(2)},
        )

    def test_accepts_any_iterable(self):
        assert w(iter([1]), iter([1])) == parse_element("1/2·[x1,y1]")

    def test_matches_group_like_logarithm(self):
        # independent route: coefficient extraction from log(exp(X) exp(Y))
        for n in range(1, 4):
            for m in range(1, 4):
                if n + m > 4:
                    continue
                assert w(range(1, n + 1), range(1, m + 1)) == full_tag_value(n, m)

    def test_homogeneous_degree(self):
        el = w({1, 2}, {1, 2})
        assert el != LieElement.zero()
        for mono, _ in el.items():
            assert mono.degree == 4
