from fractions import Fraction

import pytest

from pbwstar.assoc import SymElement, SymMonomial, parse_sym_element
from pbwstar.bidiff import (
    CapError,
    CoeffTable,
    bp_backend,
    bp_operator,
    c,
    diff_op_residual,
    lemma20_residual,
    lemma21_residual,
)
from pbwstar.freelie import xgens, ygen, ygens

x1, x2, x3 = xgens(3)
y1 = ygen(1)


def sym(*gens):
    return SymMonomial.of_generators(gens)


class TestCoefficients:
    def test_base_row(self):
        assert all(c(0, q) == 1 for q in range(6))

    def test_first_column(self):
        # c_k(0) alternates through the recursion with q = 0
        assert [c(k, 0) for k in range(4)] == [1, 0, 0, 0]

    def test_linear_in_k_one(self):
        assert [c(1, q) for q in range(6)] == [0, -1, -2, -3, -4, -5]

    def test_small_table(self):
        # signed binomial pattern: c_k(q) = (-1)^k C(q+k-1, k)
        assert c(2, 1) == 1
        assert c(2, 2) == 3
        assert c(2, 3) == 6
        assert c(3, 1) == -1
        assert c(3, 2) == -4

    def test_recursion_direct(self):
        # each value makes the defining alternating sum collapse to one
        from math import comb

        for k in range(1, 5):
            for q in range(4):
                total = sum(c(l, q) * comb(q + k, k - l) for l in range(k + 1))
                assert total == 1

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            c(-1, 0)
        with pytest.raises(ValueError):
            c(0, -1)

    def test_table_instances_are_independent(self):
        t = CoeffTable()
        assert t.c(1, 2) == -2
        assert (1, 2) in t.memo


class TestLemma21:
    def test_vanishes_on_grid(self):
        for q in range(1, 7):
            for m in range(7):
                assert lemma21_residual(q, m) == 0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            lemma21_residual(0, 1)
        with pytest.raises(ValueError):
            lemma21_residual(1, -1)


class TestBpBackend:
    def test_unit_conventions(self):
        g = sym(y1)
        assert bp_backend(SymMonomial.unit(), g, 0) == SymElement.from_monomial(g)
        assert bp_backend(g, SymMonomial.unit(), 0) == SymElement.from_monomial(g)
        assert bp_backend(SymMonomial.unit(), g, 1) == SymElement.zero()
        assert bp_backend(SymMonomial.unit(), SymMonomial.unit(), 0) == SymElement.unit()

    def test_backends_agree(self):
        for p in range(3):
            assert bp_backend(sym(x1, x2), sym(y1), p, "formula") == bp_backend(
                sym(x1, x2), sym(y1), p, "oracle"
            )

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            bp_backend(sym(x1), sym(y1), 0, "guess")


class TestLemma20:
    def test_smallest_instance(self):
        assert lemma20_residual(1, 0, 1) == SymElement.zero()

    def test_sweep_both_backends(self):
        for backend in ("formula", "oracle"):
            for p in range(1, 3):
                for q in range(0, 2):
                    for r in range(1, 3):
                        assert lemma20_residual(p, q, r, backend) == SymElement.zero()

    def test_swapped_form(self):
        assert lemma20_residual(2, 1, 2, swapped=True) == SymElement.zero()

    def test_cap(self):
        with pytest.raises(CapError):
            lemma20_residual(3, 3, 2)
        assert lemma20_residual(3, 3, 2, cap=None) == SymElement.zero()

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            lemma20_residual(0, 0, 1)
        with pytest.raises(ValueError):
            lemma20_residual(1, -1, 1)
        with pytest.raises(ValueError):
            lemma20_residual(1, 0, 0)


class TestDiffOpResidual:
    def test_multiplication_operator_has_order_zero(self):
        F = lambda s: SymElement.from_monomial(sym(y1) * s)
        assert diff_op_residual(F, 0, 1, [x1]) == SymElement.zero()
        assert diff_op_residual(F, 0, 2, [x1, x2]) == SymElement.zero()

    def test_frozen_slot_operators_have_expected_order(self):
        a = sym(y1)
        for p in range(0, 3):
            F = bp_operator(a, p, fixed="first")
            assert diff_op_residual(F, p, 1, xgens(p + 1)) == SymElement.zero()

    def test_second_slot_matches(self):
        F = bp_operator(sym(y1), 1, fixed="second")
        assert diff_op_residual(F, 1, 1, xgens(2)) == SymElement.zero()

    def test_order_is_sharp(self):
        # the q = 0 sum is exactly the probe that detects true order p
        F = bp_operator(sym(y1), 1, fixed="first")
        probe = diff_op_residual(F, 0, 1, [x1])
        assert probe == parse_sym_element("1/2·[x1,y1]")

    def test_telescoping_base_case(self):
        F = lambda s: SymElement.from_monomial(s)
        assert diff_op_residual(F, 0, 1, [x1]) == SymElement.zero()

    def test_gens_validation(self):
        F = bp_operator(sym(y1), 1)
        with pytest.raises(ValueError):
            diff_op_residual(F, 1, 1, [x1])
        with pytest.raises(ValueError):
            diff_op_residual(F, 1, 1, [x1, x1])
        with pytest.raises(ValueError):
            diff_op_residual(F, -1, 1, [])

    def test_cap(self):
        F = bp_operator(sym(y1), 4)
        with pytest.raises(CapError):
            diff_op_residual(F, 4, 4, xgens(8))


class TestBpOperator:
    def test_fixed_validation(self):
        with pytest.raises(ValueError):
            bp_operator(sym(y1), 1, fixed="middle")

    def test_slots(self):
        first = bp_operator(sym(y1), 1, fixed="first")
        second = bp_operator(sym(y1), 1, fixed="second")
        assert first(sym(x1)) == parse_sym_element("-1/2·[x1,y1]")
        assert second(sym(x1)) == parse_sym_element("1/2·[x1,y1]")
