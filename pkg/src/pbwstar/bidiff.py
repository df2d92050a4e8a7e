"""Reduction coefficients and the operator-order apparatus.

Three pieces of machinery around the quantized product:

* ``c(k, q)``: the integer reduction coefficients defined by c_0(q) = 1 and

      c_k(q) = 1 - sum_{l<k} c_l(q) * C(q+k, k-l)

* ``lemma20_residual``: left minus right of the first-argument reduction
  identity

      B_p(x_1..x_{p+q}, y_1..y_r)
          = sum_{k=0}^{r-1} c_k(q) sum_{#S=q+k} x_S B_p(x_{S^c}, y_1..y_r)

  with S over subsets of {1..p+q}, x_S the commutative subset product, and
  an optional swapped mode that exchanges both arguments of every B_p call
  (the mirrored identity, equivalent through B_p(b,a) = (-1)^p B_p(a,b)).

* ``diff_op_residual``: the alternating subset sum

      sum_{S subset of {1..p+q}} (-1)^{#S} x_{S^c} F(x_S)

  which vanishes for every q >= 1 exactly when F is a differential operator
  of order <= p.  The q = 0 instance is NOT part of the criterion: it is
  the p-fold commutator with multiplication evaluated at 1, which an
  operator of order exactly p has no reason to kill.  That failure is used
  deliberately as the order-sharpness probe.

Backends: every B_p call goes through the closed bipartition formula or the
straightening oracle, selectable per call.  One-sided products follow the
unit convention B_0(1, g) = g and B_p(1, g) = 0 for p >= 1.

The residual evaluations blow up factorially, so they sit behind a total
degree cap (default 7); exceeding it raises CapError.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .assoc import SymElement, SymMonomial, b_p_oracle
from .bipart import b_p_formula
from .freelie import Generator, xgens, ygens

DEFAULT_CAP = 7

BACKENDS = ("formula", "oracle")


class CapError(Exception):
    """A requested instance exceeds the configured degree cap."""


def _check_cap(total: int, cap: int | None):
    if cap is not None and total > cap:
        raise CapError(f"total degree {total} exceeds cap {cap}")


class CoeffTable:
    """Memoized table of the reduction coefficients."""

    def __init__(self):
        self.memo: dict[tuple[int, int], Fraction] = {}

    def c(self, k: int, q: int) -> Fraction:
        if k < 0 or q < 0:
            raise ValueError("indices must be nonnegative")
        hit = self.memo.get((k, q))
        if hit is None:
            if k == 0:
                hit = Fraction(1)
            else:
                acc = Fraction(1)
                for l in range(k):
                    acc -= self.c(l, q) * comb(q + k, k - l)
                hit = acc
            self.memo[(k, q)] = hit
        return hit


_TABLE = CoeffTable()


def c(k: int, q: int) -> Fraction:
    return _TABLE.c(k, q)


def lemma21_residual(q: int, m: int) -> Fraction:
    """(-1)^m + sum_{t=1}^q C(m+q, m+t) (-1)^t c_m(t); zero when the table is right."""
    if q < 1:
        raise ValueError("q must be positive")
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = Fraction((-1) ** m)
    for t in range(1, q + 1):
        total += comb(m + q, m + t) * Fraction((-1) ** t) * c(m, t)
    return total


def bp_backend(x: SymMonomial, y: SymMonomial, p: int, backend: str = "formula") -> SymElement:
    """B_p through the chosen backend, with the unit convention on empty sides."""
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if x.size == 0 or y.size == 0:
        if p == 0:
            return SymElement.from_monomial(x * y)
        return SymElement.zero()
    if backend == "formula":
        return b_p_formula(x, y, p)
    return b_p_oracle(x, y, p)


def lemma20_residual(
    p: int,
    q: int,
    r: int,
    backend: str = "formula",
    swapped: bool = False,
    cap: int | None = DEFAULT_CAP,
) -> SymElement:
    """Left minus right of the reduction identity; must be the zero element."""
    if p < 1:
        raise ValueError("p must be positive")
    if q < 0:
        raise ValueError("q must be nonnegative")
    if r < 1:
        raise ValueError("r must be positive")
    _check_cap(p + q + r, cap)
    xs = xgens(p + q)
    Y = SymMonomial.of_generators(ygens(r))

    def bp(xpart: SymMonomial) -> SymElement:
        if swapped:
            return bp_backend(Y, xpart, p, backend)
        return bp_backend(xpart, Y, p, backend)

    residual = bp(SymMonomial.of_generators(xs))
    for k in range(r):
        ck = c(k, q)
        if not ck:
            continue
        for chosen in combinations(range(p + q), q + k):
            sel = set(chosen)
            x_s = SymMonomial.of_generators(xs[i] for i in chosen)
            rest = SymMonomial.of_generators(
                xs[i] for i in range(p + q) if i not in sel
            )
            residual = residual - (SymElement.from_monomial(x_s) * bp(rest)).scale(ck)
    return residual


def diff_op_residual(F, p: int, q: int, gens, cap: int | None = DEFAULT_CAP) -> SymElement:
    """Alternating subset sum testing that F has operator order <= p.

    F is any procedure from SymMonomial to SymElement; it is driven on the
    2^(p+q) subset products of `gens`.  Zero for every choice of p+q
    distinct generators with q >= 1 certifies the order bound; q = 0 is
    accepted but tests something strictly stronger (see module docstring).
    """
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    gens = tuple(gens)
    if len(gens) != p + q:
        raise ValueError(f"expected {p + q} generators, got {len(gens)}")
    if len(set(gens)) != len(gens):
        raise ValueError("generators must be distinct")
    _check_cap(len(gens), cap)
    total = SymElement.zero()
    for size in range(len(gens) + 1):
        sign = Fraction((-1) ** size)
        for chosen in combinations(range(len(gens)), size):
            sel = set(chosen)
            inside = SymMonomial.of_generators(gens[i] for i in chosen)
            outside = SymMonomial.of_generators(
                gens[i] for i in range(len(gens)) if i not in sel
            )
            total = total + (SymElement.from_monomial(outside) * F(inside)).scale(sign)
    return total


def bp_operator(a: SymMonomial, p: int, fixed: str = "first", backend: str = "formula"):
    """The one-argument operator obtained by freezing one slot of B_p.

    fixed="first" gives s -> B_p(a, s); fixed="second" gives s -> B_p(s, a).
    """
    if fixed not in ("first", "second"):
        raise ValueError("fixed must be 'first' or 'second'")

    def F(s: SymMonomial) -> SymElement:
        if fixed == "first":
            return bp_backend(a, s, p, backend)
        return bp_backend(s, a, p, backend)

    return F
