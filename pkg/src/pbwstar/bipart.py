"""Special bipartitions and the closed quantization formula.

A bipartition of the index pair ({1..n}, {1..m}) is a set of parts (S, T),
coordinate-wise disjoint and covering.  It is special when every part is an
admissible input to ``chw.w``: one-sided parts must be singletons.  The
closed formula for the component that lowers the factor count by p is

    sum over special bipartitions pi with n+m-p parts of
        prod over (S, T) in pi of  w(S, T)

a commutative product of Lie elements, hence a SymElement homogeneous of
word degree n+m and of size n+m-p.

``b_p_formula`` evaluates this on two square-free monomials of generator
letters.  Positions decide the roles: the first argument's letters are the
x-family of the sum, the second argument's the y-family, whatever their
names.  Values on the contiguous canonical alphabets are cached by shape
(n, m, p) and transported to the actual letters by substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .chw import rename, w
from .freelie import Generator, LieElement, normalize, xgen, ygen
from .assoc import SymElement, SymMonomial


@dataclass(frozen=True)
class Part:
    """One (S, T) pair; one-sided parts must be singletons."""

    S: frozenset[int]
    T: frozenset[int]

    def __post_init__(self):
        if not self.S and not self.T:
            raise ValueError("a part cannot be empty on both sides")
        if not self.T and len(self.S) != 1:
            raise ValueError("a part with no y-indices must be an x-singleton")
        if not self.S and len(self.T) != 1:
            raise ValueError("a part with no x-indices must be a y-singleton")

    def value(self) -> LieElement:
        return w(self.S, self.T)

    def __str__(self) -> str:
        fmt = lambda s: "{" + ",".join(str(i) for i in sorted(s)) + "}"
        return f"({fmt(self.S)},{fmt(self.T)})"


Bipartition = frozenset[Part]


def special_bipartitions(n: int, m: int, size: int):
    """Yield every special bipartition of ({1..n}, {1..m}) with `size` parts.

    The part containing the least uncovered index is chosen at each step,
    which emits each unordered set of parts exactly once.
    """
    if n < 1 or m < 1:
        raise ValueError("both index sets must be nonempty")
    yield from _extend(
        frozenset(range(1, n + 1)), frozenset(range(1, m + 1)), size, ()
    )


def _extend(rem_x: frozenset[int], rem_y: frozenset[int], parts_left: int, acc):
    if parts_left <= 0:
        if not rem_x and not rem_y:
            yield frozenset(acc)
        return
    if len(rem_x) + len(rem_y) < parts_left:
        return
    if not rem_x and not rem_y:
        return
    if rem_x:
        i = min(rem_x)
        others = sorted(rem_x - {i})
        ys = sorted(rem_y)
        for sk in range(len(others) + 1):
            for extra in combinations(others, sk):
                S = frozenset((i,) + extra)
                for tk in range(len(ys) + 1):
                    if tk == 0 and len(S) != 1:
                        continue
                    for sub in combinations(ys, tk):
                        part = Part(S, frozenset(sub))
                        yield from _extend(
                            rem_x - S, rem_y - part.T, parts_left - 1, acc + (part,)
                        )
    else:
        # only y-indices left: every remaining part is a y-singleton
        if parts_left != len(rem_y):
            return
        parts = tuple(Part(frozenset(), frozenset({j})) for j in sorted(rem_y))
        yield frozenset(acc + parts)


_SHAPE_CACHE: dict[tuple[int, int, int], SymElement] = {}


def _formula_on_canon(n: int, m: int, p: int) -> SymElement:
    """The formula on the contiguous alphabets x_1..x_n, y_1..y_m."""
    hit = _SHAPE_CACHE.get((n, m, p))
    if hit is not None:
        return hit
    size = n + m - p
    total = SymElement.zero()
    if size >= 1:
        for pi in special_bipartitions(n, m, size):
            prod = SymElement.unit()
            for part in pi:
                prod = prod * SymElement.from_lie(part.value())
            total = total + prod
    _SHAPE_CACHE[(n, m, p)] = total
    return total


def _leaf_letters(mono: SymMonomial) -> tuple[Generator, ...]:
    letters = []
    for f in mono.factors:
        if not f.is_leaf:
            raise ValueError(f"factor is not a single generator: {f}")
        letters.append(f.gen)
    return tuple(letters)


def b_p_formula(x: SymMonomial, y: SymMonomial, p: int) -> SymElement:
    """Closed-formula value of the p-th quantization component.

    Both arguments must be products of distinct generator letters with no
    letter shared between them.  The first argument's letters play the
    x-role regardless of their side, so swapped evaluations are legal.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    lx = _leaf_letters(x)
    ly = _leaf_letters(y)
    if len(set(lx + ly)) != len(lx) + len(ly):
        raise ValueError("arguments must be square-free with disjoint letters")
    n, m = len(lx), len(ly)
    if n == 0 or m == 0:
        raise ValueError("the formula needs at least one letter on each side")
    canon = _formula_on_canon(n, m, p)
    mapping = {xgen(i + 1): g for i, g in enumerate(lx)}
    mapping.update({ygen(j + 1): g for j, g in enumerate(ly)})
    if all(src == dst for src, dst in mapping.items()):
        return canon
    return rename_sym(canon, mapping)


def rename_sym(el: SymElement, mapping: dict[Generator, Generator]) -> SymElement:
    """Substitute generators inside every Lie factor and re-expand."""
    out = SymElement.zero()
    for mono, coeff in el.items():
        prod = SymElement.unit(coeff)
        for f in mono.factors:
            prod = prod * SymElement.from_lie(
                rename(LieElement.from_monomial(f), mapping)
            )
        out = out + prod
    return out
