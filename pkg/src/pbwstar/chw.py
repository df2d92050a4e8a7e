"""Multilinear Hausdorff components by direct chain enumeration.

For disjoint index sets A (x-side) and B (y-side), ``w(A, B)`` is the
coefficient of the square-free word class tagged (A, B) in
log(exp(x_1+...+x_n) exp(y_1+...+y_m)), as a canonical Lie element.  It is
computed from the 1/N-normalized Dynkin expansion: every contributing
right-nested bracket ends in a single innermost letter (a repeated innermost
run brackets to zero), so the sum splits into chains with a y pivot and
chains with an x pivot.

A chain is a sequence of alternating blocks of injective multi-indices

    y pivot:  alpha_1 beta_1 alpha_2 ... beta_{p-1} alpha_p   applied to y_k
    x pivot:  alpha_1 beta_1 ... alpha_{p-1} beta_{p-1}       applied to x_k

where the alphas draw x-indices and the betas y-indices, the blocks are
pairwise disjoint and together with the pivot exhaust A and B, each pair
(alpha_i, beta_i) with i < p is nonempty, and the final alpha block of the
y-pivot family may be empty.  Each ordering of each block is enumerated
separately and the weight divides by the block factorials:

    weight = (-1)^(p+1) / (p * prod |alpha_i|! * prod |beta_j|!)

and the whole sum carries the prefactor 1/(n+m).

The one-sided cases w({a}, {}) and w({}, {b}) are the bare generator; any
other one-sided or empty input is rejected as undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .freelie import (
    Generator,
    LieElement,
    LieMonomial,
    MultiIndex,
    X_SIDE,
    Y_SIDE,
    normalize,
    xgen,
    ygen,
)


class PivotSide(Enum):
    """Which alphabet supplies the innermost chain letter."""

    X = "x"
    Y = "y"


@dataclass(frozen=True)
class ChainTerm:
    """One fully ordered chain together with its position in the expansion."""

    pivot_side: PivotSide
    p: int
    alphas: tuple[MultiIndex, ...]
    betas: tuple[MultiIndex, ...]
    pivot: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be positive")
        want_alphas = self.p if self.pivot_side is PivotSide.Y else self.p - 1
        if len(self.alphas) != want_alphas or len(self.betas) != self.p - 1:
            raise ValueError("block counts do not match p")

    @property
    def weight(self) -> Fraction:
        den = self.p
        for a in self.alphas:
            den *= factorial(len(a))
        for b in self.betas:
            den *= factorial(len(b))
        return Fraction((-1) ** (self.p + 1), den)

    def letters(self) -> tuple[Generator, ...]:
        """The chain letters outside the pivot, outermost first."""
        out: list[Generator] = []
        for i in range(self.p - 1):
            out.extend(xgen(j) for j in self.alphas[i].entries)
            out.extend(ygen(j) for j in self.betas[i].entries)
        if self.pivot_side is PivotSide.Y:
            out.extend(xgen(j) for j in self.alphas[-1].entries)
        return tuple(out)

    def evaluate(self) -> LieElement:
        """The right-nested bracketing of the chain applied to the pivot."""
        side = X_SIDE if self.pivot_side is PivotSide.X else Y_SIDE
        tree = LieMonomial.leaf(Generator(side, self.pivot))
        for g in reversed(self.letters()):
            tree = LieMonomial.bracket_of(LieMonomial.leaf(g), tree)
        return normalize(tree)


def _block_assignments(indices, blocks: int):
    """All ways to split a set into `blocks` disjoint ordered sequences.

    Yields tuples of index tuples; empty blocks are allowed and every
    ordering of every block appears exactly once.
    """
    items = sorted(indices)
    if blocks == 0:
        if items:
            return
        yield ()
        return
    for placement in product(range(blocks), repeat=len(items)):
        grouped: list[list[int]] = [[] for _ in range(blocks)]
        for item, slot in zip(items, placement):
            grouped[slot].append(item)
        for ordered in product(*(permutations(g) for g in grouped)):
            yield tuple(ordered)


def enumerate_chains(n: int, m: int, pivot_side: PivotSide):
    """Yield every admissible ChainTerm for full index sets {1..n}, {1..m}.

    Both sides must be nonempty here; the one-sided values never reach the
    chain sum.
    """
    if n < 1 or m < 1:
        raise ValueError("chain enumeration needs at least one index on each side")
    if pivot_side is PivotSide.Y:
        pool_x, pool_y, pivots = set(range(1, n + 1)), set(range(1, m + 1)), range(1, m + 1)
    elif pivot_side is PivotSide.X:
        pool_x, pool_y, pivots = set(range(1, n + 1)), set(range(1, m + 1)), range(1, n + 1)
    else:
        raise ValueError(f"unknown pivot side: {pivot_side!r}")
    for k in pivots:
        if pivot_side is PivotSide.Y:
            xs, ys = pool_x, pool_y - {k}
        else:
            xs, ys = pool_x - {k}, pool_y
        # p-1 nonempty pairs fit inside the available letters
        for p in range(1, len(xs) + len(ys) + 2):
            alpha_blocks = p if pivot_side is PivotSide.Y else p - 1
            for alphas in _block_assignments(xs, alpha_blocks):
                for betas in _block_assignments(ys, p - 1):
                    if any(
                        not alphas[i] and not betas[i] for i in range(p - 1)
                    ):
                        continue
                    yield ChainTerm(
                        pivot_side=pivot_side,
                        p=p,
                        alphas=tuple(MultiIndex(a, X_SIDE) for a in alphas),
                        betas=tuple(MultiIndex(b, Y_SIDE) for b in betas),
                        pivot=k,
                    )


_W_CACHE: dict[tuple[tuple[int, ...], tuple[int, ...]], LieElement] = {}


def chain_sum(n: int, m: int, pivot_side: PivotSide) -> LieElement:
    """Weighted sum of one pivot family, before the 1/(n+m) prefactor."""
    out = LieElement.zero()
    for term in enumerate_chains(n, m, pivot_side):
        out = out + term.evaluate().scale(term.weight)
    return out


def w(A, B) -> LieElement:
    """The multilinear Hausdorff component for x-indices A and y-indices B."""
    raw_a, raw_b = tuple(A), tuple(B)
    xs = tuple(sorted(set(raw_a)))
    ys = tuple(sorted(set(raw_b)))
    if len(xs) != len(raw_a) or len(ys) != len(raw_b):
        raise ValueError("index sets must not repeat entries")
    if any(i < 1 for i in xs + ys):
        raise ValueError("indices are 1-based")
    hit = _W_CACHE.get((xs, ys))
    if hit is not None:
        return hit
    n, m = len(xs), len(ys)
    if n == 1 and m == 0:
        result = LieElement.from_generator(xgen(xs[0]))
    elif n == 0 and m == 1:
        result = LieElement.from_generator(ygen(ys[0]))
    elif n >= 1 and m >= 1:
        result = _w_full(n, m)
        result = rename(result, _relabel_map(xs, ys))
    else:
        raise ValueError(
            f"w is undefined for {n} x-indices and {m} y-indices: "
            "need both sides nonempty, or a lone singleton"
        )
    _W_CACHE[(xs, ys)] = result
    return result


_W_FULL: dict[tuple[int, int], LieElement] = {}


def _w_full(n: int, m: int) -> LieElement:
    """w on the contiguous index sets {1..n}, {1..m}."""
    hit = _W_FULL.get((n, m))
    if hit is None:
        total = chain_sum(n, m, PivotSide.Y) + chain_sum(n, m, PivotSide.X)
        hit = total.scale(Fraction(1, n + m))
        _W_FULL[(n, m)] = hit
    return hit


def _relabel_map(xs: tuple[int, ...], ys: tuple[int, ...]) -> dict[Generator, Generator]:
    out = {xgen(i + 1): xgen(v) for i, v in enumerate(xs)}
    out.update({ygen(j + 1): ygen(v) for j, v in enumerate(ys)})
    return out


def rename(el: LieElement, mapping: dict[Generator, Generator]) -> LieElement:
    """Apply a generator substitution and restore canonical form."""
    out = LieElement.zero()
    for mono, coeff in el.items():
        out = out + normalize(_rename_mono(mono, mapping)).scale(coeff)
    return out


def _rename_mono(mono: LieMonomial, mapping: dict[Generator, Generator]) -> LieMonomial:
    if mono.is_leaf:
        return LieMonomial.leaf(mapping.get(mono.gen, mono.gen))
    return LieMonomial.bracket_of(
        _rename_mono(mono.left, mapping), _rename_mono(mono.right, mapping)
    )
