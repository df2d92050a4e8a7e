"""Exact arithmetic in the free Lie algebra over a two-family alphabet.

Generators come in two families with a global order

    x1 < x2 < ... < y1 < y2 < ...

(every x-generator precedes every y-generator, indices order each family).
Elements are finite rational linear combinations of basis monomials, with
``fractions.Fraction`` coefficients throughout; no floating point anywhere.

The basis is the Lyndon basis: a bracket monomial is *canonical* when its
leaf word is a Lyndon word and its bracketing is the standard factorization
of that word, recursively.  Canonical forms make equality structural, so two
elements are equal exactly when their term maps coincide.

Normalization of an arbitrary bracket tree goes through the associative
envelope: expand the tree into words by the commutator rule, then repeatedly
peel the lexicographically least word.  For a Lie element that word is
always Lyndon, and the expansion of its standard bracketing has that word
with coefficient one while every other word is lexicographically greater,
so the peel strictly increases the least word and terminates.

All values here are immutable.  Module-level memo tables are append-only,
which keeps concurrent readers safe; a per-thread table would honor the
same contract.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

X_SIDE = "x"
Y_SIDE = "y"

_SIDE_RANK = {X_SIDE: 0, Y_SIDE: 1}


@dataclass(frozen=True)
class Generator:
    """A single alphabet letter, e.g. x3 or y1."""

    side: str
    index: int

    def __post_init__(self):
        if self.side not in _SIDE_RANK:
            raise ValueError(f"unknown generator family {self.side!r}")
        if self.index < 1:
            raise ValueError(f"generator index must be positive, got {self.index}")

    @property
    def key(self) -> tuple[int, int]:
        return (_SIDE_RANK[self.side], self.index)

    def __lt__(self, other: "Generator") -> bool:
        return self.key < other.key

    def __le__(self, other: "Generator") -> bool:
        return self.key <= other.key

    def __str__(self) -> str:
        return f"{self.side}{self.index}"

    def __repr__(self) -> str:
        return f"Generator({self.side!r}, {self.index})"


def xgen(i: int) -> Generator:
    return Generator(X_SIDE, i)


def ygen(i: int) -> Generator:
    return Generator(Y_SIDE, i)


def xgens(n: int) -> tuple[Generator, ...]:
    return tuple(xgen(i) for i in range(1, n + 1))


def ygens(m: int) -> tuple[Generator, ...]:
    return tuple(ygen(i) for i in range(1, m + 1))


class LieMonomial:
    """An iterated bracket of generators, kept as a binary tree.

    Leaves hold a single generator; internal nodes are brackets of their two
    children.  ``word`` is the foliage, the left-to-right tuple of leaf
    generators.  Monomials compare by (degree, word, tree shape), which is a
    total order and restricts to (degree, word) on canonical monomials since
    a Lyndon word determines its standard bracketing.
    """

    __slots__ = ("gen", "left", "right", "word", "_hash", "_key", "_canonical")

    def __init__(self, gen=None, left=None, right=None):
        # Use the leaf()/bracket_of() constructors rather than this directly.
        self.gen = gen
        self.left = left
        self.right = right
        if gen is not None:
            self.word = (gen,)
        else:
            self.word = left.word + right.word
        self._hash = None
        self._key = None
        self._canonical = None

    @staticmethod
    def leaf(gen: Generator) -> "LieMonomial":
        return LieMonomial(gen=gen)

    @staticmethod
    def bracket_of(left: "LieMonomial", right: "LieMonomial") -> "LieMonomial":
        return LieMonomial(left=left, right=right)

    @property
    def is_leaf(self) -> bool:
        return self.gen is not None

    @property
    def degree(self) -> int:
        return len(self.word)

    def _shape(self) -> tuple[int, ...]:
        if self.is_leaf:
            return (0,)
        return (1,) + self.left._shape() + self.right._shape()

    @property
    def key(self):
        if self._key is None:
            words = tuple(g.key for g in self.word)
            self._key = (len(self.word), words, self._shape())
        return self._key

    def __lt__(self, other: "LieMonomial") -> bool:
        return self.key < other.key

    def __le__(self, other: "LieMonomial") -> bool:
        return self.key <= other.key

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, LieMonomial):
            return NotImplemented
        if self.word != other.word:
            return False
        return self.key == other.key

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_leaf:
                self._hash = hash(("leaf", self.gen))
            else:
                self._hash = hash(("node", self.left, self.right))
        return self._hash

    def is_canonical(self) -> bool:
        """True when this tree is the standard bracketing of a Lyndon word."""
        if self._canonical is None:
            if self.is_leaf:
                self._canonical = True
            elif not is_lyndon(self.word):
                self._canonical = False
            else:
                u, v = standard_factorization(self.word)
                self._canonical = (
                    self.left.word == u
                    and self.right.word == v
                    and self.left.is_canonical()
                    and self.right.is_canonical()
                )
        return self._canonical

    def __str__(self) -> str:
        if self.is_leaf:
            return str(self.gen)
        return f"[{self.left},{self.right}]"

    def __repr__(self) -> str:
        return f"<LieMonomial {self}>"


def _word_key(word: Sequence[Generator]) -> tuple:
    return tuple(g.key for g in word)


def is_lyndon(word: Sequence[Generator]) -> bool:
    """A nonempty word is Lyndon when it is strictly less than every proper suffix."""
    w = _word_key(word)
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(word: Sequence[Generator]) -> tuple[tuple, tuple]:
    """Split a Lyndon word of length >= 2 as (u, v), v the longest proper Lyndon suffix."""
    word = tuple(word)
    if len(word) < 2 or not is_lyndon(word):
        raise ValueError(f"not a Lyndon word of length >= 2: {word}")
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise AssertionError("unreachable: every final letter is Lyndon")


_STD_BRACKET: dict[tuple, LieMonomial] = {}


def standard_bracketing(word: Sequence[Generator]) -> LieMonomial:
    """The canonical monomial attached to a Lyndon word."""
    word = tuple(word)
    hit = _STD_BRACKET.get(word)
    if hit is not None:
        return hit
    if len(word) == 1:
        mono = LieMonomial.leaf(word[0])
    else:
        u, v = standard_factorization(word)
        mono = LieMonomial.bracket_of(standard_bracketing(u), standard_bracketing(v))
    _STD_BRACKET[word] = mono
    return mono


def lyndon_basis(gens: Sequence[Generator], degree: int) -> list[LieMonomial]:
    """All canonical monomials of exactly the given degree over the given letters."""
    gens = sorted(set(gens))
    out = []
    for word in product(gens, repeat=degree):
        if is_lyndon(word):
            out.append(standard_bracketing(word))
    out.sort(key=lambda m: m.key)
    return out


# Words of the associative envelope, used for normalization.  Keys are tuples
# of generators; values are Fractions.

_EXPAND: dict[LieMonomial, dict] = {}


def word_expansion(mono: LieMonomial) -> dict[tuple[Generator, ...], Fraction]:
    """Commutator expansion of a bracket tree into generator words."""
    hit = _EXPAND.get(mono)
    if hit is not None:
        return hit
    if mono.is_leaf:
        out = {(mono.gen,): Fraction(1)}
    else:
        lw = word_expansion(mono.left)
        rw = word_expansion(mono.right)
        out = {}
        for wl, cl in lw.items():
            for wr, cr in rw.items():
                c = cl * cr
                key = wl + wr
                out[key] = out.get(key, Fraction(0)) + c
                key = wr + wl
                out[key] = out.get(key, Fraction(0)) - c
        out = {wd: c for wd, c in out.items() if c}
    _EXPAND[mono] = out
    return out


class LieElement:
    """A finite rational combination of canonical monomials.

    The term map is treated as immutable; arithmetic builds new elements.
    Elements produced by this module only carry canonical monomial keys, so
    ``==`` is exact mathematical equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[LieMonomial, Fraction]):
        self.terms = {m: c for m, c in terms.items() if c}

    @staticmethod
    def zero() -> "LieElement":
        return LieElement({})

    @staticmethod
    def from_monomial(mono: LieMonomial, coeff=1) -> "LieElement":
        return LieElement({mono: Fraction(coeff)})

    @staticmethod
    def from_generator(gen: Generator, coeff=1) -> "LieElement":
        return LieElement.from_monomial(LieMonomial.leaf(gen), coeff)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return LieElement(out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return LieElement(out)

    def __neg__(self) -> "LieElement":
        return LieElement({m: -c for m, c in self.terms.items()})

    def scale(self, scalar) -> "LieElement":
        scalar = Fraction(scalar)
        if not scalar:
            return LieElement.zero()
        return LieElement({m: c * scalar for m, c in self.terms.items()})

    __mul__ = scale
    __rmul__ = scale

    def items(self):
        return self.terms.items()

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def __str__(self) -> str:
        return render_terms(
            [(mono, coeff) for mono, coeff in sorted(self.terms.items(), key=lambda t: t[0].key)],
            str,
        )

    def __repr__(self) -> str:
        return f"<LieElement {self}>" if self.terms else "<LieElement 0>"


def render_terms(pairs, show) -> str:
    """Shared +/- pretty-printer: pairs of (thing, coeff), show renders the thing."""
    if not pairs:
        return "0"
    chunks = []
    for thing, coeff in pairs:
        body = show(thing)
        mag = abs(coeff)
        if body == "":
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}·{body}"
        if not chunks:
            chunks.append(piece if coeff > 0 else f"-{piece}")
        else:
            chunks.append(f"+ {piece}" if coeff > 0 else f"- {piece}")
    return " ".join(chunks)


_NORMALIZE: dict[LieMonomial, LieElement] = {}


def normalize(mono: LieMonomial) -> LieElement:
    """Rewrite one bracket monomial into the Lyndon basis."""
    hit = _NORMALIZE.get(mono)
    if hit is not None:
        return hit
    if mono.is_canonical():
        result = LieElement.from_monomial(mono)
    else:
        u = dict(word_expansion(mono))
        out: dict[LieMonomial, Fraction] = {}
        while u:
            least = min(u, key=_word_key)
            coeff = u[least]
            basis = standard_bracketing(least)
            out[basis] = out.get(basis, Fraction(0)) + coeff
            for wd, c in word_expansion(basis).items():
                nxt = u.get(wd, Fraction(0)) - coeff * c
                if nxt:
                    u[wd] = nxt
                else:
                    u.pop(wd, None)
        result = LieElement(out)
    _NORMALIZE[mono] = result
    return result


def normalize_element(el: LieElement) -> LieElement:
    out = LieElement.zero()
    for m, c in el.items():
        out = out + normalize(m).scale(c)
    return out


_PAIR_BRACKET: dict[tuple[LieMonomial, LieMonomial], LieElement] = {}


def bracket_monomials(a: LieMonomial, b: LieMonomial) -> LieElement:
    if a == b:
        return LieElement.zero()
    hit = _PAIR_BRACKET.get((a, b))
    if hit is not None:
        return hit
    result = normalize(LieMonomial.bracket_of(a, b))
    _PAIR_BRACKET[(a, b)] = result
    return result


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """The Lie bracket, bilinear over canonical term maps."""
    out: dict[LieMonomial, Fraction] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            c = ca * cb
            for m, k in bracket_monomials(ma, mb).items():
                out[m] = out.get(m, Fraction(0)) + c * k
    return LieElement(out)


@dataclass(frozen=True)
class MultiIndex:
    """An injective tuple of positive alphabet indices on one side."""

    entries: tuple[int, ...]
    side: str

    def __post_init__(self):
        if self.side not in _SIDE_RANK:
            raise ValueError(f"unknown side {self.side!r}")
        if any(i < 1 for i in self.entries):
            raise ValueError(f"indices must be positive: {self.entries}")
        if len(set(self.entries)) != len(self.entries):
            raise ValueError(f"multi-index must be injective: {self.entries}")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.entries)


def ad_chain(alpha: MultiIndex, target: LieElement, alphabet_size: int | None = None) -> LieElement:
    """Apply ad(g_{a1}) o ... o ad(g_{ap}) to the target, letters taken from alpha.side."""
    if alphabet_size is not None:
        for i in alpha.entries:
            if i > alphabet_size:
                raise IndexError(f"index {i} outside alphabet of size {alphabet_size}")
    out = target
    for i in reversed(alpha.entries):
        out = bracket(LieElement.from_generator(Generator(alpha.side, i)), out)
    return out


# ---------------------------------------------------------------------------
# text round-trip

_GEN_RE = re.compile(r"^([xy])([1-9][0-9]*)$")


def parse_generator(text: str) -> Generator:
    m = _GEN_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a generator name: {text!r}")
    return Generator(m.group(1), int(m.group(2)))


def parse_monomial(text: str) -> LieMonomial:
    """Parse bracket syntax like ``[x1,[x2,y1]]`` or a bare generator."""
    text = text.strip()
    if not text.startswith("["):
        return LieMonomial.leaf(parse_generator(text))
    if not text.endswith("]"):
        raise ValueError(f"unbalanced bracket in {text!r}")
    inner = text[1:-1]
    depth = 0
    for pos, ch in enumerate(inner):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            left = parse_monomial(inner[:pos])
            right = parse_monomial(inner[pos + 1 :])
            return LieMonomial.bracket_of(left, right)
    raise ValueError(f"missing top-level comma in {text!r}")


def _split_signed_terms(text: str) -> Iterator[tuple[int, str]]:
    """Yield (sign, chunk) pieces of a +/- separated expression, bracket aware."""
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    sign = 1
    buf = []
    depth = 0
    start = True
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and not start:
            chunk = "".join(buf).strip()
            if not chunk:
                raise ValueError("empty term between signs")
            yield sign, chunk
            sign = 1 if ch == "+" else -1
            buf = []
            continue
        if start and ch in "+-":
            sign = 1 if ch == "+" else -1
            start = False
            continue
        if not ch.isspace():
            start = False
        buf.append(ch)
    chunk = "".join(buf).strip()
    if chunk:
        yield sign, chunk


_COEFF_RE = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


def split_coefficient(chunk: str) -> tuple[Fraction, str]:
    """Split ``1/2·rest`` into (Fraction(1,2), "rest"); bare chunks get coefficient 1."""
    depth = 0
    for pos, ch in enumerate(chunk):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "·" and depth == 0:
            head = chunk[:pos].strip()
            if _COEFF_RE.match(head):
                return Fraction(head), chunk[pos + 1 :].strip()
            break
    if _COEFF_RE.match(chunk.strip()):
        return Fraction(chunk.strip()), ""
    return Fraction(1), chunk.strip()


def parse_element(text: str) -> LieElement:
    """Parse the renderer's output: signed ``coeff·monomial`` terms."""
    if text.strip() == "0":
        return LieElement.zero()
    out: dict[LieMonomial, Fraction] = {}
    for sign, chunk in _split_signed_terms(text):
        coeff, body = split_coefficient(chunk)
        if body == "":
            raise ValueError(f"term without a monomial: {chunk!r}")
        mono = parse_monomial(body)
        nf = normalize(mono)
        for m, c in nf.items():
            out[m] = out.get(m, Fraction(0)) + sign * coeff * c
    return LieElement(out)
