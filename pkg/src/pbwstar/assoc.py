"""The associative envelope and the brute-force quantized product.

Two commutative/associative layers sit over the free Lie algebra of
``freelie``:

* ``SymMonomial``/``SymElement``: the polynomial algebra whose variables are
  canonical Lie monomials (the symmetric algebra).  The degree of a monomial
  is its number of factors; the word degree is the total generator count.

* ``AssocWord``/``AssocElement``: the enveloping algebra, represented by
  words whose letters are canonical Lie monomials, multiplied by
  concatenation.  Words in sorted letter order form the PBW basis;
  ``straighten`` rewrites any word into it with the commutation rule
  a b = b a + [a, b].

The symmetrization map ``symmetrize`` averages the orderings of a
commutative monomial.  It is triangular for the letter-count filtration:
straightened, e(m) is the sorted word of m plus words with fewer letters.
``e_inverse`` inverts it by peeling the top letter count, which is what
makes the transported product

    b_oracle(x, y) = e_inverse(symmetrize(x) * symmetrize(y))

computable with no formula input at all.  ``b_p_oracle`` extracts its
homogeneous component that lowers the factor count by p.

``ch_log`` is the second, independent oracle: the logarithm of a product of
two truncated exponentials in a square-free tensor algebra, whose
coefficients are the multilinear Hausdorff components.  ``lie_project``
sends a primitive associative element back to the Lie side by the
right-nested bracketing divided by the degree, and verifies its answer by
re-embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .freelie import (
    Generator,
    LieElement,
    LieMonomial,
    bracket_monomials,
    normalize,
    render_terms,
    word_expansion,
)

AssocWord = tuple[LieMonomial, ...]


class SymMonomial:
    """A commutative product of canonical Lie monomials, kept sorted."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors):
        factors = tuple(sorted(factors, key=lambda m: m.key))
        for f in factors:
            if not f.is_canonical():
                raise ValueError(f"factor is not in canonical form: {f}")
        self.factors = factors
        self._hash = None

    @staticmethod
    def unit() -> "SymMonomial":
        return SymMonomial(())

    @staticmethod
    def of_generators(gens) -> "SymMonomial":
        return SymMonomial(tuple(LieMonomial.leaf(g) for g in gens))

    @property
    def size(self) -> int:
        """Number of factors; the grading the quantized product filters by."""
        return len(self.factors)

    @property
    def degree(self) -> int:
        """Total generator count over all factors."""
        return sum(f.degree for f in self.factors)

    @property
    def key(self):
        return (len(self.factors), tuple(f.key for f in self.factors))

    def __mul__(self, other: "SymMonomial") -> "SymMonomial":
        return SymMonomial(self.factors + other.factors)

    def __eq__(self, other):
        if not isinstance(other, SymMonomial):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.factors)
        return self._hash

    def __lt__(self, other: "SymMonomial") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "·".join(str(f) for f in self.factors)

    def __repr__(self) -> str:
        return f"<SymMonomial {self}>"


class SymElement:
    """Rational combination of SymMonomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[SymMonomial, Fraction]):
        self.terms = {m: c for m, c in terms.items() if c}

    @staticmethod
    def zero() -> "SymElement":
        return SymElement({})

    @staticmethod
    def unit(coeff=1) -> "SymElement":
        return SymElement({SymMonomial.unit(): Fraction(coeff)})

    @staticmethod
    def from_monomial(mono: SymMonomial, coeff=1) -> "SymElement":
        return SymElement({mono: Fraction(coeff)})

    @staticmethod
    def from_lie(el: LieElement) -> "SymElement":
        return SymElement({SymMonomial((m,)): c for m, c in el.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SymElement") -> "SymElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SymElement(out)

    def __sub__(self, other: "SymElement") -> "SymElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return SymElement(out)

    def __neg__(self) -> "SymElement":
        return SymElement({m: -c for m, c in self.terms.items()})

    def scale(self, scalar) -> "SymElement":
        scalar = Fraction(scalar)
        if not scalar:
            return SymElement.zero()
        return SymElement({m: c * scalar for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymElement):
            out: dict[SymMonomial, Fraction] = {}
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    m = ma * mb
                    out[m] = out.get(m, Fraction(0)) + ca * cb
            return SymElement(out)
        return self.scale(other)

    __rmul__ = scale

    def items(self):
        return self.terms.items()

    def component(self, size: int) -> "SymElement":
        """Terms with exactly the given factor count."""
        return SymElement({m: c for m, c in self.terms.items() if m.size == size})

    def sizes(self) -> set[int]:
        return {m.size for m in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].key)

    def __str__(self) -> str:
        return render_terms(
            self.sorted_terms(), lambda m: str(m) if m.size else ""
        )

    def __repr__(self) -> str:
        return f"<SymElement {self}>"


class AssocElement:
    """Rational combination of concatenation words with Lie-monomial letters."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[AssocWord, Fraction]):
        self.terms = {w: c for w, c in terms.items() if c}

    @staticmethod
    def zero() -> "AssocElement":
        return AssocElement({})

    @staticmethod
    def unit(coeff=1) -> "AssocElement":
        return AssocElement({(): Fraction(coeff)})

    @staticmethod
    def from_word(word: AssocWord, coeff=1) -> "AssocElement":
        return AssocElement({tuple(word): Fraction(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AssocElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "AssocElement") -> "AssocElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return AssocElement(out)

    def __sub__(self, other: "AssocElement") -> "AssocElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) - c
        return AssocElement(out)

    def scale(self, scalar) -> "AssocElement":
        scalar = Fraction(scalar)
        if not scalar:
            return AssocElement.zero()
        return AssocElement({w: c * scalar for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AssocElement):
            out: dict[AssocWord, Fraction] = {}
            for wa, ca in self.terms.items():
                for wb, cb in other.terms.items():
                    w = wa + wb
                    out[w] = out.get(w, Fraction(0)) + ca * cb
            return AssocElement(out)
        return self.scale(other)

    __rmul__ = scale

    def items(self):
        return self.terms.items()

    def expand(self) -> "AssocElement":
        out: dict[AssocWord, Fraction] = {}
        for w, c in self.terms.items():
            for ew, ec in _expand_word(w).items():
                out[ew] = out.get(ew, Fraction(0)) + c * ec
        return AssocElement(out)

    def straighten(self) -> "AssocElement":
        out: dict[AssocWord, Fraction] = {}
        for w, c in self.terms.items():
            for sw, sc in _straighten_word(w).items():
                out[sw] = out.get(sw, Fraction(0)) + c * sc
        return AssocElement(out)

    def __str__(self) -> str:
        pairs = sorted(
            self.terms.items(), key=lambda t: (len(t[0]), tuple(m.key for m in t[0]))
        )
        return render_terms(pairs, lambda w: " ".join(str(m) for m in w) if w else "")

    def __repr__(self) -> str:
        return f"<AssocElement {self}>"


_EXPANDED_WORDS: dict[AssocWord, dict[AssocWord, Fraction]] = {}


def _expand_word(word: AssocWord) -> dict[AssocWord, Fraction]:
    """Rewrite every letter as a combination of generator words."""
    hit = _EXPANDED_WORDS.get(word)
    if hit is not None:
        return hit
    out = {(): Fraction(1)}
    for letter in word:
        piece = {
            tuple(LieMonomial.leaf(g) for g in gw): c
            for gw, c in word_expansion(letter).items()
        }
        nxt: dict[AssocWord, Fraction] = {}
        for wa, ca in out.items():
            for wb, cb in piece.items():
                w = wa + wb
                nxt[w] = nxt.get(w, Fraction(0)) + ca * cb
        out = nxt
    _EXPANDED_WORDS[word] = out
    return out


_STRAIGHT: dict[AssocWord, dict[AssocWord, Fraction]] = {}


def _straighten_word(word: AssocWord) -> dict[AssocWord, Fraction]:
    """PBW normal form: sort letters, trading each swap for a bracket letter.

    Swapping one descent removes one inversion and the bracket term is a word
    with one letter fewer, so the rewriting terminates.
    """
    hit = _STRAIGHT.get(word)
    if hit is not None:
        return hit
    pos = None
    for i in range(len(word) - 1):
        if word[i].key > word[i + 1].key:
            pos = i
            break
    if pos is None:
        out = {word: Fraction(1)}
    else:
        swapped = word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2 :]
        out = dict(_straighten_word(swapped))
        for m, c in bracket_monomials(word[pos], word[pos + 1]).items():
            contracted = word[:pos] + (m,) + word[pos + 2 :]
            for sw, sc in _straighten_word(contracted).items():
                out[sw] = out.get(sw, Fraction(0)) + c * sc
        out = {w: c for w, c in out.items() if c}
    _STRAIGHT[word] = out
    return out


def iota(el: LieElement) -> AssocElement:
    """The faithful embedding of the Lie algebra: brackets become commutators."""
    out: dict[AssocWord, Fraction] = {}
    for mono, coeff in el.items():
        for gw, c in word_expansion(mono).items():
            w = tuple(LieMonomial.leaf(g) for g in gw)
            out[w] = out.get(w, Fraction(0)) + coeff * c
    return AssocElement(out)


_SYMMETRIZED: dict[SymMonomial, AssocElement] = {}


def symmetrize(mono: SymMonomial) -> AssocElement:
    """Average of all orderings of the factors, a word element of the envelope."""
    hit = _SYMMETRIZED.get(mono)
    if hit is not None:
        return hit
    p = mono.size
    if p == 0:
        result = AssocElement.unit()
    else:
        out: dict[AssocWord, Fraction] = {}
        unit = Fraction(1, factorial(p))
        for perm in permutations(mono.factors):
            out[perm] = out.get(perm, Fraction(0)) + unit
        result = AssocElement(out)
    _SYMMETRIZED[mono] = result
    return result


def symmetrize_element(el: SymElement) -> AssocElement:
    out = AssocElement.zero()
    for m, c in el.items():
        out = out + symmetrize(m).scale(c)
    return out


def e_inverse(u: AssocElement) -> SymElement:
    """Invert symmetrization by descending through the letter-count filtration.

    In the PBW basis the top letter-count part of e(m) is exactly the sorted
    word of m, so the sorted words of maximal length read off the top
    commutative component; subtract its symmetrization and repeat.
    """
    u = u.straighten()
    work = dict(u.terms)
    out: dict[SymMonomial, Fraction] = {}
    while work:
        top = max(len(w) for w in work)
        layer = {w: c for w, c in work.items() if len(w) == top}
        for w, c in layer.items():
            mono = SymMonomial(w)
            out[mono] = out.get(mono, Fraction(0)) + c
            for sw, sc in symmetrize(mono).straighten().items():
                nxt = work.get(sw, Fraction(0)) - c * sc
                if nxt:
                    work[sw] = nxt
                else:
                    work.pop(sw, None)
    return SymElement(out)


def b_oracle(x, y) -> SymElement:
    """The transported product e_inverse(e(x) e(y)), with no formula input."""
    if isinstance(x, SymMonomial):
        x = SymElement.from_monomial(x)
    if isinstance(y, SymMonomial):
        y = SymElement.from_monomial(y)
    return e_inverse(symmetrize_element(x) * symmetrize_element(y))


def b_p_oracle(x: SymMonomial, y: SymMonomial, p: int) -> SymElement:
    """Homogeneous component of b_oracle lowering the factor count by p."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    full = b_oracle(x, y)
    target = x.size + y.size - p
    if target < 0:
        return SymElement.zero()
    out = full.component(target)
    for m in out.terms:
        assert m.size == target
    return out


def lie_project(u: AssocElement) -> LieElement:
    """Send a primitive element back to the Lie algebra.

    Degree by degree, each generator word g1 ... gd maps to the right-nested
    bracket [g1,[g2,[...,gd]]] divided by d; on Lie elements this is the
    identity.  The result is checked by re-embedding, so a non-primitive
    input raises instead of returning garbage.
    """
    expanded = u.expand()
    out = LieElement.zero()
    for word, coeff in expanded.items():
        if not word:
            raise ValueError("constant terms have no Lie projection")
        d = len(word)
        tree = word[-1]
        for letter in reversed(word[:-1]):
            tree = LieMonomial.bracket_of(letter, tree)
        out = out + normalize(tree).scale(Fraction(coeff, d))
    if iota(out) != expanded:
        raise ValueError("input is not a Lie element")
    return out


def _split_top_dots(text: str):
    depth = 0
    buf = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "·" and depth == 0:
            yield "".join(buf).strip()
            buf = []
        else:
            buf.append(ch)
    tail = "".join(buf).strip()
    if tail:
        yield tail


def parse_sym_element(text: str) -> SymElement:
    """Parse the renderer's output: signed ``coeff·factor·factor`` terms.

    Factors are bracket expressions or generators; non-canonical factors are
    normalized, so the result may have more terms than the input text.
    """
    from .freelie import _split_signed_terms, normalize, parse_monomial, split_coefficient

    if text.strip() == "0":
        return SymElement.zero()
    out = SymElement.zero()
    for sign, chunk in _split_signed_terms(text):
        coeff, body = split_coefficient(chunk)
        term = SymElement.unit(coeff * sign)
        if body:
            for piece in _split_top_dots(body):
                term = term * SymElement.from_lie(normalize(parse_monomial(piece)))
        out = out + term
    return out


# ---------------------------------------------------------------------------
# the Hausdorff-series oracle


@dataclass(frozen=True)
class MultilinearTag:
    """Which x- and y-indices a square-free coefficient carries."""

    xs: frozenset[int]
    ys: frozenset[int]


def _squarefree_mul(a, b):
    out: dict[tuple[Generator, ...], Fraction] = {}
    for wa, ca in a.items():
        seen = set(wa)
        for wb, cb in b.items():
            if seen.intersection(wb):
                continue
            w = wa + wb
            out[w] = out.get(w, Fraction(0)) + ca * cb
    return {w: c for w, c in out.items() if c}


def _truncated_exp(gens) -> dict[tuple[Generator, ...], Fraction]:
    """Sum over injective words of 1/len!; the square-free exponential."""
    out = {(): Fraction(1)}
    for size in range(1, len(gens) + 1):
        unit = Fraction(1, factorial(size))
        for word in permutations(gens, size):
            out[word] = unit
    return out


def ch_log(n: int, m: int, degree_cap: int | None = None) -> dict[MultilinearTag, AssocElement]:
    """Coefficients of log(exp(x1+..+xn) exp(y1+..+ym)) by square-free tag.

    Words with a repeated formal variable are discarded throughout, which
    truncates both exponentials and the logarithm after n+m steps.  The
    coefficient of a tag (A, B) is an associative element of degree #A+#B.
    """
    if n < 0 or m < 0:
        raise ValueError("alphabet sizes must be nonnegative")
    total = n + m
    if degree_cap is None:
        degree_cap = total
    if degree_cap < total:
        raise ValueError(
            f"degree cap {degree_cap} cannot hold the full square-free part (need {total})"
        )
    from .freelie import xgens, ygens

    ex = _truncated_exp(xgens(n))
    ey = _truncated_exp(ygens(m))
    prod = _squarefree_mul(ex, ey)
    t = dict(prod)
    t.pop((), None)
    z: dict[tuple[Generator, ...], Fraction] = {}
    power = {(): Fraction(1)}
    for k in range(1, total + 1):
        power = _squarefree_mul(power, t)
        sign = Fraction((-1) ** (k + 1), k)
        for w, c in power.items():
            z[w] = z.get(w, Fraction(0)) + sign * c
    out: dict[MultilinearTag, dict[AssocWord, Fraction]] = {}
    for word, coeff in z.items():
        if not coeff:
            continue
        tag = MultilinearTag(
            frozenset(g.index for g in word if g.side == "x"),
            frozenset(g.index for g in word if g.side == "y"),
        )
        letters = tuple(LieMonomial.leaf(g) for g in word)
        out.setdefault(tag, {})[letters] = coeff
    return {tag: AssocElement(terms) for tag, terms in out.items()}
