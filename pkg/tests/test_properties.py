"""Randomized algebraic laws over small alphabets."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from pbwstar.assoc import (
    SymElement,
    SymMonomial,
    e_inverse,
    iota,
    symmetrize_element,
)
from pbwstar.freelie import (
    LieElement,
    LieMonomial,
    bracket,
    lyndon_basis,
    normalize,
    normalize_element,
    parse_element,
    xgens,
    ygen,
)

GENS = xgens(2) + (ygen(1),)
BASIS = [mono for d in range(1, 5) for mono in lyndon_basis(GENS, d)]

coeffs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))


@st.composite
def lie_elements(draw, max_terms=4):
    picks = draw(
        st.lists(
            st.tuples(st.sampled_from(BASIS), coeffs),
            min_size=0,
            max_size=max_terms,
        )
    )
    out = LieElement.zero()
    for mono, coeff in picks:
        out = out + LieElement.from_monomial(mono).scale(coeff)
    return out


@st.composite
def raw_trees(draw, max_depth=3):
    """Arbitrary bracketings, canonical or not."""
    if max_depth == 0 or draw(st.booleans()):
        return LieMonomial.leaf(draw(st.sampled_from(GENS)))
    left = draw(raw_trees(max_depth=max_depth - 1))
    right = draw(raw_trees(max_depth=max_depth - 1))
    return LieMonomial.bracket_of(left, right)


@st.composite
def sym_elements(draw, max_terms=3):
    picks = draw(
        st.lists(
            st.tuples(
                st.lists(st.sampled_from(BASIS[:5]), min_size=0, max_size=3),
                coeffs,
            ),
            min_size=0,
            max_size=max_terms,
        )
    )
    out = SymElement.zero()
    for factors, coeff in picks:
        out = out + SymElement.from_monomial(SymMonomial(tuple(factors)), coeff)
    return out


@settings(max_examples=60, deadline=None)
@given(lie_elements(), lie_elements())
def test_bracket_antisymmetry(a, b):
    assert bracket(a, b) == bracket(b, a).scale(-1)


@settings(max_examples=40, deadline=None)
@given(lie_elements(max_terms=3), lie_elements(max_terms=3), lie_elements(max_terms=3))
def test_jacobi(a, b, c):
    total = (
        bracket(a, bracket(b, c))
        + bracket(b, bracket(c, a))
        + bracket(c, bracket(a, b))
    )
    assert total == LieElement.zero()


@settings(max_examples=60, deadline=None)
@given(lie_elements(), lie_elements(), coeffs)
def test_bracket_bilinearity(a, b, t):
    left = bracket(a.scale(t) + b, b)
    assert left == bracket(a, b).scale(t) + bracket(b, b)


@settings(max_examples=80, deadline=None)
@given(raw_trees())
def test_normalize_is_idempotent(tree):
    once = normalize(tree)
    assert normalize_element(once) == once


@settings(max_examples=80, deadline=None)
@given(raw_trees())
def test_normalize_preserves_word_expansion(tree):
    from pbwstar.freelie import word_expansion

    want = word_expansion(tree)
    got = {}
    for mono, coeff in normalize(tree).items():
        for word, c in word_expansion(mono).items():
            v = got.get(word, Fraction(0)) + coeff * c
            if v:
                got[word] = v
            else:
                got.pop(word, None)
    assert got == {w: c for w, c in want.items() if c}


@settings(max_examples=60, deadline=None)
@given(lie_elements())
def test_parse_round_trip(el):
    assert parse_element(str(el)) == el


@settings(max_examples=30, deadline=None)
@given(sym_elements())
def test_quantization_round_trip(el):
    assert e_inverse(symmetrize_element(el)) == el


@settings(max_examples=40, deadline=None)
@given(sym_elements(max_terms=2), sym_elements(max_terms=2))
def test_sym_product_commutes(a, b):
    assert a * b == b * a


@settings(max_examples=25, deadline=None)
@given(sym_elements(max_terms=2), sym_elements(max_terms=2), sym_elements(max_terms=2))
def test_sym_product_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=30, deadline=None)
@given(lie_elements(max_terms=3), lie_elements(max_terms=3))
def test_embedding_is_a_lie_morphism(a, b):
    lhs = iota(bracket(a, b))
    rhs = iota(a) * iota(b) - iota(b) * iota(a)
    assert lhs == rhs
