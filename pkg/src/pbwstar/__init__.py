"""Exact star products from Poincare-Birkhoff-Witt symmetrization.

The package computes the transported product of the symmetric algebra of a
Lie algebra, both on free generators (as universally valid identities) and
on concrete finite-dimensional algebras given by structure constants.  All
arithmetic is exact rational.
"""

from .freelie import (
    Generator,
    LieElement,
    LieMonomial,
    bracket,
    lyndon_basis,
    normalize,
    normalize_element,
    parse_element,
    xgen,
    xgens,
    ygen,
    ygens,
)
from .assoc import (
    AssocElement,
    SymElement,
    SymMonomial,
    b_oracle,
    b_p_oracle,
    ch_log,
    e_inverse,
    iota,
    lie_project,
    symmetrize,
    symmetrize_element,
)

__all__ = [
    "Generator",
    "LieElement",
    "LieMonomial",
    "bracket",
    "lyndon_basis",
    "normalize",
    "normalize_element",
    "parse_element",
    "xgen",
    "xgens",
    "ygen",
    "ygens",
    "AssocElement",
    "SymElement",
    "SymMonomial",
    "b_oracle",
    "b_p_oracle",
    "ch_log",
    "e_inverse",
    "iota",
    "lie_project",
    "symmetrize",
    "symmetrize_element",
]

__version__ = "0.1.0"
