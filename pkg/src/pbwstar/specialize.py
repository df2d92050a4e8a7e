"""Concrete star products on finite-dimensional Lie algebras.

A Lie algebra is given by structure constants c_{ij}^k with respect to a
named basis e_1..e_N, loaded from a small text format and validated for
antisymmetry and the Jacobi identity before anything else runs.  Polynomial
elements of the symmetric algebra live in ``Polynomial`` as exponent-vector
dictionaries with exact rational coefficients.

The quantized components come from the free closed formula: each occurrence
of a basis letter in the two arguments is labeled as a fresh free
generator, the cached free value for that shape is fetched, and every Lie
factor is pushed through the structure constants.  Repeated letters are
legal; they are distinct free labels assigned to the same basis element.

On top of that sit the one-parameter product ``star_t`` (exact rational t),
its formal expansion ``star_series``, and the Poisson bracket as an honest
biderivation computed from partial derivatives, independent of the
quantization path.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from importlib import resources

from .assoc import SymElement, SymMonomial
from .bipart import _formula_on_canon
from .freelie import Generator, LieElement, LieMonomial, xgen, ygen

BUNDLED = ("abelian2", "heisenberg3", "sl2")


class StructureError(ValueError):
    """Structure constants violating antisymmetry or the Jacobi identity."""


class StructureConstants:
    """Validated structure constants [e_i, e_j] = sum_k c_{ij}^k e_k (1-based)."""

    def __init__(self, dim: int, names, entries):
        if dim < 1:
            raise ValueError("dimension must be positive")
        names = tuple(names)
        if len(names) != dim:
            raise ValueError(f"expected {dim} basis names, got {len(names)}")
        if len(set(names)) != dim:
            raise ValueError("basis names must be distinct")
        self.dim = dim
        self.names = names
        canon: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), raw in entries.items():
            v = Fraction(raw)
            for idx in (i, j, k):
                if not 1 <= idx <= dim:
                    raise ValueError(f"basis index {idx} out of range 1..{dim}")
            if i == j:
                if v:
                    raise StructureError(f"antisymmetry violation at ({i},{j},{k})")
                continue
            key = (min(i, j), max(i, j), k)
            signed = v if i < j else -v
            if key in canon and canon[key] != signed:
                raise StructureError(f"antisymmetry violation at {key}")
            canon[key] = signed
        self._canon = {k: v for k, v in canon.items() if v}
        self._eval_cache: dict = {}
        self._bp_cache: dict = {}
        validate(self)

    def c(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        v = self._canon.get((min(i, j), max(i, j), k), Fraction(0))
        return v if i < j else -v

    def bracket_vec(self, u, v):
        """Bracket of two coefficient vectors, as a coefficient vector."""
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u, start=1):
            if not ui:
                continue
            for j, vj in enumerate(v, start=1):
                if not vj:
                    continue
                for k in range(1, self.dim + 1):
                    ck = self.c(i, j, k)
                    if ck:
                        out[k - 1] += ui * vj * ck
        return tuple(out)

    def __repr__(self):
        return f"<StructureConstants dim={self.dim} basis={','.join(self.names)}>"


def validate(sc: StructureConstants) -> None:
    """Re-check antisymmetry and Jacobi; raises StructureError at the first violation."""
    for i in range(1, sc.dim + 1):
        for j in range(1, sc.dim + 1):
            for k in range(1, sc.dim + 1):
                if sc.c(i, j, k) != -sc.c(j, i, k):
                    raise StructureError(f"antisymmetry violation at ({i},{j},{k})")
    for i in range(1, sc.dim + 1):
        for j in range(1, sc.dim + 1):
            for k in range(1, sc.dim + 1):
                for m in range(1, sc.dim + 1):
                    acc = Fraction(0)
                    for l in range(1, sc.dim + 1):
                        acc += sc.c(i, j, l) * sc.c(l, k, m)
                        acc += sc.c(j, k, l) * sc.c(l, i, m)
                        acc += sc.c(k, i, l) * sc.c(l, j, m)
                    if acc:
                        raise StructureError(
                            f"Jacobi violation at (i,j,k,m)=({i},{j},{k},{m})"
                        )


_COEFF_TOKEN = re.compile(r"^[+-]?\d+(/\d+)?$")


def load_structure(source: str) -> StructureConstants:
    """Load structure constants from a bundled name or a file path."""
    if source in BUNDLED:
        text = (resources.files("pbwstar") / "data" / f"{source}.sc").read_text()
    elif os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    else:
        raise FileNotFoundError(
            f"no such algebra: {source!r} (bundled: {', '.join(BUNDLED)})"
        )
    return parse_structure(text)


def parse_structure(text: str) -> StructureConstants:
    dim = None
    names = None
    entries: dict[tuple[int, int, int], Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "dim":
            if dim is not None or len(tokens) != 2:
                raise ValueError(f"line {lineno}: malformed dim header")
            dim = int(tokens[1])
        elif tokens[0] == "basis":
            if names is not None:
                raise ValueError(f"line {lineno}: duplicate basis line")
            names = tuple(tokens[1:])
        else:
            if len(tokens) != 4 or not _COEFF_TOKEN.match(tokens[3]):
                raise ValueError(f"line {lineno}: expected 'i j k coeff'")
            i, j, k = int(tokens[0]), int(tokens[1]), int(tokens[2])
            if (i, j, k) in entries:
                raise ValueError(f"line {lineno}: duplicate entry for ({i},{j},{k})")
            entries[(i, j, k)] = Fraction(tokens[3])
    if dim is None or names is None:
        raise ValueError("structure file needs 'dim N' and 'basis ...' lines")
    return StructureConstants(dim, names, entries)


def eval_lie(el: LieElement, assignment: dict[Generator, int], sc: StructureConstants):
    """Coefficient vector of a free Lie element under generator -> basis index."""
    out = [Fraction(0)] * sc.dim
    for mono, coeff in el.items():
        vec = _eval_mono(mono, assignment, sc)
        for idx in range(sc.dim):
            out[idx] += coeff * vec[idx]
    return tuple(out)


def _eval_mono(mono: LieMonomial, assignment, sc: StructureConstants):
    try:
        labels = tuple(sorted(
            ((g, assignment[g]) for g in set(mono.word)), key=lambda t: t[0].key
        ))
    except KeyError as exc:
        raise ValueError(f"generator {exc.args[0]} has no basis assignment") from None
    key = (mono, labels)
    hit = sc._eval_cache.get(key)
    if hit is not None:
        return hit
    if mono.is_leaf:
        g = mono.gen
        vec = tuple(
            Fraction(1) if i == assignment[g] else Fraction(0)
            for i in range(1, sc.dim + 1)
        )
    else:
        vec = sc.bracket_vec(
            _eval_mono(mono.left, assignment, sc),
            _eval_mono(mono.right, assignment, sc),
        )
    sc._eval_cache[key] = vec
    return vec


class Polynomial:
    """Exponent-vector polynomial over a fixed basis dimension."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict[tuple[int, ...], Fraction]):
        self.dim = dim
        clean = {}
        for exps, coeff in terms.items():
            if len(exps) != dim or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for dimension {dim}")
            if coeff:
                clean[tuple(exps)] = Fraction(coeff)
        self.terms = clean

    @staticmethod
    def zero(dim: int) -> "Polynomial":
        return Polynomial(dim, {})

    @staticmethod
    def unit(dim: int, coeff=1) -> "Polynomial":
        return Polynomial(dim, {(0,) * dim: Fraction(coeff)})

    @staticmethod
    def basis_element(dim: int, i: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(1, dim + 1))
        return Polynomial(dim, {exps: Fraction(1)})

    @staticmethod
    def from_vector(vec) -> "Polynomial":
        dim = len(vec)
        out = {}
        for i, v in enumerate(vec, start=1):
            if v:
                out[tuple(1 if j == i else 0 for j in range(1, dim + 1))] = Fraction(v)
        return Polynomial(dim, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def _merge(self, other: "Polynomial", sign: int) -> "Polynomial":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + sign * c
        return Polynomial(self.dim, out)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def scale(self, scalar) -> "Polynomial":
        scalar = Fraction(scalar)
        if not scalar:
            return Polynomial.zero(self.dim)
        return Polynomial(self.dim, {e: c * scalar for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.dim != other.dim:
                raise ValueError("dimension mismatch")
            out: dict[tuple[int, ...], Fraction] = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    e = tuple(a + b for a, b in zip(ea, eb))
                    out[e] = out.get(e, Fraction(0)) + ca * cb
            return Polynomial(self.dim, out)
        return self.scale(other)

    __rmul__ = scale

    def degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def partial(self, i: int) -> "Polynomial":
        """Derivative with respect to the i-th basis variable (1-based)."""
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self.terms.items():
            k = exps[i - 1]
            if not k:
                continue
            e = exps[: i - 1] + (k - 1,) + exps[i:]
            out[e] = out.get(e, Fraction(0)) + coeff * k
        return Polynomial(self.dim, out)

    def monomials(self):
        """Split into (exponent vector, coefficient) pairs, leading degree first.

        Ties inside a degree go in variable order, earliest name first.
        """
        return sorted(
            self.terms.items(),
            key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])),
        )

    def render(self, names) -> str:
        if not self.terms:
            return "0"
        names = tuple(names)
        chunks = []
        for exps, coeff in self.monomials():
            body = " ".join(
                n if e == 1 else f"{n}^{e}"
                for n, e in zip(names, exps)
                if e
            )
            if not body:
                piece = str(abs(coeff))
            elif abs(coeff) == 1:
                piece = body
            else:
                piece = f"{abs(coeff)} {body}"
            chunks.append((coeff < 0, piece))
        first_neg, first = chunks[0]
        text = ("-" + first) if first_neg else first
        for neg, piece in chunks[1:]:
            text += (" - " if neg else " + ") + piece
        return text

    def __str__(self):
        return self.render(tuple(f"e{i}" for i in range(1, self.dim + 1)))

    def __repr__(self):
        return f"<Polynomial {self}>"


def parse_polynomial(text: str, names) -> Polynomial:
    """Inverse of render: signed terms of space-separated names with ^k powers."""
    names = tuple(names)
    index = {n: i for i, n in enumerate(names)}
    dim = len(names)
    text = text.strip()
    if text == "0":
        return Polynomial.zero(dim)
    out: dict[tuple[int, ...], Fraction] = {}
    for sign, chunk in _signed_chunks(text):
        tokens = chunk.split()
        if not tokens:
            raise ValueError("empty term")
        coeff = Fraction(sign)
        start = 0
        if _COEFF_TOKEN.match(tokens[0]):
            coeff *= Fraction(tokens[0])
            start = 1
        exps = [0] * dim
        for tok in tokens[start:]:
            name, _, power = tok.partition("^")
            if name not in index:
                raise ValueError(f"unknown basis name {name!r}")
            exps[index[name]] += int(power) if power else 1
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + coeff
    return Polynomial(dim, out)


def _signed_chunks(text: str):
    sign = 1
    token = ""
    for ch in text:
        if ch in "+-":
            if token.strip():
                yield sign, token.strip()
            sign = 1 if ch == "+" else -1
            token = ""
        else:
            token += ch
    if token.strip():
        yield sign, token.strip()


def eval_sym(el: SymElement, assignment, sc: StructureConstants) -> Polynomial:
    """Push a free symmetric element through the structure constants."""
    out = Polynomial.zero(sc.dim)
    for mono, coeff in el.items():
        prod = Polynomial.unit(sc.dim, coeff)
        for f in mono.factors:
            vec = _eval_mono(f, assignment, sc)
            prod = prod * Polynomial.from_vector(vec)
        out = out + prod
    return out


def _letters(exps) -> tuple[int, ...]:
    """Exponent vector to basis indices with multiplicity, ascending."""
    out = []
    for i, e in enumerate(exps, start=1):
        out.extend([i] * e)
    return tuple(out)


def _bp_monomial(exps_f, exps_g, p: int, sc: StructureConstants) -> Polynomial:
    key = (exps_f, exps_g, p)
    hit = sc._bp_cache.get(key)
    if hit is not None:
        return hit
    lf, lg = _letters(exps_f), _letters(exps_g)
    n, m = len(lf), len(lg)
    if n == 0 or m == 0:
        if p == 0:
            result = Polynomial(
                sc.dim, {tuple(a + b for a, b in zip(exps_f, exps_g)): Fraction(1)}
            )
        else:
            result = Polynomial.zero(sc.dim)
    else:
        free_value = _formula_on_canon(n, m, p)
        assignment = {xgen(i + 1): lf[i] for i in range(n)}
        assignment.update({ygen(j + 1): lg[j] for j in range(m)})
        result = eval_sym(free_value, assignment, sc)
    sc._bp_cache[key] = result
    return result


def bp_concrete(f: Polynomial, g: Polynomial, p: int, sc: StructureConstants) -> Polynomial:
    """The p-th quantization component, extended bilinearly over terms."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    out = Polynomial.zero(sc.dim)
    for ef, cf in f.terms.items():
        for eg, cg in g.terms.items():
            out = out + _bp_monomial(ef, eg, p, sc).scale(cf * cg)
    return out


def star_t(f: Polynomial, g: Polynomial, t, sc: StructureConstants) -> Polynomial:
    """The one-parameter product sum_p B_p(f,g) t^p at an exact rational t."""
    t = Fraction(t)
    out = Polynomial.zero(sc.dim)
    for ef, cf in f.terms.items():
        for eg, cg in g.terms.items():
            scale = cf * cg
            top = sum(ef) + sum(eg)
            for p in range(top + 1):
                tp = t**p
                if not tp and p:
                    break
                out = out + _bp_monomial(ef, eg, p, sc).scale(scale * tp)
    return out


def star_series(f: Polynomial, g: Polynomial, sc: StructureConstants) -> dict[int, Polynomial]:
    """All nonzero components of the product as a map p -> Polynomial."""
    out: dict[int, Polynomial] = {}
    top = max((sum(e) for e in f.terms), default=0) + max(
        (sum(e) for e in g.terms), default=0
    )
    for p in range(top + 1):
        value = bp_concrete(f, g, p, sc)
        if value:
            out[p] = value
    return out


def poisson(f: Polynomial, g: Polynomial, sc: StructureConstants) -> Polynomial:
    """The biderivation extending the bracket; computed from partials, not B_1."""
    out = Polynomial.zero(sc.dim)
    for i in range(1, sc.dim + 1):
        df = f.partial(i)
        if not df:
            continue
        for j in range(1, sc.dim + 1):
            dg = g.partial(j)
            if not dg:
                continue
            lin = Polynomial.from_vector(
                tuple(sc.c(i, j, k) for k in range(1, sc.dim + 1))
            )
            if lin:
                out = out + df * dg * lin
    return out
