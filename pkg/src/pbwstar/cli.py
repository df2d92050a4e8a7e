"""Command-line front end.

Subcommands:

* ``bp``: the p-th component on contiguous free generator alphabets,
  through the closed formula, the straightening oracle, or both with an
  equality verdict.
* ``w``: the multilinear Hausdorff component on full index sets, with an
  optional independent-oracle check.
* ``ck``: the reduction coefficient table.
* ``verify``: named identity suites (thm11, lemma20, lemma21, thm22,
  assoc); exit code 0 means every residual vanished.
* ``star``: the one-parameter product on a bundled or user-supplied
  structure-constant algebra.

Exit codes: 0 success / verified; 1 a verification produced a nonzero
residual or unequal pair; 2 usage errors and degree-cap rejections.

Machine format (``--format machine``) is a single JSON object per run.
Lie monomials serialize as nested pairs: a generator is its name, a
bracket is the two-element list [left, right].  Coefficients are always
"numerator/denominator" strings.  Elements carry a "terms" list of
{"coeff", "monomial"} for Lie elements, {"coeff", "factors"} for
symmetric elements, and {"coeff", "exponents"} plus a "basis" name list
for polynomials.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .assoc import (
    MultilinearTag,
    SymElement,
    SymMonomial,
    b_oracle,
    b_p_oracle,
    ch_log,
    e_inverse,
    lie_project,
    parse_sym_element,
    symmetrize_element,
)
from .bidiff import (
    BACKENDS,
    CapError,
    DEFAULT_CAP,
    bp_backend,
    bp_operator,
    c,
    diff_op_residual,
    lemma20_residual,
    lemma21_residual,
)
from .bipart import b_p_formula
from .chw import w
from .freelie import (
    Generator,
    LieElement,
    LieMonomial,
    parse_element,
    parse_monomial,
    xgen,
    xgens,
    ygen,
    ygens,
)
from .specialize import (
    Polynomial,
    StructureConstants,
    load_structure,
    parse_polynomial,
    poisson,
    star_series,
    star_t,
)

SUITES = ("thm11", "lemma20", "lemma21", "thm22", "assoc")


# ---------------------------------------------------------------------------
# serialization


def frac_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _mono_tree(mono: LieMonomial):
    if mono.is_leaf:
        return str(mono.gen)
    return [_mono_tree(mono.left), _mono_tree(mono.right)]


def _tree_mono(tree) -> LieMonomial:
    if isinstance(tree, str):
        return parse_monomial(tree)
    left, right = tree
    return LieMonomial.bracket_of(_tree_mono(left), _tree_mono(right))


def lie_to_machine(el: LieElement) -> dict:
    return {
        "kind": "lie",
        "terms": [
            {"coeff": frac_str(coeff), "monomial": _mono_tree(mono)}
            for mono, coeff in sorted(el.items(), key=lambda t: t[0].key)
        ],
    }


def machine_to_lie(obj: dict) -> LieElement:
    out = LieElement.zero()
    for term in obj["terms"]:
        mono = _tree_mono(term["monomial"])
        from .freelie import normalize

        out = out + normalize(mono).scale(Fraction(term["coeff"]))
    return out


def sym_to_machine(el: SymElement) -> dict:
    return {
        "kind": "sym",
        "terms": [
            {
                "coeff": frac_str(coeff),
                "factors": [_mono_tree(f) for f in mono.factors],
            }
            for mono, coeff in el.sorted_terms()
        ],
    }


def machine_to_sym(obj: dict) -> SymElement:
    from .freelie import normalize

    out = SymElement.zero()
    for term in obj["terms"]:
        piece = SymElement.unit(Fraction(term["coeff"]))
        for tree in term["factors"]:
            piece = piece * SymElement.from_lie(normalize(_tree_mono(tree)))
        out = out + piece
    return out


def poly_to_machine(poly: Polynomial, names) -> dict:
    return {
        "kind": "poly",
        "basis": list(names),
        "terms": [
            {"coeff": frac_str(coeff), "exponents": list(exps)}
            for exps, coeff in poly.monomials()
        ],
    }


def machine_to_poly(obj: dict) -> Polynomial:
    dim = len(obj["basis"])
    return Polynomial(
        dim,
        {
            tuple(term["exponents"]): Fraction(term["coeff"])
            for term in obj["terms"]
        },
    )


def _emit(args, obj: dict, text: str):
    if args.format == "machine":
        print(json.dumps(obj))
    else:
        print(text)


# ---------------------------------------------------------------------------
# verification suites; each returns (instance count, failure list)


def suite_thm11(max_total_degree: int = 5):
    instances = 0
    failures = []
    for n in range(1, max_total_degree):
        for m in range(1, max_total_degree - n + 1):
            x = SymMonomial.of_generators(xgens(n))
            y = SymMonomial.of_generators(ygens(m))
            for p in range(0, n + m):
                instances += 1
                formula = b_p_formula(x, y, p)
                oracle = b_p_oracle(x, y, p)
                if formula != oracle:
                    failures.append(
                        (f"n={n} m={m} p={p}", f"formula {formula} != oracle {oracle}")
                    )
    return instances, failures


def suite_lemma20(pq_max: int = 3, r_max: int = 2, cap: int = DEFAULT_CAP):
    instances = 0
    failures = []
    for p in range(1, pq_max + 1):
        for q in range(0, pq_max - p + 1):
            for r in range(1, r_max + 1):
                for backend in BACKENDS:
                    for swapped in (False, True):
                        instances += 1
                        res = lemma20_residual(
                            p, q, r, backend=backend, swapped=swapped, cap=cap
                        )
                        if res:
                            failures.append(
                                (
                                    f"p={p} q={q} r={r} backend={backend} swapped={swapped}",
                                    f"residual {res}",
                                )
                            )
    return instances, failures


def suite_lemma21(qmax: int = 6, mmax: int = 6):
    instances = 0
    failures = []
    for q in range(1, qmax + 1):
        for m in range(0, mmax + 1):
            instances += 1
            res = lemma21_residual(q, m)
            if res:
                failures.append((f"q={q} m={m}", f"residual {res}"))
    return instances, failures


def suite_thm22(
    pmax: int = 2,
    qmax: int = 1,
    dega_max: int = 2,
    backend: str = "formula",
    cap: int = DEFAULT_CAP,
):
    instances = 0
    failures = []
    for p in range(0, pmax + 1):
        for q in range(1, qmax + 1):
            for dega in range(1, dega_max + 1):
                if p + q + dega > cap:
                    raise CapError(f"instance p={p} q={q} dega={dega} exceeds cap {cap}")
                a = SymMonomial.of_generators(ygens(dega))
                gens = xgens(p + q)
                for fixed in ("first", "second"):
                    instances += 1
                    F = bp_operator(a, p, fixed=fixed, backend=backend)
                    res = diff_op_residual(F, p, q, gens, cap=cap)
                    if res:
                        failures.append(
                            (
                                f"p={p} q={q} dega={dega} fixed={fixed}",
                                f"residual {res}",
                            )
                        )
    # order sharpness: the same operator must FAIL the order-0 test
    instances += 1
    F = bp_operator(SymMonomial.of_generators(ygens(1)), 1, fixed="first", backend=backend)
    probe = diff_op_residual(F, 0, 1, xgens(1), cap=cap)
    if not probe:
        failures.append(
            ("sharpness-probe", "order-0 residual vanished; the bound is not tight")
        )
    return instances, failures


def _bracket_pool_monomials(max_degree: int):
    """All products over the letters x1, y1, [x1,y1], keyed by total degree."""
    x1 = LieMonomial.leaf(xgen(1))
    y1 = LieMonomial.leaf(ygen(1))
    pool = [x1, y1, LieMonomial.bracket_of(x1, y1)]
    by_degree: dict[int, list[SymMonomial]] = {d: [] for d in range(1, max_degree + 1)}

    def rec(start, remaining, acc):
        if acc:
            by_degree[sum(f.degree for f in acc)].append(SymMonomial(tuple(acc)))
        if not remaining:
            return
        for i in range(start, len(pool)):
            if pool[i].degree <= remaining:
                acc.append(pool[i])
                rec(i, remaining - pool[i].degree, acc)
                acc.pop()

    rec(0, max_degree, [])
    return by_degree


def _basis_monomials(sc: StructureConstants, max_degree: int):
    by_degree: dict[int, list[Polynomial]] = {}
    from itertools import combinations_with_replacement

    for d in range(1, max_degree + 1):
        row = []
        for combo in combinations_with_replacement(range(1, sc.dim + 1), d):
            exps = [0] * sc.dim
            for i in combo:
                exps[i - 1] += 1
            row.append(Polynomial(sc.dim, {tuple(exps): Fraction(1)}))
        by_degree[d] = row
    return by_degree


def suite_assoc(
    free_degree: int = 6,
    star_degree: int = 5,
    algebras=("heisenberg3", "sl2"),
    ts=(Fraction(0), Fraction(1), Fraction(1, 2)),
):
    instances = 0
    failures = []

    by_degree = _bracket_pool_monomials(free_degree)
    singles = [mono for d in sorted(by_degree) for mono in by_degree[d]]
    for mono in singles:
        instances += 1
        el = SymElement.from_monomial(mono)
        if b_oracle(SymMonomial.unit(), mono) != el or b_oracle(mono, SymMonomial.unit()) != el:
            failures.append((f"unit {mono}", "unitality failed"))
    for d1 in sorted(by_degree):
        for d2 in sorted(by_degree):
            for d3 in sorted(by_degree):
                if d1 + d2 + d3 > free_degree:
                    continue
                for a in by_degree[d1]:
                    for b in by_degree[d2]:
                        for cc in by_degree[d3]:
                            instances += 1
                            left = b_oracle(b_oracle(a, b), SymElement.from_monomial(cc))
                            right = b_oracle(SymElement.from_monomial(a), b_oracle(b, cc))
                            if left != right:
                                failures.append(
                                    (f"assoc {a} | {b} | {cc}", "associator nonzero")
                                )

    for name in algebras:
        sc = load_structure(name)
        by_deg = _basis_monomials(sc, star_degree)
        one = Polynomial.unit(sc.dim)
        for f in by_deg[1] + by_deg[2]:
            instances += 1
            if star_t(one, f, Fraction(1), sc) != f or star_t(f, one, Fraction(1), sc) != f:
                failures.append((f"star-unit {name} {f}", "unitality failed"))
        for t in ts:
            for d1 in sorted(by_deg):
                for d2 in sorted(by_deg):
                    for d3 in sorted(by_deg):
                        if d1 + d2 + d3 > star_degree:
                            continue
                        for f in by_deg[d1]:
                            for g in by_deg[d2]:
                                for h in by_deg[d3]:
                                    instances += 1
                                    left = star_t(star_t(f, g, t, sc), h, t, sc)
                                    right = star_t(f, star_t(g, h, t, sc), t, sc)
                                    if left != right:
                                        failures.append(
                                            (
                                                f"star-assoc {name} t={t} "
                                                f"{f.render(sc.names)} | {g.render(sc.names)} | {h.render(sc.names)}",
                                                "associator nonzero",
                                            )
                                        )
        # t-linear part of the commutator vs the Poisson bracket, by
        # interpolation at t=1 and t=1/2 (degree <= 3 keeps it exact)
        for d1 in sorted(by_deg):
            for d2 in sorted(by_deg):
                if d1 + d2 > 3:
                    continue
                for f in by_deg[d1]:
                    for g in by_deg[d2]:
                        instances += 1
                        c1 = star_t(f, g, Fraction(1), sc) - star_t(g, f, Fraction(1), sc)
                        ch = star_t(f, g, Fraction(1, 2), sc) - star_t(
                            g, f, Fraction(1, 2), sc
                        )
                        linear = ch.scale(4) - c1
                        if linear != poisson(f, g, sc):
                            failures.append(
                                (
                                    f"poisson {name} {f.render(sc.names)} | {g.render(sc.names)}",
                                    "t-linear commutator differs from the bracket",
                                )
                            )
    return instances, failures


# ---------------------------------------------------------------------------
# subcommands


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def cmd_bp(args) -> int:
    n, m, p = args.n, args.m, args.p
    if n < 1 or m < 1:
        print("error: n and m must be at least 1", file=sys.stderr)
        return 2
    if not 0 <= p <= n + m - 1:
        print(f"error: p out of range (0 <= p <= {n + m - 1})", file=sys.stderr)
        return 2
    if n + m > args.cap:
        print(f"error: total degree {n + m} exceeds cap {args.cap}", file=sys.stderr)
        return 2
    x = SymMonomial.of_generators(xgens(n))
    y = SymMonomial.of_generators(ygens(m))
    if args.backend == "both":
        formula = b_p_formula(x, y, p)
        oracle = b_p_oracle(x, y, p)
        verdict = "EQUAL" if formula == oracle else "DIFFER"
        obj = {
            "kind": "bp-compare",
            "n": n,
            "m": m,
            "p": p,
            "formula": sym_to_machine(formula),
            "oracle": sym_to_machine(oracle),
            "verdict": verdict,
        }
        text = f"formula: {formula}\noracle: {oracle}\nVERDICT {verdict}"
        _emit(args, obj, text)
        return 0 if verdict == "EQUAL" else 1
    value = (
        b_p_formula(x, y, p) if args.backend == "formula" else b_p_oracle(x, y, p)
    )
    obj = sym_to_machine(value)
    obj.update({"op": "bp", "n": n, "m": m, "p": p, "backend": args.backend})
    _emit(args, obj, str(value))
    return 0


def cmd_w(args) -> int:
    n, m = args.n, args.m
    if n < 0 or m < 0:
        print("error: n and m must be nonnegative", file=sys.stderr)
        return 2
    if n + m > args.cap:
        print(f"error: total degree {n + m} exceeds cap {args.cap}", file=sys.stderr)
        return 2
    try:
        value = w(range(1, n + 1), range(1, m + 1))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    obj = lie_to_machine(value)
    obj.update({"op": "w", "n": n, "m": m})
    text = str(value)
    code = 0
    if args.check:
        tags = ch_log(n, m)
        tag = MultilinearTag(frozenset(range(1, n + 1)), frozenset(range(1, m + 1)))
        coeff = tags.get(tag)
        expected = lie_project(coeff) if coeff is not None else LieElement.zero()
        verdict = "EQUAL" if expected == value else "DIFFER"
        obj["verdict"] = verdict
        text += f"\nVERDICT {verdict}"
        code = 0 if verdict == "EQUAL" else 1
    _emit(args, obj, text)
    return code


def cmd_ck(args) -> int:
    rows = [
        [c(k, q) for q in range(args.qmax + 1)] for k in range(args.kmax + 1)
    ]
    obj = {
        "kind": "ck",
        "kmax": args.kmax,
        "qmax": args.qmax,
        "values": [[frac_str(v) for v in row] for row in rows],
    }
    width = max(len(str(v)) for row in rows for v in row) + 1
    header = "k\\q" + "".join(str(q).rjust(width) for q in range(args.qmax + 1))
    lines = [header]
    for k, row in enumerate(rows):
        lines.append(str(k).ljust(3) + "".join(str(v).rjust(width) for v in row))
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    try:
        if args.suite == "thm11":
            instances, failures = suite_thm11(args.max_total_degree)
        elif args.suite == "lemma20":
            instances, failures = suite_lemma20(args.pq_max, args.rmax, cap=args.cap)
        elif args.suite == "lemma21":
            instances, failures = suite_lemma21(args.qmax, args.mmax)
        elif args.suite == "thm22":
            instances, failures = suite_thm22(
                args.p, args.q, args.dega, backend=args.backend, cap=args.cap
            )
        else:
            instances, failures = suite_assoc(args.free_degree, args.star_degree)
    except CapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    obj = {
        "kind": "verify",
        "suite": args.suite,
        "instances": instances,
        "failures": [{"instance": key, "detail": detail} for key, detail in failures],
    }
    lines = [f"FAIL {args.suite} {key}: {detail}" for key, detail in failures]
    if failures:
        lines.append(f"FAIL {args.suite}: {len(failures)}/{instances} instances failed")
    else:
        lines.append(f"PASS {args.suite}: {instances} instances")
    _emit(args, obj, "\n".join(lines))
    return 1 if failures else 0


def cmd_star(args) -> int:
    try:
        sc = load_structure(args.algebra)
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        f = parse_polynomial(args.f, sc.names)
        g = parse_polynomial(args.g, sc.names)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.series:
        powers = star_series(f, g, sc)
        obj = {
            "kind": "star-series",
            "basis": list(sc.names),
            "powers": [
                {"p": p, "terms": poly_to_machine(v, sc.names)["terms"]}
                for p, v in sorted(powers.items())
            ],
        }
        text = "\n".join(
            f"t^{p}: {v.render(sc.names)}" for p, v in sorted(powers.items())
        ) or "0"
        _emit(args, obj, text)
        return 0
    value = star_t(f, g, args.t, sc)
    _emit(args, poly_to_machine(value, sc.names), value.render(sc.names))
    return 0


# ---------------------------------------------------------------------------
# argument tree


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pbwstar",
        description="Exact star-product computations on free and concrete Lie algebras.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("text", "machine"), default="text",
            help="output rendering (machine = one JSON object)",
        )

    p = sub.add_parser("bp", help="component lowering the factor count by p")
    p.add_argument("-n", type=int, required=True, help="x-side letter count")
    p.add_argument("-m", type=int, required=True, help="y-side letter count")
    p.add_argument("-p", type=int, required=True, help="component index")
    p.add_argument("--backend", choices=BACKENDS + ("both",), default="formula")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    add_format(p)
    p.set_defaults(fn=cmd_bp)

    p = sub.add_parser("w", help="multilinear Hausdorff component on full index sets")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare with the series oracle")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    add_format(p)
    p.set_defaults(fn=cmd_w)

    p = sub.add_parser("ck", help="reduction coefficient table")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--qmax", type=int, default=6)
    add_format(p)
    p.set_defaults(fn=cmd_ck)

    p = sub.add_parser("verify", help="run a named identity suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max-total-degree", type=int, default=5, help="thm11 sweep bound")
    p.add_argument("--pq-max", type=int, default=3, help="lemma20: bound on p+q")
    p.add_argument("--rmax", type=int, default=2, help="lemma20: bound on r")
    p.add_argument("--qmax", type=int, default=6, help="lemma21 bound")
    p.add_argument("--mmax", type=int, default=6, help="lemma21 bound")
    p.add_argument("--p", type=int, default=2, help="thm22: max operator order")
    p.add_argument("--q", type=int, default=1, help="thm22: max extra letters")
    p.add_argument("--dega", type=int, default=2, help="thm22: max frozen-slot degree")
    p.add_argument("--backend", choices=BACKENDS, default="formula", help="thm22 backend")
    p.add_argument("--free-degree", type=int, default=6, help="assoc: free sweep bound")
    p.add_argument("--star-degree", type=int, default=5, help="assoc: star sweep bound")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    add_format(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("star", help="one-parameter product on a concrete algebra")
    p.add_argument("f", help="first monomial, e.g. 'e1 e2^2'")
    p.add_argument("g", help="second monomial")
    p.add_argument("--t", type=_parse_fraction, default=Fraction(1), help="rational parameter")
    p.add_argument("--algebra", default="heisenberg3", help="bundled name or file path")
    p.add_argument("--series", action="store_true", help="print components by power")
    add_format(p)
    p.set_defaults(fn=cmd_star)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
