"""
Command line interface.

    kam normalize --prime 3 --flavor tildeK "e6 e0"
    kam basis --length 2 --topdeg 16
    kam primitives --length 2 --max-topdeg 40
    kam verify adem-lemmas
    kam nishida --d 5 "e2 e2"
    kam steenrod --j 1 --generator c1 --n 2
    kam dual --n 2 --generator c1
    kam invariants --group sl-pm --vars 2 --max-deg 80
    kam commute --n 2

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from .checks import SUITES, run_suite
from .coalgebra import grouplike, primitives
from .core import Element, Flavor, FlavorError, ResourceLimitError, check_prime, render
from .dual import (
    GROUP_KINDS,
    GroupSpec,
    commuting_square_report,
    dual_basis,
    dual_dimensions,
    generator,
    generator_names,
    invariant_dimensions,
    omega_map,
    sigma_map,
)
from .nishida import act_word, steenrod_P_dual
from .quotient import normalize, reduce_oracle

log = logging.getLogger("kam")

FLAVOR_NAMES = ("hatU", "tildeU", "U", "hatK", "tildeK", "K")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<gen>[ed])(?P<sub>-?\d+)|(?P<num>\d+)|(?P<op>[-+*]))")


def _tokens(src: str):
    pos = 0
    out = []
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[start]!r}", start)
        start = m.start(m.lastgroup if m.lastgroup != "sub" else "gen")
        if m.group("gen"):
            out.append(("gen", (m.group("gen"), int(m.group("sub"))), start))
        elif m.group("num"):
            out.append(("num", int(m.group("num")), start))
        else:
            out.append(("op", m.group("op"), start))
        pos = m.end()
    return out


def parse_expression(src: str, flavor: Flavor, p: int) -> Element:
    """Parse  element := term (('+'|'-') term)*,  term := [coefficient ['*']] generator*.

    A term needs a coefficient or at least one generator; a bare coefficient
    denotes a multiple of 1.  Generators are 'e<int>', or 'd<int>' in the
    plain family, where 'e<i>' means d_{i/(p-1)}.
    """
    check_prime(p)
    toks = _tokens(src)
    if not toks:
        raise ParseError("empty expression", 0)
    pos = 0
    terms = {}
    sign = 1
    if toks[0][0] == "op" and toks[0][1] in "+-":
        sign = -1 if toks[0][1] == "-" else 1
        pos = 1
    warned = False
    while True:
        coeff, word, zero = 1, [], False
        seen = False
        if pos < len(toks) and toks[pos][0] == "num":
            coeff = toks[pos][1]
            pos += 1
            seen = True
            if pos < len(toks) and toks[pos][0] == "op" and toks[pos][1] == "*":
                pos += 1
                if pos >= len(toks) or toks[pos][0] != "gen":
                    at = toks[pos][2] if pos < len(toks) else len(src)
                    raise ParseError("expected a generator after '*'", at)
        while pos < len(toks) and toks[pos][0] == "gen":
            (letter, i), at = toks[pos][1], toks[pos][2]
            if letter == "d" and flavor.family != "plain":
                raise ParseError(f"d-generators belong to the plain family, not {flavor}", at)
            if letter == "e" and flavor.family == "plain":
                if i % (p - 1):
                    zero = True
                i //= p - 1
            if not flavor.legal(i) or i < 0:
                zero = True
            word.append(i)
            pos += 1
            seen = True
        if not seen:
            at = toks[pos][2] if pos < len(toks) else len(src)
            raise ParseError("expected a term", at)
        if zero:
            if not warned:
                log.warning("a generator with a subscript illegal in %s was read as zero", flavor)
                warned = True
        else:
            key = tuple(word)
            terms[key] = terms.get(key, 0) + sign * coeff
        if pos == len(toks):
            break
        kind, val, at = toks[pos]
        if kind != "op" or val not in "+-":
            raise ParseError(f"expected '+' or '-', got {val!r}", at)
        sign = -1 if val == "-" else 1
        pos += 1
    return Element(terms, flavor, p)


# ---------------------------------------------------------------------------
# output


def _terms(x: Element, **extra) -> List[dict]:
    return [dict(coeff=c, monomial=list(m), **extra) for m, c in x]


def _envelope(args, result, **tables) -> dict:
    out = {
        "prime": args.prime,
        "flavor": args.flavor,
        "command": args.command,
        "input": _input_record(args),
        "result": result,
    }
    out.update(tables)
    return out


def _input_record(args) -> dict:
    skip = {"command", "prime", "flavor", "format", "jobs", "func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, text_lines: List[str], payload: dict):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_normalize(args) -> int:
    flavor = Flavor.parse(args.flavor)
    x = parse_expression(args.expression, flavor, args.prime)
    if flavor.quotiented:
        y = normalize(x) if args.method == "rewrite" else reduce_oracle(x)
    else:
        y = x
    _emit(args, [render(y)], _envelope(args, _terms(y)))
    return 0


def cmd_basis(args) -> int:
    flavor = Flavor.parse(args.flavor)
    basis = dual_basis(flavor, args.length, args.topdeg, args.prime)
    L = flavor.letter
    lines = [f"dimension {len(basis)}"] + [" ".join(f"{L}{i}" for i in m) for m in basis]
    result = [{"coeff": 1, "monomial": list(m)} for m in basis]
    _emit(args, lines, _envelope(args, result, dimension=len(basis)))
    return 0


def cmd_primitives(args) -> int:
    flavor = Flavor.parse(args.flavor)
    table = primitives(flavor, args.length, args.max_topdeg, args.prime, args.method)
    g = grouplike(flavor, args.length, args.prime)
    lines = [f"grouplike: {render(g)}"]
    result = []
    k = 0
    for t, basis in table:
        for x in basis:
            lines.append(f"t={t}: {render(x)}")
            result += _terms(x, topdeg=t, vector=k)
            k += 1
    _emit(args, lines, _envelope(args, result, grouplike=_terms(g)))
    return 0


def _suite_job(job):
    name, p, seed, max_index, truncation = job
    return name, [r.__dict__ for r in run_suite(name, p, seed, max_index, truncation)]


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise FlavorError(f"unknown suite {args.suite!r}; expected 'all' or one of {sorted(SUITES)}")
    jobs = [(n, args.prime, args.seed, args.max_index, args.truncation) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            done = list(pool.map(_suite_job, jobs))
    else:
        done = [_suite_job(j) for j in jobs]
    lines, suites, ok = [], [], True
    for name, results in done:
        for r in results:
            status = "PASS" if r["passed"] else "FAIL"
            lines.append(f"[{status}] {name} / {r['name']}: {r['detail']}")
            ok = ok and r["passed"]
        suites.append({
            "suite": name,
            "properties": [{k: r[k] for k in ("name", "passed", "detail")} for r in results],
        })
    lines.append("all properties passed" if ok else "some properties FAILED")
    _emit(args, lines, _envelope(args, [], suites=suites, passed=ok))
    return 0 if ok else 1


def cmd_nishida(args) -> int:
    flavor = Flavor.parse(args.flavor)
    x = parse_expression(args.expression, flavor, args.prime)
    y = act_word(args.d, x)
    _emit(args, [render(y)], _envelope(args, _terms(y)))
    return 0


def _dual_terms(f) -> List[dict]:
    return [{"coeff": c, "monomial": list(m)} for m, c in sorted(f.coeffs.items())]


def cmd_steenrod(args) -> int:
    flavor = Flavor.parse(args.flavor)
    g = generator(args.generator, args.n, args.prime, flavor)
    f = steenrod_P_dual(args.j, g)
    lines = [f"P^{args.j} {args.generator} = {f}"]
    tables = {"topdeg": f.t}
    if flavor.family == "tilde":
        poly = str(omega_map(sigma_map(f)))
        lines.append(f"polynomial image: {poly}")
        tables["polynomial"] = poly
    _emit(args, lines, _envelope(args, _dual_terms(f), **tables))
    return 0


def cmd_dual(args) -> int:
    flavor = Flavor.parse(args.flavor)
    if args.generator:
        g = generator(args.generator, args.n, args.prime, flavor)
        lines = [f"{args.generator} = {g}", f"topdeg {g.t}"]
        tables = {"topdeg": g.t}
        if flavor.family == "tilde":
            s = sigma_map(g)
            poly = str(omega_map(s))
            lines += [f"sigma: {s}", f"omega sigma: {poly}"]
            tables.update(sigma=_dual_terms(s), polynomial=poly)
        _emit(args, lines, _envelope(args, _dual_terms(g), **tables))
        return 0
    dims = dual_dimensions(flavor, args.n, args.max_topdeg, args.prime)
    lines = [f"generators: {', '.join(generator_names(args.n, flavor)) if flavor.quotiented else '-'}"]
    lines += [f"t={t}: {d}" for t, d in dims]
    _emit(args, lines, _envelope(args, [], dimensions=[{"topdeg": t, "dimension": d} for t, d in dims]))
    return 0


def cmd_invariants(args) -> int:
    dims = invariant_dimensions(GroupSpec(args.group, args.vars, args.prime), args.max_deg)
    lines = [f"t={t}: {d}" for t, d in dims]
    _emit(args, lines, _envelope(args, [], dimensions=[{"topdeg": t, "dimension": d} for t, d in dims]))
    return 0


def cmd_commute(args) -> int:
    rep = commuting_square_report(args.n, args.prime, args.max_topdeg)
    lines = []
    for name, g in rep["generators"].items():
        lines.append(f"{name}: sigma = {g['sigma']}")
        lines.append(f"    omega sigma = {g['omega_sigma']}")
        lines.append(f"    tau         = {g['tau']}  [{'equal' if g['equal'] else 'DIFFERENT'}]")
    lines.append(f"dimensions agree: {rep['dimensions_agree']}")
    fs = rep["free_dual_steenrod"]
    agree = sum(r["agree"] for r in fs)
    lines.append(f"omega vs Steenrod on the free dual (not asserted): {agree}/{len(fs)} agree")
    lines.append("square commutes" if rep["commutes"] else "square does NOT commute")
    dims = {k: [{"topdeg": t, "dimension": d} for t, d in v] for k, v in rep["dimensions"].items()}
    payload = _envelope(
        args, [], generators=rep["generators"], dimensions=dims,
        dimensions_agree=rep["dimensions_agree"], commutes=rep["commutes"],
        free_dual_steenrod=rep["free_dual_steenrod"],
    )
    _emit(args, lines, payload)
    return 0 if rep["commutes"] and rep["dimensions_agree"] else 1


# ---------------------------------------------------------------------------
# argument parsing


def _word(s: str) -> List[int]:
    try:
        w = [int(a) for a in s.split(",") if a.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated d-indices, got {s!r}") from None
    if any(i < 0 for i in w):
        raise argparse.ArgumentTypeError("d-indices are nonnegative")
    return w


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _global_options(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--prime", type=int, default=d(3), help="odd prime (default 3)")
    parser.add_argument("--flavor", choices=FLAVOR_NAMES, default=d("tildeK"), help="algebra (default tildeK)")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")
    parser.add_argument("--jobs", type=_positive, default=d(1), help="worker processes for verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kam", description="lower-indexed Steenrod operations over F_p")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    s.add_argument("expression")
    s.add_argument("--method", choices=("rewrite", "oracle"), default="rewrite")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("basis", parents=[common], help="basis of one bidegree")
    s.add_argument("--length", type=_nonneg, required=True)
    s.add_argument("--topdeg", type=_nonneg, required=True)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("primitives", parents=[common], help="coalgebra primitives")
    s.add_argument("--length", type=_positive, required=True)
    s.add_argument("--max-topdeg", type=_nonneg, required=True)
    s.add_argument("--method", choices=("rewrite", "oracle"), default="rewrite")
    s.set_defaults(func=cmd_primitives)

    s = sub.add_parser("verify", parents=[common], help="run a property suite")
    s.add_argument("suite", help=f"one of: all, {', '.join(sorted(SUITES))}")
    s.add_argument("--max-index", type=_nonneg, default=None)
    s.add_argument("--truncation", type=_nonneg, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("nishida", parents=[common], help="the action d_I * x")
    s.add_argument("--d", type=_word, required=True, help="d-index, or comma separated word acting left to right")
    s.add_argument("expression")
    s.set_defaults(func=cmd_nishida)

    s = sub.add_parser("steenrod", parents=[common], help="P^j on a generator of the dual")
    s.add_argument("--j", type=_nonneg, required=True)
    s.add_argument("--generator", required=True, help="s or c<a>")
    s.add_argument("--n", type=_positive, required=True)
    s.set_defaults(func=cmd_steenrod)

    s = sub.add_parser("dual", parents=[common], help="dual generators or graded dimensions")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--generator", default=None)
    s.add_argument("--max-topdeg", type=_nonneg, default=80)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("invariants", parents=[common], help="dimensions of polynomial invariants")
    s.add_argument("--group", choices=GROUP_KINDS, required=True)
    s.add_argument("--vars", type=_positive, required=True)
    s.add_argument("--max-deg", type=_nonneg, required=True)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("commute", parents=[common], help="the square omega sigma = tau")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--max-topdeg", type=_nonneg, default=None)
    s.set_defaults(func=cmd_commute)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        check_prime(args.prime)
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, FlavorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
