"""Command-line front end.

    hminkowski verify --model M1 --suite all [--json out.json]
    hminkowski nf --model M1 --family minkowski "de*ga"
    hminkowski derive --model M2 mixed
    hminkowski confluence --model M1 --family forms --max-degree 4
    hminkowski show --model M2 --matrix g_h
    hminkowski export --model M1 --path model.json

Exit status: 0 when everything passes, 1 on a failed check, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .catalog import COORDS, COORDS2, DERIVS, FORMS, ModelSpec, model_from_name
from .dsl import ParseError, format_element, format_word, parse_expression
from .equations import (EQUATION_TAGS, EQUATIONS, FAMILY_NAMES, SYSTEM_GENERATORS, derive_relations,
                        system)
from .ncalg import AlgElement
from .rewrite import check_confluence
from .verifier import CHECK_IDS, CheckReport, box_operator, compute_det_h_K, run_suite

SCHEMA = 1


class UsageError(Exception):
    pass


def _parse_sets(items: Optional[Sequence[str]], spec: ModelSpec) -> Optional[Tuple[Fraction, Fraction]]:
    if not items:
        return None
    vals = {"h": None, "r": Fraction(0)}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in vals:
            raise UsageError(f"--set expects h=<rational> or r=<rational>, got {item!r}")
        try:
            vals[name] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational number: {value!r}") from None
    if vals["h"] is None:
        raise UsageError("--set needs a value for h")
    if spec.j == 2 and vals["r"]:
        raise UsageError("model M2 has no parameter r")
    return vals["h"], vals["r"]


def _model(name: str) -> ModelSpec:
    try:
        return model_from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _family(name: str) -> str:
    if name not in FAMILY_NAMES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
    return name


def _numeric_text(x: AlgElement, point) -> str:
    return format_element(AlgElement(x.substitute(*point)))


# ------------------------------------------------------------------- report

def build_report(spec: ModelSpec, reports: Sequence[CheckReport], include_timing: bool = True,
                 point=None) -> Dict:
    """JSON-ready report; everything except the ``timing`` block is deterministic."""
    counts = {s: sum(1 for r in reports if r.status == s) for s in ("pass", "fail", "skipped")}
    doc = {
        "schema": SCHEMA,
        "tool": "hminkowski",
        "version": __version__,
        "model": spec.name,
        "oracle_point": None if point is None else {"h": str(point[0]), "r": str(point[1])},
        "checks": [
            {"id": r.id, "status": r.status, "witnesses": [w.to_json() for w in r.witnesses],
             "details": r.details}
            for r in reports
        ],
        "summary": {"total": len(reports), **counts},
    }
    if include_timing:
        doc["timing"] = {"total": round(sum(r.timing for r in reports), 4),
                         "checks": {r.id: round(r.timing, 4) for r in reports}}
    return doc


def dump_json(doc: Dict, path: str) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ----------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    spec = _model(args.model)
    point = _parse_sets(args.set, spec)
    try:
        reports = run_suite(spec, args.suite, oracle_points=[point] if point else None)
    except KeyError as exc:
        raise UsageError(f"{exc.args[0]}; known checks: {', '.join(CHECK_IDS)}") from None
    if not args.quiet:
        print(f"hminkowski {__version__}: model {spec.name}")
        for rep in reports:
            print(rep.summary_line())
        n_fail = sum(1 for r in reports if r.status == "fail")
        print(f"{len(reports) - n_fail} passed, {n_fail} failed")
    if args.json:
        dump_json(build_report(spec, reports, not args.no_timing, point), args.json)
    return 1 if any(r.status == "fail" for r in reports) else 0


def cmd_nf(args) -> int:
    spec = _model(args.model)
    fam = _family(args.family)
    point = _parse_sets(args.set, spec)
    x = parse_expression(args.expression, SYSTEM_GENERATORS[fam])
    sys_ = system(spec, fam)
    nf = sys_.normal_form(x, args.strategy)
    if point is None:
        print(format_element(nf))
        return 0
    # numeric mode: compare with the independent oracle at the given point
    from .oracle import NumericReducer, system_relations
    red = NumericReducer(system_relations(spec, fam, *point))
    expected = red.reduce(x.substitute(*point), random.Random(0))
    got = nf.substitute(*point)
    print(format_element(AlgElement(got)))
    if got != expected:
        print(f"oracle disagrees: {format_element(AlgElement(expected))}", file=sys.stderr)
        return 1
    return 0


# rules shown by ``derive``: those whose left side mixes the generator groups of the equation
_DERIVE_VIEW = {
    "minkowski": ("minkowski", (COORDS,)),
    "derivatives": ("derivatives", (DERIVS,)),
    "mixed": ("mixed", (COORDS, DERIVS)),
    "forms_kdk": ("forms", (COORDS, FORMS)),
    "forms_dkdk": ("forms", (FORMS,)),
    "braided": ("braided", (COORDS, COORDS2)),
}


def derived_rules(spec: ModelSpec, tag: str) -> List[Tuple[Tuple[str, ...], AlgElement]]:
    fam, groups = _DERIVE_VIEW[tag]
    sys_ = system(spec, fam)
    out = []
    for rule in sys_.rule_list():
        letters = set(rule.lhs)
        if all(letters & set(g) for g in groups) and letters <= set().union(*groups):
            out.append((rule.lhs, rule.rhs))
    return out


def cmd_derive(args) -> int:
    spec = _model(args.model)
    if args.equation not in EQUATION_TAGS:
        raise UsageError(f"unknown equation {args.equation!r}; choose from {', '.join(EQUATION_TAGS)}")
    tag = EQUATION_TAGS[args.equation]
    point = _parse_sets(args.set, spec)
    show = (lambda x: format_element(x)) if point is None else (lambda x: _numeric_text(x, point))
    print(f"# {EQUATIONS[tag]}  [{spec.name}]")
    if args.raw:
        for x in derive_relations(tag, spec):
            print(f"{show(x)} = 0")
        return 0
    for lhs, rhs in derived_rules(spec, tag):
        print(f"{format_word(lhs)} = {show(rhs)}")
    return 0


def cmd_confluence(args) -> int:
    spec = _model(args.model)
    fam = _family(args.family)
    if args.max_degree < 3:
        raise UsageError("--max-degree must be at least 3")
    sys_ = system(spec, fam)
    rep = check_confluence(sys_, args.max_degree)
    print(f"{spec.name} {fam}: {len(sys_)} rules, {rep.checked} ambiguities up to degree {args.max_degree}, "
          f"{len(rep.unresolved)} unresolved")
    for o in rep.unresolved:
        print(f"  {format_word(o.word)}: {format_element(o.difference)}")
    return 0 if rep.confluent else 1


def _matrix_lines(A) -> List[str]:
    return ["[" + ", ".join(format_element(x) for x in row) + "]" for row in A.entries]


def cmd_show(args) -> int:
    spec = _model(args.model)
    name = args.matrix
    if name not in spec.matrices:
        raise UsageError(f"unknown matrix {name!r}; choose from {', '.join(sorted(spec.matrices))}")
    for line in _matrix_lines(spec[name]):
        print(line)
    return 0


def export_document(spec: ModelSpec) -> Dict:
    systems = {}
    for fam in FAMILY_NAMES:
        systems[fam] = [{"lhs": format_word(r.lhs), "rhs": format_element(r.rhs)}
                        for r in system(spec, fam).rule_list()]
    return {
        "schema": SCHEMA,
        "tool": "hminkowski",
        "version": __version__,
        "model": spec.name,
        "parameters": list(spec.params),
        "matrices": {k: _matrix_lines(spec[k]) for k in sorted(spec.matrices)},
        "printed": {tag: [rel.label for rel in fam.relations] for tag, fam in spec.printed.items()},
        "systems": systems,
        "scalars": {"det_h_K": format_element(compute_det_h_K(spec)),
                    "box": format_element(system(spec, "derivatives").normal_form(box_operator(spec)))},
    }


def cmd_export(args) -> int:
    spec = _model(args.model)
    dump_json(export_document(spec), args.path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hminkowski", description="Exact checks for h-deformed Minkowski algebras")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_set=True):
        sp.add_argument("--model", default="M1", help="M1 or M2")
        if with_set:
            sp.add_argument("--set", action="append", metavar="NAME=RAT",
                            help="fix a parameter to a rational (h=..., r=...) for numeric mode")

    v = sub.add_parser("verify", help="run the identity suite")
    common(v)
    v.add_argument("--suite", default="all", help="'all' or comma-separated check ids")
    v.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    v.add_argument("--no-timing", action="store_true", help="omit timings from the JSON report")
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("nf", help="normal form of an expression")
    common(n)
    n.add_argument("--family", default="minkowski", help=", ".join(FAMILY_NAMES))
    n.add_argument("--strategy", choices=("left", "right"), default="left")
    n.add_argument("expression")
    n.set_defaults(func=cmd_nf)

    d = sub.add_parser("derive", help="relations derived from a reflection equation")
    common(d)
    d.add_argument("equation", help=", ".join(EQUATION_TAGS))
    d.add_argument("--raw", action="store_true", help="print the raw matrix entries instead of rules")
    d.set_defaults(func=cmd_derive)

    c = sub.add_parser("confluence", help="diamond-lemma check of a rewrite system")
    common(c, with_set=False)
    c.add_argument("--family", default="minkowski", help=", ".join(FAMILY_NAMES))
    c.add_argument("--max-degree", type=int, default=3)
    c.set_defaults(func=cmd_confluence)

    s = sub.add_parser("show", help="print a model matrix")
    common(s, with_set=False)
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_show)

    e = sub.add_parser("export", help="write matrices and rewrite systems as JSON")
    common(e, with_set=False)
    e.add_argument("--path", required=True)
    e.set_defaults(func=cmd_export)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
