"""
Command-line front end.

Exit codes: 0 when the verdict holds (or the command simply succeeds),
1 when it fails (the witness goes to standard output), 2 on malformed
input (the diagnostic goes to standard error).
"""

from __future__ import annotations

import argparse
import json
import sys

from .abgrp import AbGroupError, NotWellDefined
from .diagram import DiagramError, NotFunctorial
from .fileio import InputError, dumps, load_json
from .poset import PosetError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _emit(args, obj, text):
    print(dumps(obj) if args.json else text)


def _load_diagram(path):
    from .fileio import diagram_from_json

    return diagram_from_json(load_json(path), where=str(path))


def _degrees(args, D):
    if args.degree is not None:
        return [args.degree]
    return list(range(max(D.poset.height, 0) + 1))


def cmd_validate(args):
    from .fileio import diagram_from_json, graded_from_json, witness_from_json

    obj = load_json(args.file)
    try:
        if isinstance(obj, dict) and "layers" in obj:
            D = graded_from_json(obj, where=args.file)
            kind, info = "graded", {"layers": sorted(D.layers)}
        elif isinstance(obj, dict) and "transfers" in obj:
            W = witness_from_json(obj, where=args.file)
            kind, info = "witness", {"elements": len(W.base.poset)}
        else:
            D = diagram_from_json(obj, where=args.file)
            kind, info = "diagram", {"elements": len(D.poset), "variance": D.variance}
    except NotFunctorial as exc:
        _emit(args, {"valid": False, "reason": "not functorial", "paths": [list(p) for p in exc.paths]},
              "INVALID: not functorial\n  path 1: " + " < ".join(exc.paths[0]) + "\n  path 2: " + " < ".join(exc.paths[1]))
        return EXIT_FAIL
    except NotWellDefined as exc:
        _emit(args, {"valid": False, "reason": str(exc)}, f"INVALID: {exc}")
        return EXIT_FAIL
    _emit(args, {"valid": True, "kind": kind, **info}, f"valid {kind}")
    return EXIT_OK


def _homology_cmd(args, fn, name):
    D = _load_diagram(args.file)
    out = {n: fn(D, n) for n in _degrees(args, D)}
    text = "\n".join(f"{name}_{n} = {G.describe()}" for n, G in out.items())
    if args.degree is not None:
        text = out[args.degree].describe()
    _emit(args, {str(n): {"group": G.describe(), "free_rank": G.free_rank, "torsion": list(G.invariant_factors())}
                 for n, G in out.items()}, text)
    return EXIT_OK


def cmd_colim(args):
    from .derived import higher_colim

    return _homology_cmd(args, higher_colim, "colim")


def cmd_lim(args):
    from .derived import higher_lim

    return _homology_cmd(args, higher_lim, "lim")


def _report_text(name, rep):
    head = f"{name}: {'TRUE' if rep.verdict else 'FALSE'}"
    if rep.verdict:
        return head
    lines = [head]
    if rep.at is not None:
        lines.append(f"  at: {rep.at}")
    if rep.clause is not None:
        lines.append(f"  clause: {rep.clause}")
    if rep.detail:
        lines.append(f"  {rep.detail}")
    if rep.witness is not None:
        lines.append("  witness: " + json.dumps(rep.to_json().get("witness"), ensure_ascii=False))
    return "\n".join(lines)


def cmd_check(args):
    from . import checks

    if args.property == "mackey":
        return _check_mackey(args)
    if not args.file:
        raise InputError("check needs a diagram file")
    D = _load_diagram(args.file)
    local = {"cofibrant": checks.is_cofibrant_at, "pseudo-projective": checks.is_pseudo_projective_at,
             "fibrant": checks.is_fibrant_at, "pseudo-injective": checks.is_pseudo_injective_at}
    whole = {"cofibrant": checks.is_cofibrant, "pseudo-projective": checks.is_pseudo_projective,
             "fibrant": checks.is_fibrant, "pseudo-injective": checks.is_pseudo_injective}
    if args.at is not None:
        if args.at not in D.poset:
            raise InputError(f"--at: {args.at!r} is not an element of the poset")
        rep = local[args.property](D, args.at)
    else:
        rep = whole[args.property](D)
    _emit(args, rep.to_json(), _report_text(args.property, rep))
    return EXIT_OK if rep.verdict else EXIT_FAIL


def _check_mackey(args):
    from .fileio import witness_from_json
    from .mackey import validate_full_mackey, validate_weak_mackey, validate_weak_mackey_contra

    path = args.witness or args.file
    if not path:
        raise InputError("check mackey needs --witness FILE")
    W = witness_from_json(load_json(path), where=path)
    if args.full:
        rep = validate_full_mackey(W)
    elif W.base.covariant:
        rep = validate_weak_mackey(W)
    else:
        rep = validate_weak_mackey_contra(W, side_condition=args.side_condition)
    quasi = rep.extra.get("quasi_unit")
    out = rep.to_json()
    out["quasi_unit"] = quasi
    text = _report_text("full mackey" if args.full else "weak mackey", rep)
    if rep.verdict:
        text += f"\nquasi-unit: {'undetermined' if quasi is None else str(quasi).lower()}"
    _emit(args, out, text)
    if not rep.verdict:
        return EXIT_FAIL
    if args.quasi_unit and quasi is not True:
        return EXIT_FAIL
    return EXIT_OK


def cmd_certify(args):
    from .checks import CertificateError, certify_zero_class
    from .fileio import formal_sum_from_json

    D = _load_diagram(args.file)
    if args.at not in D.poset:
        raise InputError(f"--at: {args.at!r} is not an element of the poset")
    x = formal_sum_from_json(load_json(args.element), where=args.element)
    try:
        trace = certify_zero_class(D, args.at, x)
    except CertificateError as exc:
        _emit(args, {"certified": False, "reason": str(exc)}, f"NOT CERTIFIED: {exc}")
        return EXIT_FAIL
    problems = trace.verify(D)
    steps = [{"x": {j: list(v) for j, v in s.x.items()},
              "witnesses": {j: {k: list(y) for k, y in ys.items()} for j, ys in s.witnesses.items()}}
             for s in trace.steps]
    lines = [f"certified [x] = 0 below {args.at} in {len(trace.steps) - 1} steps"]
    for n, s in enumerate(steps):
        lines.append(f"  step {n}: " + json.dumps(s["x"], ensure_ascii=False))
    if problems:
        lines = ["trace failed verification:"] + [f"  {p}" for p in problems]
    _emit(args, {"certified": not problems, "steps": steps, "problems": problems}, "\n".join(lines))
    return EXIT_OK if not problems else EXIT_FAIL


def cmd_crosscheck(args):
    from .checks import crosscheck_theorems
    from .corpus import CorpusParams, generate_corpus
    from .diagram import CONTRAVARIANT, COVARIANT

    params = CorpusParams(count=args.count, max_poset=args.max_poset, max_rank=args.max_rank,
                          max_entry=args.max_entry, seed=args.seed)
    variances = {"covariant": [COVARIANT], "contravariant": [CONTRAVARIANT], "both": [COVARIANT, CONTRAVARIANT]}
    total, lines, summary = 0, [], {}
    for v in variances[args.variance]:
        rep = crosscheck_theorems(generate_corpus(params, v), workers=args.workers)
        total += len(rep["violations"])
        summary[v] = {"count": rep["count"], "violations": rep["violations"],
                      "pointwise_mismatches": len(rep["pointwise_mismatches"])}
        lines.append(f"{v}: {rep['count']} instances, {len(rep['violations'])} violations, "
                     f"{len(rep['pointwise_mismatches'])} with pointwise mismatches")
        for viol in rep["violations"]:
            lines.append(f"  instance {viol['index']}: " + "; ".join(viol["problems"]))
    _emit(args, {"seed": args.seed, "results": summary}, "\n".join(lines))
    return EXIT_OK if total == 0 else EXIT_FAIL


def cmd_bk_e2(args):
    from .bkss import SpectralError, assemble_homology, collapse_report, e2_page
    from .fileio import graded_from_json

    D = graded_from_json(load_json(args.graded), where=args.graded)
    page = e2_page(D, args.pmax, args.qmax)
    rep = collapse_report(page)
    out = {"page": page.to_json(), "collapse": rep.to_json()}
    text = [page.to_tsv(), f"nonzero: {rep.nonzero}", f"collapsed: {str(rep.collapsed).lower()}"]
    code = EXIT_OK
    if args.assemble:
        hom = {}
        for n in range(args.qmax + 1):
            try:
                hom[str(n)] = assemble_homology(page, n).describe()
            except SpectralError as exc:
                hom[str(n)] = f"error: {exc}"
                code = EXIT_FAIL
            text.append(f"H_{n} = {hom[str(n)]}")
        out["homology"] = hom
    _emit(args, out, "\n".join(text))
    return code


def _group_from_file(path):
    from .grouph import FiniteGroup

    obj = load_json(path)
    if isinstance(obj, dict) and "permutations" in obj:
        return FiniteGroup.from_permutations(obj["permutations"])
    if isinstance(obj, dict) and "table" in obj:
        return FiniteGroup(obj["table"])
    raise InputError(f"{path}: needs 'permutations' or 'table'")


def _subgroups_from_file(G, path):
    from .grouph import SubgroupSpec

    obj = load_json(path)
    if obj == "all" or (isinstance(obj, dict) and obj.get("subgroups") == "all"):
        return G.all_subgroups()
    items = obj.get("subgroups") if isinstance(obj, dict) else obj
    if not isinstance(items, list):
        raise InputError(f"{path}: needs a 'subgroups' list or \"all\"")

    def ident(g, where):
        try:
            return G.element_of(g) if isinstance(g, list) else int(g)
        except ValueError:
            raise InputError(f"{where}: {g!r} is not a group element") from None

    specs = []
    for n, s in enumerate(items):
        where = f"{path}.subgroups[{n}]"
        if not isinstance(s, dict):
            raise InputError(f"{where}: must be an object")
        if "elements" in s:
            specs.append(SubgroupSpec(elements=frozenset(ident(g, where) for g in s["elements"]), name=s.get("name")))
        else:
            specs.append(SubgroupSpec(generators=tuple(ident(g, where) for g in s.get("generators", [])), name=s.get("name")))
    return specs


def cmd_grouph(args):
    from .fileio import diagram_to_json
    from .grouph import NotASubgroup, kernel_functor_H, subgroup_poset

    G = _group_from_file(args.group)
    try:
        P = subgroup_poset(G, _subgroups_from_file(G, args.subgroups))
    except NotASubgroup as exc:
        raise InputError(f"{args.subgroups}: subgroup {exc.index} is not closed under the group law") from None
    out = diagram_to_json(kernel_functor_H(G, P))
    out["members"] = {name: sorted(S) for name, S in P.members.items()}
    text = dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.output}: {len(P)} subgroups")
    else:
        print(text)
    return EXIT_OK


def cmd_bianchi(args):
    from .bianchi import reproduce

    r = reproduce(q_max=args.qmax)
    page, rep = r["page"], r["collapse"]
    ok = all(r["checks"].values())
    lines = [page.to_tsv(), f"nonzero E2 positions: {rep.nonzero}"]
    lines += [f"{'PASS' if v else 'FAIL'}  {k}" for k, v in r["checks"].items()]
    lines += [f"H_{n} = {G.describe()}" for n, G in r["homology"].items()]
    lines.append(f"verdict: {'PASS' if ok else 'FAIL'}")
    out = {"page": page.to_json(), "collapse": rep.to_json(), "checks": r["checks"],
           "homology": {str(n): G.describe() for n, G in r["homology"].items()}, "verdict": "PASS" if ok else "FAIL"}
    _emit(args, out, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = _Parser(prog="posetcolim", description="Exact (co)limits of abelian-group diagrams over finite posets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="validate a diagram, witness or graded file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    for name, fn in (("colim", cmd_colim), ("lim", cmd_lim)):
        s = sub.add_parser(name, parents=[common], help=f"higher {name}its")
        s.add_argument("file")
        s.add_argument("--degree", type=int)
        s.set_defaults(func=fn)

    s = sub.add_parser("check", parents=[common], help="acyclicity criteria")
    s.add_argument("property", choices=["cofibrant", "pseudo-projective", "fibrant", "pseudo-injective", "mackey"])
    s.add_argument("file", nargs="?")
    s.add_argument("--at")
    s.add_argument("--witness")
    s.add_argument("--full", action="store_true")
    s.add_argument("--quasi-unit", action="store_true", help="also require a quasi-unit")
    s.add_argument("--side-condition", choices=["dual", "printed"], default="dual")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("certify", parents=[common], help="certify a relation is zero in the colimit below an element")
    s.add_argument("file")
    s.add_argument("--at", required=True)
    s.add_argument("--element", required=True)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("crosscheck", parents=[common], help="cross-check the criteria on a seeded random corpus")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=500)
    s.add_argument("--max-poset", type=int, default=6)
    s.add_argument("--max-rank", type=int, default=3)
    s.add_argument("--max-entry", type=int, default=3)
    s.add_argument("--variance", choices=["covariant", "contravariant", "both"], default="both")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_crosscheck)

    s = sub.add_parser("bk-e2", parents=[common], help="E2 page of a graded diagram")
    s.add_argument("--graded", required=True)
    s.add_argument("--pmax", type=int, default=2)
    s.add_argument("--qmax", type=int, default=5)
    s.add_argument("--assemble", action="store_true")
    s.set_defaults(func=cmd_bk_e2)

    s = sub.add_parser("grouph", help="subgroup-poset diagrams")
    gsub = s.add_subparsers(dest="grouph_command", required=True, parser_class=_Parser)
    b = gsub.add_parser("build", parents=[common], help="augmentation-kernel diagram of a subgroup poset")
    b.add_argument("--group", required=True)
    b.add_argument("--subgroups", required=True)
    b.add_argument("--output", "-o")
    b.set_defaults(func=cmd_grouph)

    s = sub.add_parser("bianchi", parents=[common], help="reproduce the shipped Bianchi computation")
    s.add_argument("--qmax", type=int, default=5)
    s.set_defaults(func=cmd_bianchi)
    return p


def main(argv=None):
    from .bkss import SpectralError
    from .checks import CertificateError
    from .grouph import GroupError
    from .mackey import MackeyError

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DiagramError, PosetError, AbGroupError, GroupError, MackeyError, CertificateError,
            SpectralError) as exc:
        where = getattr(exc, "where", None)
        prefix = f"{where}: " if where and not str(exc).startswith(str(where)) else ""
        print(f"error: {prefix}{exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
