"""
JSON interchange for groups, diagrams, Mackey witnesses and graded diagrams.

A diagram file looks like::

    {"format_version": 1,
     "ring": "Z",
     "variance": "covariant",
     "poset": {"elements": ["j", "i"], "covers": [["j", "i"]]},
     "objects": {"j": {"free_rank": 1, "torsion": []}, "i": {"gens": 1, "rels": []}},
     "maps": [{"from": "j", "to": "i", "matrix": [[2]]}]}

``maps`` are given on covers ``from < to``; the matrix points the way the
variance says (``F(from) -> F(to)`` or ``G(to) -> G(from)``), row-major,
``ngens(target)`` rows.  Rational entries may be written as ``"p/q"``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .abgrp import FgAbGroup, Hom, Ring, ZZ
from .diagram import COVARIANT, CONTRAVARIANT, Diagram, DiagramError
from .poset import FinPoset, PosetError

FORMAT_VERSION = 1


class InputError(Exception):
    """Malformed input; the message names the offending field."""


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _parse_num(x, where):
    if isinstance(x, bool):
        raise InputError(f"{where}: expected a number, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise InputError(f"{where}: cannot parse number {x!r}") from None
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise InputError(f"{where}: expected an integer or 'p/q', got {x!r}")


def _parse_matrix(m, where):
    if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
        raise InputError(f"{where}: matrix must be a list of rows")
    return [[_parse_num(x, f"{where}[{r}][{c}]") for c, x in enumerate(row)] for r, row in enumerate(m)]


def matrix_to_json(M):
    return [[_num(x) for x in row] for row in M.rows]


def group_to_json(G: FgAbGroup):
    return {"gens": G.ngens, "rels": [[_num(x) for x in r] for r in G.rels]}


def group_from_json(obj, ring=ZZ, where="group"):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    try:
        if "gens" in obj:
            if int(obj["gens"]) < 0:
                raise InputError(f"{where}.gens: negative count")
            rels = _parse_matrix(obj.get("rels", []), f"{where}.rels")
            return FgAbGroup(int(obj["gens"]), rels, ring)
        if "free_rank" in obj or "torsion" in obj:
            if int(obj.get("free_rank", 0)) < 0:
                raise InputError(f"{where}.free_rank: negative rank")
            torsion = [int(d) for d in obj.get("torsion", [])]
            if any(d < 0 for d in torsion):
                raise InputError(f"{where}.torsion: negative order")
            return FgAbGroup.from_invariants(int(obj.get("free_rank", 0)), torsion, ring)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}: needs 'gens'/'rels' or 'free_rank'/'torsion'")


def poset_to_json(P: FinPoset):
    return P.to_json()


def poset_from_json(obj, where="poset"):
    if not isinstance(obj, dict) or "elements" not in obj:
        raise InputError(f"{where}: needs 'elements' and 'covers'")
    elems = obj["elements"]
    if not isinstance(elems, list) or any(not isinstance(e, str) for e in elems):
        raise InputError(f"{where}.elements: must be a list of strings")
    covers = obj.get("covers", [])
    for n, c in enumerate(covers):
        if not isinstance(c, list) or len(c) != 2:
            raise InputError(f"{where}.covers[{n}]: must be a pair")
    try:
        return FinPoset.from_covers(elems, [tuple(c) for c in covers])
    except PosetError as exc:
        raise InputError(f"{where}: {exc}") from None


def diagram_to_json(D: Diagram):
    return {
        "format_version": FORMAT_VERSION,
        "ring": str(D.ring) if D.ring else "Z",
        "variance": D.variance,
        "poset": poset_to_json(D.poset),
        "objects": {e: group_to_json(D.objects[e]) for e in D.poset.elements},
        "maps": [{"from": j, "to": i, "matrix": matrix_to_json(f.matrix)} for (j, i), f in D.edges.items()],
    }


def _edge_list(items, where):
    out = {}
    if not isinstance(items, list):
        raise InputError(f"{where}: must be a list")
    for n, m in enumerate(items):
        if not isinstance(m, dict) or "from" not in m or "to" not in m or "matrix" not in m:
            raise InputError(f"{where}[{n}]: needs 'from', 'to' and 'matrix'")
        out[(m["from"], m["to"])] = _parse_matrix(m["matrix"], f"{where}[{n}].matrix")
    return out


def diagram_from_json(obj, where="diagram", poset=None, ring=None, variance=None):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    ver = obj.get("format_version", FORMAT_VERSION)
    if ver != FORMAT_VERSION:
        raise InputError(f"{where}.format_version: unsupported version {ver!r}")
    try:
        ring = ring or Ring.parse(obj.get("ring", "Z"))
    except ValueError as exc:
        raise InputError(f"{where}.ring: {exc}") from None
    variance = obj.get("variance", variance or COVARIANT)
    if variance not in (COVARIANT, CONTRAVARIANT):
        raise InputError(f"{where}.variance: must be 'covariant' or 'contravariant'")
    P = poset or poset_from_json(obj.get("poset"), f"{where}.poset")
    objs_raw = obj.get("objects")
    if not isinstance(objs_raw, dict):
        raise InputError(f"{where}.objects: must map elements to groups")
    objects = {e: group_from_json(g, ring, f"{where}.objects.{e}") for e, g in objs_raw.items()}
    maps = _edge_list(obj.get("maps", []), f"{where}.maps")
    try:
        return Diagram(P, objects, maps, variance)
    except (DiagramError, PosetError, ValueError) as exc:
        exc.where = where
        raise


def dumps(obj):
    return json.dumps(obj, indent=1, ensure_ascii=False)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def load_diagram(path):
    return diagram_from_json(load_json(path), where=str(path))


# witnesses -----------------------------------------------------------


def _hom_table(D, items, where, shape):
    """``items``: list of {"from": j, "to": i, "matrix": ...}; ``shape(j, i)`` gives (src, dst)."""
    table = {}
    for (j, i), mat in _edge_list(items, where).items():
        if j not in D.poset or i not in D.poset or not D.poset.lt(j, i):
            raise InputError(f"{where}: ({j!r}, {i!r}) is not a strict relation")
        src, dst = shape(j, i)
        table[(j, i)] = Hom(src, dst, mat)
    return table


def witness_from_json(obj, where="witness"):
    """Base diagram plus transfers, units, optional betas and triples."""
    from .mackey import MackeyWitness

    D = diagram_from_json(obj, where)
    F = D.objects
    if D.covariant:
        transfers = _hom_table(D, obj.get("transfers", []), f"{where}.transfers", lambda j, i: (F[i], F[j]))
    else:
        transfers = _hom_table(D, obj.get("transfers", []), f"{where}.transfers", lambda j, i: (F[j], F[i]))
    units = _hom_table(D, obj.get("units", []), f"{where}.units", lambda j, i: (F[j], F[j]))
    betas = {}
    for n, b in enumerate(obj.get("betas", [])):
        try:
            j, i, k = b["j"], b["i"], b["k"]
            betas[((j, i), k)] = Hom(F[k], F[k], _parse_matrix(b["matrix"], f"{where}.betas[{n}].matrix"))
        except KeyError as exc:
            raise InputError(f"{where}.betas[{n}]: missing {exc}") from None
    triples = None
    if "triples" in obj:
        triples = {}
        for n, t in enumerate(obj["triples"]):
            try:
                i, j, k = t["i"], t["j"], t["k"]
                m = D.poset.meet(j, k)
                triples[(i, j, k)] = (
                    Hom(F[j], F[j], _parse_matrix(t["alpha"], f"{where}.triples[{n}].alpha")),
                    Hom(F[m], F[m], _parse_matrix(t["beta"], f"{where}.triples[{n}].beta")),
                    Hom(F[k], F[k], _parse_matrix(t["gamma"], f"{where}.triples[{n}].gamma")),
                )
            except KeyError as exc:
                raise InputError(f"{where}.triples[{n}]: missing {exc}") from None
    return MackeyWitness(D, transfers, units, betas or None, triples)


def witness_to_json(W):
    out = diagram_to_json(W.base)
    out["transfers"] = [{"from": j, "to": i, "matrix": matrix_to_json(f.matrix)} for (j, i), f in W.transfers.items()]
    out["units"] = [{"from": j, "to": i, "matrix": matrix_to_json(f.matrix)} for (j, i), f in W.units.items()]
    if W.betas:
        out["betas"] = [{"j": j, "i": i, "k": k, "matrix": matrix_to_json(f.matrix)} for ((j, i), k), f in W.betas.items()]
    if W.triples:
        out["triples"] = [
            {"i": i, "j": j, "k": k, "alpha": matrix_to_json(a.matrix), "beta": matrix_to_json(b.matrix), "gamma": matrix_to_json(c.matrix)}
            for (i, j, k), (a, b, c) in W.triples.items()
        ]
    return out


# graded diagrams -----------------------------------------------------


def graded_from_json(obj, where="graded"):
    from .bkss import GradedDiagram

    if not isinstance(obj, dict) or "layers" not in obj:
        raise InputError(f"{where}: needs 'poset' and 'layers'")
    P = poset_from_json(obj.get("poset"), f"{where}.poset")
    ring = Ring.parse(obj.get("ring", "Z"))
    layers = {}
    for q, layer in obj["layers"].items():
        layers[int(q)] = diagram_from_json(layer, f"{where}.layers.{q}", poset=P, ring=ring, variance=COVARIANT)
    return GradedDiagram(P, layers)


def graded_to_json(D):
    return {
        "format_version": FORMAT_VERSION,
        "ring": "Z",
        "poset": poset_to_json(D.poset),
        "layers": {
            str(q): {
                "objects": {e: group_to_json(L.objects[e]) for e in D.poset.elements},
                "maps": [{"from": j, "to": i, "matrix": matrix_to_json(f.matrix)} for (j, i), f in L.edges.items()],
            }
            for q, L in sorted(D.layers.items())
        },
    }


def formal_sum_from_json(obj, where="element"):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: must map poset elements to coordinate lists")
    return {k: tuple(_parse_num(x, f"{where}.{k}") for x in v) for k, v in obj.items()}
