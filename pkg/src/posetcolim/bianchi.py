"""
Derivation of the shipped homology layers for the subgroup poset ``P1`` of
``PSL_2`` over the Gaussian integers.

The group has the presentation with generators ``a, b, c, d`` and relations
``a^3 = b^2 = c^3 = d^2 = (ac)^2 = (ad)^2 = (bc)^2 = (bd)^2 = 1`` (among
others that do not affect these subgroups).  ``P1`` holds the trivial
group, the four cyclic subgroups and five maximal subgroups:
``<a,c> = A4``, ``<a,d> = <b,c> = S3``, ``<b,d> = K`` (Klein four) and
``<c,d> = C3 * C2``.  Each finite subgroup is realized by permutations,
the relations are checked, and ``H_q`` with the inclusion-induced maps is
computed from explicit free resolutions.  For the free product,
``H_q = H_q(C3) (+) H_q(C2)`` for ``q >= 1`` with the summand inclusions.

Objects and matrices are stored in canonical coordinates (torsion
generators first, in invariant-factor order).
"""

from __future__ import annotations

from .abgrp import FgAbGroup, Hom, direct_sum, inclusions
from .diagram import COVARIANT, Diagram
from .grouph import FiniteGroup, GroupError
from .poset import FinPoset
from .reshom import ChainLift, GroupHomology, free_resolution, induced, periodic_resolution

ELEMENTS = ["1", "a", "c", "d", "b", "ac", "ad", "cd", "bc", "bd"]
COVERS = [
    ("1", "a"), ("1", "c"), ("1", "d"), ("1", "b"),
    ("a", "ac"), ("a", "ad"),
    ("c", "ac"), ("c", "cd"), ("c", "bc"),
    ("d", "ad"), ("d", "cd"), ("d", "bd"),
    ("b", "bc"), ("b", "bd"),
]
ISOMORPHISM_TYPES = {
    "1": "trivial", "a": "C3", "c": "C3", "d": "C2", "b": "C2",
    "ac": "A4", "ad": "S3", "bc": "S3", "bd": "K = C2 x C2", "cd": "C3 * C2 (free product)",
}
PRESENTATION = "a^3 = b^2 = c^3 = d^2 = (ac)^2 = (ad)^2 = (bc)^2 = (bd)^2 = 1"

# permutation realizations of the generators inside each finite maximal subgroup
REALIZATIONS = {
    "ac": {"a": (1, 2, 0, 3), "c": (0, 2, 3, 1)},
    "ad": {"a": (1, 2, 0), "d": (1, 0, 2)},
    "bc": {"c": (1, 2, 0), "b": (1, 0, 2)},
    "bd": {"b": (1, 0, 3, 2), "d": (2, 3, 0, 1)},
}
ORDERS = {"a": 3, "c": 3, "b": 2, "d": 2}

ORACLE = (
    "H_q of each subgroup from explicit free resolutions over the integral group ring: the 2-periodic "
    "resolution (t-1, N) for the cyclic subgroups, a greedy resolution (kernel generators added one orbit at "
    "a time, exactness checked) for A4, S3 and K; inclusion-induced maps by lifting the identity on Z to a "
    "chain map and passing to coinvariants; free product C3 * C2 as the direct sum of the factors with "
    "summand inclusions; all objects rewritten in canonical coordinates."
)


def _compose(p, q):
    return tuple(p[q[t]] for t in range(len(q)))


def _power(p, n):
    out = tuple(range(len(p)))
    for _ in range(n):
        out = _compose(p, out)
    return out


def _check_relations(name, gens):
    ident = tuple(range(len(next(iter(gens.values())))))
    x, y = gens.values()
    (nx, px), (ny, py) = [(k, ORDERS[k]) for k in gens]
    if _power(x, px) != ident or x == ident:
        raise GroupError(f"{name}: generator {nx} has the wrong order")
    if _power(y, py) != ident or y == ident:
        raise GroupError(f"{name}: generator {ny} has the wrong order")
    if _power(_compose(x, y), 2) != ident:
        raise GroupError(f"{name}: ({nx}{ny})^2 != 1")


def bianchi_poset():
    return FinPoset.from_covers(ELEMENTS, COVERS)


def _cyclic(n):
    G = FiniteGroup.cyclic(n)
    G.generator_ids = [1]
    return G


def _canonical(f: Hom, iso_src, iso_dst):
    """``f`` rewritten between the canonical groups, entries reduced."""
    g = iso_dst @ f @ iso_src.inverse()
    Y = g.dst
    return Hom(g.src, Y, Y.from_canon @ g.canonical_matrix @ g.src.to_canon, check=False)


def derive_layers(q_max=5):
    """Layers ``q = 0..q_max`` as covariant diagrams on ``P1``."""
    P = bianchi_poset()
    length = q_max + 1
    C3, C2 = _cyclic(3), _cyclic(2)
    hom = {"C3": GroupHomology(periodic_resolution(C3, length)), "C2": GroupHomology(periodic_resolution(C2, length))}
    cyc_of = {"a": ("C3", C3), "c": ("C3", C3), "d": ("C2", C2), "b": ("C2", C2)}
    tops, lifts = {}, {}
    for top, gens in REALIZATIONS.items():
        _check_relations(top, gens)
        G = FiniteGroup.from_permutations(list(gens.values()))
        tops[top] = (G, GroupHomology(free_resolution(G, length)))
        for n, x in enumerate(gens):
            kind, C = cyc_of[x]
            f = C.hom_from_generators(G, [G.generator_ids[n]])
            lifts[(x, top)] = ChainLift(hom[kind].R, tops[top][1].R, f)
    orders = {name: tops[name][0].order for name in tops}
    if orders != {"ac": 12, "ad": 6, "bc": 6, "bd": 4}:
        raise GroupError(f"realizations have orders {orders}")

    layers = {}
    Z = FgAbGroup.free(1)
    layers[0] = Diagram.constant(P, Z)
    for q in range(1, q_max + 1):
        raw, arrows = {"1": FgAbGroup.zero()}, {}
        for x, (kind, _) in cyc_of.items():
            raw[x] = hom[kind].H(q)
        for top, (G, gh) in tops.items():
            raw[top] = gh.H(q)
            for x in REALIZATIONS[top]:
                kind = cyc_of[x][0]
                arrows[(x, top)] = induced(hom[kind], gh, None, q, lifts[(x, top)])
        raw["cd"] = direct_sum(raw["c"], raw["d"])
        inc = inclusions([raw["c"], raw["d"]], raw["cd"])
        arrows[("c", "cd")], arrows[("d", "cd")] = inc
        for x in ("a", "c", "d", "b"):
            arrows[("1", x)] = Hom.zero(raw["1"], raw[x])
        canon = {e: raw[e].canonical_group() for e in ELEMENTS}
        objects = {e: canon[e][0] for e in ELEMENTS}
        maps = {(j, i): _canonical(f, canon[j][1], canon[i][1]).matrix for (j, i), f in arrows.items()}
        layers[q] = Diagram(P, objects, maps, COVARIANT)
    return P, layers


def documentation():
    return {
        "presentation": PRESENTATION,
        "elements": ELEMENTS,
        "covers": [list(c) for c in COVERS],
        "isomorphism_types": ISOMORPHISM_TYPES,
        "maximal_subgroups": {top: sorted(x for x in ("a", "b", "c", "d") if x in top) for top in ("ac", "ad", "cd", "bc", "bd")},
        "realizations": {top: {x: list(p) for x, p in g.items()} for top, g in REALIZATIONS.items()},
        "oracle": ORACLE,
        "coordinates": "canonical: torsion generators first in invariant-factor order, then free generators",
    }


DATA_FILE = "bianchi_layers.json"


def layers_to_json(P, layers):
    from .fileio import FORMAT_VERSION, matrix_to_json, poset_to_json

    return {
        "format_version": FORMAT_VERSION,
        "ring": "Z",
        "documentation": documentation(),
        "poset": poset_to_json(P),
        "layers": {
            str(q): {
                "objects": {e: {"free_rank": L.objects[e].free_rank, "torsion": list(L.objects[e].invariant_factors())} for e in P.elements},
                "maps": [{"from": j, "to": i, "matrix": matrix_to_json(f.matrix)} for (j, i), f in sorted(L.edges.items())],
            }
            for q, L in sorted(layers.items())
        },
    }


def write_shipped(path=None, q_max=5):
    """Regenerate the shipped data file."""
    from pathlib import Path

    from .fileio import dumps

    P, layers = derive_layers(q_max)
    path = Path(path) if path else Path(__file__).parent / "data" / DATA_FILE
    path.write_text(dumps(layers_to_json(P, layers)) + "\n", encoding="utf-8")
    return path


def load_shipped():
    """``(P1, GradedDiagram, documentation)`` from the shipped data file."""
    import json
    from importlib.resources import files

    from .fileio import graded_from_json

    obj = json.loads(files("posetcolim").joinpath("data").joinpath(DATA_FILE).read_text(encoding="utf-8"))
    D = graded_from_json(obj, where=DATA_FILE)
    return D.poset, D, obj["documentation"]


PP_CLAIMS = {1: ("cd", "bd"), 3: ("ad", "cd", "bc", "bd")}


def reproduce(D=None, q_max=5):
    """Every stated verdict for the shipped layers; ``checks`` maps a label to a bool."""
    from .bkss import SpectralError, assemble_homology, collapse_report, e2_page, torsion_filters
    from .checks import is_pseudo_projective_at
    from .derived import higher_colim

    if D is None:
        _, D, _ = load_shipped()
    page = e2_page(D, 2, q_max)
    rep = collapse_report(page)
    checks = {}
    row0 = page.row(0)
    checks["E2[0,0] = Z, E2[p,0] = 0 for p > 0"] = row0[0].describe() == "Z" and all(G.is_trivial() for G in row0[1:])
    for q in range(2, q_max + 1, 2):
        A = page[(0, q)]
        elem2 = A.free_rank == 0 and all(d == 2 for d in A.invariant_factors())
        checks[f"q={q}: E2[0,q] elementary abelian 2, E2[p,q] = 0 for p > 0"] = elem2 and all(G.is_trivial() for G in page.row(q)[1:])
    for q in range(1, q_max + 1, 2):
        claim = PP_CLAIMS[q % 4]
        ok = all(is_pseudo_projective_at(D[q], e).verdict for e in claim)
        checks[f"q={q}: pseudo-projective at {', '.join(claim)}"] = ok
        if q % 4 == 1:
            C1 = higher_colim(D[q], 1)
            only3, no2 = torsion_filters(C1, {3})[0], torsion_filters(C1, {2})[1]
            checks[f"q={q}: colim_1 is 3-torsion with no 2-torsion"] = only3 and no2
    allowed = all(p == 0 or (p == 1 and q % 2 == 1) for p, q in rep.nonzero)
    checks["nonzero E2 positions within {(0,k)} and {(1,2k+1)}"] = allowed and rep.collapsed
    homology = {}
    try:
        for n in range(q_max + 1):
            homology[n] = assemble_homology(page, n)
        checks[f"assembly succeeds for n <= {q_max}"] = True
    except SpectralError:
        checks[f"assembly succeeds for n <= {q_max}"] = False
    return {"page": page, "collapse": rep, "checks": checks, "homology": homology}
