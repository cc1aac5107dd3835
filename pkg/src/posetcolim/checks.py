"""
Decision procedures for cofibrancy, pseudo-projectivity, fibrancy and
pseudo-injectivity, the zero-class certificate extractor, and the corpus
cross-check.

Pseudo-projectivity at ``i`` quantifies over finite ``J`` inside the
closed ray below ``i``.  Only the downsets ``J_A`` of antichains ``A`` are
checked: any ``J`` with ``max J = A`` sits inside ``J_A``, a relation on
``J`` pads to one on ``J_A``, and both conditions concern the same maximal
set.  :func:`is_pseudo_projective_at_bruteforce` checks every subset and
serves as the oracle for this reduction.

>>> from posetcolim.poset import FinPoset
>>> from posetcolim.abgrp import FgAbGroup
>>> from posetcolim.diagram import Diagram
>>> Z = FgAbGroup.free(1)
>>> P = FinPoset.chain(["j", "i"])
>>> F = Diagram(P, {"j": Z, "i": Z}, {("j", "i"): [[0]]})
>>> r = is_cofibrant_at(F, "i"); r.verdict, r.witness
(False, {'j': (1,)})
>>> bool(is_pseudo_projective_at(Diagram(P, {"j": Z, "i": Z}, {("j", "i"): [[2]]}), "i"))
True
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .abgrp import Hom, Subgroup, direct_sum, hom_from_sum, hom_to_sum
from .diagram import (
    CONTRAVARIANT,
    COVARIANT,
    Diagram,
    WrongVariance,
    boundary_image,
    boundary_kernel,
    eps_map,
    restriction_to_ray,
)


@dataclass
class CheckReport:
    """Verdict of one check; on failure ``witness`` re-verifies against the definition."""

    verdict: bool
    at: Any = None
    witness: Any = None
    detail: str = ""
    clause: Any = None
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.verdict)

    def to_json(self):
        out = {"verdict": self.verdict}
        if self.at is not None:
            out["at"] = self.at
        if self.clause is not None:
            out["clause"] = self.clause
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "numerator") and not isinstance(x, int):
        return str(x) if x.denominator != 1 else int(x)
    return x


def _require(F, variance):
    if F.variance != variance:
        raise WrongVariance(f"expected a {variance} diagram")


def _split(elems, groups, v):
    """Cut a direct-sum vector into ``{element: component}``."""
    out, n = {}, 0
    for e, G in zip(elems, groups):
        out[e] = tuple(v[n:n + G.ngens])
        n += G.ngens
    return out


def _nonzero_parts(F, x):
    return {j: v for j, v in x.items() if not F.objects[j].is_zero(v)}


# cofibrancy ----------------------------------------------------------


def is_cofibrant_at(F: Diagram, i) -> CheckReport:
    """``colim_{P<i} F -> F(i)`` is injective."""
    _require(F, COVARIANT)
    eps = eps_map(F, i)
    for g in eps.kernel().gens:
        below = F.poset.below(i)
        x = _split(below, [F.objects[k] for k in below], g)
        return CheckReport(False, i, _nonzero_parts(F, x) or x, "nonzero class of the colimit below maps to 0")
    return CheckReport(True, i)


def _global(check, D):
    for i in D.poset.rank_order():
        r = check(D, i)
        if not r:
            return r
    return CheckReport(True)


def is_cofibrant(F: Diagram) -> CheckReport:
    return _global(is_cofibrant_at, F)


# pseudo-projectivity -------------------------------------------------


def _relation_kernel(F, J, i):
    """Generators of ``ker(sum_{j in J} F(j) -> F(i))`` split by element."""
    groups = [F.objects[j] for j in J]
    total = direct_sum(*groups, ring=F.ring)
    sigma = hom_from_sum([F.arrow(j, i) for j in J], F.objects[i], src=total)
    return [_split(J, groups, g) for g in sigma.kernel().gens]


def _pp_condition(F, J, maxes, i):
    """None if the condition holds for ``J``, else ``(j, kernel tuple)``."""
    K = _relation_kernel(F, J, i)
    for a in maxes:
        Im = boundary_image(F, a)
        for x in K:
            if not Im.contains(x[a]):
                return a, x
    return None


def is_pseudo_projective_at(F: Diagram, i) -> CheckReport:
    """Maximal components of relations over ``J_A`` lie in ``Im_F``, for every antichain ``A`` below ``i``."""
    _require(F, COVARIANT)
    P = F.poset
    for A in P.antichains_below(i):
        if not A:
            continue
        J = P.downset(A)
        bad = _pp_condition(F, J, A, i)
        if bad is not None:
            a, x = bad
            return CheckReport(
                False, i, {"antichain": list(A), "element": a, "relation": _nonzero_parts(F, x)},
                f"component at {a!r} of a relation escapes the boundary image",
            )
    return CheckReport(True, i)


def is_pseudo_projective_at_bruteforce(F: Diagram, i) -> CheckReport:
    """Same condition, checked for every nonempty subset ``J`` of the closed ray below ``i``."""
    _require(F, COVARIANT)
    P = F.poset
    ray = P.below(i, strict=False)
    for size in range(1, len(ray) + 1):
        for J in combinations(ray, size):
            bad = _pp_condition(F, list(J), P.maxima(J), i)
            if bad is not None:
                a, x = bad
                return CheckReport(False, i, {"subset": list(J), "element": a, "relation": _nonzero_parts(F, x)})
    return CheckReport(True, i)


def is_pseudo_projective(F: Diagram) -> CheckReport:
    return _global(is_pseudo_projective_at, F)


# fibrancy ------------------------------------------------------------


def is_fibrant_at(G: Diagram, i) -> CheckReport:
    """``G(i) -> lim_{P<i} G`` is onto the compatible tuples."""
    _require(G, CONTRAVARIANT)
    rho, S = restriction_to_ray(G, i)
    missing = S.escaping(rho.image())
    if missing is None:
        return CheckReport(True, i)
    below = G.poset.below(i)
    x = _split(below, [G.objects[k] for k in below], missing)
    return CheckReport(False, i, x, "compatible tuple not reached from G(i)")


def is_fibrant(G: Diagram) -> CheckReport:
    return _global(is_fibrant_at, G)


def is_pseudo_injective_at(G: Diagram, i) -> CheckReport:
    """``sum_{a in A} ker_G(a)`` is reached from ``G(i)``, for every antichain ``A`` below ``i``."""
    _require(G, CONTRAVARIANT)
    P = G.poset
    for A in P.antichains_below(i):
        if not A:
            continue
        groups = [G.objects[a] for a in A]
        total = direct_sum(*groups, ring=G.ring)
        reach = hom_to_sum([G.arrow(a, i) for a in A], G.objects[i], dst=total).image()
        gens, n = [], 0
        for a, Ga in zip(A, groups):
            for x in boundary_kernel(G, a).gens:
                v = [0] * total.ngens
                v[n:n + Ga.ngens] = x
                gens.append(v)
            n += Ga.ngens
        missing = Subgroup(total, gens).escaping(reach)
        if missing is not None:
            return CheckReport(
                False, i, {"antichain": list(A), "tuple": _split(A, groups, missing)},
                "tuple of boundary-kernel elements not reached from G(i)",
            )
    return CheckReport(True, i)


def is_pseudo_injective(G: Diagram) -> CheckReport:
    return _global(is_pseudo_injective_at, G)


# certificates --------------------------------------------------------


class CertificateError(Exception):
    pass


class NotARelation(CertificateError):
    pass


class NoDecomposition(CertificateError):
    def __init__(self, element, component):
        super().__init__(f"component {component} at {element!r} is not in the boundary image")
        self.element = element
        self.component = component


@dataclass
class RewriteStep:
    x: dict
    witnesses: dict  # j -> {k: y_kj}


@dataclass
class RewriteTrace:
    at: Any
    steps: list
    terminal: bool

    def __len__(self):
        return len(self.steps)

    def verify(self, F: Diagram):
        """Re-check the trace; returns a list of violated invariants (empty when valid)."""
        P, problems = F.poset, []
        target = F.objects[self.at]

        def value(x):
            v = target.zero_element()
            for j, xj in x.items():
                v = tuple(a + b for a, b in zip(v, F.arrow(j, self.at)(xj)))
            return v

        def diff(a, b):
            keys = set(a) | set(b)
            out = {}
            for j in keys:
                G = F.objects[j]
                va = a.get(j, G.zero_element())
                vb = b.get(j, G.zero_element())
                out[j] = tuple(p - q for p, q in zip(va, vb))
            return out

        if not self.steps:
            return ["empty trace"]
        for n, step in enumerate(self.steps):
            if any(not P.lt(j, self.at) for j in step.x):
                problems.append(f"step {n}: support leaves the strict ray")
            if not target.is_zero(value(step.x)):
                problems.append(f"step {n}: not a relation")
        for n in range(len(self.steps) - 1):
            cur, nxt = self.steps[n], self.steps[n + 1]
            supp = F.support(cur.x)
            if set(cur.witnesses) != set(P.maxima(supp)):
                problems.append(f"step {n}: witnesses not indexed by the maximal support")
            expected = {}
            for j, ys in cur.witnesses.items():
                for k, y in ys.items():
                    if not P.lt(k, j):
                        problems.append(f"step {n}: witness index {k!r} not below {j!r}")
                        continue
                    Gk, Gj = F.objects[k], F.objects[j]
                    expected[k] = tuple(a + b for a, b in zip(expected.get(k, Gk.zero_element()), y))
                    fy = F.arrow(k, j)(y)
                    expected[j] = tuple(a - b for a, b in zip(expected.get(j, Gj.zero_element()), fy))
            d = diff(nxt.x, cur.x)
            for j in set(d) | set(expected):
                G = F.objects[j]
                if not G.equal(d.get(j, G.zero_element()), expected.get(j, G.zero_element())):
                    problems.append(f"step {n}: difference at {j!r} is not of the two-term form")
            new_supp = F.support(nxt.x)
            if not all(any(P.lt(a, b) for b in supp) for a in new_supp):
                problems.append(f"step {n}: support does not descend")
        if F.support(self.steps[-1].x):
            problems.append("final element is not zero")
        if not self.terminal:
            problems.append("trace not marked terminal")
        return problems


def certify_zero_class(F: Diagram, i, x) -> RewriteTrace:
    """Rewrite a relation ``x`` over the strict ray below ``i`` down to zero.

    At each step every component at a maximal support element ``j`` is
    written as ``sum_k F(k<j) y_kj`` over the lower covers ``k`` of ``j``,
    then moved down to the ``k``.

    >>> from posetcolim.poset import FinPoset
    >>> from posetcolim.abgrp import FgAbGroup
    >>> from posetcolim.linalg import Matrix
    >>> Z = FgAbGroup.free(1)
    >>> P = FinPoset.from_covers("bjki", [("b", "j"), ("b", "k"), ("j", "i"), ("k", "i")])
    >>> F = Diagram.constant(P, Z)
    >>> t = certify_zero_class(F, "i", {"j": (1,), "k": (-1,)})
    >>> [s.x for s in t.steps]
    [{'j': (1,), 'k': (-1,)}, {}]
    >>> t.verify(F)
    []
    """
    _require(F, COVARIANT)
    P = F.poset
    target = F.objects[i]
    x = {j: F.objects[j].element(v) for j, v in x.items()}
    for j in x:
        if not P.lt(j, i):
            raise NotARelation(f"{j!r} is not strictly below {i!r}")
    total = target.zero_element()
    for j, v in x.items():
        total = tuple(a + b for a, b in zip(total, F.arrow(j, i)(v)))
    if not target.is_zero(total):
        raise NotARelation("the components do not sum to zero in F(i)")
    x = _nonzero_parts(F, x)
    steps = []
    bound = P.height + 2
    while x:
        if len(steps) > bound:
            raise CertificateError("support failed to descend")
        maxes = P.maxima(x)
        witnesses = {}
        nxt = {j: v for j, v in x.items() if j not in maxes}
        for j in maxes:
            lower = P.lower_covers(j)
            if not lower:
                raise NoDecomposition(j, x[j])
            groups = [F.objects[k] for k in lower]
            src = direct_sum(*groups, ring=F.ring)
            sol = hom_from_sum([F.edges[(k, j)] for k in lower], F.objects[j], src=src).preimage(x[j])
            if sol is None:
                raise NoDecomposition(j, x[j])
            ys = _split(lower, groups, sol)
            ys = {k: y for k, y in ys.items() if any(y)}
            witnesses[j] = ys
            for k, y in ys.items():
                prev = nxt.get(k, F.objects[k].zero_element())
                nxt[k] = tuple(a + b for a, b in zip(prev, y))
        steps.append(RewriteStep(dict(x), witnesses))
        x = _nonzero_parts(F, nxt)
    steps.append(RewriteStep({}, {}))
    return RewriteTrace(i, steps, True)


# cross-check ---------------------------------------------------------


def local_profile(D: Diagram):
    """Per-element verdicts of the two checks matching the variance."""
    if D.covariant:
        a, b = is_pseudo_projective_at, is_cofibrant_at
    else:
        a, b = is_pseudo_injective_at, is_fibrant_at
    return {i: (bool(a(D, i)), bool(b(D, i))) for i in D.poset.elements}


def crosscheck_instance(D: Diagram):
    """All theorem checks on one diagram; returns a dict of verdicts and violations."""
    from .derived import is_acyclic

    P = D.poset
    prof = local_profile(D)
    out = {"variance": D.variance, "local": {str(i): list(v) for i, v in prof.items()}}
    violations = []
    pointwise = [i for i, (a, b) in prof.items() if a != b]
    # the local form that does hold: the tuple condition at i holds iff the map condition holds at every j <= i
    for i in P.elements:
        down = all(prof[j][1] for j in P.below(i, strict=False))
        if prof[i][0] != down:
            violations.append(f"local equivalence fails at {i!r}")
    glob_a = all(a for a, _ in prof.values())
    glob_b = all(b for _, b in prof.values())
    if glob_a != glob_b:
        violations.append("global equivalence fails")
    side = "colim" if D.covariant else "lim"
    acyc = is_acyclic(D, side)
    if glob_b and not acyc:
        violations.append(f"{'cofibrant' if D.covariant else 'fibrant'} but {side}_{acyc.degree} = {acyc.group.describe()}")
    out.update(
        tuple_condition=glob_a, map_condition=glob_b, acyclic=bool(acyc),
        pointwise_mismatch=[str(i) for i in pointwise], violations=violations,
    )
    return out


def crosscheck_theorems(diagrams, workers=1):
    """Run :func:`crosscheck_instance` over ``diagrams``; violators carry their serialization."""
    from .fileio import diagram_to_json

    diagrams = list(diagrams)
    if workers > 1 and len(diagrams) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(crosscheck_instance, diagrams, chunksize=8))
    else:
        results = [crosscheck_instance(D) for D in diagrams]
    report = {"count": len(diagrams), "violations": [], "pointwise_mismatches": []}
    for n, (D, r) in enumerate(zip(diagrams, results)):
        if r["violations"]:
            report["violations"].append({"index": n, "problems": r["violations"], "instance": diagram_to_json(D)})
        if r["pointwise_mismatch"]:
            report["pointwise_mismatches"].append({"index": n, "elements": r["pointwise_mismatch"]})
    report["results"] = results
    return report
