"""
Diagrams of finitely generated abelian groups over a finite poset.

A covariant diagram ``F`` has arrows ``F(j) -> F(i)`` for ``j <= i``; a
contravariant one ``G`` has arrows ``G(i) -> G(j)``.  Both are stored over
the same poset, maps given on covers only, composites derived and checked.
``arrow(j, i)`` always takes ``j <= i`` and points the way the variance says.

>>> from posetcolim.poset import FinPoset
>>> from posetcolim.abgrp import FgAbGroup
>>> Z = FgAbGroup.free(1)
>>> P = FinPoset.from_covers(["p0", "p1", "p2"], [("p0", "p1"), ("p0", "p2")])
>>> F = Diagram(P, {"p0": Z, "p1": Z, "p2": Z}, {("p0", "p1"): [[2]], ("p0", "p2"): [[3]]})
>>> colimit_direct(F)[0].describe()
'Z'
"""

from __future__ import annotations

from .abgrp import (
    ZZ,
    FgAbGroup,
    Hom,
    Subgroup,
    direct_sum,
    hom_from_sum,
    hom_to_sum,
    inclusions,
    projections,
)
from .linalg import Matrix
from .poset import FinPoset, UnknownElement

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


class DiagramError(Exception):
    pass


class MissingObject(DiagramError):
    def __init__(self, element):
        super().__init__(f"no group given at {element!r}")
        self.element = element


class MissingEdge(DiagramError):
    def __init__(self, pair):
        super().__init__(f"no map given on the cover {pair[0]!r} < {pair[1]!r}")
        self.pair = tuple(pair)


class NotACover(DiagramError):
    def __init__(self, pair):
        super().__init__(f"map given on {pair[0]!r} < {pair[1]!r}, which is not a cover")
        self.pair = tuple(pair)


class NotFunctorial(DiagramError):
    def __init__(self, path1, path2):
        super().__init__(
            "composites disagree along " + " < ".join(map(repr, path1)) + " and " + " < ".join(map(repr, path2))
        )
        self.paths = (tuple(path1), tuple(path2))


class WrongVariance(DiagramError):
    pass


class Diagram:
    """Functor from a finite poset to presented abelian groups.

    ``edge_maps`` maps each cover ``(j, i)`` (``j < i``) to a Hom or a raw
    matrix ``F(j) -> F(i)`` (covariant) or ``G(i) -> G(j)`` (contravariant).
    """

    def __init__(self, poset: FinPoset, objects, edge_maps, variance=COVARIANT, ring=None):
        if variance not in (COVARIANT, CONTRAVARIANT):
            raise ValueError(f"unknown variance {variance!r}")
        self.poset = poset
        self.variance = variance
        self.objects = {}
        for e in poset.elements:
            if e not in objects:
                raise MissingObject(e)
            self.objects[e] = objects[e]
        for e in objects:
            if e not in poset:
                raise UnknownElement(e)
        rings = {G.ring for G in self.objects.values()} | ({ring} if ring is not None else set())
        if len(rings) > 1:
            raise DiagramError("objects over different rings")
        # kept so that empty restrictions remember their ring
        self._ring = next(iter(rings)) if rings else ZZ
        covers = set(poset.covers())
        for pair in edge_maps:
            if tuple(pair) not in covers:
                raise NotACover(pair)
        self.edges = {}
        for j, i in poset.covers():
            if (j, i) not in edge_maps:
                raise MissingEdge((j, i))
            m = edge_maps[(j, i)]
            mat = m.matrix if isinstance(m, Hom) else m
            if variance == COVARIANT:
                self.edges[(j, i)] = Hom(self.objects[j], self.objects[i], mat)
            else:
                self.edges[(j, i)] = Hom(self.objects[i], self.objects[j], mat)
        self._arrows = {}
        self._paths = {}
        self._build_arrows()

    @classmethod
    def constant(cls, poset, G, variance=COVARIANT):
        return cls(poset, {e: G for e in poset}, {c: Matrix.identity(G.ngens) for c in poset.covers()}, variance)

    @property
    def covariant(self):
        return self.variance == COVARIANT

    @property
    def ring(self):
        return self._ring

    def __getitem__(self, e):
        return self.objects[e]

    def _build_arrows(self):
        P = self.poset
        order = P.linear_extension()
        for e in order:
            self._arrows[(e, e)] = Hom.identity(self.objects[e])
            self._paths[(e, e)] = (e,)
        # arrows (j, i) in increasing i; every path j -> i ends with a cover c < i
        for i in order:
            for j in P.below(i):
                candidates = [c for c in P.lower_covers(i) if P.leq(j, c)]
                first = None
                for c in candidates:
                    if c == j:
                        f = self.edges[(j, i)]
                    else:
                        f = self._compose_cover(j, c, i)
                    path = self._paths[(j, c)] + (i,)
                    if first is None:
                        first = (f, path)
                    elif f != first[0]:
                        raise NotFunctorial(first[1], path)
                self._arrows[(j, i)] = first[0]
                self._paths[(j, i)] = first[1]

    def _compose_cover(self, j, c, i):
        if self.covariant:
            return self.edges[(c, i)] @ self._arrows[(j, c)]
        return self._arrows[(j, c)] @ self.edges[(c, i)]

    def arrow(self, j, i) -> Hom:
        """The map for ``j <= i``: ``F(j) -> F(i)``, or ``G(i) -> G(j)``."""
        try:
            return self._arrows[(j, i)]
        except KeyError:
            if j not in self.poset:
                raise UnknownElement(j) from None
            if i not in self.poset:
                raise UnknownElement(i) from None
            raise ValueError(f"{j!r} is not <= {i!r}") from None

    def restrict(self, S):
        """The diagram on the induced subposet ``S``."""
        Q = self.poset.subposet(S)
        objs = {e: self.objects[e] for e in Q}
        maps = {(j, i): self.arrow(j, i) for j, i in Q.covers()}
        return Diagram(Q, objs, maps, self.variance, self.ring)

    def support(self, x):
        """``{j : x_j != 0}`` for a formal sum ``x`` given as a dict."""
        return [j for j in self.poset.elements if j in x and not self.objects[j].is_zero(x[j])]

    def to_json(self):
        from .fileio import diagram_to_json

        return diagram_to_json(self)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        if self.variance != other.variance or self.poset != other.poset:
            return False
        for e in self.poset:
            A, B = self.objects[e], other.objects[e]
            if A.ngens != B.ngens or A != B:
                return False
        return all(self.edges[c] == other.edges[c] for c in self.edges)

    __hash__ = None

    def __repr__(self):
        return f"<{self.variance} Diagram on {len(self.poset)} elements>"


def _require(F, variance):
    if F.variance != variance:
        raise WrongVariance(f"expected a {variance} diagram")


def boundary_image(F: Diagram, i) -> Subgroup:
    """``Im_F(i)``: the subgroup of ``F(i)`` generated by images from strictly below."""
    _require(F, COVARIANT)
    target = F.objects[i]
    gens = []
    for k in F.poset.lower_covers(i):
        gens.extend(F.edges[(k, i)].matrix.columns())
    return Subgroup(target, gens)


def boundary_kernel(G: Diagram, j) -> Subgroup:
    """``ker_G(j)``: the intersection of kernels of ``G(j) -> G(k)`` over ``k < j``."""
    _require(G, CONTRAVARIANT)
    src = G.objects[j]
    lower = G.poset.lower_covers(j)
    if not lower:
        return Subgroup.whole(src)
    return hom_to_sum([G.edges[(k, j)] for k in lower], src).kernel()


def colimit_direct(F: Diagram):
    """Colimit as a cokernel over the covers, with its cone maps.

    Returns ``(C, cone)`` where ``cone[e]: F(e) -> C``.
    """
    _require(F, COVARIANT)
    elems = list(F.poset.elements)
    groups = [F.objects[e] for e in elems]
    total = direct_sum(*groups, ring=F.ring)
    offset = {}
    n = 0
    for e, G in zip(elems, groups):
        offset[e] = n
        n += G.ngens
    rels = list(total.rels)
    for (j, i), f in F.edges.items():
        for g in range(F.objects[j].ngens):
            v = [0] * n
            v[offset[j] + g] += 1
            for r, c in enumerate(f.matrix.col(g)):
                v[offset[i] + r] -= c
            rels.append(v)
    C = FgAbGroup(n, rels, total.ring)
    cone = {e: Hom(groups[k], C, inc.matrix, check=False) for k, (e, inc) in enumerate(zip(elems, inclusions(groups, total)))}
    return C, cone


def eps_map(F: Diagram, i) -> Hom:
    """``colim_{P<i} F -> F(i)`` induced by the arrows into ``F(i)``."""
    _require(F, COVARIANT)
    below = F.poset.below(i)
    R = F.restrict(below)
    C, _ = colimit_direct(R)
    target = F.objects[i]
    if not below:
        return Hom.zero(C, target)
    # generators of C are the generators of the F(k), k in the ray's element order
    return hom_from_sum([F.arrow(k, i) for k in R.poset.elements], target, src=C)


def limit_direct(G: Diagram):
    """Limit as the compatible tuples inside the product, with its projections.

    Returns ``(L, proj, inclusion)`` with ``proj[e]: L -> G(e)`` and
    ``inclusion: L -> prod G(e)``.
    """
    _require(G, CONTRAVARIANT)
    elems = list(G.poset.elements)
    groups = [G.objects[e] for e in elems]
    total = direct_sum(*groups, ring=G.ring)
    S = compatible_tuples(G, total)
    L, inc = S.to_group()
    pr = projections(groups, total)
    return L, {e: pr[k] @ inc for k, e in enumerate(elems)}, inc


def compatible_tuples(G: Diagram, total=None) -> Subgroup:
    """Subgroup of ``prod G(e)`` of tuples with ``G(j<i) x_i = x_j`` on every cover."""
    elems = list(G.poset.elements)
    groups = [G.objects[e] for e in elems]
    total = total if total is not None else direct_sum(*groups, ring=G.ring)
    pos = {e: k for k, e in enumerate(elems)}
    pr = projections(groups, total)
    parts = []
    for (j, i), f in G.edges.items():
        parts.append(f @ pr[pos[i]] - pr[pos[j]])
    if not parts:
        return Subgroup.whole(total)
    return hom_to_sum(parts, total).kernel()


def restriction_to_ray(G: Diagram, i):
    """``G(i) -> prod_{k<i} G(k)`` together with the compatible-tuples subgroup of its target."""
    _require(G, CONTRAVARIANT)
    below = G.poset.below(i)
    R = G.restrict(below)
    groups = [G.objects[k] for k in R.poset.elements]
    total = direct_sum(*groups, ring=G.ring)
    rho = hom_to_sum([G.arrow(k, i) for k in R.poset.elements], G.objects[i], dst=total)
    return rho, compatible_tuples(R, total)


def validate_diagram(poset, objects, edge_maps, variance=COVARIANT) -> Diagram:
    """Build and validate a diagram from raw data (matrices or Homs on covers)."""
    return Diagram(poset, objects, edge_maps, variance)
