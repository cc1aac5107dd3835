"""
Finite groups, subgroup inclusion posets and the augmentation-kernel functor.

For a subgroup ``U`` of a finite group ``G``, ``H(U)`` is the subgroup of
``Z[G]`` of vectors whose coefficients sum to zero on every right coset
``Ug``.  It is free on ``{ug - g : u in U, u != 1}`` for fixed coset
representatives ``g``, so its rank is ``|G| - [G:U]``, and ``U <= V``
gives an inclusion ``H(U) -> H(V)``.

>>> S3 = FiniteGroup.from_permutations([(1, 0, 2), (1, 2, 0)])
>>> S3.order
6
>>> P = subgroup_poset(S3, S3.all_subgroups())
>>> len(P), P.height
(6, 2)
>>> F = kernel_functor_H(S3, P)
>>> sorted(F.objects[e].rank for e in P)
[0, 3, 3, 3, 4, 5]
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgrp import FgAbGroup
from .diagram import COVARIANT, Diagram
from .linalg import Matrix
from .poset import FinPoset


class GroupError(Exception):
    pass


class NotAGroup(GroupError):
    pass


class NotASubgroup(GroupError):
    def __init__(self, index):
        super().__init__(f"subgroup spec {index} is not closed under the group law")
        self.index = index


class FiniteGroup:
    """Group on ids ``0..order-1`` given by a multiplication table.

    ``mul[a][b]`` is the product ``ab``; the axioms are checked on construction.
    """

    def __init__(self, table, labels=None, check=True):
        self.mul = [list(r) for r in table]
        self.order = len(self.mul)
        self.labels = list(labels) if labels is not None else list(range(self.order))
        n = self.order
        if n == 0 or any(len(r) != n for r in self.mul):
            raise NotAGroup("table must be square and nonempty")
        if any(not 0 <= x < n for r in self.mul for x in r):
            raise NotAGroup("table entries out of range")
        ids = [e for e in range(n) if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(n))]
        if not ids:
            raise NotAGroup("no identity element")
        self.identity = ids[0]
        self._inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul[a][b] == self.identity:
                    self._inv[a] = b
                    break
            if self._inv[a] is None or self.mul[self._inv[a]][a] != self.identity:
                raise NotAGroup(f"element {a} has no two-sided inverse")
        if check:
            M = self.mul
            for a in range(n):
                for b in range(n):
                    ab = M[a][b]
                    for c in range(n):
                        if M[ab][c] != M[a][M[b][c]]:
                            raise NotAGroup(f"not associative at ({a}, {b}, {c})")

    @classmethod
    def from_permutations(cls, generators):
        """Permutation group generated by ``generators`` (tuples of images).

        Products compose right to left: ``(p q)(x) = p(q(x))``.  Element 0 is
        the identity, the rest in breadth-first order over the generators.
        """
        gens = [tuple(g) for g in generators]
        if not gens:
            raise NotAGroup("need at least one generator")
        deg = len(gens[0])
        if any(len(g) != deg or sorted(g) != list(range(deg)) for g in gens):
            raise NotAGroup("generators must be permutations of one set")
        ident = tuple(range(deg))
        elems, seen = [ident], {ident: 0}
        n = 0
        while n < len(elems):
            x = elems[n]
            for g in gens:
                y = tuple(g[x[t]] for t in range(deg))
                if y not in seen:
                    seen[y] = len(elems)
                    elems.append(y)
            n += 1
        table = [[seen[tuple(p[q[t]] for t in range(deg))] for q in elems] for p in elems]
        G = cls(table, labels=elems, check=False)
        G.generator_ids = [seen[g] for g in gens]
        return G

    @classmethod
    def cyclic(cls, n):
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], check=False)

    def inv(self, a):
        return self._inv[a]

    def element_of(self, label):
        return self.labels.index(tuple(label) if isinstance(label, (list, tuple)) else label)

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def closure(self, gens):
        """Subgroup generated by ``gens`` as a frozenset of ids."""
        out = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul[x][g]
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    def is_subgroup(self, S):
        S = set(S)
        if self.identity not in S:
            return False
        return all(self.mul[a][self.inv(b)] in S for a in S for b in S)

    def all_subgroups(self):
        """Every subgroup, smallest first, as :class:`SubgroupSpec` values."""
        found = {self.closure([a]) for a in range(self.order)}
        frontier = set(found)
        while frontier:
            new = set()
            for A in frontier:
                for B in list(found):
                    C = self.closure(A | B)
                    if C not in found and C not in new:
                        new.add(C)
            found |= new
            frontier = new
        subs = sorted(found, key=lambda S: (len(S), sorted(S)))
        return [SubgroupSpec(elements=S) for S in subs]

    def right_cosets(self, U):
        """Right cosets ``Ug`` in order of their smallest element, each listed from that element."""
        U = sorted(U)
        done, out = set(), []
        for g in range(self.order):
            if g in done:
                continue
            coset = [self.mul[u][g] for u in U]
            done.update(coset)
            out.append((g, coset))
        return out

    def hom_from_generators(self, other, images):
        """Homomorphism ``self -> other`` sending ``self.generator_ids`` to ``images``; checked."""
        gens = self.generator_ids
        f = {self.identity: other.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g, img in zip(gens, images):
                y = self.mul[x][g]
                fy = other.mul[f[x]][img]
                if y in f:
                    if f[y] != fy:
                        raise GroupError("generator images do not define a homomorphism")
                else:
                    f[y] = fy
                    frontier.append(y)
        for a in range(self.order):
            for b in range(self.order):
                if f[self.mul[a][b]] != other.mul[f[a]][f[b]]:
                    raise GroupError("generator images do not define a homomorphism")
        return [f[a] for a in range(self.order)]


@dataclass(frozen=True)
class SubgroupSpec:
    generators: tuple = ()
    elements: frozenset | None = None
    name: str | None = None

    def resolve(self, G: FiniteGroup, index=0):
        if self.elements is not None:
            S = frozenset(self.elements)
            if not G.is_subgroup(S):
                raise NotASubgroup(index)
            return S
        if any(not 0 <= g < G.order for g in self.generators):
            raise NotASubgroup(index)
        return G.closure(self.generators)


class SubgroupPoset(FinPoset):
    """Inclusion poset of subgroups; ``members[name]`` is the element set."""

    members: dict


def _default_name(G, S):
    if len(S) == 1:
        return "1"
    if len(S) == G.order:
        return "G"
    return "U" + str(len(S)) + "_" + "_".join(map(str, sorted(S)))


def subgroup_poset(G: FiniteGroup, subs) -> SubgroupPoset:
    """Containment poset on ``subs``; duplicates collapse to one element."""
    members, names = {}, []
    for n, spec in enumerate(subs):
        S = spec.resolve(G, n)
        if S in members.values():
            continue
        name = spec.name or _default_name(G, S)
        if name in members:
            raise GroupError(f"duplicate subgroup name {name!r}")
        members[name] = S
        names.append(name)
    pairs = [(a, b) for a in names for b in names if members[a] <= members[b]]
    P = SubgroupPoset(names, pairs, _checked=True)
    P.members = members
    return P


def _h_basis(G, U):
    """``(coset rep g, u)`` index list for the basis ``ug - g`` of ``H(U)``."""
    basis = []
    for g, coset in G.right_cosets(U):
        for x in coset:
            if x != g:
                basis.append((g, x))
    return basis


def h_vectors(G, U):
    """Basis of ``H(U)`` as vectors in ``Z[G]`` (coordinates indexed by group ids)."""
    out = []
    for g, x in _h_basis(G, U):
        v = [0] * G.order
        v[x] += 1
        v[g] -= 1
        out.append(v)
    return out


def in_h(G, U, v):
    """Membership in ``H(U)``: coefficient sums vanish on each right coset."""
    return all(sum(v[x] for x in coset) == 0 for _, coset in G.right_cosets(U))


def kernel_functor_H(G: FiniteGroup, P: SubgroupPoset) -> Diagram:
    """``U -> H(U)`` with inclusions, expressed in the coset bases."""
    objects, coords = {}, {}
    for name in P.elements:
        U = P.members[name]
        basis = _h_basis(G, U)
        objects[name] = FgAbGroup.free(len(basis))
        coords[name] = {x: n for n, (g, x) in enumerate(basis)}
    maps = {}
    for a, b in P.covers():
        Ua, Ub = P.members[a], P.members[b]
        M = Matrix.zeros(objects[b].ngens, objects[a].ngens)
        for col, v in enumerate(h_vectors(G, Ua)):
            if not in_h(G, Ub, v):
                raise GroupError(f"H({a}) is not inside H({b})")
            # in the coset basis of H(V) the coordinate of (vr - r) is the coefficient at vr
            for x, n in coords[b].items():
                M.rows[n][col] = v[x]
        maps[(a, b)] = M
    return Diagram(P, objects, maps, COVARIANT)


def small_groups():
    """Permutation realizations of the groups used in the test suites."""
    return {
        "S3": FiniteGroup.from_permutations([(1, 0, 2), (1, 2, 0)]),
        "A4": FiniteGroup.from_permutations([(1, 2, 0, 3), (0, 2, 3, 1)]),
        "Z6": FiniteGroup.from_permutations([(1, 2, 3, 4, 5, 0)]),
        "K": FiniteGroup.from_permutations([(1, 0, 3, 2), (2, 3, 0, 1)]),
    }


def bianchi_fixtures():
    """``(P1, GradedDiagram of layers q = 0..5, documentation)`` from the shipped data."""
    from .bianchi import load_shipped

    return load_shipped()


def check_amalgamation_hypothesis_docs():
    """Documentation record for the amalgamated-free-product criterion."""
    return {
        "statement": (
            "If a subgroup V in the poset is the free product of the subgroups below it, amalgamated "
            "along their common subgroup, then the augmentation-kernel functor H satisfies the tuple "
            "condition (pseudo-projectivity) at V."
        ),
        "status": "not verified algorithmically",
        "reason": "deciding whether a given group is such an amalgamated free product needs group-presentation algorithms, which are out of scope",
        "instead": "for finite-group instances build the diagram with kernel_functor_H and call checks.is_pseudo_projective_at directly",
    }
