"""
Higher colimits and limits over a finite poset.

``colim_n F`` is the n-th homology of the chain complex with
``C_p = sum over chains i_0 < ... < i_p of F(i_0)`` and
``d = sum_k (-1)^k d_k``, where only ``d_0`` applies an arrow of ``F``.
Dually ``lim^n G`` is the cohomology of ``C^p = prod over chains of G(i_0)``.

>>> from posetcolim.poset import FinPoset
>>> from posetcolim.abgrp import FgAbGroup
>>> from posetcolim.diagram import Diagram
>>> Z, O = FgAbGroup.free(1), FgAbGroup.zero()
>>> P = FinPoset.from_covers(["p0", "p1", "p2"], [("p0", "p1"), ("p0", "p2")])
>>> F = Diagram(P, {"p0": Z, "p1": O, "p2": O}, {("p0", "p1"): [], ("p0", "p2"): []})
>>> [higher_colim(F, n).describe() for n in range(3)]
['0', 'Z', '0']
"""

from __future__ import annotations

from typing import NamedTuple

from .abgrp import FgAbGroup, Hom, direct_sum
from .diagram import CONTRAVARIANT, COVARIANT, Diagram, WrongVariance
from .linalg import Matrix


class ChainComplexError(Exception):
    pass


class PosetChainComplex:
    """Graded groups with differentials, plus the chain indexing of each summand.

    For the homological complex ``differentials[p]: C_p -> C_{p-1}``; for the
    cochain complex ``differentials[p]: C^p -> C^{p+1}``.
    """

    def __init__(self, diagram, chains, degrees, differentials, cohomological):
        self.diagram = diagram
        self.chains = chains
        self.degrees = degrees
        self.differentials = differentials
        self.cohomological = cohomological
        self.offsets = {}
        for p, cs in chains.items():
            n = 0
            for c in cs:
                self.offsets[(p, c)] = n
                n += diagram.objects[c[0]].ngens

    @property
    def top(self):
        return max(self.degrees) if self.degrees else -1

    def group(self, p) -> FgAbGroup:
        if p in self.degrees:
            return self.degrees[p]
        return FgAbGroup.zero(self.diagram.ring)

    def differential(self, p) -> Hom:
        """Map out of degree ``p`` (zero map when either side vanishes)."""
        if p in self.differentials:
            return self.differentials[p]
        q = p + 1 if self.cohomological else p - 1
        return Hom.zero(self.group(p), self.group(q))

    def element(self, p, parts):
        """Element of degree ``p`` from ``{chain: value in F(chain[0])}``."""
        G = self.group(p)
        v = [0] * G.ngens
        for c, x in parts.items():
            off = self.offsets[(p, tuple(c))]
            for t, a in enumerate(x):
                v[off + t] += a
        return G.element(v)

    def squares_to_zero(self):
        for p in self.degrees:
            q = p + 1 if self.cohomological else p - 1
            r = q + 1 if self.cohomological else q - 1
            if q in self.degrees and r in self.degrees:
                if not (self.differential(q) @ self.differential(p)).is_zero():
                    return False
        return True

    def homology(self, n) -> FgAbGroup:
        """``ker(out of n) / im(into n)`` in canonical form."""
        Cn = self.group(n)
        if Cn.is_trivial():
            return FgAbGroup.zero(self.diagram.ring)
        K = self.differential(n).kernel()
        prev = n - 1 if self.cohomological else n + 1
        incoming = self.differential(prev) if prev in self.degrees else None
        Kg, _ = K.to_group()
        rels = list(Kg.rels)
        if incoming is not None:
            for col in incoming.matrix.columns():
                c = K.coefficients(col)
                if c is None:
                    raise ChainComplexError("image of the incoming differential escapes the kernel")
                rels.append(c)
        return FgAbGroup(Kg.ngens, rels, Kg.ring)

    def euler_characteristic(self):
        return sum((-1) ** p * G.free_rank for p, G in self.degrees.items())


def _summand_layout(F, chains):
    groups = [F.objects[c[0]] for c in chains]
    offsets, n = [], 0
    for G in groups:
        offsets.append(n)
        n += G.ngens
    return groups, offsets, n


def build_complex(F: Diagram) -> PosetChainComplex:
    """The chain complex of a covariant diagram."""
    if F.variance != COVARIANT:
        raise WrongVariance("build_complex needs a covariant diagram")
    P = F.poset
    chains, degrees, layout = {}, {}, {}
    for p in range(P.height + 1):
        cs = P.chains(p)
        if not cs:
            break
        chains[p] = cs
        groups, offsets, n = _summand_layout(F, cs)
        degrees[p] = direct_sum(*groups, ring=F.ring)
        layout[p] = ({c: k for k, c in enumerate(cs)}, offsets)
    differentials = {}
    for p in range(1, len(chains)):
        src, dst = degrees[p], degrees[p - 1]
        pos, offs = layout[p - 1]
        M = Matrix.zeros(dst.ngens, src.ngens)
        col = 0
        for c in chains[p]:
            ng = F.objects[c[0]].ngens
            for k in range(p + 1):
                face = c[:k] + c[k + 1:]
                row0 = offs[pos[face]]
                sign = -1 if k % 2 else 1
                if k == 0:
                    A = F.arrow(c[0], c[1]).matrix
                    for t in range(ng):
                        for r in range(A.nrows):
                            M.rows[row0 + r][col + t] += sign * A.rows[r][t]
                else:
                    for t in range(ng):
                        M.rows[row0 + t][col + t] += sign
            col += ng
        differentials[p] = Hom(src, dst, M, check=False)
    return PosetChainComplex(F, chains, degrees, differentials, cohomological=False)


def build_cochain_complex(G: Diagram) -> PosetChainComplex:
    """The cochain complex of a contravariant diagram."""
    if G.variance != CONTRAVARIANT:
        raise WrongVariance("build_cochain_complex needs a contravariant diagram")
    P = G.poset
    chains, degrees, layout = {}, {}, {}
    for p in range(P.height + 1):
        cs = P.chains(p)
        if not cs:
            break
        chains[p] = cs
        groups, offsets, n = _summand_layout(G, cs)
        degrees[p] = direct_sum(*groups, ring=G.ring)
        layout[p] = ({c: k for k, c in enumerate(cs)}, offsets)
    differentials = {}
    for p in range(len(chains) - 1):
        src, dst = degrees[p], degrees[p + 1]
        pos, offs = layout[p]
        M = Matrix.zeros(dst.ngens, src.ngens)
        row = 0
        for c in chains[p + 1]:
            ng = G.objects[c[0]].ngens
            for k in range(p + 2):
                face = c[:k] + c[k + 1:]
                col0 = offs[pos[face]]
                sign = -1 if k % 2 else 1
                if k == 0:
                    A = G.arrow(c[0], c[1]).matrix
                    for r in range(ng):
                        for t in range(A.ncols):
                            M.rows[row + r][col0 + t] += sign * A.rows[r][t]
                else:
                    for r in range(ng):
                        M.rows[row + r][col0 + r] += sign
            row += ng
        differentials[p] = Hom(src, dst, M, check=False)
    return PosetChainComplex(G, chains, degrees, differentials, cohomological=True)


def higher_colim(F: Diagram, n: int, cx=None) -> FgAbGroup:
    """``colim_n F`` in canonical form."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    C = cx or build_complex(F)
    return C.homology(n)


def higher_lim(G: Diagram, n: int, cx=None) -> FgAbGroup:
    """``lim^n G`` in canonical form."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    C = cx or build_cochain_complex(G)
    return C.homology(n)


class Acyclicity(NamedTuple):
    acyclic: bool
    degree: int | None
    group: FgAbGroup | None

    def __bool__(self):
        return self.acyclic


def is_acyclic(F: Diagram, side: str = "colim") -> Acyclicity:
    """Vanishing of the derived groups in degrees ``1..height``; reports the first nonzero one."""
    if side == "colim":
        C, want = build_complex(F), COVARIANT
    elif side == "lim":
        C, want = build_cochain_complex(F), CONTRAVARIANT
    else:
        raise ValueError(f"unknown side {side!r}")
    if F.variance != want:
        raise WrongVariance(f"side {side!r} needs a {want} diagram")
    for n in range(1, F.poset.height + 1):
        H = C.homology(n)
        if not H.is_trivial():
            return Acyclicity(False, n, H)
    return Acyclicity(True, None, None)


def derived_profile(F: Diagram):
    """All derived groups in degrees ``0..height`` along the diagram's side."""
    if F.covariant:
        C = build_complex(F)
    else:
        C = build_cochain_complex(F)
    return [C.homology(n) for n in range(F.poset.height + 1)]
