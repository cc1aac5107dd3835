"""
E2-page of the homology spectral sequence of a graded diagram,
``E2[p, q] = colim_p`` of layer ``q``, with positional collapse detection and
assembly of total homology when the two nonzero columns share no primes.

>>> from posetcolim.fixtures import zero_span
>>> D = GradedDiagram(zero_span().poset, {0: zero_span()})
>>> page = e2_page(D, 2, 0)
>>> [page[p, 0].describe() for p in range(3)]
['0', 'Z', '0']
>>> collapse_report(page).nonzero
[(1, 0)]
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abgrp import FgAbGroup, direct_sum
from .derived import build_complex, higher_colim
from .diagram import DiagramError
from .poset import FinPoset


class SpectralError(Exception):
    pass


class MissingLayer(SpectralError):
    def __init__(self, q):
        super().__init__(f"no layer for q = {q}")
        self.q = q


class NotCollapsed(SpectralError):
    def __init__(self, positions):
        super().__init__(f"entries outside columns 0 and 1: {sorted(positions)}")
        self.positions = positions


class ExtensionAmbiguous(SpectralError):
    def __init__(self, n, primes):
        shown = sorted(primes, key=lambda p: (p == "inf", p if p != "inf" else 0))
        super().__init__(f"extension at n = {n} not determined; shared primes {shown}")
        self.n = n
        self.primes = set(primes)


class GradedDiagram:
    """Covariant diagrams ``layers[q]`` on one poset."""

    def __init__(self, poset: FinPoset, layers):
        self.poset = poset
        self.layers = dict(layers)
        for q, L in self.layers.items():
            if L.poset != poset:
                raise DiagramError(f"layer {q} lives on a different poset")
            if not L.covariant:
                raise DiagramError(f"layer {q} is not covariant")

    def __getitem__(self, q):
        if q not in self.layers:
            raise MissingLayer(q)
        return self.layers[q]


@dataclass
class E2Page:
    entries: dict = field(default_factory=dict)
    p_max: int = -1
    q_max: int = -1

    def __getitem__(self, pq):
        return self.entries[pq]

    def row(self, q):
        return [self.entries[(p, q)] for p in range(self.p_max + 1)]

    def table(self):
        """Rows ``q``, columns ``p``, invariant-factor strings."""
        return [[self.entries[(p, q)].describe() for p in range(self.p_max + 1)] for q in range(self.q_max + 1)]

    def to_tsv(self):
        head = "q\\p\t" + "\t".join(str(p) for p in range(self.p_max + 1))
        return "\n".join([head] + [f"{q}\t" + "\t".join(r) for q, r in enumerate(self.table())])

    def to_json(self):
        return {"p_max": self.p_max, "q_max": self.q_max,
                "entries": [{"p": p, "q": q, "group": G.describe(), "free_rank": G.free_rank,
                             "torsion": list(G.invariant_factors())} for (p, q), G in sorted(self.entries.items())]}


def e2_page(D: GradedDiagram, p_max, q_max) -> E2Page:
    page = E2Page(p_max=p_max, q_max=q_max)
    zero = FgAbGroup.zero()
    h = D.poset.height
    for q in range(q_max + 1):
        L = D[q]
        cx = build_complex(L)
        for p in range(p_max + 1):
            page.entries[(p, q)] = higher_colim(L, p, cx) if p <= h else zero
    return page


@dataclass
class CollapseReport:
    nonzero: list
    collapsed: bool

    def to_json(self):
        return {"nonzero": [list(pq) for pq in self.nonzero], "collapsed": self.collapsed}


def collapse_report(page: E2Page) -> CollapseReport:
    """Nonzero positions; collapse when nothing sits in columns ``p >= 2``."""
    nz = sorted(pq for pq, G in page.entries.items() if not G.is_trivial())
    return CollapseReport(nz, all(p < 2 for p, _ in nz))


def prime_support(G: FgAbGroup):
    """Primes dividing an invariant factor, plus ``"inf"`` for a free part."""
    out = set()
    for d in G.invariant_factors():
        p = 2
        while p * p <= d:
            while d % p == 0:
                out.add(p)
                d //= p
            p += 1
        if d > 1:
            out.add(d)
    if G.free_rank:
        out.add("inf")
    return out


def assemble_homology(page: E2Page, n) -> FgAbGroup:
    """``H_n = E2[0, n] (+) E2[1, n-1]`` when the two entries share no primes."""
    rep = collapse_report(page)
    if not rep.collapsed:
        raise NotCollapsed([pq for pq in rep.nonzero if pq[0] >= 2])
    if (0, n) not in page.entries:
        raise MissingLayer(n)
    A = page[(0, n)]
    B = page[(1, n - 1)] if n >= 1 and (1, n - 1) in page.entries else FgAbGroup.zero()
    shared = prime_support(A) & prime_support(B)
    if shared:
        raise ExtensionAmbiguous(n, shared)
    return direct_sum(A, B).canonical_group()[0]


def torsion_filters(G: FgAbGroup, primes):
    """``(only these primes occur, none of these primes occur)`` for the torsion of ``G``.

    >>> torsion_filters(FgAbGroup.from_invariants(0, [3, 9]), {3})
    (True, False)
    >>> torsion_filters(FgAbGroup.cyclic(6), {2})
    (False, False)
    """
    primes = set(primes)
    supp = prime_support(G) - {"inf"}
    return supp <= primes and G.free_rank == 0, not (supp & primes)
