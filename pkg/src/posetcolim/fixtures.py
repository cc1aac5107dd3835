"""
Named small diagrams and Mackey witnesses used by the tests, the CLI and
the acceptance driver.

The divisor-lattice fixtures live on the divisors of 12 ordered by
divisibility.  Transfers are multiplication by the index ``d/e``, so round
trips are multiplication by the index too: invertible over Q, not over Z.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .abgrp import QQ, ZZ, FgAbGroup, Hom
from .diagram import CONTRAVARIANT, COVARIANT, Diagram
from .linalg import Matrix
from .mackey import MackeyWitness
from .poset import FinPoset


def divisor_poset(n=12):
    divs = [d for d in range(1, n + 1) if n % d == 0]
    names = [str(d) for d in divs]
    covers = []
    for a in divs:
        for b in divs:
            if b != a and b % a == 0 and not any(c not in (a, b) and c % a == 0 and b % c == 0 for c in divs):
                covers.append((str(a), str(b)))
    return FinPoset.from_covers(names, covers)


def _scalar(G, c):
    return Hom.scalar(G, c)


def divisor_lattice_fixture(ring=QQ, n=12):
    """Constant rank-one diagram with identity arrows and index transfers (covariant base)."""
    P = divisor_poset(n)
    G = FgAbGroup.free(1, ring)
    F = Diagram.constant(P, G)
    transfers = {}
    for e in P:
        for d in P.above(e):
            transfers[(e, d)] = _scalar(G, int(d) // int(e))
    return MackeyWitness(F, transfers)


def divisor_lattice_full_fixture(ring=QQ, n=12):
    """The covariant fixture with triple maps ``alpha = beta = gamma = x (i / lcm(j, k))``."""
    W = divisor_lattice_fixture(ring, n)
    P, G = W.base.poset, W.base.objects[str(n)]
    triples = {}
    for i in P:
        for j in P.below(i):
            for k in P.below(i):
                a, b = int(j), int(k)
                lcm = a * b // gcd(a, b)
                s = _scalar(G, int(i) // lcm)
                triples[(i, j, k)] = (s, s, s)
    W.triples = triples
    return W


def divisor_lattice_contra_fixture(ring=QQ, n=12):
    """Contravariant base ``G(e<d) = x (d/e)`` with identity transfers."""
    P = divisor_poset(n)
    G1 = FgAbGroup.free(1, ring)
    maps = {(e, d): Matrix([[int(d) // int(e)]], 1) for e, d in P.covers()}
    G = Diagram(P, {e: G1 for e in P}, maps, CONTRAVARIANT)
    transfers = {(e, d): Hom.identity(G1) for e in P for d in P.above(e)}
    return MackeyWitness(G, transfers)


def square_poset():
    return FinPoset.from_covers(["b", "j", "k", "i"], [("b", "j"), ("b", "k"), ("j", "i"), ("k", "i")])


def transfer_escape_fixture(corrupt=True):
    """Square ``b < j, k < i`` with ``F(b) = 0``, ``F(j) = F(k) = Z``, ``F(i) = Z^2``.

    The valid transfers are the coordinate projections; the corrupted one
    sends ``(x, y)`` to ``x + y`` at ``j``, so the image of ``F(k)`` escapes
    ``Im_F(j) = 0``.
    """
    P = square_poset()
    O, Z, Z2 = FgAbGroup.zero(), FgAbGroup.free(1), FgAbGroup.free(2)
    F = Diagram(P, {"b": O, "j": Z, "k": Z, "i": Z2},
                {("b", "j"): [[]], ("b", "k"): [[]], ("j", "i"): [[1], [0]], ("k", "i"): [[0], [1]]})
    t = {
        ("b", "j"): Hom.zero(Z, O), ("b", "k"): Hom.zero(Z, O), ("b", "i"): Hom.zero(Z2, O),
        ("j", "i"): Hom(Z2, Z, [[1, 1]] if corrupt else [[1, 0]]),
        ("k", "i"): Hom(Z2, Z, [[0, 1]]),
    }
    return MackeyWitness(F, t)


def kernel_escape_fixture(corrupt=True):
    """Contravariant square with ``G(i) = Z^2`` projecting onto ``G(j) = G(k) = Z``, ``G(b) = 0``.

    Valid transfers are the coordinate inclusions; the corrupted one sends
    ``y`` at ``k`` to ``(y, y)``, so ``1 in ker_G(k)`` survives into ``G(j)``.
    """
    P = square_poset()
    O, Z, Z2 = FgAbGroup.zero(), FgAbGroup.free(1), FgAbGroup.free(2)
    G = Diagram(P, {"b": O, "j": Z, "k": Z, "i": Z2},
                {("b", "j"): [], ("b", "k"): [], ("j", "i"): [[1, 0]], ("k", "i"): [[0, 1]]}, CONTRAVARIANT)
    t = {
        ("b", "j"): Hom.zero(O, Z), ("b", "k"): Hom.zero(O, Z), ("b", "i"): Hom.zero(O, Z2),
        ("j", "i"): Hom(Z, Z2, [[1], [0]]),
        ("k", "i"): Hom(Z, Z2, [[1], [1]] if corrupt else [[0], [1]]),
    }
    return MackeyWitness(G, t)


def identity_transfer_fixture(G=None, n=3):
    """Constant contravariant diagram on a chain with identity transfers."""
    G = G or FgAbGroup.free(1)
    P = FinPoset.chain([f"c{t}" for t in range(n)])
    D = Diagram.constant(P, G, CONTRAVARIANT)
    return MackeyWitness(D, {(j, i): Hom.identity(G) for j in P for i in P.above(j)})


def zero_span():
    """``p1 <- p0 -> p2`` with ``F(p0) = Z`` and zero groups on the legs."""
    P = FinPoset.from_covers(["p0", "p1", "p2"], [("p0", "p1"), ("p0", "p2")])
    Z, O = FgAbGroup.free(1), FgAbGroup.zero()
    return Diagram(P, {"p0": Z, "p1": O, "p2": O}, {("p0", "p1"): [], ("p0", "p2"): []})


def suspended_zero_span():
    """Three-level diagram with ``colim_2 = Z``: ``Z`` at the bottom, zero elsewhere.

    Above the bottom sit two points below two points, a circle, so the
    bottom class survives two degrees up.
    """
    elems = ["z", "l1", "l2", "u1", "u2"]
    covers = [("z", "l1"), ("z", "l2"), ("l1", "u1"), ("l1", "u2"), ("l2", "u1"), ("l2", "u2")]
    P = FinPoset.from_covers(elems, covers)
    Z, O = FgAbGroup.free(1), FgAbGroup.zero()
    objs = {e: (Z if e == "z" else O) for e in P}
    return Diagram(P, objs, {c: [] for c in P.covers()})


def two_chain(mult, ring=ZZ):
    """``j < i`` with ``F(j) = F(i)`` rank one and the arrow ``x mult``."""
    P = FinPoset.chain(["j", "i"])
    G = FgAbGroup.free(1, ring)
    return Diagram(P, {"j": G, "i": G}, {("j", "i"): [[Fraction(mult) if ring == QQ else mult]]})
