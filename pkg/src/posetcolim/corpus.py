"""
Seeded random diagrams for the cross-check suites.

Posets are random DAGs on ``p0 < ... < p{n-1}`` (index order is a linear
extension).  Covariant diagrams are built element by element: ``F(j)`` is
a target ``T`` with a map ``phi: colim_{P<j} F -> T`` and the arrows into
``j`` are ``phi`` composed with the colimit cone, so functoriality holds by
construction.  ``T`` is either random (``phi`` random) or the colimit
itself plus a random summand (``phi`` the inclusion), which makes ``F``
cofibrant at ``j``.  Contravariant diagrams use the dual recipe with the
limit over the strict ray.

Every instance is a pure function of ``(seed, index, parameters)``.
"""

from __future__ import annotations

import random
from math import gcd
from dataclasses import dataclass

from .abgrp import FgAbGroup, Hom, direct_sum, inclusions, projections
from .diagram import CONTRAVARIANT, COVARIANT, Diagram, colimit_direct, limit_direct
from .linalg import Matrix
from .poset import FinPoset


@dataclass(frozen=True)
class CorpusParams:
    count: int = 500
    max_poset: int = 6
    max_rank: int = 3
    max_torsion: int = 6
    max_entry: int = 3
    seed: int = 0


def random_poset(rng, n, density=None):
    density = rng.choice([0.25, 0.4, 0.6]) if density is None else density
    elems = [f"p{t}" for t in range(n)]
    covers = [(elems[a], elems[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    return FinPoset.from_covers(elems, covers)


def random_group(rng, max_rank, max_torsion):
    r = rng.randint(0, max_rank)
    free, torsion = 0, []
    for _ in range(r):
        if rng.random() < 0.45:
            free += 1
        else:
            torsion.append(rng.randint(2, max_torsion))
    return FgAbGroup.from_invariants(free, torsion)


def random_hom(rng, src, dst, max_entry):
    """Random well-defined map, drawn in canonical coordinates."""
    B = Matrix.zeros(dst.rank, src.rank)
    for c, d in enumerate(src.orders):
        for r, e in enumerate(dst.orders):
            if d == 0:
                step = 1
            elif e == 0:
                step = 0
            else:
                step = e // gcd(e, d)
            v = step * rng.randint(-max_entry, max_entry)
            B.rows[r][c] = v % e if e else v
    return Hom(src, dst, dst.from_canon @ B @ src.to_canon, check=False)


def _small(f):
    """Same map with entries reduced through canonical coordinates of the target."""
    Y = f.dst
    M = Y.from_canon @ f.canonical_matrix @ f.src.to_canon
    return Hom(f.src, Y, M, check=False)


def random_covariant(rng, P, max_rank=3, max_torsion=6, max_entry=3, p_extend=0.5):
    objects, maps = {}, {}
    for j in P.elements:
        below = P.below(j)
        if not below:
            objects[j] = random_group(rng, max_rank, max_torsion)
            continue
        partial = Diagram(P.subposet(below), {k: objects[k] for k in below},
                          {c: maps[c] for c in P.subposet(below).covers()})
        C, cone = colimit_direct(partial)
        Cc, iso = C.canonical_group()
        if rng.random() < p_extend and Cc.ngens <= max_rank:
            extra = random_group(rng, max_rank - Cc.ngens, max_torsion)
            T = direct_sum(Cc, extra)
            phi = inclusions([Cc, extra], T)[0] @ iso
        else:
            T = random_group(rng, max_rank, max_torsion)
            phi = random_hom(rng, C, T, max_entry)
        objects[j] = T
        for k in P.lower_covers(j):
            maps[(k, j)] = _small(phi @ cone[k]).matrix
    return Diagram(P, objects, maps, COVARIANT)


def random_contravariant(rng, P, max_rank=3, max_torsion=6, max_entry=3, p_extend=0.5):
    objects, maps = {}, {}
    for j in P.elements:
        below = P.below(j)
        if not below:
            objects[j] = random_group(rng, max_rank, max_torsion)
            continue
        sub = P.subposet(below)
        partial = Diagram(sub, {k: objects[k] for k in below}, {c: maps[c] for c in sub.covers()}, CONTRAVARIANT)
        L, proj, _ = limit_direct(partial)
        Lc, iso = L.canonical_group()
        if rng.random() < p_extend and Lc.ngens <= max_rank:
            extra = random_group(rng, max_rank - Lc.ngens, max_torsion)
            T = direct_sum(Lc, extra)
            back = iso.inverse()
            psi = back @ projections([Lc, extra], T)[0]
        else:
            T = random_group(rng, max_rank, max_torsion)
            psi = random_hom(rng, T, L, max_entry)
        objects[j] = T
        for k in P.lower_covers(j):
            maps[(k, j)] = _small(proj[k] @ psi).matrix
    return Diagram(P, objects, maps, CONTRAVARIANT)


def _instance_rng(seed, index, salt):
    return random.Random(f"{seed}:{index}:{salt}")


def corpus_poset(params: CorpusParams, index):
    rng = _instance_rng(params.seed, index, "poset")
    n = rng.randint(1, params.max_poset)
    return random_poset(rng, n)


def corpus_instance(params: CorpusParams, index, variance=COVARIANT):
    P = corpus_poset(params, index)
    rng = _instance_rng(params.seed, index, variance)
    p_extend = rng.choice([0.0, 0.5, 0.8, 1.0])
    gen = random_covariant if variance == COVARIANT else random_contravariant
    return gen(rng, P, params.max_rank, params.max_torsion, params.max_entry, p_extend)


def generate_corpus(params: CorpusParams, variance=COVARIANT):
    return [corpus_instance(params, n, variance) for n in range(params.count)]
