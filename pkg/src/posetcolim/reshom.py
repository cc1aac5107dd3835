"""
Integral homology of finite groups from explicit free resolutions, with the
maps induced by homomorphisms.

A free ``ZG``-module of rank ``r`` is stored as ``Z^(r|G|)``, coordinate
``gen * |G| + g`` standing for ``g . e_gen``.  A resolution records, for each
degree ``k >= 1``, the boundaries ``d(e_gen)`` of its generators; ``d_0`` is
the augmentation.  Cyclic groups get the 2-periodic resolution
``(t - 1), N, (t - 1), ...``; other groups get a greedy one, adding
``ZG``-generators of the kernel one at a time until they span it.

>>> C3 = FiniteGroup.cyclic(3); C3.generator_ids = [1]
>>> R = periodic_resolution(C3, 5)
>>> [homology(R, q).describe() for q in range(1, 5)]
['Z/3', '0', 'Z/3', '0']
>>> S3 = small_groups()["S3"]
>>> R = free_resolution(S3, 5)
>>> [homology(R, q).describe() for q in range(1, 5)]
['Z/2', '0', 'Z/6', '0']
"""

from __future__ import annotations

from .abgrp import FgAbGroup, Hom, Subgroup, quotient
from .grouph import FiniteGroup, GroupError, small_groups  # noqa: F401  (small_groups used by the doctest)
from .linalg import Matrix, integer_kernel, smith


def act(G: FiniteGroup, h, v):
    """Left action of ``h`` on a vector of a free ``ZG``-module."""
    n = G.order
    out = [0] * len(v)
    for idx, c in enumerate(v):
        if c:
            gen, g = divmod(idx, n)
            out[gen * n + G.mul[h][g]] += c
    return out


class Resolution:
    """Free resolution truncated at ``length``; ``boundaries[k]`` lists ``d(e_gen)``."""

    def __init__(self, G: FiniteGroup, boundaries):
        self.G = G
        self.boundaries = boundaries  # boundaries[k] for k >= 1; index 0 unused
        self.length = len(boundaries) - 1
        self._z = {}
        self._snf = {}

    def rank(self, k):
        return 1 if k == 0 else len(self.boundaries[k])

    def z_matrix(self, k):
        """``d_k`` as an integer matrix ``Z^(r_k |G|) -> Z^(r_{k-1} |G|)``."""
        if k not in self._z:
            G, n = self.G, self.G.order
            if k == 0:
                self._z[k] = Matrix([[1] * n], n)
            else:
                cols = [act(G, g, b) for b in self.boundaries[k] for g in range(n)]
                self._z[k] = Matrix.from_columns(cols, self.rank(k - 1) * n)
        return self._z[k]

    def lift(self, k, target):
        """Some ``y`` in degree ``k`` with ``d_k y = target``; error if none."""
        if k not in self._snf:
            self._snf[k] = smith(self.z_matrix(k))
        y = self._snf[k].solve(target)
        if y is None:
            raise GroupError(f"target is not a boundary in degree {k - 1}")
        return y

    def coinvariant_boundary(self, k):
        """``d_k`` after applying ``Z (x)_ZG -``: sum coefficients over each generator block."""
        n = self.G.order
        rows = self.rank(k - 1)
        cols = [[sum(b[r * n:(r + 1) * n]) for r in range(rows)] for b in self.boundaries[k]]
        return Matrix.from_columns(cols, rows)

    def squares_to_zero(self):
        return all((self.z_matrix(k - 1) @ self.z_matrix(k)).is_zero() for k in range(1, self.length + 1))

    def is_exact(self):
        """Exactness at degrees ``0..length-1`` over ``Z`` (image saturated and of full kernel rank)."""
        for k in range(self.length):
            K = integer_kernel(self.z_matrix(k))
            D = smith(self.z_matrix(k + 1))
            if D.rank != len(K) or any(abs(d) != 1 for d in D.diagonal[:D.rank]):
                return False
        return True


def periodic_resolution(G: FiniteGroup, length, t=None):
    """``... --N--> ZG --(t-1)--> ZG`` for a cyclic group generated by ``t``."""
    t = G.generator_ids[0] if t is None else t
    if len(G.closure([t])) != G.order:
        raise GroupError("periodic resolution needs a generator of a cyclic group")
    n = G.order
    minus = [0] * n
    minus[t] += 1
    minus[G.identity] -= 1
    norm = [1] * n
    bds = [None] + [[minus if k % 2 else norm] for k in range(1, length + 1)]
    return Resolution(G, bds)


def _greedy_generators(G, K, width):
    """``ZG``-generators of the saturated lattice with basis ``K`` inside ``Z^width``."""
    span, chosen = [], []
    cands = sorted(K, key=lambda v: (sum(abs(x) for x in v), [-abs(x) for x in v]))
    for v in cands:
        if span:
            D = smith(Matrix.from_columns(span, width))
            if D.solve(v) is not None:
                continue
        chosen.append(v)
        span.extend(act(G, g, v) for g in range(G.order))
        D = smith(Matrix.from_columns(span, width))
        if D.rank == len(K) and all(abs(d) == 1 for d in D.diagonal[:D.rank]):
            break
    return chosen


def _reduced_kernel(M):
    """Kernel basis with entries shrunk by pairwise reduction (keeps later degrees small)."""
    K = [list(v) for v in integer_kernel(M)]
    changed = True
    while changed:
        changed = False
        for a in range(len(K)):
            for b in range(len(K)):
                if a == b:
                    continue
                for s in (1, -1):
                    w = [x - s * y for x, y in zip(K[a], K[b])]
                    if sum(abs(x) for x in w) < sum(abs(x) for x in K[a]):
                        K[a] = w
                        changed = True
    return K


def free_resolution(G: FiniteGroup, length):
    """Greedy free resolution of ``Z`` over ``ZG`` up to degree ``length``."""
    R = Resolution(G, [None])
    for k in range(1, length + 1):
        prev = R.z_matrix(k - 1)
        K = _reduced_kernel(prev)
        gens = _greedy_generators(G, K, prev.ncols)
        R.boundaries.append(gens)
        R.length = k
        R._z.pop(k, None)
    return R


class _Cycles:
    """``H_q`` of the coinvariant complex with coordinates for cycles."""

    def __init__(self, R: Resolution, q):
        self.q = q
        r = R.rank(q)
        dq = R.coinvariant_boundary(q) if q >= 1 else Matrix.zeros(0, r)
        Z = integer_kernel(dq) if q >= 1 else [[int(a == b) for a in range(r)] for b in range(r)]
        self.cycles = Subgroup(FgAbGroup.free(r), [list(z) for z in Z])
        zgroup, self.inc = self.cycles.to_group()
        if q + 1 > R.length:
            raise GroupError(f"resolution too short for H_{q}")
        B = R.coinvariant_boundary(q + 1)
        rels = [self.cycles.coefficients(B.col(c)) for c in range(B.ncols)]
        self.zgroup = zgroup
        self.H = quotient(zgroup, Subgroup(zgroup, rels))

    def class_of(self, z):
        return self.H.element(self.cycles.coefficients(z))


def homology(R: Resolution, q) -> FgAbGroup:
    return _Cycles(R, q).H


class ChainLift:
    """Chain map ``R_H -> R_G`` over a homomorphism ``f: H -> G`` (list of images)."""

    def __init__(self, RH: Resolution, RG: Resolution, f):
        self.RH, self.RG, self.f = RH, RG, list(f)
        self.images = {0: [self._unit(RG)]}

    @staticmethod
    def _unit(R):
        v = [0] * R.G.order
        v[R.G.identity] = 1
        return v

    def apply(self, k, v):
        """``phi_k`` on a vector of ``R_H`` in degree ``k``."""
        H, G = self.RH.G, self.RG.G
        nH = H.order
        out = [0] * (self.RG.rank(k) * G.order)
        imgs = self.degree(k)
        for idx, c in enumerate(v):
            if c:
                gen, h = divmod(idx, nH)
                for t, x in enumerate(act(G, self.f[h], imgs[gen])):
                    out[t] += c * x
        return out

    def degree(self, k):
        if k not in self.images:
            self.images[k] = [self.RG.lift(k, self.apply(k - 1, b)) for b in self.RH.boundaries[k]]
        return self.images[k]

    def coinvariant(self, k):
        """Induced map on ``Z (x)_ZG R`` in degree ``k``."""
        nG = self.RG.G.order
        rows = self.RG.rank(k)
        cols = [[sum(y[r * nG:(r + 1) * nG]) for r in range(rows)] for y in self.degree(k)]
        return Matrix.from_columns(cols, rows)


def induced_map(RH: Resolution, RG: Resolution, f, q, lift=None, src=None, dst=None) -> Hom:
    """``H_q(f): H_q(H) -> H_q(G)`` on the presentations of :func:`homology`."""
    lift = lift or ChainLift(RH, RG, f)
    src = src or _Cycles(RH, q)
    dst = dst or _Cycles(RG, q)
    M = lift.coinvariant(q)
    cols = [dst.cycles.coefficients(M @ z) for z in src.cycles.gens]
    return Hom(src.H, dst.H, Matrix.from_columns(cols, dst.H.ngens))


class GroupHomology:
    """Cached ``H_q`` data for one group and one resolution."""

    def __init__(self, R: Resolution):
        self.R = R
        self._cyc = {}

    def cycles(self, q):
        if q not in self._cyc:
            self._cyc[q] = _Cycles(self.R, q)
        return self._cyc[q]

    def H(self, q):
        return self.cycles(q).H

    @property
    def group(self):
        return self.R.G


def induced(src: GroupHomology, dst: GroupHomology, f, q, lift=None) -> Hom:
    return induced_map(src.R, dst.R, f, q, lift, src.cycles(q), dst.cycles(q))
