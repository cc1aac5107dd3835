"""
Verification of weak Mackey data (covariant and contravariant), F-linearity,
full Mackey structures over meet-semilattices and monicity.

Nothing here synthesizes transfers; every check verifies supplied maps.
Automorphism conditions that need a choice of companion map are settled by
a bounded search over the solution space and reported as undetermined when
the search is inconclusive.

>>> from posetcolim.fixtures import divisor_lattice_fixture
>>> W = divisor_lattice_fixture()
>>> r = validate_weak_mackey(W)
>>> r.verdict, r.extra["quasi_unit"]
(True, True)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .abgrp import FgAbGroup, Hom, ShapeMismatch, quotient, solve_left, solve_right
from .checks import CheckReport
from .diagram import CONTRAVARIANT, COVARIANT, Diagram, WrongVariance, boundary_image, boundary_kernel
from .linalg import Matrix

DEFAULT_SEARCH_LIMIT = 4096
DEFAULT_COEFF_BOUND = 2


class MackeyError(Exception):
    pass


class NotMeetSemilattice(MackeyError):
    pass


class MissingWitness(MackeyError):
    pass


@dataclass
class MackeyWitness:
    """Transfers and round-trip endomorphisms attached to a diagram.

    ``transfers[(j, i)]`` runs against the base arrows: ``F(i) -> F(j)`` for a
    covariant base, ``G(j) -> G(i)`` for a contravariant one.
    ``units[(j, i)]`` is the round trip on the object at ``j``; missing
    units are filled in from the transfers.  ``betas[((j, i), k)]`` are
    optional companions for the linearity of ``units[(j, i)]`` at ``k < j``.
    ``triples[(i, j, k)] = (alpha, beta, gamma)`` carry full Mackey data.
    """

    base: Diagram
    transfers: dict
    units: dict = field(default_factory=dict)
    betas: dict | None = None
    triples: dict | None = None

    def __post_init__(self):
        P = self.base.poset
        for j in P.elements:
            for i in P.above(j):
                if (j, i) not in self.transfers:
                    raise MissingWitness(f"no transfer for {j!r} < {i!r}")
        self.units = dict(self.units or {})
        for (j, i) in self.transfers:
            if (j, i) not in self.units:
                self.units[(j, i)] = self.round_trip(j, i)

    def round_trip(self, j, i) -> Hom:
        t, a = self.transfers[(j, i)], self.base.arrow(j, i)
        return t @ a if self.base.covariant else a @ t


# homomorphism spaces ---------------------------------------------------


def hom_generators(X: FgAbGroup, Y: FgAbGroup):
    """Generators of ``Hom(X, Y)`` with their additive orders (0 = infinite)."""
    out = []
    for c, d in enumerate(X.orders):
        for t, e in enumerate(Y.orders):
            if d == 0:
                step, order = 1, e
            elif e == 0:
                continue
            else:
                step, order = e // gcd(e, d), gcd(e, d)
            B = Matrix.zeros(Y.rank, X.rank)
            B.rows[t][c] = step
            out.append((Hom(X, Y, Y.from_canon @ B @ X.to_canon, check=False), order))
    return out


def _search(base: Hom, directions, accept, limit, bound):
    """Look for ``base + sum t_m directions[m]`` accepted by ``accept``.

    Returns ``(found, exhaustive)``: the hit or None, and whether the whole
    (finite) space of candidates was covered.
    """
    if accept(base):
        return base, True
    if not directions:
        return None, True
    ranges, exhaustive = [], True
    for _, order in directions:
        if order:
            ranges.append(range(order))
        else:
            ranges.append(range(-bound, bound + 1))
            exhaustive = False
    total = 1
    for r in ranges:
        total *= len(r)
    if total > limit:
        exhaustive = False
    for n, coeffs in enumerate(itertools.product(*ranges)):
        if n >= limit:
            break
        cand = base
        for t, (g, _) in zip(coeffs, directions):
            if t:
                cand = cand + Hom(g.src, g.dst, g.matrix.scale(t), check=False)
        if accept(cand):
            return cand, exhaustive
    return None, exhaustive


def _is_auto(f: Hom):
    return f.inverse() is not None


# linearity -------------------------------------------------------------


def check_f_linear(F: Diagram, i, alpha: Hom, require_auto=False, betas=None,
                   limit=DEFAULT_SEARCH_LIMIT, bound=DEFAULT_COEFF_BOUND) -> CheckReport:
    """Is ``alpha`` on the object at ``i`` linear with respect to the arrows from below?

    Covariant: ``alpha . F(j<i) = F(j<i) . beta`` for each ``j < i``.
    Contravariant: ``G(j<i) . alpha = beta . G(j<i)``.
    With ``require_auto`` ``alpha`` and every ``beta`` must be automorphisms.
    ``verdict`` is True, False, or None for undetermined.
    """
    X = F.objects[i]
    if alpha.src.ngens != X.ngens or alpha.dst.ngens != X.ngens or alpha.src != X or alpha.dst != X:
        raise ShapeMismatch(f"alpha is not an endomorphism of the object at {i!r}")
    betas = betas or {}
    table = {}
    if require_auto and not _is_auto(alpha):
        return CheckReport(False, i, None, "alpha is not an automorphism", clause="auto", extra={"betas": table})
    undetermined = []
    for j in F.poset.below(i):
        f = F.arrow(j, i)
        Yj = F.objects[j]
        if F.covariant:
            lhs = alpha @ f

            def holds(b, f=f, lhs=lhs):
                return f @ b == lhs
        else:
            lhs = f @ alpha

            def holds(b, f=f, lhs=lhs):
                return b @ f == lhs

        if j in betas:
            b = betas[j]
            if not holds(b):
                return CheckReport(False, i, {"below": j}, "supplied companion does not commute", clause="linear", extra={"betas": table})
            if require_auto and not _is_auto(b):
                return CheckReport(False, i, {"below": j}, "supplied companion is not an automorphism", clause="auto", extra={"betas": table})
            table[j] = b
            continue
        b0 = solve_right(f, lhs) if F.covariant else solve_left(f, lhs)
        if b0 is None:
            return CheckReport(False, i, {"below": j}, "no companion endomorphism exists", clause="linear", extra={"betas": table})
        if not require_auto:
            table[j] = b0
            continue
        found, exhaustive = _search(b0, _homogeneous(F, f, Yj), _is_auto, limit, bound)
        if found is not None:
            table[j] = found
        elif exhaustive:
            return CheckReport(False, i, {"below": j}, "no companion automorphism exists", clause="auto", extra={"betas": table})
        else:
            undetermined.append(j)
    if undetermined:
        return CheckReport(None, i, {"undetermined": undetermined}, "bounded search inconclusive", clause="auto", extra={"betas": table})
    return CheckReport(True, i, extra={"betas": table})


def _homogeneous(F, f, Yj):
    """Generators of the companions ``b`` with ``f . b = 0`` (covariant) or ``b . f = 0``."""
    if F.covariant:
        K, inc = f.kernel().to_group()
        return [(inc @ g, o) for g, o in hom_generators(Yj, K)]
    Q = quotient(Yj, f.image())
    proj = Hom(Yj, Q, Matrix.identity(Yj.ngens), check=False)
    return [(g @ proj, o) for g, o in hom_generators(Q, Yj)]


# weak Mackey -----------------------------------------------------------


def _unit_report(W, require_auto, limit, bound):
    """F-linearity of every unit; returns (first failure or None, quasi flag)."""
    F = W.base
    quasi = True
    for (j, i), a in W.units.items():
        supplied = {}
        if W.betas:
            supplied = {k: b for ((jj, ii), k), b in W.betas.items() if (jj, ii) == (j, i)}
        r = check_f_linear(F, j, a, False, supplied, limit, bound)
        if not r:
            return CheckReport(False, i, {"pair": [j, i], **(r.witness or {})}, "unit is not linear: " + r.detail, clause="b"), False
        if require_auto and quasi is not False:
            q = check_f_linear(F, j, a, True, supplied, limit, bound)
            if q.verdict is False:
                quasi = False
            elif q.verdict is None:
                quasi = None
    return None, quasi


def validate_weak_mackey(W: MackeyWitness, limit=DEFAULT_SEARCH_LIMIT, bound=DEFAULT_COEFF_BOUND) -> CheckReport:
    """Covariant weak Mackey clauses (a) round trip, (b) linearity, (c) transfer images.

    ``extra["quasi_unit"]`` is True, False or None (undetermined).
    """
    F = W.base
    if F.variance != COVARIANT:
        raise WrongVariance("validate_weak_mackey needs a covariant base")
    P = F.poset
    for (j, i), t in W.transfers.items():
        if t.src.ngens != F.objects[i].ngens or t.dst.ngens != F.objects[j].ngens:
            raise ShapeMismatch(f"transfer for {j!r} < {i!r} has the wrong shape")
        if W.round_trip(j, i) != W.units[(j, i)]:
            return CheckReport(False, i, {"pair": [j, i]}, "transfer after arrow differs from the unit", clause="a")
    for (j, i), t in W.transfers.items():
        Im = boundary_image(F, j)
        for k in P.below(i):
            if P.leq(j, k):
                continue
            comp = t @ F.arrow(k, i)
            for col in comp.matrix.columns():
                if not Im.contains(col):
                    return CheckReport(False, i, {"pair": [j, i], "k": k, "image": list(col)},
                                       "transfer image escapes the boundary image", clause="c")
    fail, quasi = _unit_report(W, True, limit, bound)
    if fail is not None:
        return fail
    return CheckReport(True, extra={"quasi_unit": quasi})


SIDE_CONDITIONS = ("dual", "printed")


def _contra_side(P, j, k, side_condition):
    if side_condition == "dual":
        return not P.leq(k, j)
    if side_condition == "printed":
        return not P.lt(j, k)
    raise ValueError(f"unknown side condition {side_condition!r}")


def validate_weak_mackey_contra(W: MackeyWitness, side_condition="dual",
                                limit=DEFAULT_SEARCH_LIMIT, bound=DEFAULT_COEFF_BOUND) -> CheckReport:
    """Contravariant weak Mackey clauses, with kernel containment for the pairs selected by ``side_condition``.

    ``"dual"`` imposes ``ker_G(k) ⊆ ker(G(j<i) . F(k<i))`` for ``k < i`` with
    ``k`` not below-or-equal ``j``; ``"printed"`` imposes it whenever ``j``
    is not strictly below ``k``, which includes ``k = j``.
    """
    G = W.base
    if G.variance != CONTRAVARIANT:
        raise WrongVariance("validate_weak_mackey_contra needs a contravariant base")
    P = G.poset
    for (j, i), t in W.transfers.items():
        if t.src.ngens != G.objects[j].ngens or t.dst.ngens != G.objects[i].ngens:
            raise ShapeMismatch(f"transfer for {j!r} < {i!r} has the wrong shape")
        if W.round_trip(j, i) != W.units[(j, i)]:
            return CheckReport(False, i, {"pair": [j, i]}, "arrow after transfer differs from the unit", clause="a")
    for (j, i) in W.transfers:
        down = G.arrow(j, i)
        for k in P.below(i):
            if not _contra_side(P, j, k, side_condition):
                continue
            comp = down @ W.transfers[(k, i)]
            for x in boundary_kernel(G, k).gens:
                if not G.objects[j].is_zero(comp(x)):
                    return CheckReport(False, i, {"pair": [j, i], "k": k, "kernel_element": list(x)},
                                       "boundary-kernel element survives the composite", clause="c")
    fail, quasi = _unit_report(W, True, limit, bound)
    if fail is not None:
        return fail
    return CheckReport(True, extra={"quasi_unit": quasi})


# full Mackey -----------------------------------------------------------


def transfer_diagram(W: MackeyWitness) -> Diagram:
    """The transfers of a covariant witness as a contravariant diagram (checks functoriality)."""
    F = W.base
    return Diagram(F.poset, F.objects, {c: W.transfers[c] for c in F.poset.covers()}, CONTRAVARIANT)


def validate_full_mackey(W: MackeyWitness) -> CheckReport:
    """The three factorizations for every ``j < i``, ``k < i``; quasi-unit = the ``k = j`` triples are automorphisms.

    On success ``extra`` holds the derived covariant and contravariant weak witnesses.
    """
    F = W.base
    if F.variance != COVARIANT:
        raise WrongVariance("validate_full_mackey needs the covariant part as base")
    P = F.poset
    if not P.is_meet_semilattice():
        raise NotMeetSemilattice("the poset has a pair without a meet")
    if W.triples is None:
        raise MissingWitness("no triple maps supplied")
    try:
        G = transfer_diagram(W)
    except Exception as exc:
        return CheckReport(False, None, None, f"transfers are not functorial: {exc}", clause="functorial")
    for j, i in P.relation():
        if j != i and G.arrow(j, i) != W.transfers[(j, i)]:
            return CheckReport(False, i, {"pair": [j, i]}, "transfer differs from the composite of covers", clause="functorial")
    quasi = True
    for i in P.elements:
        below = P.below(i)
        for j in below:
            for k in below:
                if (i, j, k) not in W.triples:
                    raise MissingWitness(f"no triple for {(i, j, k)!r}")
                a, b, c = W.triples[(i, j, k)]
                m = P.meet(j, k)
                lhs = G.arrow(j, i) @ F.arrow(k, i)
                Fmj, Gmk = F.arrow(m, j), G.arrow(m, k)
                forms = (("alpha", a @ Fmj @ Gmk), ("beta", Fmj @ b @ Gmk), ("gamma", Fmj @ Gmk @ c))
                for name, rhs in forms:
                    if rhs != lhs:
                        return CheckReport(False, i, {"triple": [i, j, k]}, f"{name} factorization fails", clause=name)
                if j == k and quasi:
                    if not (_is_auto(a) and _is_auto(b) and _is_auto(c)):
                        quasi = False
    cov = MackeyWitness(F, dict(W.transfers))
    contra = MackeyWitness(G, {(j, i): F.arrow(j, i) for (j, i) in W.transfers})
    return CheckReport(True, extra={"quasi_unit": quasi, "covariant": cov, "contravariant": contra})


def check_monic(F: Diagram) -> CheckReport:
    """Every arrow of the diagram, over all strict pairs, is injective."""
    P = F.poset
    for j, i in P.relation():
        if j == i:
            continue
        f = F.arrow(j, i)
        K = f.kernel()
        if not K.is_trivial():
            return CheckReport(False, i, {"pair": [j, i], "kernel_element": list(K.gens[0])}, "arrow is not injective")
    return CheckReport(True)
