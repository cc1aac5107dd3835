import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import small_corpus_diagrams
from oracles import colim0_order, diagonal_orders, limit_order
from posetcolim.abgrp import FgAbGroup, Hom, NotWellDefined, Subgroup
from posetcolim.corpus import random_hom
from posetcolim.diagram import (
    CONTRAVARIANT,
    COVARIANT,
    Diagram,
    MissingEdge,
    MissingObject,
    NotACover,
    NotFunctorial,
    WrongVariance,
    boundary_image,
    boundary_kernel,
    colimit_direct,
    compatible_tuples,
    eps_map,
    limit_direct,
    restriction_to_ray,
    validate_diagram,
)
from posetcolim.fixtures import square_poset, zero_span
from posetcolim.poset import FinPoset, UnknownElement

Z, O = FgAbGroup.free(1), FgAbGroup.zero()


def test_non_commuting_square_rejected():
    P = square_poset()
    maps = {("b", "j"): [[2]], ("j", "i"): [[3]], ("b", "k"): [[5]], ("k", "i"): [[1]]}
    with pytest.raises(NotFunctorial) as e:
        validate_diagram(P, {x: Z for x in P}, maps)
    assert set(e.value.paths) == {("b", "j", "i"), ("b", "k", "i")}
    maps[("b", "k")] = [[6]]
    D = validate_diagram(P, {x: Z for x in P}, maps)
    assert D.arrow("b", "i") == Hom.scalar(Z, 6)


def test_construction_errors():
    P = FinPoset.chain("ab")
    with pytest.raises(MissingObject):
        Diagram(P, {"a": Z}, {("a", "b"): [[1]]})
    with pytest.raises(MissingEdge):
        Diagram(P, {"a": Z, "b": Z}, {})
    with pytest.raises(NotACover):
        Diagram(P, {"a": Z, "b": Z}, {("a", "b"): [[1]], ("b", "a"): [[1]]})
    with pytest.raises(UnknownElement):
        Diagram(P, {"a": Z, "b": Z, "c": Z}, {("a", "b"): [[1]]})
    with pytest.raises(NotWellDefined):
        Diagram(P, {"a": FgAbGroup.cyclic(2), "b": Z}, {("a", "b"): [[1]]})
    with pytest.raises(WrongVariance):
        boundary_kernel(Diagram.constant(P, Z), "a")
    with pytest.raises(WrongVariance):
        colimit_direct(Diagram.constant(P, Z, CONTRAVARIANT))


def test_span_colimit():
    P = FinPoset.from_covers(["p0", "p1", "p2"], [("p0", "p1"), ("p0", "p2")])
    D = Diagram(P, {x: Z for x in P}, {("p0", "p1"): [[2]], ("p0", "p2"): [[3]]})
    C, cone = colimit_direct(D)
    assert C.describe() == "Z"
    assert cone["p1"] @ D.arrow("p0", "p1") == cone["p2"] @ D.arrow("p0", "p2") == cone["p0"]
    C, _ = colimit_direct(zero_span())
    assert C.is_trivial()


def test_boundary_examples():
    P = FinPoset.chain(["j", "i"])
    D = Diagram(P, {"j": Z, "i": Z}, {("j", "i"): [[2]]})
    Im = boundary_image(D, "i")
    assert Im == Subgroup(Z, [(2,)]) and boundary_image(D, "j").order() == 1
    G = Diagram(P, {"j": FgAbGroup.cyclic(2), "i": Z}, {("j", "i"): [[1]]}, CONTRAVARIANT)
    K = boundary_kernel(G, "i")
    assert K == Subgroup(Z, [(2,)])
    assert boundary_kernel(G, "j") == Subgroup.whole(G["j"])


def test_constant_and_restrict():
    P = square_poset()
    D = Diagram.constant(P, FgAbGroup.cyclic(3))
    assert D.arrow("b", "i") == Hom.identity(D["i"])
    R = D.restrict(["b", "j", "i"])
    assert set(R.poset.covers()) == {("b", "j"), ("j", "i")}
    assert D == Diagram.constant(P, FgAbGroup.cyclic(3))
    assert D != Diagram.constant(P, FgAbGroup.cyclic(3), CONTRAVARIANT)


@given(small_corpus_diagrams(COVARIANT))
def test_arrows_compose(D):
    P = D.poset
    for k in P:
        for j in P.above(k):
            for i in P.above(j):
                assert D.arrow(k, i) == D.arrow(j, i) @ D.arrow(k, j)


@given(small_corpus_diagrams(CONTRAVARIANT))
def test_arrows_compose_contravariant(G):
    P = G.poset
    for k in P:
        for j in P.above(k):
            for i in P.above(j):
                assert G.arrow(k, i) == G.arrow(k, j) @ G.arrow(j, i)


@given(small_corpus_diagrams(COVARIANT))
def test_colimit_cone_commutes_and_eps_image(D):
    C, cone = colimit_direct(D)
    P = D.poset
    for j, i in P.covers():
        assert cone[i] @ D.arrow(j, i) == cone[j]
    for i in P:
        assert eps_map(D, i).image() == boundary_image(D, i)


@given(small_corpus_diagrams(CONTRAVARIANT))
def test_limit_projections_compatible(G):
    L, proj, inc = limit_direct(G)
    for j, i in G.poset.covers():
        assert G.arrow(j, i) @ proj[i] == proj[j]
    assert inc.classify()["injective"]
    for i in G.poset:
        rho, S = restriction_to_ray(G, i)
        assert rho.image() <= S


def finite_chain_diagram(seed, variance):
    """Chain of diagonal finite groups with random maps; chains have no squares to check."""
    rnd = random.Random(seed)
    n = rnd.randint(1, 4)
    P = FinPoset.chain([f"c{t}" for t in range(n)])
    objs = {e: FgAbGroup.from_invariants(0, [rnd.randint(2, 4) for _ in range(rnd.randint(0, 2))]) for e in P}
    maps = {}
    for j, i in P.covers():
        a, b = (objs[j], objs[i]) if variance == COVARIANT else (objs[i], objs[j])
        maps[(j, i)] = random_hom(rnd, a, b, 3)
    return Diagram(P, objs, maps, variance)


@given(st.integers(0, 10**6))
def test_colimit_order_by_enumeration(seed):
    D = finite_chain_diagram(seed, COVARIANT)
    orders = {e: diagonal_orders(D[e]) or [] for e in D.poset}
    C, _ = colimit_direct(D)
    assert C.order() == colim0_order(D, orders)


@given(small_corpus_diagrams(COVARIANT))
def test_colimit_order_by_enumeration_on_corpus(D):
    orders = {e: diagonal_orders(D[e]) for e in D.poset}
    assume(all(o is not None or D[e].ngens == 0 for e, o in orders.items()))
    orders = {e: o or [] for e, o in orders.items()}
    C, _ = colimit_direct(D)
    assert C.order() == colim0_order(D, orders)


@given(st.integers(0, 10**6))
def test_limit_order_by_enumeration(seed):
    G = finite_chain_diagram(seed, CONTRAVARIANT)
    orders = {e: diagonal_orders(G[e]) or [] for e in G.poset}
    L, _, _ = limit_direct(G)
    assert L.order() == limit_order(G, orders)
    assert compatible_tuples(G).order() == L.order()
