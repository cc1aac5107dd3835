import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_corpus_diagrams
from oracles import order_complex_betti
from posetcolim.abgrp import QQ, FgAbGroup
from posetcolim.corpus import random_poset
from posetcolim.derived import (
    build_cochain_complex,
    build_complex,
    derived_profile,
    higher_colim,
    higher_lim,
    is_acyclic,
)
from posetcolim.diagram import CONTRAVARIANT, COVARIANT, Diagram, WrongVariance, colimit_direct, limit_direct
from posetcolim.fixtures import square_poset, suspended_zero_span, two_chain, zero_span
from posetcolim.poset import FinPoset

posets = st.builds(lambda s, n: random_poset(random.Random(s), n), st.integers(0, 10**6), st.integers(1, 6))


def test_zero_span_examples():
    assert [G.describe() for G in derived_profile(zero_span())] == ["0", "Z"]
    assert [higher_colim(suspended_zero_span(), n).describe() for n in range(3)] == ["0", "0", "Z"]
    a = is_acyclic(zero_span())
    assert not a and a.degree == 1 and a.group.describe() == "Z"


def test_two_chain_and_errors():
    F = two_chain(2)
    assert higher_colim(F, 0).describe() == "Z" and higher_colim(F, 1).is_trivial()
    assert is_acyclic(F)
    with pytest.raises(ValueError):
        higher_colim(F, -1)
    with pytest.raises(WrongVariance):
        build_cochain_complex(F)
    with pytest.raises(WrongVariance):
        is_acyclic(F, side="lim")
    with pytest.raises(ValueError):
        is_acyclic(F, side="both")


def test_circle_has_homology_in_degree_one():
    # two minima below two maxima: the order complex is a circle
    P = FinPoset.from_covers(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    F = Diagram.constant(P, FgAbGroup.free(1))
    assert [G.describe() for G in derived_profile(F)] == ["Z", "Z"]
    G = Diagram.constant(P, FgAbGroup.cyclic(4), CONTRAVARIANT)
    assert [higher_lim(G, n).describe() for n in range(2)] == ["Z/4", "Z/4"]


def test_square_constant_is_contractible():
    F = Diagram.constant(square_poset(), FgAbGroup.free(2))
    assert [G.describe() for G in derived_profile(F)] == ["Z ⊕ Z", "0", "0"]


@given(small_corpus_diagrams(COVARIANT))
def test_differential_squares_to_zero(F):
    assert build_complex(F).squares_to_zero()


@given(small_corpus_diagrams(CONTRAVARIANT))
def test_codifferential_squares_to_zero(G):
    assert build_cochain_complex(G).squares_to_zero()


@given(small_corpus_diagrams(COVARIANT))
def test_colim0_is_the_colimit(F):
    assert higher_colim(F, 0) == colimit_direct(F)[0]


@given(small_corpus_diagrams(CONTRAVARIANT))
def test_lim0_is_the_limit(G):
    assert higher_lim(G, 0) == limit_direct(G)[0]


@given(posets)
def test_constant_diagram_sees_order_complex(P):
    FZ = Diagram.constant(P, FgAbGroup.free(1))
    FQ = Diagram.constant(P, FgAbGroup.free(1, QQ))
    GQ = Diagram.constant(P, FgAbGroup.free(1, QQ), CONTRAVARIANT)
    for n in range(P.height + 1):
        b = order_complex_betti(P, n)
        assert higher_colim(FZ, n).free_rank == b
        assert higher_colim(FQ, n).free_rank == b
        assert higher_lim(GQ, n).free_rank == b
    chi = sum((-1) ** p * len(P.chains(p)) for p in range(P.height + 1))
    assert build_complex(FZ).euler_characteristic() == chi


@given(small_corpus_diagrams(COVARIANT))
def test_top_element_kills_higher_colims(F):
    P = F.poset
    for i in P:
        R = F.restrict(P.below(i, strict=False))
        prof = derived_profile(R)
        assert prof[0] == F[i]
        assert all(G.is_trivial() for G in prof[1:])


@given(small_corpus_diagrams(CONTRAVARIANT))
def test_top_element_kills_higher_lims(G):
    # the top of P is initial in P^op
    P = G.poset
    for i in P:
        R = G.restrict(P.below(i, strict=False))
        prof = derived_profile(R)
        assert prof[0] == G[i]
        assert all(H.is_trivial() for H in prof[1:])


def test_projective_plane_torsion():
    # face poset of the six-vertex projective plane: H_1 = Z/2, H_2 = 0
    faces = ["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"]
    cells = sorted({"".join(s) for f in faces for k in (1, 2, 3) for s in combinations(f, k)},
                   key=lambda s: (len(s), s))
    covers = [(a, b) for a in cells for b in cells if len(b) == len(a) + 1 and set(a) <= set(b)]
    P = FinPoset.from_covers(cells, covers)
    F = Diagram.constant(P, FgAbGroup.free(1))
    assert [G.describe() for G in derived_profile(F)] == ["Z", "Z/2", "0"]
    G = Diagram.constant(P, FgAbGroup.free(1), CONTRAVARIANT)
    assert [higher_lim(G, n).describe() for n in range(3)] == ["Z", "0", "Z/2"]
