import json

import pytest
from hypothesis import given

from conftest import small_corpus_diagrams
from posetcolim.abgrp import FgAbGroup
from posetcolim.bkss import (
    E2Page,
    ExtensionAmbiguous,
    GradedDiagram,
    MissingLayer,
    NotCollapsed,
    assemble_homology,
    collapse_report,
    e2_page,
    prime_support,
    torsion_filters,
)
from posetcolim.derived import derived_profile
from posetcolim.diagram import CONTRAVARIANT, Diagram, DiagramError
from posetcolim.fixtures import suspended_zero_span, zero_span
from posetcolim.poset import FinPoset


@given(small_corpus_diagrams())
def test_row_is_the_derived_profile(F):
    D = GradedDiagram(F.poset, {0: F})
    h = F.poset.height
    page = e2_page(D, h + 2, 0)
    prof = derived_profile(F)
    assert page.row(0)[: h + 1] == prof
    assert all(G.is_trivial() for G in page.row(0)[h + 1:])


def test_collapse_detection():
    S = suspended_zero_span()
    page = e2_page(GradedDiagram(S.poset, {0: S, 1: S}), 2, 1)
    rep = collapse_report(page)
    assert not rep.collapsed and rep.nonzero == [(2, 0), (2, 1)]
    with pytest.raises(NotCollapsed) as e:
        assemble_homology(page, 1)
    assert sorted(e.value.positions) == [(2, 0), (2, 1)]


def test_assembly_and_ambiguity():
    P = FinPoset.chain(["j", "i"])
    Z2, Z3 = FgAbGroup.cyclic(2), FgAbGroup.cyclic(3)
    const = lambda G: Diagram.constant(P, G)  # noqa: E731
    D = GradedDiagram(P, {0: const(Z3), 1: const(Z2)})
    page = e2_page(D, 1, 1)
    assert assemble_homology(page, 1).describe() == "Z/2"
    # column one: zero span in degree 0, Z/2 in column zero at q = 1
    Zs = zero_span()
    L1 = Diagram.constant(Zs.poset, FgAbGroup.cyclic(2))
    page = e2_page(GradedDiagram(Zs.poset, {0: Zs, 1: L1}), 1, 1)
    assert page[(1, 0)].describe() == "Z" and page[(0, 1)].describe() == "Z/2"
    assert assemble_homology(page, 1).describe() == "Z ⊕ Z/2"
    L2 = Diagram(Zs.poset, {e: FgAbGroup.cyclic(2) if e == "p0" else FgAbGroup.zero() for e in Zs.poset},
                 {c: [] for c in Zs.poset.covers()})
    L1b = Diagram.constant(Zs.poset, FgAbGroup.cyclic(4))
    page = e2_page(GradedDiagram(Zs.poset, {0: L2, 1: L1b}), 1, 1)
    with pytest.raises(ExtensionAmbiguous) as e:
        assemble_homology(page, 1)
    assert e.value.primes == {2}


def test_missing_and_bad_layers():
    Zs = zero_span()
    D = GradedDiagram(Zs.poset, {0: Zs})
    with pytest.raises(MissingLayer) as e:
        e2_page(D, 1, 2)
    assert e.value.q == 1
    with pytest.raises(DiagramError):
        GradedDiagram(Zs.poset, {0: Diagram.constant(Zs.poset, FgAbGroup.free(1), CONTRAVARIANT)})
    with pytest.raises(DiagramError):
        GradedDiagram(Zs.poset, {0: Diagram.constant(FinPoset.chain("ab"), FgAbGroup.free(1))})


def test_empty_page():
    page = E2Page()
    assert page.table() == [] and collapse_report(page).collapsed
    with pytest.raises(MissingLayer):
        assemble_homology(page, 0)


def test_serializations():
    Zs = zero_span()
    page = e2_page(GradedDiagram(Zs.poset, {0: Zs}), 2, 0)
    assert page.to_tsv().splitlines() == ["q\\p\t0\t1\t2", "0\t0\tZ\t0"]
    obj = json.loads(json.dumps(page.to_json()))
    assert obj["entries"][1] == {"p": 1, "q": 0, "group": "Z", "free_rank": 1, "torsion": []}
    assert collapse_report(page).to_json() == {"nonzero": [[1, 0]], "collapsed": True}


def test_prime_support_and_filters():
    assert prime_support(FgAbGroup.from_invariants(1, [12, 5])) == {2, 3, 5, "inf"}
    assert prime_support(FgAbGroup.zero()) == set()
    assert torsion_filters(FgAbGroup.from_invariants(0, [3, 9]), {3}) == (True, False)
    assert torsion_filters(FgAbGroup.from_invariants(0, [3, 9]), {2}) == (False, True)
    assert torsion_filters(FgAbGroup.cyclic(6), {2}) == (False, False)
    assert torsion_filters(FgAbGroup.free(1), {3}) == (False, True)
    assert torsion_filters(FgAbGroup.zero(), {2}) == (True, True)
