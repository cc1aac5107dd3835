import json

import pytest

from posetcolim import bianchi
from posetcolim.checks import is_pseudo_projective_at
from posetcolim.derived import higher_colim
from posetcolim.grouph import FiniteGroup


@pytest.fixture(scope="module")
def shipped():
    return bianchi.load_shipped()


@pytest.fixture(scope="module")
def derived():
    return bianchi.derive_layers(5)


def test_regeneration_matches_shipped(shipped, derived, tmp_path):
    P, D, doc = shipped
    Q, layers = derived
    assert P == Q
    for q in range(6):
        assert D[q] == layers[q]
    path = bianchi.write_shipped(tmp_path / "layers.json")
    regenerated = json.loads(path.read_text())
    assert regenerated["layers"] == bianchi.layers_to_json(P, D.layers)["layers"]
    assert doc["oracle"] == bianchi.ORACLE


def test_poset_matches_the_transcription(shipped):
    P, _, doc = shipped
    assert list(P.elements) == bianchi.ELEMENTS
    assert set(P.covers()) == set(bianchi.COVERS)
    assert doc["covers"] == [list(c) for c in bianchi.COVERS]
    assert doc["maximal_subgroups"]["cd"] == ["c", "d"]


def test_realizations_satisfy_the_relations():
    for top, gens in bianchi.REALIZATIONS.items():
        bianchi._check_relations(top, gens)
        G = FiniteGroup.from_permutations(list(gens.values()))
        assert G.order == {"ac": 12, "ad": 6, "bc": 6, "bd": 4}[top]


def test_layer_objects(shipped):
    P, D, _ = shipped
    assert all(D[0][e].describe() == "Z" for e in P)
    for q in range(1, 6):
        assert D[q]["1"].is_trivial()
    L = D[1]
    got = {e: L[e].describe() for e in P}
    assert got == {"1": "0", "a": "Z/3", "c": "Z/3", "d": "Z/2", "b": "Z/2", "ac": "Z/3",
                   "ad": "Z/2", "cd": "Z/6", "bc": "Z/2", "bd": "Z/2 ⊕ Z/2"}


def _commutator_image_order(G, gen):
    comms = {G.mul[G.mul[a][b]][G.inv(G.mul[b][a])] for a in range(G.order) for b in range(G.order)}
    D = G.closure(comms)
    return len(G.closure(set(D) | {gen})) // len(D)


def test_degree_one_arrows_are_abelianization_maps(shipped):
    # H_1(<x>) -> H_1(G) has image <x>[G,G]/[G,G], computed on the permutation realizations
    _, D, _ = shipped
    L = D[1]
    for top, gens in bianchi.REALIZATIONS.items():
        G = FiniteGroup.from_permutations(list(gens.values()))
        for n, x in enumerate(gens):
            assert L.arrow(x, top).image().order() == _commutator_image_order(G, G.generator_ids[n])


def test_stated_pseudo_projectivity(shipped):
    _, D, _ = shipped
    for q, claim in ((1, ("cd", "bd")), (5, ("cd", "bd")), (3, ("ad", "cd", "bc", "bd"))):
        for e in claim:
            assert is_pseudo_projective_at(D[q], e)
    assert higher_colim(D[1], 1).describe() == "Z/3"
    assert higher_colim(D[5], 1).describe() == "Z/3"


def test_reproduce(shipped):
    r = bianchi.reproduce(shipped[1])
    assert all(r["checks"].values()), r["checks"]
    assert r["collapse"].collapsed
    assert r["collapse"].nonzero == [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 1), (1, 5)]
    assert [r["homology"][n].describe() for n in range(6)] == [
        "Z", "Z/2 ⊕ Z/2", "Z/2 ⊕ Z/6", "Z/2 ⊕ Z/2 ⊕ Z/2 ⊕ Z/6", "Z/2 ⊕ Z/2",
        "Z/2 ⊕ Z/2 ⊕ Z/2 ⊕ Z/2 ⊕ Z/2 ⊕ Z/2",
    ]
