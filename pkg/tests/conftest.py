import random
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from posetcolim.abgrp import FgAbGroup
from posetcolim.corpus import CorpusParams, corpus_instance
from posetcolim.diagram import CONTRAVARIANT, COVARIANT

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

torsion_lists = st.lists(st.integers(2, 6), min_size=0, max_size=3)
small_ints = st.integers(-3, 3)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4, lo=-5, hi=5):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(m)]


@st.composite
def groups(draw, max_free=2):
    return FgAbGroup.from_invariants(draw(st.integers(0, max_free)), draw(torsion_lists))


@st.composite
def presented_groups(draw):
    """Non-diagonal presentations: random relation rows on up to 3 generators."""
    n = draw(st.integers(1, 3))
    k = draw(st.integers(0, 3))
    rels = [[draw(st.integers(-6, 6)) for _ in range(n)] for _ in range(k)]
    return FgAbGroup(n, rels)


SMALL = CorpusParams(count=0, max_poset=5, max_rank=2, max_torsion=4, max_entry=3)


@st.composite
def corpus_diagrams(draw, variance=COVARIANT, params=None):
    params = params or CorpusParams(seed=draw(st.integers(0, 10**6)))
    return corpus_instance(params, draw(st.integers(0, 10**6)), variance)


@st.composite
def small_corpus_diagrams(draw, variance=COVARIANT):
    seed = draw(st.integers(0, 10**6))
    p = CorpusParams(count=0, max_poset=SMALL.max_poset, max_rank=SMALL.max_rank,
                     max_torsion=SMALL.max_torsion, max_entry=SMALL.max_entry, seed=seed)
    return corpus_instance(p, draw(st.integers(0, 10**6)), variance)


def rng(n=0):
    return random.Random(n)


__all__ = ["COVARIANT", "CONTRAVARIANT"]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
