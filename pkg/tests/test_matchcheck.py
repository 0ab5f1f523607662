import random
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import cyc
from pickylab.chartab import ctx_parse_all, table_of
from pickylab.constructions import mathieu11
from pickylab.locality import lambda_count, picky_reps
from pickylab.matchcheck import (ConstraintSpec, check_degree_invariants, check_extensions, check_picky,
                                 check_sections, check_subnormalizer, class_verdicts, find_bijection,
                                 local_data, nonvanishing_set, verify_certificate, verify_witness)
from pickylab.matching import hall_violator, hopcroft_karp, is_violator, neighbourhood
from pickylab.permgroup import alternating, cyclic, symmetric

FIXTURE = Path(__file__).parents[1] / "src" / "pickylab" / "data" / "j4_hall_fixture.ctx"


def test_nonvanishing_sets(L27, Sz8):
    T = table_of(L27)
    x = L27.sylow(7).gens[0]
    nv = nonvanishing_set(T, [L27.class_of(x)])
    assert len(nv) == 5 and 7 not in [T.degree(i) for i in nv]
    TS = table_of(Sz8)
    twos = [c for c, cl in enumerate(TS.classes) if cl.order in (2, 4)]
    assert len(twos) == 3 and len(nonvanishing_set(TS, twos)) == 10
    assert nonvanishing_set(T, [0]) == list(range(len(T.irr)))


def test_s4_vs_d8_strong(S4):
    L = local_data(S4, 2)
    x = cyc(4, (0, 1, 2, 3))
    a, b = L.point(x)
    spec = ConstraintSpec(primes=(2,), points=((a, b),), sign_equality=True)
    left, right = L.T.nonvanishing(a), L.TN.nonvanishing(b)
    assert len(left) == len(right) == 4
    v = find_bijection(L.T, left, L.TN, right, spec)
    assert v.status == "holds"
    assert verify_witness(L.T, L.TN, v.pairs, v.signs, spec.normalized(), left, right) == []


def _sz8_involution(Sz8):
    L = local_data(Sz8, 2)
    x = next(x for x in picky_reps(Sz8, 2) if x.order() == 2)
    a, b = L.point(x)
    return L, a, b


def test_sz8_strong_certificate(Sz8):
    L, a, b = _sz8_involution(Sz8)
    spec = ConstraintSpec(primes=(2,), points=((a, b),), sign_equality=True)
    left, right = L.T.nonvanishing(a), L.TN.nonvanishing(b)
    v = find_bijection(L.T, left, L.TN, right, spec)
    assert v.status == "fails"
    obs = v.certificate["obstructions"]
    h_side = [o for o in obs if o["side"] == "right"]
    assert any(str(o["values"][0]) == "7" for o in h_side)
    g_odd = {str(L.T.irr[i][a]) for i in left if L.T.degree(i) % 2}
    assert g_odd == {"1", "3", "-5"}
    assert verify_certificate(L.T, left, L.TN, right, spec, v.certificate)


def test_empty_sets_vacuous(S4):
    T = table_of(S4)
    assert find_bijection(T, [], T, [], ConstraintSpec(primes=(2,))).status == "vacuous-pass"


def test_check_picky_examples(L27, U33):
    assert check_picky(L27, 7, "strong-global").verdict == "holds"
    assert check_picky(U33, 3, "global").verdict == "holds"
    per = class_verdicts(check_picky(U33, 3, "strong-A"))
    assert per == {"good": "holds", "bad": "fails"}
    assert check_picky(mathieu11(), 3, "global").verdict == "holds"


def test_check_subnormalizer(S4, A5):
    chk = check_subnormalizer(S4, 2, "B")
    assert chk.verdict == "holds"
    assert any("|Sub|=24" in n for d in chk.details for n in d["notes"])
    assert check_subnormalizer(A5, 2, "B").verdict == "holds"
    strong = check_subnormalizer(S4, 2, "strong-B")
    picky = check_picky(S4, 2, "strong-A")
    assert strong.verdict == picky.verdict == "holds"


def test_sections(L27, A5):
    x = L27.sylow(7).gens[0]
    chk = check_sections(L27, 7, x, "thm-4.7")
    assert chk.verdict == "holds"
    T = table_of(L27)
    degs = sorted(T.degree(i) % 7 for i in T.nonvanishing(L27.class_of(x)))
    assert degs == sorted(d % 7 for d in (1, 3, 3, 6, 8))
    y = cyc(5, (0, 1, 2, 3, 4))
    chk = check_sections(A5, 5, y, "prop-4.5")
    assert chk.verdict == "holds"
    TA = table_of(A5)
    assert sorted(TA.degree(i) for i in TA.nonvanishing(A5.class_of(y))) == [1, 3, 3, 4]


def test_sections_normal_abelian():
    C = cyclic(5)
    x = C.gens[0]
    for mode in ("reduced-4.4", "abelian-4.6", "prop-4.5"):
        assert check_sections(C, 5, x, mode).verdict == "holds"


def test_degree_invariants_s4(S4):
    chk = check_degree_invariants(S4, 3, "eaton-moreto")
    assert chk.ok


def test_extensions_trivial_cases():
    C6 = cyclic(6)
    assert check_extensions("mixed-7.1", G=C6, x=C6.gens[0]).verdict == "holds"
    assert check_extensions("hall-7.2", G=symmetric(3), primes=[2, 3]).verdict == "vacuous-pass"


def test_j4_fixture_counts():
    TG, TN = ctx_parse_all(FIXTURE.read_text())
    chk = check_extensions("hall-7.2", TG=TG, TN=TN, label_g="35A", label_n="35A", primes=[5, 7])
    assert chk.verdict == "holds"
    assert "|Irr_pi'(G)|=30 vs |Irr_pi'(N)|=25" in chk.notes
    assert "|Irr^x(G)|=25 vs |Irr^x(N)|=25" in chk.notes


# ---- bipartite matching against networkx ----------------------------------------------

@st.composite
def bipartite(draw):
    n = draw(st.integers(0, 9))
    m = draw(st.integers(0, 9))
    adj = [sorted(draw(st.sets(st.integers(0, m - 1), max_size=m))) if m else [] for _ in range(n)]
    return n, m, adj


@settings(max_examples=400, derandomize=True, deadline=None)
@given(bipartite())
def test_hopcroft_karp_matches_networkx(g):
    n, m, adj = g
    ml, mr = hopcroft_karp(n, m, adj)
    size = sum(1 for x in ml if x != -1)
    for a, b in enumerate(ml):
        if b != -1:
            assert b in adj[a] and mr[b] == a
    B = nx.Graph()
    B.add_nodes_from((("L", a) for a in range(n)))
    B.add_nodes_from((("R", b) for b in range(m)))
    B.add_edges_from((("L", a), ("R", b)) for a in range(n) for b in adj[a])
    ref = nx.bipartite.maximum_matching(B, top_nodes=[("L", a) for a in range(n)])
    assert size == len(ref) // 2
    if n and size < n:
        S = hall_violator(n, adj, ml, mr)
        assert is_violator(adj, S) and len(neighbourhood(adj, S)) < len(S)


@pytest.mark.parametrize("seed", range(20))
def test_matching_shuffle_determinism(seed, Sz8):
    L, a, b = _sz8_involution(Sz8)
    spec = ConstraintSpec(primes=(2,), points=((a, b),))
    left, right = L.T.nonvanishing(a), L.TN.nonvanishing(b)
    base = find_bijection(L.T, left, L.TN, right, spec).to_json()
    rng = random.Random(seed)
    l2, r2 = left[:], right[:]
    rng.shuffle(l2)
    rng.shuffle(r2)
    assert find_bijection(L.T, l2, L.TN, r2, spec).to_json() == base
