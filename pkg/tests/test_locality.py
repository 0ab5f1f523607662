from itertools import chain, combinations

import pytest

from conftest import cyc
from pickylab.locality import (block_vanishing_verify, casolo_verify, fusion_control_verify, h_picky, is_picky,
                               lambda_count, lambda_formula_verify, picky_reps, rae_verify, section_reps,
                               semilattice_fiber_verify, sub_containment_verify, sub_dual_route_verify,
                               subnormalizer, subnormalizer_set, value_field_verify)
from pickylab.perm import Perm
from pickylab.permgroup import GroupError, PermGroup, alternating, cyclic, from_generators, is_subnormal, symmetric


def brute_lambda(G, p, x):
    return sum(1 for P in G.all_sylows(p) if x in P)


def brute_subnormalizer(G, x):
    X = G.subgroup([x])
    return [g for g in G.elements() if is_subnormal(X, G.subgroup([x, g]))]


def test_lambda_examples(S4):
    x4 = cyc(4, (0, 1, 2, 3))
    x22 = cyc(4, (0, 1), (2, 3))
    assert lambda_count(S4, 2, x4) == brute_lambda(S4, 2, x4) == 1
    assert lambda_count(S4, 2, x22) == brute_lambda(S4, 2, x22) == 3
    A4 = alternating(4)
    assert all(lambda_count(A4, 2, x) == 1 for x in A4.sylow(2).elements())


def test_picky_examples(S4, A5):
    assert is_picky(A5, 5, cyc(5, (0, 1, 2, 3, 4)))
    # V4 Sylows of A5 are TI: 15 involutions = 5 * 3
    assert is_picky(A5, 2, cyc(5, (0, 1), (2, 3)))
    types = sorted(x.cycle_type() for x in picky_reps(S4, 2))
    brute = {x.cycle_type() for x in S4.sylow(2).elements() if brute_lambda(S4, 2, x) == 1}
    assert set(types) == brute == {(2, 1, 1), (4,)}


def test_subnormalizer_examples(S4):
    x4 = cyc(4, (0, 1, 2, 3))
    res = subnormalizer(S4, x4, 2)
    N = S4.normalizer(S4.sylow(2))
    assert res.sub.order == 8 and res.sub.same_subgroup(S4.normalizer(S4.subgroup([x4]).normal_closure_in(res.sub)))
    assert res.routes_agree
    assert res.set_size == len(brute_subnormalizer(S4, x4))
    x22 = cyc(4, (0, 1), (2, 3))
    assert subnormalizer(S4, x22, 2).sub.order == 24
    z = cyclic(6).gens[0]
    assert len(subnormalizer_set(cyclic(6), z)) == 6
    assert N.order == 8


@pytest.mark.parametrize("G,p", [(symmetric(4), 2), (alternating(5), 5), (alternating(5), 2), (symmetric(5), 3)],
                         ids=str)
def test_casolo_and_formula(G, p):
    assert casolo_verify(G, p).verdict == "holds"
    assert lambda_formula_verify(G, p).verdict == "holds"
    for d in casolo_verify(G, p).details:
        assert d["lambda"] == brute_lambda(G, p, d["x"])


def test_casolo_sizes(A5, U33):
    for d in casolo_verify(A5, 5).details:
        if d["x"].order() == 5:
            assert d["S_size"] == 10
    chk = casolo_verify(U33, 3)
    assert chk.verdict == "holds"
    threes = [c for c in U33.conjugacy_classes() if c.order == 3]
    # two nontrivial 3-classes (sizes 56 and 672)
    assert len([d for d in chk.details if d["x"].order() > 1]) == len(threes) == 2


def test_lambda_formula_values(S4):
    det = {d["x"].cycle_type(): d for d in lambda_formula_verify(S4, 2).details}
    assert det[(2, 1, 1)]["C_order"] * det[(2, 1, 1)]["xG_cap_P"] == 8
    assert det[(2, 2)]["C_order"] * det[(2, 2)]["xG_cap_P"] == 24


def test_dual_route_and_containment(L27, S4):
    for G, p in ((L27, 7), (L27, 2), (S4, 2)):
        assert sub_dual_route_verify(G, p).verdict == "holds"
        assert sub_containment_verify(G, p).verdict == "holds"


def test_fusion_control(L27, S4):
    chk = fusion_control_verify(L27, 7)
    assert chk.verdict == "holds"
    assert sum(1 for d in chk.details if d["picky"]) == 2
    assert fusion_control_verify(S4, 2).verdict == "holds"


def test_section_reps(A5, S4):
    x = cyc(5, (0, 1, 2, 3, 4))
    S, R, _ = section_reps(A5, 5, x)
    assert S == [x] and R == [x]
    assert section_reps(S4, 2, cyc(4, (0, 1, 2, 3)))[0] == [cyc(4, (0, 1, 2, 3))]
    C6 = cyclic(6)
    g = C6.gens[0]
    S, _, _ = section_reps(C6, 2, g ** 3)
    assert sorted(S) == sorted([g ** 3, g ** 3 * g ** 2, g ** 3 * g ** 4])


def test_rae(S4):
    chk = rae_verify(S4, 2)
    assert chk.verdict == "holds" and "p-length 2" in chk.notes
    assert rae_verify(cyclic(5), 5).verdict == "holds"
    wreath = from_generators(6, [cyc(6, (0, 1, 2)), cyc(6, (0, 1)), cyc(6, (0, 3), (1, 4), (2, 5))])
    assert wreath.order == 72
    assert rae_verify(wreath, 3).verdict == "holds"
    with pytest.raises(GroupError):
        rae_verify(alternating(5), 2)


def test_value_fields(L27, S4, Sz8):
    assert value_field_verify(L27, 7).verdict == "holds"
    assert value_field_verify(S4, 2).verdict == "holds"
    assert value_field_verify(Sz8, 2).verdict == "holds"


def test_block_vanishing(S4, L27):
    for G, p in ((S4, 2), (S4, 3), (L27, 7), (L27, 2), (symmetric(5), 5)):
        assert block_vanishing_verify(G, p).verdict == "holds"


def _subgroup_lattice(G):
    from pickylab.permgroup import subgroups

    subs = subgroups(G)
    return [frozenset(H.elements()) for H in subs]


def test_semilattice_d8(D8):
    X = _subgroup_lattice(D8)
    g = cyc(4, (0, 1, 2, 3))
    conj = {H: frozenset(h.conj(g) for h in H) for H in X}
    triv = min(X, key=len)
    chk = semilattice_fiber_verify(X, lambda a, b: a <= b, conj.__getitem__, triv)
    assert chk.verdict == "holds"


def test_semilattice_power_set():
    X = [frozenset(s) for s in chain.from_iterable(combinations((1, 2), k) for k in range(3))]
    chk = semilattice_fiber_verify(X, lambda a, b: a <= b, lambda a: a, frozenset())
    assert chk.verdict == "holds"
    assert "X^g_>x is not meet-closed" in chk.notes


def test_semilattice_chain():
    chk = semilattice_fiber_verify(range(5), lambda a, b: a <= b, lambda a: a, 0)
    assert chk.verdict == "holds"


def test_h_picky(S4):
    P = S4.sylow(2)
    for x in P.elements():
        assert h_picky(S4, P, x, [2]) == is_picky(S4, 2, x)
    S3 = symmetric(3)
    assert all(h_picky(S3, S3, x, [2, 3]) for x in S3.elements())
    A4 = alternating(4)
    V = A4.sylow(2)
    assert all(h_picky(A4, V, x, [2]) for x in V.elements())


@pytest.mark.slow
def test_a9_mixed_fusion_finding():
    A9 = alternating(9)
    x = cyc(9, (0, 1, 2, 3), (4, 5))
    # a 2-element: a single Sub-class, not the split claimed for it
    assert fusion_control_verify(A9, 2, mixed=[x]).notes == []
    y = cyc(9, (0, 1, 2), (3, 4), (5, 6))
    chk = fusion_control_verify(A9, 3, mixed=[y])
    assert chk.verdict == "holds"
    assert any("splits into 2" in n for n in chk.notes)
