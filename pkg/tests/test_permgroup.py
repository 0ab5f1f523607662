import itertools
from pathlib import Path

import pytest

from conftest import cyc
from pickylab.perm import Perm, read_gens
from pickylab.permgroup import (GroupError, alternating, cyclic, dihedral, element_parts, from_generators,
                                is_subnormal, p_series, subgroups, symmetric)

DATA = Path(__file__).parents[1] / "src" / "pickylab" / "data"


def brute_classes(G):
    elems = G.elements()
    seen, sizes = set(), []
    for x in elems:
        if x in seen:
            continue
        orbit = {x.conj(g) for g in elems}
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def test_orders_from_generators():
    assert from_generators(4, [cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))]).order == 24
    assert from_generators(5, [cyc(5, (0, 1, 2, 3, 4)), cyc(5, (2, 3, 4))]).order == 60


def test_sz8_file_order():
    deg, gens = read_gens(DATA / "sz8.gens")
    q = 8
    assert from_generators(deg, gens).order == q * q * (q * q + 1) * (q - 1)


def test_s4_classes(S4):
    sizes = sorted(c.size for c in S4.conjugacy_classes())
    assert sizes == [1, 3, 6, 6, 8]


def test_l27_classes_match_brute_force(L27):
    assert len(L27.conjugacy_classes()) == 6
    assert sorted(c.size for c in L27.conjugacy_classes()) == brute_classes(L27)


def test_sz8_has_eleven_classes(Sz8):
    assert len(Sz8.conjugacy_classes()) == 11


def test_centralizer_and_normalizer(S4, A5, L27):
    assert S4.centralizer(cyc(4, (0, 1), (2, 3))).order == 8
    assert A5.normalizer(A5.sylow(5)).order == 10
    assert L27.normalizer(L27.sylow(7)).order == 21


def test_centralizer_by_scan(A5):
    x = cyc(5, (0, 1, 2))
    scan = sum(1 for g in A5.elements() if g * x == x * g)
    assert A5.centralizer(x).order == scan


def test_sylows(S4, A5):
    assert S4.sylow(2).order == 8 and len(S4.all_sylows(2)) == 3
    syl = A5.all_sylows(2)
    assert A5.sylow(2).order == 4 and len(syl) == 5
    for P, Q in itertools.combinations(syl, 2):
        assert P.intersection(Q).order == 1
    C6 = cyclic(6)
    assert C6.sylow(3).order == 3 and len(C6.all_sylows(3)) == 1


def test_subnormal(D8):
    H = D8.subgroup([cyc(4, (0, 1), (2, 3))])
    assert is_subnormal(H, D8)
    A4 = alternating(4)
    assert not is_subnormal(A4.subgroup([cyc(4, (0, 1, 2))]), A4)
    assert is_subnormal(A4, A4)


def test_p_series():
    _, _, length, solvable = p_series(symmetric(4), 2)
    assert length == 2 and solvable
    assert not p_series(alternating(5), 2)[3]
    assert p_series(cyclic(6), 3)[2] == 1


def test_subgroup_counts():
    V4 = from_generators(4, [cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))])
    assert len(subgroups(V4)) == 5
    assert len(subgroups(symmetric(3))) == 6
    D8 = dihedral(8)
    brute = {frozenset(D8.generated_subgroup([a, b]).elements()) for a in D8.elements() for b in D8.elements()}
    assert len(subgroups(D8)) == len(brute) == 10


def test_element_parts():
    C6 = cyclic(6)
    x = C6.gens[0]
    xp, xq, n = element_parts(C6, x, 2)
    assert (xp, xq, n) == (x ** 3, x ** 4, 6)
    x7 = cyclic(7).gens[0]
    assert element_parts(None, x7, 2)[0].is_identity()
    y = cyc(6, (0, 1, 2, 3), (4, 5))
    yp, yq, _ = element_parts(symmetric(6), y, 2)
    assert yp == y and yq.is_identity()


def test_membership_and_errors(S4):
    assert cyc(4, (0, 1)) in S4
    A4 = alternating(4)
    with pytest.raises(GroupError):
        A4.class_of(cyc(4, (0, 1)))
