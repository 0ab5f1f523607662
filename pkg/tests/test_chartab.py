from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cyc
from pickylab.chartab import (CtxError, class_fusion, ctx_parse, ctx_parse_all, ctx_write, dixon_schneider, induce,
                              p_blocks, permutation_character, restrict, table_of, tables_equal, verify_table)
from pickylab.constructions import mathieu11
from pickylab.cyclotomic import CycNum
from pickylab.locality import lambda_count, p_element_classes
from pickylab.permgroup import alternating, symmetric

HERE = Path(__file__).parent
FIXTURE = HERE.parent / "src" / "pickylab" / "data" / "j4_hall_fixture.ctx"


def test_small_degrees(L27):
    assert sorted(table_of(symmetric(3)).degrees) == [1, 1, 2]
    T = table_of(L27)
    assert sorted(T.degrees) == [1, 3, 3, 6, 7, 8]
    assert sum(d * d for d in T.degrees) == L27.order


def test_sz8_degrees(Sz8):
    T = table_of(Sz8)
    assert len(T.irr) == 11
    # r = sqrt(2q) = 4, so W1(1) = W2(1) = r(q-1)/2 = 14 with 2-part r/2
    assert T.degrees.count(14) == 2
    assert verify_table(T).ok


def test_verify_detects_perturbation(S4):
    T = table_of(S4)
    assert verify_table(T).ok
    bad = dixon_schneider(S4)
    bad.irr[2][1] = bad.irr[2][1] + 1
    rep = verify_table(bad)
    assert not rep.ok and rep.failures


def test_m11_fixture_matches_recomputation():
    T = ctx_parse((HERE / "data" / "m11.ctx").read_text())
    assert verify_table(T).ok
    assert tables_equal(T, dixon_schneider(mathieu11(), seed=7))


def test_ctx_round_trip(S4):
    T = table_of(S4)
    assert tables_equal(ctx_parse(ctx_write(T)), T)


def test_ctx_errors():
    with pytest.raises(CtxError) as exc:
        ctx_parse("ctx 9\nname X\n")
    assert exc.value.line == 1
    with pytest.raises(CtxError):
        ctx_parse("ctx 1\nname X\norder 2\nexponent 2\nclasses 2\nclass 1 1\nclass 2 1 2:1\nchi 1 1 | 1\nchi 1 1 | 2\n")


def test_j4_fixture_loads_partial():
    TG, TN = ctx_parse_all(FIXTURE.read_text())
    assert TG.fixture and TN.fixture
    assert len(TG.irr) == 30 and len(TN.irr) == 25


def test_fusions(L27, S4):
    T = table_of(L27)
    N = L27.normalizer(L27.sylow(7))
    TN = table_of(N)
    f = class_fusion(TN, T)
    seven = [f[i] for i, c in enumerate(TN.classes) if c.order == 7]
    assert len(seven) == len(set(seven)) == 2
    V4 = S4.subgroup([cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))])
    TS = table_of(S4)
    fv = class_fusion(table_of(V4), TS)
    target = S4.class_of(cyc(4, (0, 1), (2, 3)))
    assert {fv[i] for i, c in enumerate(table_of(V4).classes) if c.order == 2} == {target}
    triv = S4.trivial_subgroup()
    assert set(class_fusion(table_of(triv), TS).images) == {0}


def test_induction_examples(L27):
    T = table_of(L27)
    N = L27.normalizer(L27.sylow(7))
    TN = table_of(N)
    f = class_fusion(TN, T)
    pc = permutation_character(TN, T, f)
    for c in p_element_classes(L27, 7):
        assert pc[c] == lambda_count(L27, 7, L27.conjugacy_classes()[c].representative)
    chi = T.irr[3]
    ident = class_fusion(T, T)
    assert restrict(chi, ident) == chi
    P = L27.sylow(7)
    TP = table_of(P)
    lin = next(r for r in TP.irr if r != TP.irr[0] and TP.degree(TP.irr.index(r)) == 1)
    up = induce(lin, TP, TN, class_fusion(TP, TN))
    assert up[0] == 3 and TN.inner(up, up) == 1


def test_blocks_s4(S4):
    T = table_of(S4)
    B = p_blocks(T, 3)
    shapes = sorted((sorted(T.degrees[i] for i in b.characters), b.defect) for b in B.blocks)
    assert shapes == [([1, 1, 2], 1), ([3], 0), ([3], 0)]
    B2 = p_blocks(T, 2)
    assert len(B2.blocks) == 1 and B2.blocks[0].defect == 3


def test_sz8_blocks(Sz8):
    T = table_of(Sz8)
    B = p_blocks(T, 2, defect_groups=False)
    prin = B.principal()
    w = [i for i, d in enumerate(T.degrees) if d == 14]
    assert all(i in prin.characters for i in w)
    assert all(B.heights[i] == 1 for i in w)
    x = T.degrees.index(64)
    assert B.blocks[B.block_of[x]].defect == 0 and B.blocks[B.block_of[x]].characters == [x]


CATALOG = [(symmetric(4), 2), (symmetric(4), 3), (alternating(5), 2), (alternating(5), 5), (symmetric(5), 2),
           (symmetric(5), 3), (alternating(6), 3)]


@pytest.mark.parametrize("G,p", CATALOG, ids=lambda v: str(v))
def test_block_partition_independent_of_field(G, p):
    T = table_of(G)
    a, b = p_blocks(T, p, which=0), p_blocks(T, p, which=1)
    assert a.field["polynomial"] != b.field["polynomial"] or a.field["field_degree"] == 1
    assert [x.characters for x in a.blocks] == [x.characters for x in b.blocks]
    assert [x.defect for x in a.blocks] == [x.defect for x in b.blocks]


def _inclusions():
    out = []
    for G, p in [(symmetric(4), 2), (alternating(5), 2), (alternating(5), 5), (symmetric(5), 5), (alternating(6), 3)]:
        out.append((G, G.normalizer(G.sylow(p))))
    out.append((symmetric(5), alternating(5)))
    return out


INCLUSIONS = _inclusions()


@pytest.mark.parametrize("k", range(len(INCLUSIONS)))
@settings(max_examples=100, derandomize=True, deadline=None)
@given(data=st.data())
def test_frobenius_reciprocity(k, data):
    G, H = INCLUSIONS[k]
    T, TH = table_of(G), table_of(H)
    f = class_fusion(TH, T)
    i = data.draw(st.integers(0, len(TH.irr) - 1))
    j = data.draw(st.integers(0, len(T.irr) - 1))
    theta, chi = TH.irr[i], T.irr[j]
    assert T.inner(induce(theta, TH, T, f), chi) == TH.inner(theta, restrict(chi, f))
