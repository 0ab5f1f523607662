import pytest

from pickylab.cyclotomic import CycNum, format_cyc
from pickylab.families import (CROSSCHECK_GROUPS, OracleError, admissible, column_norm, crosscheck, family_verify,
                               identity_orthogonality, invariants, oracle)


def rows(orc, label, side):
    return [(format_cyc(r.value), r.degree_part, r.multiplicity) for r in orc.cls(label).rows(side)]


def test_psl2_q7_rows():
    o = oracle("psl2", 7)
    g = rows(o, "x1", "G")
    assert ("1", 1, 2) in g and ("-1", 1, 1) in g
    a = o.cls("x1").rows("G")[2].value
    assert (2 * a + 1) * (2 * a + 1) == -7


def test_psl2_q5_multiplicities():
    g = rows(oracle("psl2", 5), "x1", "G")
    assert ("1", 1, 1) in g and ("-1", 1, 1) in g


def test_psl2_q4_h_side():
    o = oracle("psl2", 4)
    h = o.cls("x").rows("H")
    assert {format_cyc(r.value) for r in h} == {"1", "-1"}
    assert sum(r.multiplicity for r in h) == 4


def test_suzuki_involution_h_side():
    assert sorted(rows(oracle("sz", 8), "sigma", "H")) == sorted([("1", 1, 7), ("7", 1, 1), ("-2", 2, 2)])


def test_psu3_bad_class_rows():
    g = rows(oracle("psu3", 3), "z", "G")
    assert ("-3", 3, 1) in g and ("3", 3, 3) in g


def test_ree_x_row():
    assert ("53", 1, 11) in rows(oracle("ree", 27), "X", "G")


def _obstruction_values(chk, label):
    det = next(d for d in chk.details if d.get("class") == label)
    return det["strong"], det.get("obstructions", [])


def test_suzuki_strong_fails_at_sigma():
    chk = family_verify("sz", 8)
    assert chk.verdict == "holds"
    status, obs = _obstruction_values(chk, "sigma")
    assert status == "fails"
    h = [o for o in obs if o["side"] == "H"]
    assert any(o["value"] == "7" and set(o["opposite_values"]) <= {"1", "3", "-5"} for o in h)


def test_psu3_strong_fails_on_bad_class():
    chk = family_verify("psu3", 3)
    status, obs = _obstruction_values(chk, "z")
    assert status == "fails"
    assert any(o["side"] == "G" and o["value"] == "-2" for o in obs)


def test_ree_strong_fails_at_t():
    chk = family_verify("ree", 27)
    assert chk.verdict == "holds"
    status, obs = _obstruction_values(chk, "T")
    assert status == "fails"
    m = 3
    g_vals = {o["value"] for o in obs if o["side"] == "G"}
    assert g_vals == {str(-3 * m - 1), str(3 * m - 1)}


@pytest.mark.parametrize("family,q", [("psl2", 4), ("psl2", 9), ("psl2", 31), ("sz", 32), ("psu3", 4),
                                      ("psu3", 5), ("psu3", 8), ("ree", 243)])
def test_family_verify(family, q):
    chk = family_verify(family, q)
    assert chk.verdict == "holds"
    assert "global: holds" in chk.notes and "strong(good): holds" in chk.notes


@pytest.mark.parametrize("family,q", [(f, q) for f, qs in CROSSCHECK_GROUPS.items() for q in qs])
def test_crosscheck(family, q):
    assert crosscheck(family, q).verdict == "holds"


def test_printed_psl2_signs_fail_crosscheck():
    assert crosscheck("psl2", 5, printed=True).verdict == "fails"
    # q = 3 mod 4 has no sign issue
    assert crosscheck("psl2", 7, printed=True).verdict == "holds"


@pytest.mark.parametrize("family,q", [("psl2", 8), ("psl2", 13), ("sz", 8), ("sz", 128), ("psu3", 3), ("psu3", 9)])
def test_column_norms(family, q):
    o = oracle(family, q)
    for c in o.classes:
        for side in ("G", "H"):
            assert column_norm(c.rows(side)) == c.centralizer[side][0]
    assert invariants(o).verdict == "holds"


def test_ree_g_side_norms_are_findings():
    o = oracle("ree", 27)
    chk = invariants(o)
    assert chk.verdict in ("holds", "finding")
    q = 27
    norm_t = column_norm(o.cls("T").rows("G"))
    # C_G(T) contains the abelian P' of order q^2, so a consistent norm would be divisible by q^2
    assert norm_t % (q * q) != 0
    for label in ("Y", "YT", "YT^-1"):
        assert column_norm(o.cls(label).rows("G")) == 3 * q
    for c in o.classes:
        assert column_norm(c.rows("H")) == c.centralizer["H"][0]


def test_identity_orthogonality_h_side():
    o = oracle("ree", 27)
    for c in o.classes:
        assert identity_orthogonality(c.rows("H")) in (None, CycNum.rational(0))


def test_admissible_and_errors():
    assert admissible("psl2", 199) and not admissible("psl2", 6)
    assert admissible("sz", 32) and not admissible("sz", 16)
    assert not admissible("ree", 3)
    with pytest.raises(OracleError):
        oracle("sz", 16)
