"""Acceptance criteria; each test records one PASS/FAIL line shown in the terminal summary."""

from functools import cache
from pathlib import Path

import pytest

from conftest import ACCEPTANCE
from pickylab.chartab import ctx_parse_all, table_of, verify_table
from pickylab.constructions import mathieu11, psl2, psl3, psu3, suzuki
from pickylab.cyclotomic import CycNum
from pickylab.evseev import check_irc, check_self_normalizing_decomposition, vanishing_verify
from pickylab.families import CROSSCHECK_GROUPS, admissible, crosscheck, family_verify, invariants, oracle
from pickylab.locality import (block_vanishing_verify, casolo_verify, lambda_character_verify, lambda_count,
                               lambda_formula_verify, picky_reps, sub_dual_route_verify, value_field_verify)
from pickylab.matchcheck import (ConstraintSpec, check_degree_invariants, check_extensions, check_picky,
                                 check_sections, class_verdicts, find_bijection, local_data,
                                 verify_certificate)
from pickylab.perm import Perm
from pickylab.permgroup import alternating, dihedral, p_series, prime_factors, symmetric

FIXTURE = Path(__file__).parents[1] / "src" / "pickylab" / "data" / "j4_hall_fixture.ctx"
PSL2_Q = (4, 5, 7, 8, 9, 11, 13)


def record(n: int, failures: list, summary: str) -> None:
    line = f"criterion {n:2d}: {'FAIL' if failures else 'PASS'}  {summary}"
    if failures:
        line += f"  [{len(failures)} failing: {', '.join(map(str, failures[:4]))}]"
    ACCEPTANCE[n] = line
    print(line)


@cache
def group(key: str):
    kind, _, arg = key.partition(":")
    build = {"S": symmetric, "A": alternating, "D": dihedral, "L2": psl2}
    if kind in build:
        return build[kind](int(arg))
    return {"sz8": lambda: suzuki(8), "psu33": lambda: psu3(3), "m11": mathieu11, "psl34": lambda: psl3(4)}[kind]()


CATALOG = ([f"S:{n}" for n in range(3, 9)] + [f"A:{n}" for n in range(4, 9)] + ["D:8"]
           + [f"L2:{q}" for q in PSL2_Q] + ["sz8", "psu33", "m11", "psl34"])


def pairs(keys=CATALOG):
    return [(k, p) for k in keys for p in prime_factors(group(k).order)]


def failing(checks, allowed=("holds", "vacuous-pass")):
    return [f"{c.name}[{c.target}]={c.verdict}" for c in checks if c.verdict not in allowed]


@pytest.mark.slow
def test_criterion_01_tables():
    bad, n = [], 0
    for key in CATALOG + ["A:9"]:
        rep = verify_table(table_of(group(key)))
        n += 1
        if not rep.ok:
            bad.append(f"{key}: {rep.failures[:1]}")
    record(1, bad, f"{n} computed tables pass both orthogonality relations and the degree equation")
    assert not bad


def test_criterion_02_lambda_casolo():
    checks = []
    for key, p in pairs():
        G = group(key)
        checks += [casolo_verify(G, p), lambda_formula_verify(G, p), lambda_character_verify(G, p)]
    bad = failing(checks)
    record(2, bad, f"Casolo and lambda identities on {len(pairs())} (G,p) pairs")
    assert not bad


def test_criterion_03_sub_dual_route():
    checks = [sub_dual_route_verify(group(k), p) for k, p in pairs()]
    bad = failing(checks)
    record(3, bad, f"definition and Sylow-normalizer routes agree on {len(checks)} (G,p) pairs")
    assert not bad


def _bad_class_certificates(G, p):
    """Each bad-class strong failure carries a certificate that re-verifies independently."""
    L = local_data(G, p)
    out = []
    for x in picky_reps(G, p, L.P):
        if x.is_identity() or x not in L.P.derived_subgroup():
            continue
        a, b = L.point(x)
        spec = ConstraintSpec(primes=(p,), points=((a, b),), sign_equality=True)
        left, right = L.T.nonvanishing(a), L.TN.nonvanishing(b)
        v = find_bijection(L.T, left, L.TN, right, spec)
        out.append(v.status == "fails" and v.certificate is not None
                   and verify_certificate(L.T, left, L.TN, right, spec, v.certificate))
    return out


def test_criterion_04_picky_verdicts():
    bad = []
    defining = {4: 2, 5: 5, 7: 7, 8: 2, 9: 3, 11: 11, 13: 13}
    for q in PSL2_Q:
        c = check_picky(group(f"L2:{q}"), defining[q], "strong-global")
        if c.verdict != "holds":
            bad.append(f"PSL2({q}) strong-global={c.verdict}")
    for key, p in (("sz8", 2), ("psu33", 3)):
        G = group(key)
        if check_picky(G, p, "global").verdict != "holds":
            bad.append(f"{key} global")
        per = class_verdicts(check_picky(G, p, "strong-A"))
        if per != {"good": "holds", "bad": "fails"}:
            bad.append(f"{key} strong per-class {per}")
        certs = _bad_class_certificates(G, p)
        if not certs or not all(certs):
            bad.append(f"{key} bad-class certificates {certs}")
    for key in ("m11", "psl34"):
        G = group(key)
        if not G.sylow(3).is_abelian() or check_picky(G, 3, "global").verdict != "holds":
            bad.append(f"{key} p=3 global")
    record(4, bad, "strong global for PSL2(q); good/bad split for Sz(8), PSU3(3); global for M11, PSL3(4) at p=3")
    assert not bad


FAMILY_Q = {
    "psl2": (4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 31, 32, 49, 64, 81, 121, 125, 128, 169, 199),
    "sz": (8, 32, 128),
    "psu3": (3, 4, 5, 7, 8, 9),
    "ree": (27, 243),
}


def test_criterion_05_family_oracles():
    bad, norm_findings = [], []
    for fam, qs in FAMILY_Q.items():
        for q in qs:
            assert admissible(fam, q)
            c = family_verify(fam, q)
            if c.verdict != "holds":
                bad.append(f"{fam}({q}) verify={c.verdict}")
            inv = invariants(oracle(fam, q))
            if inv.verdict != "holds":
                bad.append(f"{fam}({q}) norms={inv.verdict}")
                norm_findings.append((fam, q))
    for fam, qs in CROSSCHECK_GROUPS.items():
        for q in qs:
            if crosscheck(fam, q).verdict != "holds":
                bad.append(f"{fam}({q}) crosscheck")
    assert len(FAMILY_Q["psl2"]) == 20
    record(5, bad, "family_verify, crosscheck and column-norm invariants")
    if bad:
        # Only the Ree G-side norms are inconsistent: the listed rows at T do not sum to a multiple
        # of q^2 although C_G(T) contains a group of that order. See the notes for the analysis.
        assert set(bad) == {f"ree({q}) norms=finding" for q in FAMILY_Q["ree"]}
        pytest.xfail("Ree oracle G-side column norms are not centralizer orders")


def test_criterion_06_block_vanishing():
    checks = [block_vanishing_verify(group(k), p) for k, p in pairs()]
    bad = failing(checks)
    holds = sum(c.verdict == "holds" for c in checks)
    record(6, bad, f"non-maximal-defect blocks vanish at picky elements ({holds} pairs with picky elements)")
    assert not bad


def test_criterion_07_sections_order_p():
    cases = [("L2:7", 7), ("A:5", 5), ("S:5", 5), ("S:7", 7), ("m11", 11)]
    bad = []
    for key, p in cases:
        G = group(key)
        P = G.sylow(p)
        assert P.order == p
        c = check_sections(G, p, P.gens[0], "thm-4.7")
        if c.verdict != "holds":
            bad.append(f"{key}/{p}={c.verdict}")
    record(7, bad, "section bijections with degree congruence for Sylow subgroups of order p")
    assert not bad


def test_criterion_08_fields_and_containment():
    checks = []
    for key, p in pairs():
        G = group(key)
        checks.append(value_field_verify(G, p))
        checks.append(check_extensions("field-8.1", G=G, p=p))
        if G.sylow(p).is_abelian():
            for x in picky_reps(G, p, G.sylow(p)):
                if not x.is_identity():
                    checks.append(check_sections(G, p, x, "prop-4.5"))
    bad = failing(checks)
    record(8, bad, f"containment, value fields and rational/real transfer ({len(checks)} checks)")
    assert not bad


def _self_normalizing_solvable(keys):
    out = []
    for key, p in pairs(keys):
        G = group(key)
        P = G.sylow(p)
        if p_series(G, p)[3] and G.normalizer(P).order == P.order:
            out.append((key, p))
    return out


SMALL = ["S:3", "S:4", "S:5", "A:4", "A:5", "D:8", "L2:7"]


def test_criterion_09_evseev():
    checks = [vanishing_verify(group(k), p) for k, p in pairs(SMALL)]
    targets = _self_normalizing_solvable(CATALOG)
    assert ("S:4", 2) in targets
    for key, p in targets:
        G = group(key)
        checks.append(check_irc(G, p))
        checks.append(check_self_normalizing_decomposition(G, p))
    bad = failing(checks)
    names = ", ".join(f"{k}/{p}" for k, p in targets)
    record(9, bad, f"generator vanishing on {len(pairs(SMALL))} lattices; IRC-Syl and decomposition at {names}")
    assert not bad


def test_criterion_10_degree_invariants():
    G = group("S:8")
    x = Perm.from_cycles(8, [(0, 1, 2, 3), (4, 5)])
    c = check_degree_invariants(G, 2, "ppart-multiset", x)
    bad = []
    if lambda_count(G, 2, x) != 1:
        bad.append("x not picky")
    if c.verdict != "holds":
        bad.append("G and N multisets differ")
    if set(c.details[0]["G"]) != {1, 2}:
        bad.append(f"degree 2-parts {sorted(c.details[0]['G'])}")
    if set(c.details[0]["P_set"]) != {1, 2}:
        bad.append(f"Sylow-side set {c.details[0]['P_set']}")
    em = [check_degree_invariants(group(k), p, "eaton-moreto") for k, p in pairs()]
    bad += failing(em)
    record(10, bad, f"S8 p=2 Irr^x degree 2-parts {{1,2}} match N side; Eaton-Moreto on {len(em)} pairs")
    assert not bad


def _sqrt_minus_7():
    # quadratic Gauss sum over the residues mod 7
    s = CycNum.rational(0)
    for k in range(1, 7):
        s = s + CycNum.root(7, k) * (1 if pow(k, 3, 7) == 1 else -1)
    assert s * s == CycNum.rational(-7)
    return s


def test_criterion_11_j4_fixture():
    TG, TN = ctx_parse_all(FIXTURE.read_text())
    c = check_extensions("hall-7.2", TG=TG, TN=TN, label_g="35A", label_n="35A", primes=[5, 7])
    s = _sqrt_minus_7()
    half = CycNum.rational(1) / CycNum.rational(2)
    groups = {"1": [CycNum.rational(1)], "a": [(s - 1) * half], "b": [(-s - 1) * half]}

    def counts(T):
        col = T.class_index("35A")
        out = dict.fromkeys(groups, 0)
        for row in T.irr:
            v = row[col]
            for key, (w,) in groups.items():
                if v == w or v == -w:
                    out[key] += 1
        return out

    det = c.details[-1]
    want = {"1": 15, "a": 5, "b": 5}
    bad = []
    if det["pi_prime_counts"] != [30, 25]:
        bad.append(f"pi' counts {det['pi_prime_counts']}")
    if det["nonvanishing_counts"] != [25, 25]:
        bad.append(f"Irr^x counts {det['nonvanishing_counts']}")
    if counts(TG) != want or counts(TN) != want:
        bad.append(f"multiplicities {counts(TG)} / {counts(TN)}")
    if c.verdict != "holds":
        bad.append(f"verdict {c.verdict}")
    record(11, bad, "J4 Hall fixture: 30 vs 25 pi'-degrees, 25 = 25 at x with multiplicities 15/5/5")
    assert not bad


def test_criterion_12_property_suites():
    import test_chartab
    import test_cyclotomic
    import test_matchcheck

    bad = []
    for name, fn, kwargs in [
        ("ring axioms", test_cyclotomic.test_ring_axioms, [{}]),
        ("galois composition", test_cyclotomic.test_galois_composition, [{}]),
        ("frobenius reciprocity", test_chartab.test_frobenius_reciprocity,
         [{"k": k} for k in range(len(test_chartab.INCLUSIONS))]),
        ("block field independence", test_chartab.test_block_partition_independent_of_field,
         [{"G": symmetric(5), "p": 2}, {"G": psl2(7), "p": 7}]),
        ("matching shuffle determinism", test_matchcheck.test_matching_shuffle_determinism,
         [{"seed": s, "Sz8": group("sz8")} for s in range(3)]),
    ]:
        for kw in kwargs:
            try:
                fn(**kw)
            except AssertionError as e:
                bad.append(f"{name}: {e}")
    record(12, bad, "cyclotomic axioms, Galois composition, Frobenius reciprocity, shuffle and field independence")
    assert not bad
