"""Bijections between character sets under degree and value constraints, and the conjecture checks built on them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Sequence

from .chartab import CharacterTable, TableError, irr_pprime, table_of
from .cyclotomic import CycNum, format_cyc, joint_stabilizer, same_field, value_p_part
from .locality import (canonical_sylow, is_p_element, lambda_count, p_element_classes, picky_reps,
                       section_reps, subnormalizer, h_picky, hall_subgroup, is_hall)
from .matching import hall_violator, hopcroft_karp, neighbourhood
from .perm import Perm, fmt_perm
from .permgroup import GroupError, PermGroup, element_parts, p_part, prime_factors
from .report import Check, combine

STATUSES = ("holds", "fails", "holds-nonstrict-only", "vacuous-pass")


@dataclass(frozen=True)
class ConstraintSpec:
    """Which conditions a bijection must satisfy.

    `points` pairs a class of the left table with the class of the same element in the
    right table.  `primes` is the set used for degree parts (a single prime except in
    the Hall version); value p-parts and congruences use its first entry.
    """
    degree_p_part: bool = True
    field_equality: bool = True
    sign_equality: bool = False
    value_p_part: bool = False
    vanishing_pattern: bool = False
    degree_congruence_mod_p: bool = False
    uniform_sign: bool = False
    linked_sign: bool = False
    primes: tuple[int, ...] = ()
    points: tuple[tuple[int, int], ...] = ()

    def normalized(self) -> ConstraintSpec:
        # equal values up to sign force equal fields
        field_eq = self.field_equality and not self.sign_equality
        uniform = self.uniform_sign or (self.linked_sign and self.sign_equality)
        return replace(self, field_equality=field_eq, uniform_sign=uniform,
                       points=tuple((int(a), int(b)) for a, b in self.points),
                       primes=tuple(self.primes))

    @property
    def p(self) -> int:
        if not self.primes:
            raise ValueError("constraint spec has no prime")
        return self.primes[0]

    def flags(self) -> list[str]:
        names = ["degree_p_part", "field_equality", "sign_equality", "value_p_part",
                 "vanishing_pattern", "degree_congruence_mod_p", "uniform_sign", "linked_sign"]
        return [n for n in names if getattr(self, n)]


@dataclass
class MatchVerdict:
    status: str
    left: list[int]
    right: list[int]
    pairs: list[tuple[int, int]] = field(default_factory=list)
    signs: list = field(default_factory=list)
    certificate: dict | None = None
    spec: ConstraintSpec | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status in ("holds", "vacuous-pass")

    def to_json(self) -> dict:
        out = {"status": self.status, "left": self.left, "right": self.right,
               "flags": self.spec.flags() if self.spec else []}
        if self.pairs:
            out["pairs"] = [[a, b] for a, b in self.pairs]
            if self.spec and self.spec.sign_equality:
                out["signs"] = [list(s) if isinstance(s, tuple) else s for s in self.signs]
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_check(self, name: str, target: str) -> Check:
        return Check(name, target, self.status, witness=self.pairs or None,
                     certificate=self.certificate, notes=list(self.notes), details=[self.to_json()])


# ---- character data ------------------------------------------------------------

def nonvanishing_set(T: CharacterTable, S: Sequence[int]) -> list[int]:
    """Irr^S: characters not vanishing on at least one of the classes in S."""
    out = []
    for i, row in enumerate(T.irr):
        for c in S:
            v = row[c]
            if v is None:
                raise TableError(f"value of character {i} at class {c} is unknown")
            if not v.is_zero():
                out.append(i)
                break
    return out


def degree_part(T: CharacterTable, i: int, primes: Sequence[int]) -> int:
    """The pi-part of chi_i(1); fixture rows may store only this part."""
    if T.degrees_known is not None and T.degrees_known[i] is not None:
        declared = T.meta.get("degree_part_primes")
        if declared is None or sorted(int(q) for q in declared.split(",")) != sorted(primes):
            raise TableError(f"{T.name}: stored degree parts are not for primes {list(primes)}")
        return T.degrees_known[i]
    d = T.irr[i][0]
    if d is None:
        raise TableError(f"{T.name}: degree of character {i} unknown")
    out = 1
    for q in primes:
        out *= p_part(int(d.to_fraction()), q)
    return out


def _value(T: CharacterTable, i: int, c: int) -> CycNum:
    v = T.irr[i][c]
    if v is None:
        raise TableError(f"{T.name}: value of character {i} at class {c} unknown")
    return v


def _degree(T: CharacterTable, i: int) -> int:
    v = T.irr[i][0]
    if v is None or T.classes[0].order != 1:
        raise TableError(f"{T.name}: degree of character {i} unknown")
    return int(v.to_fraction())


def _point_signs(a: CycNum, b: CycNum) -> frozenset[int]:
    if a == b:
        return frozenset((1, -1)) if a.is_zero() else frozenset((1,))
    if a == -b:
        return frozenset((-1,))
    return frozenset()


def _compatible(lt, i, rt, j, spec: ConstraintSpec):
    """(ok, signs) for a single pair; signs is a tuple per point or a single sign."""
    if spec.degree_p_part and degree_part(lt, i, spec.primes) != degree_part(rt, j, spec.primes):
        return False, None
    allowed = frozenset((1, -1))
    per_point = []
    for lc, rc in spec.points:
        a, b = _value(lt, i, lc), _value(rt, j, rc)
        if spec.vanishing_pattern and a.is_zero() != b.is_zero():
            return False, None
        if spec.field_equality and not same_field(a, b):
            return False, None
        if spec.value_p_part:
            if a.is_zero() != b.is_zero():
                return False, None
            if not a.is_zero() and value_p_part(a, spec.p) != value_p_part(b, spec.p):
                return False, None
        if spec.sign_equality:
            s = _point_signs(a, b)
            if not s:
                return False, None
            per_point.append(s)
            allowed = allowed & s
    if spec.sign_equality and spec.uniform_sign and not allowed:
        return False, None
    congruence_signs = allowed if (spec.linked_sign and spec.sign_equality) else frozenset((1, -1))
    if spec.degree_congruence_mod_p:
        d1, d2 = _degree(lt, i), _degree(rt, j)
        good = frozenset(s for s in congruence_signs if (d1 - s * d2) % spec.p == 0)
        if not good:
            return False, None
        if spec.linked_sign and spec.sign_equality:
            allowed = good
    if not spec.sign_equality:
        return True, None
    if spec.uniform_sign:
        return True, max(allowed)
    return True, tuple(0 if s == frozenset((1, -1)) else max(s) for s in per_point)


def _profile(T, i, spec: ConstraintSpec, side: int):
    dp = degree_part(T, i, spec.primes) if spec.degree_p_part else None
    deg = _degree(T, i) if spec.degree_congruence_mod_p else None
    return dp, deg, tuple(_value(T, i, pt[side]) for pt in spec.points)


def _nonzero(v: CycNum) -> bool:
    return not v.is_zero()


# ---- the engine ---------------------------------------------------------------

def find_bijection(lt: CharacterTable, left: Sequence[int], rt: CharacterTable, right: Sequence[int],
                   spec: ConstraintSpec) -> MatchVerdict:
    """Search for a bijection left -> right satisfying `spec` on every pair."""
    spec = spec.normalized()
    left = sorted(set(int(i) for i in left))
    right = sorted(set(int(j) for j in right))
    verdict = MatchVerdict("holds", left, right, spec=spec)
    if not left and not right:
        verdict.status = "vacuous-pass"
        verdict.notes.append("both sets are empty")
        return verdict
    adj, signs = [], {}
    # characters with equal data at the points behave identically; test each pair of profiles once
    lsig = [_profile(lt, i, spec, 0) for i in left]
    rsig = [_profile(rt, j, spec, 1) for j in right]
    seen = {}
    for a, i in enumerate(left):
        nb = []
        for b, j in enumerate(right):
            key = (lsig[a], rsig[b])
            if key not in seen:
                seen[key] = _compatible(lt, i, rt, j, spec)
            ok, s = seen[key]
            if ok:
                nb.append(b)
                signs[a, b] = s
        adj.append(nb)
    if len(left) != len(right):
        verdict.status = "fails"
        verdict.certificate = {"kind": "cardinality", "left_size": len(left), "right_size": len(right)}
        return verdict
    ml, mr = hopcroft_karp(len(left), len(right), adj)
    if all(m != -1 for m in ml):
        verdict.pairs = [(left[a], right[ml[a]]) for a in range(len(left))]
        verdict.signs = [signs[a, ml[a]] for a in range(len(left))]
        problems = verify_witness(lt, rt, verdict.pairs, verdict.signs, spec, left, right)
        if problems:
            raise AssertionError("matching produced an invalid witness: " + "; ".join(problems))
        return verdict
    verdict.status = "fails"
    verdict.certificate = _certificate(lt, left, rt, right, spec, adj, ml, mr)
    return verdict


def _certificate(lt, left, rt, right, spec, adj, ml, mr) -> dict:
    S = hall_violator(len(left), adj, ml, mr)
    radj = [[] for _ in right]
    for a, nb in enumerate(adj):
        for b in nb:
            radj[b].append(a)
    T = hall_violator(len(right), radj, mr, ml) if any(m == -1 for m in mr) else None
    # prefer the smaller violator; a lone unmatched character is a value-set obstruction
    side, chosen, nbh = "left", S, []
    if S is not None:
        nbh = sorted(right[b] for b in neighbourhood(adj, S))
    if T is not None and (S is None or len(T) < len(S)):
        side, chosen = "right", T
        nbh = sorted(left[a] for a in neighbourhood(radj, T))
    own = left if side == "left" else right
    cert = {"kind": "hall", "side": side, "set": [own[k] for k in chosen], "neighbourhood": nbh}
    # every character with no admissible partner at all is a value-set obstruction
    obs = [_obstruction(lt, left, rt, right, spec, "left", left[a]) for a in range(len(left)) if not adj[a]]
    obs += [_obstruction(lt, left, rt, right, spec, "right", right[b]) for b in range(len(right)) if not radj[b]]
    if obs:
        cert["obstructions"] = obs
    return cert


def _obstruction(lt, left, rt, right, spec, side, ch) -> dict:
    """Values of an unmatched character against the opposite side's values at the same degree part."""
    T, U, others = (lt, rt, right) if side == "left" else (rt, lt, left)
    col = 0 if side == "left" else 1
    out = {"side": side, "character": ch,
           "values": [format_cyc(_value(T, ch, pt[col])) for pt in spec.points]}
    if spec.degree_p_part and spec.primes:
        dp = degree_part(T, ch, spec.primes)
        out["degree_part"] = dp
        others = [o for o in others if degree_part(U, o, spec.primes) == dp]
    seen = []
    for pt in spec.points:
        vals = sorted({format_cyc(_value(U, o, pt[1 - col])) for o in others})
        seen.append(vals)
    out["opposite_values"] = seen
    return out


# ---- independent verification --------------------------------------------------

def _pair_admissible(lt, i, rt, j, spec: ConstraintSpec, sign=None) -> bool:
    """Re-evaluate every enabled condition for one pair (with given signs when supplied)."""
    if spec.degree_p_part:
        if degree_part(lt, i, spec.primes) != degree_part(rt, j, spec.primes):
            return False
    vals = [(_value(lt, i, a), _value(rt, j, b)) for a, b in spec.points]
    for a, b in vals:
        if spec.vanishing_pattern and (_nonzero(a) != _nonzero(b)):
            return False
        if spec.field_equality and not same_field(a, b):
            return False
        if spec.value_p_part and (_nonzero(a) != _nonzero(b) or
                                  (_nonzero(a) and value_p_part(a, spec.p) != value_p_part(b, spec.p))):
            return False
    candidates = []
    if spec.sign_equality:
        if sign is not None:
            candidates = [sign] if spec.uniform_sign else [tuple(sign)]
        elif spec.uniform_sign:
            candidates = [1, -1]
        else:
            opts = []
            for a, b in vals:
                o = [s for s in (1, -1) if a == b * s]
                if not o:
                    return False
                opts.append(o[0])
            candidates = [tuple(opts)]
    else:
        candidates = [None]
    for s in candidates:
        if spec.sign_equality:
            per = [s] * len(vals) if spec.uniform_sign else list(s)
            if len(per) != len(vals):
                continue
            if not all(a == b * (t if t != 0 else 1) for (a, b), t in zip(vals, per)):
                continue
            if any(t == 0 and _nonzero(a) for (a, _), t in zip(vals, per)):
                continue
        if spec.degree_congruence_mod_p:
            d1, d2 = _degree(lt, i), _degree(rt, j)
            cong = [s] if (spec.linked_sign and spec.sign_equality) else [1, -1]
            if not any((d1 - c * d2) % spec.p == 0 for c in cong):
                continue
        return True
    return False


def verify_witness(lt, rt, pairs, signs, spec: ConstraintSpec, left=None, right=None) -> list[str]:
    """Problems found when re-checking a claimed bijection; empty when it is valid."""
    spec = spec.normalized()
    problems = []
    ls = [a for a, _ in pairs]
    rs = [b for _, b in pairs]
    if len(set(ls)) != len(ls) or len(set(rs)) != len(rs):
        problems.append("not injective")
    if left is not None and sorted(ls) != sorted(left):
        problems.append("domain mismatch")
    if right is not None and sorted(rs) != sorted(right):
        problems.append("image mismatch")
    for k, (i, j) in enumerate(pairs):
        s = signs[k] if spec.sign_equality and signs else None
        if not _pair_admissible(lt, i, rt, j, spec, s):
            problems.append(f"pair ({i}, {j}) violates the constraints")
    return problems


def verify_certificate(lt, left, rt, right, spec: ConstraintSpec, cert: dict) -> bool:
    """True when the certificate proves that no bijection exists."""
    spec = spec.normalized()
    left, right = sorted(set(left)), sorted(set(right))
    if cert.get("kind") == "cardinality":
        return len(left) != len(right) and cert["left_size"] == len(left) and cert["right_size"] == len(right)
    if cert.get("kind") != "hall":
        return False
    S = cert["set"]
    if cert["side"] == "left":
        nb = {j for j in right for i in S if _pair_admissible(lt, i, rt, j, spec)}
    else:
        nb = {i for i in left for j in S if _pair_admissible(lt, i, rt, j, spec)}
    return len(set(S)) > len(nb)


def pprime_nonvanishing_verify(T: CharacterTable, p: int) -> Check:
    """Irr_{p'}(G) is contained in Irr^x(G) for every p-element class."""
    pp = set(irr_pprime(T, p))
    from .permgroup import is_prime_power_of
    bad = []
    for c, cl in enumerate(T.classes):
        if is_prime_power_of(cl.order, p):
            nv = set(T.nonvanishing(c))
            if not pp <= nv:
                bad.append({"class": T.labels[c], "missing": sorted(pp - nv)})
    return Check("pprime-nonvanishing", f"{T.name} p={p}", "fails" if bad else "holds",
                 certificate=bad or None)


# ---- local data ------------------------------------------------------------------

@dataclass
class Local:
    G: PermGroup
    p: int
    T: CharacterTable
    P: PermGroup
    N: PermGroup
    TN: CharacterTable

    def point(self, x: Perm, H: PermGroup | None = None) -> tuple[int, int]:
        H = H or self.N
        return self.G.class_of(x), H.class_of(x)


def local_data(G: PermGroup, p: int) -> Local:
    T = table_of(G)
    P = G.sylow(p)
    N = G.normalizer(P)
    return Local(G, p, T, P, N, table_of(N))


def _target(G, p, x=None) -> str:
    s = f"{G.name} p={p}"
    return s if x is None else s + f" x={fmt_perm(x)}"


def _class_kind(P: PermGroup, x: Perm) -> str:
    """good: x outside P'; bad: x in P' (the split used for TI Sylow subgroups)."""
    if x.is_identity():
        return "identity"
    return "bad" if x in P.derived_subgroup() else "good"


# ---- picky conjecture -------------------------------------------------------------

PICKY_MODES = ("A", "strong-A", "global", "strong-global", "malle3")


def check_picky(G: PermGroup, p: int, mode: str = "A", uniform_sign: bool = False) -> Check:
    if mode not in PICKY_MODES:
        raise ValueError(f"unknown picky mode {mode!r}")
    L = local_data(G, p)
    reps = [x for x in picky_reps(G, p, L.P) if not x.is_identity()]
    target = _target(G, p)
    if not reps:
        return Check(f"picky-{mode}", target, "vacuous-pass", notes=["no nonidentity picky elements"])
    pts = [L.point(x) for x in reps]
    if mode in ("global", "strong-global"):
        strong = mode == "strong-global"
        spec = ConstraintSpec(primes=(p,), points=tuple(pts), vanishing_pattern=True,
                              sign_equality=strong)
        left = nonvanishing_set(L.T, [a for a, _ in pts])
        right = nonvanishing_set(L.TN, [b for _, b in pts])
        v = find_bijection(L.T, left, L.TN, right, spec)
        chk = v.to_check(f"picky-{mode}", target)
        chk.notes.append(f"{len(reps)} picky N-classes; |Irr^P(G)|={len(left)}, |Irr^P(N)|={len(right)}")
        if strong:
            u = find_bijection(L.T, left, L.TN, right, replace(spec, uniform_sign=True))
            chk.notes.append(f"uniform-sign reading: {u.status}")
            chk.details.append({"reading": "uniform-sign", **u.to_json()})
            if uniform_sign:
                chk.verdict = u.status
        if strong and not v.ok:
            weak = find_bijection(L.T, left, L.TN, right, replace(spec, sign_equality=False))
            if weak.ok:
                chk.verdict = "holds-nonstrict-only"
        return chk
    parts = []
    for x, (a, b) in zip(reps, pts):
        spec = ConstraintSpec(primes=(p,), points=((a, b),), sign_equality=mode == "strong-A",
                              value_p_part=mode == "malle3", uniform_sign=uniform_sign)
        v = find_bijection(L.T, L.T.nonvanishing(a), L.TN, L.TN.nonvanishing(b), spec)
        status = v.status
        if mode == "strong-A" and not v.ok:
            weak = find_bijection(L.T, L.T.nonvanishing(a), L.TN, L.TN.nonvanishing(b),
                                  replace(spec, sign_equality=False))
            if weak.ok:
                status = "holds-nonstrict-only"
        c = v.to_check(f"picky-{mode}", _target(G, p, x))
        c.verdict = status
        c.notes.append(f"class {L.T.labels[a]} ({_class_kind(L.P, x)})")
        parts.append(c)
    out = combine(f"picky-{mode}", target, parts)
    out.notes = [f"{L.T.labels[a]} {_class_kind(L.P, x)}: {c.verdict}" for x, (a, _), c in zip(reps, pts, parts)]
    return out


def class_verdicts(chk: Check) -> dict[str, str]:
    """Per-class verdicts from a per-element check, keyed by good/bad kind."""
    out: dict[str, list[str]] = {}
    for line in chk.notes:
        label, _, verdict = line.partition(": ")
        kind = label.split()[-1]
        out.setdefault(kind, []).append(verdict)
    return {k: ("holds" if all(v == "holds" for v in vs) else
                "fails" if all(v != "holds" for v in vs) else "mixed") for k, vs in out.items()}


# ---- subnormalizer conjecture -------------------------------------------------------

def check_subnormalizer(G: PermGroup, p: int, mode: str = "B") -> Check:
    if mode not in ("B", "strong-B"):
        raise ValueError(f"unknown subnormalizer mode {mode!r}")
    T = table_of(G)
    classes = G.conjugacy_classes()
    parts = []
    for c in p_element_classes(G, p):
        x = classes[c].representative
        sub = subnormalizer(G, x, p, route="malle").sub
        TS = table_of(sub)
        b = sub.class_of(x)
        spec = ConstraintSpec(primes=(p,), points=((c, b),), sign_equality=mode == "strong-B")
        v = find_bijection(T, T.nonvanishing(c), TS, TS.nonvanishing(b), spec)
        chk = v.to_check(f"subnormalizer-{mode}", _target(G, p, x))
        chk.notes.append(f"class {T.labels[c]}, |Sub|={sub.order}, picky={lambda_count(G, p, x) == 1}")
        parts.append(chk)
    return combine(f"subnormalizer-{mode}", _target(G, p), parts)


# ---- sections ---------------------------------------------------------------------

SECTION_MODES = ("reduced-4.4", "abelian-4.6", "thm-4.7", "prop-4.5")


def check_sections(G: PermGroup, p: int, x: Perm, mode: str) -> Check:
    if mode not in SECTION_MODES:
        raise ValueError(f"unknown sections mode {mode!r}")
    if not is_p_element(x, p) or x.is_identity():
        raise GroupError(f"{fmt_perm(x)} is not a nonidentity {p}-element")
    T = table_of(G)
    S, R, P = section_reps(G, p, x)
    target = _target(G, p, x)
    name = f"sections-{mode}"
    picky = lambda_count(G, p, x) == 1
    if mode == "reduced-4.4":
        sub = subnormalizer(G, x, p, route="malle").sub
        TS = table_of(sub)
        pts = tuple((G.class_of(g), sub.class_of(g)) for g in R)
        spec = ConstraintSpec(primes=(p,), points=pts, vanishing_pattern=True)
        left = nonvanishing_set(T, [a for a, _ in pts])
        right = nonvanishing_set(TS, [b for _, b in pts])
        chk = find_bijection(T, left, TS, right, spec).to_check(name, target)
        same = left == T.nonvanishing(G.class_of(x))
        chk.notes.append(f"|R_p(x)|={len(R)}; Irr^R(G) {'equals' if same else 'differs from'} Irr^x(G)")
        return chk
    if mode in ("abelian-4.6", "prop-4.5"):
        if not P.is_abelian() or not picky:
            raise GroupError(f"{mode} needs an abelian Sylow subgroup and a picky element")
    if mode == "prop-4.5":
        pp = set(irr_pprime(T, p))
        details, bad = [], []
        for g in S:
            nv = set(T.nonvanishing(G.class_of(g)))
            ok = nv <= pp
            details.append({"element": g, "class": T.labels[G.class_of(g)], "contained": ok})
            if not ok:
                bad.append(g)
        eq = set(T.nonvanishing(G.class_of(x))) == pp
        notes = [f"Irr^x(G) {'=' if eq else '!='} Irr_p'(G) ({len(pp)} characters)"]
        verdict = "holds" if not bad and eq else "fails"
        return Check(name, target, verdict, certificate=bad or None, notes=notes, details=details)
    if mode == "abelian-4.6":
        sub = subnormalizer(G, x, p, route="malle").sub
        TS = table_of(sub)
        pts = tuple((G.class_of(g), sub.class_of(g)) for g in S)
        spec = ConstraintSpec(primes=(p,), points=pts, sign_equality=True, vanishing_pattern=True)
        left = nonvanishing_set(T, [a for a, _ in pts])
        right = nonvanishing_set(TS, [b for _, b in pts])
        return find_bijection(T, left, TS, right, spec).to_check(name, target)
    # thm-4.7
    if p == 2 or P.order != p:
        raise GroupError("thm-4.7 needs an odd prime p with |P| = p")
    N = G.normalizer(P)
    TN = table_of(N)
    pts = tuple((G.class_of(g), N.class_of(g)) for g in S)
    left = nonvanishing_set(T, [a for a, _ in pts])
    right = nonvanishing_set(TN, [b for _, b in pts])
    spec = ConstraintSpec(primes=(p,), points=pts, sign_equality=True, degree_congruence_mod_p=True)
    unlinked = find_bijection(T, left, TN, right, spec)
    linked = find_bijection(T, left, TN, right, replace(spec, linked_sign=True))
    chk = unlinked.to_check(name, target)
    chk.details.append({"reading": "linked-sign", **linked.to_json()})
    chk.notes.append(f"|S_p(x)|={len(S)}; unlinked signs: {unlinked.status}; linked signs: {linked.status}")
    return chk


# ---- degree invariants ----------------------------------------------------------------

def _log_p(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def min_positive_height_group(D: PermGroup, p: int) -> float:
    """mh(D): least h > 0 with an irreducible character of degree p^h; infinity if D is abelian."""
    if D.is_abelian():
        return float("inf")
    return min(_log_p(d, p) for d in table_of(D).degrees if d > 1)


def check_degree_invariants(G: PermGroup, p: int, mode: str, x: Perm | None = None) -> Check:
    from .chartab import p_blocks

    T = table_of(G)
    target = _target(G, p, x)
    if mode == "eaton-moreto":
        B = p_blocks(T, p, defect_groups=True)
        a = _log_p(G.order, p)
        details, bad = [], []
        for n, blk in enumerate(B.blocks):
            hs = [B.heights[i] for i in blk.characters]
            mhB = min((h for h in hs if h > 0), default=float("inf"))
            row = {"block": n, "defect": blk.defect, "characters": blk.characters, "mh_B": str(mhB)}
            if blk.defect_group is None:
                row["skipped"] = "defect group unavailable"
                details.append(row)
                continue
            mhD = min_positive_height_group(blk.defect_group, p)
            row.update(defect_group_order=blk.defect_group.order, mh_D=str(mhD), equal=mhB == mhD)
            asserted = blk.defect == a or blk.defect <= 1
            row["asserted"] = asserted
            if asserted and mhB != mhD:
                bad.append(n)
            details.append(row)
        return Check("eaton-moreto", target, "fails" if bad else "holds",
                     certificate={"blocks": bad} if bad else None, details=details,
                     notes=["asserted on full-defect blocks and blocks of defect <= 1; others reported"])
    if mode != "ppart-multiset":
        raise ValueError(f"unknown degree-invariant mode {mode!r}")
    if x is None:
        raise ValueError("ppart-multiset needs an element")
    P = canonical_sylow(G, p, x)
    N = G.normalizer(P)
    TN, TP = table_of(N), table_of(P)
    c, cn, cp = G.class_of(x), N.class_of(x), P.class_of(x)
    mg = Counter(p_part(T.degree(i), p) for i in T.nonvanishing(c))
    mn = Counter(p_part(TN.degree(i), p) for i in TN.nonvanishing(cn))
    sp = {p_part(TP.degree(i), p) for i in TP.nonvanishing(cp)}
    picky = lambda_count(G, p, x) == 1
    notes = [f"picky={picky}",
             f"set over Irr^x(P) = {sorted(sp)}; "
             f"{'equal to' if sp == set(mg) else 'different from'} the set over Irr^x(G)"]
    details = [{"G": dict(sorted(mg.items())), "N": dict(sorted(mn.items())), "P_set": sorted(sp)}]
    return Check("ppart-multiset", target, "holds" if mg == mn else "fails", notes=notes, details=details)


# ---- extensions --------------------------------------------------------------------

def _pi_part(n: int, primes: Sequence[int]) -> int:
    out = 1
    for q in primes:
        out *= p_part(n, q)
    return out


def check_mixed(G: PermGroup, x: Perm) -> Check:
    """Mixed-order question: signed bijection Irr^x(G) -> Irr^x(Sub_G(x)) with conditional degree parts."""
    T = table_of(G)
    target = f"{G.name} x={fmt_perm(x)}"
    o = x.order()
    primes = prime_factors(o)
    hyp, deg_primes = [], []
    for p in primes:
        xp, xpp, _ = element_parts(G, x, p)
        subp = subnormalizer(G, xp, p, route="malle").sub
        TS = table_of(subp)
        a, b = G.class_of(xp), subp.class_of(xp)
        v = find_bijection(T, T.nonvanishing(a), TS, TS.nonvanishing(b),
                           ConstraintSpec(primes=(p,), points=((a, b),), sign_equality=True))
        hyp.append((p, v.status))
        C = G.centralizer(xpp)
        if p_part(C.order, p) == p_part(G.order, p):
            deg_primes.append(p)
    sub = subnormalizer(G, x, route="definition").sub
    TS = table_of(sub)
    a, b = G.class_of(x), sub.class_of(x)
    spec = ConstraintSpec(degree_p_part=bool(deg_primes), field_equality=False, sign_equality=True,
                          primes=tuple(deg_primes), points=((a, b),))
    v = find_bijection(T, T.nonvanishing(a), TS, TS.nonvanishing(b), spec)
    chk = v.to_check("mixed-7.1", target)
    hyp_ok = all(s == "holds" for _, s in hyp)
    chk.notes.append("strong subnormalizer at prime parts: " + ", ".join(f"p={p} {s}" for p, s in hyp))
    chk.notes.append(f"|Sub_G(x)|={sub.order}; degree parts compared at primes {deg_primes}")
    if not v.ok:
        chk.verdict = "finding"
        chk.notes.append("no bijection" + ("" if hyp_ok else " (hypotheses fail)"))
    elif not hyp_ok:
        chk.notes.append("bijection exists although the hypotheses fail")
    return chk


def h_picky_reps(G: PermGroup, H: PermGroup, primes: Sequence[int]) -> list[Perm]:
    """N_G(H)-class representatives of the H-picky elements of H."""
    NH = G.normalizer(H)
    seen, reps = set(), []
    for x in H.elements():
        key = NH.class_of(x)
        if key in seen or not h_picky(G, H, x, primes):
            continue
        seen.add(key)
        reps.append(x)
    return reps


def check_hall(G: PermGroup, primes: Sequence[int], H: PermGroup | None = None) -> Check:
    primes = tuple(sorted(primes))
    target = f"{G.name} pi={list(primes)}"
    if H is None and set(prime_factors(G.order)) <= set(primes):
        return Check("hall-7.2", target, "vacuous-pass", notes=["pi covers |G|: H = G and N_G(H) = G"])
    H = H if H is not None else hall_subgroup(G, primes)
    if H is None:
        return Check("hall-7.2", target, "skipped", notes=["no nilpotent Hall subgroup found; supply H"])
    if not is_hall(G, H, primes):
        raise GroupError("H is not a Hall subgroup for these primes")
    NH = G.normalizer(H)
    T, TN = table_of(G), table_of(NH)
    reps = [x for x in h_picky_reps(G, H, primes) if not x.is_identity()]
    if not reps:
        return Check("hall-7.2", target, "vacuous-pass", notes=["no nonidentity H-picky elements"])
    pts = tuple((G.class_of(x), NH.class_of(x)) for x in reps)
    spec = ConstraintSpec(primes=primes, points=pts, vanishing_pattern=True)
    left = nonvanishing_set(T, [a for a, _ in pts])
    right = nonvanishing_set(TN, [b for _, b in pts])
    chk = find_bijection(T, left, TN, right, spec).to_check("hall-7.2", target)
    pi_g = sum(1 for d in T.degrees if _pi_part(d, primes) == 1)
    pi_n = sum(1 for d in TN.degrees if _pi_part(d, primes) == 1)
    chk.notes.append(f"|H|={H.order}, |N_G(H)|={NH.order}, {len(reps)} H-picky classes")
    chk.notes.append(f"pi'-degree counts: G {pi_g}, N_G(H) {pi_n}")
    return chk


def _sign_class(v: CycNum) -> str:
    a, b = format_cyc(v), format_cyc(-v)
    return "±(" + min(a, b) + ")"


def value_multiplicities(T: CharacterTable, c: int, up_to_sign: bool = True) -> dict[str, int]:
    vals = [_value(T, i, c) for i in range(len(T.irr))]
    keys = [(_sign_class(v) if up_to_sign else format_cyc(v)) for v in vals if not v.is_zero()]
    return dict(sorted(Counter(keys).items()))


def check_hall_tables(TG: CharacterTable, TN: CharacterTable, label_g: str, label_n: str,
                      primes: Sequence[int]) -> Check:
    """Table-only Hall check: counts, value multiplicities and a bijection at one H-picky class."""
    primes = tuple(sorted(primes))
    a, b = TG.class_index(label_g), TN.class_index(label_n)
    target = f"{TG.name} vs {TN.name} pi={list(primes)} x={label_g}"
    pi_g = [i for i in range(len(TG.irr)) if degree_part(TG, i, primes) == 1]
    pi_n = [i for i in range(len(TN.irr)) if degree_part(TN, i, primes) == 1]
    nv_g, nv_n = TG.nonvanishing(a), TN.nonvanishing(b)
    spec = ConstraintSpec(primes=primes, points=((a, b),))
    chk = find_bijection(TG, nv_g, TN, nv_n, spec).to_check("hall-7.2-fixture", target)
    mg, mn = value_multiplicities(TG, a), value_multiplicities(TN, b)
    chk.details.append({"pi_prime_counts": [len(pi_g), len(pi_n)],
                        "nonvanishing_counts": [len(nv_g), len(nv_n)],
                        "value_multiplicities_G": mg, "value_multiplicities_N": mn,
                        "all_nonvanishing_pi_prime": set(nv_g) <= set(pi_g) and set(nv_n) <= set(pi_n)})
    chk.notes.append(f"|Irr_pi'(G)|={len(pi_g)} vs |Irr_pi'(N)|={len(pi_n)}")
    chk.notes.append(f"|Irr^x(G)|={len(nv_g)} vs |Irr^x(N)|={len(nv_n)}")
    if mg != mn:
        chk.verdict = "fails"
        chk.notes.append("value multiplicities differ")
    if TG.fixture or TN.fixture:
        chk.notes.append("fixture data: table-only, no group-level verification")
    return chk


def check_field_81(G: PermGroup, p: int) -> Check:
    """Along a global picky witness, fields generated by values on the picky set agree."""
    L = local_data(G, p)
    reps = [x for x in picky_reps(G, p, L.P) if not x.is_identity()]
    target = _target(G, p)
    if not reps:
        return Check("field-8.1", target, "vacuous-pass", notes=["no nonidentity picky elements"])
    pts = [L.point(x) for x in reps]
    spec = ConstraintSpec(primes=(p,), points=tuple(pts), vanishing_pattern=True)
    left = nonvanishing_set(L.T, [a for a, _ in pts])
    right = nonvanishing_set(L.TN, [b for _, b in pts])
    v = find_bijection(L.T, left, L.TN, right, spec)
    if not v.ok:
        return Check("field-8.1", target, "skipped", notes=["no global picky witness"])
    bad = []
    for i, j in v.pairs:
        s1 = joint_stabilizer(L.T.irr[i][a] for a, _ in pts)
        s2 = joint_stabilizer(L.TN.irr[j][b] for _, b in pts)
        if not same_field(s1, s2):
            bad.append((i, j))
    return Check("field-8.1", target, "fails" if bad else "holds", witness=v.pairs,
                 certificate=bad or None)


def check_extensions(mode: str, **kw) -> Check:
    if mode == "mixed-7.1":
        return check_mixed(kw["G"], kw["x"])
    if mode == "hall-7.2":
        if "TG" in kw:
            return check_hall_tables(kw["TG"], kw["TN"], kw["label_g"], kw["label_n"], kw["primes"])
        return check_hall(kw["G"], kw["primes"], kw.get("H"))
    if mode == "field-8.1":
        return check_field_81(kw["G"], kw["p"])
    raise ValueError(f"unknown extension mode {mode!r}")
