"""Picky elements, subnormalizers, Sylow counts, sections and related checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .chartab import CharacterTable, class_fusion, permutation_character, table_of
from .cyclotomic import joint_stabilizer, same_field
from .perm import Perm, fmt_perm
from .permgroup import (GroupError, PermGroup, element_parts, is_prime_power_of, is_subnormal,
                        p_part, p_series, prime_factors, valuation as valuation_of)
from .report import Check, combine


def is_p_element(x: Perm, p: int) -> bool:
    return is_prime_power_of(x.order(), p)


def _require_p_element(x: Perm, p: int) -> None:
    if not is_p_element(x, p):
        raise GroupError(f"{fmt_perm(x)} is not a {p}-element")


def p_element_classes(G: PermGroup, p: int, include_identity: bool = False) -> list[int]:
    return [c for c, cl in enumerate(G.conjugacy_classes())
            if is_prime_power_of(cl.order, p) and (include_identity or cl.order > 1)]


# ---- Sylow counts ------------------------------------------------------------

def sylows_containing(G: PermGroup, p: int, x: Perm) -> list[int]:
    """Positions in all_sylows(G, p) of the Sylow subgroups containing x."""
    _require_p_element(x, p)
    ri = G._root_index(x)
    if ri < 0 or not G._mask()[ri]:
        raise GroupError(f"{fmt_perm(x)} is not in the group")
    return [i for i, S in enumerate(G._all_sylow_ridx(p))
            if (pos := np.searchsorted(S, ri)) < len(S) and S[pos] == ri]


def lambda_count(G: PermGroup, p: int, x: Perm) -> int:
    """Number of Sylow p-subgroups containing the p-element x."""
    return len(sylows_containing(G, p, x))


def canonical_sylow(G: PermGroup, p: int, x: Perm) -> PermGroup:
    """First Sylow p-subgroup (in the all_sylows order) containing x."""
    i = sylows_containing(G, p, x)[0]
    return G.all_sylows(p)[i]


def is_picky(G: PermGroup, p: int, x: Perm) -> bool:
    return lambda_count(G, p, x) == 1


def picky_reps(G: PermGroup, p: int, P: PermGroup | None = None) -> list[Perm]:
    """Representatives of the N_G(P)-classes of picky elements of P."""
    P = P if P is not None else G.sylow(p)
    r = G.root
    cnt = np.zeros(len(r._E), dtype=np.int64)
    for S in G._all_sylow_ridx(p):
        cnt[S] += 1
    N = G.normalizer(P)
    todo = [int(i) for i in P.idx if cnt[i] == 1]
    left = set(todo)
    reps = []
    for start in todo:
        if start not in left:
            continue
        orbit = {start}
        frontier = np.array([start])
        while frontier.size:
            new = []
            for g in N.gens:
                for c in r._conj_ridx(frontier, g):
                    c = int(c)
                    if c not in orbit:
                        orbit.add(c)
                        new.append(c)
            frontier = np.array(new, dtype=np.int64)
        left -= orbit
        reps.append(r._perm(min(orbit)))
    return reps


# ---- subnormalizers ------------------------------------------------------------

def subnormalizer_set(G: PermGroup, x: Perm) -> np.ndarray:
    """Root indices of S_G(x) = {g : <x> subnormal in <x, g>}, by exhaustive tests."""
    G.enumerate()
    r = G.root
    E = r._E
    xi = G._root_index(x)
    if xi < 0 or not G._mask()[xi]:
        raise GroupError(f"{fmt_perm(x)} is not in the group")
    X = G.subgroup([x]) if not x.is_identity() else G.trivial_subgroup()
    status = np.zeros(len(E), dtype=np.int8)
    outside = ~G._mask()
    status[outside] = -2
    NX = G.normalizer(X)
    status[NX.idx] = 1
    orders = r._orders()
    xa = np.array(x.images, dtype=np.int64)
    base = r._base
    for gi in G.idx:
        if status[gi]:
            continue
        L = r._closure([xi, int(gi)])
        Lg = PermGroup._sub(r, L, [x, r._perm(int(gi))])
        if is_subnormal(X, Lg):
            status[L] = 1
            continue
        # g' with <x, g'> a conjugate of <x, g> by N_G(<x>) fails as well
        status[gi] = -1
        frontier = np.array([gi], dtype=np.int64)
        while frontier.size:
            rows = E[frontier].astype(np.int64)
            found = [r._lookup_base(rows[:, xa[base]]), r._lookup_base(xa[rows[:, base]])]
            found += [r._conj_ridx(frontier, n) for n in NX.gens]
            o = orders[frontier]
            cur = rows
            for k in range(2, int(o.max())):
                cur = np.take_along_axis(rows, cur, axis=1)
                ok = np.array([gcd(k, int(v)) == 1 and k < v for v in o])
                if ok.any():
                    found.append(r._lookup_rows(cur[ok].astype(E.dtype)))
            cand = np.unique(np.concatenate(found))
            cand = cand[status[cand] == 0]
            status[cand] = -1
            frontier = cand
    return np.flatnonzero(status == 1)


def sub_malle(G: PermGroup, p: int, x: Perm) -> PermGroup:
    """<N_G(Q) : x in Q in Syl_p(G)>."""
    _require_p_element(x, p)
    P = G.sylow(p)
    N = G.normalizer(P)
    ts = G.sylow_conjugators(p)
    gens = []
    for i in sylows_containing(G, p, x):
        gens.extend(n.conj(ts[i]) for n in N.gens)
    if not gens:
        return G.trivial_subgroup()
    return G.generated_subgroup(gens)


@dataclass
class Subnormalizer:
    x: Perm
    set_size: int | None
    sub: PermGroup
    malle: PermGroup | None = None
    routes_agree: bool | None = None
    route: str = "definition"


def subnormalizer(G: PermGroup, x: Perm, p: int | None = None, route: str = "both") -> Subnormalizer:
    """S_G(x) and Sub_G(x); for p-elements both routes are computed and compared."""
    if p is None and x.order() > 1 and len(prime_factors(x.order())) == 1:
        p = prime_factors(x.order())[0]
    malle = None
    if p is not None and is_p_element(x, p) and route in ("both", "malle"):
        malle = sub_malle(G, p, x)
    if route == "malle":
        return Subnormalizer(x, None, malle, malle, None, "malle")
    S = subnormalizer_set(G, x)
    sub = G.generated_subgroup(S)
    agree = None if malle is None else bool(np.array_equal(sub.idx, malle.idx))
    return Subnormalizer(x, len(S), sub, malle, agree, "definition")


@dataclass
class LocalityProfile:
    x: Perm
    p: int
    sylow: PermGroup
    lam: int
    picky: bool
    set_size: int | None
    sub: PermGroup
    sections: tuple[list[Perm], list[Perm]] | None = None


def locality_profile(G: PermGroup, p: int, x: Perm, sections: bool = False) -> LocalityProfile:
    lam = lambda_count(G, p, x)
    res = subnormalizer(G, x, p)
    sec = section_reps(G, p, x)[:2] if sections else None
    return LocalityProfile(x, p, canonical_sylow(G, p, x), lam, lam == 1, res.set_size, res.sub, sec)


# ---- identities --------------------------------------------------------------------

def _reps(G: PermGroup, p: int, include_identity: bool = True):
    classes = G.conjugacy_classes()
    return [(c, classes[c].representative) for c in p_element_classes(G, p, include_identity)]


def casolo_verify(G: PermGroup, p: int) -> Check:
    """|S_G(x)| = lambda_G(x) |N_G(P)| for every p-element class."""
    nP = G.normalizer(G.sylow(p)).order
    details, bad = [], []
    for c, x in _reps(G, p):
        lam = lambda_count(G, p, x)
        size = len(subnormalizer_set(G, x))
        details.append({"class": c, "x": x, "lambda": lam, "S_size": size, "N_order": nP})
        if size != lam * nP:
            bad.append(c)
    return Check("casolo", f"{G.name} p={p}", "fails" if bad else "holds",
                 certificate={"classes": bad} if bad else None, details=details)


def lambda_character_verify(G: PermGroup, p: int, T: CharacterTable | None = None) -> Check:
    """lambda_G(x) equals (1_N)^G(x), with N = N_G(P), at every p-element class."""
    T = T or table_of(G)
    N = G.normalizer(G.sylow(p))
    TN = table_of(N)
    pc = permutation_character(TN, T, class_fusion(TN, T))
    details, bad = [], []
    for c, x in _reps(G, p):
        lam = lambda_count(G, p, x)
        val = pc[c]
        details.append({"class": c, "x": x, "lambda": lam, "permutation_character": val})
        if val != lam:
            bad.append(c)
    return Check("lambda=perm-char", f"{G.name} p={p}", "fails" if bad else "holds",
                 certificate={"classes": bad} if bad else None, details=details)


def lambda_formula_verify(G: PermGroup, p: int) -> Check:
    """lambda_G(x) = |C_G(x)| |x^G cap P| / |N_G(P)|."""
    P = G.sylow(p)
    nP = G.normalizer(P).order
    lab = G.class_labels()
    pm = P._mask()[G.idx]
    details, bad = [], []
    for c, x in _reps(G, p):
        inter = int(((lab == c) & pm).sum())
        cg = G.order // G.conjugacy_classes()[c].size
        rhs = Fraction(cg * inter, nP)
        lam = lambda_count(G, p, x)
        details.append({"class": c, "x": x, "lambda": lam, "C_order": cg, "xG_cap_P": inter, "formula": rhs})
        if rhs != lam:
            bad.append(c)
    return Check("lambda-formula", f"{G.name} p={p}", "fails" if bad else "holds",
                 certificate={"classes": bad} if bad else None, details=details)


def sub_dual_route_verify(G: PermGroup, p: int) -> Check:
    """Definition-route Sub_G(x) equals the Malle-route subgroup for p-elements."""
    details, bad = [], []
    for c, x in _reps(G, p):
        res = subnormalizer(G, x, p)
        details.append({"class": c, "x": x, "sub_order": res.sub.order, "malle_order": res.malle.order,
                        "agree": res.routes_agree})
        if not res.routes_agree:
            bad.append(c)
    return Check("sub-dual-route", f"{G.name} p={p}", "fails" if bad else "holds",
                 certificate={"classes": bad} if bad else None, details=details)


def sub_containment_verify(G: PermGroup, p: int) -> Check:
    """N_G(P) <= Sub, C_G(x) <= Sub, and picky iff Sub = N_G(P)."""
    details, bad = [], []
    for c, x in _reps(G, p, include_identity=False):
        P = canonical_sylow(G, p, x)
        N = G.normalizer(P)
        sub = sub_malle(G, p, x)
        C = G.centralizer(x)
        smask = sub._mask()
        n_in = bool(smask[N.idx].all())
        c_in = bool(smask[C.idx].all())
        lam = lambda_count(G, p, x)
        equiv = (lam == 1) == (sub.order == N.order)
        details.append({"class": c, "N_le_Sub": n_in, "C_le_Sub": c_in, "picky": lam == 1,
                        "Sub_eq_N": sub.order == N.order})
        if not (n_in and c_in and equiv):
            bad.append(c)
    return Check("sub-containment", f"{G.name} p={p}", "fails" if bad else "holds",
                 certificate={"classes": bad} if bad else None, details=details)


# ---- fusion ---------------------------------------------------------------------

def _class_split(G: PermGroup, K: PermGroup, c: int) -> list[int]:
    """Sizes of the K-conjugacy classes partitioning x^G cap K, x in class c of G."""
    r = G.root
    lab = G.class_labels()
    kpos = G._local(K.idx)
    members = K.idx[lab[kpos] == c]
    left = set(int(i) for i in members)
    sizes = []
    while left:
        start = min(left)
        orbit = {start}
        frontier = np.array([start])
        while frontier.size:
            new = []
            for g in K.gens:
                for v in r._conj_ridx(frontier, g):
                    v = int(v)
                    if v not in orbit:
                        orbit.add(v)
                        new.append(v)
            frontier = np.array(new, dtype=np.int64)
        sizes.append(len(orbit))
        left -= orbit
    return sizes


def fusion_control_verify(G: PermGroup, p: int, mixed: Sequence[Perm] = ()) -> Check:
    """Picky x: x^G cap P is one N_G(P)-class.  Every p-element x: x^G cap Sub_G(x) is one Sub-class.

    Elements in `mixed` (not p-elements) get the same test with the definition-route
    subnormalizer; splitting there is reported as a finding.
    """
    details, bad, findings = [], [], []
    for c, x in _reps(G, p, include_identity=False):
        P = canonical_sylow(G, p, x)
        lam = lambda_count(G, p, x)
        row = {"class": c, "x": x, "picky": lam == 1}
        if lam == 1:
            N = G.normalizer(P)
            # N-classes of x^G cap P, restricted to those inside P
            lab = G.class_labels()
            in_p = P.idx[lab[G._local(P.idx)] == c]
            row["xG_cap_P"] = len(in_p)
            orbit_sizes = [s for s in _orbits_within(G, N, in_p)]
            row["N_classes_in_P"] = orbit_sizes
            if len(orbit_sizes) != 1:
                bad.append(c)
        sub = sub_malle(G, p, x)
        split = _class_split(G, sub, c)
        row["sub_order"] = sub.order
        row["sub_classes"] = split
        if len(split) != 1:
            bad.append(c)
        details.append(row)
    for x in mixed:
        c = G.class_of(x)
        sub = subnormalizer(G, x, route="definition").sub
        split = _class_split(G, sub, c)
        details.append({"class": c, "x": x, "mixed": True, "sub_order": sub.order, "sub_classes": split})
        if len(split) != 1:
            findings.append(f"x={fmt_perm(x)}: x^G cap Sub_G(x) splits into {len(split)} Sub_G(x)-classes")
    verdict = "fails" if bad else "holds"
    return Check("fusion-control", f"{G.name} p={p}", verdict,
                 certificate={"classes": sorted(set(bad))} if bad else None, notes=findings, details=details)


def _orbits_within(G: PermGroup, N: PermGroup, ridx: np.ndarray) -> list[int]:
    r = G.root
    left = set(int(i) for i in ridx)
    sizes = []
    while left:
        start = min(left)
        orbit = {start}
        frontier = np.array([start])
        while frontier.size:
            new = []
            for g in N.gens:
                for v in r._conj_ridx(frontier, g):
                    v = int(v)
                    if v not in orbit:
                        orbit.add(v)
                        new.append(v)
            frontier = np.array(new, dtype=np.int64)
        sizes.append(len(orbit & left))
        left -= orbit
    return sizes


# ---- sections -------------------------------------------------------------------

def section_reps(G: PermGroup, p: int, x: Perm) -> tuple[list[Perm], list[Perm], PermGroup]:
    """S_p(x) = {x*y : y over p-regular class reps of C_G(x)} and the reduced R_p(x).

    R_p(x) uses p-regular z in C_G(P) for the canonical Sylow P containing x,
    one per C_G(x)-class.  The Sylow used is returned as the third item.
    """
    _require_p_element(x, p)
    P = canonical_sylow(G, p, x)
    C = G.centralizer(x)
    S = [x * cl.representative for cl in C.conjugacy_classes() if cl.order % p]
    CP = G.centralizer(P)
    lab = C.class_labels()
    orders = C.element_orders()
    seen: dict[int, int] = {}
    r = G.root
    for ri in CP.idx:
        pos = int(C._local(np.array([ri]))[0])
        if orders[pos] % p == 0 and orders[pos] > 1:
            continue
        seen.setdefault(int(lab[pos]), int(ri))
    R = [x * r._perm(ri) for _, ri in sorted(seen.items())]
    return S, R, P


# ---- theorems on orders and fields ---------------------------------------------

def rae_verify(G: PermGroup, p: int) -> Check:
    """o(x) >= p^(k/2) for picky p-elements of a p-solvable group of p-length k."""
    _, _, k, solvable = p_series(G, p)
    if not solvable:
        raise GroupError(f"{G.name} is not {p}-solvable")
    details, bad, strong = [], [], True
    for c, x in _reps(G, p, include_identity=False):
        if lambda_count(G, p, x) != 1:
            continue
        o = x.order()
        ok = o * o >= p ** k
        st = o >= p ** k
        strong &= st
        details.append({"class": c, "order": o, "bound_half": ok, "bound_full": st})
        if not ok:
            bad.append(c)
    notes = [f"p-length {k}", "o(x) >= p^k " + ("holds" if strong else "fails") + " on every picky class"]
    return Check("rae", f"{G.name} p={p}", "fails" if bad else "holds",
                 certificate={"classes": bad} if bad else None, notes=notes, details=details)


def block_vanishing_verify(G: PermGroup, p: int) -> Check:
    """Characters in blocks of non-maximal defect vanish at every picky element."""
    from .chartab import p_blocks

    T = table_of(G)
    full = valuation_of(G.order, p)
    B = p_blocks(T, p, defect_groups=False)
    P = G.sylow(p)
    reps = [x for x in picky_reps(G, p, P) if not x.is_identity()]
    cols = sorted({G.class_of(x) for x in reps})
    bad, details = [], []
    for n, blk in enumerate(B.blocks):
        if blk.defect == full:
            continue
        nz = [(i, T.labels[c]) for i in blk.characters for c in cols if not T.irr[i][c].is_zero()]
        details.append({"block": n, "defect": blk.defect, "characters": blk.characters, "nonzero": nz})
        bad += nz
    target = f"{G.name} p={p}"
    if not cols:
        return Check("block-vanishing", target, "vacuous-pass", notes=["no nonidentity picky elements"])
    notes = [f"{len(B.blocks)} blocks, {len(details)} of non-maximal defect; picky classes "
             + ", ".join(T.labels[c] for c in cols)]
    return Check("block-vanishing", target, "fails" if bad else "holds",
                 certificate={"nonzero": bad} if bad else None, notes=notes, details=details)


def column_stabilizer(T: CharacterTable, c: int):
    return joint_stabilizer(row[c] for row in T.irr)


def value_field_verify(G: PermGroup, p: int) -> Check:
    """Q_G(x) = Q_Sub(x) for p-element classes; rational/real transfer at picky x."""
    T = table_of(G)
    details, bad = [], []
    for c, x in _reps(G, p, include_identity=False):
        sub = sub_malle(G, p, x)
        TS = table_of(sub)
        cs = sub.class_of(x)
        a = column_stabilizer(T, c)
        b = column_stabilizer(TS, cs)
        eq = same_field(a, b)
        row = {"class": c, "x": x, "sub_order": sub.order, "field_G": sorted(a.elements),
               "modulus_G": a.modulus, "field_Sub": sorted(b.elements), "modulus_Sub": b.modulus,
               "equal": eq}
        if lambda_count(G, p, x) == 1:
            N = G.normalizer(canonical_sylow(G, p, x))
            TN = table_of(N)
            cn = N.class_of(x)
            rat = (all(r[c].is_rational() for r in T.irr), all(r[cn].is_rational() for r in TN.irr))
            real = (all(r[c].is_real() for r in T.irr), all(r[cn].is_real() for r in TN.irr))
            row.update(rational=rat, real=real)
            if rat[0] != rat[1] or real[0] != real[1]:
                bad.append(c)
        if not eq:
            bad.append(c)
        details.append(row)
    return Check("value-field", f"{G.name} p={p}", "fails" if bad else "holds",
                 certificate={"classes": sorted(set(bad))} if bad else None, details=details)


# ---- semilattice fibers ------------------------------------------------------------

def semilattice_fiber_verify(elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool],
                             g: Callable[[Hashable], Hashable], x: Hashable) -> Check:
    """Fibers {z in X^g_{>x} : z >= y} over y in the downward closure of X^g, above x."""
    X = list(elements)
    index = {e: i for i, e in enumerate(X)}
    n = len(X)
    le = np.array([[leq(a, b) for b in X] for a in X], dtype=bool)
    meet = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            lower = np.flatnonzero(le[:, i] & le[:, j])
            top = [k for k in lower if le[lower, k].all()]
            if len(top) != 1:
                raise ValueError(f"{X[i]!r} and {X[j]!r} have no meet")
            meet[i, j] = meet[j, i] = top[0]
    gi = np.array([index[g(e)] for e in X])
    if sorted(gi.tolist()) != list(range(n)) or not all(
            le[i, j] == le[gi[i], gi[j]] for i in range(n) for j in range(n)):
        raise ValueError("g is not an order automorphism")
    xi = index[x]
    fixed = [i for i in range(n) if gi[i] == i]
    above = [i for i in fixed if le[xi, i] and i != xi]
    down = [i for i in range(n) if any(le[i, f] for f in fixed)]
    down_above = [i for i in down if le[xi, i] and i != xi]
    closed_whole = all(meet[a, b] in above for a in above for b in above)
    details, bad = [], []
    for y in down_above:
        fib = [z for z in above if le[y, z]]
        closed = all(meet[a, b] in fib for a in fib for b in fib)
        least = [z for z in fib if all(le[z, w] for w in fib)]
        ok = bool(fib) and closed and len(least) == 1
        details.append({"y": repr(X[y]), "fiber_size": len(fib), "meet_closed": closed,
                        "least": repr(X[least[0]]) if least else None})
        if not ok:
            bad.append(repr(X[y]))
    notes = [f"X^g_>x is {'' if closed_whole else 'not '}meet-closed", f"{len(down_above)} fibers"]
    if not above and down_above:
        bad.append("empty X^g_>x with nonempty downward closure")
    return Check("semilattice-fiber", "", "fails" if bad else "holds",
                 certificate={"fibers": bad} if bad else None, notes=notes, details=details)


# ---- Hall subgroups ---------------------------------------------------------------

def is_hall(G: PermGroup, H: PermGroup, primes: Iterable[int]) -> bool:
    primes = set(primes)
    pi = 1
    for q in primes:
        pi *= p_part(G.order, q)
    return H.order == pi


def hall_subgroup(G: PermGroup, primes: Iterable[int], nilpotent: bool = True) -> PermGroup | None:
    """A nilpotent Hall subgroup: a product of pairwise commuting Sylow subgroups, found by search."""
    primes = sorted(set(q for q in primes if G.order % q == 0))
    if not primes:
        return G.trivial_subgroup()
    choices = [G.all_sylows(q) for q in primes]

    def search(i, chosen):
        if i == len(choices):
            return G.generated_subgroup([g for S in chosen for g in S.gens])
        for S in choices[i]:
            if all(a * b == b * a for T in chosen for a in T.gens for b in S.gens):
                res = search(i + 1, chosen + [S])
                if res is not None:
                    return res
        return None

    H = search(0, [])
    if H is not None and not is_hall(G, H, primes):
        return None
    return H


def h_picky(G: PermGroup, H: PermGroup, x: Perm, primes: Iterable[int] | None = None) -> bool:
    """x in H is H-picky when x in H^g forces g in N_G(H)."""
    if primes is None:
        primes = prime_factors(H.order)
    if not is_hall(G, H, primes):
        raise GroupError("H is not a Hall subgroup for the given primes")
    if x not in H:
        raise GroupError(f"{fmt_perm(x)} is not in H")
    r = G.root
    # x in H^g with g outside N_G(H) exactly when another conjugate of H contains x
    seen = {H.idx.tobytes(): H.idx}
    queue = [H.idx]
    xi = G._root_index(x)
    for S in queue:
        for g in G.gens:
            T = np.sort(r._conj_ridx(S, g))
            if T.tobytes() not in seen:
                seen[T.tobytes()] = T
                queue.append(T)
    containing = [S for S in seen.values() if xi in set(S.tolist())]
    return len(containing) == 1


def mixed_sub_containment(G: PermGroup, x: Perm) -> Check:
    """Sub_G(x) <= intersection of Sub_G(x_p) over primes p dividing o(x)."""
    sub = subnormalizer(G, x, route="definition").sub
    inter = None
    for p in prime_factors(x.order()):
        xp = element_parts(G, x, p)[0]
        s = sub_malle(G, p, xp)
        inter = s if inter is None else inter.intersection(s)
    ok = inter is None or bool(inter._mask()[sub.idx].all())
    return Check("mixed-sub-containment", fmt_perm(x), "holds" if ok else "fails",
                 details=[{"sub_order": sub.order, "intersection_order": inter.order if inter else None}])
