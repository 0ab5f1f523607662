"""Induced-character lattices, Evseev's (IRC-Syl) conditions and the self-normalizing decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .chartab import (CharacterTable, class_fusion, induce, irr_pprime, restrict, table_of)
from .cyclotomic import CycNum
from .locality import picky_reps
from .matching import hall_violator, hopcroft_karp
from .permgroup import PermGroup, p_part, p_series, prime_factors
from .report import Check

DECOMPOSITION_CAP = 10


# ---- Hermite normal form ---------------------------------------------------------

def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form: echelon rows, positive pivots, entries above pivots reduced."""
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out: list[list[int]] = []
    col = 0
    while A and col < ncols:
        nz = [r for r in A if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in A if r[col] == 0]
        # Euclid on the column until a single row carries it
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        A = rest
        col += 1
    # reduce entries above each pivot into [0, pivot)
    for i, r in enumerate(out):
        c = _pivot(r)
        for k in range(i):
            q = out[k][c] // r[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], r)]
    return out


def _pivot(r: list[int]) -> int:
    return next(i for i, a in enumerate(r) if a)


@dataclass
class CharLattice:
    dim: int
    generators: list[list[int]]
    basis: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.dim:
                raise ValueError("generator has the wrong dimension")
        self.basis = hnf(self.generators)

    def membership(self, v) -> bool:
        return self.reduce(v)[1]

    def reduce(self, v) -> tuple[list[int], bool]:
        """Back-substitution: (residual, member?).  A nonzero residual certifies non-membership."""
        v = [Fraction(a) for a in v]
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} in a lattice of dimension {self.dim}")
        for r in self.basis:
            c = _pivot(r)
            q = v[c] / r[c]
            if q.denominator != 1:
                return v, False
            if q:
                v = [a - q * b for a, b in zip(v, r)]
        return v, not any(v)

    def extended(self, extra: list[list[int]]) -> CharLattice:
        return CharLattice(self.dim, self.basis + extra)


def membership(v, L: CharLattice) -> bool:
    return L.membership(v)


# ---- Evseev's subgroup sets ----------------------------------------------------------

def _containing_count(G: PermGroup, p: int, Q: PermGroup) -> int:
    q = Q.idx
    return sum(1 for S in G._all_sylow_ridx(p) if np.isin(q, S, assume_unique=True).all())


def s_set(G: PermGroup, p: int, P: PermGroup | None = None) -> list[PermGroup]:
    """Subgroups of P lying in some other Sylow p-subgroup (H = N_G(P))."""
    P = P if P is not None else G.sylow(p)
    return [Q for Q in P.subgroups() if _containing_count(G, p, Q) >= 2]


def _classes_of_subgroups(H: PermGroup, subs: list[PermGroup]) -> list[PermGroup]:
    """One representative per H-conjugacy class."""
    r = H.root
    seen: set[bytes] = set()
    reps = []
    for L in subs:
        key = L.idx.tobytes()
        if key in seen:
            continue
        reps.append(L)
        frontier = [L.idx]
        seen.add(key)
        while frontier:
            new = []
            for idx in frontier:
                for g in H.gens:
                    c = np.sort(r._conj_ridx(idx, g))
                    k = c.tobytes()
                    if k not in seen:
                        seen.add(k)
                        new.append(c)
            frontier = new
    return reps


def qualifying_subgroups(H: PermGroup, P: PermGroup, S: list[PermGroup]) -> list[PermGroup]:
    """L <= H with L cap P Sylow in L and in S, up to H-conjugacy."""
    skeys = {Q.idx.tobytes() for Q in S}
    ps = prime_factors(P.order)
    out = []
    for L in H.subgroups():
        I = L.intersection(P)
        if I.idx.tobytes() not in skeys:
            continue
        if ps and p_part(L.order, ps[0]) != I.order:
            continue
        out.append(L)
    return _classes_of_subgroups(H, out)


def _coords(TH: CharacterTable, f: list[CycNum]) -> list[int]:
    out = []
    for c in TH.decompose(f):
        if c.denominator != 1:
            raise ValueError("class function is not a virtual character")
        out.append(int(c))
    return out


@dataclass
class InducedLattice:
    lattice: CharLattice
    subgroups: list[PermGroup]
    induced: list[list[CycNum]]


def induced_lattice(H: PermGroup, P: PermGroup, S: list[PermGroup]) -> InducedLattice:
    TH = table_of(H)
    subs = qualifying_subgroups(H, P, S)
    gens, funcs = [], []
    for L in subs:
        TL = table_of(L)
        fus = class_fusion(TL, TH)
        for theta in TL.irr:
            f = induce(theta, TL, TH, fus)
            funcs.append(f)
            gens.append(_coords(TH, f))
    return InducedLattice(CharLattice(TH.nclasses, gens), subs, funcs)


def vanishing_verify(G: PermGroup, p: int) -> Check:
    """Every generator of I(H,P,S) vanishes at every picky element of P."""
    P = G.sylow(p)
    H = G.normalizer(P)
    TH = table_of(H)
    S = s_set(G, p, P)
    IL = induced_lattice(H, P, S)
    picky = [x for x in picky_reps(G, p, P)]
    cols = [H.class_of(x) for x in picky]
    bad = [k for k, f in enumerate(IL.induced) for c in cols if not f[c].is_zero()]
    return Check("evseev-vanishing", f"{G.name} p={p}", "fails" if bad else ("holds" if cols else "vacuous-pass"),
                 certificate={"generators": sorted(set(bad))} if bad else None,
                 notes=[f"{len(IL.induced)} generators from {len(IL.subgroups)} subgroup classes; "
                        f"{len(cols)} picky classes"])


# ---- IRC-Syl -----------------------------------------------------------------------

@dataclass
class SignedMatch:
    status: str
    pairs: list[tuple[int, int, int]]
    certificate: dict | None = None


def _signed_match(left: list[int], right: list[int], ok) -> SignedMatch:
    """Bijection left -> right with a sign per pair; ok(i, j, s) decides admissibility.

    +psi and -psi share one right vertex, so each psi is used once with one sign.
    """
    adj, sign = [], {}
    for a, i in enumerate(left):
        nb = []
        for b, j in enumerate(right):
            for s in (1, -1):
                if ok(i, j, s):
                    nb.append(b)
                    sign[a, b] = s
                    break
        adj.append(nb)
    if len(left) != len(right):
        return SignedMatch("fails", [], {"kind": "cardinality", "left_size": len(left), "right_size": len(right)})
    ml, mr = hopcroft_karp(len(left), len(right), adj)
    if all(m != -1 for m in ml):
        return SignedMatch("holds", [(left[a], right[ml[a]], sign[a, ml[a]]) for a in range(len(left))])
    S = hall_violator(len(left), adj, ml, mr)
    return SignedMatch("fails", [], {"kind": "hall", "set": [left[a] for a in S]})


def check_irc(G: PermGroup, p: int, weak: bool = False, picky_version: bool = False) -> Check:
    """(IRC-Syl), (WIRC-Syl), or the picky lattice version with C_p^P(H)."""
    T = table_of(G)
    P = G.sylow(p)
    H = G.normalizer(P)
    TH = table_of(H)
    fus = class_fusion(TH, T)
    S = s_set(G, p, P)
    IL = induced_lattice(H, P, S)
    L = IL.lattice
    name = "picky-irc" if picky_version else ("wirc-syl" if weak else "irc-syl")
    picky = [x for x in picky_reps(G, p, P) if not x.is_identity()]
    if picky_version:
        gcols = [G.class_of(x) for x in picky]
        hcols = [H.class_of(x) for x in picky]
        left = sorted({i for c in gcols for i in T.nonvanishing(c)})
        right = sorted({j for c in hcols for j in TH.nonvanishing(c)})
        extra = [[int(k == j) for k in range(TH.nclasses)] for j in right if TH.degree(j) % p == 0]
        L = L.extended(extra)
    else:
        left, right = irr_pprime(T, p), irr_pprime(TH, p)
        if weak:
            extra = [[int(k == j) for k in range(TH.nclasses)]
                     for j in range(len(TH.irr)) if TH.degree(j) % p == 0]
            L = L.extended(extra)
    res_coords = {i: _coords(TH, restrict(T.irr[i], fus)) for i in left}

    def ok(i, j, s):
        if picky_version and p_part(T.degree(i), p) != p_part(TH.degree(j), p):
            return False
        v = [-a for a in res_coords[i]]
        v[j] += s
        return L.membership(v)

    m = _signed_match(left, right, ok)
    chk = Check(name, f"{G.name} p={p}", m.status, witness=[list(t) for t in m.pairs] or None,
                certificate=m.certificate,
                notes=[f"|S|={len(S)}, lattice rank {len(L.basis)}, {len(left)} vs {len(right)} characters"])
    if m.status == "holds":
        # consequence at picky elements: F(chi)(x) = sign * chi(x)
        bad = []
        for i, j, s in m.pairs:
            for x in picky:
                if T.irr[i][G.class_of(x)] != TH.irr[j][H.class_of(x)] * s:
                    bad.append((i, j, s))
        chk.notes.append("picky-value consequence " + ("fails" if bad else "holds"))
        # only the plain condition forces the consequence; the extra C_p(H) generators need not vanish
        if bad and not weak and not picky_version:
            chk.verdict = "fails"
            chk.certificate = {"picky_value_violations": bad}
    return chk


# ---- self-normalizing decomposition ------------------------------------------------------

def nonneg_decomposition(target: list[int], generators: list[list[int]], cap: int = DECOMPOSITION_CAP):
    """Nonnegative integer combination of generators equal to target, each used at most cap times."""
    gens = sorted({tuple(g) for g in generators if any(g) and min(g) >= 0})
    if min(target, default=0) < 0:
        return None

    @lru_cache(maxsize=None)
    def search(rem: tuple[int, ...], counts: tuple[int, ...]):
        if not any(rem):
            return counts
        i = next(k for k, a in enumerate(rem) if a)
        for n, g in enumerate(gens):
            if g[i] and counts[n] < cap and all(a >= b for a, b in zip(rem, g)):
                nxt = tuple(a - b for a, b in zip(rem, g))
                c = list(counts)
                c[n] += 1
                found = search(nxt, tuple(c))
                if found is not None:
                    return found
        return None

    found = search(tuple(target), tuple([0] * len(gens)))
    if found is None:
        return None
    return [(list(g), k) for g, k in zip(gens, found) if k]


def check_self_normalizing_decomposition(G: PermGroup, p: int) -> Check:
    target = f"{G.name} p={p}"
    _, _, _, solvable = p_series(G, p)
    P = G.sylow(p)
    if not solvable or G.normalizer(P).order != P.order:
        return Check("evseev-decomposition", target, "skipped",
                     notes=["needs a p-solvable group with self-normalizing Sylow subgroup"])
    T, TP = table_of(G), table_of(P)
    fus = class_fusion(TP, T)
    S = s_set(G, p, P)
    gens = []
    for Q in _classes_of_subgroups(P, S):
        TQ = table_of(Q)
        fq = class_fusion(TQ, TP)
        gens += [_coords(TP, induce(theta, TQ, TP, fq)) for theta in TQ.irr]
    L = CharLattice(TP.nclasses, gens)
    linear = [j for j in range(len(TP.irr)) if TP.degree(j) == 1]
    left = irr_pprime(T, p)
    details, decomp = [], {}
    adj = []
    for i in left:
        res = _coords(TP, restrict(T.irr[i], fus))
        nb = []
        for b, j in enumerate(linear):
            if res[j] < 1:
                continue
            delta = list(res)
            delta[j] -= 1
            if not L.membership(delta):
                continue
            dec = nonneg_decomposition(delta, gens)
            decomp[i, j] = dec is not None
            if dec is not None:
                nb.append(b)
        adj.append(nb)
    ml, _ = hopcroft_karp(len(left), len(linear), adj) if len(left) == len(linear) else ([-1], None)
    ok = len(left) == len(linear) and all(m != -1 for m in ml)
    pairs = [(left[a], linear[ml[a]]) for a in range(len(left))] if ok else []
    for i, j in pairs:
        details.append({"chi": i, "lambda": j, "nonnegative_decomposition": decomp[i, j]})
    notes = [f"{len(left)} p'-degree characters, {len(linear)} linear characters of P, "
             f"{len(S)} non-picky subgroups"]
    return Check("evseev-decomposition", target, "holds" if ok else "fails", witness=pairs or None,
                 notes=notes, details=details)
