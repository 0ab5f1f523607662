"""Permutation representations of small groups of Lie type.

These builders produce the shipped `.gens` data files; tests regenerate them
and compare.
"""

from __future__ import annotations

from itertools import product

from .finitefield import GF
from .perm import Perm
from .permgroup import PermGroup, prime_factors


def _prime_power(q: int) -> tuple[int, int]:
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, f = ps[0], 0
    while q > 1:
        q //= p
        f += 1
    return p, f


def psl2(q: int) -> PermGroup:
    """PSL_2(q) acting on the q+1 points of the projective line."""
    p, f = _prime_power(q)
    F = GF(p, f)
    elems = F.elements()
    code = {e: i for i, e in enumerate(elems)}
    inf = q
    w = F.primitive_element()
    w2 = F.mul(w, w)

    def perm(fn):
        return Perm([fn(i) for i in range(q + 1)])

    def shift(i):
        return inf if i == inf else code[F.add(elems[i], F.one)]

    def scale(i):
        return inf if i == inf else code[F.mul(w2, elems[i])]

    def invert(i):
        if i == inf:
            return code[F.zero]
        z = elems[i]
        return inf if not any(z) else code[F.neg(F.inv(z))]

    gens = [perm(shift), perm(scale), perm(invert)]
    return PermGroup(q + 1, [g for g in gens if not g.is_identity()], name=f"PSL2({q})")


def _matrix_action(F: GF, mats, points):
    """Permutations induced by row-vector action v -> v*M on projective points."""
    index = {pt: i for i, pt in enumerate(points)}
    n = len(points[0])

    def normalize(v):
        for c in v:
            if any(c):
                inv = F.inv(c)
                return tuple(F.mul(inv, x) for x in v)
        raise ValueError("zero vector")

    def act(v, M):
        out = []
        for j in range(n):
            s = F.zero
            for i in range(n):
                s = F.add(s, F.mul(v[i], M[i][j]))
            out.append(s)
        return normalize(out)

    return [Perm([index[act(pt, M)] for pt in points]) for M in mats]


def _projective_points(F: GF, n: int):
    pts = []
    for v in product(F.elements(), repeat=n):
        first = next((c for c in v if any(c)), None)
        if first is not None and first == F.one:
            pts.append(tuple(v))
    return pts


def psl3(q: int) -> PermGroup:
    """PSL_3(q) on the q^2+q+1 points of the projective plane."""
    p, f = _prime_power(q)
    F = GF(p, f)
    basis =[F.elem([0] * k + [1]) for k in range(f)]
    mats = []
    for i, j in [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)]:
        for a in basis:
            M = [[F.one if r == c else F.zero for c in range(3)] for r in range(3)]
            M[i][j] = a
            mats.append(M)
    pts = _projective_points(F, 3)
    gens = _matrix_action(F, mats, pts)
    return PermGroup(len(pts), list(dict.fromkeys(gens)), name=f"PSL3({q})")


def psu3(q: int) -> PermGroup:
    """PSU_3(q) on the q^3+1 isotropic points of the hermitian form x0*y2^q + x1*y1^q + x2*y0^q."""
    p, f = _prime_power(q)
    F = GF(p, 2 * f)

    def bar(a):
        return F.pow(a, q)

    def form(u, v):
        s = F.zero
        for i in range(3):
            s = F.add(s, F.mul(u[i], bar(v[2 - i])))
        return s

    pts = [v for v in _projective_points(F, 3) if form(v, v) == F.zero]
    mats = []
    E = F.elements()
    for a, b, c in product(E, repeat=3):
        upper = [[F.one, a, b], [F.zero, F.one, c], [F.zero, F.zero, F.one]]
        if _preserves(F, upper, form):
            mats.append(upper)
            lower = [[upper[j][i] for j in range(3)] for i in range(3)]
            mats.append(lower)
    gens = [g for g in dict.fromkeys(_matrix_action(F, mats, pts)) if not g.is_identity()]
    return PermGroup(len(pts), gens, name=f"PSU3({q})")


def _preserves(F: GF, M, form) -> bool:
    rows = [tuple(M[i]) for i in range(3)]
    std = [tuple(F.one if i == j else F.zero for j in range(3)) for i in range(3)]
    return all(form(rows[i], rows[j]) == form(std[i], std[j]) for i in range(3) for j in range(3))


def suzuki(q: int) -> PermGroup:
    """Sz(q), q = 2^(2n+1), on the q^2+1 points of its ovoid in PG(3, q)."""
    p, f = _prime_power(q)
    if p != 2 or f % 2 == 0 or f < 3:
        raise ValueError("Suzuki groups need q = 2^(2n+1) >= 8")
    n = (f - 1) // 2
    F = GF(2, f)
    t = 2 ** (n + 1)

    def th(x):
        return F.pow(x, t)

    def T(a, b):
        O, I = F.zero, F.one
        a2t = F.mul(F.mul(a, a), th(a))
        r3 = F.add(F.add(a2t, F.mul(a, b)), th(b))
        return [[I, O, O, O],
                [a, I, O, O],
                [b, th(a), I, O],
                [r3, F.add(F.mul(a, th(a)), b), a, I]]

    lam = F.primitive_element()
    s = 2 ** n
    M = [[F.zero] * 4 for _ in range(4)]
    for i, e in enumerate([1 + s, s, -s, -1 - s]):
        M[i][i] = F.pow(lam, e)
    W = [[F.one if i + j == 3 else F.zero for j in range(4)] for i in range(4)]
    mats = [T(F.one, F.zero), T(F.zero, F.one), M, W]
    # the ovoid is the orbit of (1,0,0,0) under these matrices
    start = (F.one, F.zero, F.zero, F.zero)
    orbit = [start]
    seen = {start}
    for v in orbit:
        for A in mats:
            w = _act_norm(F, v, A)
            if w not in seen:
                seen.add(w)
                orbit.append(w)
    orbit.sort()
    gens = _matrix_action(F, mats, orbit)
    return PermGroup(len(orbit), gens, name=f"Sz({q})")


def _act_norm(F: GF, v, M):
    out = []
    for j in range(4):
        s = F.zero
        for i in range(4):
            s = F.add(s, F.mul(v[i], M[i][j]))
        out.append(s)
    first = next(c for c in out if any(c))
    inv = F.inv(first)
    return tuple(F.mul(inv, x) for x in out)


def mathieu11() -> PermGroup:
    gens = [Perm.from_cycles(11, [range(11)]),
            Perm.from_cycles(11, [(2, 6, 10, 7), (3, 9, 4, 5)])]
    return PermGroup(11, gens, name="M11")


def two_generators(G: PermGroup, seed: int = 0) -> list[Perm]:
    """A deterministic pair of elements generating G, found by scanning products of generators."""
    import random

    rng = random.Random(seed)
    target = G.order
    G.enumerate()
    elems = G.elements_array()
    for _ in range(5000):
        a = G.root._perm(int(G.idx[rng.randrange(len(elems))]))
        b = G.root._perm(int(G.idx[rng.randrange(len(elems))]))
        if PermGroup(G.degree, [a, b]).order == target:
            return [a, b]
    return list(G.gens)
