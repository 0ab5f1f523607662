"""Permutation groups: stabilizer chains, enumeration, classes, Sylow theory.

Every enumerated group keeps its elements as a lexicographically sorted
``(order, degree)`` array.  Subgroups found inside an enumerated group share
that array with their *root* and are stored as sorted index arrays into it,
so membership, conjugation and closure all reduce to vectorized index work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .perm import Perm

ENUMERATION_LIMIT = 200_000
SUBGROUP_LIMIT = 2500


class GroupError(ValueError):
    pass


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime_power_of(n: int, p: int) -> bool:
    return p_part(n, p) == n


@dataclass(frozen=True)
class ConjClass:
    representative: Perm
    size: int
    order: int
    power_map: dict[int, int] = field(default_factory=dict)


class _Chain:
    """Stabilizer chain built by the deterministic Schreier-Sims algorithm."""

    def __init__(self, degree: int, gens: Sequence[Perm]):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[Perm] = []
        self.trans: list[dict[int, Perm]] = []
        self._build([g for g in dict.fromkeys(gens) if not g.is_identity()])

    def _level_gens(self, i: int) -> list[Perm]:
        pts = self.base[:i]
        return [s for s in self.strong if all(s.images[b] == b for b in pts)]

    def _orbit(self, i: int) -> dict[int, Perm]:
        b = self.base[i]
        gens = self._level_gens(i)
        trans = {b: Perm.identity(self.degree)}
        queue = [b]
        for beta in queue:
            u = trans[beta]
            for s in gens:
                gamma = s.images[beta]
                if gamma not in trans:
                    trans[gamma] = u * s
                    queue.append(gamma)
        return trans

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for lvl in range(start, len(self.base)):
            beta = g.images[self.base[lvl]]
            u = self.trans[lvl].get(beta)
            if u is None:
                return g, lvl
            g = g * u.inverse()
        return g, len(self.base)

    @staticmethod
    def _moved(g: Perm) -> int:
        return next(i for i, j in enumerate(g.images) if i != j)

    def _build(self, gens: list[Perm]) -> None:
        if not gens:
            return
        for g in gens:
            if all(g.images[b] == b for b in self.base):
                self.base.append(self._moved(g))
        self.strong = list(gens)
        self.trans = [self._orbit(i) for i in range(len(self.base))]
        i = len(self.base) - 1
        while i >= 0:
            found = None
            for beta, u in list(self.trans[i].items()):
                for s in self._level_gens(i):
                    sch = u * s * self.trans[i][s.images[beta]].inverse()
                    if sch.is_identity():
                        continue
                    h, j = self.strip(sch, i + 1)
                    if j < len(self.base) or not h.is_identity():
                        found = h, j
                        break
                if found:
                    break
            if found is None:
                i -= 1
                continue
            h, j = found
            if j == len(self.base):
                self.base.append(self._moved(h))
                self.trans.append({})
            self.strong.append(h)
            for lvl in range(i + 1, j + 1):
                self.trans[lvl] = self._orbit(lvl)
            i = j

    @property
    def order(self) -> int:
        n = 1
        for t in self.trans:
            n *= len(t)
        return n

    def contains(self, g: Perm) -> bool:
        h, j = self.strip(g)
        return j == len(self.base) and h.is_identity()


class PermGroup:
    """A permutation group given by generators.

    Groups created by subgroup constructors (centralizer, sylow, ...) are
    views into an enumerated root group and never rebuild a stabilizer chain.
    """

    def __init__(self, degree: int, generators: Iterable[Perm], name: str | None = None):
        gens = [g for g in generators]
        for g in gens:
            if g.degree != degree:
                raise GroupError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.gens: tuple[Perm, ...] = tuple(gens)
        self.name = name
        self._chain: _Chain | None = None
        self._root: PermGroup | None = None
        self._idx: np.ndarray | None = None
        self._cache: dict = {}

    # ---- construction -------------------------------------------------

    @classmethod
    def _sub(cls, root: PermGroup, idx: np.ndarray, gens: Sequence[Perm] | None = None,
             name: str | None = None) -> PermGroup:
        idx = np.asarray(idx, dtype=np.int64)
        if gens is None:
            gens = [root._perm(i) for i in root._small_gens(idx)]
        g = cls(root.degree, gens, name=name)
        g._root = root
        g._idx = idx
        return g

    def _perm(self, ridx: int) -> Perm:
        return Perm._raw(tuple(int(v) for v in self._E[ridx]))

    # ---- basic invariants ----------------------------------------------

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self.degree, self.gens)
        return self._chain

    @property
    def order(self) -> int:
        if self._idx is not None:
            return len(self._idx)
        return self.chain.order

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        if self._idx is not None:
            return self.index_of(g) >= 0
        return self.chain.contains(g)

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.gens)} gens>"
        return f"PermGroup({label}, degree={self.degree}, order={self.order})"

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    # ---- enumeration ---------------------------------------------------

    def enumerate(self) -> PermGroup:
        """Make this group enumerated (idempotent) and return it."""
        if self._idx is not None:
            return self
        n = self.chain.order
        if n > ENUMERATION_LIMIT:
            raise GroupError(f"order {n} exceeds enumeration limit {ENUMERATION_LIMIT}")
        dtype = np.uint8 if self.degree <= 256 else np.uint16
        E = np.arange(self.degree, dtype=dtype)[None, :]
        for trans in reversed(self.chain.trans):
            U = np.array([u.images for u in trans.values()], dtype=dtype)
            # rows x*u for all x in E, u in U: (x*u)[i] = u[x[i]]
            E = U[:, E].reshape(-1, self.degree)
        E = E[np.lexsort(E.T[::-1])]
        self._E = E
        base = self.chain.base or [0]
        self._base = np.array(base, dtype=np.int64)
        self._weights = self.degree ** np.arange(len(base), dtype=np.int64)
        if len(base) * np.log2(max(self.degree, 2)) >= 62:
            raise GroupError("base too long for integer element keys")
        keys = self._keys_of(E[:, self._base])
        self._key_order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._key_order]
        self._root = self
        self._idx = np.arange(n, dtype=np.int64)
        return self

    @property
    def root(self) -> PermGroup:
        self.enumerate()
        return self._root

    @property
    def idx(self) -> np.ndarray:
        self.enumerate()
        return self._idx

    def _keys_of(self, basecols: np.ndarray) -> np.ndarray:
        return basecols.astype(np.int64) @ self._weights

    def _lookup_base(self, basecols: np.ndarray) -> np.ndarray:
        """Root indices of elements given by their base images (-1 if absent)."""
        keys = self._keys_of(basecols)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        out = self._key_order[pos]
        out[self._sorted_keys[pos] != keys] = -1
        return out

    def _lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        r = self.root
        out = r._lookup_base(rows[:, r._base])
        ok = out >= 0
        if ok.any():
            ok_rows = np.flatnonzero(ok)
            bad = (r._E[out[ok_rows]] != rows[ok_rows]).any(axis=1)
            out[ok_rows[bad]] = -1
        return out

    def elements_array(self) -> np.ndarray:
        return self.root._E[self.idx]

    def elements(self) -> list[Perm]:
        return [Perm._raw(tuple(int(v) for v in row)) for row in self.elements_array()]

    def index_of(self, g: Perm) -> int:
        """Position of g in the sorted element list of this group, or -1."""
        r = self.root
        ri = int(r._lookup_rows(np.array([g.images], dtype=r._E.dtype))[0])
        if ri < 0:
            return -1
        pos = int(np.searchsorted(self.idx, ri))
        return pos if pos < len(self.idx) and self.idx[pos] == ri else -1

    def _root_index(self, g: Perm) -> int:
        r = self.root
        return int(r._lookup_rows(np.array([g.images], dtype=r._E.dtype))[0])

    def _local(self, ridx: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.idx, ridx)
        pos = np.minimum(pos, len(self.idx) - 1)
        out = pos.copy()
        out[self.idx[pos] != ridx] = -1
        return out

    def _mask(self) -> np.ndarray:
        m = self._cache.get("mask")
        if m is None:
            m = np.zeros(len(self.root._E), dtype=bool)
            m[self.idx] = True
            self._cache["mask"] = m
        return m

    # ---- root-level index machinery ------------------------------------

    def _inv_rows(self) -> np.ndarray:
        inv = self._cache.get("inv_rows")
        if inv is None:
            inv = np.argsort(self._E, axis=1).astype(self._E.dtype)
            self._cache["inv_rows"] = inv
        return inv

    def _closure(self, gen_ridx: Sequence[int]) -> np.ndarray:
        """Sorted root indices of the subgroup generated by root elements."""
        E = self._E
        members = np.zeros(len(E), dtype=bool)
        members[0] = True
        gens = [E[g].astype(np.int64) for g in dict.fromkeys(int(g) for g in gen_ridx) if g != 0]
        frontier = np.array([0], dtype=np.int64)
        base = self._base
        while frontier.size:
            cols = E[frontier][:, base]
            found = [self._lookup_base(s[cols]) for s in gens]
            if not found:
                break
            cand = np.unique(np.concatenate(found))
            cand = cand[~members[cand]]
            members[cand] = True
            frontier = cand
        return np.flatnonzero(members)

    def _conj_ridx(self, ridx: np.ndarray, g: Perm) -> np.ndarray:
        """Root indices of x^g for the root elements x listed in ridx."""
        gi = np.array(g.images, dtype=np.int64)
        ginv = np.array(g.inverse().images, dtype=np.int64)
        cols = self._E[ridx][:, ginv[self._base]]
        return self._lookup_base(gi[cols])

    def _small_gens(self, idx: np.ndarray) -> list[int]:
        """A short generating set (root indices) for the subgroup `idx`."""
        if len(idx) == 1:
            return []
        orders = self._orders()
        cand = idx[np.lexsort((idx, -orders[idx]))]
        gens: list[int] = []
        cur = np.zeros(len(self._E), dtype=bool)
        cur[0] = True
        target = len(idx)
        for c in cand:
            if cur[c]:
                continue
            gens.append(int(c))
            sub = self._closure(gens)
            cur[:] = False
            cur[sub] = True
            if len(sub) == target:
                break
        return gens

    def _greedy_closure(self, cands: Sequence[int]) -> tuple[np.ndarray, list[int]]:
        """Subgroup generated by root elements, adding only those not yet reached."""
        cur = np.array([0], dtype=np.int64)
        mask = np.zeros(len(self._E), dtype=bool)
        mask[0] = True
        gens: list[int] = []
        for c in cands:
            c = int(c)
            if mask[c]:
                continue
            gens.append(c)
            cur = self._closure(gens)
            mask[cur] = True
        return cur, gens

    def generated_subgroup(self, elements: Sequence[Perm] | np.ndarray) -> PermGroup:
        """Subgroup of self generated by the given elements (or root indices)."""
        r = self.root
        if isinstance(elements, np.ndarray):
            ridx = elements
        else:
            ridx = np.array([self._root_index(g) for g in elements], dtype=np.int64)
        if (ridx < 0).any() or not self._mask()[ridx].all():
            raise GroupError("element not in group")
        orders = r._orders()[ridx] if len(ridx) else ridx
        cands = ridx[np.lexsort((ridx, -orders))] if len(ridx) else ridx
        sub, gens = r._greedy_closure(cands)
        return PermGroup._sub(r, sub, [r._perm(g) for g in gens])

    def _orders(self) -> np.ndarray:
        """Element orders for every root element."""
        o = self._cache.get("orders")
        if o is None:
            self.conjugacy_classes()
            o = self._cache["orders"]
        return o

    def element_orders(self) -> np.ndarray:
        return self.root._orders()[self.idx]

    # ---- conjugacy classes ---------------------------------------------

    def conjugacy_classes(self) -> list[ConjClass]:
        if "classes" in self._cache:
            return self._cache["classes"]
        r = self.root
        n = len(self.idx)
        rows, cols = [np.arange(n)], [np.arange(n)]
        for s in self.gens:
            img = self._local(r._conj_ridx(self.idx, s))
            rows.append(np.arange(n))
            cols.append(img)
        graph = coo_matrix((np.ones(sum(len(x) for x in rows), dtype=np.int8),
                            (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
        ncomp, lab = connected_components(graph, directed=True, connection="weak")
        sizes = np.bincount(lab, minlength=ncomp)
        reps = np.full(ncomp, n, dtype=np.int64)
        np.minimum.at(reps, lab, np.arange(n))
        rep_perms = [r._perm(int(self.idx[i])) for i in reps]
        rep_orders = [p.order() for p in rep_perms]
        if self is r:
            self._cache["orders"] = np.array(rep_orders, dtype=np.int64)[lab]
        order = sorted(range(ncomp), key=lambda c: (rep_orders[c], int(sizes[c]), int(reps[c])))
        relabel = np.empty(ncomp, dtype=np.int64)
        relabel[order] = np.arange(ncomp)
        labels = relabel[lab]
        exponent = 1
        for o in rep_orders:
            exponent = exponent * o // gcd(exponent, o)
        primes = prime_factors(exponent)
        classes = []
        for c in order:
            x = rep_perms[c]
            pm = {}
            for p in primes:
                pm[p] = int(labels[self.index_of(x ** p)])
            classes.append(ConjClass(x, int(sizes[c]), rep_orders[c], pm))
        self._cache["classes"] = classes
        self._cache["labels"] = labels
        self._cache["exponent"] = exponent
        return classes

    def class_labels(self) -> np.ndarray:
        """Class index of every element (in sorted element order)."""
        self.conjugacy_classes()
        return self._cache["labels"]

    def class_of(self, g: Perm) -> int:
        i = self.index_of(g)
        if i < 0:
            raise GroupError(f"{g} is not in the group")
        return int(self.class_labels()[i])

    @property
    def exponent(self) -> int:
        self.conjugacy_classes()
        return self._cache["exponent"]

    def power_class(self, c: int, k: int) -> int:
        """Class of rep(c)**k."""
        key = ("pow", c, k % self.conjugacy_classes()[c].order)
        if key not in self._cache:
            x = self.conjugacy_classes()[c].representative
            self._cache[key] = self.class_of(x ** key[2])
        return self._cache[key]

    # ---- subgroups -----------------------------------------------------

    def _coerce(self, H: PermGroup) -> np.ndarray:
        """Root indices of a group contained in self (error otherwise)."""
        r = self.root
        if H._idx is not None and H._root is r:
            ridx = H._idx
        else:
            ridx = r._lookup_rows(H.elements_array()) if H._idx is not None else \
                r._lookup_rows(H.enumerate().elements_array())
        if (ridx < 0).any() or not self._mask()[ridx].all():
            raise GroupError("subgroup is not contained in the group")
        return np.sort(ridx)

    def subgroup(self, gens: Iterable[Perm], name: str | None = None) -> PermGroup:
        gens = list(gens)
        r = self.root
        ridx = [self._root_index(g) for g in gens]
        if any(i < 0 or not self._mask()[i] for i in ridx):
            raise GroupError("generator not in group")
        return PermGroup._sub(r, r._closure(ridx), gens or None, name=name)

    def _from_ridx(self, ridx: np.ndarray, name: str | None = None) -> PermGroup:
        return PermGroup._sub(self.root, np.sort(ridx), name=name)

    def trivial_subgroup(self) -> PermGroup:
        return PermGroup._sub(self.root, np.array([0]), [], name="1")

    def centralizer(self, x: Perm | PermGroup) -> PermGroup:
        if isinstance(x, PermGroup):
            mask = np.ones(len(self.idx), dtype=bool)
            for g in x.gens:
                mask &= self._centralizer_mask(g)
            return self._from_ridx(self.idx[mask])
        if self.root.index_of(x) < 0:
            raise GroupError(f"{x} is not in the group")
        return self._from_ridx(self.idx[self._centralizer_mask(x)])

    def _centralizer_mask(self, x: Perm) -> np.ndarray:
        rows = self.elements_array()
        xa = np.array(x.images)
        return (rows[:, xa] == xa[rows]).all(axis=1)

    def normalizer(self, H: PermGroup) -> PermGroup:
        hr = self._coerce_any(H)
        return self._from_ridx(self.idx[self._normalizer_mask(hr, H.gens)])

    def _coerce_any(self, H: PermGroup) -> np.ndarray:
        r = self.root
        if H._idx is not None and H._root is r:
            return H._idx
        ridx = r._lookup_rows(H.enumerate().elements_array())
        if (ridx < 0).any():
            raise GroupError("subgroup is not contained in the ambient group")
        return np.sort(ridx)

    def _normalizer_mask(self, hr: np.ndarray, hgens: Sequence[Perm]) -> np.ndarray:
        r = self.root
        hmask = np.zeros(len(r._E), dtype=bool)
        hmask[hr] = True
        rows = self.elements_array().astype(np.int64)
        inv = r._inv_rows()[self.idx].astype(np.int64)
        ar = np.arange(len(rows))[:, None]
        mask = np.ones(len(rows), dtype=bool)
        for k in hgens:
            ka = np.array(k.images, dtype=np.int64)
            # (k^g)[b] = g[k[g^-1[b]]]
            cols = rows[ar, ka[inv[:, r._base]]]
            img = r._lookup_base(cols)
            mask &= (img >= 0) & hmask[np.maximum(img, 0)]
        return mask

    def is_subgroup_of(self, K: PermGroup) -> bool:
        try:
            K._coerce(self)
        except GroupError:
            return False
        return True

    def is_normal_in(self, K: PermGroup) -> bool:
        hr = K._coerce(self)
        return bool(K._normalizer_mask(hr, self.gens).all())

    def normal_closure_in(self, K: PermGroup) -> PermGroup:
        """Smallest normal subgroup of K containing self."""
        hr = K._coerce(self)
        r = K.root
        gens = [int(i) for i in r._small_gens(hr)] if len(hr) > 1 else []
        cur = r._closure(gens)
        mask = np.zeros(len(r._E), dtype=bool)
        mask[cur] = True
        changed = True
        while changed:
            changed = False
            for g in list(gens):
                for k in K.gens:
                    c = int(r._conj_ridx(np.array([g]), k)[0])
                    if not mask[c]:
                        gens.append(c)
                        cur = r._closure(gens)
                        mask[:] = False
                        mask[cur] = True
                        changed = True
        return PermGroup._sub(r, cur, [r._perm(g) for g in gens], name=None)

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a in self.gens for b in self.gens)

    def derived_subgroup(self) -> PermGroup:
        r = self.root
        comms = [a.inverse() * b.inverse() * a * b for a in self.gens for b in self.gens]
        comms = [c for c in comms if not c.is_identity()]
        seed = PermGroup._sub(r, r._closure([self._root_index(c) for c in comms]), comms or [])
        return seed.normal_closure_in(self)

    def center(self) -> PermGroup:
        return self.centralizer(self)

    def intersection(self, K: PermGroup) -> PermGroup:
        kr = self._coerce_any(K)
        return self._from_ridx(np.intersect1d(self.idx, kr))

    def join(self, K: PermGroup) -> PermGroup:
        r = self.root
        gens = list(self.gens) + list(K.gens)
        return PermGroup._sub(r, r._closure([self._root_index(g) for g in gens]), gens)

    def conjugate(self, g: Perm) -> PermGroup:
        r = self.root
        ridx = np.sort(r._conj_ridx(self.idx, g))
        return PermGroup._sub(r, ridx, [h.conj(g) for h in self.gens])

    def same_subgroup(self, K: PermGroup) -> bool:
        return self.order == K.order and self.root is K.root and bool(np.array_equal(self.idx, K.idx))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        if self.order != other.order or self.degree != other.degree:
            return False
        return all(g in self for g in other.gens) and all(g in other for g in self.gens)

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    # ---- Sylow theory ----------------------------------------------------

    def p_elements_mask(self, p: int) -> np.ndarray:
        return _ppower_mask(self.element_orders(), p)

    def sylow(self, p: int) -> PermGroup:
        key = ("sylow", p)
        if key in self._cache:
            return self._cache[key]
        r = self.root
        target = p_part(self.order, p)
        if target == 1:
            res = self.trivial_subgroup()
            self._cache[key] = res
            return res
        orders = self.element_orders()
        pm = _ppower_mask(orders, p)
        best = orders[pm].max()
        x = int(self.idx[np.flatnonzero(pm & (orders == best))[0]])
        gens = [x]
        Q = r._closure(gens)
        while len(Q) < target:
            qgens = [r._perm(g) for g in gens]
            nmask = self._normalizer_mask(Q, qgens)
            qmask = np.zeros(len(r._E), dtype=bool)
            qmask[Q] = True
            cand = np.flatnonzero(nmask & pm & ~qmask[self.idx])
            gens.append(int(self.idx[cand[0]]))
            Q = r._closure(gens)
        if not is_prime_power_of(len(Q), p) or len(Q) != target:
            raise GroupError("Sylow construction failed")
        res = PermGroup._sub(r, Q, [r._perm(g) for g in gens], name=f"Syl{p}")
        self._cache[key] = res
        return res

    def _all_sylow_ridx(self, p: int) -> list[np.ndarray]:
        return self._sylow_orbit(p)[0]

    def _sylow_orbit(self, p: int) -> tuple[list[np.ndarray], list[Perm]]:
        """All Sylow p-subgroups (sorted index arrays) and elements t with S = P^t."""
        key = ("allsyl", p)
        if key in self._cache:
            return self._cache[key]
        P = self.sylow(p)
        r = self.root
        seen = {P.idx.tobytes(): (P.idx, self.identity())}
        queue = [P.idx]
        for S in queue:
            t = seen[S.tobytes()][1]
            for g in self.gens:
                T = np.sort(r._conj_ridx(S, g))
                k = T.tobytes()
                if k not in seen:
                    seen[k] = (T, t * g)
                    queue.append(T)
        out = sorted(seen.values(), key=lambda a: tuple(a[0].tolist()))
        res = ([a for a, _ in out], [t for _, t in out])
        self._cache[key] = res
        return res

    def sylow_conjugators(self, p: int) -> list[Perm]:
        """t_i with all_sylows(p)[i] == sylow(p)^t_i."""
        return self._sylow_orbit(p)[1]

    def all_sylows(self, p: int) -> list[PermGroup]:
        return [self._from_ridx(a, name=f"Syl{p}") for a in self._all_sylow_ridx(p)]

    def sylow_count_mask(self, p: int) -> np.ndarray:
        """For every element: number of Sylow p-subgroups containing it."""
        cnt = np.zeros(len(self.root._E), dtype=np.int64)
        for S in self._all_sylow_ridx(p):
            cnt[S] += 1
        return cnt[self.idx]

    # ---- subnormality and series -----------------------------------------

    def is_subnormal_in(self, K: PermGroup) -> bool:
        return is_subnormal(self, K)

    def subgroups(self, limit: int = SUBGROUP_LIMIT) -> list[PermGroup]:
        if self.order > limit:
            raise GroupError(f"order {self.order} exceeds subgroup enumeration limit {limit}")
        r = self.root
        cyclic: dict[bytes, tuple[int, np.ndarray]] = {}
        for ri in self.idx:
            c = r._closure([int(ri)])
            cyclic.setdefault(c.tobytes(), (int(ri), c))
        trivial = np.array([0], dtype=np.int64)
        found: dict[bytes, tuple[list[int], np.ndarray]] = {trivial.tobytes(): ([], trivial)}
        queue = []
        for k, (g, c) in cyclic.items():
            if k not in found:
                found[k] = ([g] if g else [], c)
                queue.append(k)
        mask = np.zeros(len(r._E), dtype=bool)
        for k in queue:
            gens, sub = found[k]
            mask[:] = False
            mask[sub] = True
            for g, c in cyclic.values():
                if mask[g]:
                    continue
                j = r._closure(gens + [g])
                jk = j.tobytes()
                if jk not in found:
                    found[jk] = (gens + [g], j)
                    queue.append(jk)
        subs = sorted(found.values(), key=lambda t: (len(t[1]), tuple(t[1].tolist())))
        return [PermGroup._sub(r, s, [r._perm(g) for g in gens]) for gens, s in subs]


def _ppower_mask(orders: np.ndarray, p: int) -> np.ndarray:
    o = orders.copy()
    while True:
        div = (o % p == 0) & (o > 1)
        if not div.any():
            break
        o[div] //= p
    return o == 1


def from_generators(degree: int, generators: Iterable[Perm], name: str | None = None) -> PermGroup:
    return PermGroup(degree, list(generators), name=name)


def conjugacy_classes(G: PermGroup) -> list[ConjClass]:
    return G.conjugacy_classes()


def centralizer(G: PermGroup, x: Perm) -> PermGroup:
    return G.centralizer(x)


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    return G.normalizer(H)


def sylow(G: PermGroup, p: int) -> PermGroup:
    return G.sylow(p)


def all_sylows(G: PermGroup, p: int) -> list[PermGroup]:
    return G.all_sylows(p)


def subgroups(G: PermGroup, max_order_limit: int = SUBGROUP_LIMIT) -> list[PermGroup]:
    return G.subgroups(max_order_limit)


def is_subnormal(H: PermGroup, K: PermGroup) -> bool:
    """Iterate normal closures of H inside K until they stop shrinking."""
    K.enumerate()
    K._coerce(H)
    cur = K
    while True:
        if cur.order == H.order:
            return True
        nxt = H.normal_closure_in(cur)
        if nxt.order == cur.order:
            return False
        cur = nxt


def element_parts(G: PermGroup | None, x: Perm, p: int) -> tuple[Perm, Perm, int]:
    """Split x into commuting p-part and p'-part: x == x_p * x_p'."""
    o = x.order()
    pa = p_part(o, p)
    m = o // pa
    # u = 1 mod pa, u = 0 mod m
    u = (m * pow(m, -1, pa)) % o if pa > 1 else 0
    return x ** u, x ** ((1 - u) % o if o > 1 else 0), o


def _largest_normal_pprime(G: PermGroup, p: int, over: PermGroup) -> PermGroup:
    """Largest normal subgroup M of G containing `over` with |M/over| prime to p."""
    r = G.root
    gens = list(over.gens)
    cur = over
    changed = True
    while changed:
        changed = False
        omask = cur._mask()
        for cl in G.conjugacy_classes():
            x = cl.representative
            if omask[G._root_index(x)]:
                continue
            trial = G.subgroup(gens + [x])
            M = trial.normal_closure_in(G)
            if p_part(M.order // cur.order, p) == 1 and M.order % cur.order == 0:
                gens = list(M.gens)
                cur = M
                changed = True
                break
    return cur


def p_series(G: PermGroup, p: int) -> tuple[PermGroup, list[PermGroup], int, bool]:
    """Upper p-series: O_p'(G), the list of successive terms, p-length, p-solvable."""
    G.enumerate()
    trivial = G.trivial_subgroup()
    Opp = _largest_normal_pprime(G, p, trivial)
    terms = [Opp]
    cur = Opp
    length = 0
    sylows = G.all_sylows(p)
    while cur.order < G.order:
        inter = None
        for S in sylows:
            prod = S.join(cur)
            inter = prod if inter is None else inter.intersection(prod)
        if inter.order == cur.order:
            return Opp, terms, length, False
        length += 1
        terms.append(inter)
        cur = inter
        if cur.order == G.order:
            break
        nxt = _largest_normal_pprime(G, p, cur)
        if nxt.order == cur.order:
            return Opp, terms, length, False
        terms.append(nxt)
        cur = nxt
    return Opp, terms, length, True


# ---- catalog constructors --------------------------------------------------

def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], name="S1")
    gens = [Perm.from_cycles(n, [range(n)]), Perm.from_cycles(n, [(0, 1)])]
    return PermGroup(n, gens, name=f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(max(n, 1), [], name=f"A{n}")
    three = Perm.from_cycles(n, [(0, 1, 2)])
    if n == 3:
        return PermGroup(3, [three], name="A3")
    long = Perm.from_cycles(n, [range(n)] if n % 2 else [range(1, n)])
    return PermGroup(n, [three, long], name=f"A{n}")


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], name="C1")
    return PermGroup(n, [Perm.from_cycles(n, [range(n)])], name=f"C{n}")


def dihedral(order: int) -> PermGroup:
    """Dihedral group of the given order (2m) acting on m points; D8 has order 8."""
    if order % 2 or order < 4:
        raise GroupError("dihedral order must be even and at least 4")
    m = order // 2
    if m == 2:
        return PermGroup(4, [Perm.from_cycles(4, [(0, 1), (2, 3)]),
                             Perm.from_cycles(4, [(0, 2), (1, 3)])], name="D4")
    rot = Perm.from_cycles(m, [range(m)])
    refl = Perm.from_cycles(m, [(i, m - i) for i in range(1, (m + 1) // 2)])
    return PermGroup(m, [rot, refl], name=f"D{order}")
