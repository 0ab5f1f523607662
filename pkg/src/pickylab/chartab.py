"""Character tables: Dixon-Schneider computation, verification, fusion,
induction, p-blocks, and the CTX text format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

import numpy as np

from .cyclotomic import CycNum, CycSyntaxError, ModPReducer, csum, format_cyc, parse_cyc
from .perm import Perm, fmt_perm, parse_perm
from .permgroup import ConjClass, GroupError, PermGroup, p_part, prime_factors, valuation

ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)


class TableError(ValueError):
    pass


@dataclass
class CharacterTable:
    name: str
    order: int
    classes: list[ConjClass]
    irr: list[list[CycNum]]
    group: PermGroup | None = None
    dixon_prime: int | None = None
    fixture: bool = False
    labels: list[str] = field(default_factory=list)
    degrees_known: list[int | None] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.labels:
            self.labels = class_names(self.classes)

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    @property
    def exponent(self) -> int:
        return lcm(1, *(c.order for c in self.classes if c.order))

    def degree(self, i: int) -> int:
        d = self.irr[i][0]
        return int(d.to_fraction())

    @property
    def degrees(self) -> list[int]:
        return [self.degree(i) for i in range(len(self.irr))]

    def centralizer_order(self, c: int) -> int:
        return self.order // self.classes[c].size

    def class_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise TableError(f"unknown class label {label!r}") from None

    def inverse_class(self, c: int) -> int:
        if self.group is not None:
            return self.group.power_class(c, -1)
        # complex conjugation of the column identifies the inverse class
        col = [row[c].conjugate() for row in self.irr]
        for j in range(self.nclasses):
            if self.classes[j].order == self.classes[c].order and [row[j] for row in self.irr] == col:
                return j
        raise TableError(f"no inverse class found for column {c}")

    def inner(self, a: Sequence[CycNum], b: Sequence[CycNum]) -> Fraction:
        """<a, b> = (1/|G|) sum_x a(x) * conj(b(x))."""
        s = csum(a[c] * b[c].conjugate() * self.classes[c].size for c in range(self.nclasses))
        return s.to_fraction() / self.order

    def decompose(self, f: Sequence[CycNum]) -> list[Fraction]:
        return [self.inner(f, chi) for chi in self.irr]

    def nonvanishing(self, c: int) -> list[int]:
        return [i for i, row in enumerate(self.irr) if not row[c].is_zero()]


def class_names(classes: Sequence[ConjClass]) -> list[str]:
    """ATLAS-style names: element order followed by a letter per order."""
    seen: dict[int, int] = {}
    out = []
    for c in classes:
        k = seen.get(c.order, 0)
        seen[c.order] = k + 1
        letters = ""
        k0 = k
        while True:
            letters = chr(ord("A") + k0 % 26) + letters
            k0 = k0 // 26 - 1
            if k0 < 0:
                break
        out.append(f"{c.order}{letters}")
    return out


# ---- Dixon-Schneider ------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def dixon_primes(exponent: int, order: int, nclasses: int = 0):
    """Primes l = 1 mod exponent with l > 2*sqrt(order) and l > nclasses, in increasing order."""
    # l > nclasses keeps the Faddeev-LeVerrier divisions invertible
    bound = max(2 * isqrt(order) + 2, nclasses)
    l = exponent + 1
    while l <= bound:
        l += exponent
    while True:
        if _is_prime(l):
            yield l
        l += exponent


def _primitive_root(l: int) -> int:
    ps = prime_factors(l - 1)
    g = 2
    while any(pow(g, (l - 1) // q, l) == 1 for q in ps):
        g += 1
    return g


def _rref(M: np.ndarray, l: int) -> tuple[np.ndarray, list[int]]:
    M = M.copy() % l
    rows, cols = M.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, l)) % l
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            M[others] = (M[others] - np.outer(M[others, c], M[r])) % l
        piv.append(c)
        r += 1
    return M[:r], piv


def _nullspace(M: np.ndarray, l: int) -> np.ndarray:
    """Basis (as rows) of {v : M v = 0} over F_l."""
    R, piv = _rref(M, l)
    n = M.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = (-R[r, f]) % l
    return basis


def _charpoly(A: np.ndarray, l: int) -> list[int]:
    """Characteristic polynomial mod l by Faddeev-LeVerrier, highest degree first."""
    n = A.shape[0]
    coeffs = [1]
    M = np.zeros_like(A)
    I = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        M = (A @ M + coeffs[-1] * I) % l
        c = (-pow(k, -1, l) * int(np.trace(A @ M % l))) % l
        coeffs.append(c)
    return coeffs


def _roots(poly: list[int], l: int) -> list[int]:
    xs = np.arange(l, dtype=np.int64)
    acc = np.zeros(l, dtype=np.int64)
    for c in poly:
        acc = (acc * xs + c) % l
    return [int(x) for x in np.flatnonzero(acc == 0)]


def structure_constants(G: PermGroup) -> np.ndarray:
    """A[l, j, k] = #{x in C_j : x^-1 z_l in C_k} for class representatives z_l."""
    classes = G.conjugacy_classes()
    k = len(classes)
    r = G.root
    lab = G.class_labels()
    elems = G.elements_array()
    inv_base = np.argsort(elems, axis=1)[:, r._base]
    A = np.zeros((k, k, k), dtype=np.int64)
    for li, c in enumerate(classes):
        z = np.array(c.representative.images, dtype=np.int64)
        loc = G._local(r._lookup_base(z[inv_base]))
        if (loc < 0).any():
            raise GroupError("class multiplication left the group")
        A[li] = np.bincount(lab * k + lab[loc], minlength=k * k).reshape(k, k)
    return A


def dixon_schneider(G: PermGroup, seed: int = 0, max_primes: int = 4) -> CharacterTable:
    """Exact character table of an enumerable permutation group."""
    G.enumerate()
    classes = G.conjugacy_classes()
    k = len(classes)
    N = G.order
    A = structure_constants(G)
    e = G.exponent
    inv = [G.power_class(c, -1) for c in range(k)]
    powers = [[G.power_class(c, t) for t in range(cl.order)] for c, cl in enumerate(classes)]
    last = None
    for tries, l in enumerate(dixon_primes(e, N, k)):
        if tries >= max_primes:
            break
        try:
            rows = _dixon_mod(A, classes, inv, powers, N, l, seed)
        except TableError as exc:
            last = exc
            continue
        return _finish(G, classes, rows, l)
    raise TableError(f"eigenspace splitting failed: {last}")


def _dixon_mod(A, classes, inv, powers, N, l, seed):
    k = len(classes)
    sizes = [c.size for c in classes]
    M = [np.ascontiguousarray(A[:, j, :].T) % l for j in range(k)]  # M_j[kk, li]
    order = list(range(1, k))
    if seed:
        import random

        random.Random(seed).shuffle(order)
    spaces = [np.eye(k, dtype=np.int64)]
    for j in order:
        if all(len(B) == 1 for B in spaces):
            break
        new = []
        for B in spaces:
            if len(B) == 1:
                new.append(B)
                continue
            _, piv = _rref(B, l)
            Aj = (M[j] @ B.T % l)[piv, :]
            found = 0
            for lam in _roots(_charpoly(Aj, l), l):
                C = _nullspace((Aj - lam * np.eye(len(B), dtype=np.int64)) % l, l)
                if len(C):
                    V, _ = _rref(C @ B % l, l)
                    new.append(V)
                    found += len(V)
            if found != len(B):
                raise TableError(f"class matrix {j} not diagonalizable mod {l}")
        spaces = new
    if not all(len(B) == 1 for B in spaces) or len(spaces) != k:
        raise TableError(f"simultaneous eigenspaces did not split mod {l}")
    g = _primitive_root(l)
    out = []
    for B in spaces:
        w = B[0]
        if w[0] == 0:
            raise TableError("eigenvector vanishes at the identity")
        w = w * pow(int(w[0]), -1, l) % l
        S = sum(int(w[c]) * int(w[inv[c]]) * pow(sizes[c], -1, l) for c in range(k)) % l
        d2 = N * pow(S, -1, l) % l
        deg = next((d for d in range(1, isqrt(N) + 1) if N % d == 0 and d * d % l == d2), None)
        if deg is None:
            raise TableError("no admissible degree")
        vals = [int(w[c]) * deg * pow(sizes[c], -1, l) % l for c in range(k)]
        row = []
        for c, cl in enumerate(classes):
            o = cl.order
            z = pow(g, (l - 1) // o, l)
            zinv = pow(z, -1, l)
            oinv = pow(o, -1, l)
            mult = {}
            for j in range(o):
                s = 0
                for t in range(o):
                    s += vals[powers[c][t]] * pow(zinv, j * t, l)
                m = s * oinv % l
                if m > deg:
                    raise TableError(f"eigenvalue multiplicity out of range mod {l}")
                if m:
                    mult[j] = m
            if sum(mult.values()) != deg:
                raise TableError(f"multiplicities do not sum to the degree mod {l}")
            row.append(CycNum.from_exponents(o, mult).canonical())
        out.append(row)
    return out


def value_key(v: CycNum):
    """Deterministic sort key: rationals first in decreasing order, then by canonical data."""
    v = v.canonical()
    if v.n == 1:
        return (0, -Fraction(v.num[0], v.den), (), 0)
    return (1, v.n, tuple(-c for c in v.num), v.den)


def _row_key(row):
    return (int(row[0].to_fraction()), tuple(value_key(v) for v in row[1:]))


def _finish(G, classes, rows, l) -> CharacterTable:
    rows.sort(key=_row_key)
    return CharacterTable(name=G.name or "G", order=G.order, classes=list(classes), irr=rows,
                          group=G, dixon_prime=l)


# ---- verification ---------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    failures: list[str]
    checks: int

    def raise_if_failed(self):
        if not self.ok:
            raise TableError("; ".join(self.failures[:5]))


def verify_table(T: CharacterTable, full: bool = True) -> VerifyReport:
    fails: list[str] = []
    checks = 0
    k = T.nclasses
    if len(T.irr) != k:
        fails.append(f"{len(T.irr)} characters for {k} classes")
    if sum(c.size for c in T.classes) != T.order:
        fails.append("class sizes do not sum to the group order")
    for c in T.classes:
        if T.order % c.size:
            fails.append(f"class size {c.size} does not divide {T.order}")
    for i, row in enumerate(T.irr):
        if len(row) != k:
            fails.append(f"character {i} has {len(row)} values")
            return VerifyReport(False, fails, checks)
        for c, v in enumerate(row):
            checks += 1
            if not v.is_integral():
                fails.append(f"value chi[{i}][{c}] = {v} is not an algebraic integer")
    try:
        degs = T.degrees
    except ValueError:
        fails.append("a degree is not rational")
        return VerifyReport(False, fails, checks)
    if any(d <= 0 or T.order % d for d in degs):
        fails.append("a degree is not a positive divisor of the order")
    if sum(d * d for d in degs) != T.order:
        fails.append(f"sum of squared degrees {sum(d * d for d in degs)} != {T.order}")
    conj = [[v.conjugate() for v in row] for row in T.irr]
    sizes = T.sizes
    for i in range(len(T.irr)):
        for j in range(i, len(T.irr)):
            s = csum(T.irr[i][c] * conj[j][c] * sizes[c] for c in range(k))
            checks += 1
            if s != (T.order if i == j else 0):
                fails.append(f"row orthogonality fails for characters ({i}, {j})")
    if full:
        for a in range(k):
            for b in range(a, k):
                s = csum(T.irr[i][a] * conj[i][b] for i in range(len(T.irr)))
                checks += 1
                if s != (T.centralizer_order(a) if a == b else 0):
                    fails.append(f"column orthogonality fails for classes ({a}, {b})")
    for c, cl in enumerate(T.classes):
        for p, t in cl.power_map.items():
            if not 0 <= t < k:
                fails.append(f"power map {p} of class {c} points outside the table")
                continue
            for i, row in enumerate(T.irr):
                checks += 1
                if cl.order % p:
                    if row[t] != row[c].galois(p):
                        fails.append(f"power map {p} of class {c} is not Galois-compatible for character {i}")
                        break
                else:
                    d = row[c] ** p - row[t]
                    if any(x % p for x in d.num) or d.den != 1:
                        fails.append(f"chi({c})^{p} != chi({c}^{p}) mod {p} for character {i}")
                        break
    return VerifyReport(not fails, fails, checks)


# ---- fusion, induction, restriction -----------------------------------------

@dataclass(frozen=True)
class ClassFusion:
    images: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)


def class_fusion(sub: CharacterTable, ambient: CharacterTable) -> ClassFusion:
    G = ambient.group
    if G is None or sub.group is None:
        raise TableError("class fusion needs tables with groups attached")
    out = []
    for c in sub.classes:
        try:
            out.append(G.class_of(c.representative))
        except GroupError:
            raise TableError(f"representative {fmt_perm(c.representative)} not found in the ambient group") from None
    for i, j in enumerate(out):
        if sub.classes[i].order != ambient.classes[j].order:
            raise TableError("fusion does not preserve element orders")
    return ClassFusion(tuple(out))


def restrict(chi: Sequence[CycNum], fusion: ClassFusion) -> list[CycNum]:
    return [chi[j] for j in fusion.images]


def induce(theta: Sequence[CycNum], sub: CharacterTable, ambient: CharacterTable,
           fusion: ClassFusion) -> list[CycNum]:
    """theta^G(g) = |C_G(g)|/|H| * sum over H-classes fusing to g^G of |class| * theta."""
    parts: list[list[CycNum]] = [[] for _ in range(ambient.nclasses)]
    for i, j in enumerate(fusion.images):
        if not theta[i].is_zero():
            parts[j].append(theta[i] * sub.classes[i].size)
    out = []
    for j in range(ambient.nclasses):
        if not parts[j]:
            out.append(ZERO)
            continue
        out.append(csum(parts[j]) * Fraction(ambient.centralizer_order(j), sub.order))
    return out


def permutation_character(sub: CharacterTable, ambient: CharacterTable,
                          fusion: ClassFusion | None = None) -> list[CycNum]:
    """(1_H)^G."""
    fusion = fusion or class_fusion(sub, ambient)
    return induce([ONE] * sub.nclasses, sub, ambient, fusion)


def inner_product(T: CharacterTable, a: Sequence[CycNum], b: Sequence[CycNum]) -> Fraction:
    return T.inner(a, b)


def p_regular(T: CharacterTable, p: int) -> list[int]:
    return [c for c, cl in enumerate(T.classes) if cl.order % p]


def irr_pprime(T: CharacterTable, p: int) -> list[int]:
    return [i for i, d in enumerate(T.degrees) if d % p]


# ---- p-blocks ---------------------------------------------------------------

@dataclass
class Block:
    characters: list[int]
    defect: int
    defect_class: int | None = None
    defect_group: PermGroup | None = None


@dataclass
class BlockPartition:
    p: int
    blocks: list[Block]
    block_of: list[int]
    heights: list[int]
    field: dict

    def principal(self) -> Block:
        return self.blocks[self.block_of[0]]


def central_character(T: CharacterTable, i: int) -> list[CycNum]:
    d = T.degree(i)
    return [T.irr[i][c] * Fraction(T.classes[c].size, d) for c in range(T.nclasses)]


def p_blocks(T: CharacterTable, p: int, defect_groups: bool = True, which: int = 0) -> BlockPartition:
    N = lcm(1, *(v.canonical().n for row in T.irr for v in row))
    red = ModPReducer(p, N, which)
    sigs: dict[tuple, list[int]] = {}
    for i in range(len(T.irr)):
        omega = central_character(T, i)
        for c, w in enumerate(omega):
            if w.den % p == 0:
                raise TableError(f"central character value of character {i} at class {c} is not p-integral")
        sig = tuple(red(w) for w in omega)
        sigs.setdefault(sig, []).append(i)
    a = valuation(T.order, p)
    blocks = []
    block_of = [0] * len(T.irr)
    heights = [0] * len(T.irr)
    for sig, chars in sigs.items():
        d = max(a - valuation(T.degree(i), p) for i in chars)
        b = Block(chars, d)
        for i in chars:
            heights[i] = valuation(T.degree(i), p) - (a - d)
        zero = red(ZERO)
        for c in p_regular(T, p):
            if sig[c] != zero and valuation(T.centralizer_order(c), p) == d:
                b.defect_class = c
                break
        if defect_groups and T.group is not None and b.defect_class is not None:
            C = T.group.centralizer(T.classes[b.defect_class].representative)
            b.defect_group = C.sylow(p)
        blocks.append(b)
    blocks.sort(key=lambda b: b.characters[0])
    for n, b in enumerate(blocks):
        for i in b.characters:
            block_of[i] = n
    return BlockPartition(p, blocks, block_of, heights, red.describe())


# ---- CTX text format -------------------------------------------------------

def ctx_write(T: CharacterTable) -> str:
    out = ["ctx 1"]
    if T.fixture:
        out.append("fixture")
    out.append(f"name {T.name}")
    out.append(f"order {T.order if T.order else '?'}")
    out.append(f"exponent {T.exponent}")
    for key in sorted(T.meta):
        out.append(f"meta {key} {T.meta[key]}")
    reps = [c.representative for c in T.classes]
    if all(r is not None for r in reps) and reps:
        out.append(f"points {reps[0].degree}")
    out.append(f"classes {T.nclasses}")
    for c, cl in enumerate(T.classes):
        parts = ["class", str(cl.order), str(cl.size) if cl.size else "?"]
        parts += [f"{p}:{t + 1}" for p, t in sorted(cl.power_map.items())]
        if cl.representative is not None:
            parts.append("rep=" + fmt_perm(cl.representative))
        if T.labels[c] != class_names(T.classes)[c]:
            parts.append("label=" + T.labels[c])
        out.append(" ".join(parts))
    for i, row in enumerate(T.irr):
        if T.degrees_known is not None and T.degrees_known[i] is not None:
            deg = f"?:{T.degrees_known[i]}"
        elif T.degrees_known is not None:
            deg = "?"
        else:
            deg = str(T.degree(i))
        out.append(f"chi {deg} " + " | ".join("?" if v is None else format_cyc(v) for v in row))
    return "\n".join(out) + "\n"


class CtxError(ValueError):
    def __init__(self, msg: str, line: int, source: str = "<ctx>"):
        super().__init__(f"{source}:{line}: {msg}")
        self.line = line


_CLASS_RE = re.compile(r"class\s+(\d+)\s+(\d+|\?)((?:\s+\S+)*)\s*$")


def ctx_parse_all(text: str, source: str = "<ctx>", trust: bool = False) -> list[CharacterTable]:
    """Parse one or more tables.  Lines after `#` are comments."""
    lines = [(n, raw.split("#", 1)[0].strip()) for n, raw in enumerate(text.splitlines(), 1)]
    lines = [(n, s) for n, s in lines if s]
    if not lines:
        raise CtxError("empty input", 1, source)
    chunks: list[list[tuple[int, str]]] = []
    for n, s in lines:
        if s.split()[0] == "ctx":
            chunks.append([])
        elif not chunks:
            raise CtxError("expected header 'ctx 1'", n, source)
        chunks[-1].append((n, s))
    return [_parse_one(ch, source, trust) for ch in chunks]


def ctx_parse(text: str, source: str = "<ctx>", trust: bool = False) -> CharacterTable:
    tables = ctx_parse_all(text, source, trust)
    if len(tables) != 1:
        raise CtxError(f"expected one table, found {len(tables)}", 1, source)
    return tables[0]


def _parse_one(lines, source, trust) -> CharacterTable:
    n0, head = lines[0]
    if head != "ctx 1":
        raise CtxError(f"unsupported header {head!r}", n0, source)
    pos = 1
    fixture = False
    meta: dict[str, str] = {}
    header: dict[str, str] = {}
    while pos < len(lines):
        n, s = lines[pos]
        key, _, rest = s.partition(" ")
        if key == "fixture":
            fixture = True
        elif key == "meta":
            mk, _, mv = rest.strip().partition(" ")
            meta[mk] = mv.strip()
        elif key in ("name", "order", "exponent", "points"):
            header[key] = rest.strip()
        elif key == "classes":
            header[key] = rest.strip()
            pos += 1
            break
        else:
            raise CtxError(f"unexpected line {s!r} in header", n, source)
        pos += 1
    for req in ("name", "order", "exponent", "classes"):
        if req not in header:
            raise CtxError(f"missing header field {req!r}", lines[min(pos, len(lines) - 1)][0], source)

    def as_int(key, allow_unknown):
        v = header[key]
        if v == "?" and allow_unknown:
            return 0
        if not v.isdigit():
            raise CtxError(f"bad {key} {v!r}", n0, source)
        return int(v)

    order = as_int("order", fixture)
    as_int("exponent", fixture)
    k = as_int("classes", False)
    points = int(header["points"]) if "points" in header else None
    classes, labels = [], []
    for _ in range(k):
        if pos >= len(lines):
            raise CtxError("missing class line", lines[-1][0], source)
        n, s = lines[pos]
        m = _CLASS_RE.fullmatch(s)
        if not m:
            raise CtxError(f"bad class line {s!r}", n, source)
        pm, rep, label = {}, None, None
        for tok in m.group(3).split():
            if tok.startswith("rep="):
                if points is None:
                    raise CtxError("rep= needs a 'points' header", n, source)
                try:
                    rep = parse_perm(tok[4:], points)
                except ValueError as exc:
                    raise CtxError(str(exc), n, source) from None
            elif tok.startswith("label="):
                label = tok[6:]
            elif re.fullmatch(r"\d+:\d+", tok):
                p, t = tok.split(":")
                if not 1 <= int(t) <= k:
                    raise CtxError(f"power map target {t} out of range", n, source)
                pm[int(p)] = int(t) - 1
            else:
                raise CtxError(f"bad class token {tok!r}", n, source)
        size = 0 if m.group(2) == "?" else int(m.group(2))
        if size == 0 and not fixture:
            raise CtxError("unknown class size outside fixture mode", n, source)
        classes.append(ConjClass(rep, size, int(m.group(1)), pm))
        labels.append(label)
        pos += 1
    auto = class_names(classes)
    labels = [lab or a for lab, a in zip(labels, auto)]
    irr, known = [], []
    any_unknown = False
    for n, s in lines[pos:]:
        if not s.startswith("chi "):
            raise CtxError(f"expected 'chi' line, found {s!r}", n, source)
        deg_tok, _, rest = s[4:].strip().partition(" ")
        cells = [c.strip() for c in rest.split("|")]
        if len(cells) != k:
            raise CtxError(f"expected {k} values, found {len(cells)}", n, source)
        row = []
        for c in cells:
            if c == "?":
                if not fixture:
                    raise CtxError("unknown value outside fixture mode", n, source)
                row.append(None)
                continue
            try:
                row.append(parse_cyc(c).canonical())
            except CycSyntaxError as exc:
                raise CtxError(f"value {c!r}: {exc}", n, source) from None
        if deg_tok.startswith("?"):
            if not fixture:
                raise CtxError("unknown degree outside fixture mode", n, source)
            any_unknown = True
            known.append(int(deg_tok[2:]) if deg_tok.startswith("?:") else None)
        elif deg_tok.isdigit():
            known.append(None)
            if classes and classes[0].order == 1 and row[0] is not None and row[0] != int(deg_tok):
                raise CtxError("degree does not match the identity value", n, source)
        else:
            raise CtxError(f"bad degree {deg_tok!r}", n, source)
        irr.append(row)
    T = CharacterTable(name=header["name"], order=order, classes=classes, irr=irr, fixture=fixture,
                       labels=labels, degrees_known=known if any_unknown else None, meta=meta)
    if not fixture and not trust:
        rep = verify_table(T)
        if not rep.ok:
            raise CtxError("table fails verification: " + "; ".join(rep.failures[:3]), n0, source)
    return T


def tables_equal(a: CharacterTable, b: CharacterTable) -> bool:
    return (a.order == b.order and [(c.order, c.size, c.power_map) for c in a.classes]
            == [(c.order, c.size, c.power_map) for c in b.classes] and a.irr == b.irr)


def table_of(G: PermGroup) -> CharacterTable:
    """Character table of an enumerable group, memoized on its root group."""
    r = G.root
    store = r._cache.setdefault("tables", {})
    key = G.idx.tobytes()
    T = store.get(key)
    if T is None:
        T = dixon_schneider(G)
        store[key] = T
    return T
