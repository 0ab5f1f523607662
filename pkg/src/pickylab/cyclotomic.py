"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored by its coefficient vector in the power basis
1, z, ..., z^(phi(n)-1) of Q(z) with z = E(n) = exp(2*pi*i/n), using
integer numerators over one positive common denominator.  The modulus is
never congruent to 2 mod 4 (Q(E(2m)) = Q(E(m)) for odd m), and values are
lowered to their conductor before equality, hashing and formatting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .finitefield import GF, multiplicative_order
from .permgroup import p_part, prime_factors, valuation


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    r = n
    for p in prime_factors(n):
        r = r // p * (p - 1)
    return r


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(n) if gcd(k, n) == 1) if n > 1 else (0,)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    # x^n - 1 = prod_{d | n} Phi_d(x)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    return q


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j is x^j mod Phi_n in the power basis, for 0 <= j < n."""
    phi = totient(n)
    poly = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            cur = [c - lead * poly[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _reduce(n: int, expanded: Mapping[int, int] | Sequence[int]) -> list[int]:
    """Reduce sum c_j z^j (exponents taken mod n) to the power basis mod Phi_n."""
    phi = totient(n)
    table = _reduction_table(n)
    out = [0] * phi
    items = expanded.items() if hasattr(expanded, "items") else enumerate(expanded)
    for j, c in items:
        if not c:
            continue
        j %= n
        if j < phi:
            out[j] += c
        else:
            for i, t in enumerate(table[j]):
                if t:
                    out[i] += c * t
    return out


def _normalize_mod(n: int, coeffs: Sequence[int]) -> tuple[int, list[int]]:
    """Move a value from modulus n = 2m (m odd) to modulus m."""
    if n % 4 != 2:
        return n, list(coeffs)
    m = n // 2
    if m == 1:
        return 1, [sum(c * (-1) ** j for j, c in enumerate(coeffs))]
    half = (m + 1) // 2
    exp: dict[int, int] = {}
    for j, c in enumerate(coeffs):
        if c:
            k = (j * half) % m
            exp[k] = exp.get(k, 0) + (-c if j % 2 else c)
    return m, _reduce(m, exp)


class CycNum:
    """An exact element of a cyclotomic field."""

    __slots__ = ("n", "num", "den", "_canon")

    def __init__(self, n: int, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if len(num) != totient(n):
            raise ValueError(f"expected {totient(n)} coefficients for modulus {n}")
        n, num = _normalize_mod(n, num)
        if den < 0:
            num, den = [-c for c in num], -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.n = n
        self.num = tuple(num)
        self.den = den
        self._canon = None

    # ---- constructors ------------------------------------------------

    @classmethod
    def rational(cls, q: int | Fraction) -> CycNum:
        q = Fraction(q)
        return cls(1, [q.numerator], q.denominator)

    @classmethod
    def root(cls, n: int, k: int = 1) -> CycNum:
        """E(n)^k."""
        return cls.from_exponents(n, {k: 1})

    @classmethod
    def from_exponents(cls, n: int, terms: Mapping[int, int | Fraction] | Sequence[int]) -> CycNum:
        """The value sum c_j E(n)^j from an exponent -> coefficient map or a list."""
        items = terms.items() if isinstance(terms, Mapping) else enumerate(terms)
        fracs = {j: Fraction(c) for j, c in items if c}
        den = lcm(1, *(f.denominator for f in fracs.values()))
        exp = {}
        for j, f in fracs.items():
            exp[j % n] = exp.get(j % n, 0) + f.numerator * (den // f.denominator)
        return cls(n, _reduce(n, exp), den)

    @classmethod
    def coerce(cls, v) -> CycNum:
        if isinstance(v, CycNum):
            return v
        if isinstance(v, (int, Fraction)):
            return cls.rational(v)
        raise TypeError(f"cannot convert {type(v).__name__} to CycNum")

    # ---- canonical form ----------------------------------------------

    def canonical(self) -> CycNum:
        if self._canon is None:
            v = self
            reduced = True
            while reduced and v.n > 1:
                reduced = False
                for q in prime_factors(v.n):
                    w = v._descend(q)
                    if w is not None:
                        v = w
                        reduced = True
                        break
            v._canon = v
            self._canon = v
        return self._canon

    def _descend(self, q: int) -> CycNum | None:
        """This value as an element of Q(E(n/q)), or None if it is not in that field."""
        n, m = self.n, self.n // q
        if m % q == 0:
            if any(c for j, c in enumerate(self.num) if j % q):
                return None
            coeffs = [self.num[j] for j in range(0, len(self.num), q)]
            return CycNum(m, coeffs, self.den)
        # n = m*q with q coprime to m: E(n)^j = E(m)^(A j) * E(q)^(B j)
        A = pow(q, -1, m) if m > 1 else 0
        B = pow(m, -1, q)
        parts = [dict() for _ in range(q)]
        for j, c in enumerate(self.num):
            if c:
                t = (B * j) % q
                k = (A * j) % m if m > 1 else 0
                parts[t][k] = parts[t].get(k, 0) + c
        alphas = [_reduce(m, d) for d in parts]
        diff = [a - b for a, b in zip(alphas[1], alphas[0])]
        for t in range(2, q):
            if [a - b for a, b in zip(alphas[t], alphas[0])] != diff:
                return None
        return CycNum(m, [-d for d in diff], self.den)

    @property
    def conductor(self) -> int:
        return self.canonical().n

    def _key(self):
        c = self.canonical()
        return c.n, c.num, c.den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __bool__(self) -> bool:
        return any(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    # ---- arithmetic --------------------------------------------------

    def lift(self, N: int) -> CycNum:
        """Rewrite in Q(E(N)); N must be a multiple of the modulus."""
        if N == self.n:
            return self
        if N % self.n:
            raise ValueError(f"cannot lift modulus {self.n} to {N}")
        s = N // self.n
        v = object.__new__(CycNum)
        v.n, v.num, v.den, v._canon = N, tuple(_reduce(N, {j * s: c for j, c in enumerate(self.num) if c})), \
            self.den, None
        if N % 4 == 2:
            return CycNum(N, v.num, v.den)
        return v

    def _common(self, other: CycNum) -> tuple[CycNum, CycNum, int]:
        if self.n == other.n:
            return self, other, self.n
        a, b = self, other
        if a.n != 1 and b.n != 1:
            a, b = a.canonical(), b.canonical()
        N = lcm(a.n, b.n)
        return a.lift(N), b.lift(N), N

    def __add__(self, other) -> CycNum:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, N = self._common(other)
        den = a.den * b.den // gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycNum(N, [x * fa + y * fb for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.n, [-c for c in self.num], self.den)

    def __sub__(self, other) -> CycNum:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycNum:
        return CycNum.coerce(other) - self

    def __mul__(self, other) -> CycNum:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.n, [c * q.numerator for c in self.num], self.den * q.denominator)
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.n == 1:
            return self * Fraction(other.num[0], other.den)
        if self.n == 1:
            return other * Fraction(self.num[0], self.den)
        a, b, N = self._common(other)
        conv = [0] * N
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[(i + j) % N] += x * y
        return CycNum(N, _reduce(N, conv), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        v = self.canonical()
        if v.n == 1:
            return CycNum.rational(Fraction(v.den, v.num[0]))
        others = CycNum.rational(1)
        for k in units(v.n)[1:]:
            others = others * v.galois(k)
        norm = (v * others).canonical()
        return others * Fraction(norm.den, norm.num[0])

    def __truediv__(self, other) -> CycNum:
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * CycNum.coerce(other).inverse()

    def __pow__(self, k: int) -> CycNum:
        if k < 0:
            return self.inverse() ** (-k)
        out = CycNum.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ---- Galois theory -----------------------------------------------

    def galois(self, k: int) -> CycNum:
        """Apply E(n) -> E(n)^k (k a unit mod the modulus)."""
        n = self.n
        if n == 1:
            return self
        k %= n
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        if k == 1:
            return self
        return CycNum(n, _reduce(n, {(j * k) % n: c for j, c in enumerate(self.num) if c}), self.den)

    def conjugate(self) -> CycNum:
        return self.galois(-1)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def is_real(self) -> bool:
        return self.conjugate() == self

    def is_integral(self) -> bool:
        """Algebraic integer test (the power basis is an integral basis)."""
        return self.den == 1

    def to_fraction(self) -> Fraction:
        v = self.canonical()
        if v.n != 1:
            raise ValueError(f"{v} is not rational")
        return Fraction(v.num[0], v.den)

    def field_stabilizer(self) -> GaloisStabilizer:
        v = self.canonical()
        key = (v.n, v.num, v.den)
        out = _STABILIZERS.get(key)
        if out is None:
            # at the conductor the power-basis coordinates are unique, so compare them directly
            out = GaloisStabilizer(v.n, frozenset(k for k in units(v.n) if v.galois(k).num == v.num))
            _STABILIZERS[key] = out
        return out

    def norm(self) -> Fraction:
        """Norm from Q(v) to Q: product of the distinct Galois conjugates."""
        v = self.canonical()
        out = CycNum.rational(1)
        for w in self.conjugates():
            out = out * w
        return out.to_fraction()

    def conjugates(self) -> list[CycNum]:
        v = self.canonical()
        seen: dict[CycNum, None] = {}
        for k in units(v.n):
            seen.setdefault(v.galois(k), None)
        return list(seen)

    def to_complex(self) -> complex:
        """Inexact decimal rendering, for display only."""
        import cmath

        return sum(c * cmath.exp(2j * cmath.pi * k / self.n) for k, c in enumerate(self.num)) / self.den

    # ---- text --------------------------------------------------------

    def __str__(self) -> str:
        return format_cyc(self)

    def __repr__(self) -> str:
        return f"CycNum({format_cyc(self)})"


_STABILIZERS: dict = {}


@dataclass(frozen=True)
class GaloisStabilizer:
    modulus: int
    elements: frozenset[int]

    def lift(self, N: int) -> frozenset[int]:
        return frozenset(k for k in units(N) if (k % self.modulus if self.modulus > 1 else 0) in self.elements)

    def is_full(self) -> bool:
        return len(self.elements) == totient(self.modulus)


def field_stabilizer(v: CycNum) -> GaloisStabilizer:
    return v.field_stabilizer()


def galois_apply(v: CycNum, k: int) -> CycNum:
    return v.galois(k)


def joint_stabilizer(values: Iterable[CycNum]) -> GaloisStabilizer:
    """Stabilizer of the field generated by several values."""
    values = [v.canonical() for v in values]
    N = lcm(1, *(v.n for v in values))
    keep = frozenset(units(N))
    for v in values:
        keep &= v.field_stabilizer().lift(N)
    return _shrink(GaloisStabilizer(N, keep))


def _shrink(s: GaloisStabilizer) -> GaloisStabilizer:
    """Lower the modulus of a stabilizer as far as the subgroup allows."""
    n = s.modulus
    changed = True
    while changed and n > 1:
        changed = False
        for q in prime_factors(n):
            m = n // q
            if m % 4 == 2:
                m //= 2
            kernel = [k for k in units(n) if (k % m if m > 1 else 0) == (1 % m if m > 1 else 0)]
            if all(k in s.elements for k in kernel):
                s = GaloisStabilizer(m, frozenset((k % m if m > 1 else 0) for k in s.elements))
                n = m
                changed = True
                break
    return s


def same_field(v: CycNum | GaloisStabilizer, w: CycNum | GaloisStabilizer) -> bool:
    a = v.field_stabilizer() if isinstance(v, CycNum) else v
    b = w.field_stabilizer() if isinstance(w, CycNum) else w
    N = lcm(a.modulus, b.modulus)
    return a.lift(N) == b.lift(N)


def is_rational(v: CycNum) -> bool:
    return v.is_rational()


def is_real(v: CycNum) -> bool:
    return v.is_real()


@dataclass(frozen=True, order=True)
class PPart:
    """The number p**exponent with a rational exponent."""

    p: int
    exponent: Fraction

    def __mul__(self, other: PPart) -> PPart:
        if self.p != other.p:
            raise ValueError("different primes")
        return PPart(self.p, self.exponent + other.exponent)

    def as_int(self) -> int | None:
        if self.exponent.denominator == 1 and self.exponent >= 0:
            return self.p ** int(self.exponent)
        return None

    def __str__(self) -> str:
        e = self.exponent
        if e == 0:
            return "1"
        if e.denominator == 1:
            return str(self.p ** e.numerator) if e > 0 else f"{self.p}^{e}"
        return f"{self.p}^({e})"


def value_p_part(v: CycNum, p: int) -> PPart:
    """|N(v)|_p ** (1/[Q(v):Q]) for nonzero v."""
    if v.is_zero():
        raise ValueError("p-part of zero")
    conj = v.conjugates()
    norm = abs(v.norm())
    e = valuation(norm.numerator, p) - valuation(norm.denominator, p)
    return PPart(p, Fraction(e, len(conj)))


def degree_p_part(d: int, p: int) -> int:
    return p_part(abs(d), p)


# ---- reduction modulo p -------------------------------------------------

class ModPReducer:
    """Ring map Z[E(N)]_(p) -> F_{p^f} sending E(N) to an element of order N_p'."""

    def __init__(self, p: int, N: int, which: int = 0):
        self.p = p
        self.N = N
        pa = p_part(N, p)
        self.n_prime = N // pa
        self.f = multiplicative_order(p, self.n_prime)
        self.field = GF(p, self.f, which=which)
        gamma = self.field.element_of_order(self.n_prime)
        e = pow(pa, -1, self.n_prime) if self.n_prime > 1 else 0
        z = self.field.pow(gamma, e)
        self._powers = [self.field.one]
        for _ in range(1, self.n_prime):
            self._powers.append(self.field.mul(self._powers[-1], z))

    def describe(self) -> dict:
        return {"p": self.p, "modulus": self.N, "field_degree": self.f,
                "polynomial": self.field.poly_str()}

    def __call__(self, v: CycNum):
        F, p = self.field, self.p
        if self.N % v.n:
            v = v.canonical()
            if self.N % v.n:
                raise ValueError(f"modulus {v.n} does not divide {self.N}")
        if v.den % p == 0:
            raise ValueError(f"value {v} is not p-integral for p={p}")
        dinv = pow(v.den, -1, p)
        step = self.N // v.n
        acc = [0] * self.f
        for j, c in enumerate(v.num):
            c %= p
            if c:
                w = self._powers[(j * step) % self.n_prime]
                for i in range(self.f):
                    acc[i] += c * w[i]
        return tuple((a * dinv) % p for a in acc)


def mod_p_map(v: CycNum, p: int, which: int = 0):
    """Reduce v into F_{p^f}; the finite field uses the `which`-th irreducible polynomial."""
    return ModPReducer(p, v.canonical().n, which)(v.canonical())


# ---- text format ---------------------------------------------------------

def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_cyc(v: CycNum) -> str:
    v = v.canonical()
    terms = []
    for j, c in enumerate(v.num):
        if not c:
            continue
        f = Fraction(c, v.den)
        if j == 0:
            terms.append(_fmt_frac(f))
            continue
        mono = f"E({v.n})" if j == 1 else f"E({v.n})^{j}"
        if f == 1:
            terms.append(mono)
        elif f == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{_fmt_frac(f)}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


class CycSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(E)\s*\(|([-+*/^()]))")


def parse_cyc(text: str) -> CycNum:
    """Parse expressions such as ``3+2*E(7)^2-E(7)^4`` or ``-1/2+1/2*E(3)``."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise CycSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("E", None, start))
        else:
            tokens.append((m.group(3), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    p = _Parser(tokens)
    v = p.expr()
    p.expect("end")
    return v


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.take()
        if t[0] != kind:
            raise CycSyntaxError(f"expected {kind!r}, found {t[0]!r}", t[2])
        return t

    def expr(self) -> CycNum:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        v = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self) -> CycNum:
        v = self.power()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            w = self.power()
            if op[0] == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise CycSyntaxError("division by zero", op[2])
                v = v / w
        return v

    def power(self) -> CycNum:
        v = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            e = self.expect("int")[1]
            v = v ** (-e if neg else e)
        return v

    def atom(self) -> CycNum:
        t = self.take()
        if t[0] == "int":
            return CycNum.rational(t[1])
        if t[0] == "E":
            n = self.expect("int")
            if n[1] == 0:
                raise CycSyntaxError("E(0) is undefined", n[2])
            self.expect(")")
            return CycNum.root(n[1])
        if t[0] == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t[0] == "-":
            return -self.power()
        raise CycSyntaxError(f"unexpected token {t[0]!r}", t[2])


def csum(values: Iterable[CycNum]) -> CycNum:
    """Sum of many values, adding within each modulus first to keep moduli small."""
    groups: dict[int, CycNum] = {}
    for v in values:
        v = CycNum.coerce(v)
        groups[v.n] = groups[v.n] + v if v.n in groups else v
    parts = sorted((g.canonical() for g in groups.values()), key=lambda x: x.n)
    out = CycNum.rational(0)
    for g in parts:
        out = (out + g).canonical()
    return out
