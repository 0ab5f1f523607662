"""Finite fields F_{p^f} as polynomials modulo a chosen irreducible polynomial.

Elements are tuples of f coefficients in [0, p), lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .permgroup import prime_factors


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo a monic polynomial m over F_p."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim([x % p for x in a[:dm]])


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def _polypowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    a = _polymod(a, m, p)
    while e:
        if e & 1:
            result = _polymod(_polymul(result, a, p), m, p)
        a = _polymod(_polymul(a, a, p), m, p)
        e >>= 1
    return result


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        monic = [(c * inv) % p for c in b]
        a, b = b, _polymod(a, monic, p)
    return a


def _polysub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(m: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial m (coefficients low to high)."""
    f = len(m) - 1
    if f == 1:
        return True
    x = [0, 1]
    if _polysub(_polypowmod(x, p ** f, m, p), x, p):
        return False
    for r in prime_factors(f):
        h = _polysub(_polypowmod(x, p ** (f // r), m, p), x, p)
        if len(_polygcd(m, h, p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def irreducible_polys(p: int, f: int, count: int = 2) -> tuple[tuple[int, ...], ...]:
    """The first `count` monic irreducible polynomials of degree f in lexicographic order."""
    found = []
    for tail in product(range(p), repeat=f):
        # lexicographic order on (c_{f-1}, ..., c_0)
        m = list(reversed(tail)) + [1]
        if m[0] == 0 and f > 1:
            continue
        if is_irreducible(m, p):
            found.append(tuple(m))
            if len(found) == count:
                break
    return tuple(found)


class GF:
    """The field F_{p^f} built from a fixed monic irreducible polynomial."""

    def __init__(self, p: int, f: int = 1, modulus: tuple[int, ...] | None = None, which: int = 0):
        self.p = p
        self.f = f
        if modulus is None:
            modulus = irreducible_polys(p, f, which + 1)[which]
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        self.modulus = tuple(modulus)
        self.q = p ** f
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.f}, modulus={self.poly_str()})"

    def poly_str(self) -> str:
        terms = []
        for i in range(self.f, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else f"{c}*{mono}" if i else str(c))
        return " + ".join(terms)

    def _pad(self, a: list[int]) -> tuple[int, ...]:
        return tuple(a) + (0,) * (self.f - len(a))

    def elem(self, coeffs) -> tuple[int, ...]:
        return self._pad(_polymod([c % self.p for c in coeffs], list(self.modulus), self.p))

    def from_int(self, k: int) -> tuple[int, ...]:
        return (k % self.p,) + (0,) * (self.f - 1)

    def gen(self) -> tuple[int, ...]:
        """The class of x in F_p[x]/(modulus)."""
        return self.elem([0, 1])

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def scale(self, c: int, a):
        return tuple((c * x) % self.p for x in a)

    def mul(self, a, b):
        return self._pad(_polymod(_polymul(_trim(list(a)), _trim(list(b)), self.p),
                                  list(self.modulus), self.p))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        return self._pad(_polypowmod(_trim(list(a)), e, list(self.modulus), self.p)) \
            if any(a) else (self.one if e == 0 else self.zero)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.pow(a, self.q - 2)

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(t) for t in product(range(self.p), repeat=self.f)]

    def index(self, a) -> int:
        """Integer code of an element (base-p digits, lowest coefficient first)."""
        k = 0
        for c in reversed(a):
            k = k * self.p + c
        return k

    def element_of_order(self, n: int):
        """Deterministic element of exact multiplicative order n (n | q - 1)."""
        if (self.q - 1) % n:
            raise ValueError(f"{n} does not divide {self.q - 1}")
        if n == 1:
            return self.one
        cof = (self.q - 1) // n
        primes = prime_factors(n)
        for cand in product(range(self.p), repeat=self.f):
            if not any(cand):
                continue
            h = self.pow(cand, cof)
            if all(self.pow(h, n // r) != self.one for r in primes):
                return h
        raise ValueError("no element of the requested order")

    def primitive_element(self):
        return self.element_of_order(self.q - 1)


def multiplicative_order(p: int, n: int) -> int:
    """Order of p modulo n (n coprime to p); 1 when n == 1."""
    if n == 1:
        return 1
    k, x = 1, p % n
    while x != 1:
        x = (x * p) % n
        k += 1
    return k
