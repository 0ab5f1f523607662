"""Permutations on {0, ..., n-1} and the `.gens` generator file format."""

from __future__ import annotations

import re
from math import lcm
from pathlib import Path
from typing import Iterable, Sequence


class Perm:
    """Immutable permutation stored as an image tuple.

    Products compose left to right: ``(a * b)(i) == b(a(i))``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree or a in seen:
                    raise ValueError(f"bad cycle {tuple(cyc)} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Perm) -> Perm:
        o = other.images
        return Perm._raw(tuple(o[i] for i in self.images))

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._raw(tuple(inv))

    def conj(self, g: Perm) -> Perm:
        """Return g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lens = sorted((len(c) for c in self.cycles()), reverse=True)
        return tuple(lens) + (1,) * (self.degree - sum(lens))

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({fmt_perm(self, one_based=False)}, degree={self.degree})"

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> Perm:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int, *, one_based: bool = True) -> Perm:
    """Parse disjoint-cycle notation such as ``(1,2,3)(4,5)``."""
    text = text.strip()
    if text in ("", "()"):
        return Perm.identity(degree)
    rest = _CYCLE_RE.sub("", text).strip()
    if rest:
        raise ValueError(f"unexpected text {rest!r} in permutation {text!r}")
    shift = 1 if one_based else 0
    cycles = []
    for body in _CYCLE_RE.findall(text):
        parts = [s for s in re.split(r"[,\s]+", body.strip()) if s]
        cycles.append([int(s) - shift for s in parts])
    return Perm.from_cycles(degree, cycles)


def fmt_perm(p: Perm, *, one_based: bool = True) -> str:
    shift = 1 if one_based else 0
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(a + shift) for a in c) + ")" for c in cycles)


def read_gens(path: str | Path) -> tuple[int, list[Perm]]:
    """Read a `.gens` file: ``degree N`` then one permutation per line."""
    lines = Path(path).read_text().splitlines()
    return parse_gens(lines, source=str(path))


def parse_gens(lines: Iterable[str], source: str = "<gens>") -> tuple[int, list[Perm]]:
    degree = None
    gens: list[Perm] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise ValueError(f"{source}:{lineno}: expected 'degree N'")
            degree = int(m.group(1))
            continue
        try:
            gens.append(parse_perm(line, degree))
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: {exc}") from None
    if degree is None:
        raise ValueError(f"{source}: missing degree line")
    return degree, gens


def write_gens(degree: int, gens: Iterable[Perm], comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"degree {degree}")
    out.extend(fmt_perm(g) for g in gens)
    return "\n".join(out) + "\n"
