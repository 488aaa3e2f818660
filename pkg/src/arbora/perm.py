"""Permutations of {1..d}.

Products are read left to right: ``p * q`` applies ``p`` first, then ``q``.
"""

from __future__ import annotations

import math
import re
from functools import reduce


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        d = len(images)
        if d < 1 or sorted(images) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of 1..{d}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> "Permutation":
        """Build from disjoint cycles; ``(a, b, c)`` maps a->b->c->a."""
        img = list(range(1, degree + 1))
        seen = set()
        for cyc in cycles:
            for k, a in enumerate(cyc):
                if not 1 <= a <= degree:
                    raise ValueError(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise ValueError(f"cycles are not disjoint at point {a}")
                seen.add(a)
                img[a - 1] = cyc[(k + 1) % len(cyc)]
        return cls(img)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``(1 2 3)(4 5)`` or ``()``."""
        body = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)+", body):
            raise ValueError(f"bad permutation syntax: {text!r}")
        cycles = []
        for grp in re.findall(r"\(([^)]*)\)", body):
            pts = [int(t) for t in re.split(r"[\s,]+", grp.strip()) if t]
            if len(pts) > 1:
                cycles.append(pts)
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        out = []
        seen = set()
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return order(self)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({str(self)!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return r with r(i) = q(p(i))."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(q.images[i - 1] for i in p.images)


def order(p: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)
