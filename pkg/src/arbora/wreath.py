"""Words as automorphisms of the d-adic rooted tree.

A presentation fixes, for every generator ``g``, its wreath recursion
``g = (g_1, ..., g_d) sigma``: the stabilizer part acts first, then the
rooted permutation.  With products read left to right this gives

    (f g)_i = f_i g_{f(i)}        and        g(i u) = sigma(i) g_i(u).

Vertices are tuples of 1-based points, root first.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation
from .words import Word, format_word, parse_word

DEFAULT_MAX_DEPTH = 16
_CACHE_LIMIT = 1 << 20


def max_portrait_depth() -> int:
    return int(os.environ.get("ARBORA_MAX_DEPTH", DEFAULT_MAX_DEPTH))


class PresentationError(ValueError):
    pass


class Presentation:
    """Wreath recursion table for a finitely generated self-similar group."""

    def __init__(self, degree: int, names: Sequence[str], table, label: str | None = None):
        if degree < 2:
            raise PresentationError(f"degree must be >= 2, got {degree}")
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator names")
        if len(table) != len(names):
            raise PresentationError("table size does not match generator list")
        self.degree = degree
        self.names = tuple(names)
        self.label = label
        rows = []
        for name, (sections, root) in zip(names, table):
            if len(sections) != degree:
                raise PresentationError(
                    f"generator {name}: expected {degree} sections, got {len(sections)}"
                )
            if not isinstance(root, Permutation):
                root = Permutation(root)
            if root.degree != degree:
                raise PresentationError(f"generator {name}: root permutation has wrong degree")
            secs = tuple(Word(s) for s in sections)
            for s in secs:
                for c in s:
                    if not 1 <= abs(c) <= len(names):
                        raise PresentationError(f"generator {name}: section uses unknown letter")
            rows.append((secs, root))
        self.table = tuple(rows)
        self.letter_bounded = all(len(s) <= 1 for secs, _ in rows for s in secs)

        # 0-based lookup arrays for the hot loops
        self._img = [tuple(i - 1 for i in root.images) for _, root in rows]
        self._inv = [tuple(i - 1 for i in root.inverse().images) for _, root in rows]
        self._sec = [tuple(tuple(s) for s in secs) for secs, _ in rows]
        self._isec = [tuple(tuple(~s) for s in secs) for secs, _ in rows]
        self._section_cache: dict = {}
        self._fp_cache: dict = {}
        self.identity_cache: dict = {}

    @property
    def ngens(self) -> int:
        return len(self.names)

    def generators(self) -> list[Word]:
        return [Word.gen(g) for g in range(self.ngens)]

    def word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def format(self, w: Sequence[int]) -> str:
        return format_word(w, self.names)

    def __repr__(self):
        tag = self.label or "presentation"
        return f"<{tag}: degree {self.degree}, generators {', '.join(self.names)}>"

    # --- low level --------------------------------------------------------

    def _section0(self, w: Sequence[int], c: int) -> tuple[Word, int]:
        """Section of ``w`` at 0-based point ``c`` and the 0-based image of ``c``."""
        key = (w, c)
        hit = self._section_cache.get(key)
        if hit is not None:
            return hit
        img, inv, sec, isec = self._img, self._inv, self._sec, self._isec
        out: list[int] = []
        for x in w:
            if x > 0:
                g = x - 1
                chunk = sec[g][c]
                c = img[g][c]
            else:
                g = -x - 1
                c = inv[g][c]
                chunk = isec[g][c]
            for y in chunk:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        res = (Word._raw(tuple(out)), c)
        if len(self._section_cache) > _CACHE_LIMIT:
            self._section_cache.clear()
        self._section_cache[key] = res
        return res

    def _root0(self, w: Sequence[int]) -> tuple[int, ...]:
        cur = list(range(self.degree))
        img, inv = self._img, self._inv
        for x in w:
            arr = img[x - 1] if x > 0 else inv[-x - 1]
            cur = [arr[c] for c in cur]
        return tuple(cur)

    def is_root_trivial(self, w: Sequence[int]) -> bool:
        return self._root0(w) == tuple(range(self.degree))

    # --- public operations ----------------------------------------------

    def root_perm(self, w: Sequence[int]) -> Permutation:
        return Permutation(c + 1 for c in self._root0(w))

    def section(self, w: Sequence[int], i: int) -> Word:
        if not 1 <= i <= self.degree:
            raise ValueError(f"point {i} outside 1..{self.degree}")
        return self._section0(_as_word(w), i - 1)[0]

    def sections(self, w: Sequence[int]) -> list[Word]:
        w = _as_word(w)
        return [self._section0(w, c)[0] for c in range(self.degree)]

    def decompose(self, w: Sequence[int]) -> tuple[list[Word], Permutation]:
        return self.sections(w), self.root_perm(w)

    def check_vertex(self, v: Iterable[int]) -> tuple[int, ...]:
        v = tuple(v)
        for x in v:
            if not 1 <= x <= self.degree:
                raise ValueError(f"vertex entry {x} outside 1..{self.degree}")
        return v

    def section_at(self, w: Sequence[int], v: Iterable[int]) -> Word:
        w = _as_word(w)
        for x in self.check_vertex(v):
            w = self._section0(w, x - 1)[0]
        return w

    def act(self, w: Sequence[int], v: Iterable[int]) -> tuple[int, ...]:
        w = _as_word(w)
        out = []
        for x in self.check_vertex(v):
            w, c = self._section0(w, x - 1)
            out.append(c + 1)
        return tuple(out)

    def portrait(self, w: Sequence[int], depth: int) -> "Portrait":
        limit = max_portrait_depth()
        if depth < 0:
            raise ValueError("portrait depth must be >= 0")
        if depth > limit:
            raise ValueError(f"portrait depth {depth} exceeds limit {limit}")
        return self._portrait(_as_word(w), depth)

    def _portrait(self, w: Word, depth: int) -> "Portrait":
        label = self.root_perm(w)
        if depth == 0:
            return Portrait(label, ())
        return Portrait(label, tuple(self._portrait(s, depth - 1) for s in self.sections(w)))

    def fingerprint(self, w: Sequence[int], depth: int) -> int:
        """Hash of the depth-``depth`` portrait; equal elements get equal values."""
        w = _as_word(w)
        key = (w, depth)
        hit = self._fp_cache.get(key)
        if hit is not None:
            return hit
        root = self._root0(w)
        if depth == 0:
            fp = hash(root)
        else:
            fp = hash((root, tuple(self.fingerprint(self._section0(w, c)[0], depth - 1)
                                   for c in range(self.degree))))
        if len(self._fp_cache) > _CACHE_LIMIT:
            self._fp_cache.clear()
        self._fp_cache[key] = fp
        return fp

    def stabilizes_level(self, w: Sequence[int], n: int) -> bool:
        if n < 0:
            raise ValueError("level must be >= 0")
        frontier = {_as_word(w)}
        for _ in range(n):
            nxt = set()
            for u in frontier:
                if not self.is_root_trivial(u):
                    return False
                nxt.update(self.sections(u))
            frontier = nxt
        return True


def _as_word(w) -> Word:
    return w if isinstance(w, Word) else Word(w)


@dataclass(frozen=True)
class Portrait:
    root_label: Permutation
    children: tuple["Portrait", ...]

    @property
    def depth(self) -> int:
        return 0 if not self.children else 1 + self.children[0].depth

    def labels(self):
        """Yield ``(vertex, permutation)`` pairs in breadth-first order."""
        level = [((), self)]
        while level:
            nxt = []
            for path, node in level:
                yield path, node.root_label
                nxt.extend((path + (i,), ch) for i, ch in enumerate(node.children, 1))
            level = nxt

    def is_trivial(self) -> bool:
        return all(p.is_identity() for _, p in self.labels())


# --- group-definition files ------------------------------------------------

_GEN_LINE = re.compile(r"gen\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


def _split_tuple(text: str, lineno: int) -> tuple[list[str], str]:
    text = text.strip()
    if not text.startswith("("):
        raise PresentationError(f"line {lineno}: expected '(' opening the section tuple")
    depth = 0
    parts = []
    start = 1
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth == 0:
                parts.append(text[start:k])
                return [p.strip() for p in parts], text[k + 1 :].strip()
        elif ch == "," and depth == 1:
            parts.append(text[start:k])
            start = k + 1
    raise PresentationError(f"line {lineno}: unbalanced section tuple")


def load_presentation(text: str, label: str | None = None) -> Presentation:
    """Parse a group-definition document.

    Example::

        degree 3
        gen m1 = (1, 1, m1) (1 2 3)
        gen m2 = (1, m2, 1) (1 2)
        gen m3 = (m1, m2, m3) ()
    """
    degree = None
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("degree"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                raise PresentationError(f"line {lineno}: bad degree line")
            degree = int(parts[1])
            continue
        m = _GEN_LINE.match(line)
        if not m:
            raise PresentationError(f"line {lineno}: cannot parse {line!r}")
        raw.append((lineno, m.group(1), m.group(2)))
    if degree is None:
        raise PresentationError("missing 'degree' line")
    if degree < 2:
        raise PresentationError(f"degree must be >= 2, got {degree}")
    names = [name for _, name, _ in raw]
    table = []
    for lineno, name, rest in raw:
        secs, perm_text = _split_tuple(rest, lineno)
        if len(secs) != degree:
            raise PresentationError(
                f"line {lineno}: generator {name} has {len(secs)} sections, expected {degree}"
            )
        try:
            words = [parse_word(s, names) for s in secs]
        except ValueError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
        try:
            root = Permutation.parse(perm_text or "()", degree)
        except ValueError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
        table.append((words, root))
    return Presentation(degree, names, table, label=label)


def dump_presentation(P: Presentation) -> str:
    lines = [f"degree {P.degree}"]
    for name, (secs, root) in zip(P.names, P.table):
        body = ", ".join(P.format(s) for s in secs)
        lines.append(f"gen {name} = ({body}) {root}")
    return "\n".join(lines) + "\n"


def parse_vertex(text: str, degree: int) -> tuple[int, ...]:
    """``"1.2.3"``; plain digits such as ``"123"`` are accepted when d <= 9."""
    text = text.strip()
    if text in ("", "root", "()"):
        return ()
    if "." in text:
        v = tuple(int(t) for t in text.split("."))
    elif degree <= 9 and text.isdigit():
        v = tuple(int(ch) for ch in text)
    else:
        v = (int(text),)
    for x in v:
        if not 1 <= x <= degree:
            raise ValueError(f"vertex entry {x} outside 1..{degree}")
    return v


def format_vertex(v: Sequence[int]) -> str:
    return ".".join(map(str, v)) if v else "root"


def level_vertices(degree: int, n: int):
    return itertools.product(range(1, degree + 1), repeat=n)


# module-level spellings of the operations

def root_perm(P: Presentation, w) -> Permutation:
    return P.root_perm(w)


def level_one_section(P: Presentation, w, i: int) -> Word:
    return P.section(w, i)


def section_at(P: Presentation, w, v) -> Word:
    return P.section_at(w, v)


def act(P: Presentation, w, v) -> tuple[int, ...]:
    return P.act(w, v)


def decompose(P: Presentation, w):
    return P.decompose(w)


def portrait(P: Presentation, w, depth: int) -> Portrait:
    return P.portrait(w, depth)


def stabilizes_level(P: Presentation, w, n: int) -> bool:
    return P.stabilizes_level(w, n)
