"""Freely reduced words over a generator alphabet, and the word-expression parser.

A letter is stored as a nonzero int: generator index ``g`` (0-based) is
``g + 1`` and its inverse is ``-(g + 1)``.  Words are tuples of such codes,
always freely reduced.
"""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple, Sequence


class Letter(NamedTuple):
    generator: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.generator + 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(abs(code) - 1, 1 if code > 0 else -1)


def reduce_codes(codes: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


class Word(tuple):
    """An element of the free group, as a reduced tuple of letter codes.

    ``u * v`` is the reduced product; ``~w`` the inverse; ``w ** n`` powers.
    Construct through :func:`free_reduce` or ``Word(codes)`` (which reduces).
    """

    __slots__ = ()

    def __new__(cls, codes: Iterable[int] = ()):
        return tuple.__new__(cls, reduce_codes(codes))

    @classmethod
    def _raw(cls, codes) -> "Word":
        # caller guarantees codes are already reduced
        return tuple.__new__(cls, codes)

    @classmethod
    def gen(cls, g: int, sign: int = 1) -> "Word":
        return cls._raw((sign * (g + 1),))

    @property
    def letters(self) -> list[Letter]:
        return [Letter.from_code(c) for c in self]

    def __mul__(self, other) -> "Word":
        if not isinstance(other, Word):
            other = Word(other)
        if not other:
            return self
        if not self:
            return other
        k = 0
        n = min(len(self), len(other))
        while k < n and self[-1 - k] == -other[k]:
            k += 1
        return Word._raw(tuple(self[: len(self) - k]) + tuple(other[k:]))

    def __rmul__(self, other):
        return Word(other) * self

    def __invert__(self) -> "Word":
        return Word._raw(tuple(-c for c in reversed(self)))

    inverse = __invert__

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        if n == 0 or not self:
            return Word()
        # w = a * core * a^-1 with core cyclically reduced
        k = 0
        while 2 * k + 1 < len(self) and self[k] == -self[-1 - k]:
            k += 1
        head, core, tail = self[:k], self[k : len(self) - k], self[len(self) - k :]
        return Word._raw(tuple(head) + tuple(core) * n + tuple(tail))

    def conj(self, other) -> "Word":
        """``self ** other`` in the group sense: ``other^-1 * self * other``."""
        other = other if isinstance(other, Word) else Word(other)
        return ~other * self * other

    def exponent_sums(self, ngens: int) -> tuple[int, ...]:
        sums = [0] * ngens
        for c in self:
            sums[abs(c) - 1] += 1 if c > 0 else -1
        return tuple(sums)

    def __repr__(self):
        return f"Word({tuple(self)!r})"


IDENTITY = Word()


def free_reduce(letters: Iterable) -> Word:
    """Reduce a raw sequence of letters (``Letter`` or int codes)."""
    return Word(x.code if isinstance(x, Letter) else int(x) for x in letters)


def commutator(u: Word, v: Word) -> Word:
    return ~u * ~v * u * v


def cyclic_reduce(w: Sequence[int]) -> Word:
    k = 0
    n = len(w)
    while 2 * k + 1 < n and w[k] == -w[n - 1 - k]:
        k += 1
    return Word._raw(tuple(w[k : n - k]))


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    """Render ``w`` in the expression grammar, collapsing runs into powers."""
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = names[abs(w[i]) - 1]
        e = (j - i) * (1 if w[i] > 0 else -1)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(parts)


class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<op>[*^()\[\],]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, alphabet: Sequence[str]):
        self.text = text
        self.index = {name: g for g, name in enumerate(alphabet)}
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            what = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise WordSyntaxError(f"expected {value!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def word(self) -> Word:
        w = self.term()
        while self.peek()[1] == "*":
            self.take("*")
            w = w * self.term()
        return w

    def term(self) -> Word:
        w = self.atom()
        while self.peek()[1] == "^":
            self.take("^")
            kind, val, pos = self.peek()
            if kind == "int":
                self.take()
                w = w ** int(val)
            elif val == "(":
                self.take("(")
                c = self.word()
                self.take(")")
                w = w.conj(c)
            elif kind == "name":
                w = w.conj(self.atom())
            else:
                raise WordSyntaxError("expected exponent", self.text, pos)
        return w

    def atom(self) -> Word:
        kind, val, pos = self.take()
        if kind == "name":
            if val not in self.index:
                raise WordSyntaxError(f"unknown generator {val!r}", self.text, pos)
            return Word.gen(self.index[val])
        if kind == "int" and val == "1":
            return IDENTITY
        if val == "(":
            w = self.word()
            self.take(")")
            return w
        if val == "[":
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            return commutator(u, v)
        what = repr(val) if kind != "end" else "end of input"
        raise WordSyntaxError(f"unexpected {what}", self.text, pos)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse a word expression.

    Grammar::

        word := term { '*' term }
        term := atom [ '^' exp ]
        atom := NAME | '1' | '(' word ')' | '[' word ',' word ']'
        exp  := INT | '(' word ')'

    ``[u,v]`` is ``u^-1 v^-1 u v`` and ``u^(v)`` is ``v^-1 u v``.
    A bare generator name is also accepted as a conjugating exponent.
    """
    if not alphabet:
        raise ValueError("empty generator alphabet")
    p = _Parser(text, alphabet)
    w = p.word()
    kind, val, pos = p.peek()
    if kind != "end":
        raise WordSyntaxError(f"unexpected {val!r}", text, pos)
    return w
