"""Group-level checks: level transitivity, fractality, contraction, torsion."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decision import (
    InfiniteOrderCertificate,
    are_equal,
    fixed_path_self_section,
    infinite_order_certificate,
    is_identity,
    order_bounded,
)
from .words import IDENTITY, Word, cyclic_reduce
from .wreath import Presentation

DEFAULT_ORBIT_BUDGET = 1 << 22
DEFAULT_SCAN_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ARBORA_THREADS", "1")))
    except ValueError:
        return 1


# --- transitivity and fractality -------------------------------------------

def _pack(v, d: int) -> int:
    code = 0
    for x in v:
        code = code * d + (x - 1)
    return code


def level_orbit_size(P: Presentation, n: int, budget: int = DEFAULT_ORBIT_BUDGET) -> int:
    """Size of the orbit of 1...1 (length ``n``) under the generators."""
    d = P.degree
    if d**n > budget:
        raise BudgetExceeded(f"level {n} has {d**n} vertices, budget is {budget}")
    start = (1,) * n
    seen = {_pack(start, d)}
    frontier = [start]
    gens = P.generators()
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                u = P.act(g, v)
                code = _pack(u, d)
                if code not in seen:
                    seen.add(code)
                    nxt.append(u)
        frontier = nxt
    return len(seen)


def level_transitive(P: Presentation, n: int, budget: int = DEFAULT_ORBIT_BUDGET) -> bool:
    return level_orbit_size(P, n, budget) == P.degree**n


def fractality_check(P: Presentation, witnesses, x: int) -> bool:
    """First-level criterion: transitive on level one, and every generator
    arises as the section at ``x`` of some element fixing ``x``."""
    if not witnesses:
        raise ValueError("no witnesses given")
    if level_orbit_size(P, 1) != P.degree:
        return False
    for w, target in witnesses:
        if P.act(w, (x,)) != (x,):
            return False
        if are_equal(P, P.section(w, x), target) is not True:
            return False
    covered = set()
    for _, target in witnesses:
        for g in range(P.ngens):
            if are_equal(P, target, Word.gen(g)) is True:
                covered.add(g)
    return covered == set(range(P.ngens))


# --- contraction -----------------------------------------------------------

class ElementSet:
    """Words deduplicated as group elements, with a portrait fingerprint prefilter."""

    def __init__(self, P: Presentation, depth: int | None = None):
        self.P = P
        self.depth = depth if depth is not None else (4 if P.degree <= 4 else 3)
        self.items: list[Word] = []
        self._buckets: dict[tuple, list[Word]] = {}
        self._syntactic: dict[Word, Word] = {}

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def find(self, w: Word):
        hit = self._syntactic.get(w)
        if hit is not None:
            return hit
        for u in self._buckets.get(self.P.fingerprint(w, self.depth), ()):
            if are_equal(self.P, u, w) is True:
                self._syntactic[w] = u
                return u
        return None

    def add(self, w: Word) -> bool:
        if self.find(w) is not None:
            return False
        self.items.append(w)
        self._syntactic[w] = w
        self._buckets.setdefault(self.P.fingerprint(w, self.depth), []).append(w)
        return True


@dataclass
class NucleusOutcome:
    kind: str  # "Contracting" | "BoundExceeded"
    nucleus: list[Word] = field(default_factory=list)
    evidence: list[Word] = field(default_factory=list)
    size: int = 0
    self_section: tuple | None = None

    def __str__(self):
        if self.kind == "Contracting":
            return f"Contracting(size {len(self.nucleus)})"
        return f"BoundExceeded(size {self.size})"


def _close(P: Presentation, C: ElementSet, seeds, added: list[Word], max_size: int) -> bool:
    """Close ``C`` under first-level sections and inversion; False once over ``max_size``."""
    todo = list(seeds)
    while todo:
        w = todo.pop()
        for u in (w, ~w):
            if C.add(u):
                added.append(u)
                if len(C) > max_size:
                    return False
                todo.extend(P.sections(u))
    return True


def nucleus_search(P: Presentation, max_size: int = 200, max_depth: int = 8) -> NucleusOutcome:
    """Semi-decision procedure for contraction.

    Starts from the generators, their inverses and the identity, closed under
    sections; repeatedly adds the level-``max_depth`` sections of pairwise
    products that are not yet present.  Stops when a full pass adds nothing
    (contracting, with the candidate nucleus) or when the set outgrows
    ``max_size``.
    """
    if max_size < 1 or max_depth < 1:
        raise ValueError("bounds must be >= 1")
    C = ElementSet(P)
    chain: list[Word] = []
    seeds = [IDENTITY] + P.generators()
    if not _close(P, C, seeds, [], max_size):
        return _exceeded(P, C, chain)
    done = 0  # pairs among C.items[:done] have been processed
    while True:
        n = len(C)
        if n == done:
            break
        for a in range(n):
            for b in range(n):
                if a < done and b < done:
                    continue
                frontier = ElementSet(P, C.depth)
                frontier.add(C.items[a] * C.items[b])
                for _ in range(max_depth):
                    nxt = ElementSet(P, C.depth)
                    for u in frontier:
                        for s in P.sections(u):
                            nxt.add(s)
                    frontier = nxt
                fresh = [s for s in frontier if C.find(s) is None]
                if fresh and not _close(P, C, fresh, chain, max_size):
                    return _exceeded(P, C, chain)
        done = n
    nucleus = list(C)
    _check_closed(P, C)
    return NucleusOutcome("Contracting", nucleus=nucleus, size=len(nucleus))


def _check_closed(P: Presentation, C: ElementSet) -> None:
    for u in C:
        if C.find(~u) is None or any(C.find(s) is None for s in P.sections(u)):
            raise AssertionError("candidate nucleus is not closed under sections and inversion")


def _exceeded(P: Presentation, C: ElementSet, chain: list[Word]) -> NucleusOutcome:
    out = NucleusOutcome("BoundExceeded", evidence=list(chain), size=len(C))
    for w in chain[:50]:
        if is_identity(P, w) is True:
            continue
        v = fixed_path_self_section(P, w, 2)
        if v is not None:
            out.self_section = (w, v)
            break
    return out


@dataclass
class NonContractionCertificate:
    element: Word
    self_section_vertex: tuple
    infinite_order: InfiniteOrderCertificate
    distinct_powers_checked: int

    def describe(self, P: Presentation) -> str:
        v = ".".join(map(str, self.self_section_vertex))
        return "\n".join(
            [
                f"element: {P.format(self.element)}",
                f"self-section vertex: {v}",
                f"distinct powers checked: 1..{self.distinct_powers_checked}",
                "infinite order:",
                self.infinite_order.describe(P, "  "),
            ]
        )


def non_contraction_certificate(P: Presentation, w, power_check: int = 20, max_depth: int = 4):
    """Certificate that no finite nucleus exists, or ``None``.

    If ``w`` fixes ``v`` with ``w_v = w`` and has infinite order, then every
    power of ``w`` is its own section along ``v v v ...`` and must lie in any
    nucleus.
    """
    if power_check < 2:
        raise ValueError("power_check must be >= 2")
    w = Word(w)
    if is_identity(P, w) is not False:
        return None
    v = fixed_path_self_section(P, w, max_depth)
    if v is None:
        return None
    cert = infinite_order_certificate(P, w)
    if cert is None:
        return None
    powers = [w**k for k in range(1, power_check + 1)]
    for a in range(power_check):
        for b in range(a + 1, power_check):
            if are_equal(P, powers[a], powers[b]) is not False:
                return None
    return NonContractionCertificate(w, v, cert, power_check)


# --- torsion ---------------------------------------------------------------

def _key(c: int) -> int:
    return 2 * (abs(c) - 1) + (1 if c > 0 else 0)


def _canonical(w: tuple) -> bool:
    """Whether ``w`` is the least of its cyclic rotations and theirs of its inverse."""
    keyed = tuple(_key(c) for c in w)
    inv = tuple(_key(-c) for c in reversed(w))
    n = len(w)
    for k in range(n):
        if keyed[k:] + keyed[:k] < keyed or inv[k:] + inv[:k] < keyed:
            return False
    return True


def cyclic_words(ngens: int, max_len: int):
    """Cyclically reduced words up to ``max_len``, one per rotation/inversion class."""
    letters = [s * (g + 1) for g in range(ngens) for s in (-1, 1)]
    letters.sort(key=_key)

    def extend(prefix):
        if prefix and cyclic_reduce(prefix) == prefix and _canonical(prefix):
            yield Word._raw(prefix)
        if len(prefix) == max_len:
            return
        for c in letters:
            if prefix and prefix[-1] == -c:
                continue
            yield from extend(prefix + (c,))

    yield from extend(())


def _scan_chunk(args):
    P, words, max_order = args
    found = []
    for w in words:
        res = order_bounded(P, w, max_order, certify=False)
        if res.kind == "Finite" and res.n > 1:
            found.append((w, res.n))
    return found


def torsion_scan(P: Presentation, max_len: int, max_order: int, budget: int = DEFAULT_SCAN_BUDGET):
    """Nontrivial elements of order <= ``max_order`` among words of length <= ``max_len``.

    Words are taken up to cyclic rotation and inversion, which preserve order.
    """
    if max_len <= 0 or P.ngens == 0:
        return []
    g = P.ngens
    space = 2 * g * (2 * g - 1) ** (max_len - 1)
    if space > budget:
        raise BudgetExceeded(f"search space {space} exceeds budget {budget}")
    words = list(cyclic_words(g, max_len))
    threads = _threads()
    if threads > 1 and len(words) > 64:
        chunks = [words[k::threads] for k in range(threads)]
        with ProcessPoolExecutor(threads) as ex:
            found = [x for part in ex.map(_scan_chunk, [(P, c, max_order) for c in chunks]) for x in part]
    else:
        found = _scan_chunk((P, words, max_order))
    found.sort(key=lambda item: (len(item[0]), [_key(c) for c in item[0]]))
    return found
