"""Word problem, bounded order and infinite-order certificates.

``is_identity`` returns ``True``/``False``, or ``None`` when a presentation
that is not letter-bounded runs past the word-length bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .perm import order as perm_order
from .words import Word, cyclic_reduce
from .wreath import Presentation

DEFAULT_LENGTH_BOUND = 256


def is_identity(P: Presentation, w, length_bound: int | None = None):
    """Decide whether ``w`` acts trivially on the tree.

    Breadth-first search over the (cyclically reduced) section words reachable
    from ``w``; ``w`` is trivial iff every one of them has trivial root
    permutation.  For letter-bounded presentations section words never grow,
    so the search is finite.
    """
    w = cyclic_reduce(w)
    if not w:
        return True
    cache = P.identity_cache
    known = cache.get(w)
    if known is not None:
        return known
    bound = None if P.letter_bounded else (length_bound or DEFAULT_LENGTH_BOUND)
    seen = {w}
    queue = deque([w])
    unknown = False
    d = P.degree
    while queue:
        u = queue.popleft()
        hit = cache.get(u)
        if hit is True:
            continue
        if hit is False or not P.is_root_trivial(u):
            cache[u] = False
            cache[w] = False
            return False
        for c in range(d):
            s = cyclic_reduce(P._section0(u, c)[0])
            if not s or s in seen:
                continue
            if bound is not None and len(s) > bound:
                unknown = True
                continue
            seen.add(s)
            queue.append(s)
    if unknown:
        return None
    for u in seen:
        cache[u] = True
    return True


def are_equal(P: Presentation, u, v, length_bound: int | None = None):
    return is_identity(P, Word(u) * ~Word(v), length_bound)


@dataclass(frozen=True)
class InfiniteOrderCertificate:
    """Evidence that ``element`` has infinite order.

    ``PowerSectionDescent``: with ``m`` the order of the root permutation,
    the section of ``element**m`` at ``point`` equals ``element**j`` for some
    ``1 <= j < m``.  ``SectionDominance``: the section of ``element**m`` at
    ``point`` has infinite order, witnessed by ``chain``.
    """

    rule: str
    element: Word
    m: int
    point: int
    j: int = 0
    chain: "InfiniteOrderCertificate | None" = None

    def describe(self, P: Presentation, indent: str = "") -> str:
        w = P.format(self.element)
        if self.rule == "PowerSectionDescent":
            return (
                f"{indent}PowerSectionDescent({w}: m={self.m}, point {self.point}, j={self.j}; "
                f"section of ({w})^{self.m} at {self.point} equals ({w})^{self.j})"
            )
        head = (
            f"{indent}SectionDominance({w}: m={self.m}, point {self.point}; "
            f"section of ({w})^{self.m} at {self.point} has infinite order)"
        )
        return head + "\n" + self.chain.describe(P, indent + "  ")

    def __str__(self):
        if self.rule == "PowerSectionDescent":
            return f"PowerSectionDescent(m={self.m}, point {self.point}, j={self.j})"
        return f"SectionDominance(point {self.point}) -> {self.chain}"


def verify_certificate(P: Presentation, cert: InfiniteOrderCertificate) -> bool:
    w = cert.element
    m = perm_order(P.root_perm(w))
    if cert.m != m or not 1 <= cert.point <= P.degree:
        return False
    s = P.section(w**m, cert.point)
    if cert.rule == "PowerSectionDescent":
        if m < 2 or not 1 <= cert.j < m:
            return False
        return are_equal(P, s, w**cert.j) is True
    if cert.rule == "SectionDominance":
        if cert.chain is None or are_equal(P, s, cert.chain.element) is not True:
            return False
        return verify_certificate(P, cert.chain)
    return False


def infinite_order_certificate(P: Presentation, w, depth: int | None = None):
    """Search for an :class:`InfiniteOrderCertificate`; ``None`` if none is found.

    Descent is tried before recursing into sections.  Recursion uses the
    sections of ``w**m`` (which lies in the first-level stabilizer), so a
    section of infinite order forces infinite order of ``w``.
    """
    w = Word(w)
    if is_identity(P, w) is not False:
        raise ValueError("infinite-order certificate requested for a trivial (or undecided) element")
    if depth is None:
        depth = 2 * P.degree
    failed: dict[Word, int] = {}
    cert = _search(P, w, depth, frozenset([cyclic_reduce(w)]), failed)
    if cert is not None and not verify_certificate(P, cert):
        raise AssertionError("emitted certificate failed re-verification")
    return cert


def _search(P, w, depth, path, failed):
    if failed.get(w, -1) >= depth:
        return None
    m = perm_order(P.root_perm(w))
    wm = w**m
    secs = P.sections(wm)
    if m >= 2:
        for i, s in enumerate(secs, 1):
            for j in range(1, m):
                if are_equal(P, s, w**j) is True:
                    return InfiniteOrderCertificate("PowerSectionDescent", w, m, i, j)
    if depth > 0:
        for i, s in enumerate(secs, 1):
            key = cyclic_reduce(s)
            if not key or key in path:
                continue
            if is_identity(P, s) is not False:
                continue
            sub = _search(P, s, depth - 1, path | {key}, failed)
            if sub is not None:
                return InfiniteOrderCertificate("SectionDominance", w, m, i, chain=sub)
    failed[w] = max(depth, failed.get(w, -1))
    return None


@dataclass(frozen=True)
class OrderResult:
    kind: str  # "Finite" | "ExceedsBound" | "InfiniteCertified"
    n: int | None = None
    bound: int | None = None
    certificate: InfiniteOrderCertificate | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "Finite"

    def __str__(self):
        if self.kind == "Finite":
            return f"Finite({self.n})"
        if self.kind == "ExceedsBound":
            return f"ExceedsBound({self.bound})"
        return f"InfiniteCertified({self.certificate})"


def order_bounded(P: Presentation, w, bound: int, certify: bool = True) -> OrderResult:
    """Least ``n <= bound`` with ``w**n = 1``.

    Only multiples of the root permutation's order are tried.  Failing that,
    an infinite-order certificate is searched for (when ``certify``).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    w = Word(w)
    if is_identity(P, w) is True:
        return OrderResult("Finite", n=1)
    m = perm_order(P.root_perm(w))
    core = cyclic_reduce(w)
    for n in range(m, bound + 1, m):
        if is_identity(P, core**n) is True:
            return OrderResult("Finite", n=n)
    if certify:
        cert = infinite_order_certificate(P, w)
        if cert is not None:
            return OrderResult("InfiniteCertified", certificate=cert)
    return OrderResult("ExceedsBound", bound=bound)


def fixed_path_self_section(P: Presentation, w, max_depth: int):
    """Shortest (then lexicographically least) nonempty vertex ``v`` fixed by
    ``w`` with ``w_v = w``; ``None`` if there is none up to ``max_depth``."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    w = Word(w)
    level = [((), w)]
    for _ in range(max_depth):
        nxt = []
        for v, s in level:
            for c in range(P.degree):
                sec, image = P._section0(s, c)
                if image == c:
                    nxt.append((v + (c + 1,), sec))
        for v, s in nxt:
            if are_equal(P, s, w) is True:
                return v
        level = nxt
        if not level:
            break
    return None
