"""The groups M(d) = <m_1, ..., m_d> acting on the d-adic tree.

    m_i = (1, ..., m_i, ..., 1)(1 2 ... d+1-i)   for i < d, m_i at coordinate d+1-i
    m_d = (m_1, ..., m_d)

and machine checks of the identities that make M(d) fractal, weakly
regular branch over M(d)', non-torsion and non-contracting.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

from . import analysis
from .decision import (
    are_equal,
    infinite_order_certificate,
    is_identity,
    order_bounded,
)
from .perm import Permutation
from .words import IDENTITY, Word, commutator
from .wreath import Presentation, format_vertex


class VerificationError(AssertionError):
    """A constructed witness does not have the decomposition it was built for."""


def build_m(d: int) -> Presentation:
    if d < 2:
        raise ValueError(f"M(d) needs d >= 2, got {d}")
    names = [f"m{i}" for i in range(1, d + 1)]
    table = []
    for i in range(1, d):
        k = d + 1 - i
        secs = [IDENTITY] * d
        secs[k - 1] = Word.gen(i - 1)
        table.append((secs, Permutation.from_cycles(d, [tuple(range(1, k + 1))])))
    table.append(([Word.gen(g) for g in range(d)], Permutation.identity(d)))
    return Presentation(d, names, table, label=f"m:{d}")


_BUILTIN = re.compile(r"m:(\d+)$")


def is_builtin(source: str) -> bool:
    return bool(_BUILTIN.match(source))


def builtin_degree(P: Presentation) -> int | None:
    m = _BUILTIN.match(P.label or "")
    return int(m.group(1)) if m else None


def gen(i: int) -> Word:
    """The generator m_i (1-based) as a word."""
    return Word.gen(i - 1)


def sections_match(P: Presentation, w, expected, root=None) -> bool:
    """Element-wise comparison of the first-level decomposition of ``w``."""
    secs, r = P.decompose(w)
    if root is not None and r != root:
        return False
    return all(are_equal(P, s, e) is True for s, e in zip(secs, expected))


def fractal_witnesses(d: int) -> list[tuple[Word, Word]]:
    """Pairs (witness in St(1), generator it yields at the last coordinate)."""
    m1, md = gen(1), gen(d)
    out = [(m1**d, m1)]
    for k in range(d - 2, 0, -1):
        out.append((md.conj(m1**k), gen(d - k)))
    out.append((md, md))
    return out


def commutator_root(d: int) -> Permutation:
    """sigma^-1 tau^-1 sigma tau for sigma = (1 ... d), tau = (1 ... d-1)."""
    sigma = Permutation.from_cycles(d, [tuple(range(1, d + 1))])
    tau = Permutation.from_cycles(d, [tuple(range(1, d))]) if d > 2 else Permutation.identity(d)
    return sigma.inverse() * tau.inverse() * sigma * tau


def _branch_target(d: int, i: int, j: int) -> list[Word]:
    return [IDENTITY] * (d - 1) + [commutator(gen(i), gen(j))]


def x_witness(d: int, i: int) -> Word:
    """Element of M' with decomposition (1, ..., 1, [m_i, m_d])."""
    m1, mi = gen(1), gen(i)
    power = mi ** (d + 1 - i)
    w = IDENTITY
    for t in range(i + 1, d):
        w = w * commutator(gen(t), power).conj(m1 ** (t - 1))
    return w * commutator(power.conj(m1 ** (i - 1)), gen(d))


def branch_witness(d: int, i: int, j: int, P: Presentation | None = None) -> Word:
    """Word in M(d)' with decomposition (1, ..., 1, [m_i, m_j]), verified."""
    if not 1 <= i < j <= d:
        raise ValueError(f"need 1 <= i < j <= {d}, got ({i}, {j})")
    P = P or build_m(d)
    if d == 2:
        w = commutator(gen(1) ** 2, gen(2))
    elif j < d:
        w = commutator(gen(i) ** (d + 1 - i), gen(j)).conj(gen(1) ** (d - 1))
    else:
        w = x_witness(d, i)
    if not sections_match(P, w, _branch_target(d, i, j), Permutation.identity(d)):
        raise VerificationError(f"branch witness for ({i}, {j}) in M({d}) failed verification")
    return w


def intermediate_commutator_vector(d: int, i: int, P: Presentation | None = None) -> Word:
    """[(m_i^(d+1-i))^(m_1^(i-1)), m_d] = (1, ..., 1, [m_i, m_(i+1)], ..., [m_i, m_d])."""
    if d < 3 or not 1 <= i <= d - 1:
        raise ValueError(f"need d >= 3 and 1 <= i <= d-1, got d={d}, i={i}")
    P = P or build_m(d)
    w = commutator((gen(i) ** (d + 1 - i)).conj(gen(1) ** (i - 1)), gen(d))
    expected = [IDENTITY] * i + [commutator(gen(i), gen(i + t)) for t in range(1, d - i + 1)]
    if not sections_match(P, w, expected, Permutation.identity(d)):
        raise VerificationError(f"intermediate vector for i={i} in M({d}) failed verification")
    return w


# --- d = 2: the abelianization M/M' = Z x Z ---------------------------------

def abelianization_exponents(P: Presentation, w) -> tuple[int, ...]:
    return Word(w).exponent_sums(P.ngens)


def derived_membership_d2(P: Presentation, w) -> bool:
    if P.degree != 2 or P.ngens != 2:
        raise ValueError("derived-subgroup criterion only holds for M(2)")
    return abelianization_exponents(P, w) == (0, 0)


def rho_check_d2(P: Presentation, w) -> bool:
    """For h = (h_1, h_2) in M', check h_1 h_2 in M' (vacuous outside M')."""
    if P.degree != 2:
        raise ValueError("rho check is defined for M(2) only")
    if not P.stabilizes_level(w, 1):
        raise ValueError("element does not stabilize the first level")
    if not derived_membership_d2(P, w):
        return True
    h1, h2 = P.sections(w)
    return derived_membership_d2(P, h1 * h2)


def congruent_mod_derived_square(P: Presentation, lhs, rhs_sections) -> bool:
    """lhs * (rhs as an element of St(1))^-1 has both sections in M'."""
    secs = P.sections(lhs)
    return P.is_root_trivial(lhs) and all(
        derived_membership_d2(P, s * ~r) for s, r in zip(secs, rhs_sections)
    )


def lemma_zz_displays(P: Presentation):
    """The section displays used in the proof that M(2)/M(2)' = Z x Z.

    Each entry is (name, element, expected sections, expected root).
    """
    w = P.word
    c = w("[m1,m2]")
    c1 = w("[m1,m2]^(m1)")
    ident = Permutation.identity(2)
    return [
        ("lemma_zz.commutator", c, [w("[m1,m2]*m2^-1*m1"), w("m1^-1*m2")], ident),
        ("lemma_zz.conjugate", c1, [w("m1^-2*m2*m1"), w("m1^-1*m2^-1*m1^2")], ident),
        ("lemma_zz.conjugate_commutators", c1, [w("[m1^2,m2^-1]*m2*m1^-1"), w("[m1,m2]*m2^-1*m1")], ident),
    ]


def lemma_zz_identity_check(P: Presentation | None = None, displays=None) -> list["ReportItem"]:
    P = P or build_m(2)
    items = []
    for name, lhs, expected, root in displays or lemma_zz_displays(P):
        t0 = time.perf_counter()
        ok = sections_match(P, lhs, expected, root)
        items.append(ReportItem(name, 2, ok, [P.format(lhs)], time.perf_counter() - t0))
    t0 = time.perf_counter()
    target = [P.word("m1^-1*m2"), P.word("m2^-1*m1")]
    c1 = P.word("[m1,m2]^(m1)")
    ok = congruent_mod_derived_square(P, c1, target)
    # [m1,m2]^y for y in {m1^+-1, m2^+-1} all lie in <[m1,m2]> modulo M' x M'
    for y in ("m1", "m1^-1", "m2", "m2^-1"):
        cy = P.word(f"[m1,m2]^({y})")
        ok = ok and (
            congruent_mod_derived_square(P, cy, target)
            or congruent_mod_derived_square(P, cy, [~t for t in target])
        )
    items.append(ReportItem("lemma_zz.congruence", 2, ok, [P.format(c1)], time.perf_counter() - t0))
    return items


# --- the identity suite -----------------------------------------------------

@dataclass
class ReportItem:
    name: str
    d: int
    passed: bool
    witnesses: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    detail: str = ""


@dataclass
class GoldenReport:
    items: list[ReportItem]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> list[ReportItem]:
        return [item for item in self.items if not item.passed]


def _timed(name, d, fn):
    t0 = time.perf_counter()
    try:
        ok, witnesses, detail = fn()
    except VerificationError as exc:
        ok, witnesses, detail = False, [], str(exc)
    return ReportItem(name, d, bool(ok), witnesses, time.perf_counter() - t0, detail)


def paper_identity_suite(d: int, P: Presentation | None = None) -> GoldenReport:
    P = P or build_m(d)
    fmt = P.format
    ident = Permutation.identity(d)
    items: list[ReportItem] = []

    def generator_table():
        for i in range(1, d + 1):
            secs, root = P.decompose(gen(i))
            if i < d:
                k = d + 1 - i
                want = [IDENTITY] * d
                want[k - 1] = gen(i)
                want_root = Permutation.from_cycles(d, [tuple(range(1, k + 1))])
            else:
                want = [gen(g) for g in range(1, d + 1)]
                want_root = ident
            if list(secs) != want or root != want_root:
                return False, [f"m{i}"], "generator table mismatch"
        return True, list(P.names), ""

    items.append(_timed("generators.table", d, generator_table))

    def diagonal():
        w = gen(1) ** d
        return sections_match(P, w, [gen(1)] * d, ident), [fmt(w)], ""

    items.append(_timed("fractal.m1_power_diagonal", d, diagonal))

    def fractal_list():
        ws = fractal_witnesses(d)
        bad = [
            fmt(w)
            for w, target in ws
            if not (P.stabilizes_level(w, 1) and are_equal(P, P.section(w, d), target) is True)
        ]
        return not bad, [f"{fmt(w)} -> {fmt(t)}" for w, t in ws], ", ".join(bad)

    items.append(_timed("fractal.witness_last_sections", d, fractal_list))

    def self_section_display():
        w = gen(d).conj(gen(1))
        return are_equal(P, P.section(w, 1), w) is True, [fmt(w)], ""

    items.append(_timed("fractal.md_conj_m1_first_section", d, self_section_display))

    def fractality():
        ok = analysis.fractality_check(P, fractal_witnesses(d), d)
        return ok, [], "first-level criterion"

    items.append(_timed("fractal.first_level_criterion", d, fractality))

    c12 = commutator(gen(1), gen(2))
    if d == 2:
        def comm_d2():
            want = [P.word("m1^-1*m2^-1*m1^2"), P.word("m1^-1*m2")]
            return sections_match(P, c12, want, ident), [fmt(c12)], ""

        items.append(_timed("branch.commutator_decomposition", d, comm_d2))

        def m1sq():
            w = commutator(gen(1) ** 2, gen(2))
            return sections_match(P, w, [IDENTITY, c12], ident), [fmt(w)], ""

        items.append(_timed("branch.m1_squared_m2", d, m1sq))
    else:
        def comm_root():
            r = commutator_root(d)
            want = Permutation.from_cycles(d, [(1, 2, d)])
            return r == want and P.root_perm(c12) == want, [str(r)], ""

        items.append(_timed("branch.commutator_root_perm", d, comm_root))

        def comm_dd():
            want = [IDENTITY] * d
            want[1] = ~gen(2)
            want[d - 1] = gen(2)
            root = Permutation.from_cycles(d, [(1, 2, d)])
            return sections_match(P, c12, want, root), [fmt(c12)], ""

        items.append(_timed("branch.commutator_decomposition", d, comm_dd))

        for i in range(1, d):
            def inter(i=i):
                w = intermediate_commutator_vector(d, i, P)
                return True, [fmt(w)], ""

            items.append(_timed(f"branch.intermediate_vector.i{i}", d, inter))

    for i in range(1, d):
        for j in range(i + 1, d + 1):
            def bw(i=i, j=j):
                w = branch_witness(d, i, j, P)
                return True, [fmt(w)], ""

            items.append(_timed(f"branch.witness.{i}.{j}", d, bw))

    if d >= 3:
        def order3():
            cube = is_identity(P, c12**3) is True
            res = order_bounded(P, c12, 64, certify=False)
            return cube and res.kind == "Finite" and res.n == 3, [fmt(c12)], str(res)

        items.append(_timed("order.commutator_order_3", d, order3))

    for i in range(1, d + 1):
        def inf(i=i):
            cert = infinite_order_certificate(P, gen(i))
            if cert is None:
                return False, [f"m{i}"], "no certificate"
            want = "PowerSectionDescent" if i < d else "SectionDominance"
            return cert.rule == want, [f"m{i}"], str(cert)

        items.append(_timed(f"order.infinite.m{i}", d, inf))

    if d == 2:
        items.extend(lemma_zz_identity_check(P))

        def rho():
            w = commutator(gen(1) ** 2, gen(2))
            return rho_check_d2(P, w), [fmt(w)], ""

        items.append(_timed("lemma_zz.rho_m1_squared_m2", d, rho))

    def noncontracting():
        w = gen(d).conj(gen(1))
        cert = analysis.non_contraction_certificate(P, w, 20)
        if cert is None:
            return False, [fmt(w)], "not found"
        return True, [fmt(w)], f"vertex {format_vertex(cert.self_section_vertex)}, {cert.infinite_order}"

    items.append(_timed("noncontracting.md_conj_m1", d, noncontracting))

    items.sort(key=lambda it: it.name)
    return GoldenReport(items)
