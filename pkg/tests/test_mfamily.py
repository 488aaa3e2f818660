import random

import pytest

from arbora.decision import are_equal
from arbora.mfamily import (
    IDENTITY,
    abelianization_exponents,
    branch_witness,
    build_m,
    derived_membership_d2,
    fractal_witnesses,
    gen,
    intermediate_commutator_vector,
    lemma_zz_displays,
    lemma_zz_identity_check,
    paper_identity_suite,
    rho_check_d2,
    sections_match,
    x_witness,
)
from arbora.perm import Permutation
from arbora.words import Word, commutator

from conftest import random_word


def test_build_m3():
    P = build_m(3)
    m1, m2, m3 = P.generators()
    assert P.decompose(m1) == ([IDENTITY, IDENTITY, m1], Permutation.parse("(1 2 3)", 3))
    assert P.decompose(m2) == ([IDENTITY, m2, IDENTITY], Permutation.parse("(1 2)", 3))
    assert P.decompose(m3) == ([m1, m2, m3], Permutation.identity(3))


def test_build_m2():
    P = build_m(2)
    m1, m2 = P.generators()
    assert P.decompose(m1) == ([IDENTITY, m1], Permutation.parse("(1 2)", 2))
    assert P.decompose(m2) == ([m1, m2], Permutation.identity(2))


def test_build_m_rejects_small_degree():
    with pytest.raises(ValueError):
        build_m(1)


def test_m3_conj_m1_sections():
    # by hand: m1^-1 m3 m1 = (m3^m1, m1, m2)
    P = build_m(3)
    w = P.word("m3^(m1)")
    assert sections_match(P, w, [w, P.word("m1"), P.word("m2")], Permutation.identity(3))


@pytest.mark.parametrize("d", range(2, 8))
def test_fractal_targets_cover_generators_once(d):
    ws = fractal_witnesses(d)
    assert sorted(t for _, t in ws) == sorted(Word.gen(g) for g in range(d))
    P = build_m(d)
    for w, target in ws:
        assert P.stabilizes_level(w, 1)
        assert are_equal(P, P.section(w, d), target)


@pytest.mark.parametrize("d", range(2, 7))
def test_branch_witnesses(d):
    P = build_m(d)
    for i in range(1, d):
        for j in range(i + 1, d + 1):
            w = branch_witness(d, i, j, P)
            secs, root = P.decompose(w)
            assert root.is_identity()
            assert all(are_equal(P, s, IDENTITY) for s in secs[:-1])
            assert are_equal(P, secs[-1], commutator(gen(i), gen(j)))
            assert abelianization_exponents(P, w) == (0,) * d


def test_branch_witness_examples():
    assert branch_witness(2, 1, 2) == commutator(gen(1) ** 2, gen(2))
    assert branch_witness(3, 1, 2) == commutator(gen(1) ** 3, gen(2)).conj(gen(1) ** 2)
    assert branch_witness(4, 2, 4) == x_witness(4, 2)
    with pytest.raises(ValueError):
        branch_witness(3, 2, 2)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_perturbed_witness_fails(d):
    P = build_m(d)
    w = x_witness(d, 2)
    target = [IDENTITY] * (d - 1) + [commutator(gen(2), gen(d))]
    for k in range(len(w)):
        bad = Word(w[:k] + (-w[k],) + w[k + 1 :])
        assert not sections_match(P, bad, target, Permutation.identity(d))


def test_intermediate_vectors():
    P3, P4 = build_m(3), build_m(4)
    w = intermediate_commutator_vector(3, 2, P3)
    assert sections_match(P3, w, [IDENTITY, IDENTITY, commutator(gen(2), gen(3))])
    w = intermediate_commutator_vector(4, 2, P4)
    want = [IDENTITY, IDENTITY, commutator(gen(2), gen(3)), commutator(gen(2), gen(4))]
    assert sections_match(P4, w, want)
    w = intermediate_commutator_vector(3, 1, P3)
    want = [IDENTITY, commutator(gen(1), gen(2)), commutator(gen(1), gen(3))]
    assert sections_match(P3, w, want)
    with pytest.raises(ValueError):
        intermediate_commutator_vector(2, 1)


def test_exponents(M2):
    assert abelianization_exponents(M2, M2.word("[m1,m2]")) == (0, 0)
    assert abelianization_exponents(M2, M2.word("m1^2*m2")) == (2, 1)
    assert abelianization_exponents(M2, M2.word("m1^-1*m2")) == (-1, 1)
    assert not derived_membership_d2(M2, M2.word("m1^-1*m2"))


def test_derived_membership_d2(M2, M3):
    assert derived_membership_d2(M2, M2.word("[m1,m2]^(m2)"))
    assert not derived_membership_d2(M2, M2.word("m1^2"))
    assert derived_membership_d2(M2, IDENTITY)
    with pytest.raises(ValueError):
        derived_membership_d2(M3, IDENTITY)


def test_membership_constant_on_conjugacy_classes(M2):
    rng = random.Random(5)
    for _ in range(200):
        w, y = random_word(rng, 2, 8), random_word(rng, 2, 6)
        assert derived_membership_d2(M2, w) == derived_membership_d2(M2, w.conj(y))


def test_rho_examples(M2):
    assert rho_check_d2(M2, M2.word("[m1^2,m2]"))
    assert rho_check_d2(M2, M2.word("m2"))
    with pytest.raises(ValueError):
        rho_check_d2(M2, M2.word("m1"))


def test_lemma_zz_displays_pass():
    items = lemma_zz_identity_check()
    assert [it.passed for it in items] == [True] * len(items)
    assert {it.name for it in items} >= {"lemma_zz.commutator", "lemma_zz.conjugate", "lemma_zz.congruence"}


def test_lemma_zz_negative_control(M2):
    perturbed = []
    for name, lhs, secs, root in lemma_zz_displays(M2):
        secs = [~secs[0], secs[1]]
        perturbed.append((name, lhs, secs, root))
    items = lemma_zz_identity_check(M2, perturbed)
    assert not any(it.passed for it in items[:-1])


@pytest.mark.parametrize("d", [2, 3, 4])
def test_suite_passes_and_is_sorted(d):
    report = paper_identity_suite(d)
    assert report.passed, [(f.name, f.detail) for f in report.failures()]
    names = [it.name for it in report.items]
    assert names == sorted(names)
    if d >= 3:
        assert "order.commutator_order_3" in names
    else:
        assert "lemma_zz.congruence" in names
