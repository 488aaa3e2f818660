import random

import pytest
from hypothesis import given, settings

from arbora.decision import are_equal
from arbora.mfamily import build_m
from arbora.perm import Permutation
from arbora.words import IDENTITY
from arbora.wreath import (
    PresentationError,
    dump_presentation,
    level_vertices,
    load_presentation,
    parse_vertex,
)

from conftest import random_word, words

M3_FILE = """\
degree 3
gen m1 = (1, 1, m1) (1 2 3)
gen m2 = (1, m2, 1) (1 2)
gen m3 = (m1, m2, m3) ()
"""


def act_via_portrait(P, w, v):
    """Independent route: read the image off the portrait labels."""
    p = P.portrait(w, len(v))
    out = []
    node = p
    for x in v:
        out.append(node.root_label(x))
        node = node.children[x - 1]
    return tuple(out)


def test_load_m3_file():
    P = load_presentation(M3_FILE)
    assert P.names == ("m1", "m2", "m3")
    assert P.root_perm(P.word("m1")) == Permutation.parse("(1 2 3)", 3)
    assert P.letter_bounded
    assert dump_presentation(P) == dump_presentation(build_m(3))


def test_load_errors():
    with pytest.raises(PresentationError, match="expected 3"):
        load_presentation("degree 3\ngen a = (a, 1) (1 2)\n")
    with pytest.raises(PresentationError, match="unknown generator"):
        load_presentation("degree 2\ngen a = (b, 1) (1 2)\n")
    with pytest.raises(PresentationError):
        load_presentation("degree 2\ngen a = (a, 1) (1 3)\n")
    with pytest.raises(PresentationError, match="degree"):
        load_presentation("degree 1\ngen a = (a) ()\n")
    with pytest.raises(PresentationError, match="missing"):
        load_presentation("gen a = (a, 1) (1 2)\n")


def test_letter_bounded_flag():
    P = load_presentation("degree 2\ngen a = (a*a, 1) (1 2)\ngen b = ([a,b], b) ()\n")
    assert not P.letter_bounded
    assert P.section(P.word("b"), 1) == P.word("[a,b]")


def test_root_perm(M3):
    assert str(M3.root_perm(M3.word("m1"))) == "(1 2 3)"
    assert M3.root_perm(M3.word("m3")).is_identity()
    assert str(M3.root_perm(M3.word("[m1,m2]"))) == "(1 2 3)"


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_sections_of_md_and_m1_power(d):
    P = build_m(d)
    md, m1 = P.generators()[-1], P.generators()[0]
    assert P.sections(md) == P.generators()
    assert P.sections(m1**d) == [m1] * d
    assert P.sections(IDENTITY) == [IDENTITY] * d


def test_section_at(M2, M3):
    w = M3.word("m3^(m1)")
    assert are_equal(M3, M3.section_at(w, (1,)), w)
    assert M3.section_at(w, ()) == w
    assert M2.section_at(M2.word("m2"), (2, 2)) == M2.word("m2")
    with pytest.raises(ValueError):
        M2.section_at(w, (3,))


def test_act_examples(M3):
    m1 = M3.word("m1")
    assert M3.act(m1, (1,)) == (2,)
    assert M3.act(m1, (3, 1)) == (1, 2) == act_via_portrait(M3, m1, (3, 1))
    assert M3.act(IDENTITY, (2, 3, 1)) == (2, 3, 1)


def test_decompose_examples(M2):
    secs, root = M2.decompose(M2.word("[m1,m2]"))
    assert secs == [M2.word("m1^-1*m2^-1*m1^2"), M2.word("m1^-1*m2")]
    assert root.is_identity()


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_commutator_decomposition(d):
    P = build_m(d)
    secs, root = P.decompose(P.word("[m1,m2]"))
    want = [IDENTITY] * d
    want[1], want[-1] = P.word("m2^-1"), P.word("m2")
    assert secs == want
    assert root == Permutation.from_cycles(d, [(1, 2, d)])


def test_portrait(M3):
    p = M3.portrait(M3.word("m1"), 1)
    assert str(p.root_label) == "(1 2 3)"
    assert [str(c.root_label) for c in p.children] == ["()", "()", "(1 2 3)"]
    assert M3.portrait(M3.word("m3"), 1).root_label.is_identity()
    assert M3.portrait(IDENTITY, 3).is_trivial()
    assert M3.portrait(M3.word("m1"), 0).children == ()
    with pytest.raises(ValueError):
        M3.portrait(IDENTITY, 17)


def test_portrait_depth_limit_env(M3, monkeypatch):
    monkeypatch.setenv("ARBORA_MAX_DEPTH", "2")
    with pytest.raises(ValueError):
        M3.portrait(IDENTITY, 3)


def test_stabilizes_level(M2, M3):
    assert M2.stabilizes_level(M2.word("[m1,m2]"), 1)
    assert not M3.stabilizes_level(M3.word("m1"), 1)
    assert M3.stabilizes_level(IDENTITY, 5)
    assert M3.stabilizes_level(M3.word("m1^3"), 1)
    assert not M3.stabilizes_level(M3.word("m1^3"), 2)


def test_parse_vertex():
    assert parse_vertex("1.2.3", 3) == (1, 2, 3)
    assert parse_vertex("123", 3) == (1, 2, 3)
    assert parse_vertex("10.2", 12) == (10, 2)
    assert parse_vertex("", 3) == ()
    with pytest.raises(ValueError):
        parse_vertex("4", 3)


@settings(max_examples=200)
@given(words(3, 8), words(3, 8))
def test_homomorphism_law(u, v):
    P = build_m(3)
    su, sv, suv = P.sections(u), P.sections(v), P.sections(u * v)
    for i in range(1, 4):
        j = P.act(u, (i,))[0]
        assert suv[i - 1] == su[i - 1] * sv[j - 1]
    assert P.root_perm(u * v) == P.root_perm(u) * P.root_perm(v)


def test_act_is_level_bijection_and_prefix_preserving(M):
    rng = random.Random(7)
    for _ in range(30):
        w = random_word(rng, M.ngens, 8)
        verts = list(level_vertices(M.degree, 3))
        images = [M.act(w, v) for v in verts]
        assert len(set(images)) == len(verts)
        for v, img in zip(verts, images):
            assert M.act(w, v[:2]) == img[:2]
            assert img == act_via_portrait(M, w, v)
