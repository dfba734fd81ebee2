import random

import pytest
from hypothesis import given, settings, strategies as st

from graphprod import corpus
from graphprod.presentation import PresentationError, Word
from graphprod.words import element_of, multiply, reduce, shape
from graphprod.cyclic import is_cyclically_reduced
from graphprod.conjugacy import are_conjugate
from graphprod.separability import (
    ALL_FINITE,
    QuotientFamily,
    apply_quotient,
    conjugacy_witness,
    p_group_mode,
    parse_mode,
    residual_witness,
    retraction,
    shape_preserving_family,
)

PRESENTATIONS = corpus.corpus_presentations()


def words_strategy(pres, max_len=5):
    alphabet = corpus.syllable_alphabet(pres, 2)
    return st.lists(st.sampled_from(alphabet), max_size=max_len).map(lambda s: Word(tuple(s)))


def test_apply_quotient_examples(single_z, path_racg):
    fam = QuotientFamily(single_z, {"x": 4}, ALL_FINITE)
    assert apply_quotient(fam, element_of(single_z, "x[6]")).render() == "x[2]"
    assert apply_quotient(fam, element_of(single_z, "x[4]")).is_identity

    keep = QuotientFamily(path_racg, {v: 2 for v in "abc"}, ALL_FINITE)
    e = element_of(path_racg, "a[1] c[1] a[1]")
    assert apply_quotient(keep, e).render() == e.render()


def test_family_validation(single_z, triangle_mixed):
    with pytest.raises(PresentationError):
        QuotientFamily(single_z, {"x": 0}, ALL_FINITE)
    with pytest.raises(PresentationError):
        QuotientFamily(single_z, {}, ALL_FINITE)
    with pytest.raises(PresentationError, match="power"):
        QuotientFamily(single_z, {"x": 6}, p_group_mode(2))
    # the C3 table-free vertex survives only in compatible modes
    moduli = {"u": None, "v": 3, "w": 4}
    QuotientFamily(triangle_mixed, moduli, ALL_FINITE)
    with pytest.raises(PresentationError):
        QuotientFamily(triangle_mixed, {"u": None, "v": 3, "w": 3}, ALL_FINITE)


def test_shape_preserving_examples(single_z, path_racg):
    fam = shape_preserving_family(
        [element_of(single_z, "x[1]"), element_of(single_z, "x[2]")], ALL_FINITE
    )
    assert fam.moduli == {"x": 3}

    fam2 = shape_preserving_family([element_of(single_z, "x[6]")], p_group_mode(2))
    assert fam2.moduli == {"x": 4}

    racg = shape_preserving_family([element_of(path_racg, "a[1] b[1] c[1]")], ALL_FINITE)
    assert racg.moduli == {"a": 2, "b": 2, "c": 2}
    racg2 = shape_preserving_family([element_of(path_racg, "a[1] b[1] c[1]")], p_group_mode(2))
    assert racg2.moduli == {"a": 2, "b": 2, "c": 2}


def test_residual_witness_examples(path_racg, single_z, free_zz):
    w = residual_witness(element_of(path_racg, "a[1] c[1] a[1]"))
    assert w.verify() and w.certificate_tag == "nontrivial-image"
    assert w.family.moduli == {"a": 2, "b": 2, "c": 2}

    w2 = residual_witness(element_of(single_z, "x[6]"), p_group_mode(2))
    assert w2.verify() and w2.family.moduli == {"x": 4}
    assert w2.images[0].render() == "x[2]"

    w3 = residual_witness(element_of(free_zz, "x[1] y[1]"), ALL_FINITE)
    assert w3.verify() and not w3.images[0].is_identity

    with pytest.raises(ValueError):
        residual_witness(reduce(path_racg, Word(())))


def test_conjugacy_witness_examples(single_z, path_racg, free_zz):
    w = conjugacy_witness(element_of(single_z, "x[1]"), element_of(single_z, "x[2]"), ALL_FINITE)
    assert w.verify()
    assert w.family.moduli == {"x": 3}
    assert w.certificate_tag == "s-part-not-conjugate"

    w2 = conjugacy_witness(element_of(path_racg, "a[1] c[1]"), element_of(path_racg, "b[1]"))
    assert w2.verify() and w2.certificate_tag == "support-mismatch"

    f = element_of(free_zz, "x[1] y[1] x[-1] y[-1]")
    g = element_of(free_zz, "x[2] y[2] x[-2] y[-2]")
    w3 = conjugacy_witness(f, g, p_group_mode(3))
    assert w3.verify()
    for m in w3.family.moduli.values():
        k = m
        while k % 3 == 0:
            k //= 3
        assert k == 1

    with pytest.raises(ValueError, match="conjugate"):
        conjugacy_witness(element_of(path_racg, "a[1] c[1]"), element_of(path_racg, "c[1] a[1]"))


def test_witness_serialization_is_stable(single_z):
    w = conjugacy_witness(element_of(single_z, "x[1]"), element_of(single_z, "x[2]"), p_group_mode(2))
    assert w.to_json() == (
        '{"certificate_tag": "s-part-not-conjugate", "images": ["x[1]", "x[2]"], '
        '"mode": "p:2", "per_vertex_moduli": {"x": 4}}'
    )
    assert parse_mode("p:2") == p_group_mode(2)
    assert parse_mode("finite") == ALL_FINITE
    with pytest.raises(ValueError):
        parse_mode("prime:2")


def test_retraction_examples(path_racg):
    e = element_of(path_racg, "a[1] c[1] b[1]")
    assert retraction(path_racg, {"a", "b"}, e).render() == "a[1] b[1]"
    assert retraction(path_racg, set(), e).is_identity
    assert retraction(path_racg, e.support(), e) == e


@given(data=st.data())
@settings(max_examples=100, deadline=None)
def test_retraction_is_idempotent_homomorphism(data):
    pres = PRESENTATIONS[data.draw(st.sampled_from(sorted(PRESENTATIONS)))]
    sub = data.draw(st.sets(st.sampled_from(sorted(pres.vertices))))
    a = reduce(pres, data.draw(words_strategy(pres)))
    b = reduce(pres, data.draw(words_strategy(pres)))
    ra = retraction(pres, sub, a)
    assert retraction(pres, sub, ra) == ra
    assert retraction(pres, sub, multiply(a, b)) == multiply(ra, retraction(pres, sub, b))


@given(data=st.data())
@settings(max_examples=100, deadline=None)
def test_quotient_homomorphism_law(data):
    pres = PRESENTATIONS[data.draw(st.sampled_from(sorted(PRESENTATIONS)))]
    a = reduce(pres, data.draw(words_strategy(pres)))
    b = reduce(pres, data.draw(words_strategy(pres)))
    nontrivial = [e for e in (a, b, multiply(a, b)) if not e.is_identity]
    if not nontrivial:
        return
    fam = shape_preserving_family(nontrivial, ALL_FINITE)
    assert apply_quotient(fam, multiply(a, b)) == multiply(apply_quotient(fam, a), apply_quotient(fam, b))


@given(data=st.data())
@settings(max_examples=100, deadline=None)
def test_shape_preservation(data):
    pres = PRESENTATIONS[data.draw(st.sampled_from(sorted(PRESENTATIONS)))]
    elements = [reduce(pres, data.draw(words_strategy(pres))) for _ in range(2)]
    fam = shape_preserving_family(elements, ALL_FINITE)
    for e in elements:
        image = apply_quotient(fam, e)
        assert len(image) == len(e)
        assert image.support() == e.support()
        assert shape(image).first_letters == shape(e).first_letters
        if is_cyclically_reduced(e):
            assert is_cyclically_reduced(image)
    if elements[0] != elements[1]:
        assert apply_quotient(fam, elements[0]) != apply_quotient(fam, elements[1])


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_witness_soundness_random(name):
    pres = PRESENTATIONS[name]
    rng = random.Random(29)
    elements = corpus.corpus_elements(pres, max_len=3)
    sample = sorted({elements[rng.randrange(len(elements))] for _ in range(10)})
    modes = [ALL_FINITE]
    if name in ("free-zz", "edge-zz"):
        modes += [p_group_mode(2), p_group_mode(3)]
    elif name in ("path-racg", "star-racg"):
        modes.append(p_group_mode(2))
    for mode in modes:
        for x in sample:
            if not x.is_identity:
                assert residual_witness(x, mode).verify()
        built = 0
        for x in sample:
            for y in sample:
                if built >= 8:
                    break
                if not are_conjugate(x, y).conjugate:
                    w = conjugacy_witness(x, y, mode)
                    assert w.verify()
                    if mode.is_p_mode:
                        for m in w.family.moduli.values():
                            if m is None:
                                continue
                            k = m
                            while k % mode.p == 0:
                                k //= mode.p
                            assert k == 1
                    built += 1
