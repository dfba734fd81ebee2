"""Seeded invariant suites runnable without a test harness."""

from __future__ import annotations

import random
import time
from typing import Callable, List

from . import corpus
from .presentation import Word
from .words import (
    brute_force_equal,
    canonical_form,
    conjugate,
    element_of,
    invert,
    is_reduced_key,
    iter_ball,
    key_of_word,
    multiply,
    reduce,
    shape,
)
from .cyclic import cyclically_reduce, is_cyclically_reduced, ps_decompose
from .conjugacy import are_conjugate, conjugacy_class_in_ball
from .amalgam import amalgam_form, amalgam_form_of_word, centralizer_check, decompose_at
from .parabolic import (
    centralizer_structure_check,
    full_parabolic,
    maximal_full_avoiding,
    normalizer_membership,
    parabolic_closure_of_cyclic,
    parabolic_generators,
    parabolic_membership,
)
from .separability import ALL_FINITE, conjugacy_witness, p_group_mode, residual_witness, shape_preserving_family


class SelfTestFailure(AssertionError):
    pass


def _ensure(ok: bool, message: str) -> None:
    if not ok:
        raise SelfTestFailure(message)


def _suite_normal_forms(seed: int) -> str:
    rng = random.Random(seed)
    pairs_checked = 0
    for name, pres in corpus.corpus_presentations().items():
        words = corpus.random_words(pres, 100, 8, seed=rng.randrange(1 << 30))
        for w in words:
            e = reduce(pres, w)
            _ensure(len(e) <= len(w), f"{name}: reduction grew a word")
            _ensure(reduce(pres, e.word()) == e, f"{name}: reduction not idempotent")
            _ensure(is_reduced_key(pres, e.key), f"{name}: reduced form not reduced")
            if len(w) <= 6:
                empty = brute_force_equal(pres, w, Word(()), 100_000)
                _ensure(empty == e.is_identity, f"{name}: triviality oracle disagrees")
        for _ in range(40):
            w1, w2 = rng.choice(words), rng.choice(words)
            if len(w1) + len(w2) > 10:
                continue
            agrees = brute_force_equal(pres, w1, w2, 100_000)
            _ensure(
                agrees == (reduce(pres, w1) == reduce(pres, w2)),
                f"{name}: equality oracle disagrees on a random pair",
            )
            pairs_checked += 1
    return f"equality vs rewriting closure on random pairs ({pairs_checked} pairs)"


def _suite_confluence(seed: int) -> str:
    rng = random.Random(seed)
    checked = 0
    for name, pres in corpus.corpus_presentations().items():
        for w in corpus.random_words(pres, 60, 8, seed=rng.randrange(1 << 30)):
            key = list(key_of_word(pres, w))
            # random-strategy reduction: join random joinable pairs until reduced
            while True:
                key = [s for s in key if not pres.by_index[s[0]].is_identity(s[1])]
                joinable = []
                for i in range(len(key)):
                    link = pres.iadj[key[i][0]]
                    for j in range(i + 1, len(key)):
                        if key[j][0] == key[i][0]:
                            joinable.append((i, j))
                            break
                        if key[j][0] not in link:
                            break
                if not joinable:
                    break
                i, j = rng.choice(joinable)
                vi = key[i][0]
                merged = pres.by_index[vi].mul(key[i][1], key[j][1])
                del key[j]
                key[i] = (vi, merged)
            survivors = Word(tuple(pres.decode_syllable(vi, val) for vi, val in key))
            _ensure(
                canonical_form(pres, survivors) == reduce(pres, w).word(),
                f"{name}: random-strategy reduction missed the canonical form",
            )
            checked += 1
    return f"random-strategy reduction confluence ({checked} words)"


def _suite_conjugacy(seed: int) -> str:
    rng = random.Random(seed)
    checked = 0
    for name, pres in corpus.corpus_presentations().items():
        elements = corpus.corpus_elements(pres, max_len=3)
        sample = [elements[rng.randrange(len(elements))] for _ in range(10)]
        radius = 3
        for x in sample:
            reachable = conjugacy_class_in_ball(x, radius)
            for y in sample:
                verdict = are_conjugate(x, y)
                if verdict.conjugate:
                    _ensure(conjugate(verdict.conjugator, x) == y, f"{name}: bad conjugator")
                if y in reachable:
                    _ensure(verdict.conjugate, f"{name}: oracle found a conjugator, criterion says no")
                checked += 1
    return f"conjugacy criterion vs ball oracle ({checked} ordered pairs)"


def _suite_cyclic(seed: int) -> str:
    rng = random.Random(seed)
    checked = 0
    for name, pres in corpus.corpus_presentations().items():
        for w in corpus.random_words(pres, 80, 7, seed=rng.randrange(1 << 30)):
            g = reduce(pres, w)
            r = cyclically_reduce(g)
            _ensure(is_cyclically_reduced(r.reduced), f"{name}: cyclic reduction incomplete")
            _ensure(conjugate(r.conjugator, r.reduced) == g, f"{name}: cyclic conjugator broken")
            _ensure(len(r.reduced) <= len(g), f"{name}: cyclic reduction grew")
            ps = ps_decompose(g)
            _ensure(multiply(ps.s_part, ps.p_part) == g, f"{name}: S/P parts do not multiply back")
            report = shape(g)
            crit = not (report.first_letters & report.last_letters) - ps.s_vertices
            _ensure(crit == is_cyclically_reduced(g), f"{name}: cyclic criterion mismatch")
            checked += 1
    return f"cyclic reduction contracts ({checked} elements)"


def _suite_consonants(seed: int) -> str:
    rng = random.Random(seed)
    checked = 0
    for name, pres in corpus.corpus_presentations().items():
        if len(pres.vertices) < 2:
            continue
        views = [decompose_at(pres, v) for v in pres.vertices]
        for w in corpus.random_words(pres, 60, 7, seed=rng.randrange(1 << 30)):
            variant = corpus.shuffled_variant(pres, w, rng)
            for view in views:
                f1 = amalgam_form_of_word(view, w)
                f2 = amalgam_form_of_word(view, variant)
                _ensure(f1.consonants == f2.consonants, f"{name}: consonants changed under shuffling")
                f3 = amalgam_form(view, reduce(pres, w))
                _ensure(f1.consonants == f3.consonants, f"{name}: consonants depend on the expression")
            checked += 1
    return f"consonant invariance under shuffling ({checked} word pairs)"


def _suite_centralizers(seed: int) -> str:
    reports = 0
    for config in (corpus.PATH_RACG, corpus.PATH_C3_END, corpus.PATH_C3_MID):
        pres = corpus.build(config)
        view = decompose_at(pres, "c")
        for text in ("c[1] b[1]", "c[1] a[1]"):
            rep = centralizer_check(view, element_of(pres, text), 3)
            _ensure(rep.ok, f"centralizer factorization failed for {text}")
            reports += 1
        for text in ("c[1]", "a[1] c[1]"):
            rep2 = centralizer_structure_check(element_of(pres, text), 3)
            _ensure(rep2.ok, f"centralizer split failed for {text}")
            reports += 1
    return f"centralizer formulas on radius-3 balls ({reports} checks)"


def _suite_parabolics(seed: int) -> str:
    rng = random.Random(seed)
    checked = 0
    for name, pres in corpus.corpus_presentations().items():
        elements = corpus.corpus_elements(pres, max_len=3)
        sample = [e for e in elements if not e.is_identity]
        rng.shuffle(sample)
        for g in sample[:6]:
            closure = parabolic_closure_of_cyclic(g)
            _ensure(parabolic_membership(closure, g), f"{name}: closure misses its element")
            avoiding = maximal_full_avoiding(g)
            _ensure(avoiding.consonant_length >= 1, f"{name}: avoidance certificate empty")
            checked += 1
        for core_size in (1, 2):
            vertices = list(pres.vertices)[:core_size]
            p = full_parabolic(pres, vertices)
            for u in iter_ball(pres, 2, window=2):
                formula = normalizer_membership(p, u)
                direct = all(
                    parabolic_membership(p, conjugate(u, gen))
                    and parabolic_membership(p, conjugate(invert(u), gen))
                    for gen in parabolic_generators(p)
                )
                _ensure(formula == direct, f"{name}: normalizer formula vs ball mismatch")
                checked += 1
    return f"parabolic closures and normalizers ({checked} checks)"


def _suite_witnesses(seed: int) -> str:
    rng = random.Random(seed)
    built = 0
    for name, pres in corpus.corpus_presentations().items():
        elements = corpus.corpus_elements(pres, max_len=3)
        rng.shuffle(elements)
        nontrivial = [e for e in elements if not e.is_identity]
        for g in nontrivial[:4]:
            _ensure(residual_witness(g).verify(), f"{name}: residual witness failed")
            built += 1
        pairs = 0
        for x in elements[:8]:
            for y in elements[:8]:
                if pairs >= 6:
                    break
                if are_conjugate(x, y).conjugate:
                    continue
                _ensure(conjugacy_witness(x, y).verify(), f"{name}: conjugacy witness failed")
                pairs += 1
                built += 1
    z1 = corpus.build({"vertices": [{"name": "x", "group": "Z"}], "edges": []})
    fam = shape_preserving_family([element_of(z1, "x[1]"), element_of(z1, "x[2]")], ALL_FINITE)
    _ensure(fam.moduli == {"x": 3}, "modulus selection drifted for {x, x^2}")
    fam2 = shape_preserving_family([element_of(z1, "x[6]")], p_group_mode(2))
    _ensure(fam2.moduli == {"x": 4}, "modulus selection drifted for x^6 in 2-group mode")
    return f"separation witnesses re-verified ({built} witnesses)"


SUITES: List[Callable[[int], str]] = [
    _suite_normal_forms,
    _suite_confluence,
    _suite_conjugacy,
    _suite_cyclic,
    _suite_consonants,
    _suite_centralizers,
    _suite_parabolics,
    _suite_witnesses,
]


def run_selftest(seed: int = 0, out=None) -> int:
    """Run every suite; print one line per suite; 0 on success."""
    import sys

    out = out or sys.stdout
    failures = 0
    for suite in SUITES:
        name = suite.__name__.removeprefix("_suite_")
        start = time.perf_counter()
        try:
            detail = suite(seed)
            elapsed = time.perf_counter() - start
            print(f"ok {name}: {detail} [{elapsed:.1f}s]", file=out)
        except SelfTestFailure as exc:
            failures += 1
            print(f"FAIL {name}: {exc}", file=out)
    print(("selftest passed" if not failures else f"selftest failed ({failures} suites)"), file=out)
    return 0 if failures == 0 else 1
