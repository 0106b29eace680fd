import random
from itertools import product

import pytest

from heiscat import oracle
from heiscat.diagrams import elementary, identity_diagram, restricted_basis
from heiscat.engine import (
    CompositionTypeError, Morphism, MorphismMatrix, NonRestrictedInput, SumObject, compose, decompose_object, glue,
    hcompose, heisenberg_iso, homs, matrix_compose, reduce,
)
from heiscat.words import Simple, all_words
from heiscat.weyl import multiplicities

G = Morphism.generator
t, tp, c, dp = (elementary("", g, "") for g in ("t", "t'", "c", "d'"))
turnback = Morphism(
    "du", "du", {d: 1 for d in restricted_basis("du", "du") if d != identity_diagram("du")})


def test_glue_examples():
    assert [s.closed for s in glue(c, dp).strings] == [False, False]
    tt = glue(t, tp)
    assert len(tt.strings) == 2 and all(len(s.segments) == 2 for s in tt.strings)
    bubble = glue(dp, c)
    assert len(bubble.strings) == 1 and bubble.strings[0].closed


def test_reduce_examples():
    assert reduce(glue(t, tp)) == Morphism.identity("du") - turnback
    assert reduce(glue(tp, t)) == Morphism.identity("ud")
    assert reduce(glue(dp, c)) == Morphism.identity("")
    assert reduce(glue(tp, c)).is_zero()
    assert reduce(glue(tp, c)).target == "ud"


def test_compose_examples():
    f = compose(G("t"), G("t'"))
    assert compose(Morphism.identity("du"), f) == f
    assert compose(f, f) == f
    assert compose(G("c"), G("d'")) == turnback


def test_hcompose_examples():
    assert hcompose(Morphism.identity("u"), G("t")) == G("t", left="u")
    assert hcompose(Morphism.identity(""), G("t")) == G("t")
    cc = hcompose(G("c"), G("c"))
    (d, k), = cc.items()
    assert k == 1 and d.target == "dudu"
    assert [(a.i, b.i) for a, b in d.matching.pairs] == [(4, 3), (2, 1)]


def test_non_restricted_input_rejected():
    with pytest.raises(NonRestrictedInput):
        compose(Morphism.of(elementary("", "s", "")), Morphism.identity("uu"))
    with pytest.raises(CompositionTypeError):
        compose(G("t"), G("c"))


def test_heisenberg_iso_round_trips():
    fwd, bwd = heisenberg_iso()
    assert matrix_compose(fwd, bwd) == MorphismMatrix.identity(SumObject(["du"]))
    assert matrix_compose(bwd, fwd) == MorphismMatrix.identity(SumObject(["ud", ""]))


@pytest.mark.parametrize("left, right", [(a, b) for a in all_words(2) for b in all_words(2) if len(a + b) <= 2])
def test_tensored_iso_round_trips(left, right):
    fwd, bwd = heisenberg_iso()

    def tensor(mat, l, r):
        rows = [[hcompose(hcompose(Morphism.identity(l), e), Morphism.identity(r)) for e in row] for row in mat.entries]
        return MorphismMatrix(SumObject([l + w + r for w in mat.source]), SumObject([l + w + r for w in mat.target]), rows)

    F, Bk = tensor(fwd, left, right), tensor(bwd, left, right)
    assert matrix_compose(F, Bk) == MorphismMatrix.identity(F.target)
    assert matrix_compose(Bk, F) == MorphismMatrix.identity(F.source)


@pytest.mark.parametrize("w, expected", [
    ("du", {Simple(1, 1): 1, Simple(0, 0): 1}),
    ("uudd", {Simple(2, 2): 1}),
    ("dduu", {Simple(2, 2): 1, Simple(1, 1): 4, Simple(0, 0): 2}),
])
def test_decompose_examples(w, expected):
    mult, fwd, bwd = decompose_object(w)
    assert dict(mult) == expected


@pytest.mark.parametrize("w", list(all_words(5)))
def test_decompose_round_trip(w):
    mult, fwd, bwd = decompose_object(w)
    assert matrix_compose(bwd, fwd) == MorphismMatrix.identity(fwd.source)
    assert matrix_compose(fwd, bwd) == MorphismMatrix.identity(fwd.target)
    assert dict(mult) == multiplicities(w)


def _pairs(words):
    return [(x, y) for x in words for y in words]


def test_associativity_exhaustive_small():
    words = list(all_words(2))
    for w, x, y, z in product(words, repeat=4):
        for f in homs(w, x):
            for g in homs(x, y):
                for h in homs(y, z):
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def _random_triples(rng, count, max_len):
    words = list(all_words(max_len))
    out = []
    while len(out) < count:
        w, x, y, z = (rng.choice(words) for _ in range(4))
        fs, gs, hs = homs(w, x), homs(x, y), homs(y, z)
        if fs and gs and hs:
            out.append((rng.choice(hs), rng.choice(gs), rng.choice(fs)))
    return out


def test_associativity_sampled():
    for h, g, f in _random_triples(random.Random(20240501), 200, 3):
        assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_interchange_sampled():
    rng = random.Random(7)
    triples = _random_triples(rng, 100, 2)
    for (h, g, f), (h2, g2, f2) in zip(triples, triples[1:]):
        assert hcompose(compose(g, f), compose(g2, f2)) == compose(hcompose(g, g2), hcompose(f, f2))


@pytest.mark.parametrize("i, j", [(i, j) for i in range(5) for j in range(5 - i)])
def test_endomorphisms_of_simples_are_scalars(i, j):
    w = "u" * i + "d" * j
    (e,) = homs(w, w)
    assert e == Morphism.identity(w)
    assert compose(e, e) == e


def test_modulus():
    m = compose(G("t"), G("t'"), modulus=2)
    assert set(m.terms.values()) == {1}
    assert (3 * Morphism.identity("u")).reduce_mod(3).is_zero()


def test_compose_matches_oracle_sample():
    for h, g, f in _random_triples(random.Random(3), 20, 3):
        gf = compose(g, f)
        for n in range(4):
            expected = (oracle.eval_morphism(g, n) @ oracle.eval_morphism(f, n)).tocsr()
            assert oracle.matrices_equal(oracle.eval_morphism(gf, n), expected)
