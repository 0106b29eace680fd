from math import factorial

import pytest

from heiscat import engine
from heiscat.diagrams import (
    BoundaryPoint, Direction, Kind, Rotation, SliceError, basis, diagram_from_json, diagram_to_json, elementary,
    enumerate_matchings, forced_crossings, from_slices, hom_dim_restricted, identity_diagram, is_restricted,
    restricted_basis, string_profile, to_slices,
)
from heiscat.words import all_words

B = lambda i: BoundaryPoint("B", i)  # noqa: E731
T = lambda j: BoundaryPoint("T", j)  # noqa: E731


def test_matching_examples():
    assert len(enumerate_matchings("ud", "du")) == 2
    assert enumerate_matchings("u", "d") == []
    assert len(enumerate_matchings("", "")) == 1


@pytest.mark.parametrize("x", list(all_words(4)))
def test_matching_count_is_factorial(x):
    for y in all_words(4 - len(x)):
        ins = x.count("u") + y.count("d")
        outs = x.count("d") + y.count("u")
        expected = factorial(ins) if ins == outs else 0
        assert len(enumerate_matchings(x, y)) == expected


def test_forced_crossings_examples():
    assert forced_crossings(identity_diagram("du").matching) == frozenset()
    assert len(forced_crossings(elementary("", "t", "").matching)) == 1
    turnback = next(d for d in restricted_basis("du", "du") if d != identity_diagram("du"))
    assert forced_crossings(turnback.matching) == frozenset()


def test_forced_crossings_symmetric_irreflexive():
    for x in all_words(3):
        for m in enumerate_matchings(x, x):
            for pair in forced_crossings(m):
                assert len(pair) == 2


def test_string_profiles():
    cap = elementary("", "d'", "").matching
    assert string_profile(cap, B(1)) == (Kind.CAP, Rotation.COUNTERCLOCKWISE)
    cup = elementary("", "c", "").matching
    assert string_profile(cup, T(1)) == (Kind.CUP, Rotation.COUNTERCLOCKWISE)
    assert string_profile(identity_diagram("u").matching, B(1)) == (Kind.BRIDGE, Direction.UPWARD)
    assert string_profile(elementary("", "c'", "").matching, T(1)).orientation is Rotation.CLOCKWISE


@pytest.mark.parametrize("gen, expected", [("s", False), ("c'", False), ("d", False), ("s'", False),
                                           ("t", True), ("t'", True), ("c", True), ("d'", True), ("x", False)])
def test_is_restricted_generators(gen, expected):
    assert is_restricted(elementary("", gen, "")) is expected


def test_identity_always_restricted():
    assert all(is_restricted(identity_diagram(w)) for w in all_words(5))


def test_restricted_basis_examples():
    assert restricted_basis("uudd", "uudd") == [identity_diagram("uudd")]
    assert set(restricted_basis("du", "du")) == {identity_diagram("du"), engine.compose(
        engine.Morphism.generator("c"), engine.Morphism.generator("d'")).items()[0][0]}
    assert restricted_basis("u", "d") == []
    assert hom_dim_restricted("du", "du") == 2


def test_simples_are_orthogonal():
    simples = [("u" * i) + ("d" * j) for i in range(5) for j in range(5 - i)]
    for a in simples:
        for b in simples:
            assert hom_dim_restricted(a, b) == (1 if a == b else 0)


def test_hom_dim_is_inner_product_of_multiplicities():
    words = list(all_words(3))
    mults = {w: engine.decompose_object(w, with_matrices=False)[0] for w in words}
    for x in words:
        for y in words:
            inner = sum(n * mults[y].get(s, 0) for s, n in mults[x].items())
            assert hom_dim_restricted(x, y) == inner


def test_to_slices_examples():
    assert to_slices(elementary("", "t", "")).slices == (("", "t", ""),)
    turnback = engine.compose(engine.Morphism.generator("c"), engine.Morphism.generator("d'")).items()[0][0]
    assert [g for _, g, _ in to_slices(turnback).slices] == ["d'", "c"]
    assert to_slices(identity_diagram("ud")).slices == ()


@pytest.mark.parametrize("x", list(all_words(3)))
def test_slice_round_trip(x):
    for y in all_words(3):
        for d in basis(x, y, max_dots=1):
            assert from_slices(to_slices(d)) == d
        for d in restricted_basis(x, y):
            assert from_slices(to_slices(d)) == d


def test_bubbles_do_not_slice():
    d = basis("", "", max_bubbles=1)[1]
    with pytest.raises(SliceError):
        to_slices(d)


def test_full_basis_bounds():
    assert len(basis("u", "u")) == 1
    assert len(basis("u", "u", max_dots=2)) == 3
    assert len(basis("", "", max_bubble_label=1, max_bubbles=2)) == 1 + 2 + 3


def test_json_round_trip():
    for d in basis("ud", "ud", max_dots=1, max_bubbles=1):
        assert diagram_from_json(diagram_to_json(d)) == d
