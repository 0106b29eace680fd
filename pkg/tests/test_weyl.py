from itertools import product

import pytest

from heiscat.weyl import WeylElement, WeylWord, apply_word, iso_objects, k0, normal_order
from heiscat.words import all_words

WEYL_WORDS = ["".join(p) for n in range(7) for p in product("xd", repeat=n)]


@pytest.mark.parametrize("word, expected", [
    ("dx", {(1, 1): 1, (0, 0): 1}),
    ("xd", {(1, 1): 1}),
    ("ddxx", {(2, 2): 1, (1, 1): 4, (0, 0): 2}),
])
def test_normal_order_examples(word, expected):
    assert normal_order([WeylWord(word)]).coeffs == expected


def test_unicode_partial_accepted():
    assert normal_order(["∂x"]) == normal_order(["dx"])


@pytest.mark.parametrize("w, expected", [("du", "x∂ + 1"), ("1", "1"), ("dduu", "x^2∂^2 + 4x∂ + 2")])
def test_k0_examples(w, expected):
    assert str(k0(w)) == expected


def test_iso_examples():
    assert iso_objects(["du"], ["ud", ""])
    assert not iso_objects(["u"], ["d"])
    assert iso_objects(["dduu"], ["uudd"] + ["ud"] * 4 + ["", ""])


def test_differential_operator_model():
    for w in WEYL_WORDS:
        e = normal_order([w])
        for k in range(7):
            assert apply_word(w, {k: 1}) == e.apply({k: 1})


def test_normal_order_is_multiplicative():
    short = [w for w in WEYL_WORDS if len(w) <= 3]
    for a in short:
        for b in short:
            assert normal_order([a + b]) == normal_order([a]) * normal_order([b])


def test_k0_of_tensor_is_product():
    for a in all_words(6):
        for b in all_words(6 - len(a)):
            assert k0(a + b) == k0(a) * k0(b)


def test_no_zero_divisors_at_low_degree():
    monos = [WeylElement({(i, j): 1}) for i in range(4) for j in range(4 - i)]
    elems = monos + [a + b for a in monos for b in monos if a != b] + [a - b for a in monos for b in monos if a != b]
    for a in elems:
        for b in elems:
            assert a * b


def test_big_coefficients_exact():
    assert normal_order(["d" * 8 + "x" * 8]).coeffs[(0, 0)] == 40320
    assert normal_order(["d" * 20 + "x" * 20]).coeffs[(0, 0)] == 2432902008176640000


def test_json_round_trip():
    e = k0("dduu")
    assert WeylElement.from_json(e.to_json()) == e
    assert e.to_json() == {"coeffs": [{"i": 0, "j": 0, "c": 2}, {"i": 1, "j": 1, "c": 4}, {"i": 2, "j": 2, "c": 1}]}
