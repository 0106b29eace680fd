import pytest
from hypothesis import given, strategies as st

from heiscat.words import Simple, all_words, as_simple, dual_word, format_word, parse_word, tensor

words = st.text(alphabet="ud", max_size=8)


@pytest.mark.parametrize("a, b, expected", [("du", "u", "duu"), ("", "ud", "ud"), ("u", "d", "ud")])
def test_tensor(a, b, expected):
    assert tensor(a, b) == expected


@pytest.mark.parametrize("w, expected", [("udd", "uud"), ("", ""), ("u", "d")])
def test_dual_word(w, expected):
    assert dual_word(w) == expected


@pytest.mark.parametrize("w, expected", [("uudd", Simple(2, 2)), ("du", None), ("", Simple(0, 0))])
def test_as_simple(w, expected):
    assert as_simple(w) == expected


def test_serialization():
    assert parse_word("1") == "" and format_word("") == "1"
    assert parse_word("↓↑") == "du"
    with pytest.raises(ValueError):
        parse_word("uxd")


def test_all_words_counts():
    assert len(list(all_words(4))) == 1 + 2 + 4 + 8 + 16


@given(words)
def test_dual_is_involution(w):
    assert dual_word(dual_word(w)) == w


@given(words, words)
def test_dual_reverses_tensor(a, b):
    assert dual_word(tensor(a, b)) == tensor(dual_word(b), dual_word(a))


@given(words)
def test_simple_iff_no_du(w):
    assert (as_simple(w) is not None) == ("du" not in w)
