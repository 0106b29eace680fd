import numpy as np
import pytest
import scipy.sparse as sp

from heiscat import oracle
from heiscat.diagrams import SliceWord, elementary, identity_diagram
from heiscat.engine import Morphism, compose
from heiscat.words import all_words


@pytest.mark.parametrize("w, n, dim", [("", 2, 2), ("u", 1, 2), ("du", 1, 2), ("d", 0, 0)])
def test_eval_object_examples(w, n, dim):
    assert oracle.eval_object(w, n).dim == dim


def test_dimensions_match_prediction():
    for w in all_words(4):
        for n in range(5):
            assert oracle.eval_object(w, n).dim == oracle.predicted_dim(w, n)


def test_eval_examples():
    for n in range(4):
        eye = oracle.eval_diagram(identity_diagram("u"), n)
        assert oracle.matrices_equal(eye, sp.identity(eye.shape[0], dtype=np.int64, format="csr"))
        bubble = compose(Morphism.generator("d'"), Morphism.generator("c"))
        assert oracle.matrices_equal(oracle.eval_morphism(bubble, n), sp.identity(oracle.eval_object("", n).dim, format="csr"))


def test_morphisms_equal_examples():
    tt = SliceWord("du", "du", (("", "t'", ""), ("", "t", "")))
    rhs = Morphism.identity("du") - compose(Morphism.generator("c"), Morphism.generator("d'"))
    assert oracle.morphisms_equal(tt, rhs, 4)
    assert not oracle.morphisms_equal(Morphism.identity("u"), SliceWord("u", "u", (("", "x", ""),)), 2)
    f = Morphism.generator("t")
    assert oracle.morphisms_equal(f, f, 3)


def test_relations_selftest():
    rep = oracle.relations_selftest(3)
    assert rep["all_pass"]
    names = {r["name"] for r in rep["relations"]}
    assert {"hecke_square", "hecke_braid", "right_zigzag_up", "right_zigzag_down"} <= names


def test_hecke_square_at_level_two():
    mat = oracle.eval_slices("uu", [("", "s", ""), ("", "s", "")], 2)
    assert oracle.matrices_equal(mat, sp.identity(mat.shape[0], dtype=np.int64, format="csr"))


def test_dot_is_not_identity_but_generic():
    x = oracle.eval_diagram(elementary("", "x", ""), 2)
    assert x.nnz > 0


def test_closure_selftest_sampled():
    rep = oracle.closure_selftest(3, 3, sample=60, seed=5)
    assert rep["pass"] and rep["pairs"] == 60
