import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2chev.chevalley import PRINTED_H1_DIAG, PRINTED_H2_DIAG, PRINTED_W1, PRINTED_W2, PRINTED_X1, PRINTED_X2
from g2chev.group import (
    GroupElement,
    GroupError,
    WordError,
    as_fraction_matrix,
    evaluate_word,
    root_element,
    torus_element,
    weyl_element,
)
from g2chev.matrix import Matrix
from g2chev.ring import IntegersMod, NotInvertibleError, Rationals, RingMismatchError, TruncatedPoly
from g2chev.rootsys import all_roots, root

Q = Rationals()
Z25 = IntegersMod(5, 2)


def test_simple_root_elements_match_printed():
    assert root_element(root(1), 0, Q).is_identity()
    assert as_fraction_matrix(root_element(root(1), 1, Q)) == PRINTED_X1
    assert as_fraction_matrix(root_element(root(2), 1, Q)) == PRINTED_X2


def test_weyl_elements():
    assert as_fraction_matrix(weyl_element(root(2), 1, Q)) == PRINTED_W2
    # the printed w1 is w_a1(-1) = w_a1(1)^-1 for this pinning
    assert as_fraction_matrix(weyl_element(root(1), -1, Q)) == PRINTED_W1
    assert as_fraction_matrix(weyl_element(root(1), 1, Q)) != PRINTED_W1
    w1 = weyl_element(root(1), 1, Q)
    assert w1 @ w1 == torus_element(root(1), -1, Q)


def test_torus_elements_are_printed_diagonals():
    assert torus_element(root(1), 1, Q).is_identity()
    assert torus_element(root(1), -1, Q).matrix == Matrix.diag(list(PRINTED_H1_DIAG)).to_ring(Q)
    assert torus_element(root(2), -1, Q).matrix == Matrix.diag(list(PRINTED_H2_DIAG)).to_ring(Q)
    assert torus_element(root(4), 3, Z25).matrix.is_diagonal()


def test_non_unit_parameters_rejected():
    with pytest.raises(NotInvertibleError):
        weyl_element(root(1), 5, Z25)
    with pytest.raises(NotInvertibleError):
        torus_element(root(2), 0, Q)


def test_conjugate_commutator_inverse():
    g = root_element(root(1), 1, Q).conjugate(weyl_element(root(2), 1, Q))
    assert g == root_element(root(3), 1, Q)
    e = GroupElement.identity(Q)
    assert g.commutator(e).is_identity()
    x = root_element(root(1), 3, Q)
    assert x.inverse() == root_element(root(1), -3, Q)
    assert x.inverse().word_string() == "x(a1,-3)"
    assert (x @ x.inverse()).is_identity()


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatchError):
        root_element(root(1), 1, Q) @ root_element(root(1), 1, Z25)


def test_words():
    assert evaluate_word("", Z25).is_identity()
    g = evaluate_word("h(a1,t) h(a1,u)", Z25, {"t": 2, "u": 3})
    assert g == torus_element(root(1), 6, Z25)
    a = evaluate_word("x(a2,1) x(a3,1)", Q)
    b = evaluate_word("x(a3,1) x(a2,1)", Q)
    assert a == b
    g = evaluate_word("x(-a3,t) w(a2,1)^-1", Q, {"t": "1/2"})
    assert g == root_element(root(-3), Fraction(1, 2), Q) \
        @ weyl_element(root(2), -1, Q)


def test_word_with_truncated_variables():
    R = TruncatedPoly(2, 2)
    g = evaluate_word("x(a1,e0) x(a1,e1)", R)
    assert g == root_element(root(1), R.var(0) + R.var(1), R)


@pytest.mark.parametrize("word,index", [("x(a1,1) w(a2,5)", 1), ("x(a9,1)", 0), ("x(a1,1) x(a2,s)", 1),
                                        ("x(a1,1) ???", 1), ("h(a1,0)", 0)])
def test_word_errors_report_atom_index(word, index):
    with pytest.raises(WordError) as info:
        evaluate_word(word, Z25)
    assert info.value.atom_index == index


@pytest.mark.parametrize("ring", [Q, Z25, TruncatedPoly(3, 2)])
def test_json_roundtrip(ring):
    rng = random.Random(3)
    g = GroupElement.identity(ring)
    for _ in range(3):
        g = g @ root_element(rng.choice(all_roots()), ring.random_element(rng), ring)
    doc = json.loads(json.dumps(g.to_json()))
    assert GroupElement.from_json(doc) == g


def test_malformed_json():
    with pytest.raises(GroupError):
        GroupElement.from_json({"ring": "q"})
    with pytest.raises(GroupError):
        GroupElement.from_json({"ring": "q", "entries": [[0]]})


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(all_roots()), st.integers(0, 624), st.integers(0, 624))
def test_additivity_z25(r, s, t):
    assert root_element(r, s, Z25) @ root_element(r, t, Z25) == root_element(r, s + t, Z25)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(all_roots()), st.integers(-50, 50))
def test_det_one(r, t):
    assert root_element(r, t, Q).determinant() == 1
