import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2chev.group import root_element, torus_element
from g2chev.matrix import Matrix
from g2chev.ring import IntegersMod, TruncatedPoly
from g2chev.replay.prod2 import (
    DESIGNATED,
    NormalFormError,
    TorusUnipotentParams,
    assemble,
    coweight_torus,
    prod2_extract,
    roundtrip_trials,
)
from g2chev.rootsys import root

Z25 = IntegersMod(5, 2)


def test_fifteen_designated_entries():
    assert len(DESIGNATED) == 15 and len(set(DESIGNATED)) == 15


def test_identity_decomposes_trivially():
    E = Matrix.identity(14, one=Z25.one, zero=Z25.zero)
    p = prod2_extract(E, Z25)
    assert p == TorusUnipotentParams.trivial(Z25)
    assert p.as_dict()["lambda"] == "1"


def test_single_u2():
    p = TorusUnipotentParams.trivial(Z25)
    p.u[1] = Z25(5)
    X = assemble(p, Z25)
    assert X[11, 9] == Z25(-5)
    assert X[11, 9].value == 20
    assert prod2_extract(X, Z25).u[1] == Z25(5)


def test_assemble_matches_group_constructors():
    rng = random.Random(2)
    p = TorusUnipotentParams.random(Z25, rng)
    g = Matrix.identity(14, one=Z25.one, zero=Z25.zero)
    g = g @ coweight_torus(1, p.s1, Z25) @ coweight_torus(2, p.s2, Z25)
    for i in range(6):
        g = g @ root_element(root(i + 1), p.t[i], Z25).matrix
    for i in range(6):
        g = g @ root_element(root(-(i + 1)), -p.u[i], Z25).matrix
    assert assemble(p, Z25) == g.scale(p.lam)


def test_coweight_torus_generates_torus():
    # t_a1(s) = h_a1(s^2) h_a2(s^3) and t_a2(s) = h_a1(s) h_a2(s^2)
    s = Z25(3)
    h = lambda i, v: torus_element(root(i), v, Z25).matrix  # noqa: E731
    assert coweight_torus(1, s, Z25) == h(1, s ** 2) @ h(2, s ** 3)
    assert coweight_torus(2, s, Z25) == h(1, s) @ h(2, s ** 2)


def test_non_unit_pivot_raises():
    X = Matrix.identity(14, one=Z25.one, zero=Z25.zero)
    rows = [list(r) for r in X.rows]
    rows[11][11] = Z25(5)
    with pytest.raises(NormalFormError, match="not in the asserted normal form"):
        prod2_extract(Matrix(rows), Z25)


def test_weyl_element_is_not_in_normal_form():
    from g2chev.group import weyl_element

    X = weyl_element(root(2), 1, Z25).matrix
    with pytest.raises(NormalFormError):
        prod2_extract(X, Z25)


@pytest.mark.parametrize("ring", [IntegersMod(5, 3), IntegersMod(7, 2), TruncatedPoly(3, 2)])
def test_roundtrip_small(ring):
    res = roundtrip_trials(ring, trials=5, seed=1)
    assert res["recovered"] == 5 and not res["failures"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_roundtrip_z25_hypothesis(seed):
    p = TorusUnipotentParams.random(Z25, random.Random(seed))
    X = assemble(p, Z25)
    assert prod2_extract(X, Z25) == p
