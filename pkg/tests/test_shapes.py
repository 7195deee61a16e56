import random

import pytest

from g2chev.group import GroupElement, GroupError, root_element, torus_element
from g2chev.ring import IntegersMod, Rationals, TruncatedPoly
from g2chev.replay.shapes import (
    basis_change,
    basis_change_commute,
    involution_split,
    verify_block_shapes,
    weyl_hblock,
)
from g2chev.replay.templates import (
    FREE_VARS,
    NORMALIZED,
    instantiate,
    linear_form,
    residue,
    template_variables,
    x1_template_entries,
    x2_template_entries,
)
from g2chev.rootsys import all_roots, root


def test_variable_bookkeeping():
    assert len(FREE_VARS) == 100
    assert NORMALIZED == {"y15": 0, "y16": 1, "z51": 0, "z52": 1}
    assert residue("y37") == 3 and residue("y52") == -3 and residue("y4") == -2
    assert len(template_variables(x1_template_entries())) == 52
    assert len(template_variables(x2_template_entries())) == 52


def test_linear_form():
    assert dict(linear_form("3/2*y20-3/2*y18")) == {"y20": 1.5, "y18": -1.5}
    assert linear_form("0") == ()


def test_templates_at_residues():
    Q = Rationals()
    vals = {v: residue(v) for v in template_variables(x1_template_entries())}
    assert instantiate(x1_template_entries(), vals) == root_element(root(1), 1, Q).matrix.map(lambda v: v.value)
    vals = {v: residue(v) for v in template_variables(x2_template_entries())}
    assert instantiate(x2_template_entries(), vals) == root_element(root(2), 1, Q).matrix.map(lambda v: v.value)


def test_block_shape_report():
    res = {r.name: r for r in verify_block_shapes()}
    for who in ("x1", "x2", "h_t"):
        assert res[f"{who}: commutant dimension"].passed
        assert res[f"{who}: template commutes identically"].passed
        assert res[f"{who}: template spans the commutant"].passed
    assert res["x1: printed template"].witness == {"non-commuting variables": ["y17"]}
    assert res["x2: printed template"].witness == {"non-commuting variables": ["z13", "z14", "z36"]}
    assert all(r.passed or r.info for r in res.values())


def test_basis_changes():
    assert all(r.passed for r in basis_change_commute())
    R = TruncatedPoly(1, 2)
    assert basis_change("C3", R.one, R).is_diagonal()
    with pytest.raises(ValueError):
        basis_change("C5", 1, R)


@pytest.mark.parametrize("ring", [IntegersMod(5, 2), IntegersMod(7, 2), TruncatedPoly(3, 2), Rationals()])
def test_involution_ranks(ring):
    assert involution_split(GroupElement.identity(ring)) == (14, 0)
    for i in (1, 2):
        assert involution_split(torus_element(root(i), -1, ring)) == (6, 8)


def test_involution_ranks_conjugation_invariant():
    ring = IntegersMod(5, 2)
    rng = random.Random(11)
    a = torus_element(root(1), -1, ring)
    for _ in range(10):
        g = root_element(rng.choice(all_roots()), ring.random_element(rng), ring) @ \
            root_element(rng.choice(all_roots()), ring.random_element(rng), ring)
        assert involution_split(a.conjugate(g)) == (6, 8)


def test_involution_needs_square_one():
    with pytest.raises(GroupError):
        involution_split(root_element(root(1), 1, Rationals()))


def test_cartan_blocks():
    b1, b2 = weyl_hblock(root(1)), weyl_hblock(root(2))
    assert b1 == [[-1, 3], [0, 1]]
    assert b2 == [[1, 0], [1, -1]]
    sq = [[sum(b1[i][k] * b1[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert sq == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        weyl_hblock(root(3))
