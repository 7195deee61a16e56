from fractions import Fraction

import pytest

from g2chev.group import evaluate_word
from g2chev.matrix import Matrix
from g2chev.ring import IntegersMod, Rationals
from g2chev.replay.matrix_units import (
    LONG,
    SHORT,
    X2,
    E,
    Unit,
    generate_matrix_units,
    minus_e,
    three_obstruction,
    unit_matrix,
    verify_matrix_units,
)

Q = Rationals()


@pytest.fixture(scope="module")
def mu():
    return generate_matrix_units()


def test_all_units_generated(mu):
    assert len(mu.units) == 196
    assert sorted(mu.units) == [(k, l) for k in range(1, 15) for l in range(1, 15)]


def test_seed_sign_is_minus(mu):
    x2 = minus_e(X2)
    M = mu.evaluator(Q)(Fraction(1, 2) * (x2 @ x2))
    assert M == unit_matrix(3, 4, Q).scale(Q(-1))
    assert mu.coefficients["1/2 (x2 - E)^2"] == -1


def test_written_identities(mu):
    ev = mu.evaluator(Q)
    assert mu.coefficients["1/4 (h1 + E)(h2 + E) - e[14,14]"] == 1
    assert mu.coefficients["(x2 - E) e[4,4] + e[3,4]"] == 1
    # the printed e[14,14] identity is not a multiple of e[14,14]
    (support,) = mu.deviations.values()
    assert sorted((r, c) for r, c, _ in support) == [(14, 13), (14, 14)]
    assert ev(Unit(13, 13)) == unit_matrix(13, 13, Q)


def test_one_third_bridge_needed(mu):
    assert mu.coefficients["e[1,1] x1 e[14,14]"] == 3
    assert three_obstruction().passed


def test_short_to_long_block_divisible_by_three():
    for w in ("x(a1,1)", "x(-a1,1)", "x(a2,1)", "x(-a2,1)", "w(a1,1)", "w(a2,1)"):
        M = evaluate_word(w, Q).matrix
        for r in SHORT + (13,):
            for c in LONG + (14,):
                assert Fraction(M[r - 1, c - 1].value) % 3 == 0


@pytest.mark.parametrize("ring", [IntegersMod(5, 2), IntegersMod(7, 2)])
def test_units_over_local_rings(mu, ring):
    res = verify_matrix_units(ring, mu, triples=20, seed=4)
    assert all(r.passed for r in res)


def test_units_sum_to_identity(mu):
    ev = mu.evaluator(Q)
    total = Matrix.zeros(14, zero=Q.zero)
    for k in range(1, 15):
        total = total + ev(Unit(k, k))
    assert total == Matrix.identity(14, one=Q.one, zero=Q.zero)
    assert ev(E) == total
