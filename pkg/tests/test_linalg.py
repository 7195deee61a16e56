from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2chev.linalg import (
    DEFAULT_PRIMES,
    apply_rows,
    crt,
    kernel_crt,
    rank_fraction_free,
    rank_mod_p,
    rational_reconstruction,
)
from g2chev.matrix import Matrix, SingularMatrixError


def test_rank_small():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: Fraction(1, 3)}]
    assert rank_fraction_free(rows, 3)[0] == 2
    assert rank_mod_p(rows, 3, 7) == 2


def test_kernel_crt_exact():
    rows = [{0: 1, 1: 2, 2: 3}, {1: Fraction(1, 2), 2: -1}]
    basis, ranks = kernel_crt(rows, 3)
    assert ranks == [2, 2, 2]
    assert len(basis) == 1
    assert not any(apply_rows(rows, basis[0]))


def test_rational_reconstruction_and_crt():
    m = 1_000_003
    a = 3 * pow(7, -1, m) % m
    assert rational_reconstruction(a, m) == Fraction(3, 7)
    x, mod = crt([2, 3], [5, 7])
    assert x % 5 == 2 and x % 7 == 3 and mod == 35


rows_strategy = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-4, 4).filter(bool), max_size=4), min_size=1, max_size=7)


@settings(max_examples=80, deadline=None)
@given(rows_strategy)
def test_modular_and_fraction_free_ranks_agree(rows):
    r = rank_fraction_free(rows, 6)[0]
    assert all(rank_mod_p(rows, 6, p) == r for p in DEFAULT_PRIMES)
    basis, _ = kernel_crt(rows, 6)
    assert basis is not None and len(basis) == 6 - r
    for v in basis:
        assert not any(apply_rows(rows, v))


def test_matrix_inverse_and_determinant():
    M = Matrix([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]])
    assert M @ M.inverse() == Matrix.identity(2)
    assert M.determinant() == 1
    with pytest.raises(SingularMatrixError):
        Matrix([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]).inverse()
