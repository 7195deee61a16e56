import pytest

from g2chev.rootsys import (
    NotARootError,
    Root,
    all_roots,
    cartan_int,
    coroot_coefficients,
    orbit,
    parse_root,
    positive_roots,
    reflect,
    root,
    root_sum,
    string_length_below,
)


def test_twelve_roots_two_lengths():
    roots = all_roots()
    assert len(roots) == 12
    assert sorted(r.norm2 for r in roots) == [2] * 6 + [6] * 6
    assert [r.index for r in positive_roots() if r.is_long] == [2, 5, 6]


def test_positions():
    assert [root(i).position for i in (1, -1, 2, -2, 6, -6)] == [1, 2, 3, 4, 11, 12]
    short = sorted(r.position for r in all_roots() if not r.is_long)
    assert short == [1, 2, 5, 6, 7, 8]


def test_positive_roots_coordinates():
    assert [(r.n1, r.n2) for r in positive_roots()] == [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]


def test_cartan_matrix():
    a1, a2 = root(1), root(2)
    assert [[cartan_int(a1, a1), cartan_int(a1, a2)], [cartan_int(a2, a1), cartan_int(a2, a2)]] == [[2, -1], [-3, 2]]


def test_reflections_are_involutions_and_transitive_on_lengths():
    for a in all_roots():
        for b in all_roots():
            assert reflect(reflect(a, b), b) == a
    assert len(orbit(root(1))) == 6
    assert len(orbit(root(2))) == 6


def test_root_sum_and_strings():
    assert root_sum(root(1), root(2)) == root(3)
    assert root_sum(root(1), root(-1)) is None
    assert root_sum(root(2), root(2)) is None
    # a1-string through a2 is a2, a2+a1, a2+2a1, a2+3a1
    assert string_length_below(root(5), root(1)) == 3


def test_coroots():
    assert coroot_coefficients(root(1)) == (1, 0)
    assert coroot_coefficients(root(2)) == (0, 1)
    assert coroot_coefficients(root(6)) == (1, 2)
    assert coroot_coefficients(root(4)) == (2, 3)


@pytest.mark.parametrize("text,idx", [("a1", 1), ("-a6", -6), ("alpha3", 3), ("3", 3), ("-2", -2)])
def test_parse_root(text, idx):
    assert parse_root(text).index == idx


@pytest.mark.parametrize("bad", ["a7", "b1", "0", ""])
def test_parse_root_errors(bad):
    with pytest.raises(NotARootError):
        parse_root(bad)


def test_non_root_coordinates_rejected():
    with pytest.raises(NotARootError):
        Root(2, 2)


def test_reflection_examples():
    assert reflect(root(1), root(1)) == root(-1)
    assert reflect(root(2), root(1)) == root(5)
    assert reflect(root(6), root(1)) == root(6)
    assert cartan_int(root(2), root(1)) == -3
    assert cartan_int(root(1), root(2)) == -1


def test_cartan_products():
    for a in all_roots():
        for b in all_roots():
            if a != b and a != -b:
                assert cartan_int(a, b) * cartan_int(b, a) in {0, 1, 2, 3}
