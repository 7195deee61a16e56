import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2chev.ring import (
    IntegersMod,
    NotInvertibleError,
    Rationals,
    RingError,
    RingMismatchError,
    TruncatedPoly,
    parse_ring,
    parse_value,
)

Z25 = IntegersMod(5, 2)
T = TruncatedPoly(3, 3)


def test_zmod_units_and_radical():
    assert Z25(7).is_unit()
    assert Z25(7) * Z25(7).inv() == 1
    assert Z25(10).in_radical()
    with pytest.raises(NotInvertibleError):
        Z25(10).inv()
    assert Z25(Fraction(1, 2)) * 2 == 1
    assert Z25.residue(Z25(17)) == IntegersMod(5)(2)


def test_zmod_rejects_small_or_composite_base():
    for p in (2, 3, 4, 9, 25):
        with pytest.raises(RingError):
            IntegersMod(p, 1)


def test_trunc_nilpotent_and_inverse():
    e0, e1, e2 = T.gens()
    assert (e0 * e1 * e2).terms == {}
    assert e0 ** 3 == 0
    x = 2 + e0 - 3 * e1 * e2
    assert x.is_unit()
    assert x * x.inv() == 1
    with pytest.raises(NotInvertibleError):
        (e0 + e1).inv()


def test_trunc_substitute():
    e0, e1, e2 = T.gens()
    f = 1 + e0 + e0 * e1
    g = f.substitute(0, 2 * e2)
    assert g == 1 + 2 * e2 + 2 * e1 * e2


def test_mixing_rings_is_an_error():
    with pytest.raises(RingMismatchError):
        Z25(1) + IntegersMod(7, 2)(1)
    with pytest.raises(RingMismatchError):
        Z25(1) * T.one


@pytest.mark.parametrize("sel,desc", [("q", "q"), ("zmod:5^2", "zmod:5^2"), ("zmod:7", "zmod:7^1"),
                                      ("trunc:4,3", "trunc:4,3")])
def test_parse_ring(sel, desc):
    assert parse_ring(sel).descriptor == desc


@pytest.mark.parametrize("bad", ["zmod:4", "trunc:2", "gf(7)", ""])
def test_parse_ring_errors(bad):
    with pytest.raises(RingError):
        parse_ring(bad)


def test_parse_value():
    assert parse_value(Z25, "-1/2") == Z25(Fraction(-1, 2))
    R = TruncatedPoly(2, 3)
    e0, e1 = R.gens()
    assert parse_value(R, "1+e0-2*e0*e1") == 1 + e0 - 2 * e0 * e1


@pytest.mark.parametrize("ring", [Rationals(), Z25, TruncatedPoly(4, 3)])
def test_serialize_roundtrip(ring):
    rng = random.Random(1)
    for _ in range(20):
        x = ring.random_element(rng)
        assert ring.deserialize(ring.serialize(x)) == x


def _ring_elements(ring):
    return st.integers(0, 2**32).map(lambda s: ring.random_element(random.Random(s)))


@settings(max_examples=60, deadline=None)
@given(_ring_elements(T), _ring_elements(T), _ring_elements(T))
def test_trunc_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=100, deadline=None)
@given(_ring_elements(Z25))
def test_zmod_unit_iff_residue_nonzero(a):
    assert a.is_unit() == (a.value % 5 != 0)
    if a.is_unit():
        assert a * a.inv() == 1


@settings(max_examples=60, deadline=None)
@given(_ring_elements(T))
def test_trunc_units_invert(a):
    u = a + (1 - a.constant()) if not a.is_unit() else a
    assert u * u.inv() == 1
