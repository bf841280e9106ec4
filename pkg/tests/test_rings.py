from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tangentoids import QQ, ZZ, Modular, Product, product
from tangentoids.errors import MixedRings, NotProduct, UnsupportedRing
from tangentoids.rings import arithmetic, idempotents, is_unit

Z6 = Modular(6)
Z2xZ3 = product(Modular(2), Modular(3))

ints = st.integers(min_value=-10**6, max_value=10**6)
rats = st.fractions(max_denominator=50)


def element(ring):
    if ring == QQ:
        return rats.map(ring.canon)
    if isinstance(ring, Product):
        return st.tuples(*[element(f) for f in ring.factors])
    return ints.map(ring.canon)


RINGS = [ZZ, QQ, Modular(4), Z6, Z2xZ3]


@pytest.mark.parametrize("R", RINGS, ids=str)
@given(data=st.data())
def test_commutative_ring_laws(R, data):
    a, b, c = (data.draw(element(R)) for _ in range(3))
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, b) == R.mul(b, a)
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.zero) == a and R.mul(a, R.one) == a
    assert R.add(a, R.neg(a)) == R.zero
    assert R.sub(a, b) == R.add(a, R.neg(b))


@pytest.mark.parametrize("R", RINGS, ids=str)
@given(data=st.data())
def test_inverse_is_two_sided(R, data):
    a = data.draw(element(R))
    inv = R.inverse(a)
    if inv is not None:
        assert R.mul(a, inv) == R.one
        assert is_unit(R, R(a)).value == inv
    else:
        assert is_unit(R, R(a)) is None


def test_modular_canonical_forms():
    assert Z6.canon(-1) == 5
    assert Z6.canon(Fraction(1, 5)) == 5  # 5 * 5 = 25 = 1 mod 6
    assert list(Modular(3).elements()) == [0, 1, 2]
    assert Z6.cardinality == 6 and Z6.is_finite


def test_integers_reject_proper_fractions():
    with pytest.raises((TypeError, ValueError)):
        ZZ.canon(Fraction(1, 2))


def test_rationals_parse_strings():
    assert QQ.canon("3/6") == Fraction(1, 2)


def test_unit_groups_by_enumeration():
    # oracle: gcd with the modulus
    from math import gcd
    for n in (2, 4, 6, 12):
        R = Modular(n)
        units = [a for a in R.elements() if R.inverse(a) is not None]
        assert units == [a for a in range(n) if gcd(a, n) == 1]


def test_product_ring_structure():
    R = Z2xZ3
    assert R.cardinality == 6
    assert R.canon(5) == (1, 2)
    assert len(list(R.elements())) == 6
    assert R.inverse((1, 0)) is None
    e = idempotents(R)
    assert [x.value for x in e] == [(1, 0), (0, 1)]
    assert (e[0] * e[1]).value == R.zero
    assert (e[0] + e[1]).value == R.one


def test_pid_flags():
    assert ZZ.is_pid() and QQ.is_pid() and Modular(5).is_pid()
    assert not Modular(4).is_pid()
    assert not product(Modular(2), Modular(2)).is_pid()


def test_product_needs_two_factors():
    with pytest.raises((UnsupportedRing, ValueError)):
        product(Modular(2))


def test_ring_elements_refuse_mixing():
    a, b = Modular(4)(3), Modular(6)(3)
    assert arithmetic(Modular(4), "mul", a, a).value == 1
    with pytest.raises(MixedRings):
        arithmetic(Modular(4), "add", a, b)


def test_idempotents_need_a_product():
    with pytest.raises(NotProduct):
        idempotents(ZZ)
