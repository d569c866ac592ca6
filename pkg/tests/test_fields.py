import random
from fractions import Fraction

import pytest

from hopfblocks.fields import (
    QQ,
    CyclotomicField,
    DivisionByZero,
    PrimeField,
    cyclotomic_polynomial,
    euler_phi,
    field_from_json,
)


def test_rational_basics():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.normalize(Fraction(4, 2)) == 2
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(DivisionByZero):
        QQ.inv(0)


def test_cyclotomic_phi3_relation():
    F = CyclotomicField(3)
    z = F.zeta()
    total = F.add(F.add(F.mul(z, z), z), F.one)
    assert F.is_zero(total)


def test_cyclotomic_zeta_power_n_is_one():
    for n in (3, 4, 5, 6, 12):
        F = CyclotomicField(n)
        assert F.eq(F.pow(F.zeta(), n), F.one)
        for k in range(1, n):
            assert not F.eq(F.pow(F.zeta(), k), F.one) or euler_phi(n) == 1


def test_prime_field_inverse():
    F = PrimeField(5)
    assert F.inv(2) == 3
    for p in (2, 3, 7, 11):
        Fp = PrimeField(p)
        for x in range(1, p):
            assert Fp.mul(x, Fp.inv(x)) == Fp.one


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


FIELDS = [QQ, CyclotomicField(3), CyclotomicField(12), PrimeField(7)]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: str(f.to_json()))
def test_field_axioms_random(field):
    rng = random.Random(20240811)
    for _ in range(60):
        a = field.random_element(rng)
        b = field.random_element(rng)
        c = field.random_element(rng)
        assert field.eq(field.add(a, b), field.add(b, a))
        assert field.eq(field.mul(a, b), field.mul(b, a))
        assert field.eq(field.add(field.add(a, b), c), field.add(a, field.add(b, c)))
        assert field.eq(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)))
        assert field.eq(field.mul(a, field.add(b, c)), field.add(field.mul(a, b), field.mul(a, c)))
        x = field.random_element(rng, zero_ok=False)
        assert field.eq(field.mul(field.inv(x), x), field.one)
        assert field.eq(field.normalize(field.normalize(a)), field.normalize(a))


def test_field_json_roundtrip():
    for f in FIELDS:
        assert field_from_json(f.to_json()) == f


def test_euler_phi():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
