import random
from fractions import Fraction

import pytest

from hopfblocks.fields import QQ, CyclotomicField, PrimeField
from hopfblocks.linalg import (
    Matrix,
    NotInvertible,
    conjugation_operator,
    inverse,
    kernel,
    minimal_polynomial,
    operator_order,
    simultaneous_kernel,
    solve_unique,
    tensor_product,
)
from hopfblocks import polys as P


def mat(data, field=QQ):
    return Matrix.from_dense(field, data)


def rand_matrix(rng, field, n, m):
    return Matrix.from_dense(field, [[field.random_element(rng) for _ in range(m)] for _ in range(n)])


# -- kernels -----------------------------------------------------------------


def test_kernel_identity_empty():
    assert kernel(Matrix.identity(QQ, 3)) == []


def test_kernel_zero_matrix():
    vecs = kernel(Matrix.zeros(QQ, 2, 3))
    assert len(vecs) == 3


def test_kernel_rank_one():
    vecs = kernel(mat([[1, 1], [2, 2]]))
    assert len(vecs) == 1
    v = vecs[0]
    assert QQ.eq(v[0], QQ.neg(v[1])) or QQ.eq(v[1], QQ.neg(v[0]))


def test_kernel_rank_plus_nullity():
    rng = random.Random(7)
    for _ in range(15):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = rand_matrix(rng, QQ, n, m)
        k = len(kernel(a))
        at = a.transpose()
        rank = m - k
        rank_t = n - len(kernel(at))
        assert rank == rank_t
        for v in kernel(a):
            assert all(QQ.is_zero(x) for x in a.apply_right(v))


def test_kernel_cyclotomic():
    F = CyclotomicField(3)
    z = F.zeta()
    a = Matrix.from_dense(F, [[F.one, z], [F.neg(z), F.mul(F.neg(z), z)]])
    vecs = kernel(a)
    assert len(vecs) == 1
    assert all(F.is_zero(x) for x in a.apply_right(vecs[0]))


def test_kernel_prime_field():
    F = PrimeField(5)
    a = Matrix.from_dense(F, [[1, 2], [3, 6 % 5]])
    vecs = kernel(a)
    assert len(vecs) == 1


def test_simultaneous_kernel_matches_stacked():
    rng = random.Random(11)
    for _ in range(10):
        m = rng.randint(2, 5)
        mats = [rand_matrix(rng, QQ, rng.randint(1, 4), m) for _ in range(3)]
        joint = simultaneous_kernel(mats)
        for v in joint.vectors:
            for a in mats:
                assert all(QQ.is_zero(x) for x in a.apply_right(v))
        stacked_rows = [row for a in mats for row in a.to_dense()]
        stacked = Matrix.from_dense(QQ, stacked_rows) if stacked_rows else Matrix.zeros(QQ, 0, m)
        assert joint.dim == len(kernel(stacked))


def test_kernel_large_sparse_exercises_modular_path():
    # circulant-style integer matrix with known kernel dimension
    n = 60
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        row[(i + 1) % n] = -1
        rows.append(row)
    vecs = kernel(mat(rows))
    assert len(vecs) == 1
    assert all(QQ.eq(x, vecs[0][0]) for x in vecs[0])


def test_solve_unique():
    a = mat([[2, 0], [1, 1]])
    x = solve_unique(a, [4, 3])
    assert x == [2, 1]


def test_inverse():
    a = mat([[1, 2], [3, 5]])
    assert a.mul(inverse(a)).is_identity()
    with pytest.raises(NotInvertible):
        inverse(mat([[1, 1], [1, 1]]))


# -- tensor products -----------------------------------------------------------


def test_tensor_identity():
    assert tensor_product(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)).is_identity()


def test_tensor_unit():
    a = mat([[1, 2], [3, 4]])
    assert tensor_product(a, Matrix.identity(QQ, 1)) == a


def test_tensor_diagonal():
    a = Matrix.diagonal(QQ, [2, 3])
    b = Matrix.diagonal(QQ, [5, 7])
    assert tensor_product(a, b) == Matrix.diagonal(QQ, [10, 14, 15, 21])


def test_tensor_mixed_product_law():
    rng = random.Random(3)
    for _ in range(5):
        a = rand_matrix(rng, QQ, 2, 3)
        c = rand_matrix(rng, QQ, 3, 2)
        b = rand_matrix(rng, QQ, 2, 2)
        d = rand_matrix(rng, QQ, 2, 2)
        lhs = tensor_product(a, b).mul(tensor_product(c, d))
        rhs = tensor_product(a.mul(c), b.mul(d))
        assert lhs == rhs


# -- minimal polynomials -------------------------------------------------------


def test_minpoly_identity():
    m = minimal_polynomial(Matrix.identity(QQ, 4))
    assert m == [-1, 1]


def test_minpoly_nilpotent_jordan():
    m = minimal_polynomial(mat([[0, 1], [0, 0]]))
    assert m == [0, 0, 1]


def test_minpoly_diag():
    m = minimal_polynomial(Matrix.diagonal(QQ, [1, -1]))
    assert m == [-1, 0, 1]


def test_minpoly_annihilates():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 5)
        t = rand_matrix(rng, QQ, n, n)
        m = minimal_polynomial(t)
        acc = Matrix.zeros(QQ, n, n)
        power = Matrix.identity(QQ, n)
        for c in m:
            acc = acc.add(power.scale(c))
            power = power.mul(t)
        assert acc.is_zero_matrix()


# -- operator orders -----------------------------------------------------------


def test_order_diag_pm1():
    cert = operator_order(Matrix.diagonal(QQ, [1, -1]))
    assert cert.gl_order.is_finite and cert.gl_order.n == 2
    assert cert.pgl_order.is_finite and cert.pgl_order.n == 2


def test_order_scalar_root_of_unity():
    F = CyclotomicField(3)
    cert = operator_order(Matrix.diagonal(F, [F.zeta(), F.zeta()]))
    assert cert.gl_order.n == 3
    assert cert.pgl_order.n == 1


def test_order_unipotent_infinite():
    cert = operator_order(mat([[1, 1], [0, 1]]))
    assert cert.gl_order.kind == "infinite"
    assert cert.gl_order.reason == "NotSemisimple"
    assert cert.pgl_order.kind == "infinite"
    assert not cert.minpoly_squarefree


def test_order_companion_sqrt2():
    cert = operator_order(mat([[0, 2], [1, 0]]))  # companion of x^2 - 2
    assert cert.gl_order.kind == "infinite"
    assert cert.gl_order.reason == "RootNotUnity"
    assert cert.pgl_order.is_finite and cert.pgl_order.n == 2


def test_order_mixed_cyclotomic():
    F = CyclotomicField(12)
    z12 = F.zeta()
    z3 = F.pow(z12, 4)
    z4 = F.pow(z12, 3)
    cert = operator_order(Matrix.diagonal(F, [z3, z4]))
    assert cert.gl_order.n == 12


def test_order_not_invertible():
    with pytest.raises(NotInvertible):
        operator_order(mat([[1, 0], [0, 0]]))


def test_order_prime_field_iteration():
    F = PrimeField(7)
    cert = operator_order(Matrix.diagonal(F, [3, 3]), cap=100)
    assert cert.gl_order.n == 6  # 3 has order 6 mod 7
    assert cert.pgl_order.n == 1


def test_order_prime_field_cap():
    F = PrimeField(7)
    cert = operator_order(Matrix.diagonal(F, [3, 5]), cap=2)
    assert cert.gl_order.kind == "unknown" and cert.gl_order.cap == 2


def test_pgl_equals_gl_of_conjugation_operator():
    rng = random.Random(17)
    samples = [
        mat([[0, 2], [1, 0]]),
        Matrix.diagonal(QQ, [1, -1]),
        Matrix.diagonal(QQ, [2, 2]),
        mat([[0, -1], [1, 0]]),
        mat([[Fraction(1, 2), 0], [0, 2]]),
    ]
    for t in samples:
        cert = operator_order(t)
        conj = conjugation_operator(t)
        conj_cert = operator_order(conj)
        assert cert.pgl_order == conj_cert.gl_order


def test_pgl_divides_gl_when_both_finite():
    F = CyclotomicField(12)
    z = F.zeta()
    for diag in ([z, F.one], [F.pow(z, 2), F.pow(z, 6)], [F.pow(z, 3), F.pow(z, 3)]):
        cert = operator_order(Matrix.diagonal(F, diag))
        if cert.gl_order.is_finite and cert.pgl_order.is_finite:
            assert cert.gl_order.n % cert.pgl_order.n == 0


def test_finite_order_certificate_is_sharp():
    samples = [Matrix.diagonal(QQ, [1, -1]), mat([[0, -1], [1, 0]]), mat([[0, -1], [1, -1]])]
    for t in samples:
        cert = operator_order(t)
        n = cert.gl_order.n
        assert t.power(n).is_identity()
        for d in range(1, n):
            if n % d == 0:
                assert not t.power(d).is_identity()


def test_poly_helpers():
    f = [QQ.from_int(-1), QQ.from_int(0), QQ.from_int(1)]  # x^2 - 1
    g = [QQ.from_int(-1), QQ.from_int(1)]  # x - 1
    q, r = P.pdivmod(QQ, f, g)
    assert r == [] and q == [1, 1]
    assert P.pgcd(QQ, f, g) == [-1, 1]
    assert P.is_squarefree(QQ, f)
    assert not P.is_squarefree(QQ, P.pmul(QQ, g, g))
