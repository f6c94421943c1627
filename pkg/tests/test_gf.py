import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modinv.errors import DivisionByZero, InvalidArgument
from modinv.gf import (
    DEFAULT_MODULI,
    GF,
    field_from_order,
    find_primitive_root_of_unity,
    least_irreducible,
)

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2),
         (2, 4), (3, 4), (2, 6)]


def naive_mul(a, b, modulus, p):
    """Schoolbook product of coefficient lists followed by long division."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(modulus) - 1
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            for i, m in enumerate(modulus):
                prod[top - k + i] = (prod[top - k + i] - c * m) % p
    return (prod + [0] * k)[:k]


def naive_irreducible(modulus, p):
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = list(tail) + [1]
            rem = list(modulus)
            for top in range(len(rem) - 1, d - 1, -1):
                c = rem[top]
                if c:
                    for i, m in enumerate(f):
                        rem[top - d + i] = (rem[top - d + i] - c * m) % p
            if not any(rem[:d]):
                return False
    return True


@pytest.mark.parametrize("p,k", SMALL)
def test_mul_table_matches_schoolbook(p, k):
    F = GF(p, k)
    codes = np.arange(F.q)
    prod = F.mul(codes[:, None], codes[None, :])
    for a in range(F.q):
        for b in range(F.q):
            expect = naive_mul(F.coeffs(a), F.coeffs(b), F.modulus, p)
            assert F.coeffs(int(prod[a, b])) == expect


@pytest.mark.parametrize("p,k", SMALL)
def test_add_is_digitwise(p, k):
    F = GF(p, k)
    codes = np.arange(F.q)
    s = F.add(codes[:, None], codes[None, :])
    for a in range(0, F.q, max(1, F.q // 17)):
        for b in range(F.q):
            assert F.coeffs(int(s[a, b])) == [(x + y) % p for x, y in zip(F.coeffs(a), F.coeffs(b))]


@pytest.mark.parametrize("p,k", [pk for pk in SMALL if pk[0] ** pk[1] <= 81])
def test_field_axioms_exhaustive(p, k):
    F = GF(p, k)
    x = np.arange(F.q)
    a, b = x[:, None], x[None, :]
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    assert np.all(F.add(x, F.neg(x)) == 0)
    nz = x[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    # associativity and distributivity over all triples
    A, B, C = np.meshgrid(x, x, x, indexing="ij")
    assert np.array_equal(F.mul(F.mul(A, B), C), F.mul(A, F.mul(B, C)))
    assert np.array_equal(F.add(F.add(A, B), C), F.add(A, F.add(B, C)))
    assert np.array_equal(F.mul(A, F.add(B, C)), F.add(F.mul(A, B), F.mul(A, C)))


def test_default_moduli_are_least_irreducible():
    for (p, k), m in DEFAULT_MODULI.items():
        assert tuple(m) == least_irreducible(p, k)
        assert naive_irreducible(list(m), p)
        # least in the order of sum c_i p^i over the non-leading coefficients
        chosen = sum(c * p**i for i, c in enumerate(m[:-1]))
        for code in range(chosen):
            cand = [(code // p**i) % p for i in range(k)] + [1]
            assert not naive_irreducible(cand, p)


def test_rejects_bad_parameters():
    with pytest.raises(InvalidArgument):
        GF(4)
    with pytest.raises(InvalidArgument):
        GF(2, 17)
    with pytest.raises(InvalidArgument):
        GF(3, 2, modulus=[0, 0, 1])  # x^2 is reducible
    with pytest.raises(InvalidArgument):
        field_from_order(6)


def test_inverse_of_zero_raises():
    F = GF(5)
    with pytest.raises(DivisionByZero):
        F.s_inv(0)
    with pytest.raises(DivisionByZero):
        F(0).inverse()


def test_user_modulus_respected():
    F = GF(3, 2, modulus=[2, 2, 1])  # x^2 + 2x + 2, irreducible over F_3
    assert F.modulus == (2, 2, 1)
    x = F([0, 1])
    assert (x * x).coeffs == [1, 1]  # x^2 = -2x - 2 = x + 1


def brute_primitive_root(F, l):
    for c in range(1, F.q):
        if F.order_of(c) == l:
            return c
    return None


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2)])
def test_primitive_roots_match_brute_force(p, k):
    F = GF(p, k)
    for l in range(1, 2 * F.q):
        got = find_primitive_root_of_unity(F, l)
        want = brute_primitive_root(F, l)
        assert (got is None) == ((F.q - 1) % l != 0)
        if want is None:
            assert got is None
        else:
            assert got.code == want
            assert got.order() == l


def test_roots_of_unity_examples():
    assert find_primitive_root_of_unity(GF(3), 4) is None
    a = find_primitive_root_of_unity(GF(3, 2), 4)
    assert a ** 4 == 1 and a ** 2 != 1
    with pytest.raises(InvalidArgument):
        find_primitive_root_of_unity(GF(3), 0)


def test_order_of_brute_force():
    F = GF(7)
    for a in range(1, 7):
        e = 1
        while pow(a, e, 7) != 1:
            e += 1
        assert F.order_of(a) == e


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 4), (3, 3), (5, 2), (13, 1), (2, 8)]), st.data())
def test_scalar_ring_laws(pk, data):
    F = GF(*pk)
    a, b, c = (F(F.coeffs(data.draw(st.integers(0, F.q - 1)))) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a - a == 0
    if b:
        assert (a / b) * b == a
        assert b ** (F.q - 1) == 1
    assert a ** F.p == F(F.coeffs(F.s_pow(a.code, F.p)))


def test_large_field_built_and_rejected_above_limit():
    F = GF(251, 2)
    x = F([3, 7])
    assert x * x.inverse() == 1
    with pytest.raises(InvalidArgument):
        GF(257, 2)
