import itertools

import numpy as np
import pytest

from modinv.catalog import (
    Example47Params,
    build_example47,
    build_monomial,
    build_scalar_rep,
    build_slnq_natural,
    build_trivial,
    build_unitriangular,
    example47_matrices,
    sl_order,
)
from modinv.errors import InvalidParameters
from modinv.gf import GF
from modinv.group import classify_element, transvection_subgroup
from modinv.linalg import determinant, identity, matmul


def brute_sl_order(q):
    """Prime q only: count 2x2 matrices of determinant one."""
    return sum((a * d - b * c) % q == 1 for a, b, c, d in itertools.product(range(q), repeat=4))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_sl_order_formula(q):
    assert sl_order(2, q) == brute_sl_order(q)


@pytest.mark.parametrize("q,order", [(2, 6), (3, 24), (4, 60)])
def test_slnq_natural_orders(q, order):
    G = build_slnq_natural(2, q)
    assert G.order == order
    for g in G.gens:
        assert classify_element(G.field, g).is_transvection


@pytest.mark.parametrize("p,l,n,k,order", [(3, 2, 3, 1, 6), (7, 3, 2, 1, 21), (3, 4, 3, 2, 12)])
def test_example47_orders(p, l, n, k, order):
    params = Example47Params.make(p, l, n, k=k)
    G = build_example47(params)
    assert G.order == order == p * l
    assert G.n == n + 1
    g, h = example47_matrices(params)
    F = params.field
    assert np.array_equal(g, np.diag(np.diag(g)))
    assert determinant(F, g) == determinant(F, h) == 1
    assert np.array_equal(matmul(F, g, h), matmul(F, h, g))
    assert classify_element(F, h).is_transvection
    assert transvection_subgroup(G).order == p


def test_example47_layout():
    """Basis (v, w_n, ..., w_1): a everywhere except a^-n in the w_2 slot; h adds w_1 to v."""
    params = Example47Params.make(7, 3, 2)
    F, a = params.field, params.a
    g, h = example47_matrices(params)
    assert [int(x) for x in np.diag(g)] == [a.code, (a ** -2).code, a.code]
    expected_h = identity(3)
    expected_h[2, 0] = 1  # column of v picks up w_1
    assert np.array_equal(h, expected_h)


def test_example47_root_choice():
    a = Example47Params.make(3, 4, 3, k=2).a
    assert (a ** 4).code == 1 and (a ** 2).code != 1
    with pytest.raises(InvalidParameters):
        Example47Params.make(3, 4, 3)  # F_3 has no element of order 4
    with pytest.raises(InvalidParameters):
        Example47Params.make(3, 2, 2)  # (n, l) != 1
    with pytest.raises(InvalidParameters):
        Example47Params.make(3, 2, 1)


def test_scalar_trivial_unitriangular():
    assert build_scalar_rep(GF(3), [2, 2]).order == 2
    assert build_scalar_rep(GF(7), [2, 4]).order == 3
    assert build_trivial(GF(5), 3).order == 1
    assert build_unitriangular(3, GF(3)).order == 27
    assert build_unitriangular(2, GF(3, 2)).order == 9


@pytest.mark.parametrize("m,n,field,order", [(3, 2, GF(2, 2), 6), (2, 3, GF(3), 24),
                                             (4, 2, GF(5), 8), (3, 3, GF(7), 54)])
def test_monomial_orders(m, n, field, order):
    assert build_monomial(m, n, field).order == order


def test_monomial_default_field_is_char_two():
    G = build_monomial(3, 2)
    assert G.field.q == 4 and G.order == 6


def test_monomial_rejects_missing_root():
    with pytest.raises(InvalidParameters):
        build_monomial(4, 2, GF(3))
