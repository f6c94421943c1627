"""Deterministic constructors for the standard fixture groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd, prod

import numpy as np

from .errors import InvalidParameters
from .gf import GF, Scalar, field_from_order, find_primitive_root_of_unity
from .group import MatGroup, classify_element
from .linalg import determinant, identity, matmul


@dataclass(frozen=True)
class Example47Params:
    p: int
    l: int
    n: int
    field: GF
    a: Scalar

    @classmethod
    def make(cls, p: int, l: int, n: int, k: int = 1, a: Scalar | None = None) -> "Example47Params":
        """Choose the smallest-code primitive l-th root of unity in F_{p^k}."""
        field = GF(p, k)
        if a is None:
            a = find_primitive_root_of_unity(field, l)
            if a is None:
                raise InvalidParameters(f"F_{field.q} has no primitive {l}-th root of unity")
        params = cls(p, l, n, field, field(a))
        params.validate()
        return params

    def validate(self):
        if self.n < 2:
            raise InvalidParameters("need n >= 2")
        if self.l < 1 or gcd(self.n, self.l) != 1:
            raise InvalidParameters(f"need (n, l) = 1, got n={self.n}, l={self.l}")
        if self.field.p != self.p:
            raise InvalidParameters("field characteristic must equal p")
        if self.a.code == 0 or self.a.order() != self.l:
            raise InvalidParameters(f"a={self.a!r} does not have exact order {self.l}")


def example47_matrices(params: Example47Params) -> tuple[np.ndarray, np.ndarray]:
    """The diagonal ``g`` and the transvection ``h`` in the basis (v, w_n, ..., w_1).

    ``h`` adds w_1 to v: columns are images, so the entry sits in row w_1,
    column v.
    """
    F, n, a = params.field, params.n, params.a
    dim = n + 1
    diag = [a.code] * dim
    diag[dim - 2] = (a ** (-n)).code  # the w_2 slot
    g = np.diag(np.array(diag, dtype=np.int64))
    h = identity(dim)
    h[dim - 1, 0] = 1
    return g, h


def build_example47(params: Example47Params) -> MatGroup:
    params.validate()
    F = params.field
    g, h = example47_matrices(params)
    if determinant(F, g) != 1 or determinant(F, h) != 1:
        raise InvalidParameters("Example 4.7 generators left SL(V)")
    if not np.array_equal(matmul(F, g, h), matmul(F, h, g)):
        raise InvalidParameters("g and h do not commute")
    if not classify_element(F, h).is_transvection:
        raise InvalidParameters("h is not a transvection")
    G = MatGroup(F, [g, h], name=f"Example47(p={params.p},l={params.l},n={params.n})")
    if G.order != params.p * params.l:
        raise InvalidParameters(f"|G| = {G.order}, expected p*l = {params.p * params.l}")
    return G


def sl_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(2, n + 1))


def build_slnq_natural(n: int, q: int | GF) -> MatGroup:
    """SL_n(q) on F_q^n, generated by elementary transvections 1 + t E_ij.

    ``t`` runs over the powers 1, x, ..., x^{k-1} of the field generator.
    """
    field = q if isinstance(q, GF) else field_from_order(q)
    gens = []
    ts = [1] if field.k == 1 else [field.s_pow(field.p, i) for i in range(field.k)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for t in ts:
                m = identity(n)
                m[i, j] = t
                gens.append(m)
    G = MatGroup(field, gens, n=n, name=f"SL_{n}({field.q})")
    if G.order != sl_order(n, field.q):
        raise InvalidParameters(f"closure order {G.order} != |SL_{n}({field.q})|")
    return G


def build_scalar_rep(field: GF, diag) -> MatGroup:
    """Cyclic group generated by one diagonal matrix."""
    d = np.diag(np.array([field.code(x) for x in diag], dtype=np.int64))
    return MatGroup(field, [d], name=f"diag{[field.code(x) for x in diag]}")


def build_trivial(field: GF, n: int) -> MatGroup:
    return MatGroup(field, [], n=n, name="trivial")


def permutation_matrix(perm) -> np.ndarray:
    n = len(perm)
    m = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(perm):
        m[j, i] = 1
    return m


def build_monomial(m: int, n: int, field: GF | None = None) -> MatGroup:
    """D semidirect S_n, D = {diag(xi^a_i) : sum a_i = 0 mod m}, xi of order m."""
    if field is None:
        q = 2
        while (q - 1) % m:
            q *= 2
        field = field_from_order(q)
    xi = find_primitive_root_of_unity(field, m)
    if xi is None:
        raise InvalidParameters(f"{field!r} has no primitive {m}-th root of unity")
    gens = []
    if n >= 2:
        d = identity(n)
        d[0, 0] = xi.code
        d[1, 1] = xi.inverse().code
        gens.append(d)
        gens.append(permutation_matrix([1, 0] + list(range(2, n))))
        if n > 2:
            gens.append(permutation_matrix(list(range(1, n)) + [0]))
    G = MatGroup(field, gens, n=n, name=f"monomial(m={m},n={n})")
    expected = m ** (n - 1) * factorial(n)
    if G.order != expected:
        raise InvalidParameters(f"closure order {G.order} != m^(n-1) n! = {expected}")
    return G


def build_unitriangular(n: int, field: GF) -> MatGroup:
    """Upper unitriangular matrices; preserves the flag span(e_1) < span(e_1, e_2) < ..."""
    ts = [1] if field.k == 1 else [field.s_pow(field.p, i) for i in range(field.k)]
    gens = []
    for i in range(n - 1):
        for t in ts:
            m = identity(n)
            m[i, i + 1] = t
            gens.append(m)
    G = MatGroup(field, gens, n=n, name=f"U_{n}({field.q})")
    if G.order != field.q ** (n * (n - 1) // 2):
        raise InvalidParameters("unexpected unitriangular order")
    return G

