"""Homogeneous polynomials over F_q and the induced action on S^d(V).

A linear map ``g`` (columns are images of basis vectors) acts on S(V) by the
substitution ``x_i -> sum_j g[j, i] x_j``.  Dense vectors over the degree-d
monomial basis use graded-lex order: exponent tuples sorted lexicographically,
largest first, so ``x_1^d`` has index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .errors import BudgetExceeded, DimMismatch, FieldMismatch, InvalidArgument
from .gf import GF, Scalar
from .linalg import Subspace, identity

Exponent = tuple[int, ...]


DEFAULT_SYM_DIM_BUDGET = 20000


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[Exponent, ...]:
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        out.extend((e,) + rest for rest in monomials(n - 1, d - e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[Exponent, int]:
    return {m: i for i, m in enumerate(monomials(n, d))}


def sym_dim(n: int, d: int) -> int:
    return comb(n + d - 1, d) if n else int(d == 0)


@lru_cache(maxsize=None)
def _shift(n: int, e: int, m: Exponent) -> np.ndarray:
    """Index in degree e+|m| of every degree-e monomial times ``m``."""
    target = monomial_index(n, e + sum(m))
    return np.array([target[tuple(a + b for a, b in zip(u, m))] for u in monomials(n, e)],
                    dtype=np.int64)


@lru_cache(maxsize=None)
def _ladder(n: int, d: int):
    """For degree-d monomials: first variable used, and index of m / x_first."""
    prev = monomial_index(n, d - 1)
    first, parent = [], []
    for m in monomials(n, d):
        i = next(j for j, e in enumerate(m) if e)
        first.append(i)
        parent.append(prev[m[:i] + (m[i] - 1,) + m[i + 1:]])
    up = [_shift(n, d - 1, tuple(int(j == i) for j in range(n))) for i in range(n)]
    return np.array(first), np.array(parent), up


def _as_code(field: GF, c) -> int:
    """Ints are element codes (reduced mod p over a prime field); Scalars are unwrapped."""
    if isinstance(c, Scalar):
        return field.code(c)
    c = int(c)
    if field.k == 1:
        return c % field.p
    if not 0 <= c < field.q:
        raise InvalidArgument(f"{c} is not an element code of {field!r}")
    return c


class HPoly:
    """A homogeneous polynomial: sparse map from exponent tuples to codes."""

    __slots__ = ("field", "n", "degree", "terms")

    def __init__(self, field: GF, n: int, degree: int, terms=None):
        self.field = field
        self.n = n
        self.degree = degree
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(x) for x in m)
            if len(m) != n or sum(m) != degree or min(m, default=0) < 0:
                raise InvalidArgument(f"exponent {m} invalid for degree {degree} in {n} variables")
            c = _as_code(field, c)
            if c:
                clean[m] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------------
    @classmethod
    def variable(cls, field: GF, n: int, i: int) -> "HPoly":
        return cls(field, n, 1, {tuple(int(j == i) for j in range(n)): 1})

    @classmethod
    def constant(cls, field: GF, n: int, c=1) -> "HPoly":
        return cls(field, n, 0, {(0,) * n: _as_code(field, c)})

    @classmethod
    def linear(cls, field: GF, coeffs) -> "HPoly":
        """The linear form ``sum_i coeffs[i] x_i`` (an element of V)."""
        coeffs = [_as_code(field, c) for c in coeffs]
        n = len(coeffs)
        return cls(field, n, 1, {tuple(int(j == i) for j in range(n)): c
                                 for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, field: GF, n: int, d: int, vec) -> "HPoly":
        vec = np.asarray(vec, dtype=np.int64).ravel()
        basis = monomials(n, d)
        if len(vec) != len(basis):
            raise DimMismatch(f"vector of length {len(vec)} for S^{d} of dimension {len(basis)}")
        p = cls.__new__(cls)
        p.field, p.n, p.degree = field, n, d
        p.terms = {basis[i]: int(vec[i]) for i in np.flatnonzero(vec)}
        return p

    def to_vector(self) -> np.ndarray:
        idx = monomial_index(self.n, self.degree)
        v = np.zeros(len(idx), dtype=np.int64)
        for m, c in self.terms.items():
            v[idx[m]] = c
        return v

    # -- arithmetic ---------------------------------------------------------------
    def _check(self, other: "HPoly"):
        if other.field != self.field:
            raise FieldMismatch("polynomials over different fields")
        if other.n != self.n:
            raise DimMismatch("polynomials in different numbers of variables")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HPoly") -> "HPoly":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise InvalidArgument("sum of polynomials of different degrees is not homogeneous")
        F = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = F.s_add(terms.get(m, 0), c)
        return HPoly(F, self.n, self.degree, terms)

    def __neg__(self) -> "HPoly":
        return self.scale(self.field.s_neg(1))

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def scale(self, c) -> "HPoly":
        F = self.field
        c = _as_code(F, c)
        return HPoly(F, self.n, self.degree, {m: F.s_mul(a, c) for m, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, Scalar)):
            return self.scale(other)
        self._check(other)
        F = self.field
        terms: dict[Exponent, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = F.s_add(terms.get(m, 0), F.s_mul(c1, c2))
        return HPoly(F, self.n, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "HPoly":
        if e < 0:
            raise InvalidArgument("negative power")
        out = HPoly.constant(self.field, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.field == other.field and self.n == other.n
        return (self.field == other.field and self.n == other.n
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.degree, tuple(sorted(self.terms.items()))))

    def coefficient(self, m) -> int:
        return self.terms.get(tuple(m), 0)

    def split_by_variable(self, i: int) -> dict[int, "HPoly"]:
        """``{e: a_e}`` with ``self = sum_e a_e x_i^e`` and x_i absent from each a_e."""
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(m[i], {})[m[:i] + (0,) + m[i + 1:]] = c
        return {e: HPoly(self.field, self.n, self.degree - e, t) for e, t in sorted(parts.items())}

    # -- output ---------------------------------------------------------------------
    def sorted_terms(self):
        idx = monomial_index(self.n, self.degree)
        return sorted(self.terms.items(), key=lambda t: idx[t[0]])

    def serialize(self) -> list[str]:
        """One line per term: ``[coeff-array] e1 e2 ... en`` in graded-lex order."""
        out = []
        for m, c in self.sorted_terms():
            coeffs = ",".join(str(x) for x in self.field.coeffs(c))
            out.append(f"[{coeffs}] " + " ".join(str(e) for e in m))
        return out

    @classmethod
    def parse(cls, field: GF, n: int, lines) -> "HPoly":
        if isinstance(lines, str):
            lines = [s for s in lines.replace(";", "\n").splitlines() if s.strip()]
        terms: dict[Exponent, int] = {}
        degree = None
        for line in lines:
            line = line.strip()
            if not line.startswith("["):
                raise InvalidArgument(f"bad term line {line!r}")
            head, _, rest = line[1:].partition("]")
            coeffs = [int(x) for x in head.split(",") if x.strip()]
            exps = tuple(int(x) for x in rest.split())
            if len(exps) != n:
                raise InvalidArgument(f"term {line!r} needs {n} exponents")
            if degree is None:
                degree = sum(exps)
            terms[exps] = field.s_add(terms.get(exps, 0), field.code(coeffs))
        if degree is None:
            raise InvalidArgument("empty polynomial")
        return cls(field, n, degree, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            coef = repr(Scalar(self.field, c))
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)


def act(field: GF, g, f: HPoly) -> HPoly:
    """Image of ``f`` under ``g`` by direct substitution and expansion."""
    g = np.asarray(g, dtype=np.int64)
    if g.shape != (f.n, f.n):
        raise DimMismatch(f"matrix of shape {g.shape} acting on {f.n} variables")
    if f.field != field:
        raise FieldMismatch("polynomial and matrix over different fields")
    images = [HPoly.linear(field, g[:, i]) for i in range(f.n)]
    powers: dict[tuple[int, int], HPoly] = {}

    def pw(i: int, e: int) -> HPoly:
        if (i, e) not in powers:
            powers[(i, e)] = images[i] ** e
        return powers[(i, e)]

    out = HPoly(field, f.n, f.degree)
    for m, c in f.terms.items():
        term = HPoly.constant(field, f.n, c)
        for i, e in enumerate(m):
            if e:
                term = term * pw(i, e)
        out = out + term
    return out


def sym_power_matrices(field: GF, g, dmax: int):
    """Yield the matrix of ``g`` on S^d(V) for d = 0, 1, ..., dmax.

    Column ``j`` holds the coordinates of the image of the j-th monomial.
    """
    g = np.asarray(g, dtype=np.int64)
    n = g.shape[0]
    prev = np.ones((1, 1), dtype=np.int64)
    yield prev
    for d in range(1, dmax + 1):
        first, parent, up = _ladder(n, d)
        cols = prev[:, parent]
        new = np.zeros((sym_dim(n, d), len(first)), dtype=np.int64)
        for j in range(n):
            coef = g[j, first]
            if not np.any(coef):
                continue
            new[up[j], :] = field.add(new[up[j], :], field.mul(cols, coef[None, :]))
        prev = new
        yield prev


def sym_power_matrix(field: GF, g, d: int) -> np.ndarray:
    for m in sym_power_matrices(field, g, d):
        pass
    return m


@dataclass(frozen=True)
class SymPowerAction:
    degree: int
    basis: tuple[Exponent, ...]
    matrices: tuple[np.ndarray, ...]


def sym_power(group, d: int, max_dim: int = DEFAULT_SYM_DIM_BUDGET) -> SymPowerAction:
    """Matrices of every generator of ``group`` on S^d(V)."""
    mats = tuple(group_sym_power(group, d, max_dim))
    return SymPowerAction(d, monomials(group.n, d), mats)


def group_sym_power(group, d: int, max_dim: int = DEFAULT_SYM_DIM_BUDGET) -> list[np.ndarray]:
    """Cached per-generator matrices on S^d(V)."""
    if sym_dim(group.n, d) > max_dim:
        raise BudgetExceeded(f"dim S^{d}(V) = {sym_dim(group.n, d)} exceeds {max_dim}",
                             reached=sym_dim(group.n, d))
    if not group.gens:
        return []
    cache = group._cache.setdefault("sympow", {})
    # resumable generators: raising the degree never recomputes lower ones
    iters = group._cache.setdefault(
        "sympow_iters", [sym_power_matrices(group.field, g, 10**9) for g in group.gens]
    )
    while d not in cache:
        cache[len(cache)] = [next(it) for it in iters]
    return cache[d]


def multiply_rows(field: GF, n: int, poly: HPoly, rows: np.ndarray, e: int) -> np.ndarray:
    """Dense products ``poly * r`` for each row ``r`` of degree-e coordinates."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, sym_dim(n, e))
    out = np.zeros((rows.shape[0], sym_dim(n, e + poly.degree)), dtype=np.int64)
    for m, c in poly.terms.items():
        idx = _shift(n, e, m)
        out[:, idx] = field.add(out[:, idx], field.mul(rows, c))
    return out


def ideal_graded_piece(gens, d: int, field: GF | None = None, n: int | None = None) -> Subspace:
    """Degree-d piece of the ideal of S(V) generated by ``gens``."""
    gens = list(gens)
    if gens:
        field, n = gens[0].field, gens[0].n
    elif field is None or n is None:
        raise InvalidArgument("field and n are required when gens is empty")
    blocks = []
    for g in gens:
        if g.is_zero() or g.degree > d:
            continue
        e = d - g.degree
        blocks.append(multiply_rows(field, n, g, identity(sym_dim(n, e)), e))
    if not blocks:
        return Subspace.zero(field, sym_dim(n, d))
    return Subspace.span(field, np.concatenate(blocks), sym_dim(n, d))


def polys_of(space: Subspace, n: int, d: int) -> list[HPoly]:
    return [HPoly.from_vector(space.field, n, d, row) for row in space.basis]


def binomial_mod(field: GF, top: int, k: int) -> int:
    """C(top, k) as a field code (exact integer binomial reduced mod p)."""
    if k < 0 or k > top:
        return 0
    return field.from_int(comb(top, k))
